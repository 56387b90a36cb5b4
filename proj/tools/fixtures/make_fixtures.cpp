// Regenerates the scenes under tests/fixtures. Output is deterministic.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include <nlohmann/json.hpp>

#include "safegate/imaging/png_io.hpp"
#include "safegate/perception/backends.hpp"
#include "safegate/perception/synthetic_faces.hpp"

namespace fs = std::filesystem;
using namespace safegate;

namespace {

constexpr int kWidth = 320;
constexpr int kHeight = 240;
constexpr std::uint64_t kRezaIdentity = 7;
constexpr int kProfileCrops = 12;

imaging::Frame background(std::uint32_t seed) {
    imaging::Frame f(kWidth, kHeight, 3);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> jitter(-6, 6);
    for (int y = 0; y < kHeight; ++y) {
        for (int x = 0; x < kWidth; ++x) {
            const int base = 120 + (x / 40 + y / 30) % 3 * 12 + jitter(rng);
            f.at(x, y, 0) = static_cast<std::uint8_t>(base + 6);
            f.at(x, y, 1) = static_cast<std::uint8_t>(base + 2);
            f.at(x, y, 2) = static_cast<std::uint8_t>(base - 4);
        }
    }
    return f;
}

void fill(imaging::Frame& f, const imaging::Rect& r, std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
    for (int y = r.y; y < r.y + r.height; ++y) {
        for (int x = r.x; x < r.x + r.width; ++x) {
            f.at(x, y, 0) = red;
            f.at(x, y, 1) = green;
            f.at(x, y, 2) = blue;
        }
    }
}

void paste_gray(imaging::Frame& f, const imaging::Frame& gray, int ox, int oy) {
    for (int y = 0; y < gray.height(); ++y) {
        for (int x = 0; x < gray.width(); ++x) {
            const auto v = gray.at(x, y);
            for (int c = 0; c < 3; ++c) f.at(ox + x, oy + y, c) = v;
        }
    }
}

void write_json(const fs::path& p, const nlohmann::json& j) {
    std::ofstream out(p);
    out << j.dump(2) << "\n";
}

void known_person_scene(const fs::path& root) {
    const fs::path frames = root / "frames";
    const fs::path profile = root / "profiles" / "reza";
    fs::create_directories(frames);
    fs::create_directories(profile);

    const imaging::Rect person{110, 20, 116, 210};
    const imaging::Rect face{120, 50, 96, 96};
    const imaging::Rect hair{120, 26, 96, 24};

    const auto empty = background(11);
    auto visitor = empty;
    fill(visitor, person, 52, 70, 128);
    fill(visitor, hair, 18, 16, 14);
    paste_gray(visitor, perception::synthetic_face(kRezaIdentity, 100), face.x, face.y);

    imaging::write_png(frames / "000.png", empty);
    imaging::write_png(frames / "001.png", empty);
    imaging::write_png(frames / "002.png", visitor);
    imaging::write_png(frames / "003.png", visitor);
    imaging::write_png(frames / "004.png", visitor);

    perception::Manifest m;
    m.boxes.push_back({perception::DetectionKind::Person, person, "Reza", {}, {"gun"}});
    m.boxes.push_back({perception::DetectionKind::Face, face, "Reza", {}, {}});
    for (const char* name : {"002.json", "003.json", "004.json"}) {
        std::ofstream(frames / name) << perception::manifest_to_json(m) << "\n";
    }

    write_json(profile / "profile.json", {{"name", "Reza"}, {"contact", "reza@example.org"}});
    for (int i = 1; i <= kProfileCrops; ++i) {
        char file[16];
        std::snprintf(file, sizeof file, "%03d.png", i);
        imaging::write_png(profile / file, perception::synthetic_face(kRezaIdentity, static_cast<std::uint64_t>(i)));
    }
}

void quiet_scene(const fs::path& root) {
    const fs::path frames = root / "frames";
    fs::create_directories(frames);
    const auto base = background(23);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> noise(-3, 3);
    for (int i = 0; i < 6; ++i) {
        auto f = base;
        for (auto& b : f.data()) b = static_cast<std::uint8_t>(std::clamp(int(b) + noise(rng), 0, 255));
        char file[16];
        std::snprintf(file, sizeof file, "%03d.png", i);
        imaging::write_png(frames / file, f);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regenerate simulation fixtures"};
    fs::path out = "tests/fixtures";
    app.add_option("--out", out, "Fixture root")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    known_person_scene(out / "e2e_known");
    quiet_scene(out / "e2e_quiet");
    std::cout << "fixtures written to " << out.string() << "\n";
    return 0;
}
