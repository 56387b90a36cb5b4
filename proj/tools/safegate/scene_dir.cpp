#include "scene_dir.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "safegate/error.hpp"
#include "safegate/imaging/png_io.hpp"

namespace safegate::tools {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> pngs_in(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".png") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string trim(std::string s) {
    const auto ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

}  // namespace

std::vector<SceneFrame> load_scene_dir(const fs::path& dir) {
    std::vector<SceneFrame> out;
    for (const auto& p : pngs_in(dir)) {
        SceneFrame f{p, imaging::read_png(p), std::nullopt};
        auto sidecar = p;
        sidecar.replace_extension(".json");
        if (fs::exists(sidecar)) f.manifest = perception::parse_manifest(slurp(sidecar));
        out.push_back(std::move(f));
    }
    return out;
}

std::map<std::string, bool> load_labels(const fs::path& csv) {
    std::istringstream in(slurp(csv));
    std::map<std::string, bool> out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidParameter("labels row " + std::to_string(row) + ": expected frame,active");
        const auto name = trim(line.substr(0, comma));
        const auto value = trim(line.substr(comma + 1));
        if (value == "1" || value == "true") {
            out[name] = true;
        } else if (value == "0" || value == "false") {
            out[name] = false;
        } else if (row == 1) {
            continue;  // header
        } else {
            throw InvalidParameter("labels row " + std::to_string(row) + ": bad active value '" + value + "'");
        }
    }
    return out;
}

int enroll_profile_dir(gateway::Engine& engine, const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> people;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_directory()) people.push_back(e.path());
    }
    std::sort(people.begin(), people.end());
    int enrolled = 0;
    for (const auto& person : people) {
        std::string name = person.filename().string();
        std::string contact;
        if (fs::exists(person / "profile.json")) {
            const auto j = nlohmann::json::parse(slurp(person / "profile.json"));
            name = j.value("name", name);
            contact = j.value("contact", contact);
        }
        std::vector<gateway::EnrollImage> images;
        for (const auto& p : pngs_in(person)) images.push_back({imaging::read_png(p), std::nullopt});
        if (images.empty()) continue;
        (void)engine.enroll(name, contact, images);
        ++enrolled;
    }
    return enrolled;
}

}  // namespace safegate::tools
