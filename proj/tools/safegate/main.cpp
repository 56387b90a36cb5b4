#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <sys/stat.h>

#include <csignal>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "safegate/change/change_detection.hpp"
#include "safegate/gateway/engine.hpp"
#include "safegate/gateway/server.hpp"
#include "safegate/guidance/guidance.hpp"
#include "safegate/imaging/png_io.hpp"
#include "safegate/messaging/compose.hpp"
#include "safegate/perception/describe.hpp"
#include "scene_dir.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace safegate;

namespace {

constexpr std::int64_t kDefaultSimulationStartMs = 1'617'278'400'000;  // 2021-04-01T12:00:00Z

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json regions_json(const std::vector<change::ActivityRegion>& regions) {
    json arr = json::array();
    for (const auto& r : regions) {
        arr.push_back({{"bbox", {r.bbox.x, r.bbox.y, r.bbox.width, r.bbox.height}}, {"area", r.area}});
    }
    return arr;
}

json observation_json(const perception::PersonObservation& o) {
    json j{{"name", o.name}, {"position", change::to_string(o.position)}, {"desc", o.desc_words}};
    if (o.distance >= 0) j["distance"] = o.distance;
    return j;
}

std::set<fs::path> json_files(const fs::path& dir) {
    std::set<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".json") out.insert(e.path());
    }
    return out;
}

// ---- serve ----------------------------------------------------------------

int run_serve(const fs::path& config_path, std::optional<int> port) {
    auto config = gateway::GatewayConfig::load(config_path);
    if (port) config.port = *port;
    const auto key = gateway::TokenKey::load(config.key_path);

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    gateway::Engine engine(config, key);
    gateway::HttpServer server(engine);
    const int bound = server.bind(config.host, config.port);
    spdlog::info("listening on {}:{} (store {}, outbox {})", config.host, bound, config.store_dir.string(),
                 config.outbox_dir.string());

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        spdlog::info("signal {}, shutting down", sig);
        server.stop();
    });
    server.listen();
    engine.drain();
    if (waiter.joinable()) {
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
    }
    return 0;
}

// ---- keygen / token -------------------------------------------------------

int run_keygen(const std::optional<fs::path>& out) {
    const auto key = gateway::TokenKey::generate().encode();
    if (!out) {
        std::cout << key << "\n";
        return 0;
    }
    {
        std::ofstream f(*out, std::ios::trunc);
        if (!f) throw IoError("cannot write " + out->string());
        f << key << "\n";
    }
    ::chmod(out->c_str(), S_IRUSR | S_IWUSR);
    std::cerr << "wrote key to " << out->string() << "\n";
    return 0;
}

int run_token(const std::optional<fs::path>& key_file, const std::optional<fs::path>& in,
              const std::optional<std::string>& text) {
    const auto key = gateway::TokenKey::load(key_file);
    std::string payload;
    if (in) {
        payload = slurp(*in);
    } else if (text) {
        payload = *text;
    } else {
        throw InvalidParameter("one of --in or --text is required");
    }
    std::cout << gateway::encrypt_frame({reinterpret_cast<const std::uint8_t*>(payload.data()), payload.size()}, key)
              << "\n";
    return 0;
}

// ---- enroll ----------------------------------------------------------------

gateway::GatewayConfig offline_config(const fs::path& store, const fs::path& outbox) {
    gateway::GatewayConfig c;
    c.store_dir = store;
    c.outbox_dir = outbox;
    return c;
}

int run_enroll(const std::string& name, const std::string& contact, const fs::path& store,
               const std::optional<fs::path>& video, const std::vector<fs::path>& images) {
    if (!video && images.empty()) throw InvalidParameter("one of --video or --images is required");
    gateway::Engine engine(offline_config(store, store / "outbox"), gateway::TokenKey::generate());

    std::vector<gateway::EnrollImage> inputs;
    json selected = json::array();
    if (video) {
        const auto scene = tools::load_scene_dir(*video);
        std::vector<imaging::Frame> frames;
        for (const auto& f : scene) frames.push_back(f.frame);
        auto locate = [&](const imaging::Frame&, std::size_t i) -> std::optional<guidance::FaceBox> {
            if (!scene[i].manifest) return std::nullopt;
            for (const auto& b : scene[i].manifest->boxes) {
                if (b.kind == perception::DetectionKind::Face)
                    return guidance::FaceBox{b.bbox.x, b.bbox.y, b.bbox.width, b.bbox.height};
            }
            return std::nullopt;
        };
        for (auto& s : guidance::select_enrollment_frames(frames, locate)) {
            selected.push_back(scene[s.index].path.filename().string());
            inputs.push_back({std::move(s.crop), std::nullopt});
        }
        if (inputs.empty()) throw InvalidParameter("no frame in the video has a centred face");
    }
    for (const auto& p : images) inputs.push_back({imaging::read_png(p), std::nullopt});

    const auto result = engine.enroll(name, contact, inputs);
    json out{{"person_id", result.person_id},
             {"model_version", result.model_version},
             {"accepted", result.accepted},
             {"labels", result.labels}};
    if (video) out["selected_frames"] = selected;
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    fs::path frames_dir;
    std::string strategy = "binary:20";
    long long area = 400;
    int closing = 1;
    std::optional<fs::path> labels;
    std::optional<fs::path> profiles;
    fs::path out = "simulate-out";
    double fps = 5.0;
    std::int64_t start_ms = kDefaultSimulationStartMs;
    std::string camera = "cam0";
    std::int64_t notify_interval_s = 180;
    std::string detector = "auto";
    std::optional<fs::path> key_file;
};

int run_simulate(const SimulateArgs& a) {
    if (a.fps <= 0) throw InvalidParameter("--fps must be positive");
    auto config = offline_config(a.out / "store", a.out / "outbox");
    config.strategy = a.strategy;
    config.area_threshold = a.area;
    config.closing_iterations = a.closing;
    config.notify_interval_s = a.notify_interval_s;
    config.detector = a.detector;
    const auto key = a.key_file ? gateway::TokenKey::load(a.key_file) : gateway::TokenKey::generate();

    const auto scene = tools::load_scene_dir(a.frames_dir);
    const auto outbox_before = json_files(config.outbox_dir);

    std::mutex mutex;
    std::map<std::int64_t, gateway::FrameOutcome> outcomes;
    gateway::EngineDeps deps;
    deps.observer = [&](const gateway::FrameOutcome& o) {
        std::lock_guard lock(mutex);
        outcomes[o.result_id] = o;
    };
    gateway::Engine engine(config, key, std::move(deps));
    if (a.profiles) tools::enroll_profile_dir(engine, *a.profiles);

    std::vector<std::int64_t> ids;
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto png = imaging::encode_png(scene[i].frame);
        gateway::IngestRequest req;
        req.camera_id = a.camera;
        req.token = gateway::encrypt_frame(png, key, {});
        req.manifest = scene[i].manifest;
        req.captured_at_ms = a.start_ms + static_cast<std::int64_t>(static_cast<double>(i) * 1000.0 / a.fps);
        ids.push_back(engine.ingest(req).result_id);
    }
    engine.drain();

    json frames = json::array();
    json events = json::array();
    int activity = 0;
    std::vector<std::string> errors;
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const auto& o = outcomes.at(ids[i]);
        if (o.has_activity) ++activity;
        if (!o.error.empty()) errors.push_back(scene[i].path.filename().string() + ": " + o.error);
        frames.push_back({{"frame", scene[i].path.filename().string()},
                          {"timestamp", o.timestamp_ms},
                          {"activity", o.has_activity}});
        for (const auto& e : o.events) {
            events.push_back({{"frame", scene[i].path.filename().string()},
                              {"message", e.message},
                              {"status", messaging::to_string(e.status)},
                              {"created_at", e.created_at_ms}});
        }
    }

    json records = json::array();
    for (const auto& p : json_files(config.outbox_dir)) {
        if (outbox_before.count(p)) continue;
        const auto r = messaging::outbox_record_from_json(slurp(p));
        records.push_back({{"file", p.filename().string()},
                           {"channel", messaging::to_string(r.channel)},
                           {"recipient", r.recipient},
                           {"subject", r.subject},
                           {"attachment", r.attachment}});
    }
    json segments = json::array();
    for (const auto& s : engine.store().segments()) {
        segments.push_back({{"camera_id", s.camera_id},
                            {"start", s.start_ms},
                            {"end", s.end_ms},
                            {"frames", s.frame_refs.size()}});
    }

    json summary{{"strategy", change::to_string(config.change_config().strategy)},
                 {"area_threshold", config.area_threshold},
                 {"frames", scene.size()},
                 {"activity_frames", activity},
                 {"events", events},
                 {"outbox_records", records},
                 {"segments", segments},
                 {"errors", errors},
                 {"per_frame", frames}};

    if (a.labels) {
        const auto labels = tools::load_labels(*a.labels);
        change::Confusion c;
        for (std::size_t i = 1; i < scene.size(); ++i) {
            const auto it = labels.find(scene[i].path.filename().string());
            if (it == labels.end()) continue;
            const bool predicted = outcomes.at(ids[i]).has_activity;
            if (predicted && it->second) ++c.tp;
            else if (predicted) ++c.fp;
            else if (it->second) ++c.fn;
            else ++c.tn;
        }
        const auto s = change::score(c);
        summary["evaluation"] = {{"precision", s.precision}, {"recall", s.recall}, {"tp", c.tp},
                                 {"fp", c.fp},               {"fn", c.fn},         {"tn", c.tn}};
    }
    std::cout << summary.dump(2) << "\n";
    return errors.empty() ? 0 : 3;
}

// ---- describe / detect -----------------------------------------------------

int run_describe(const fs::path& image, const std::optional<fs::path>& manifest_path,
                 const std::optional<fs::path>& prev, const std::optional<fs::path>& store_dir,
                 const std::string& strategy, long long area) {
    const auto frame = imaging::read_png(image);
    std::optional<perception::Manifest> manifest;
    if (manifest_path) manifest = perception::parse_manifest(slurp(*manifest_path));
    std::vector<change::ActivityRegion> regions;
    if (prev) {
        change::ChangeConfig cc;
        cc.strategy = change::parse_strategy(strategy);
        cc.area_threshold = area;
        regions = change::detect_changes(imaging::read_png(*prev), frame, cc).regions;
    }
    perception::ProfileModel model;
    if (store_dir) {
        gateway::Store store(*store_dir);
        model = gateway::build_model(store);
    }
    perception::SceneContext scene{frame, manifest ? &*manifest : nullptr, prev ? &regions : nullptr, area};
    const auto detector = perception::make_detector("auto");
    perception::ManifestAttributeBackend attributes;
    const auto observations = perception::describe_scene(scene, *detector, model, attributes);

    json out{{"observations", json::array()}};
    for (const auto& o : observations) out["observations"].push_back(observation_json(o));
    out["message"] = observations.empty()
                         ? json(nullptr)
                         : json(messaging::compose_message(messaging::MessageInput::from_observations(observations)));
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_detect(const fs::path& prev, const fs::path& curr, const std::string& strategy, long long area, int closing) {
    change::ChangeConfig cc;
    cc.strategy = change::parse_strategy(strategy);
    cc.area_threshold = area;
    cc.closing_iterations = closing;
    const auto r = change::detect_changes(imaging::read_png(prev), imaging::read_png(curr), cc);
    json out{{"has_activity", r.has_activity},
             {"changed_pixels", r.changed_pixels},
             {"threshold", r.applied_threshold},
             {"regions", regions_json(r.regions)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("safegate"));

    CLI::App app{"safegate: assistive home-security gateway"};
    app.require_subcommand(1);
    std::string log_level = "info";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "Run the HTTP gateway");
    fs::path config_path;
    std::optional<int> port;
    serve->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    serve->add_option("--port", port, "Override the configured port");

    auto* keygen = app.add_subcommand("keygen", "Generate a 32-byte url-safe base64 key");
    std::optional<fs::path> key_out;
    keygen->add_option("--out", key_out, "Write the key to this file (mode 600)");

    auto* token = app.add_subcommand("token", "Encrypt a payload into a token");
    std::optional<fs::path> token_key, token_in;
    std::optional<std::string> token_text;
    token->add_option("--key-file", token_key, "Key file (SAFEGATE_KEY takes precedence)");
    token->add_option("--in", token_in, "Payload file")->check(CLI::ExistingFile);
    token->add_option("--text", token_text, "Literal payload, e.g. '{\"command\":\"open\"}'");

    auto* enroll = app.add_subcommand("enroll", "Enrol a person from a frame directory or face crops");
    std::string name, contact;
    fs::path enroll_store = "store";
    std::optional<fs::path> video;
    std::vector<fs::path> images;
    enroll->add_option("--name", name, "Person name")->required();
    enroll->add_option("--contact", contact, "Contact address");
    enroll->add_option("--store", enroll_store, "Store directory")->capture_default_str();
    enroll->add_option("--video", video, "Directory of PNG frames with sidecar face manifests")
        ->check(CLI::ExistingDirectory);
    enroll->add_option("--images", images, "Pre-cropped face images")->check(CLI::ExistingFile);

    auto* simulate = app.add_subcommand("simulate", "Replay a frame directory through the full pipeline");
    SimulateArgs sim;
    simulate->add_option("--frames-dir", sim.frames_dir, "PNG frames (+ <stem>.json manifests)")
        ->required()
        ->check(CLI::ExistingDirectory);
    simulate->add_option("--strategy", sim.strategy, "binary:<t> | adaptive:<block>:<c> | otsu")->capture_default_str();
    simulate->add_option("--area", sim.area, "Minimum region area in pixels")->capture_default_str();
    simulate->add_option("--closing", sim.closing, "Closing iterations")->capture_default_str();
    simulate->add_option("--labels", sim.labels, "CSV of frame,active ground truth")->check(CLI::ExistingFile);
    simulate->add_option("--profiles", sim.profiles, "Directory of per-person face crop folders")
        ->check(CLI::ExistingDirectory);
    simulate->add_option("--out", sim.out, "Output directory (store/ and outbox/)")->capture_default_str();
    simulate->add_option("--fps", sim.fps, "Frame rate used for timestamps")->capture_default_str();
    simulate->add_option("--start-ms", sim.start_ms, "Timestamp of the first frame")->capture_default_str();
    simulate->add_option("--camera", sim.camera, "Camera id")->capture_default_str();
    simulate->add_option("--notify-interval", sim.notify_interval_s, "Seconds between notifications")
        ->capture_default_str();
    simulate->add_option("--detector", sim.detector, "oracle | motion | auto")->capture_default_str();
    simulate->add_option("--key-file", sim.key_file, "Key file (default: a fresh random key)");

    auto* describe = app.add_subcommand("describe", "Describe the persons in one frame");
    fs::path describe_image;
    std::optional<fs::path> describe_manifest, describe_prev, describe_store;
    std::string describe_strategy = "binary:20";
    long long describe_area = 400;
    describe->add_option("--image", describe_image, "PNG frame")->required()->check(CLI::ExistingFile);
    describe->add_option("--manifest", describe_manifest, "Scene manifest JSON")->check(CLI::ExistingFile);
    describe->add_option("--prev", describe_prev, "Previous frame (enables the motion detector)")
        ->check(CLI::ExistingFile);
    describe->add_option("--store", describe_store, "Store with enrolled profiles")->check(CLI::ExistingDirectory);
    describe->add_option("--strategy", describe_strategy)->capture_default_str();
    describe->add_option("--area", describe_area)->capture_default_str();

    auto* detect = app.add_subcommand("detect", "Run change detection on two frames");
    fs::path detect_prev, detect_curr;
    std::string detect_strategy = "binary:20";
    long long detect_area = 400;
    int detect_closing = 1;
    detect->add_option("--prev", detect_prev, "Previous frame")->required()->check(CLI::ExistingFile);
    detect->add_option("--curr", detect_curr, "Current frame")->required()->check(CLI::ExistingFile);
    detect->add_option("--strategy", detect_strategy)->capture_default_str();
    detect->add_option("--area", detect_area)->capture_default_str();
    detect->add_option("--closing", detect_closing)->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(spdlog::level::from_str(log_level));

    try {
        if (*serve) return run_serve(config_path, port);
        if (*keygen) return run_keygen(key_out);
        if (*token) return run_token(token_key, token_in, token_text);
        if (*enroll) return run_enroll(name, contact, enroll_store, video, images);
        if (*simulate) return run_simulate(sim);
        if (*describe)
            return run_describe(describe_image, describe_manifest, describe_prev, describe_store, describe_strategy,
                                describe_area);
        if (*detect) return run_detect(detect_prev, detect_curr, detect_strategy, detect_area, detect_closing);
    } catch (const safegate::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
