#include "safegate/gateway/server.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "safegate/imaging/png_io.hpp"

namespace safegate::gateway {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& message) { reply(res, status, {{"error", message}}); }

json parse_body(const httplib::Request& req) {
    try {
        json j = json::parse(req.body);
        if (!j.is_object()) throw InvalidParameter("request body must be a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidParameter(std::string("missing field: ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidParameter(std::string("bad field: ") + key);
    }
}

json door_json(const access::DoorState& s) {
    return {{"state", access::to_string(s.state)},
            {"relock_deadline", s.relock_deadline_ms ? json(*s.relock_deadline_ms) : json(nullptr)},
            {"powered", s.powered}};
}

json event_json(const StoredEvent& e) {
    return {{"id", e.id},
            {"camera_id", e.event.camera_id},
            {"message", e.event.message},
            {"snapshot", e.event.snapshot_ref},
            {"created_at", e.event.created_at_ms},
            {"channel", messaging::to_string(e.event.channel)},
            {"status", messaging::to_string(e.event.status)}};
}

json segment_json(const RecordingSegment& s) {
    return {{"id", s.id},         {"camera_id", s.camera_id}, {"start", s.start_ms},
            {"end", s.end_ms},    {"frames", s.frame_refs},   {"snapshot", s.snapshot_ref}};
}

guidance::FaceBox box_from(const json& j) {
    auto v = j.get<std::vector<int>>();
    if (v.size() != 4) throw InvalidParameter("box must be [x, y, w, h]");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace

struct HttpServer::Impl {
    explicit Impl(Engine& e) : engine(e) {}

    Engine& engine;
    httplib::Server server;
    std::thread thread;
    std::thread ticker;
    std::atomic<bool> running{false};

    void handle(const httplib::Request& req, httplib::Response& res,
                const std::function<void(const httplib::Request&, httplib::Response&)>& fn) {
        try {
            fn(req, res);
        } catch (const EnrollmentRejected& e) {
            reply(res, 422, {{"error", e.what()}, {"labels", e.labels()}});
        } catch (const AuthenticationError& e) {
            fail(res, 401, e.what());
        } catch (const TokenExpired& e) {
            fail(res, 401, e.what());
        } catch (const access::FailSecureError& e) {
            fail(res, 409, e.what());
        } catch (const InvalidParameter& e) {
            fail(res, 400, e.what());
        } catch (const DimensionMismatch& e) {
            fail(res, 400, e.what());
        } catch (const std::exception& e) {
            spdlog::error("{} {}: {}", req.method, req.path, e.what());
            fail(res, 500, "internal error");
        }
    }

    template <typename Fn>
    void post(const char* path, Fn fn) {
        server.Post(path, [this, fn](const httplib::Request& req, httplib::Response& res) { handle(req, res, fn); });
    }
    template <typename Fn>
    void get(const char* path, Fn fn) {
        server.Get(path, [this, fn](const httplib::Request& req, httplib::Response& res) { handle(req, res, fn); });
    }

    void routes() {
        post("/ingest", [this](const httplib::Request& req, httplib::Response& res) {
            const json body = parse_body(req);
            IngestRequest in;
            in.camera_id = field<std::string>(body, "camera_id");
            in.token = field<std::string>(body, "token");
            if (body.contains("manifest") && !body["manifest"].is_null())
                in.manifest = perception::parse_manifest(body["manifest"].dump());
            if (body.contains("captured_at_ms")) in.captured_at_ms = field<std::int64_t>(body, "captured_at_ms");
            const auto ack = engine.ingest(in);
            reply(res, 202, {{"result_id", ack.result_id}, {"status", "accepted"}});
        });

        post("/profile", [this](const httplib::Request& req, httplib::Response& res) {
            const json body = parse_body(req);
            const auto name = field<std::string>(body, "name");
            const auto contact = body.value("contact", std::string{});
            if (!body.contains("images") || !body["images"].is_array())
                throw InvalidParameter("images must be an array");
            std::vector<EnrollImage> images;
            for (const auto& item : body["images"]) {
                const auto b64 = item.is_string() ? item.get<std::string>() : field<std::string>(item, "png");
                std::vector<std::uint8_t> bytes;
                try {
                    bytes = base64_decode(b64);
                } catch (const Error&) {
                    bytes = base64url_decode(b64);
                }
                EnrollImage img{imaging::decode_png(bytes), std::nullopt};
                if (item.is_object() && item.contains("face") && !item["face"].is_null())
                    img.face = box_from(item["face"]);
                images.push_back(std::move(img));
            }
            const auto result = engine.enroll(name, contact, images);
            reply(res, 201,
                  {{"person_id", result.person_id},
                   {"model_version", result.model_version},
                   {"accepted", result.accepted},
                   {"labels", result.labels}});
        });

        get("/events", [this](const httplib::Request& req, httplib::Response& res) {
            std::int64_t since = 0;
            if (req.has_param("since")) {
                try {
                    since = std::stoll(req.get_param_value("since"));
                } catch (const std::exception&) {
                    throw InvalidParameter("since must be an integer timestamp in milliseconds");
                }
            }
            json arr = json::array();
            for (const auto& e : engine.events_since(since)) arr.push_back(event_json(e));
            reply(res, 200, arr);
        });

        get("/recordings", [this](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("date") || !req.has_param("time"))
                throw InvalidParameter("date and time parameters are required");
            const auto q = engine.query_recordings(req.get_param_value("date"), req.get_param_value("time"));
            json segs = json::array();
            for (const auto& s : q.segments) segs.push_back(segment_json(s));
            json body{{"from", q.from_ms}, {"to", q.to_ms}, {"segments", segs}};
            body["status"] = q.no_activity ? kNoActivityMessage : "ok";
            if (q.no_activity) body["message"] = kNoActivityMessage;
            reply(res, 200, body);
        });

        post("/door", [this](const httplib::Request& req, httplib::Response& res) {
            const json body = parse_body(req);
            const auto token = field<std::string>(body, "token");
            DecryptOptions opts;
            opts.now_seconds = engine.now_ms() / 1000;
            if (engine.config().token_ttl_s > 0) opts.ttl_seconds = engine.config().token_ttl_s;
            const auto plain = decrypt_frame(token, engine.key(), opts);
            json cmd;
            try {
                cmd = json::parse(plain.begin(), plain.end());
            } catch (const json::exception&) {
                throw InvalidParameter("door token does not carry a JSON command");
            }
            const auto command = access::parse_command(field<std::string>(cmd, "command"));
            reply(res, 200, door_json(engine.door().apply(command, engine.now_ms())));
        });

        get("/door", [this](const httplib::Request&, httplib::Response& res) {
            reply(res, 200, door_json(engine.door().tick(engine.now_ms())));
        });

        post("/guidance", [this](const httplib::Request& req, httplib::Response& res) {
            const json body = parse_body(req);
            const auto window = field<std::vector<int>>(body, "window");
            if (window.size() != 2) throw InvalidParameter("window must be [w, h]");
            if (!body.contains("box")) throw InvalidParameter("missing field: box");
            const auto box = box_from(body["box"]);
            const auto pos = guidance::face_position(window[0], window[1], box);
            reply(res, 200, {{"label", guidance::label(pos)}, {"accepted", pos == guidance::FacePosition::Center}});
        });

        post("/emergency", [this](const httplib::Request& req, httplib::Response& res) {
            const json body = parse_body(req);
            const auto record = engine.emergency(field<std::string>(body, "camera_id"));
            reply(res, 202, {{"status", messaging::to_string(record.status)}, {"recipient", record.recipient}});
        });

        get("/snapshot", [this](const httplib::Request& req, httplib::Response& res) {
            if (!req.has_param("ref")) throw InvalidParameter("ref parameter is required");
            const auto ref = req.get_param_value("ref");
            if (ref.rfind("recordings/", 0) != 0) throw InvalidParameter("not a recording reference");
            std::ifstream in(engine.store().resolve(ref), std::ios::binary);
            if (!in) {
                fail(res, 404, "no such snapshot");
                return;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            res.status = 200;
            res.set_content(ss.str(), "image/png");
        });

        get("/health", [this](const httplib::Request&, httplib::Response& res) {
            const auto model = engine.model();
            reply(res, 200,
                  {{"status", "ok"}, {"model_version", engine.model_version()}, {"persons", model->size()}});
        });
    }

    void tick_loop() {
        while (running) {
            try {
                engine.door().tick(engine.now_ms());
            } catch (const std::exception& e) {
                spdlog::warn("door tick failed: {}", e.what());
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
    }
};

HttpServer::HttpServer(Engine& engine) : impl_(std::make_unique<Impl>(engine)) {
    impl_->server.set_payload_max_length(64 * 1024 * 1024);
    impl_->routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
    } else if (!impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() {
    impl_->running = true;
    impl_->ticker = std::thread([this] { impl_->tick_loop(); });
    impl_->server.listen_after_bind();
    impl_->running = false;
}

int HttpServer::start(const std::string& host, int port) {
    const int bound = bind(host, port);
    impl_->thread = std::thread([this] { listen(); });
    impl_->server.wait_until_ready();
    return bound;
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
    impl_->running = false;
    if (impl_->ticker.joinable()) impl_->ticker.join();
}

}  // namespace safegate::gateway
