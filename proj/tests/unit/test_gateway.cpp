#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "safegate/error.hpp"
#include "safegate/gateway/config.hpp"
#include "safegate/gateway/engine.hpp"
#include "safegate/gateway/server.hpp"
#include "safegate/gateway/store.hpp"
#include "safegate/gateway/token.hpp"
#include "safegate/imaging/png_io.hpp"
#include "safegate/perception/synthetic_faces.hpp"

using namespace safegate;
using namespace safegate::gateway;
using imaging::Frame;
using imaging::Rect;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// 2021-04-01 12:00 UTC.
constexpr std::int64_t kNoon = 1'617'278'400'000;

fs::path fresh_dir(const std::string& name) {
    // ctest runs cases as parallel processes; keep their scratch space apart.
    const auto dir = fs::temp_directory_path() / ("safegate_gw_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Frame background() {
    Frame f(160, 120, 3);
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 160; ++x)
            for (int c = 0; c < 3; ++c) f.at(x, y, c) = static_cast<std::uint8_t>(110 + (x / 20 + y / 20) % 3 * 10);
    return f;
}

// A 40x100 dark figure: tall enough for the motion detector to call it a person.
Frame with_figure(Frame f, int x0) {
    for (int y = 10; y < 110; ++y)
        for (int x = x0; x < x0 + 40; ++x) {
            f.at(x, y, 0) = 40;
            f.at(x, y, 1) = 60;
            f.at(x, y, 2) = 120;
        }
    return f;
}

Frame stamped(Frame f, std::int64_t t) {
    f.timestamp_ms = t;
    return f;
}

struct Clock {
    std::shared_ptr<std::atomic<std::int64_t>> now = std::make_shared<std::atomic<std::int64_t>>(kNoon);
    [[nodiscard]] std::function<std::int64_t()> fn() const {
        auto n = now;
        return [n] { return n->load(); };
    }
};

class SlowAttributes final : public perception::AttributeBackend {
public:
    [[nodiscard]] perception::Attributes describe(const perception::SceneContext&, const Rect&,
                                                  const std::optional<Rect>&) const override {
        std::this_thread::sleep_for(std::chrono::milliseconds(400));
        return {{}, {"gun"}};
    }
};

struct Rig {
    explicit Rig(const std::string& name, EngineDeps deps = {}, GatewayConfig cfg = {}) : dir(fresh_dir(name)) {
        cfg.store_dir = dir / "store";
        cfg.outbox_dir = dir / "outbox";
        outbox = std::make_shared<messaging::MemoryOutbox>();
        if (!deps.adapters.mms) deps.adapters = {outbox, outbox};
        if (!deps.clock_ms) deps.clock_ms = clock.fn();
        engine = std::make_unique<Engine>(cfg, key, std::move(deps));
    }
    ~Rig() {
        engine.reset();
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    Rig(const Rig&) = delete;
    Rig& operator=(const Rig&) = delete;

    fs::path dir;
    Clock clock;
    TokenKey key = TokenKey::generate();
    std::shared_ptr<messaging::MemoryOutbox> outbox;
    std::unique_ptr<Engine> engine;
};

std::vector<EnrollImage> face_crops(std::uint64_t identity, int first, int count) {
    std::vector<EnrollImage> out;
    for (int i = 0; i < count; ++i) out.push_back({perception::synthetic_face(identity, static_cast<std::uint64_t>(first + i)), std::nullopt});
    return out;
}

std::string b64png(const Frame& f) { return base64_encode(imaging::encode_png(f)); }

}  // namespace

TEST(Config, ParsesAndRejectsUnknownKeys) {
    const auto cfg = GatewayConfig::from_json(R"({"area_threshold": 900, "strategy": "otsu", "notify_interval_s": 60})");
    EXPECT_EQ(cfg.area_threshold, 900);
    EXPECT_EQ(cfg.change_config().area_threshold, 900);
    EXPECT_EQ(cfg.notify_interval_s, 60);
    EXPECT_EQ(cfg.relock_interval_s, 30);
    EXPECT_THROW((void)GatewayConfig::from_json(R"({"area_treshold": 900})"), InvalidParameter);
    EXPECT_THROW((void)GatewayConfig::from_json(R"({"strategy": "median"})"), InvalidParameter);
    EXPECT_THROW((void)GatewayConfig::from_json(R"({"relock_interval_s": 0})"), InvalidParameter);
    EXPECT_THROW((void)GatewayConfig::from_json("[1,2]"), InvalidParameter);
}

TEST(Config, RelativePathsFollowTheConfigFile) {
    const auto dir = fresh_dir("config");
    {
        std::ofstream out(dir / "gateway.json");
        out << R"({"store_dir": "data", "outbox_dir": "/tmp/abs-outbox"})";
    }
    const auto cfg = GatewayConfig::load(dir / "gateway.json");
    EXPECT_EQ(cfg.store_dir, dir / "data");
    EXPECT_EQ(cfg.outbox_dir, fs::path("/tmp/abs-outbox"));
}

TEST(TimePoint, ParsesUtc) {
    EXPECT_EQ(parse_time_point("2021-04-01", "12:00"), kNoon);
    EXPECT_EQ(parse_time_point("1970-01-01", "00:01"), 60'000);
    EXPECT_THROW((void)parse_time_point("2021-13-01", "12:00"), InvalidParameter);
    EXPECT_THROW((void)parse_time_point("2021-04-01", "25:00"), InvalidParameter);
    EXPECT_THROW((void)parse_time_point("yesterday", "12:00"), InvalidParameter);
}

TEST(Store, PersonIdsAreSlugs) {
    EXPECT_EQ(person_id_for("Reza"), "reza");
    EXPECT_EQ(person_id_for("  Mina  Ahmadi "), "mina-ahmadi");
    EXPECT_EQ(person_id_for("!!!"), "person");
}

TEST(Store, SegmentsMergeWithinGapAndSplitBeyondIt) {
    const auto dir = fresh_dir("store_segments");
    Store store(dir);
    store.append_activity("cam0", 1000, "a", 5000);
    store.append_activity("cam0", 4000, "b", 5000);
    store.append_activity("cam0", 9000, "c", 5000);
    store.append_activity("cam0", 20000, "d", 5000);
    store.append_activity("cam1", 5000, "e", 5000);
    const auto all = store.segments_overlapping(0, 100000);
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].camera_id, "cam0");
    EXPECT_EQ(all[0].start_ms, 1000);
    EXPECT_EQ(all[0].end_ms, 9000);
    EXPECT_EQ(all[0].frame_refs, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(all[1].camera_id, "cam1");
    EXPECT_EQ(all[2].start_ms, 20000);
    EXPECT_TRUE(store.segments_overlapping(10000, 19999).empty());
    EXPECT_EQ(store.segments_overlapping(9000, 9000).size(), 1u);
}

TEST(Store, EventsNewestFirstWithoutSuppressed) {
    const auto dir = fresh_dir("store_events");
    Store store(dir);
    store.add_event({"cam0", "one.", "", 100, messaging::Channel::MMS, messaging::EventStatus::Sent});
    store.add_event({"cam0", "two.", "", 200, messaging::Channel::MMS, messaging::EventStatus::Suppressed});
    store.add_event({"cam0", "three.", "", 300, messaging::Channel::MMS, messaging::EventStatus::Sent});
    const auto ev = store.events_since(0);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0].event.message, "three.");
    EXPECT_EQ(ev[1].event.message, "one.");
    EXPECT_EQ(store.events_since(100).size(), 1u);
    EXPECT_EQ(store.events_since(0, true).size(), 3u);
}

TEST(Store, ResolveRejectsEscapes) {
    const auto dir = fresh_dir("store_resolve");
    Store store(dir);
    EXPECT_THROW((void)store.resolve("../etc/passwd"), InvalidParameter);
    EXPECT_THROW((void)store.resolve("/etc/passwd"), InvalidParameter);
    EXPECT_EQ(store.resolve("recordings/cam0/1.png"), dir / "recordings/cam0/1.png");
}

TEST(Store, ReopensWithProfilesAndModel) {
    const auto dir = fresh_dir("store_reopen");
    {
        Store store(dir);
        std::vector<Frame> crops;
        for (int i = 1; i <= 3; ++i) crops.push_back(perception::synthetic_face(5, static_cast<std::uint64_t>(i)));
        const auto e = store.add_profile_images("Reza", "reza@example.org", crops, 1);
        EXPECT_EQ(e.person_id, "reza");
        EXPECT_EQ(e.image_paths.size(), 3u);
    }
    Store again(dir);
    const auto p = again.profile("reza");
    ASSERT_TRUE(p);
    EXPECT_EQ(p->contact, "reza@example.org");
    const auto model = build_model(again);
    ASSERT_EQ(model.size(), 1u);
    EXPECT_EQ(model.recognize(perception::synthetic_face(5, 1)).person_id, "reza");
}

TEST(Engine, IngestAcknowledgesBeforeProcessingFinishes) {
    EngineDeps deps;
    deps.attributes = std::make_shared<SlowAttributes>();
    std::atomic<int> processed{0};
    deps.observer = [&](const FrameOutcome&) { ++processed; };
    Rig rig("async", std::move(deps));
    const auto bg = imaging::encode_png(background());
    const auto fig = imaging::encode_png(with_figure(background(), 60));
    (void)rig.engine->ingest({"cam0", encrypt_frame(bg, rig.key, {.now_seconds = kNoon / 1000}), {}, kNoon});
    const auto start = std::chrono::steady_clock::now();
    const auto ack =
        rig.engine->ingest({"cam0", encrypt_frame(fig, rig.key, {.now_seconds = kNoon / 1000}), {}, kNoon + 200});
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(elapsed, std::chrono::milliseconds(300));
    EXPECT_GT(ack.result_id, 0);
    EXPECT_LT(processed.load(), 2);
    rig.engine->drain();
    EXPECT_EQ(processed.load(), 2);
    ASSERT_EQ(rig.outbox->records().size(), 1u);
    EXPECT_NE(rig.outbox->records()[0].subject.find("gun"), std::string::npos);
}

TEST(Engine, BadTokensRecordNothing) {
    Rig rig("badtoken");
    const auto png = imaging::encode_png(background());
    const auto other = TokenKey::generate();
    EXPECT_THROW((void)rig.engine->ingest({"cam0", "garbage", {}, {}}), AuthenticationError);
    EXPECT_THROW((void)rig.engine->ingest({"cam0", encrypt_frame(png, other, {.now_seconds = kNoon / 1000}), {}, {}}),
                 AuthenticationError);
    EXPECT_THROW((void)rig.engine->ingest({"cam0", encrypt_frame(png, rig.key, {.now_seconds = kNoon / 1000 - 301}), {}, {}}),
                 TokenExpired);
    const std::vector<std::uint8_t> not_png{1, 2, 3};
    EXPECT_THROW((void)rig.engine->ingest({"cam0", encrypt_frame(not_png, rig.key, {.now_seconds = kNoon / 1000}), {}, {}}),
                 InvalidParameter);
    EXPECT_THROW((void)rig.engine->ingest({"../cam", encrypt_frame(png, rig.key, {.now_seconds = kNoon / 1000}), {}, {}}),
                 InvalidParameter);
    rig.engine->drain();
    EXPECT_TRUE(rig.engine->store().segments().empty());
    EXPECT_TRUE(rig.engine->events_since(0).empty());
    EXPECT_FALSE(fs::exists(rig.engine->store().root() / "recordings" / "cam0"));
}

TEST(Engine, IdenticalFramesRecordNothing) {
    Rig rig("identical");
    for (int i = 0; i < 5; ++i) (void)rig.engine->submit("cam0", stamped(background(), kNoon + i * 200));
    rig.engine->drain();
    EXPECT_TRUE(rig.engine->store().segments().empty());
    EXPECT_TRUE(rig.outbox->records().empty());
    EXPECT_TRUE(rig.engine->query_recordings("2021-04-01", "12:00").no_activity);
}

TEST(Engine, RecordingsQueryFindsOrderedSegments) {
    Rig rig("recordings");
    const auto bg = background();
    const auto fig = with_figure(background(), 60);
    (void)rig.engine->submit("cam0", stamped(bg, kNoon + 60'000));
    (void)rig.engine->submit("cam0", stamped(fig, kNoon + 61'000));
    (void)rig.engine->submit("cam0", stamped(bg, kNoon + 62'000));
    (void)rig.engine->submit("cam0", stamped(bg, kNoon + 90'000));
    (void)rig.engine->submit("cam0", stamped(fig, kNoon + 120'000));
    rig.engine->drain();

    const auto q = rig.engine->query_recordings("2021-04-01", "12:00");
    EXPECT_FALSE(q.no_activity);
    ASSERT_EQ(q.segments.size(), 2u);
    EXPECT_EQ(q.segments[0].start_ms, kNoon + 61'000);
    EXPECT_EQ(q.segments[0].end_ms, kNoon + 62'000);
    EXPECT_EQ(q.segments[0].frame_refs.size(), 2u);
    EXPECT_EQ(q.segments[1].start_ms, kNoon + 120'000);
    EXPECT_LT(q.segments[0].start_ms, q.segments[1].start_ms);
    for (const auto& s : q.segments)
        for (const auto& ref : s.frame_refs) EXPECT_TRUE(fs::exists(rig.engine->store().resolve(ref)));

    EXPECT_TRUE(rig.engine->query_recordings("2021-04-01", "14:00").no_activity);
    EXPECT_TRUE(rig.engine->query_recordings("2021-04-01", "10:00").no_activity);
}

TEST(Engine, ThrottleSuppressesRepeatNotifications) {
    Rig rig("throttle");
    const auto bg = background();
    for (int i = 0; i < 20; ++i) {
        (void)rig.engine->submit("cam0", stamped(i % 2 ? with_figure(bg, 20 + 4 * i) : bg, kNoon + i * 10'000));
    }
    rig.engine->drain();
    ASSERT_EQ(rig.outbox->records().size(), 2u);
    EXPECT_EQ(rig.outbox->records()[1].created_at_ms - rig.outbox->records()[0].created_at_ms, 180'000);
    EXPECT_EQ(rig.engine->events_since(0).size(), 2u);
}

TEST(EngineProperty, RecordedFramesDifferFromTheirPredecessor) {
    safegate::testing::Gen gen(67);
    for (int round = 0; round < 3; ++round) {
        std::vector<FrameOutcome> outcomes;
        std::mutex m;
        EngineDeps deps;
        deps.observer = [&](const FrameOutcome& o) {
            std::lock_guard lock(m);
            outcomes.push_back(o);
        };
        Rig rig("recorded_" + std::to_string(round), std::move(deps));
        int expected = 0;
        int prev = -1;
        for (int i = 0; i < 30; ++i) {
            const int choice = gen.uniform(0, 2);  // 0 empty, 1 figure left, 2 figure right
            if (i > 0 && choice != prev) ++expected;
            prev = choice;
            const Frame f = choice == 0 ? background() : with_figure(background(), choice == 1 ? 20 : 100);
            (void)rig.engine->submit("cam0", stamped(f, kNoon + i * 1000));
        }
        rig.engine->drain();
        int recorded = 0;
        for (const auto& o : outcomes) {
            EXPECT_TRUE(o.error.empty()) << o.error;
            recorded += o.recorded;
            EXPECT_EQ(o.recorded, o.has_activity);
        }
        EXPECT_EQ(recorded, expected);
        std::size_t refs = 0;
        for (const auto& s : rig.engine->store().segments()) refs += s.frame_refs.size();
        EXPECT_EQ(refs, static_cast<std::size_t>(expected));
    }
}

TEST(Engine, EnrollmentBumpsModelVersionAndKeepsLastThree) {
    Rig rig("enroll");
    EXPECT_EQ(rig.engine->model_version(), 0);
    const auto r1 = rig.engine->enroll("Reza", "reza@example.org", face_crops(7, 1, 3));
    EXPECT_EQ(r1.person_id, "reza");
    EXPECT_EQ(r1.model_version, 1);
    EXPECT_EQ(r1.accepted, 3);
    EXPECT_EQ(r1.labels, std::vector<std::string>(3, "Face in center"));
    const auto r2 = rig.engine->enroll("Reza", "reza@example.org", face_crops(7, 4, 2));
    EXPECT_EQ(r2.person_id, "reza");
    EXPECT_EQ(r2.model_version, 2);
    EXPECT_EQ(rig.engine->model()->size(), 1u);
    EXPECT_EQ(rig.engine->model()->find("reza")->samples.size(), 5u);
    EXPECT_EQ(rig.engine->store().profile("reza")->image_paths.size(), 5u);
    int last = 2;
    for (int i = 0; i < 3; ++i) {
        const int v = rig.engine->enroll("Mina " + std::to_string(i), "", face_crops(20 + static_cast<std::uint64_t>(i), 1, 2)).model_version;
        EXPECT_GT(v, last);
        last = v;
    }
    EXPECT_EQ(rig.engine->store().model_versions(), (std::vector<int>{3, 4, 5}));
    EXPECT_EQ(rig.engine->model()->recognize(perception::synthetic_face(7, 300)).person_id, "reza");
}

TEST(Engine, EdgeFacesAreRejectedWithGuidance) {
    Rig rig("enroll_reject");
    Frame frame(640, 480, 3, 100);
    std::vector<EnrollImage> images{{frame, guidance::FaceBox{10, 10, 100, 100}},
                                    {frame, guidance::FaceBox{100, 100, 20, 20}},
                                    {frame, guidance::FaceBox{0, 10, 100, 100}}};
    try {
        (void)rig.engine->enroll("Reza", "", images);
        FAIL() << "expected EnrollmentRejected";
    } catch (const EnrollmentRejected& e) {
        EXPECT_EQ(e.labels(),
                  (std::vector<std::string>{"Face in top left", "Face is small. come closer", "No usable face"}));
    }
    EXPECT_EQ(rig.engine->model_version(), 0);
    EXPECT_TRUE(rig.engine->store().profiles().empty());
}

TEST(Engine, KnownVisitorIsNamed) {
    Rig rig("known");
    (void)rig.engine->enroll("Reza", "", face_crops(7, 1, 12));
    Frame visitor = background();
    const auto face = perception::synthetic_face(7, 100);
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x)
            for (int c = 0; c < 3; ++c) visitor.at(32 + x, 12 + y, c) = face.at(x, y);
    perception::Manifest m;
    m.boxes.push_back({perception::DetectionKind::Face, {32, 12, 96, 96}, "Reza", {"beard"}, {}});
    (void)rig.engine->submit("cam0", stamped(background(), kNoon));
    (void)rig.engine->submit("cam0", stamped(visitor, kNoon + 200), m);
    rig.engine->drain();
    ASSERT_EQ(rig.outbox->records().size(), 1u);
    EXPECT_EQ(rig.outbox->records()[0].subject.rfind("Reza has beard", 0), 0u) << rig.outbox->records()[0].subject;
}

TEST(Engine, EmergencyQueuesACall) {
    Rig rig("emergency");
    const auto rec = rig.engine->emergency("cam0");
    EXPECT_EQ(rec.channel, messaging::Channel::Call);
    EXPECT_EQ(rec.status, messaging::EventStatus::Sent);
    ASSERT_EQ(rig.outbox->records().size(), 1u);
}

class HttpTest : public ::testing::Test {
protected:
    void SetUp() override {
        rig = std::make_unique<Rig>("http");
        server = std::make_unique<HttpServer>(*rig->engine);
        port = server->start("127.0.0.1", 0);
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
    }
    void TearDown() override {
        server->stop();
        server.reset();
        rig.reset();
    }

    json post(const std::string& path, const json& body, int expect) {
        auto res = client->Post(path, body.dump(), "application/json");
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expect) << path << " " << res->body;
        return json::parse(res->body);
    }
    json get(const std::string& path, int expect = 200) {
        auto res = client->Get(path);
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expect) << path << " " << res->body;
        return json::parse(res->body);
    }
    std::string token(const std::vector<std::uint8_t>& bytes) {
        return encrypt_frame(bytes, rig->key, {.now_seconds = kNoon / 1000});
    }
    std::string door_token(const std::string& cmd) {
        const std::string s = json{{"command", cmd}}.dump();
        return token({s.begin(), s.end()});
    }

    std::unique_ptr<Rig> rig;
    std::unique_ptr<HttpServer> server;
    std::unique_ptr<httplib::Client> client;
    int port = 0;
};

TEST_F(HttpTest, HealthAndGuidance) {
    EXPECT_EQ(get("/health")["status"], "ok");
    auto g = post("/guidance", {{"window", {640, 480}}, {"box", {10, 10, 100, 100}}}, 200);
    EXPECT_EQ(g["label"], "Face in top left");
    EXPECT_EQ(g["accepted"], false);
    g = post("/guidance", {{"window", {640, 480}}, {"box", {270, 190, 100, 100}}}, 200);
    EXPECT_EQ(g["label"], "Face in center");
    EXPECT_EQ(g["accepted"], true);
    (void)post("/guidance", {{"window", {640, 480}}, {"box", {0, 0, 10, 10}}}, 400);
}

TEST_F(HttpTest, IngestEventsRecordingsAndSnapshot) {
    const auto bg = imaging::encode_png(background());
    const auto fig = imaging::encode_png(with_figure(background(), 60));
    auto a = post("/ingest", {{"camera_id", "cam0"}, {"token", token(bg)}, {"captured_at_ms", kNoon + 1000}}, 202);
    EXPECT_EQ(a["status"], "accepted");
    (void)post("/ingest", {{"camera_id", "cam0"}, {"token", token(fig)}, {"captured_at_ms", kNoon + 2000}}, 202);
    (void)post("/ingest", {{"camera_id", "cam0"}, {"token", "garbage"}}, 401);
    (void)post("/ingest", {{"camera_id", "cam0"}}, 400);
    rig->engine->drain();

    const auto events = get("/events?since=0");
    ASSERT_EQ(events.size(), 1u);
    EXPECT_EQ(events[0]["camera_id"], "cam0");
    EXPECT_EQ(events[0]["status"], "Sent");
    EXPECT_EQ(get("/events?since=" + std::to_string(kNoon + 5000)).size(), 0u);
    (void)get("/events?since=abc", 400);

    const auto rec = get("/recordings?date=2021-04-01&time=12:00");
    EXPECT_EQ(rec["status"], "ok");
    ASSERT_EQ(rec["segments"].size(), 1u);
    const auto quiet = get("/recordings?date=2021-04-02&time=12:00");
    EXPECT_EQ(quiet["status"], kNoActivityMessage);
    EXPECT_EQ(quiet["segments"].size(), 0u);
    (void)get("/recordings?date=2021-04-01", 400);

    const std::string snap = events[0]["snapshot"];
    auto res = client->Get("/snapshot?ref=" + snap);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    const std::vector<std::uint8_t> png(res->body.begin(), res->body.end());
    EXPECT_EQ(imaging::decode_png(png), with_figure(background(), 60));
    (void)get("/snapshot?ref=recordings/cam0/none.png", 404);
    (void)get("/snapshot?ref=safegate.db", 400);
}

TEST_F(HttpTest, DoorRequiresAValidToken) {
    auto d = post("/door", {{"token", door_token("open")}}, 200);
    EXPECT_EQ(d["state"], "unlocked");
    EXPECT_EQ(d["relock_deadline"], kNoon + 30'000);
    (void)post("/door", {{"token", "garbage"}}, 401);
    (void)post("/door", {{"token", door_token("explode")}}, 400);
    rig->clock.now->store(kNoon + 30'000);
    EXPECT_EQ(get("/door")["state"], "locked");
    rig->engine->door().set_power(false, kNoon + 30'000);
    (void)post("/door", {{"token", door_token("open")}}, 409);
    EXPECT_EQ(post("/door", {{"token", door_token("close")}}, 200)["state"], "locked");
}

TEST_F(HttpTest, ProfileEnrollmentAndRejection) {
    json images = json::array();
    for (int i = 1; i <= 3; ++i) images.push_back({{"png", b64png(perception::synthetic_face(7, static_cast<std::uint64_t>(i)))}});
    auto r = post("/profile", {{"name", "Reza"}, {"contact", "reza@example.org"}, {"images", images}}, 201);
    EXPECT_EQ(r["person_id"], "reza");
    EXPECT_EQ(r["model_version"], 1);
    EXPECT_EQ(r["accepted"], 3);
    EXPECT_EQ(get("/health")["persons"], 1);

    const Frame wide(640, 480, 3, 100);
    auto bad = post("/profile",
                    {{"name", "Mina"}, {"images", {{{"png", b64png(wide)}, {"face", {600, 400, 100, 100}}}}}}, 422);
    EXPECT_EQ(bad["labels"], (json{"Face in bottom right"}));
    (void)post("/profile", {{"name", "Mina"}, {"images", {"!!notbase64"}}}, 400);
    EXPECT_EQ(get("/health")["model_version"], 1);
}

TEST_F(HttpTest, EmergencyAndMalformedBodies) {
    EXPECT_EQ(post("/emergency", {{"camera_id", "cam0"}}, 202)["status"], "Sent");
    auto res = client->Post("/emergency", "{not json", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
}
