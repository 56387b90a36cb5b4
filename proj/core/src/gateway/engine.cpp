#include "safegate/gateway/engine.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <ctime>

#include "safegate/illumination/illumination.hpp"
#include "safegate/imaging/color.hpp"
#include "safegate/imaging/png_io.hpp"
#include "safegate/messaging/compose.hpp"
#include "safegate/perception/describe.hpp"

namespace safegate::gateway {

namespace {

std::int64_t system_now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void validate_camera_id(const std::string& id) {
    if (id.empty() || id.size() > 64) throw InvalidParameter("camera_id must be 1..64 characters");
    for (char ch : id) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                        ch == '-' || ch == '_';
        if (!ok) throw InvalidParameter("camera_id may only contain letters, digits, '-' and '_'");
    }
}

}  // namespace

std::int64_t parse_time_point(const std::string& date, const std::string& time) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    char tail = 0;
    if (date.size() != 10 || std::sscanf(date.c_str(), "%4d-%2d-%2d%c", &y, &mo, &d, &tail) != 3)
        throw InvalidParameter("date must be YYYY-MM-DD");
    if (time.size() != 5 || std::sscanf(time.c_str(), "%2d:%2d%c", &h, &mi, &tail) != 2)
        throw InvalidParameter("time must be HH:MM");
    static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (y < 1970 || mo < 1 || mo > 12 || d < 1 || d > kDays[mo - 1] || (mo == 2 && d == 29 && !leap))
        throw InvalidParameter("date out of range: " + date);
    if (h < 0 || h > 23 || mi < 0 || mi > 59) throw InvalidParameter("time out of range: " + time);
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    return static_cast<std::int64_t>(timegm(&tm)) * 1000;
}

Engine::Engine(GatewayConfig config, TokenKey key, EngineDeps deps)
    : config_(std::move(config)),
      change_((config_.validate(), config_.change_config())),
      key_(key),
      deps_(std::move(deps)),
      store_(config_.store_dir),
      throttle_(config_.notify_interval_s * 1000),
      door_(config_.relock_interval_s * 1000,
            deps_.actuator ? deps_.actuator : std::make_shared<access::SimulatedActuator>()) {
    if (!deps_.detector) deps_.detector = perception::make_detector(config_.detector);
    if (!deps_.attributes) deps_.attributes = std::make_shared<perception::ManifestAttributeBackend>();
    if (!deps_.adapters.mms || !deps_.adapters.call) {
        auto file = std::make_shared<messaging::FileOutbox>(config_.outbox_dir);
        if (!deps_.adapters.mms) deps_.adapters.mms = file;
        if (!deps_.adapters.call) deps_.adapters.call = file;
    }
    if (!deps_.clock_ms) deps_.clock_ms = system_now_ms;
    rebuild_model();
}

Engine::~Engine() {
    {
        std::lock_guard lock(queue_mutex_);
        stopping_ = true;
    }
    queue_cv_.notify_all();
    for (auto& [id, cam] : cameras_) {
        if (cam->worker.joinable()) cam->worker.join();
    }
}

std::int64_t Engine::now_ms() const { return deps_.clock_ms(); }

void Engine::rebuild_model() {
    auto model = std::make_shared<const perception::ProfileModel>(build_model(store_));
    std::lock_guard lock(model_mutex_);
    model_ = std::move(model);
    model_version_ = store_.latest_model_version();
}

std::shared_ptr<const perception::ProfileModel> Engine::model() const {
    std::lock_guard lock(model_mutex_);
    return model_;
}

int Engine::model_version() const {
    std::lock_guard lock(model_mutex_);
    return model_version_;
}

IngestAck Engine::ingest(const IngestRequest& request) {
    validate_camera_id(request.camera_id);
    DecryptOptions opts;
    opts.now_seconds = now_ms() / 1000;
    if (config_.token_ttl_s > 0) opts.ttl_seconds = config_.token_ttl_s;
    std::vector<std::uint8_t> png;
    try {
        png = decrypt_frame(request.token, key_, opts);
    } catch (const Error& e) {
        spdlog::warn("ingest from {} rejected: {}", request.camera_id, e.what());
        throw;
    }
    imaging::Frame frame = [&] {
        try {
            return imaging::decode_png(png);
        } catch (const Error& e) {
            spdlog::warn("ingest from {}: undecodable frame: {}", request.camera_id, e.what());
            throw InvalidParameter(std::string("malformed frame: ") + e.what());
        }
    }();
    frame.timestamp_ms = request.captured_at_ms.value_or(now_ms());
    return submit(request.camera_id, std::move(frame), request.manifest);
}

Engine::Camera& Engine::camera_for(const std::string& id) {
    auto it = cameras_.find(id);
    if (it != cameras_.end()) return *it->second;
    auto cam = std::make_unique<Camera>();
    cam->id = id;
    Camera& ref = *cam;
    cameras_.emplace(id, std::move(cam));
    ref.worker = std::thread([this, &ref] { run(ref); });
    return ref;
}

IngestAck Engine::submit(const std::string& camera_id, imaging::Frame frame,
                         std::optional<perception::Manifest> manifest) {
    validate_camera_id(camera_id);
    frame.camera_id = camera_id;
    const std::int64_t id = next_result_id_.fetch_add(1);
    {
        std::lock_guard lock(queue_mutex_);
        if (stopping_) throw Error("engine is shutting down");
        camera_for(camera_id).queue.push_back({id, std::move(frame), std::move(manifest)});
        ++in_flight_;
    }
    queue_cv_.notify_all();
    return {id};
}

void Engine::drain() {
    std::unique_lock lock(queue_mutex_);
    idle_cv_.wait(lock, [this] { return in_flight_ == 0; });
}

void Engine::run(Camera& cam) {
    for (;;) {
        Job job{0, {}, std::nullopt};
        {
            std::unique_lock lock(queue_mutex_);
            queue_cv_.wait(lock, [&] { return stopping_ || !cam.queue.empty(); });
            if (cam.queue.empty()) return;
            job = std::move(cam.queue.front());
            cam.queue.pop_front();
        }
        FrameOutcome outcome;
        try {
            outcome = process(cam, job);
        } catch (const std::exception& e) {
            outcome.result_id = job.result_id;
            outcome.camera_id = cam.id;
            outcome.error = e.what();
            spdlog::error("camera {} frame {}: {}", cam.id, job.result_id, e.what());
        }
        if (deps_.observer) {
            try {
                deps_.observer(outcome);
            } catch (const std::exception& e) {
                spdlog::warn("frame observer failed: {}", e.what());
            }
        }
        {
            std::lock_guard lock(queue_mutex_);
            --in_flight_;
        }
        idle_cv_.notify_all();
    }
}

FrameOutcome Engine::process(Camera& cam, Job& job) {
    FrameOutcome out;
    out.result_id = job.result_id;
    out.camera_id = cam.id;
    out.timestamp_ms = job.frame.timestamp_ms;

    const imaging::Frame& frame = job.frame;
    if (!cam.previous || cam.previous->width() != frame.width() || cam.previous->height() != frame.height()) {
        cam.previous = frame;
        return out;
    }
    const change::ChangeResult change = change::detect_changes(*cam.previous, frame, change_);
    cam.previous = frame;
    out.has_activity = change.has_activity;
    if (!change.has_activity) return out;

    const std::string ref = store_.save_frame(cam.id, frame);
    store_.append_activity(cam.id, frame.timestamp_ms, ref, config_.segment_gap_s * 1000);
    out.recorded = true;

    const auto channel = messaging::parse_channel(config_.channel);
    const auto lighting = illumination::assess_lighting(frame);
    if (lighting.condition == illumination::LightingCondition::Poor) {
        notify(cam.id + "/lighting",
               {cam.id, messaging::kPoorLightingMessage, ref, frame.timestamp_ms, channel,
                messaging::EventStatus::Pending},
               out);
    }

    imaging::Frame view = frame;
    if (frame.channels() == 3 &&
        (lighting.condition == illumination::LightingCondition::Poor ||
         illumination::select_gamma(frame).gamma != 1.0)) {
        view = illumination::normalize_illumination(frame);
        view.timestamp_ms = frame.timestamp_ms;
        view.camera_id = frame.camera_id;
    }

    const auto model = this->model();
    perception::SceneContext scene{view, job.manifest ? &*job.manifest : nullptr, &change.regions,
                                   config_.area_threshold};
    std::vector<perception::PersonObservation> observations;
    try {
        observations = perception::describe_scene(scene, *deps_.detector, *model, *deps_.attributes);
    } catch (const BackendUnavailable& e) {
        spdlog::info("camera {}: no detector result: {}", cam.id, e.what());
    }
    if (observations.empty()) return out;

    auto input = messaging::MessageInput::from_observations(std::move(observations));
    input.harmful_lexicon = config_.harmful_lexicon;
    messaging::ComposeOptions options;
    options.pluralize = config_.pluralize;
    notify(cam.id,
           {cam.id, messaging::compose_message(input, options), ref, frame.timestamp_ms, channel,
            messaging::EventStatus::Pending},
           out);
    return out;
}

void Engine::notify(const std::string& throttle_key, messaging::NotificationEvent event, FrameOutcome& outcome) {
    if (throttle_.decide(throttle_key, event.created_at_ms) == messaging::ThrottleDecision::Suppress) {
        event.status = messaging::EventStatus::Suppressed;
    } else {
        const auto record = messaging::dispatch(event, config_.resident_contact, deps_.adapters);
        event.status = record.status;
        if (record.status == messaging::EventStatus::Failed)
            spdlog::error("notification for {} failed: {}", event.camera_id, record.error);
    }
    store_.add_event(event);
    outcome.events.push_back(std::move(event));
}

EnrollResult Engine::enroll(const std::string& name, const std::string& contact,
                            const std::vector<EnrollImage>& images) {
    if (name.empty()) throw InvalidParameter("name must not be empty");
    if (images.empty()) throw InvalidParameter("at least one image is required");

    EnrollResult result;
    std::vector<imaging::Frame> crops;
    for (const auto& img : images) {
        if (!img.face) {
            if (img.image.width() < perception::kLbpMinCropSide || img.image.height() < perception::kLbpMinCropSide) {
                result.labels.emplace_back(guidance::label(guidance::FacePosition::Small));
                continue;
            }
            result.labels.emplace_back(guidance::label(guidance::FacePosition::Center));
            crops.push_back(imaging::to_grayscale(img.image));
            continue;
        }
        const auto& box = *img.face;
        guidance::FacePosition pos{};
        try {
            pos = guidance::face_position(img.image.width(), img.image.height(), box);
        } catch (const InvalidParameter&) {
            result.labels.emplace_back("No usable face");
            continue;
        }
        result.labels.emplace_back(guidance::label(pos));
        const imaging::Rect rect{box.x, box.y, box.width, box.height};
        if (pos != guidance::FacePosition::Center || !img.image.bounds().contains(rect)) continue;
        crops.push_back(imaging::to_grayscale(imaging::crop(img.image, rect)));
    }
    if (crops.empty()) throw EnrollmentRejected("no usable face in the submitted images", result.labels);

    std::lock_guard lock(enroll_mutex_);
    const std::int64_t now = now_ms();
    const ProfileEntry entry = store_.add_profile_images(name, contact, crops, now);
    const auto current = model();
    auto next = std::make_shared<const perception::ProfileModel>(
        current->enroll({entry.person_id, entry.name, entry.contact}, crops));
    const int version = store_.record_model_version(*next, now, config_.model_retention);
    {
        std::lock_guard mlock(model_mutex_);
        model_ = next;
        model_version_ = version;
    }
    result.person_id = entry.person_id;
    result.model_version = version;
    result.accepted = static_cast<int>(crops.size());
    spdlog::info("enrolled {} ({} images), model v{}", entry.person_id, crops.size(), version);
    return result;
}

RecordingQuery Engine::query_recordings(std::int64_t from_ms) const {
    RecordingQuery q;
    q.from_ms = from_ms;
    q.to_ms = from_ms + config_.recording_window_min * 60'000;
    q.segments = store_.segments_overlapping(q.from_ms, q.to_ms);
    q.no_activity = q.segments.empty();
    return q;
}

RecordingQuery Engine::query_recordings(const std::string& date, const std::string& time) const {
    return query_recordings(parse_time_point(date, time));
}

std::vector<StoredEvent> Engine::events_since(std::int64_t since_ms) const { return store_.events_since(since_ms); }

messaging::OutboxRecord Engine::emergency(const std::string& camera_id) {
    validate_camera_id(camera_id);
    messaging::NotificationEvent event{camera_id, "Emergency call requested for camera " + camera_id, "", now_ms(),
                                       messaging::Channel::Call, messaging::EventStatus::Pending};
    auto record = messaging::dispatch(event, config_.resident_contact, deps_.adapters);
    event.status = record.status;
    store_.add_event(event);
    return record;
}

}  // namespace safegate::gateway
