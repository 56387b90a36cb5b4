#include "safegate/gateway/store.hpp"

#include <sqlite3.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "safegate/error.hpp"
#include "safegate/imaging/png_io.hpp"

namespace safegate::gateway {

namespace fs = std::filesystem;

namespace {

class Stmt {
public:
    Stmt(sqlite3* db, const char* sql) : db_(db) {
        if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK)
            throw IoError(std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
    ~Stmt() { sqlite3_finalize(stmt_); }
    Stmt(const Stmt&) = delete;
    Stmt& operator=(const Stmt&) = delete;

    Stmt& bind(int i, std::int64_t v) {
        sqlite3_bind_int64(stmt_, i, v);
        return *this;
    }
    Stmt& bind(int i, const std::string& v) {
        sqlite3_bind_text(stmt_, i, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
        return *this;
    }

    /// true while rows remain
    bool step() {
        int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW) return true;
        if (rc == SQLITE_DONE) return false;
        throw IoError(std::string("sqlite step: ") + sqlite3_errmsg(db_));
    }

    std::int64_t i64(int col) const { return sqlite3_column_int64(stmt_, col); }
    std::string text(int col) const {
        const auto* p = sqlite3_column_text(stmt_, col);
        return p ? reinterpret_cast<const char*>(p) : std::string{};
    }

private:
    sqlite3* db_;
    sqlite3_stmt* stmt_ = nullptr;
};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS persons (
    id TEXT PRIMARY KEY,
    name TEXT NOT NULL,
    contact TEXT NOT NULL,
    enrolled_at INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS images (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    person_id TEXT NOT NULL REFERENCES persons(id),
    path TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS model_versions (
    version INTEGER PRIMARY KEY,
    path TEXT NOT NULL,
    persons INTEGER NOT NULL,
    created_at INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS segments (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    camera TEXT NOT NULL,
    start_ms INTEGER NOT NULL,
    end_ms INTEGER NOT NULL,
    snapshot TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS segments_by_time ON segments(start_ms, end_ms);
CREATE TABLE IF NOT EXISTS segment_frames (
    segment_id INTEGER NOT NULL REFERENCES segments(id),
    at_ms INTEGER NOT NULL,
    path TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS events (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    camera TEXT NOT NULL,
    message TEXT NOT NULL,
    snapshot TEXT NOT NULL,
    created_at INTEGER NOT NULL,
    channel TEXT NOT NULL,
    status TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS events_by_time ON events(created_at);
)sql";

std::string safe_component(const std::string& s) {
    std::string out;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        out += (std::isalnum(c) || ch == '-' || ch == '_') ? ch : '_';
    }
    return out.empty() ? "_" : out;
}

fs::path unique_path(const fs::path& dir, const std::string& stem, const std::string& ext) {
    fs::path p = dir / (stem + ext);
    for (int n = 1; fs::exists(p); ++n) p = dir / (stem + "-" + std::to_string(n) + ext);
    return p;
}

}  // namespace

std::string person_id_for(const std::string& name) {
    std::string id;
    bool dash = false;
    for (char ch : name) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            if (dash && !id.empty()) id += '-';
            id += static_cast<char>(std::tolower(c));
            dash = false;
        } else {
            dash = true;
        }
    }
    return id.empty() ? "person" : id;
}

Store::Store(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_ / "profiles");
    fs::create_directories(root_ / "recordings");
    fs::create_directories(root_ / "models");
    const auto db_path = root_ / "safegate.db";
    if (sqlite3_open(db_path.c_str(), &db_) != SQLITE_OK) {
        std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
        sqlite3_close(db_);
        throw IoError("cannot open " + db_path.string() + ": " + msg);
    }
    sqlite3_busy_timeout(db_, 5000);
    exec("PRAGMA journal_mode=WAL;");
    exec("PRAGMA foreign_keys=ON;");
    exec(kSchema);
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const char* sql) const {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw IoError("sqlite: " + msg);
    }
}

ProfileEntry Store::add_profile_images(const std::string& name, const std::string& contact,
                                       const std::vector<imaging::Frame>& crops, std::int64_t now_ms) {
    std::lock_guard lock(mutex_);
    const std::string id = person_id_for(name);
    const fs::path dir = root_ / "profiles" / id;
    fs::create_directories(dir);

    exec("BEGIN;");
    try {
        Stmt up(db_,
                "INSERT INTO persons(id, name, contact, enrolled_at) VALUES(?1, ?2, ?3, ?4) "
                "ON CONFLICT(id) DO UPDATE SET name = ?2, contact = ?3");
        up.bind(1, id).bind(2, name).bind(3, contact).bind(4, now_ms);
        up.step();

        Stmt count(db_, "SELECT COUNT(*) FROM images WHERE person_id = ?1");
        count.bind(1, id);
        count.step();
        std::int64_t next = count.i64(0);

        for (const auto& crop : crops) {
            char stem[16];
            std::snprintf(stem, sizeof stem, "%03lld", static_cast<long long>(next++));
            const fs::path file = unique_path(dir, stem, ".png");
            imaging::write_png(file, crop);
            Stmt ins(db_, "INSERT INTO images(person_id, path) VALUES(?1, ?2)");
            ins.bind(1, id).bind(2, fs::relative(file, root_).generic_string());
            ins.step();
        }
        exec("COMMIT;");
    } catch (...) {
        exec("ROLLBACK;");
        throw;
    }

    Stmt q(db_, "SELECT name, contact, enrolled_at FROM persons WHERE id = ?1");
    q.bind(1, id);
    q.step();
    ProfileEntry e{id, q.text(0), q.text(1), {}, q.i64(2)};
    Stmt imgs(db_, "SELECT path FROM images WHERE person_id = ?1 ORDER BY id");
    imgs.bind(1, id);
    while (imgs.step()) e.image_paths.push_back(imgs.text(0));
    return e;
}

std::vector<ProfileEntry> Store::profiles() const {
    std::lock_guard lock(mutex_);
    std::vector<ProfileEntry> out;
    Stmt q(db_, "SELECT id, name, contact, enrolled_at FROM persons ORDER BY enrolled_at, id");
    while (q.step()) out.push_back({q.text(0), q.text(1), q.text(2), {}, q.i64(3)});
    for (auto& e : out) {
        Stmt imgs(db_, "SELECT path FROM images WHERE person_id = ?1 ORDER BY id");
        imgs.bind(1, e.person_id);
        while (imgs.step()) e.image_paths.push_back(imgs.text(0));
    }
    return out;
}

std::optional<ProfileEntry> Store::profile(const std::string& person_id) const {
    for (auto& e : profiles())
        if (e.person_id == person_id) return e;
    return std::nullopt;
}

int Store::record_model_version(const perception::ProfileModel& model, std::int64_t now_ms, int retain) {
    if (retain < 1) throw InvalidParameter("model retention must be at least 1");
    std::lock_guard lock(mutex_);
    Stmt last(db_, "SELECT COALESCE(MAX(version), 0) FROM model_versions");
    last.step();
    const int version = static_cast<int>(last.i64(0)) + 1;

    nlohmann::json j;
    j["version"] = version;
    j["created_at"] = now_ms;
    j["unknown_threshold"] = model.unknown_threshold();
    j["persons"] = nlohmann::json::array();
    for (const auto& p : model.persons()) {
        j["persons"].push_back({{"id", p.info.id},
                                {"name", p.info.name},
                                {"contact", p.info.contact},
                                {"samples", p.samples.size()},
                                {"centroid", p.centroid}});
    }
    const fs::path file = root_ / "models" / ("v" + std::to_string(version) + ".json");
    {
        std::ofstream out(file);
        if (!out) throw IoError("cannot write " + file.string());
        out << j.dump();
    }
    Stmt ins(db_, "INSERT INTO model_versions(version, path, persons, created_at) VALUES(?1, ?2, ?3, ?4)");
    ins.bind(1, version)
        .bind(2, fs::relative(file, root_).generic_string())
        .bind(3, static_cast<std::int64_t>(model.size()))
        .bind(4, now_ms);
    ins.step();

    Stmt old(db_, "SELECT version, path FROM model_versions WHERE version <= ?1");
    old.bind(1, version - retain);
    std::vector<std::pair<std::int64_t, std::string>> stale;
    while (old.step()) stale.emplace_back(old.i64(0), old.text(1));
    for (const auto& [v, path] : stale) {
        std::error_code ec;
        fs::remove(root_ / path, ec);
        Stmt del(db_, "DELETE FROM model_versions WHERE version = ?1");
        del.bind(1, v);
        del.step();
    }
    return version;
}

int Store::latest_model_version() const {
    std::lock_guard lock(mutex_);
    Stmt q(db_, "SELECT COALESCE(MAX(version), 0) FROM model_versions");
    q.step();
    return static_cast<int>(q.i64(0));
}

std::vector<int> Store::model_versions() const {
    std::lock_guard lock(mutex_);
    std::vector<int> out;
    Stmt q(db_, "SELECT version FROM model_versions ORDER BY version");
    while (q.step()) out.push_back(static_cast<int>(q.i64(0)));
    return out;
}

std::string Store::save_frame(const std::string& camera_id, const imaging::Frame& frame) {
    const fs::path dir = root_ / "recordings" / safe_component(camera_id);
    std::lock_guard lock(mutex_);
    fs::create_directories(dir);
    const fs::path file = unique_path(dir, std::to_string(frame.timestamp_ms), ".png");
    imaging::write_png(file, frame);
    return fs::relative(file, root_).generic_string();
}

std::vector<std::string> Store::frames_of(std::int64_t segment_id) const {
    std::vector<std::string> out;
    Stmt q(db_, "SELECT path FROM segment_frames WHERE segment_id = ?1 ORDER BY at_ms, rowid");
    q.bind(1, segment_id);
    while (q.step()) out.push_back(q.text(0));
    return out;
}

RecordingSegment Store::append_activity(const std::string& camera_id, std::int64_t at_ms, const std::string& frame_ref,
                                        std::int64_t gap_ms) {
    std::lock_guard lock(mutex_);
    exec("BEGIN;");
    try {
        Stmt last(db_, "SELECT id, start_ms, end_ms FROM segments WHERE camera = ?1 ORDER BY end_ms DESC, id DESC LIMIT 1");
        last.bind(1, camera_id);
        std::int64_t seg_id = 0;
        if (last.step() && at_ms >= last.i64(1) && at_ms - last.i64(2) <= gap_ms) {
            seg_id = last.i64(0);
            Stmt up(db_, "UPDATE segments SET end_ms = MAX(end_ms, ?2) WHERE id = ?1");
            up.bind(1, seg_id).bind(2, at_ms);
            up.step();
        } else {
            Stmt ins(db_, "INSERT INTO segments(camera, start_ms, end_ms, snapshot) VALUES(?1, ?2, ?2, ?3)");
            ins.bind(1, camera_id).bind(2, at_ms).bind(3, frame_ref);
            ins.step();
            seg_id = sqlite3_last_insert_rowid(db_);
        }
        Stmt fr(db_, "INSERT INTO segment_frames(segment_id, at_ms, path) VALUES(?1, ?2, ?3)");
        fr.bind(1, seg_id).bind(2, at_ms).bind(3, frame_ref);
        fr.step();
        exec("COMMIT;");

        Stmt q(db_, "SELECT camera, start_ms, end_ms, snapshot FROM segments WHERE id = ?1");
        q.bind(1, seg_id);
        q.step();
        return {seg_id, q.text(0), q.i64(1), q.i64(2), frames_of(seg_id), q.text(3)};
    } catch (...) {
        sqlite3_exec(db_, "ROLLBACK;", nullptr, nullptr, nullptr);
        throw;
    }
}

std::vector<RecordingSegment> Store::segments_overlapping(std::int64_t from_ms, std::int64_t to_ms) const {
    std::lock_guard lock(mutex_);
    std::vector<RecordingSegment> out;
    Stmt q(db_,
           "SELECT id, camera, start_ms, end_ms, snapshot FROM segments "
           "WHERE end_ms >= ?1 AND start_ms <= ?2 ORDER BY start_ms, id");
    q.bind(1, from_ms).bind(2, to_ms);
    while (q.step()) out.push_back({q.i64(0), q.text(1), q.i64(2), q.i64(3), {}, q.text(4)});
    for (auto& s : out) s.frame_refs = frames_of(s.id);
    return out;
}

std::vector<RecordingSegment> Store::segments() const {
    return segments_overlapping(std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
}

std::int64_t Store::add_event(const messaging::NotificationEvent& event) {
    std::lock_guard lock(mutex_);
    Stmt ins(db_,
             "INSERT INTO events(camera, message, snapshot, created_at, channel, status) "
             "VALUES(?1, ?2, ?3, ?4, ?5, ?6)");
    ins.bind(1, event.camera_id)
        .bind(2, event.message)
        .bind(3, event.snapshot_ref)
        .bind(4, event.created_at_ms)
        .bind(5, std::string(messaging::to_string(event.channel)))
        .bind(6, std::string(messaging::to_string(event.status)));
    ins.step();
    return sqlite3_last_insert_rowid(db_);
}

std::vector<StoredEvent> Store::events_since(std::int64_t since_ms, bool include_suppressed, std::size_t limit) const {
    std::lock_guard lock(mutex_);
    std::vector<StoredEvent> out;
    Stmt q(db_,
           "SELECT id, camera, message, snapshot, created_at, channel, status FROM events "
           "WHERE created_at > ?1 AND (?2 = 1 OR status <> 'Suppressed') "
           "ORDER BY created_at DESC, id DESC LIMIT ?3");
    q.bind(1, since_ms).bind(2, include_suppressed ? 1 : 0).bind(3, static_cast<std::int64_t>(limit));
    while (q.step()) {
        StoredEvent e;
        e.id = q.i64(0);
        e.event.camera_id = q.text(1);
        e.event.message = q.text(2);
        e.event.snapshot_ref = q.text(3);
        e.event.created_at_ms = q.i64(4);
        e.event.channel = messaging::parse_channel(q.text(5));
        e.event.status = messaging::parse_status(q.text(6));
        out.push_back(std::move(e));
    }
    return out;
}

fs::path Store::resolve(const std::string& ref) const {
    const fs::path rel(ref);
    if (ref.empty() || rel.is_absolute()) throw InvalidParameter("invalid reference");
    for (const auto& part : rel) {
        if (part == "..") throw InvalidParameter("invalid reference");
    }
    return root_ / rel;
}

perception::ProfileModel build_model(const Store& store) {
    perception::ProfileModel model;
    for (const auto& entry : store.profiles()) {
        std::vector<imaging::Frame> crops;
        for (const auto& ref : entry.image_paths) {
            try {
                crops.push_back(imaging::read_png(store.resolve(ref)));
            } catch (const Error& e) {
                spdlog::warn("skipping profile image {}: {}", ref, e.what());
            }
        }
        if (crops.empty()) continue;
        model = model.enroll({entry.person_id, entry.name, entry.contact}, crops);
    }
    return model;
}

}  // namespace safegate::gateway
