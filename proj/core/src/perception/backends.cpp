#include "safegate/perception/backends.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "safegate/error.hpp"

namespace safegate::perception {

using nlohmann::json;

const char* to_string(DetectionKind k) { return k == DetectionKind::Face ? "Face" : "Person"; }

namespace {

DetectionKind parse_kind(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "face") return DetectionKind::Face;
    if (s == "person") return DetectionKind::Person;
    throw InvalidParameter("manifest: unknown box kind '" + s + "'");
}

std::vector<std::string> string_list(const json& box, const char* key) {
    std::vector<std::string> out;
    if (!box.contains(key)) return out;
    for (const auto& v : box.at(key)) out.push_back(v.get<std::string>());
    return out;
}

std::vector<DetectionBox> boxes_of_kind(const SceneContext& scene, DetectionKind kind) {
    if (scene.manifest == nullptr) {
        throw BackendUnavailable("oracle backend: no manifest supplied for this frame");
    }
    std::vector<DetectionBox> out;
    for (const auto& b : scene.manifest->boxes) {
        if (b.kind != kind) continue;
        const Rect r = imaging::clip_to(b.bbox, scene.frame.bounds());
        if (r.empty()) continue;
        out.push_back({kind, r, 1.0});
    }
    return out;
}

void append_unique(std::vector<std::string>& dst, const std::vector<std::string>& src) {
    for (const auto& s : src) {
        if (std::find(dst.begin(), dst.end(), s) == dst.end()) dst.push_back(s);
    }
}

}  // namespace

Manifest parse_manifest(std::string_view text) {
    Manifest m;
    try {
        const json doc = json::parse(text);
        if (!doc.is_object()) throw InvalidParameter("manifest: expected a JSON object");
        if (!doc.contains("boxes")) return m;
        for (const auto& box : doc.at("boxes")) {
            ManifestBox b;
            b.kind = parse_kind(box.value("kind", std::string("Face")));
            const auto& bb = box.at("bbox");
            if (!bb.is_array() || bb.size() != 4) throw InvalidParameter("manifest: bbox must be [x,y,w,h]");
            b.bbox = {bb[0].get<int>(), bb[1].get<int>(), bb[2].get<int>(), bb[3].get<int>()};
            if (b.bbox.width <= 0 || b.bbox.height <= 0) throw InvalidParameter("manifest: bbox must have w,h > 0");
            b.person = box.value("person", std::string());
            b.attributes = string_list(box, "attributes");
            b.items = string_list(box, "items");
            m.boxes.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("manifest: ") + e.what());
    }
    return m;
}

std::string manifest_to_json(const Manifest& manifest) {
    json boxes = json::array();
    for (const auto& b : manifest.boxes) {
        json j{{"kind", to_string(b.kind)}, {"bbox", {b.bbox.x, b.bbox.y, b.bbox.width, b.bbox.height}}};
        if (!b.person.empty()) j["person"] = b.person;
        if (!b.attributes.empty()) j["attributes"] = b.attributes;
        if (!b.items.empty()) j["items"] = b.items;
        boxes.push_back(std::move(j));
    }
    return json{{"boxes", boxes}}.dump();
}

std::vector<DetectionBox> OracleBackend::detect_persons(const SceneContext& scene) const {
    return boxes_of_kind(scene, DetectionKind::Person);
}

std::vector<DetectionBox> OracleBackend::detect_faces(const SceneContext& scene) const {
    return boxes_of_kind(scene, DetectionKind::Face);
}

std::vector<DetectionBox> MotionBackend::detect_persons(const SceneContext& scene) const {
    if (scene.regions == nullptr) throw BackendUnavailable("motion backend: no activity regions supplied");
    std::vector<DetectionBox> out;
    for (const auto& region : *scene.regions) {
        const Rect& r = region.bbox;
        if (r.empty()) continue;
        const double aspect = static_cast<double>(r.height) / r.width;
        if (aspect < kMinAspect || aspect > kMaxAspect) continue;
        if (region.area < 2 * scene.area_threshold) continue;
        out.push_back({DetectionKind::Person, imaging::clip_to(r, scene.frame.bounds()), 0.5});
    }
    return out;
}

std::vector<DetectionBox> MotionBackend::detect_faces(const SceneContext&) const { return {}; }

std::vector<DetectionBox> AutoBackend::detect_persons(const SceneContext& scene) const {
    return scene.manifest != nullptr ? oracle_.detect_persons(scene) : motion_.detect_persons(scene);
}

std::vector<DetectionBox> AutoBackend::detect_faces(const SceneContext& scene) const {
    return scene.manifest != nullptr ? oracle_.detect_faces(scene) : motion_.detect_faces(scene);
}

Attributes ManifestAttributeBackend::describe(const SceneContext& scene, const Rect& person_box,
                                              const std::optional<Rect>& face_box) const {
    Attributes out;
    if (scene.manifest == nullptr) return out;
    const Rect bounds = scene.frame.bounds();
    for (const auto& b : scene.manifest->boxes) {
        const Rect r = imaging::clip_to(b.bbox, bounds);
        const bool matches = r == person_box || (face_box && r == *face_box);
        if (!matches) continue;
        append_unique(out.attributes, b.attributes);
        append_unique(out.items, b.items);
    }
    return out;
}

std::unique_ptr<DetectorBackend> make_detector(const std::string& name) {
    if (name == "oracle") return std::make_unique<OracleBackend>();
    if (name == "motion") return std::make_unique<MotionBackend>();
    if (name == "auto") return std::make_unique<AutoBackend>();
    throw InvalidParameter("unknown detector backend '" + name + "' (expected oracle, motion or auto)");
}

}  // namespace safegate::perception
