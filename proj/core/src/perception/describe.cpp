#include "safegate/perception/describe.hpp"

#include <algorithm>

namespace safegate::perception {

namespace {

bool names_hair(const std::vector<std::string>& words) {
    return std::any_of(words.begin(), words.end(), [](const std::string& w) {
        return w.size() >= 5 && w.compare(w.size() - 5, 5, " hair") == 0;
    });
}

bool centre_inside(const Rect& inner, const Rect& outer) {
    return outer.contains(inner.x + inner.width / 2, inner.y + inner.height / 2);
}

}  // namespace

std::optional<Rect> head_patch_region(const Rect& frame_bounds, const Rect& person_box,
                                      const std::optional<Rect>& face_box) {
    if (face_box) {
        const int band = std::max(1, face_box->height / 4);
        Rect above = imaging::clip_to({face_box->x, face_box->y - band, face_box->width, band}, frame_bounds);
        if (!above.empty()) return above;
        const Rect top = imaging::clip_to({face_box->x, face_box->y, face_box->width, std::max(1, face_box->height / 8)},
                                          frame_bounds);
        if (!top.empty()) return top;
        return std::nullopt;
    }
    const Rect top = imaging::clip_to({person_box.x, person_box.y, person_box.width, std::max(1, person_box.height / 8)},
                                      frame_bounds);
    if (top.empty()) return std::nullopt;
    return top;
}

PersonObservation describe_person(const SceneContext& scene, const Rect& person_box,
                                  const std::optional<Rect>& face_box, const ProfileModel& model,
                                  const AttributeBackend& attributes, const HairColorRule& rule) {
    PersonObservation obs;
    obs.position = change::position_of(person_box, scene.frame.width());

    if (face_box && !model.empty()) {
        const Rect r = imaging::clip_to(*face_box, scene.frame.bounds());
        if (r.width >= kLbpMinCropSide && r.height >= kLbpMinCropSide) {
            const auto rec = model.recognize(imaging::crop(scene.frame, r));
            obs.name = rec.name;
            obs.distance = rec.distance;
        }
    }

    const Attributes attrs = attributes.describe(scene, person_box, face_box);
    obs.desc_words = attrs.attributes;
    if (!names_hair(attrs.attributes)) {
        if (const auto head = head_patch_region(scene.frame.bounds(), person_box, face_box)) {
            const auto colour = classify_hair_color(imaging::crop(scene.frame, *head), rule);
            obs.desc_words.push_back(std::string(to_string(colour)) + " hair");
        }
    }
    for (const auto& item : attrs.items) {
        if (std::find(obs.desc_words.begin(), obs.desc_words.end(), item) == obs.desc_words.end()) {
            obs.desc_words.push_back(item);
        }
    }
    if (obs.name.empty()) obs.name = kUnknownName;
    return obs;
}

std::vector<PersonObservation> describe_scene(const SceneContext& scene, const DetectorBackend& detector,
                                              const ProfileModel& model, const AttributeBackend& attributes,
                                              const HairColorRule& rule) {
    const auto persons = detector.detect_persons(scene);
    const auto faces = detector.detect_faces(scene);
    std::vector<bool> used(faces.size(), false);
    std::vector<PersonObservation> out;
    for (const auto& person : persons) {
        std::optional<Rect> face;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            if (!used[i] && centre_inside(faces[i].bbox, person.bbox)) {
                used[i] = true;
                face = faces[i].bbox;
                break;
            }
        }
        out.push_back(describe_person(scene, person.bbox, face, model, attributes, rule));
    }
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (used[i]) continue;
        out.push_back(describe_person(scene, faces[i].bbox, faces[i].bbox, model, attributes, rule));
    }
    return out;
}

}  // namespace safegate::perception
