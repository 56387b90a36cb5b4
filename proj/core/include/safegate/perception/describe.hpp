#pragma once

#include <optional>
#include <vector>

#include "safegate/perception/backends.hpp"
#include "safegate/perception/hair_color.hpp"
#include "safegate/perception/recognizer.hpp"
#include "safegate/perception/types.hpp"

namespace safegate::perception {

/// Head region used for hair colour: the band above the face (a quarter of its
/// height), or the top eighth of the person box when no face is known.
[[nodiscard]] std::optional<Rect> head_patch_region(const Rect& frame_bounds, const Rect& person_box,
                                                    const std::optional<Rect>& face_box);

/// Assemble a PersonObservation: name from the profile model (or "unknown"),
/// left/center/right from the person box, and description words as attributes,
/// then a "<colour> hair" word unless the attributes already name a hair colour,
/// then carried items.
[[nodiscard]] PersonObservation describe_person(const SceneContext& scene, const Rect& person_box,
                                                const std::optional<Rect>& face_box, const ProfileModel& model,
                                                const AttributeBackend& attributes, const HairColorRule& rule = {});

/// Pairs each face with the first person box containing its centre; faces without a
/// person become persons of their own. Returns one observation per person.
[[nodiscard]] std::vector<PersonObservation> describe_scene(const SceneContext& scene, const DetectorBackend& detector,
                                                            const ProfileModel& model,
                                                            const AttributeBackend& attributes,
                                                            const HairColorRule& rule = {});

}  // namespace safegate::perception
