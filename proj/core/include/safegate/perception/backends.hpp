#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safegate/change/change_detection.hpp"
#include "safegate/perception/types.hpp"

namespace safegate::perception {

/// One injected box of a simulation manifest.
struct ManifestBox {
    DetectionKind kind = DetectionKind::Face;
    Rect bbox;
    std::string person;  // ground-truth identity, informational only
    std::vector<std::string> attributes;
    std::vector<std::string> items;
};

/// Per-frame simulation manifest: {"boxes":[{"kind":"Face","bbox":[x,y,w,h],...}]}.
struct Manifest {
    std::vector<ManifestBox> boxes;
};

/// Throws InvalidParameter on malformed JSON or fields.
[[nodiscard]] Manifest parse_manifest(std::string_view json);
[[nodiscard]] std::string manifest_to_json(const Manifest& manifest);

/// Everything a backend may look at for one frame.
struct SceneContext {
    const Frame& frame;
    const Manifest* manifest = nullptr;
    const std::vector<change::ActivityRegion>* regions = nullptr;
    long long area_threshold = 400;
};

class DetectorBackend {
public:
    virtual ~DetectorBackend() = default;
    /// Throws BackendUnavailable when the backend cannot run on this scene.
    [[nodiscard]] virtual std::vector<DetectionBox> detect_persons(const SceneContext& scene) const = 0;
    [[nodiscard]] virtual std::vector<DetectionBox> detect_faces(const SceneContext& scene) const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

struct Attributes {
    std::vector<std::string> attributes;  // facial properties / appearance words
    std::vector<std::string> items;       // carried objects
};

class AttributeBackend {
public:
    virtual ~AttributeBackend() = default;
    [[nodiscard]] virtual Attributes describe(const SceneContext& scene, const Rect& person_box,
                                              const std::optional<Rect>& face_box) const = 0;
};

/// Echoes boxes injected through the scene manifest.
class OracleBackend final : public DetectorBackend {
public:
    [[nodiscard]] std::vector<DetectionBox> detect_persons(const SceneContext& scene) const override;
    [[nodiscard]] std::vector<DetectionBox> detect_faces(const SceneContext& scene) const override;
    [[nodiscard]] std::string name() const override { return "oracle"; }
};

/// Promotes activity regions with height/width in [1.2, 4.0] and area >= 2x the area
/// threshold to person boxes. Never reports faces.
class MotionBackend final : public DetectorBackend {
public:
    static constexpr double kMinAspect = 1.2;
    static constexpr double kMaxAspect = 4.0;

    [[nodiscard]] std::vector<DetectionBox> detect_persons(const SceneContext& scene) const override;
    [[nodiscard]] std::vector<DetectionBox> detect_faces(const SceneContext& scene) const override;
    [[nodiscard]] std::string name() const override { return "motion"; }
};

/// Oracle when the scene carries a manifest, motion otherwise.
class AutoBackend final : public DetectorBackend {
public:
    [[nodiscard]] std::vector<DetectionBox> detect_persons(const SceneContext& scene) const override;
    [[nodiscard]] std::vector<DetectionBox> detect_faces(const SceneContext& scene) const override;
    [[nodiscard]] std::string name() const override { return "auto"; }

private:
    OracleBackend oracle_;
    MotionBackend motion_;
};

/// Reads attribute/item words from the manifest box that matches the person (the
/// person box itself, or a face box inside it). No manifest -> no words.
class ManifestAttributeBackend final : public AttributeBackend {
public:
    [[nodiscard]] Attributes describe(const SceneContext& scene, const Rect& person_box,
                                      const std::optional<Rect>& face_box) const override;
};

[[nodiscard]] std::unique_ptr<DetectorBackend> make_detector(const std::string& name);

}  // namespace safegate::perception
