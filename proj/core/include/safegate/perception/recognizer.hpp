#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "safegate/imaging/frame.hpp"
#include "safegate/perception/lbp.hpp"

namespace safegate::perception {

inline constexpr double kChiSquareEpsilon = 1e-10;
inline constexpr double kDefaultUnknownThreshold = 0.5;

/// sum (a_i - b_i)^2 / (a_i + b_i + eps).
[[nodiscard]] double chi_square(const FeatureVector& a, const FeatureVector& b);

struct PersonInfo {
    std::string id;
    std::string name;
    std::string contact;
};

struct EnrolledPerson {
    PersonInfo info;
    FeatureVector centroid;
    std::vector<FeatureVector> samples;
};

struct Recognition {
    std::string name;
    std::string person_id;
    double distance = 0.0;
    [[nodiscard]] bool known() const;
};

/// Nearest-centroid face model over LBP histograms. Values are immutable once
/// built; enrolment returns a new model.
class ProfileModel {
public:
    ProfileModel() = default;

    /// Adds crops to `person` (appending if the id is already enrolled), recomputes its
    /// centroid and recalibrates the unknown threshold as
    /// max(0.5, mean + 2*std) over all pairwise distances between samples of the same person.
    [[nodiscard]] ProfileModel enroll(const PersonInfo& person, const std::vector<imaging::Frame>& crops) const;
    [[nodiscard]] ProfileModel enroll_features(const PersonInfo& person, std::vector<FeatureVector> features) const;

    /// Throws InvalidParameter on an empty model.
    [[nodiscard]] Recognition recognize_features(const FeatureVector& query) const;
    [[nodiscard]] Recognition recognize(const imaging::Frame& face_crop) const;

    [[nodiscard]] bool empty() const { return persons_.empty(); }
    [[nodiscard]] std::size_t size() const { return persons_.size(); }
    [[nodiscard]] double unknown_threshold() const { return unknown_threshold_; }
    [[nodiscard]] const std::vector<EnrolledPerson>& persons() const { return persons_; }
    [[nodiscard]] const EnrolledPerson* find(const std::string& id) const;

    /// Replace the calibrated threshold (tests and config overrides). Must be > 0.
    [[nodiscard]] ProfileModel with_threshold(double threshold) const;

private:
    void recalibrate();

    std::vector<EnrolledPerson> persons_;
    double unknown_threshold_ = kDefaultUnknownThreshold;
};

}  // namespace safegate::perception
