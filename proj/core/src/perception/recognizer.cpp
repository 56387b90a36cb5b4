#include "safegate/perception/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "safegate/error.hpp"
#include "safegate/perception/types.hpp"

namespace safegate::perception {

double chi_square(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("chi_square: feature lengths differ");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        if (diff == 0.0) continue;
        d += diff * diff / (a[i] + b[i] + kChiSquareEpsilon);
    }
    return d;
}

bool Recognition::known() const { return name != kUnknownName; }

namespace {

FeatureVector mean_of(const std::vector<FeatureVector>& samples) {
    FeatureVector c(samples.front().size(), 0.0);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += s[i];
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (auto& v : c) v *= inv;
    return c;
}

}  // namespace

ProfileModel ProfileModel::enroll(const PersonInfo& person, const std::vector<imaging::Frame>& crops) const {
    if (crops.empty()) throw InvalidParameter("enroll: at least one face crop is required");
    std::vector<FeatureVector> features;
    features.reserve(crops.size());
    for (const auto& crop : crops) features.push_back(extract_lbp_histogram(crop));
    return enroll_features(person, std::move(features));
}

ProfileModel ProfileModel::enroll_features(const PersonInfo& person, std::vector<FeatureVector> features) const {
    if (features.empty()) throw InvalidParameter("enroll: at least one face crop is required");
    if (person.id.empty()) throw InvalidParameter("enroll: person id must not be empty");
    for (const auto& f : features) {
        if (f.size() != static_cast<std::size_t>(kLbpFeatureLength)) {
            throw InvalidParameter("enroll: feature vector has the wrong length");
        }
    }
    ProfileModel next = *this;
    auto it = std::find_if(next.persons_.begin(), next.persons_.end(),
                           [&](const EnrolledPerson& p) { return p.info.id == person.id; });
    if (it == next.persons_.end()) {
        next.persons_.push_back({person, {}, {}});
        it = std::prev(next.persons_.end());
    } else {
        if (!person.name.empty()) it->info.name = person.name;
        if (!person.contact.empty()) it->info.contact = person.contact;
    }
    for (auto& f : features) it->samples.push_back(std::move(f));
    it->centroid = mean_of(it->samples);
    next.recalibrate();
    return next;
}

void ProfileModel::recalibrate() {
    // Pairwise distances between samples of the same person.
    std::vector<double> distances;
    for (const auto& p : persons_) {
        for (std::size_t i = 0; i < p.samples.size(); ++i) {
            for (std::size_t j = i + 1; j < p.samples.size(); ++j) distances.push_back(chi_square(p.samples[i], p.samples[j]));
        }
    }
    if (distances.empty()) {
        unknown_threshold_ = kDefaultUnknownThreshold;
        return;
    }
    double mean = 0.0;
    for (const double d : distances) mean += d;
    mean /= static_cast<double>(distances.size());
    double var = 0.0;
    for (const double d : distances) var += (d - mean) * (d - mean);
    var /= static_cast<double>(distances.size());
    unknown_threshold_ = std::max(kDefaultUnknownThreshold, mean + 2.0 * std::sqrt(var));
}

Recognition ProfileModel::recognize_features(const FeatureVector& query) const {
    if (persons_.empty()) throw InvalidParameter("recognize_face: the profile model is empty");
    const EnrolledPerson* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& p : persons_) {
        const double d = chi_square(query, p.centroid);
        if (d < best_d) {
            best_d = d;
            best = &p;
        }
    }
    Recognition r;
    r.distance = best_d;
    if (best_d > unknown_threshold_) {
        r.name = kUnknownName;
    } else {
        r.name = best->info.name;
        r.person_id = best->info.id;
    }
    return r;
}

Recognition ProfileModel::recognize(const imaging::Frame& face_crop) const {
    return recognize_features(extract_lbp_histogram(face_crop));
}

const EnrolledPerson* ProfileModel::find(const std::string& id) const {
    for (const auto& p : persons_) {
        if (p.info.id == id) return &p;
    }
    return nullptr;
}

ProfileModel ProfileModel::with_threshold(double threshold) const {
    if (!(threshold > 0.0)) throw InvalidParameter("unknown threshold must be > 0");
    ProfileModel next = *this;
    next.unknown_threshold_ = threshold;
    return next;
}

}  // namespace safegate::perception
