#include "ocm/observations.hpp"

#include <cmath>
#include <stdexcept>

#include "ocm/errors.hpp"
#include "ocm/summation.hpp"

namespace ocm {

namespace {

bool is_valid(const Observation& o) {
    return std::isfinite(o.z) && std::isfinite(o.h) && o.z > 0.0 && o.h > 0.0;
}

}  // namespace

ObservationSet::ObservationSet(std::vector<Observation> items)
    : items_(std::move(items)) {
    if (items_.empty()) {
        throw ValidationError("ObservationSet: empty sample");
    }
    std::vector<double> zs;
    zs.reserve(items_.size());
    for (const Observation& o : items_) {
        if (!is_valid(o)) {
            throw std::invalid_argument(
                "ObservationSet: entries must be finite and positive; use validate() to screen raw data");
        }
        zs.push_back(o.z);
    }
    median_z_ = median(zs);
}

ValidationReport validate(std::span<const Observation> raw) {
    std::vector<Observation> kept;
    kept.reserve(raw.size());
    for (const Observation& o : raw) {
        if (is_valid(o)) {
            kept.push_back(o);
        }
    }
    const std::size_t rejected = raw.size() - kept.size();
    if (kept.empty()) {
        throw ValidationError("validate: no valid observations (all " +
                              std::to_string(raw.size()) + " entries rejected)");
    }
    return ValidationReport{ObservationSet(std::move(kept)), rejected};
}

}  // namespace ocm
