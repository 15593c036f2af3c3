#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ocm {

/// One cut-plane rectangle: z is the squared half-width (length^2),
/// h the height (length). Units are carried through unchanged; the
/// reference scale is micrometers.
struct Observation {
    double z;
    double h;
};

/// Immutable sample of rectangle observations. Construction enforces
/// z > 0, h > 0 and finiteness for every entry and n >= 1.
class ObservationSet {
public:
    explicit ObservationSet(std::vector<Observation> items);

    std::size_t size() const { return items_.size(); }
    const Observation& operator[](std::size_t i) const { return items_[i]; }
    std::span<const Observation> items() const { return items_; }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    /// Median of the z values (cached at construction; used as the scale
    /// for bandwidth normalization).
    double median_z() const { return median_z_; }

private:
    std::vector<Observation> items_;
    double median_z_;
};

/// Result of screening raw observations.
struct ValidationReport {
    ObservationSet set;
    std::size_t rejected;
};

/// Drops nonpositive and non-finite entries and reports how many were
/// removed. Throws ValidationError if nothing valid remains.
ValidationReport validate(std::span<const Observation> raw);

}  // namespace ocm
