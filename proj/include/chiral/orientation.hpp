#pragma once

#include "chiral/core.hpp"

#include <cstddef>
#include <cstdint>

namespace chiral {

// Orientation means over rigid rotations of a (d, m) pair.
struct OrientationAverage {
    double parallel = 0.0;     // <Im(d∥ . m∥*)>, expected 2/3 R
    double full_plus_z = 0.0;  // <Im(d . m* + d_z m_z*)>, expected 4/3 R
    double cross_z = 0.0;      // <Im[(d × m*) . e_z]>, expected 0
    std::size_t samples = 0;
};

// Uniform random rotation (Shoemake quaternion) for sample `index`; the
// generator is counter based, so each sample is independent of the schedule.
std::array<std::array<double, 3>, 3> random_rotation(std::uint64_t seed, std::uint64_t index);

OrientationAverage average_orientations(const TransitionDipoles& mol, std::size_t samples,
                                        std::uint64_t seed,
                                        ExecPolicy policy = ExecPolicy::parallel);

}  // namespace chiral
