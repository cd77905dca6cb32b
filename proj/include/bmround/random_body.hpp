#pragma once

#include <cstdint>

#include "bmround/body.hpp"

namespace bmr {

// Deterministic random symmetric convex polygon: draws `points` points in an
// annulus of the upper half plane, reflects them through the origin, and
// takes the convex hull.  The same (seed, points) pair always yields the
// same body, independent of platform and thread count.  Degenerate draws
// (hulls too thin to validate) retry on a derived substream.
SymmetricConvexBody random_body(std::uint64_t seed, int points);

// Seed for the i-th body of a batch: decorrelates consecutive indices so
// batches can be generated independently in any order.
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace bmr
