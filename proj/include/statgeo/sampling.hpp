#pragma once

#include "statgeo/types.hpp"

#include <random>
#include <vector>

namespace statgeo {

/// Deterministic low-discrepancy points in a box: Halton sequence with a
/// seeded Cranley-Patterson rotation. Same (box, count, seed) -> same points.
std::vector<Vec> sample_lattice(const Box& box, int count, unsigned long long seed);

/// Uniform points in [0, 1) drawn from mt19937_64 using the top 53 bits, so
/// the stream does not depend on the standard library's distributions.
class UnitRng {
 public:
  explicit UnitRng(unsigned long long seed);
  double next();
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace statgeo
