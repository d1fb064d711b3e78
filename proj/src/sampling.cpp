#include "statgeo/sampling.hpp"

#include <cmath>

namespace statgeo {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(unsigned long long i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

UnitRng::UnitRng(unsigned long long seed) : engine_(seed) {}

double UnitRng::next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<Vec> sample_lattice(const Box& box, int count, unsigned long long seed) {
  const int d = box.dim();
  UnitRng rng(seed);
  Vec shift(d);
  for (int a = 0; a < d; ++a) shift(a) = rng.next();
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec x(d);
    for (int a = 0; a < d; ++a) {
      double u = radical_inverse(static_cast<unsigned long long>(i) + 1, kPrimes[a % 16]) + shift(a);
      u -= std::floor(u);
      x(a) = box.lower(a) + u * (box.upper(a) - box.lower(a));
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace statgeo
