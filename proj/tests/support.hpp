#pragma once

#include <cmath>
#include <random>

#include <spsw/field.hpp>
#include <spsw/tensor.hpp>

namespace spsw::test {

inline Vec3d random_vec(std::mt19937_64& rng, double amp = 1.0) {
  return {{uniform(rng, -amp, amp), uniform(rng, -amp, amp), uniform(rng, -amp, amp)}};
}

inline Spinord random_spinor(std::mt19937_64& rng, double amp = 1.0) {
  return {uniform(rng, -amp, amp), random_vec(rng, amp)};
}

inline Mat3d random_mat(std::mt19937_64& rng, double amp = 1.0) {
  Mat3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = uniform(rng, -amp, amp);
  return m;
}

}  // namespace spsw::test
