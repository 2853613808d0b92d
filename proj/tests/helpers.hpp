#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <doctest.h>

#include "sostar/antisym.hpp"
#include "sostar/errors.hpp"
#include "sostar/geometry.hpp"
#include "sostar/linalg.hpp"

namespace testing {

using sostar::AntisymMatrix;
using sostar::CMatrix;
using sostar::Complex;

inline sostar::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const sostar::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return sostar::ErrorCode::InvalidArgument;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// sqrt(1/2) (sigma + 0), N = 3
inline AntisymMatrix zeta_star() {
  CMatrix z = CMatrix::Zero(3, 3);
  z(0, 1) = -std::sqrt(0.5);
  z(1, 0) = std::sqrt(0.5);
  return AntisymMatrix(z);
}

// Worked four-leg label with two equal pairs.
inline AntisymMatrix zeta_diamond() { return sostar::four_leg_example().zeta; }

// c (sigma + ... + sigma + 0) with k blocks in size n.
inline AntisymMatrix block_label(int n, int k, double c) {
  return AntisymMatrix(sostar::canonical_middle(std::vector<double>(k, c), n));
}

}  // namespace testing
