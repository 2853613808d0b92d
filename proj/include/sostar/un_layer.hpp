#pragma once

#include <cstdint>
#include <vector>

#include "sostar/antisym.hpp"
#include "sostar/spinor.hpp"

namespace sostar {

// Dimension of the N-leg intertwiner space with total area J.
std::uint64_t dim_fixed_area(int n, int j);

// The U(N) layer works with rank-two labels xi at fixed total area J. The
// domain bound does not apply here.
double un_normalization(const AntisymMatrix& xi, int j);

// <J,eta|J,xi> between normalized states.
Complex un_overlap(const AntisymMatrix& eta, const AntisymMatrix& xi, int j);

// <J,xi|E_ab|J,xi>
CMatrix un_expectation_E(const AntisymMatrix& xi, int j);

struct UNCovariance {
  RMatrix cov;
  RVector var;
};

UNCovariance un_covariance(const AntisymMatrix& xi, int j);

// |z_a> = sqrt(J) (U_a1, U_a2) from xi = lambda U (sigma + 0) U^t.
std::vector<Spinor> un_spinors(const AntisymMatrix& xi, int j);

struct GLAction {
  Complex coefficient;  // det g
  AntisymMatrix new_xi; // g xi g^t
};

GLAction gl_action(const CMatrix& g, const AntisymMatrix& xi, int j);

}  // namespace sostar
