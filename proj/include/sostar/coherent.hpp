#pragma once

#include <vector>

#include "sostar/antisym.hpp"

namespace sostar {

// An in-domain label together with sigma = (1 - z^* z)^{-1}.
struct CoherentLabel {
  AntisymMatrix zeta;
  CMatrix sigma;
  double condition = 1.0;  // 1 / (1 - lambda_1^2)

  static CoherentLabel make(const AntisymMatrix& zeta);
};

struct AreaReport {
  RVector per_leg_mean;
  double total_mean = 0.0;
  RVector per_leg_var;
  double total_var = 0.0;
  RMatrix covariance;
  double cv = 0.0;
  double cv_upper_bound = 0.0;
};

struct MatrixElements {
  CMatrix e;
  CMatrix f;
  CMatrix ftilde;
};

struct DistributionPoint {
  int j = 0;
  double p = 0.0;
};

// det(1 - z^* z)^{1/2}
double normalization(const AntisymMatrix& zeta);

// <omega|zeta>
Complex overlap(const AntisymMatrix& omega, const AntisymMatrix& zeta);

// <omega|E_ab|zeta>, <omega|F_ab|zeta>, <omega|F~_ab|zeta>
MatrixElements matrix_elements(const AntisymMatrix& omega, const AntisymMatrix& zeta);

AreaReport area_report(const AntisymMatrix& zeta);

// Total-area distribution for labels of rank two (rank zero gives the
// vacuum's point mass).
std::vector<DistributionPoint> area_distribution(const AntisymMatrix& zeta, int j_max);

// <J,z|J,z> = J!(J+1)! (tr z^* z / 2)^J for the unnormalized fixed-area state.
double fixed_area_norm(const AntisymMatrix& zeta, int j);

}  // namespace sostar
