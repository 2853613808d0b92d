#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace sostar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// The 2x2 block [[0,-1],[1,0]] used throughout the canonical form.
CMatrix sigma_block();

bool all_finite(const CMatrix& m);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

// Eigen-decomposition of a Hermitian matrix; throws ConvergenceFailure.
HermitianEigen hermitian_eigen(const CMatrix& h);

// f(H) for Hermitian H through its spectral decomposition.
CMatrix hermitian_function(const CMatrix& h, const std::function<double(double)>& f);

// log det for a Hermitian positive-definite matrix (Cholesky).
double log_det_hpd(const CMatrix& h);

// log det of a general square matrix, LU with partial pivoting. The
// imaginary part tracks the phase; it is not reduced to the principal range.
Complex log_det(const CMatrix& m);

// Ratio of smallest to largest singular value (0 means singular).
double reciprocal_condition(const CMatrix& m);

CMatrix matrix_exp(const CMatrix& m);

// Principal logarithm. Hermitian positive-definite input takes the spectral
// route and returns a Hermitian result.
CMatrix matrix_log(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol);

}  // namespace sostar
