#include "sostar/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "sostar/errors.hpp"

namespace sostar {

CMatrix sigma_block() {
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 1) = -1.0;
  s(1, 0) = 1.0;
  return s;
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

HermitianEigen hermitian_eigen(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix hermitian_function(const CMatrix& h, const std::function<double(double)>& f) {
  HermitianEigen eig = hermitian_eigen(h);
  RVector fv(eig.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(eig.values(i));
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double log_det_hpd(const CMatrix& h) {
  Eigen::LLT<CMatrix> llt(h);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::DomainViolation, "matrix is not positive definite");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) acc += std::log(llt.matrixL()(i, i).real());
  return 2.0 * acc;
}

Complex log_det(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix& f = lu.matrixLU();
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (f(i, i) == Complex(0.0)) return {-INFINITY, 0.0};
    acc += std::log(f(i, i));
  }
  if (lu.permutationP().determinant() < 0) acc += Complex(0.0, M_PI);
  return acc;
}

double reciprocal_condition(const CMatrix& m) {
  if (m.rows() == 0) return 1.0;
  // PartialPivLU::rcond is unreliable for exactly singular input; use singular values
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (!(s(0) > 0.0)) return 0.0;
  return s(s.size() - 1) / s(0);
}

CMatrix matrix_exp(const CMatrix& m) { return m.exp(); }

bool is_hermitian(const CMatrix& m, double tol) {
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

CMatrix matrix_log(const CMatrix& m) {
  if (is_hermitian(m, 1e-13)) {
    HermitianEigen eig = hermitian_eigen(0.5 * (m + m.adjoint()));
    if (eig.values.minCoeff() > 0.0) {
      RVector lv = eig.values.array().log();
      return eig.vectors * lv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    }
  }
  return m.log();
}

}  // namespace sostar
