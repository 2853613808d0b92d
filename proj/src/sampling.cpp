#include "sostar/sampling.hpp"

#include <cmath>

#include "sostar/errors.hpp"

namespace sostar {

CMatrix random_gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

CMatrix random_unitary(int n, Rng& rng) {
  if (n == 0) return CMatrix(0, 0);
  CMatrix g = random_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix random_compact_symplectic(int m, Rng& rng) {
  const int d = 2 * m;
  CMatrix omega = canonical_middle(std::vector<double>(m, 1.0), d);
  // Fixed points of W -> Omega conj(W) Omega^{-1} are the symplectic unitaries.
  CMatrix w = random_unitary(d, rng);
  w = 0.5 * (w + omega * w.conjugate() * omega.inverse());
  return polar_unitary(w);
}

AntisymMatrix antisym_from_pairs(const std::vector<double>& lambdas, const CMatrix& u) {
  const int n = static_cast<int>(u.rows());
  if (2 * static_cast<int>(lambdas.size()) > n)
    throw Error(ErrorCode::InvalidArgument, "too many singular pairs for the size");
  return AntisymMatrix::project(u * canonical_middle(lambdas, n) * u.transpose());
}

AntisymMatrix random_antisym_with_pairs(int n, const std::vector<double>& lambdas, Rng& rng) {
  return antisym_from_pairs(lambdas, random_unitary(n, rng));
}

AntisymMatrix random_in_domain(int n, double lambda1_sq, Rng& rng) {
  CMatrix g = random_gaussian_matrix(n, n, rng);
  CMatrix z = g - g.transpose();
  double top = validate_domain(z).spectral_norm_sq;
  if (top <= 0.0) return AntisymMatrix::zero(n);
  return AntisymMatrix::project(z * std::sqrt(lambda1_sq / top));
}

}  // namespace sostar
