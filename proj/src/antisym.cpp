#include "sostar/antisym.hpp"

#include <algorithm>
#include <cmath>

#include "sostar/errors.hpp"

namespace sostar {

double antisymmetry_residual(const CMatrix& m) { return (m + m.transpose()).norm(); }

AntisymMatrix::AntisymMatrix(CMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols())
    throw Error(ErrorCode::IncompatibleShape, "antisymmetric matrix must be square");
  if (!all_finite(m_)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  if (antisymmetry_residual(m_) > kTolSym * m_.norm())
    throw Error(ErrorCode::NotAntisymmetric, "matrix is not antisymmetric");
}

AntisymMatrix AntisymMatrix::zero(int n) { return AntisymMatrix(CMatrix::Zero(n, n), Unchecked{}); }

AntisymMatrix AntisymMatrix::project(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::IncompatibleShape, "antisymmetric matrix must be square");
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  return AntisymMatrix(0.5 * (m - m.transpose()), Unchecked{});
}

AntisymMatrix AntisymMatrix::scaled(Complex c) const { return AntisymMatrix(c * m_, Unchecked{}); }

DomainReport validate_domain(const CMatrix& zeta, double tol_dom) {
  if (!all_finite(zeta)) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  if (zeta.rows() != zeta.cols())
    throw Error(ErrorCode::IncompatibleShape, "matrix must be square");
  DomainReport report;
  report.is_antisymmetric = antisymmetry_residual(zeta) <= kTolSym * zeta.norm();
  if (zeta.rows() > 0) {
    HermitianEigen eig = hermitian_eigen(zeta.adjoint() * zeta);
    report.spectral_norm_sq = std::max(0.0, eig.values.maxCoeff());
  }
  report.in_domain = report.is_antisymmetric && report.spectral_norm_sq < 1.0 - tol_dom;
  return report;
}

DomainReport validate_domain(const AntisymMatrix& zeta, double tol_dom) {
  return validate_domain(zeta.entries(), tol_dom);
}

void require_in_domain(const AntisymMatrix& zeta, double tol_dom) {
  if (!validate_domain(zeta, tol_dom).in_domain)
    throw Error(ErrorCode::DomainViolation, "matrix lies outside the domain z^* z < 1");
}

std::vector<MultiplicityGroup> group_multiplicities(const std::vector<double>& lambdas,
                                                    double tol_mult) {
  std::vector<MultiplicityGroup> groups;
  double sum = 0.0;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    bool joins = i > 0 && std::abs(lambdas[i] - lambdas[i - 1]) <= tol_mult * lambdas[i - 1];
    if (!joins) {
      if (!groups.empty()) groups.back().lambda = sum / groups.back().multiplicity;
      groups.push_back({lambdas[i], 0});
      sum = 0.0;
    }
    groups.back().multiplicity += 1;
    sum += lambdas[i];
  }
  if (!groups.empty()) groups.back().lambda = sum / groups.back().multiplicity;
  return groups;
}

CMatrix canonical_middle(const std::vector<double>& lambdas, int n) {
  CMatrix m = CMatrix::Zero(n, n);
  for (size_t a = 0; a < lambdas.size(); ++a) {
    m(2 * a, 2 * a + 1) = -lambdas[a];
    m(2 * a + 1, 2 * a) = lambdas[a];
  }
  return m;
}

CMatrix CanonicalForm::middle() const { return canonical_middle(lambdas, n()); }

CMatrix CanonicalForm::reconstruct() const { return u * middle() * u.transpose(); }

double CanonicalForm::reconstruction_residual(const CMatrix& zeta) const {
  return (reconstruct() - zeta).norm();
}

double CanonicalForm::unitarity_residual() const {
  return (u.adjoint() * u - CMatrix::Identity(n(), n())).norm();
}

namespace {

struct Pair {
  double lambda;
  CVector first;
  CVector second;
};

// Component of v orthogonal to the columns gathered so far.
CVector orthogonal_part(const CVector& v, const std::vector<CVector>& basis) {
  CVector r = v;
  for (int pass = 0; pass < 2; ++pass)
    for (const CVector& b : basis) r -= b.dot(r) * b;
  return r;
}

// Rotate so the first entry of non-negligible modulus is real and positive.
void fix_phase(CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

CanonicalForm canonical_decompose(const AntisymMatrix& zeta, double tol_mult) {
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  CanonicalForm form;
  if (n == 0) {
    form.u = CMatrix(0, 0);
    return form;
  }

  // Eigenvectors v of z^* z give u = conj(v) with z z^* u = lambda^2 u; the
  // partner column is z conj(u) / lambda.
  HermitianEigen eig = hermitian_eigen(z.adjoint() * z);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = n - 1 - i;
  const double top = std::max(eig.values(order[0]), 0.0);
  const double cluster_tol = 1e-9 * top + 1e-300;

  std::vector<CVector> chosen;
  std::vector<Pair> pairs;
  std::vector<CVector> padding;

  size_t start = 0;
  while (start < order.size()) {
    size_t end = start + 1;
    while (end < order.size() &&
           std::abs(eig.values(order[end]) - eig.values(order[start])) <= cluster_tol)
      ++end;
    while (true) {
      double best = 0.0;
      CVector pick;
      for (size_t c = start; c < end; ++c) {
        CVector r = orthogonal_part(eig.vectors.col(order[c]).conjugate(), chosen);
        double rn = r.norm();
        if (rn > best + 1e-12) {
          best = rn;
          pick = r / rn;
        }
      }
      if (best < 0.5) break;
      fix_phase(pick);
      CVector image = z * pick.conjugate();
      double lam = image.norm();
      if (lam < kTolRank) {
        padding.push_back(pick);
        chosen.push_back(pick);
        continue;
      }
      chosen.push_back(pick);
      CVector partner = orthogonal_part(image / lam, chosen);
      partner /= partner.norm();
      chosen.push_back(partner);
      pairs.push_back({lam, pick, partner});
    }
    start = end;
  }

  // Complete the frame if clustering left directions uncovered.
  for (int i = 0; i < n && static_cast<int>(chosen.size()) < n; ++i) {
    CVector r = orthogonal_part(CVector::Unit(n, i), chosen);
    if (r.norm() > 0.5) {
      r /= r.norm();
      padding.push_back(r);
      chosen.push_back(r);
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.lambda > b.lambda; });
  const double tie = 1e-13 * (pairs.empty() ? 1.0 : pairs.front().lambda);
  for (size_t i = 0; i < pairs.size();) {
    size_t j = i + 1;
    while (j < pairs.size() && pairs[j - 1].lambda - pairs[j].lambda <= tie) ++j;
    std::stable_sort(pairs.begin() + i, pairs.begin() + j,
                     [](const Pair& a, const Pair& b) { return lex_less(a.first, b.first); });
    i = j;
  }

  form.u = CMatrix::Zero(n, n);
  int col = 0;
  for (const Pair& p : pairs) {
    form.u.col(col++) = p.first;
    form.u.col(col++) = p.second;
    form.lambdas.push_back(p.lambda);
  }
  for (const CVector& v : padding) form.u.col(col++) = v;
  form.half_rank = static_cast<int>(pairs.size());
  form.padding = n - 2 * form.half_rank;
  form.groups = group_multiplicities(form.lambdas, tol_mult);
  return form;
}

}  // namespace sostar
