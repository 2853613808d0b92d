#include "sostar/coherent.hpp"

#include <cmath>
#include <limits>

#include "sostar/errors.hpp"

namespace sostar {

namespace {

CMatrix eye(int n) { return CMatrix::Identity(n, n); }

void require_low_rank(const AntisymMatrix& zeta) {
  if (canonical_decompose(zeta).half_rank > 1)
    throw Error(ErrorCode::RankNotTwo, "closed form requires a rank-two label");
}

}  // namespace

CoherentLabel CoherentLabel::make(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  CMatrix m = eye(n) - z.adjoint() * z;
  CoherentLabel label{zeta, m.partialPivLu().solve(eye(n)), 1.0};
  label.sigma = 0.5 * (label.sigma + label.sigma.adjoint());
  label.condition = 1.0 / (1.0 - validate_domain(zeta).spectral_norm_sq);
  return label;
}

double normalization(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  const CMatrix& z = zeta.entries();
  return std::exp(0.5 * log_det_hpd(eye(zeta.n()) - z.adjoint() * z));
}

Complex overlap(const AntisymMatrix& omega, const AntisymMatrix& zeta) {
  if (omega.n() != zeta.n()) throw Error(ErrorCode::IncompatibleShape, "labels differ in size");
  require_in_domain(omega);
  require_in_domain(zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  const CMatrix& w = omega.entries();
  double half_logs = 0.5 * (log_det_hpd(eye(n) - z.adjoint() * z) +
                            log_det_hpd(eye(n) - w.adjoint() * w));
  return std::exp(Complex(half_logs) - log_det(eye(n) - w.adjoint() * z));
}

MatrixElements matrix_elements(const AntisymMatrix& omega, const AntisymMatrix& zeta) {
  const Complex ov = overlap(omega, zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  const CMatrix& w = omega.entries();
  CMatrix k = (eye(n) - w.adjoint() * z).partialPivLu().solve(eye(n));
  MatrixElements out;
  out.e = ov * (eye(n) + 2.0 * w.adjoint() * z * k);
  out.f = ov * 2.0 * z * k;
  out.ftilde = ov * 2.0 * k * w.conjugate();
  return out;
}

AreaReport area_report(const AntisymMatrix& zeta) {
  CoherentLabel label = CoherentLabel::make(zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  const CMatrix& s = label.sigma;
  AreaReport r;
  CMatrix zzs = z.adjoint() * z * s;
  r.per_leg_mean = zzs.diagonal().real();
  r.total_mean = (s - eye(n)).trace().real();
  r.per_leg_var = 0.5 * r.per_leg_mean.array() * (r.per_leg_mean.array() + 1.0);
  CMatrix sz = s * z.adjoint();
  CMatrix zs = z * s;
  r.covariance = RMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex c = 0.5 * s(a, b) * s(b, a) + 0.5 * sz(a, b) * zs(b, a);
      if (a == b) c -= 0.5 * s(a, b);
      r.covariance(a, b) = c.real();
    }
  r.total_var = (s * (s - eye(n))).trace().real();
  const double trace_sigma = s.trace().real();
  if (r.total_mean > 0.0) {
    r.cv = std::sqrt(std::max(r.total_var, 0.0)) / r.total_mean;
    r.cv_upper_bound = std::sqrt(trace_sigma / (trace_sigma - n));
  } else {
    r.cv = std::numeric_limits<double>::infinity();
    r.cv_upper_bound = std::numeric_limits<double>::infinity();
  }
  return r;
}

std::vector<DistributionPoint> area_distribution(const AntisymMatrix& zeta, int j_max) {
  if (j_max < 0) throw Error(ErrorCode::InvalidArgument, "j_max must be non-negative");
  require_in_domain(zeta);
  require_low_rank(zeta);
  const CMatrix& z = zeta.entries();
  CMatrix zz = z.adjoint() * z;
  const double det = std::exp(log_det_hpd(eye(zeta.n()) - zz));
  const double half_trace = 0.5 * zz.trace().real();
  std::vector<DistributionPoint> out;
  double power = 1.0;
  for (int j = 0; j <= j_max; ++j) {
    out.push_back({j, det * power * (j + 1)});
    power *= half_trace;
  }
  return out;
}

double fixed_area_norm(const AntisymMatrix& zeta, int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "area must be non-negative");
  require_low_rank(zeta);
  const CMatrix& z = zeta.entries();
  const double half_trace = 0.5 * (z.adjoint() * z).trace().real();
  double value = 1.0;
  for (int i = 1; i <= j; ++i) value *= static_cast<double>(i) * (i + 1) * half_trace;
  return value;
}

}  // namespace sostar
