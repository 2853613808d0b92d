#include "sostar/un_layer.hpp"

#include <cmath>
#include <limits>

#include "sostar/errors.hpp"

namespace sostar {

namespace {

using u128 = unsigned __int128;

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > std::numeric_limits<u128>::max() / a)
    throw Error(ErrorCode::Overflow, "dimension exceeds 128-bit intermediate range");
  return a * b;
}

u128 binomial(int n, int k) {
  u128 r = 1;
  for (int i = 1; i <= k; ++i) r = checked_mul(r, static_cast<u128>(n - k + i)) / i;
  return r;
}

// ln(J! (J+1)!)
double log_factorial_pair(int j) {
  if (j > 64) return std::lgamma(j + 1.0) + std::lgamma(j + 2.0);
  double acc = 0.0;
  for (int i = 1; i <= j; ++i) acc += std::log(static_cast<double>(i) * (i + 1));
  return acc;
}

double half_trace(const CMatrix& a, const CMatrix& b) { return 0.5 * (a.adjoint() * b).trace().real(); }

CanonicalForm rank_two_form(const AntisymMatrix& xi) {
  if (xi.entries().norm() == 0.0) throw Error(ErrorCode::ZeroMatrix, "label is the zero matrix");
  CanonicalForm form = canonical_decompose(xi);
  if (form.half_rank != 1) throw Error(ErrorCode::RankNotTwo, "label must have rank two");
  return form;
}

void require_area(int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "area must be non-negative");
}

}  // namespace

std::uint64_t dim_fixed_area(int n, int j) {
  if (n < 2 || j < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 2 and j >= 0");
  u128 value = checked_mul(binomial(n + j - 1, j), binomial(n + j - 2, j)) / (j + 1);
  if (value > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::Overflow, "dimension exceeds 64 bits");
  return static_cast<std::uint64_t>(value);
}

double un_normalization(const AntisymMatrix& xi, int j) {
  require_area(j);
  rank_two_form(xi);
  const double h = half_trace(xi.entries(), xi.entries());
  return std::exp(-0.5 * j * std::log(h) - 0.5 * log_factorial_pair(j));
}

Complex un_overlap(const AntisymMatrix& eta, const AntisymMatrix& xi, int j) {
  require_area(j);
  if (eta.n() != xi.n()) throw Error(ErrorCode::IncompatibleShape, "labels differ in size");
  rank_two_form(eta);
  rank_two_form(xi);
  const CMatrix& e = eta.entries();
  const CMatrix& x = xi.entries();
  Complex ratio = 0.5 * (e.adjoint() * x).trace() /
                  std::sqrt(half_trace(e, e) * half_trace(x, x));
  Complex value = 1.0;
  for (int i = 0; i < j; ++i) value *= ratio;
  return value;
}

CMatrix un_expectation_E(const AntisymMatrix& xi, int j) {
  require_area(j);
  rank_two_form(xi);
  const CMatrix& x = xi.entries();
  CMatrix xx = x.adjoint() * x;
  return CMatrix::Identity(xi.n(), xi.n()) + (2.0 * j / xx.trace().real()) * xx;
}

std::vector<Spinor> un_spinors(const AntisymMatrix& xi, int j) {
  require_area(j);
  CanonicalForm form = rank_two_form(xi);
  const double scale = std::sqrt(static_cast<double>(j));
  std::vector<Spinor> out(xi.n());
  for (int a = 0; a < xi.n(); ++a) out[a] = {scale * form.u(a, 0), scale * form.u(a, 1)};
  return out;
}

UNCovariance un_covariance(const AntisymMatrix& xi, int j) {
  const int n = xi.n();
  UNCovariance out{RMatrix::Zero(n, n), RVector::Zero(n)};
  std::vector<Spinor> z = un_spinors(xi, j);
  if (j == 0) return out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double na = norm_sq(z[a]);
      double nb = norm_sq(z[b]);
      double c = (std::norm(square_ket(z[b], z[a])) - na * nb) / (4.0 * j);
      if (a == b) c += 0.25 * na;
      out.cov(a, b) = c;
    }
  out.var = out.cov.diagonal();
  return out;
}

GLAction gl_action(const CMatrix& g, const AntisymMatrix& xi, int j) {
  require_area(j);
  if (g.rows() != xi.n() || g.cols() != xi.n())
    throw Error(ErrorCode::IncompatibleShape, "g must be N x N");
  rank_two_form(xi);
  if (reciprocal_condition(g) < 1e-13) throw Error(ErrorCode::SingularMatrix, "g is not invertible");
  return {g.determinant(), AntisymMatrix::project(g * xi.entries() * g.transpose())};
}

}  // namespace sostar
