#include "sostar/geometry.hpp"

#include <cmath>
#include <sstream>

#include "sostar/errors.hpp"
#include "sostar/sampling.hpp"

namespace sostar {

SpinorFamily frame_spinor_families(const CMatrix& u, const std::vector<double>& lambdas) {
  SpinorFamily out;
  out.lambdas = lambdas;
  const int n = static_cast<int>(u.rows());
  for (size_t alpha = 0; alpha < lambdas.size(); ++alpha) {
    std::vector<Spinor> fam(n);
    for (int a = 0; a < n; ++a) fam[a] = {u(a, 2 * alpha), u(a, 2 * alpha + 1)};
    out.families.push_back(std::move(fam));
  }
  return out;
}

SpinorFamily extract_spinor_families(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  CanonicalForm form = canonical_decompose(zeta);
  if (form.half_rank == 0) throw Error(ErrorCode::ZeroRank, "label has rank zero");
  SpinorFamily out = frame_spinor_families(form.u, form.lambdas);
  for (int alpha = 0; alpha < out.k(); ++alpha) {
    const double l2 = form.lambdas[alpha] * form.lambdas[alpha];
    const double scale = std::sqrt(2.0 * l2 / (1.0 - l2));
    for (Spinor& z : out.families[alpha]) z = {scale * z.x, scale * z.y};
  }
  return out;
}

namespace {

void check_family_index(const SpinorFamily& family, int alpha) {
  if (alpha < 0 || alpha >= family.k())
    throw Error(ErrorCode::IndexOutOfRange, "family index out of range");
}

Eigen::Matrix2cd outer(const Spinor& a, const Spinor& b) {
  Eigen::Matrix2cd m;
  m << a.x * std::conj(b.x), a.x * std::conj(b.y), a.y * std::conj(b.x), a.y * std::conj(b.y);
  return m;
}

}  // namespace

double closure_residual(const SpinorFamily& family, int alpha, int beta) {
  check_family_index(family, alpha);
  check_family_index(family, beta);
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < family.n(); ++a) sum += outer(family.families[alpha][a], family.families[beta][a]);
  if (alpha == beta) sum -= family_area(family, alpha) * Eigen::Matrix2cd::Identity();
  return sum.norm();
}

std::vector<Eigen::Vector3d> face_normals(const SpinorFamily& family, int alpha) {
  check_family_index(family, alpha);
  std::vector<Eigen::Vector3d> out;
  for (const Spinor& z : family.families[alpha]) out.push_back(normal_vector(z));
  return out;
}

double family_area(const SpinorFamily& family, int alpha) {
  check_family_index(family, alpha);
  double acc = 0.0;
  for (const Spinor& z : family.families[alpha]) acc += norm_sq(z);
  return 0.5 * acc;
}

ClassicalObservables classical_observables(const SpinorFamily& family) {
  const int n = family.n();
  ClassicalObservables obs;
  obs.e_total = CMatrix::Zero(n, n);
  obs.f_total = CMatrix::Zero(n, n);
  obs.ftilde_total = CMatrix::Zero(n, n);
  for (const std::vector<Spinor>& fam : family.families) {
    CMatrix e(n, n), f(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        e(a, b) = braket(fam[a], fam[b]);
        f(a, b) = square_ket(fam[a], fam[b]);
      }
    obs.e.push_back(e);
    obs.f.push_back(f);
    obs.ftilde.push_back(f.conjugate());
    obs.e_total += e;
    obs.f_total += f;
    obs.ftilde_total += f.conjugate();
  }
  return obs;
}

double dot_product_residual(const SpinorFamily& family, int alpha) {
  check_family_index(family, alpha);
  const std::vector<Spinor>& fam = family.families[alpha];
  std::vector<Eigen::Vector3d> v = face_normals(family, alpha);
  double worst = 0.0;
  for (size_t a = 0; a < fam.size(); ++a)
    for (size_t b = 0; b < fam.size(); ++b) {
      Complex rhs = 0.5 * braket(fam[a], fam[b]) * braket(fam[b], fam[a]) -
                    0.25 * braket(fam[a], fam[a]) * braket(fam[b], fam[b]);
      worst = std::max(worst, std::abs(v[a].dot(v[b]) - rhs));
    }
  return worst;
}

double coarse_closure_defect(const SpinorFamily& family) {
  CMatrix e = classical_observables(family).e_total;
  Complex acc = 0.0;
  for (Eigen::Index a = 0; a < e.rows(); ++a)
    for (Eigen::Index b = 0; b < e.cols(); ++b)
      acc += 0.5 * e(a, b) * e(b, a) - 0.25 * e(a, a) * e(b, b);
  return acc.real();
}

// ---------------------------------------------------------------------------
// Quadratic observables

QuadraticObservable::QuadraticObservable(int k, int n)
    : k_(k), n_(n), h_(CMatrix::Zero(4 * k * n, 4 * k * n)) {}

QuadraticObservable QuadraticObservable::from_form(int k, int n, const CMatrix& h, Complex constant) {
  QuadraticObservable q(k, n);
  if (h.rows() != q.h_.rows() || h.cols() != q.h_.cols() || (h - h.transpose()).norm() > 0.0)
    throw Error(ErrorCode::UnsupportedObservable, "not a symmetric quadratic form of this shape");
  q.h_ = h;
  q.c_ = constant;
  return q;
}

int QuadraticObservable::holomorphic(int alpha, int a, int component) const {
  return (alpha * n_ + a) * 2 + component;
}

int QuadraticObservable::antiholomorphic(int alpha, int a, int component) const {
  return 2 * k_ * n_ + holomorphic(alpha, a, component);
}

void QuadraticObservable::add_monomial(int p, int q, Complex coef) {
  if (p == q) {
    h_(p, p) += 2.0 * coef;
  } else {
    h_(p, q) += coef;
    h_(q, p) += coef;
  }
}

Complex QuadraticObservable::evaluate(const SpinorFamily& family) const {
  if (family.k() != k_ || family.n() != n_)
    throw Error(ErrorCode::IncompatibleShape, "spinor data does not match the observable");
  const int m = 2 * k_ * n_;
  CVector v(2 * m);
  for (int alpha = 0; alpha < k_; ++alpha)
    for (int a = 0; a < n_; ++a) {
      const Spinor& z = family.families[alpha][a];
      v(holomorphic(alpha, a, 0)) = z.x;
      v(holomorphic(alpha, a, 1)) = z.y;
      v(antiholomorphic(alpha, a, 0)) = std::conj(z.x);
      v(antiholomorphic(alpha, a, 1)) = std::conj(z.y);
    }
  return 0.5 * (v.transpose() * h_ * v)(0, 0) + c_;
}

double QuadraticObservable::distance(const QuadraticObservable& other) const {
  return (h_ - other.h_).cwiseAbs().maxCoeff() + std::abs(c_ - other.c_);
}

QuadraticObservable QuadraticObservable::operator+(const QuadraticObservable& o) const {
  QuadraticObservable r = *this;
  r.h_ += o.h_;
  r.c_ += o.c_;
  return r;
}

QuadraticObservable QuadraticObservable::operator-(const QuadraticObservable& o) const {
  return *this + o * Complex(-1.0);
}

QuadraticObservable QuadraticObservable::operator*(Complex s) const {
  QuadraticObservable r = *this;
  r.h_ *= s;
  r.c_ *= s;
  return r;
}

namespace {

template <typename Builder>
QuadraticObservable family_sum(int k, int n, int alpha, Builder build) {
  QuadraticObservable q(k, n);
  if (alpha >= k) throw Error(ErrorCode::IndexOutOfRange, "family index out of range");
  for (int f = 0; f < k; ++f)
    if (alpha < 0 || f == alpha) build(q, f);
  return q;
}

void check_legs(int n, int a, int b) {
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorCode::IndexOutOfRange, "leg index out of range");
}

}  // namespace

QuadraticObservable observable_e(int k, int n, int alpha, int a, int b) {
  check_legs(n, a, b);
  return family_sum(k, n, alpha, [a, b](QuadraticObservable& q, int f) {
    for (int c = 0; c < 2; ++c) q.add_monomial(q.antiholomorphic(f, a, c), q.holomorphic(f, b, c), 1.0);
  });
}

QuadraticObservable observable_f(int k, int n, int alpha, int a, int b) {
  check_legs(n, a, b);
  return family_sum(k, n, alpha, [a, b](QuadraticObservable& q, int f) {
    q.add_monomial(q.holomorphic(f, a, 1), q.holomorphic(f, b, 0), 1.0);
    q.add_monomial(q.holomorphic(f, a, 0), q.holomorphic(f, b, 1), -1.0);
  });
}

QuadraticObservable observable_ftilde(int k, int n, int alpha, int a, int b) {
  check_legs(n, a, b);
  return family_sum(k, n, alpha, [a, b](QuadraticObservable& q, int f) {
    q.add_monomial(q.antiholomorphic(f, a, 1), q.antiholomorphic(f, b, 0), 1.0);
    q.add_monomial(q.antiholomorphic(f, a, 0), q.antiholomorphic(f, b, 1), -1.0);
  });
}

QuadraticObservable poisson_bracket(const QuadraticObservable& a, const QuadraticObservable& b) {
  if (a.k() != b.k() || a.n() != b.n())
    throw Error(ErrorCode::UnsupportedObservable, "observables live on different phase spaces");
  const int m = 2 * a.k() * a.n();
  const Complex i(0.0, 1.0);
  // {w_p, conj w_q} = -i delta_pq
  CMatrix pi = CMatrix::Zero(2 * m, 2 * m);
  pi.topRightCorner(m, m) = -i * CMatrix::Identity(m, m);
  pi.bottomLeftCorner(m, m) = i * CMatrix::Identity(m, m);
  CMatrix h = a.form() * pi * b.form() - b.form() * pi * a.form();
  return QuadraticObservable::from_form(a.k(), a.n(), h, 0.0);
}

// ---------------------------------------------------------------------------
// Symmetries

int SymmetryDescriptor::n() const {
  int k = 0;
  for (const MultiplicityGroup& g : groups) k += g.multiplicity;
  return 2 * k + residual_unitary_dim;
}

std::string SymmetryDescriptor::to_string() const {
  std::ostringstream os;
  const char* sep = "";
  for (const MultiplicityGroup& g : groups) {
    os << sep << "Sp(" << 2 * g.multiplicity << ")";
    sep = " x ";
  }
  if (residual_unitary_dim > 0 || groups.empty()) os << sep << "U(" << residual_unitary_dim << ")";
  return os.str();
}

SymmetryDescriptor symmetry_group_of(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  CanonicalForm form = canonical_decompose(zeta);
  return {form.groups, form.padding};
}

namespace {

std::vector<double> expanded_lambdas(const SymmetryDescriptor& d) {
  std::vector<double> out;
  for (const MultiplicityGroup& g : d.groups) out.insert(out.end(), g.multiplicity, g.lambda);
  return out;
}

}  // namespace

CMatrix sample_symmetry(const SymmetryDescriptor& descriptor, std::uint64_t seed) {
  Rng rng(seed);
  const int n = descriptor.n();
  CMatrix w = CMatrix::Zero(n, n);
  int offset = 0;
  for (const MultiplicityGroup& g : descriptor.groups) {
    const int d = 2 * g.multiplicity;
    w.block(offset, offset, d, d) = random_compact_symplectic(g.multiplicity, rng);
    offset += d;
  }
  const int r = descriptor.residual_unitary_dim;
  w.block(offset, offset, r, r) = random_unitary(r, rng);
  return w;
}

double stabilizer_residual(const SymmetryDescriptor& descriptor, const CMatrix& w) {
  CMatrix m = canonical_middle(expanded_lambdas(descriptor), descriptor.n());
  if (w.rows() != m.rows() || w.cols() != m.cols())
    throw Error(ErrorCode::IncompatibleShape, "W does not match the descriptor size");
  return (w * m * w.transpose() - m).norm();
}

SpinorFamily apply_symmetry(const SpinorFamily& family, const CMatrix& w) {
  const int k = family.k();
  const int n = family.n();
  const int d = 2 * k;
  CMatrix block;
  if (w.rows() == d && w.cols() == d) {
    block = w;
  } else if (w.rows() == n && w.cols() == n) {
    double mixing = w.block(0, d, d, n - d).norm() + w.block(d, 0, n - d, d).norm();
    if (mixing > 1e-10)
      throw Error(ErrorCode::IncompatibleShape, "W mixes paired columns with the padding");
    block = w.topLeftCorner(d, d);
  } else {
    throw Error(ErrorCode::IncompatibleShape, "W must be N x N or 2k x 2k");
  }
  CMatrix z(n, d);
  for (int alpha = 0; alpha < k; ++alpha)
    for (int a = 0; a < n; ++a) {
      z(a, 2 * alpha) = family.families[alpha][a].x;
      z(a, 2 * alpha + 1) = family.families[alpha][a].y;
    }
  CMatrix rotated = z * block;
  SpinorFamily out = family;
  for (int alpha = 0; alpha < k; ++alpha)
    for (int a = 0; a < n; ++a)
      out.families[alpha][a] = {rotated(a, 2 * alpha), rotated(a, 2 * alpha + 1)};
  return out;
}

SpinorFamily sl2c_boost(const SpinorFamily& family, const Eigen::Matrix2cd& x) {
  if (std::abs(x.determinant() - 1.0) > 1e-12)
    throw Error(ErrorCode::NonUnitDeterminant, "boost must have unit determinant");
  SpinorFamily out = family;
  for (std::vector<Spinor>& fam : out.families)
    for (Spinor& z : fam) z = {x(0, 0) * z.x + x(1, 0) * z.y, x(0, 1) * z.x + x(1, 1) * z.y};
  return out;
}

FourLegExample four_leg_example() {
  const Complex i(0.0, 1.0);
  const double r = std::sqrt(0.5);
  CMatrix u(4, 4);
  u << 1.0, 1.0, r * (-1.0 - i), r * (-1.0 + i),
       1.0, -1.0, r * (1.0 - i), r * (1.0 + i),
       i, 1.0, 0.0, std::sqrt(2.0),
       -i, 1.0, std::sqrt(2.0), 0.0;
  u *= 0.5;
  CMatrix w = CMatrix::Zero(4, 4);
  w.topLeftCorner(2, 2).setIdentity();
  w.topRightCorner(2, 2).setIdentity();
  w.bottomLeftCorner(2, 2).setIdentity();
  w.bottomRightCorner(2, 2) = -CMatrix::Identity(2, 2);
  w *= r;
  return {u, w, r, antisym_from_pairs({r, r}, u)};
}

}  // namespace sostar
