#include "sostar/group.hpp"

#include <algorithm>
#include <cmath>

#include "sostar/errors.hpp"

namespace sostar {

namespace {

constexpr double kSingularRcond = 1e-13;

CMatrix eye(int n) { return CMatrix::Identity(n, n); }

// Delta_ab with 0-based indices.
CMatrix delta(int a, int b, int n) {
  CMatrix d = CMatrix::Zero(n, n);
  d(a, b) = 1.0;
  return d;
}

}  // namespace

CMatrix BlockGroupElement::full() const {
  const int m = n();
  CMatrix g(2 * m, 2 * m);
  g << a, b, -b.conjugate(), a.conjugate();
  return g;
}

BlockGroupElement BlockGroupElement::inverse() const { return {a.adjoint(), b.transpose()}; }

BlockGroupElement BlockGroupElement::identity(int n) { return {eye(n), CMatrix::Zero(n, n)}; }

BlockGroupElement BlockGroupElement::from_unitary(const CMatrix& u) {
  return {u, CMatrix::Zero(u.rows(), u.cols())};
}

BlockGroupElement BlockGroupElement::from_full(const CMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0)
    throw Error(ErrorCode::IncompatibleShape, "group element must be 2N x 2N");
  const Eigen::Index m = g.rows() / 2;
  return {g.topLeftCorner(m, m), g.topRightCorner(m, m)};
}

BlockGroupElement operator*(const BlockGroupElement& g1, const BlockGroupElement& g2) {
  if (g1.n() != g2.n()) throw Error(ErrorCode::IncompatibleShape, "group elements differ in size");
  return BlockGroupElement::from_full(g1.full() * g2.full());
}

double check_group_membership(const BlockGroupElement& g) {
  const int n = g.n();
  const CMatrix& A = g.a;
  const CMatrix& B = g.b;
  double r = 0.0;
  r = std::max(r, (A * A.adjoint() - B * B.adjoint() - eye(n)).norm());
  r = std::max(r, (A.adjoint() * A - B.transpose() * B.conjugate() - eye(n)).norm());
  r = std::max(r, (A.adjoint() * B + B.transpose() * A.conjugate()).norm());
  r = std::max(r, (B * A.transpose() + A * B.transpose()).norm());

  CMatrix G = g.full();
  CMatrix eta = CMatrix::Zero(2 * n, 2 * n);
  eta.topLeftCorner(n, n) = eye(n);
  eta.bottomRightCorner(n, n) = -eye(n);
  CMatrix swap = CMatrix::Zero(2 * n, 2 * n);
  swap.topRightCorner(n, n) = eye(n);
  swap.bottomLeftCorner(n, n) = eye(n);
  r = std::max(r, (G.adjoint() * eta * G - eta).norm());
  r = std::max(r, (G.transpose() * swap * G - swap).norm());
  r = std::max(r, std::abs(G.determinant() - 1.0));
  return r;
}

CMatrix AlgebraElement::full() const {
  const Eigen::Index n = x.rows();
  CMatrix v(2 * n, 2 * n);
  v << x, y, -y.conjugate(), x.conjugate();
  return v;
}

double AlgebraElement::residual() const {
  return std::max((x + x.adjoint()).norm(), (y + y.transpose()).norm());
}

GeneratorMatrix generator_matrix(GeneratorKind kind, int a, int b, int n) {
  if (n < 1 || a < 1 || b < 1 || a > n || b > n)
    throw Error(ErrorCode::IndexOutOfRange, "generator index out of range");
  const int i = a - 1, j = b - 1;
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  switch (kind) {
    case GeneratorKind::E:
      m.topLeftCorner(n, n) = delta(i, j, n);
      m.bottomRightCorner(n, n) = -delta(j, i, n);
      break;
    case GeneratorKind::F:
      m.bottomLeftCorner(n, n) = delta(i, j, n) - delta(j, i, n);
      break;
    case GeneratorKind::Ftilde:
      m.topRightCorner(n, n) = delta(i, j, n) - delta(j, i, n);
      break;
  }
  return {kind, a, b, m};
}

CMatrix algebra_e(const CMatrix& l) {
  const Eigen::Index n = l.rows();
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = l;
  m.bottomRightCorner(n, n) = -l.transpose();
  return m;
}

CMatrix algebra_ftilde(const CMatrix& z) {
  const Eigen::Index n = z.rows();
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = z - z.transpose();
  return m;
}

CMatrix algebra_f(const CMatrix& z) {
  const Eigen::Index n = z.rows();
  CMatrix m = CMatrix::Zero(2 * n, 2 * n);
  m.bottomLeftCorner(n, n) = z.conjugate() - z.conjugate().transpose();
  return m;
}

std::vector<GeneratorTerm> commutator_rhs(GeneratorKind x, int a, int b, GeneratorKind y, int c,
                                          int d) {
  using K = GeneratorKind;
  auto dl = [](int p, int q) { return p == q ? 1.0 : 0.0; };
  std::vector<GeneratorTerm> out;
  auto add = [&out](double coef, K kind, int p, int q) {
    if (coef != 0.0) out.push_back({coef, kind, p, q});
  };
  auto flipped = [&]() {
    std::vector<GeneratorTerm> r = commutator_rhs(y, c, d, x, a, b);
    for (GeneratorTerm& t : r) t.coef = -t.coef;
    return r;
  };
  if (x == K::E && y == K::E) {
    add(dl(c, b), K::E, a, d);
    add(-dl(a, d), K::E, c, b);
  } else if (x == K::E && y == K::Ftilde) {
    add(dl(b, c), K::Ftilde, a, d);
    add(-dl(b, d), K::Ftilde, a, c);
  } else if (x == K::E && y == K::F) {
    add(dl(a, d), K::F, b, c);
    add(-dl(a, c), K::F, b, d);
  } else if (x == K::F && y == K::Ftilde) {
    add(dl(d, b), K::E, c, a);
    add(dl(c, a), K::E, d, b);
    add(-dl(c, b), K::E, d, a);
    add(-dl(d, a), K::E, c, b);
  } else if (x == y) {
    // [F, F] = [F~, F~] = 0
  } else {
    return flipped();
  }
  return out;
}

double structure_constant_check(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const GeneratorKind kinds[] = {GeneratorKind::E, GeneratorKind::F, GeneratorKind::Ftilde};
  double worst = 0.0;
  for (GeneratorKind x : kinds)
    for (GeneratorKind y : kinds)
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          for (int c = 1; c <= n; ++c)
            for (int d = 1; d <= n; ++d) {
              CMatrix X = generator_matrix(x, a, b, n).matrix;
              CMatrix Y = generator_matrix(y, c, d, n).matrix;
              CMatrix lhs = X * Y - Y * X;
              CMatrix rhs = CMatrix::Zero(2 * n, 2 * n);
              for (const GeneratorTerm& t : commutator_rhs(x, a, b, y, c, d))
                rhs += t.coef * generator_matrix(t.kind, t.a, t.b, n).matrix;
              worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
            }
  return worst;
}

BlockGroupElement g_of_zeta(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  const CMatrix& z = zeta.entries();
  const int n = zeta.n();
  CMatrix x = hermitian_function(eye(n) - z * z.adjoint(), [](double v) { return 1.0 / std::sqrt(v); });
  return {x, z * x.conjugate()};
}

AntisymMatrix moebius_act(const BlockGroupElement& g, const AntisymMatrix& zeta) {
  if (g.n() != zeta.n()) throw Error(ErrorCode::IncompatibleShape, "size mismatch in group action");
  const CMatrix& z = zeta.entries();
  CMatrix num = g.a * z + g.b;
  CMatrix den = -g.b.conjugate() * z + g.a.conjugate();
  Eigen::PartialPivLU<CMatrix> lu(den);
  if (lu.rcond() < kSingularRcond)
    throw Error(ErrorCode::SingularDenominator, "C z + D is not invertible");
  // num * den^{-1} = (den^{-t} num^t)^t
  CMatrix result = den.transpose().partialPivLu().solve(num.transpose()).transpose();
  return AntisymMatrix::project(result);
}

UdlFactors udl_decompose(const BlockGroupElement& g) {
  const CMatrix abar = g.a.conjugate();
  if (reciprocal_condition(abar) < kSingularRcond) throw Error(ErrorCode::SingularA, "A is not invertible");
  CMatrix upper = abar.transpose().partialPivLu().solve(g.b.transpose()).transpose();
  CMatrix lower = g.a.partialPivLu().solve(g.b);
  CMatrix el = g.a.adjoint().partialPivLu().inverse();
  return {AntisymMatrix::project(upper), matrix_log(el), AntisymMatrix::project(lower)};
}

CMatrix UdlFactors::reassemble() const {
  return matrix_exp(0.5 * algebra_ftilde(upper.entries())) * matrix_exp(algebra_e(l_matrix)) *
         matrix_exp(-0.5 * algebra_f(lower.entries()));
}

CMatrix sp4n_embed(const BlockGroupElement& g) {
  const int n = g.n();
  const CMatrix& X = g.a;
  const CMatrix& Y = g.b;
  CMatrix Z = CMatrix::Zero(n, n);
  CMatrix phi(4 * n, 4 * n);
  phi << X, Z, Z, -Y,
         Z, X, Y, Z,
         Z, -Y.conjugate(), X.conjugate(), Z,
         Y.conjugate(), Z, Z, X.conjugate();
  return phi;
}

double bogoliubov_residual(const CMatrix& phi) {
  if (phi.rows() != phi.cols() || phi.rows() % 2 != 0)
    throw Error(ErrorCode::IncompatibleShape, "Bogoliubov matrix must be square of even size");
  const Eigen::Index m = phi.rows() / 2;
  CMatrix U = phi.topLeftCorner(m, m);
  CMatrix V = phi.topRightCorner(m, m);
  double r = (U * U.adjoint() - V * V.adjoint() - CMatrix::Identity(m, m)).norm();
  r = std::max(r, (U * V.transpose() - V * U.transpose()).norm());
  r = std::max(r, (phi.bottomLeftCorner(m, m) - V.conjugate()).norm());
  r = std::max(r, (phi.bottomRightCorner(m, m) - U.conjugate()).norm());
  return r;
}

SqueezeResult squeeze_matrix(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  SqueezeResult out;
  out.s = CMatrix::Zero(2 * n, 2 * n);
  out.s.topRightCorner(n, n) = -z;
  out.s.bottomLeftCorner(n, n) = z;
  CMatrix phi = sp4n_embed(g_of_zeta(zeta).inverse());
  CMatrix U = phi.topLeftCorner(2 * n, 2 * n);
  CMatrix V = phi.topRightCorner(2 * n, 2 * n);
  out.residual = (out.s + U.partialPivLu().solve(V)).norm();
  return out;
}

}  // namespace sostar
