#include <algorithm>
#include <cmath>
#include <limits>

#include "sostar/errors.hpp"
#include "sostar/fock.hpp"

namespace sostar {

namespace {

// Spectrum of z^* z, computed here rather than through the canonical form so
// that the oracle stays independent of it.
RVector gram_spectrum(const AntisymMatrix& zeta) {
  const CMatrix& z = zeta.entries();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(z.adjoint() * z, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "eigensolver failed");
  return es.eigenvalues();
}

// det(1 - z^* z)^{1/2}
double state_norm(const AntisymMatrix& zeta) {
  require_in_domain(zeta);
  const int n = zeta.n();
  const CMatrix& z = zeta.entries();
  double det = (CMatrix::Identity(n, n) - z.adjoint() * z).determinant().real();
  return std::sqrt(det);
}

void require_n(const AntisymMatrix& zeta, const FockBasis& basis) {
  if (zeta.n() != basis.n()) throw Error(ErrorCode::IncompatibleShape, "label size differs from the basis");
}

// phi_J = (F~_z / 2)^J |0> / J!, one sector at a time.
class SectorStream {
 public:
  SectorStream(const AntisymMatrix& zeta, const ModeTables& modes)
      : op_(op_half_ftilde(zeta.entries())), modes_(modes), cur_(StateVector::vacuum()) {}

  int j() const { return j_; }
  const StateVector& sector() const { return cur_; }

  void advance() {
    StateVector next = op_.apply(cur_, modes_);
    next.scale(1.0 / (j_ + 1));
    cur_ = std::move(next);
    ++j_;
  }

 private:
  SparseOperator op_;
  const ModeTables& modes_;
  StateVector cur_;
  int j_ = 0;
};

// Matrices of Gamma(m) on the monomials of each degree up to max_degree:
// out[p](k, i) = <k| Gamma(m) |i>, where Gamma(m) a+_b Gamma(m)^-1 = sum_a m(a, b) a+_a.
// Built one quantum at a time from |i> = a+_c |i - e_c> / sqrt(i_c).
std::vector<CMatrix> symmetric_powers(const CMatrix& m, const ModeTables& modes, int max_degree) {
  const int n = modes.n();
  std::vector<CMatrix> out(max_degree + 1);
  out[0] = CMatrix::Identity(1, 1);
  for (int p = 1; p <= max_degree; ++p) {
    const int dp = modes.dim(p), dprev = modes.dim(p - 1);
    CMatrix& cur = out[p];
    cur = CMatrix::Zero(dp, dp);
    const CMatrix& prev = out[p - 1];
    for (int i = 0; i < dp; ++i) {
      const int* occ = modes.occupation(p, i);
      int c = 0;
      while (occ[c] == 0) ++c;
      const int parent = modes.lower(p, c, i);
      const double inv = 1.0 / std::sqrt(static_cast<double>(occ[c]));
      for (int k = 0; k < dprev; ++k) {
        const Complex amp = prev(k, parent) * inv;
        if (amp == Complex(0.0)) continue;
        const int* kocc = modes.occupation(p - 1, k);
        for (int b = 0; b < n; ++b) {
          if (m(b, c) == Complex(0.0)) continue;
          cur(modes.raise(p - 1, b, k), i) += m(b, c) * amp * std::sqrt(kocc[b] + 1.0);
        }
      }
    }
  }
  return out;
}

// exp(E_l) state, exact on every block: e^{tr l} Gamma(e^l) on both the A and B modes.
StateVector exp_e_linear(const CMatrix& l, const StateVector& state, const ModeTables& modes) {
  int top = 0;
  for (const auto& [key, block] : state.blocks) top = std::max({top, key.first, key.second});
  const std::vector<CMatrix> sym = symmetric_powers(matrix_exp(l), modes, top);
  const Complex factor = std::exp(l.trace());
  StateVector out;
  out.truncated = state.truncated;
  for (const auto& [key, block] : state.blocks)
    out.blocks[key] = factor * sym[key.first] * block * sym[key.second].transpose();
  return out;
}

// Terminating or cutoff-truncated series sum_k (op^k / k!) state.
StateVector power_series(const SparseOperator& op, const StateVector& state, const FockBasis& basis) {
  StateVector acc = state;
  StateVector term = state;
  for (int k = 1;; ++k) {
    term = op.apply(term, basis);
    acc.truncated = acc.truncated || term.truncated;
    if (term.blocks.empty() || term.norm() == 0.0) break;
    term.scale(1.0 / k);
    acc.add(term, 1.0);
    if (k > 4 * basis.j_max() + 8) throw Error(ErrorCode::ConvergenceFailure, "series failed to terminate");
  }
  return acc;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

StateVector fixed_area_state(const AntisymMatrix& zeta, int j, const FockBasis& basis) {
  require_n(zeta, basis);
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "area must be non-negative");
  if (j > basis.j_max()) throw Error(ErrorCode::CutoffExceeded, "area exceeds the basis cutoff");
  SparseOperator op = op_half_ftilde(zeta.entries());
  StateVector s = StateVector::vacuum();
  for (int k = 0; k < j; ++k) s = op.apply(s, basis);
  return s;
}

double su2_residual(const StateVector& state, const FockBasis& basis) {
  const double norm = state.norm();
  if (norm == 0.0) return 0.0;
  const int n = basis.n();
  double worst = 0.0;
  for (const SparseOperator& op : {op_jz(n), op_jplus(n), op_jminus(n)})
    worst = std::max(worst, op.apply(state, basis.modes()).norm());
  return worst / norm;
}

double area_eigen_residual(const StateVector& state, int j, const FockBasis& basis) {
  const double norm = state.norm();
  if (norm == 0.0) return 0.0;
  StateVector r = op_area_total(basis.n()).apply(state, basis.modes());
  r.add(state, -static_cast<double>(j));
  return r.norm() / norm;
}

StateVector coherent_vector(const AntisymMatrix& zeta, const FockBasis& basis) {
  require_n(zeta, basis);
  const double norm = state_norm(zeta);
  SectorStream stream(zeta, basis.modes());
  StateVector out;
  for (int j = 0; j <= basis.j_max(); ++j) {
    out.add(stream.sector(), norm);
    if (j < basis.j_max()) stream.advance();
  }
  out.truncated = zeta.entries().norm() > 0.0;
  return out;
}

double tail_bound(const AntisymMatrix& zeta, int j_max) {
  require_in_domain(zeta);
  RVector mu = gram_spectrum(zeta);
  const double top = mu.maxCoeff();
  int rank = 0;
  double det = 1.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) > kTolRank * kTolRank) ++rank;
    det *= 1.0 - mu(i);
  }
  if (rank == 0) return 0.0;
  const double log_l = std::log(top);
  double sum = 0.0;
  for (int j = j_max + 1;; ++j) {
    const double term = std::exp(log_binomial(j + rank - 1, rank - 1) + j * log_l);
    sum += term;
    const double ratio = top * (j + rank) / (j + 1.0);
    // remaining terms are dominated by a geometric series once ratio < 1
    if (ratio < 1.0) {
      const double rest = term * ratio / (1.0 - ratio);
      if (rest <= 1e-6 * sum || rest < std::numeric_limits<double>::min()) {
        sum += rest;
        break;
      }
    }
  }
  return det * sum;
}

int required_j_max(const AntisymMatrix& zeta, double tol, int limit) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  for (int j = 0; j <= limit; ++j)
    if (tail_bound(zeta, j) < tol) return j;
  throw Error(ErrorCode::CutoffExceeded, "tail rule needs a cutoff above the limit");
}

Complex oracle_overlap(const AntisymMatrix& omega, const AntisymMatrix& zeta, const FockBasis& basis) {
  require_n(omega, basis);
  require_n(zeta, basis);
  const double scale = state_norm(omega) * state_norm(zeta);
  SectorStream sw(omega, basis.modes());
  SectorStream sz(zeta, basis.modes());
  Complex acc = 0.0;
  for (int j = 0; j <= basis.j_max(); ++j) {
    acc += sw.sector().dot(sz.sector());
    if (j < basis.j_max()) {
      sw.advance();
      sz.advance();
    }
  }
  return scale * acc;
}

std::vector<Complex> oracle_matrix_elements(const std::vector<SparseOperator>& ops,
                                            const AntisymMatrix& omega, const AntisymMatrix& zeta,
                                            const FockBasis& basis) {
  require_n(omega, basis);
  require_n(zeta, basis);
  const double scale = state_norm(omega) * state_norm(zeta);
  const int jm = basis.j_max();
  const ModeTables& modes = basis.modes();
  SectorStream sw(omega, modes);
  SectorStream sz(zeta, modes);
  // bra window: sectors J-1, J, J+1 of omega
  StateVector prev;
  StateVector cur = sw.sector();
  StateVector next;
  if (jm >= 1) {
    sw.advance();
    next = sw.sector();
  }
  std::vector<Complex> acc(ops.size(), 0.0);
  for (int j = 0; j <= jm; ++j) {
    const StateVector& ket = sz.sector();
    for (size_t k = 0; k < ops.size(); ++k) {
      acc[k] += ops[k].sandwich(prev, ket, modes) + ops[k].sandwich(cur, ket, modes);
      if (j + 1 <= jm) acc[k] += ops[k].sandwich(next, ket, modes);
    }
    if (j == jm) break;
    sz.advance();
    prev = std::move(cur);
    cur = std::move(next);
    next = StateVector();
    if (j + 2 <= jm) {
      sw.advance();
      next = sw.sector();
    }
  }
  for (Complex& v : acc) v *= scale;
  return acc;
}

MatrixElements oracle_matrix_elements(const AntisymMatrix& omega, const AntisymMatrix& zeta,
                                      const FockBasis& basis) {
  const int n = basis.n();
  std::vector<SparseOperator> ops;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ops.push_back(op_e(a, b));
      ops.push_back(op_f(a, b));
      ops.push_back(op_ftilde(a, b));
    }
  std::vector<Complex> v = oracle_matrix_elements(ops, omega, zeta, basis);
  MatrixElements out{CMatrix(n, n), CMatrix(n, n), CMatrix(n, n)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const size_t k = 3 * static_cast<size_t>(a * n + b);
      out.e(a, b) = v[k];
      out.f(a, b) = v[k + 1];
      out.ftilde(a, b) = v[k + 2];
    }
  return out;
}

Complex oracle_expectation(const SparseOperator& op, const AntisymMatrix& zeta, const FockBasis& basis) {
  return oracle_matrix_elements(std::vector<SparseOperator>{op}, zeta, zeta, basis)[0];
}

std::vector<DistributionPoint> oracle_distribution(const AntisymMatrix& zeta, const FockBasis& basis) {
  require_n(zeta, basis);
  const double norm = state_norm(zeta);
  SectorStream stream(zeta, basis.modes());
  std::vector<DistributionPoint> out;
  for (int j = 0; j <= basis.j_max(); ++j) {
    out.push_back({j, norm * norm * stream.sector().norm_sq()});
    if (j < basis.j_max()) stream.advance();
  }
  return out;
}

OracleAreaStats oracle_area_statistics(const AntisymMatrix& zeta, const FockBasis& basis) {
  require_n(zeta, basis);
  const int n = basis.n();
  const double norm = state_norm(zeta);
  const ModeTables& modes = basis.modes();
  RVector mean = RVector::Zero(n);
  RMatrix second = RMatrix::Zero(n, n);
  SectorStream stream(zeta, modes);
  auto occupations = [&](int degree) {
    RMatrix occ(modes.dim(degree), n);
    for (int i = 0; i < occ.rows(); ++i)
      for (int a = 0; a < n; ++a) occ(i, a) = modes.occupation(degree, i)[a];
    return occ;
  };
  for (int j = 0; j <= basis.j_max(); ++j) {
    for (const auto& [key, block] : stream.sector().blocks) {
      RMatrix w = block.cwiseAbs2();
      RMatrix na = occupations(key.first);
      RMatrix nb = occupations(key.second);
      RVector rows = w.rowwise().sum();
      RVector cols = w.colwise().sum().transpose();
      mean += 0.5 * (na.transpose() * rows + nb.transpose() * cols);
      RMatrix cross = na.transpose() * w * nb;
      second += 0.25 * (na.transpose() * rows.asDiagonal() * na + nb.transpose() * cols.asDiagonal() * nb +
                        cross + cross.transpose());
    }
    if (j < basis.j_max()) stream.advance();
  }
  const double w = norm * norm;
  OracleAreaStats out;
  out.mean = w * mean;
  out.covariance = w * second - out.mean * out.mean.transpose();
  out.total_mean = out.mean.sum();
  out.total_var = out.covariance.sum();
  return out;
}

StateVector apply_group_element(const BlockGroupElement& g, const StateVector& state, const FockBasis& basis) {
  if (g.n() != basis.n()) throw Error(ErrorCode::IncompatibleShape, "group element size differs from the basis");
  UdlFactors f = udl_decompose(g);
  StateVector s = power_series(op_half_f(f.lower.entries()) * Complex(-1.0), state, basis);
  s = exp_e_linear(f.l_matrix, s, basis.modes());
  return power_series(op_half_ftilde(f.upper.entries()), s, basis);
}

double group_coherence(const BlockGroupElement& g, const AntisymMatrix& zeta, const FockBasis& basis) {
  StateVector moved = apply_group_element(g, coherent_vector(zeta, basis), basis);
  StateVector target = coherent_vector(moebius_act(g, zeta), basis);
  return std::abs(target.dot(moved));
}

double annihilator_check(const AntisymMatrix& zeta, const FockBasis& basis) {
  require_n(zeta, basis);
  const int n = basis.n();
  const double norm = state_norm(zeta);
  const ModeTables& modes = basis.modes();
  const CMatrix& z = zeta.entries();
  // C_d and S^{dc} C+_c with S = [[0, -z], [z, 0]]
  std::vector<SparseOperator> lower(2 * n), raised(2 * n);
  for (int a = 0; a < n; ++a) {
    lower[a].add(1.0, {{Mode::A, a, false}});
    lower[n + a].add(1.0, {{Mode::B, a, false}});
    for (int b = 0; b < n; ++b) {
      raised[a].add(-z(a, b), {{Mode::B, b, true}});
      raised[n + a].add(z(a, b), {{Mode::A, b, true}});
    }
  }
  std::vector<double> acc(2 * n, 0.0);
  SectorStream stream(zeta, modes);
  for (int j = 0; j + 1 <= basis.j_max(); ++j) {
    StateVector low = stream.sector();
    stream.advance();
    for (int d = 0; d < 2 * n; ++d) {
      StateVector r = lower[d].apply(stream.sector(), modes);
      r.add(raised[d].apply(low, modes), -1.0);
      acc[d] += r.norm_sq_upto(2 * basis.j_max() - 1);
    }
  }
  return norm * std::sqrt(*std::max_element(acc.begin(), acc.end()));
}

double highest_weight_check(const CMatrix& g, int j, const FockBasis& basis) {
  const int n = basis.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "highest weight check needs n >= 2");
  if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::IncompatibleShape, "g must be N x N");
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "area must be non-negative");
  if (j > basis.j_max()) throw Error(ErrorCode::CutoffExceeded, "area exceeds the basis cutoff");
  if (!all_finite(g) || reciprocal_condition(g) < 1e-13) throw Error(ErrorCode::SingularMatrix, "g is not invertible");
  const ModeTables& modes = basis.modes();
  const double scale = 1.0 / std::sqrt(std::exp(std::lgamma(j + 1.0) + std::lgamma(j + 2.0)));

  StateVector psi = StateVector::vacuum();
  SparseOperator f12 = op_ftilde(0, 1);
  for (int k = 0; k < j; ++k) psi = f12.apply(psi, modes);
  psi.scale(scale);

  CMatrix alpha = matrix_log(g);
  StateVector lhs = exp_e_linear(alpha, psi, modes);

  CMatrix xi0 = CMatrix::Zero(n, n);
  xi0(0, 1) = 1.0;
  xi0(1, 0) = -1.0;
  SparseOperator moved = op_half_ftilde(g * xi0 * g.transpose());
  StateVector rhs = StateVector::vacuum();
  for (int k = 0; k < j; ++k) rhs = moved.apply(rhs, modes);
  rhs.scale(g.determinant() * scale);

  const double ref = rhs.norm();
  lhs.add(rhs, -1.0);
  return lhs.norm() / ref;
}

int intertwiner_dimension(const FockBasis& basis, int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "area must be non-negative");
  if (j > basis.j_max()) throw Error(ErrorCode::CutoffExceeded, "area exceeds the basis cutoff");
  const ModeTables& modes = basis.modes();
  const int d = modes.dim(j);
  const int cols = d * d;
  if (j == 0) return 1;
  // Blocks with p != q carry J_z = (p - q)/2 != 0, so only (J, J) can hold
  // invariants.
  const int up_rows = modes.dim(j + 1) * modes.dim(j - 1);
  CMatrix stacked = CMatrix::Zero(2 * up_rows, cols);
  SparseOperator jp = op_jplus(basis.n());
  SparseOperator jm = op_jminus(basis.n());
  for (int c = 0; c < cols; ++c) {
    StateVector unit;
    CMatrix block = CMatrix::Zero(d, d);
    block(c / d, c % d) = 1.0;
    unit.blocks[{j, j}] = block;
    StateVector a = jp.apply(unit, modes);
    StateVector b = jm.apply(unit, modes);
    const int dq_a = modes.dim(j - 1);
    const int dq_b = modes.dim(j + 1);
    for (const auto& [key, m] : a.blocks)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index s = 0; s < m.cols(); ++s) stacked(r * dq_a + s, c) = m(r, s);
    for (const auto& [key, m] : b.blocks)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index s = 0; s < m.cols(); ++s) stacked(up_rows + r * dq_b + s, c) = m(r, s);
  }
  // eigenvalues of J+^* J+ + J-^* J- = 2 J^2 on J_z = 0 are 2 l (l + 1)
  RVector ev = hermitian_eigen(stacked.adjoint() * stacked).values;
  return static_cast<int>((ev.array() < 0.5).count());
}

}  // namespace sostar
