#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <tuple>

#include "sostar/errors.hpp"
#include "sostar/fock.hpp"

namespace sostar {

std::size_t default_capacity() {
  const char* env = std::getenv("COHERENT_MAX_DIM");
  if (env == nullptr || *env == '\0') return kDefaultMaxDim;
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("COHERENT_MAX_DIM is not a positive integer: ") + env);
  }
}

// ---------------------------------------------------------------------------
// Mode tables

ModeTables::ModeTables(int n, int max_degree) : n_(n) {
  if (n < 1 || max_degree < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and degree >= 0");
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<int> flat;
    std::vector<int> cur(n, 0);
    // descending lexicographic enumeration of compositions of d into n parts
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
      if (pos == n - 1) {
        cur[pos] = remaining;
        flat.insert(flat.end(), cur.begin(), cur.end());
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        cur[pos] = v;
        self(self, pos + 1, remaining - v);
      }
    };
    rec(rec, 0, d);
    const int dim = static_cast<int>(flat.size()) / n;
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim; ++i) index.emplace(std::vector<int>(flat.begin() + i * n, flat.begin() + (i + 1) * n), i);
    dims_.push_back(dim);
    occ_.push_back(std::move(flat));
    index_.push_back(std::move(index));
  }
  up_.resize(dims_.size());
  down_.resize(dims_.size());
  for (int d = 0; d <= max_degree; ++d) {
    const int dim = dims_[d];
    up_[d].assign(static_cast<size_t>(n) * dim, -1);
    down_[d].assign(static_cast<size_t>(n) * dim, -1);
    for (int i = 0; i < dim; ++i) {
      std::vector<int> occ(occupation(d, i), occupation(d, i) + n);
      for (int m = 0; m < n; ++m) {
        if (d < max_degree) {
          ++occ[m];
          up_[d][m * dim + i] = index_of(d + 1, occ);
          --occ[m];
        }
        if (occ[m] > 0) {
          --occ[m];
          down_[d][m * dim + i] = index_of(d - 1, occ);
          ++occ[m];
        }
      }
    }
  }
}

int ModeTables::dim(int degree) const {
  if (degree < 0 || degree > max_degree()) return 0;
  return dims_[degree];
}

const int* ModeTables::occupation(int degree, int i) const { return occ_[degree].data() + i * n_; }

int ModeTables::index_of(int degree, const std::vector<int>& occ) const {
  if (degree < 0 || degree > max_degree()) return -1;
  auto it = index_[degree].find(occ);
  return it == index_[degree].end() ? -1 : it->second;
}

int ModeTables::raise(int degree, int mode, int i) const { return up_[degree][mode * dims_[degree] + i]; }

int ModeTables::lower(int degree, int mode, int i) const { return down_[degree][mode * dims_[degree] + i]; }

// ---------------------------------------------------------------------------
// Basis

namespace {

double binom(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

double mode_dim(int n, int degree) { return binom(degree + n - 1, n - 1); }

template <typename F>
void for_each_block(int j_max, BasisKind kind, F f) {
  for (int t = 0; t <= 2 * j_max; ++t) {
    if (kind == BasisKind::Balanced) {
      if (t % 2 == 0) f(t / 2, t / 2);
    } else {
      for (int p = t; p >= 0; --p) f(p, t - p);
    }
  }
}

}  // namespace

double basis_size(int n, int j_max, BasisKind kind) {
  if (n < 1 || j_max < 0) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and j_max >= 0");
  double total = 0.0;
  for_each_block(j_max, kind, [&](int p, int q) { total += mode_dim(n, p) * mode_dim(n, q); });
  return total;
}

FockBasis::FockBasis(int n, int j_max, BasisKind kind, std::size_t max_dim)
    : n_(n), j_max_(j_max), kind_(kind) {
  const double count = basis_size(n, j_max, kind);
  if (max_dim == 0) max_dim = default_capacity();
  if (count > static_cast<double>(max_dim))
    throw Error(ErrorCode::CapacityExceeded, "basis of " + std::to_string(static_cast<long long>(count)) +
                                                 " states exceeds the bound " + std::to_string(max_dim));
  const int top = kind == BasisKind::Full ? 2 * j_max + 1 : j_max + 1;
  modes_ = std::make_shared<ModeTables>(n, top);
  for_each_block(j_max, kind, [&](int p, int q) {
    lookup_[{p, q}] = blocks_.size();
    blocks_.push_back({p, q, size_});
    size_ += static_cast<std::size_t>(modes_->dim(p)) * modes_->dim(q);
  });
}

const FockBlock* FockBasis::find_block(int p, int q) const {
  auto it = lookup_.find({p, q});
  return it == lookup_.end() ? nullptr : &blocks_[it->second];
}

std::vector<int> FockBasis::occupation(std::size_t index) const {
  if (index >= size_) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                             [](std::size_t v, const FockBlock& b) { return v < b.offset; });
  const FockBlock& b = *(it - 1);
  const std::size_t local = index - b.offset;
  const int dq = modes_->dim(b.q);
  const int i = static_cast<int>(local / dq);
  const int j = static_cast<int>(local % dq);
  std::vector<int> occ(modes_->occupation(b.p, i), modes_->occupation(b.p, i) + n_);
  occ.insert(occ.end(), modes_->occupation(b.q, j), modes_->occupation(b.q, j) + n_);
  return occ;
}

std::size_t FockBasis::index_of(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != 2 * n_) throw Error(ErrorCode::IncompatibleShape, "occupation length must be 2N");
  std::vector<int> a(occ.begin(), occ.begin() + n_);
  std::vector<int> b(occ.begin() + n_, occ.end());
  int p = 0, q = 0;
  for (int v : a) p += v;
  for (int v : b) q += v;
  if (*std::min_element(occ.begin(), occ.end()) < 0)
    throw Error(ErrorCode::IndexOutOfRange, "negative occupation");
  const FockBlock* block = find_block(p, q);
  if (block == nullptr) throw Error(ErrorCode::IndexOutOfRange, "occupation outside the basis");
  return block->offset + static_cast<std::size_t>(modes_->index_of(p, a)) * modes_->dim(q) + modes_->index_of(q, b);
}

double FockBasis::area(std::size_t index) const {
  double total = 0.0;
  for (int v : occupation(index)) total += v;
  return 0.5 * total;
}

FockBasis build_basis(int n, int j_max, BasisKind kind, std::size_t max_dim) {
  return FockBasis(n, j_max, kind, max_dim);
}

// ---------------------------------------------------------------------------
// States

StateVector StateVector::vacuum() {
  StateVector s;
  s.blocks[{0, 0}] = CMatrix::Ones(1, 1);
  return s;
}

double StateVector::norm_sq() const {
  double acc = 0.0;
  for (const auto& [key, m] : blocks) acc += m.squaredNorm();
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

Complex StateVector::dot(const StateVector& ket) const {
  Complex acc = 0.0;
  for (const auto& [key, m] : blocks) {
    auto it = ket.blocks.find(key);
    if (it != ket.blocks.end()) acc += m.conjugate().cwiseProduct(it->second).sum();
  }
  return acc;
}

void StateVector::add(const StateVector& other, Complex s) {
  for (const auto& [key, m] : other.blocks) {
    auto it = blocks.find(key);
    if (it == blocks.end())
      blocks.emplace(key, s * m);
    else
      it->second += s * m;
  }
  truncated = truncated || other.truncated;
}

void StateVector::scale(Complex s) {
  for (auto& [key, m] : blocks) m *= s;
}

double StateVector::norm_sq_upto(int max_quanta) const {
  double acc = 0.0;
  for (const auto& [key, m] : blocks)
    if (key.first + key.second <= max_quanta) acc += m.squaredNorm();
  return acc;
}

CVector StateVector::to_dense(const FockBasis& basis) const {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [key, m] : blocks) {
    const FockBlock* b = basis.find_block(key.first, key.second);
    if (b == nullptr) {
      if (m.norm() > 0.0) throw Error(ErrorCode::IncompatibleShape, "state has weight outside the basis");
      continue;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) v(b->offset + i * m.cols() + j) = m(i, j);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Operators

namespace {

// Image of every monomial of one mode family under the ladder factors of
// that family, applied right to left.
struct SideMap {
  int degree = 0;
  bool overflow = false;  // a creation left the tables
  std::vector<int> index;
  std::vector<double> coef;
};

SideMap side_map(const ModeTables& t, int degree, const std::vector<Ladder>& ops, Mode mode) {
  SideMap s;
  s.degree = degree;
  const int dim = t.dim(degree);
  s.index.resize(dim);
  s.coef.assign(dim, 1.0);
  for (int i = 0; i < dim; ++i) s.index[i] = i;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->mode != mode) continue;
    if (it->leg < 0 || it->leg >= t.n()) throw Error(ErrorCode::IndexOutOfRange, "ladder leg out of range");
    const int next = s.degree + (it->create ? 1 : -1);
    if (next > t.max_degree()) {
      s.overflow = true;
      s.degree = next;
      std::fill(s.index.begin(), s.index.end(), -1);
      return s;
    }
    for (int i = 0; i < dim; ++i) {
      int& k = s.index[i];
      if (k < 0) continue;
      const int occ = t.occupation(s.degree, k)[it->leg];
      if (it->create) {
        s.coef[i] *= std::sqrt(occ + 1.0);
        k = t.raise(s.degree, it->leg, k);
      } else if (occ == 0) {
        k = -1;
      } else {
        s.coef[i] *= std::sqrt(static_cast<double>(occ));
        k = t.lower(s.degree, it->leg, k);
      }
    }
    s.degree = next;
    if (next < 0) {
      std::fill(s.index.begin(), s.index.end(), -1);
      return s;
    }
  }
  return s;
}

std::vector<int> valid_entries(const SideMap& s) {
  std::vector<int> v;
  for (size_t i = 0; i < s.index.size(); ++i)
    if (s.index[i] >= 0) v.push_back(static_cast<int>(i));
  return v;
}

bool touches(const CMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  for (int j : cols)
    for (int i : rows)
      if (m(i, j) != Complex(0.0)) return true;
  return false;
}

template <typename Accept>
StateVector apply_impl(const SparseOperator& op, const StateVector& state, const ModeTables& t, Accept accept) {
  StateVector out;
  out.truncated = state.truncated;
  for (const auto& [key, m] : state.blocks) {
    if (op.identity != Complex(0.0)) {
      if (accept(key.first, key.second)) {
        auto it = out.blocks.find(key);
        if (it == out.blocks.end())
          out.blocks.emplace(key, op.identity * m);
        else
          it->second += op.identity * m;
      } else if (m.norm() > 0.0) {
        out.truncated = true;
      }
    }
    for (const LadderTerm& term : op.terms) {
      SideMap sa = side_map(t, key.first, term.ops, Mode::A);
      SideMap sb = side_map(t, key.second, term.ops, Mode::B);
      if (sa.overflow || sb.overflow) {
        if (m.norm() > 0.0) out.truncated = true;
        continue;
      }
      if (sa.degree < 0 || sb.degree < 0) continue;
      std::vector<int> rows = valid_entries(sa);
      std::vector<int> cols = valid_entries(sb);
      if (rows.empty() || cols.empty()) continue;
      if (!accept(sa.degree, sb.degree)) {
        if (touches(m, rows, cols)) out.truncated = true;
        continue;
      }
      auto it = out.blocks.find({sa.degree, sb.degree});
      if (it == out.blocks.end())
        it = out.blocks.emplace(BlockKey{sa.degree, sb.degree}, CMatrix::Zero(t.dim(sa.degree), t.dim(sb.degree))).first;
      CMatrix& target = it->second;
      for (int j : cols) {
        const Complex cj = term.coef * sb.coef[j];
        const int tj = sb.index[j];
        for (int i : rows) target(sa.index[i], tj) += cj * sa.coef[i] * m(i, j);
      }
    }
  }
  return out;
}

}  // namespace

SparseOperator& SparseOperator::add(Complex coef, std::vector<Ladder> ops) {
  if (ops.empty())
    identity += coef;
  else
    terms.push_back({coef, std::move(ops)});
  return *this;
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  SparseOperator r = *this;
  r.identity += o.identity;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const { return *this + o * Complex(-1.0); }

SparseOperator SparseOperator::operator*(Complex s) const {
  SparseOperator r = *this;
  r.identity *= s;
  for (LadderTerm& t : r.terms) t.coef *= s;
  return r;
}

StateVector SparseOperator::apply(const StateVector& state, const FockBasis& basis) const {
  return apply_impl(*this, state, basis.modes(), [&basis](int p, int q) { return basis.contains(p, q); });
}

StateVector SparseOperator::apply(const StateVector& state, const ModeTables& modes) const {
  return apply_impl(*this, state, modes, [&modes](int p, int q) {
    return p <= modes.max_degree() && q <= modes.max_degree();
  });
}

Complex SparseOperator::sandwich(const StateVector& bra, const StateVector& ket, const ModeTables& t) const {
  Complex acc = identity != Complex(0.0) ? identity * bra.dot(ket) : Complex(0.0);
  for (const auto& [key, m] : ket.blocks) {
    for (const LadderTerm& term : terms) {
      SideMap sa = side_map(t, key.first, term.ops, Mode::A);
      SideMap sb = side_map(t, key.second, term.ops, Mode::B);
      if (sa.overflow || sb.overflow || sa.degree < 0 || sb.degree < 0) continue;
      auto it = bra.blocks.find({sa.degree, sb.degree});
      if (it == bra.blocks.end()) continue;
      const CMatrix& b = it->second;
      std::vector<int> rows = valid_entries(sa);
      Complex part = 0.0;
      for (int j : valid_entries(sb)) {
        const int tj = sb.index[j];
        Complex col = 0.0;
        for (int i : rows) col += std::conj(b(sa.index[i], tj)) * sa.coef[i] * m(i, j);
        part += col * sb.coef[j];
      }
      acc += term.coef * part;
    }
  }
  return acc;
}

std::vector<Eigen::Triplet<Complex>> SparseOperator::triples(const FockBasis& basis) const {
  const ModeTables& t = basis.modes();
  std::vector<Eigen::Triplet<Complex>> out;
  for (const FockBlock& block : basis.blocks()) {
    const int dp = t.dim(block.p);
    const int dq = t.dim(block.q);
    if (identity != Complex(0.0))
      for (int k = 0; k < dp * dq; ++k) out.emplace_back(block.offset + k, block.offset + k, identity);
    for (const LadderTerm& term : terms) {
      SideMap sa = side_map(t, block.p, term.ops, Mode::A);
      SideMap sb = side_map(t, block.q, term.ops, Mode::B);
      if (sa.overflow || sb.overflow || sa.degree < 0 || sb.degree < 0) continue;
      const FockBlock* target = basis.find_block(sa.degree, sb.degree);
      if (target == nullptr) continue;
      const int tq = t.dim(sb.degree);
      for (int i : valid_entries(sa))
        for (int j : valid_entries(sb))
          out.emplace_back(target->offset + static_cast<std::size_t>(sa.index[i]) * tq + sb.index[j],
                           block.offset + static_cast<std::size_t>(i) * dq + j,
                           term.coef * sa.coef[i] * sb.coef[j]);
    }
  }
  return out;
}

Eigen::SparseMatrix<Complex> SparseOperator::matrix(const FockBasis& basis) const {
  std::vector<Eigen::Triplet<Complex>> tr = triples(basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<Complex> m(n, n);
  m.setFromTriplets(tr.begin(), tr.end());
  return m;
}

double SparseOperator::norm_bound(int max_quanta) const {
  double acc = std::abs(identity);
  for (const LadderTerm& term : terms) {
    const double k = static_cast<double>(term.ops.size());
    acc += std::abs(term.coef) * std::pow(max_quanta + k, 0.5 * k);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

Ladder cr(Mode m, int leg) { return {m, leg, true}; }
Ladder an(Mode m, int leg) { return {m, leg, false}; }

}  // namespace

SparseOperator op_e(int a, int b) {
  SparseOperator op;
  op.add(1.0, {cr(Mode::A, a), an(Mode::A, b)});
  op.add(1.0, {cr(Mode::B, a), an(Mode::B, b)});
  if (a == b) op.identity += 1.0;
  return op;
}

SparseOperator op_f(int a, int b) {
  SparseOperator op;
  op.add(1.0, {an(Mode::B, a), an(Mode::A, b)});
  op.add(-1.0, {an(Mode::A, a), an(Mode::B, b)});
  return op;
}

SparseOperator op_ftilde(int a, int b) {
  SparseOperator op;
  op.add(1.0, {cr(Mode::B, a), cr(Mode::A, b)});
  op.add(-1.0, {cr(Mode::A, a), cr(Mode::B, b)});
  return op;
}

SparseOperator op_area(int a) {
  SparseOperator op;
  op.add(0.5, {cr(Mode::A, a), an(Mode::A, a)});
  op.add(0.5, {cr(Mode::B, a), an(Mode::B, a)});
  return op;
}

SparseOperator op_area_total(int n) {
  SparseOperator op;
  for (int a = 0; a < n; ++a) op = op + op_area(a);
  return op;
}

SparseOperator op_jz(int n) {
  SparseOperator op;
  for (int a = 0; a < n; ++a) {
    op.add(0.5, {cr(Mode::A, a), an(Mode::A, a)});
    op.add(-0.5, {cr(Mode::B, a), an(Mode::B, a)});
  }
  return op;
}

SparseOperator op_jplus(int n) {
  SparseOperator op;
  for (int a = 0; a < n; ++a) op.add(1.0, {cr(Mode::A, a), an(Mode::B, a)});
  return op;
}

SparseOperator op_jminus(int n) {
  SparseOperator op;
  for (int a = 0; a < n; ++a) op.add(1.0, {cr(Mode::B, a), an(Mode::A, a)});
  return op;
}

SparseOperator op_half_ftilde(const CMatrix& z) {
  SparseOperator op;
  for (Eigen::Index a = 0; a < z.rows(); ++a)
    for (Eigen::Index b = 0; b < z.cols(); ++b)
      if (z(a, b) != Complex(0.0)) op = op + op_ftilde(a, b) * (0.5 * z(a, b));
  return op;
}

SparseOperator op_half_f(const CMatrix& z) {
  SparseOperator op;
  for (Eigen::Index a = 0; a < z.rows(); ++a)
    for (Eigen::Index b = 0; b < z.cols(); ++b)
      if (z(a, b) != Complex(0.0)) op = op + op_f(a, b) * (0.5 * std::conj(z(a, b)));
  return op;
}

SparseOperator op_e_linear(const CMatrix& l) {
  SparseOperator op;
  for (Eigen::Index a = 0; a < l.rows(); ++a)
    for (Eigen::Index b = 0; b < l.cols(); ++b)
      if (l(a, b) != Complex(0.0)) op = op + op_e(a, b) * l(a, b);
  return op;
}

Generators build_generators(const FockBasis& basis) {
  const int n = basis.n();
  Generators g;
  g.e.assign(n, std::vector<SparseOperator>(n));
  g.f = g.e;
  g.ftilde = g.e;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      g.e[a][b] = op_e(a, b);
      g.f[a][b] = op_f(a, b);
      g.ftilde[a][b] = op_ftilde(a, b);
    }
    g.area.push_back(op_area(a));
  }
  g.area_total = op_area_total(n);
  g.jz = op_jz(n);
  g.jplus = op_jplus(n);
  g.jminus = op_jminus(n);
  return g;
}

// ---------------------------------------------------------------------------
// Commutators

namespace {

using SpMat = Eigen::SparseMatrix<Complex>;

SparseOperator generator_op(GeneratorKind k, int a, int b) {
  switch (k) {
    case GeneratorKind::E:
      return op_e(a - 1, b - 1);
    case GeneratorKind::F:
      return op_f(a - 1, b - 1);
    case GeneratorKind::Ftilde:
      return op_ftilde(a - 1, b - 1);
  }
  return {};
}

class CommutatorRig {
 public:
  explicit CommutatorRig(const FockBasis& basis) : basis_(basis) {
    if (basis.kind() != BasisKind::Full)
      throw Error(ErrorCode::InvalidArgument, "commutator check needs the full basis");
    if (basis.j_max() < 2) throw Error(ErrorCode::InvalidArgument, "commutator check needs j_max >= 2");
    const auto size = static_cast<Eigen::Index>(basis.size());
    interior_.resize(size, size);
    std::vector<Eigen::Triplet<Complex>> diag;
    for (const FockBlock& b : basis.blocks())
      if (b.p + b.q <= 2 * basis.j_max() - 2) {
        const std::size_t count = static_cast<std::size_t>(basis.modes().dim(b.p)) * basis.modes().dim(b.q);
        for (std::size_t k = 0; k < count; ++k) diag.emplace_back(b.offset + k, b.offset + k, 1.0);
      }
    interior_.setFromTriplets(diag.begin(), diag.end());
  }

  const SpMat& get(GeneratorKind k, int a, int b) {
    auto key = std::make_tuple(static_cast<int>(k), a, b);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, generator_op(k, a, b).matrix(basis_)).first;
    return it->second;
  }

  double residual(GeneratorKind x, int a, int b, GeneratorKind y, int c, int d) {
    const int n = basis_.n();
    if (std::min({a, b, c, d}) < 1 || std::max({a, b, c, d}) > n)
      throw Error(ErrorCode::IndexOutOfRange, "generator index out of range");
    const SpMat& X = get(x, a, b);
    const SpMat& Y = get(y, c, d);
    SpMat r = SpMat(X * Y) - SpMat(Y * X);
    for (const GeneratorTerm& t : commutator_rhs(x, a, b, y, c, d)) r -= t.coef * get(t.kind, t.a, t.b);
    r = r * interior_;
    double worst = 0.0;
    for (int k = 0; k < r.outerSize(); ++k)
      for (SpMat::InnerIterator it(r, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
  }

 private:
  const FockBasis& basis_;
  SpMat interior_;
  std::map<std::tuple<int, int, int>, SpMat> cache_;
};

}  // namespace

double commutator_residual(const FockBasis& basis, GeneratorKind x, int a, int b, GeneratorKind y, int c,
                           int d) {
  CommutatorRig rig(basis);
  return rig.residual(x, a, b, y, c, d);
}

double commutator_check(const FockBasis& basis) {
  CommutatorRig rig(basis);
  const int n = basis.n();
  const GeneratorKind kinds[] = {GeneratorKind::E, GeneratorKind::F, GeneratorKind::Ftilde};
  double worst = 0.0;
  for (GeneratorKind x : kinds)
    for (GeneratorKind y : kinds)
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
          for (int c = 1; c <= n; ++c)
            for (int d = 1; d <= n; ++d) worst = std::max(worst, rig.residual(x, a, b, y, c, d));
  return worst;
}

}  // namespace sostar
