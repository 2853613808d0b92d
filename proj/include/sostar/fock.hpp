#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "sostar/antisym.hpp"
#include "sostar/coherent.hpp"
#include "sostar/group.hpp"

namespace sostar {

// Default bound on the number of basis states; COHERENT_MAX_DIM overrides it.
inline constexpr std::size_t kDefaultMaxDim = 5000000;
std::size_t default_capacity();

// Monomials of N modes with fixed total degree, with the index tables of the
// single-mode raising and lowering maps. Degree d lists occupations in
// descending lexicographic order, (d, 0, ..., 0) first.
class ModeTables {
 public:
  ModeTables(int n, int max_degree);

  int n() const { return n_; }
  int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
  // 0 outside [0, max_degree]
  int dim(int degree) const;
  const int* occupation(int degree, int i) const;
  int index_of(int degree, const std::vector<int>& occ) const;  // -1 if absent
  // -1 when the target does not exist (zero occupation or beyond max_degree)
  int raise(int degree, int mode, int i) const;
  int lower(int degree, int mode, int i) const;

 private:
  int n_;
  std::vector<int> dims_;
  std::vector<std::vector<int>> occ_;    // [degree][i * n + mode]
  std::vector<std::vector<int>> up_;     // [degree][mode * dim + i]
  std::vector<std::vector<int>> down_;
  std::vector<std::map<std::vector<int>, int>> index_;
};

// Full: all (n_A, n_B) with total quanta <= 2 j_max.
// Balanced: only n_A and n_B of equal total, each <= j_max; this is the
// subspace reached by the coherent states and the group action.
enum class BasisKind { Full, Balanced };

// States with p quanta in the A modes and q in the B modes form the block
// (p, q): a dim(p) x dim(q) array, rows indexed by the A monomial.
struct FockBlock {
  int p = 0;
  int q = 0;
  std::size_t offset = 0;
};

class FockBasis {
 public:
  FockBasis(int n, int j_max, BasisKind kind, std::size_t max_dim);

  int n() const { return n_; }
  int j_max() const { return j_max_; }
  BasisKind kind() const { return kind_; }
  std::size_t size() const { return size_; }

  // Ordered by total quanta, then by p descending.
  const std::vector<FockBlock>& blocks() const { return blocks_; }
  const FockBlock* find_block(int p, int q) const;
  bool contains(int p, int q) const { return find_block(p, q) != nullptr; }
  const ModeTables& modes() const { return *modes_; }

  // (n_A1 .. n_AN, n_B1 .. n_BN)
  std::vector<int> occupation(std::size_t index) const;
  std::size_t index_of(const std::vector<int>& occ) const;
  double area(std::size_t index) const;

 private:
  int n_;
  int j_max_;
  BasisKind kind_;
  std::size_t size_ = 0;
  std::vector<FockBlock> blocks_;
  std::map<std::pair<int, int>, std::size_t> lookup_;
  std::shared_ptr<ModeTables> modes_;
};

// Throws CapacityExceeded when the basis would exceed max_dim (0 selects
// default_capacity()).
FockBasis build_basis(int n, int j_max, BasisKind kind = BasisKind::Full, std::size_t max_dim = 0);
// Size without building the tables.
double basis_size(int n, int j_max, BasisKind kind);

using BlockKey = std::pair<int, int>;

// Amplitudes stored per (p, q) block; absent blocks are zero.
struct StateVector {
  std::map<BlockKey, CMatrix> blocks;
  bool truncated = false;

  static StateVector vacuum();
  double norm_sq() const;
  double norm() const;
  // <this|ket>
  Complex dot(const StateVector& ket) const;
  void add(const StateVector& other, Complex scale);
  void scale(Complex s);
  // Sum of squared amplitudes over blocks with total quanta <= max_quanta.
  double norm_sq_upto(int max_quanta) const;
  CVector to_dense(const FockBasis& basis) const;
};

enum class Mode { A, B };

struct Ladder {
  Mode mode;
  int leg;  // 0-based
  bool create;
};

// coef * ops[0] ops[1] ... ; the last factor acts first.
struct LadderTerm {
  Complex coef;
  std::vector<Ladder> ops;
};

// Normal-ordered polynomial in the ladder operators, applied without
// materializing a matrix.
class SparseOperator {
 public:
  Complex identity = 0.0;
  std::vector<LadderTerm> terms;

  SparseOperator& add(Complex coef, std::vector<Ladder> ops);
  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  SparseOperator operator*(Complex s) const;

  // Blocks leaving the basis are dropped and flag the result.
  StateVector apply(const StateVector& state, const FockBasis& basis) const;
  // Keeps every block that fits in the mode tables.
  StateVector apply(const StateVector& state, const ModeTables& modes) const;
  // <bra|op|ket> without temporaries.
  Complex sandwich(const StateVector& bra, const StateVector& ket, const ModeTables& modes) const;

  std::vector<Eigen::Triplet<Complex>> triples(const FockBasis& basis) const;
  Eigen::SparseMatrix<Complex> matrix(const FockBasis& basis) const;

  // Crude norm bound on states with at most max_quanta quanta.
  double norm_bound(int max_quanta) const;
};

// Legs are 0-based.
SparseOperator op_e(int a, int b);       // A+_a A_b + B+_a B_b + delta_ab
SparseOperator op_f(int a, int b);       // B_a A_b - A_a B_b
SparseOperator op_ftilde(int a, int b);  // B+_a A+_b - A+_a B+_b
SparseOperator op_area(int a);           // (n_Aa + n_Ba) / 2
SparseOperator op_area_total(int n);
SparseOperator op_jz(int n);             // sum (A+A - B+B) / 2
SparseOperator op_jplus(int n);          // sum A+B
SparseOperator op_jminus(int n);         // sum B+A

// F~_z / 2 = sum z_ab F~_ab / 2, F_z / 2 = sum conj(z_ab) F_ab / 2 and
// E_L = sum L_ab E_ab.
SparseOperator op_half_ftilde(const CMatrix& z);
SparseOperator op_half_f(const CMatrix& z);
SparseOperator op_e_linear(const CMatrix& l);

struct Generators {
  std::vector<std::vector<SparseOperator>> e;  // [a][b]
  std::vector<std::vector<SparseOperator>> f;
  std::vector<std::vector<SparseOperator>> ftilde;
  std::vector<SparseOperator> area;
  SparseOperator area_total;
  SparseOperator jz;
  SparseOperator jplus;
  SparseOperator jminus;
};

Generators build_generators(const FockBasis& basis);

// Max entry of [X, Y] - rhs over all generator pairs, on columns with total
// quanta <= 2 j_max - 2 of a Full basis.
double commutator_check(const FockBasis& basis);
// The same residual for one pair; indices 1-based as in generator_matrix.
double commutator_residual(const FockBasis& basis, GeneratorKind x, int a, int b, GeneratorKind y, int c,
                           int d);

// (F~_z / 2)^J |0>; throws CutoffExceeded for j > j_max.
StateVector fixed_area_state(const AntisymMatrix& zeta, int j, const FockBasis& basis);

// max of ||J_z psi||, ||J_+ psi||, ||J_- psi|| relative to ||psi||.
double su2_residual(const StateVector& state, const FockBasis& basis);

// ||A psi - J psi|| / ||psi|| for a state of area J.
double area_eigen_residual(const StateVector& state, int j, const FockBasis& basis);

// N(zeta) sum_{J <= j_max} (F~_z / 2)^J |0> / J!, with N = det(1 - z^* z)^{1/2}.
StateVector coherent_vector(const AntisymMatrix& zeta, const FockBasis& basis);

// N^2 sum_{J > j_max} C(J + 2k - 1, 2k - 1) lambda_1^{2J}: bounds the norm
// missing from the truncated coherent vector.
double tail_bound(const AntisymMatrix& zeta, int j_max);
// Smallest j_max with tail_bound < tol; CutoffExceeded above limit.
int required_j_max(const AntisymMatrix& zeta, double tol, int limit = 400);

// The routines below stream the fixed-area sectors of the coherent states
// and never hold more than a few sectors.
Complex oracle_overlap(const AntisymMatrix& omega, const AntisymMatrix& zeta, const FockBasis& basis);
// <omega|op|zeta> for operators shifting the area by at most one.
std::vector<Complex> oracle_matrix_elements(const std::vector<SparseOperator>& ops,
                                            const AntisymMatrix& omega, const AntisymMatrix& zeta,
                                            const FockBasis& basis);
MatrixElements oracle_matrix_elements(const AntisymMatrix& omega, const AntisymMatrix& zeta,
                                      const FockBasis& basis);
Complex oracle_expectation(const SparseOperator& op, const AntisymMatrix& zeta, const FockBasis& basis);
std::vector<DistributionPoint> oracle_distribution(const AntisymMatrix& zeta, const FockBasis& basis);

struct OracleAreaStats {
  RVector mean;
  RMatrix covariance;
  double total_mean = 0.0;
  double total_var = 0.0;
};

OracleAreaStats oracle_area_statistics(const AntisymMatrix& zeta, const FockBasis& basis);

// exp(F~_u / 2) exp(E_L) exp(-F_l / 2) applied factor by factor.
StateVector apply_group_element(const BlockGroupElement& g, const StateVector& state,
                                const FockBasis& basis);

// |<g.zeta| g |zeta>| on the truncated vectors.
double group_coherence(const BlockGroupElement& g, const AntisymMatrix& zeta, const FockBasis& basis);

// max_d ||(C_d - S^{dc} C+_c)|zeta>|| on blocks with at most 2 j_max - 1 quanta,
// C = (A_1 .. A_N, B_1 .. B_N).
double annihilator_check(const AntisymMatrix& zeta, const FockBasis& basis);

// || e^{E_alpha} psi_J - det(g) (F~_{g xi0 g^t} / 2)^J |0> / sqrt(J!(J+1)!) ||
// relative to the norm of the second term; alpha = log g.
double highest_weight_check(const CMatrix& g, int j, const FockBasis& basis);

// Joint null space of the total angular momentum inside the area-J eigenspace.
int intertwiner_dimension(const FockBasis& basis, int j);

}  // namespace sostar
