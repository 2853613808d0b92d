#pragma once

#include <vector>

#include "sostar/antisym.hpp"

namespace sostar {

// g = [[A, B], [-conj(B), conj(A)]] in SO*(2N), stored as the pair (A, B).
struct BlockGroupElement {
  CMatrix a;
  CMatrix b;

  int n() const { return static_cast<int>(a.rows()); }
  CMatrix full() const;
  // (A^*, B^t): the displayed inverse.
  BlockGroupElement inverse() const;

  static BlockGroupElement identity(int n);
  static BlockGroupElement from_unitary(const CMatrix& u);
  // Reads A and B off the top block row of a 2N x 2N matrix.
  static BlockGroupElement from_full(const CMatrix& g);
};

BlockGroupElement operator*(const BlockGroupElement& g1, const BlockGroupElement& g2);

// Largest Frobenius residual over the four block conditions, the SU(N,N)
// conditions g^* diag(1,-1) g = diag(1,-1) and det g = 1, and the bilinear form
// g^t [[0,1],[1,0]] g = [[0,1],[1,0]].
double check_group_membership(const BlockGroupElement& g);

// V = [[X, Y], [-conj(Y), conj(X)]] with X anti-Hermitian, Y antisymmetric.
struct AlgebraElement {
  CMatrix x;
  CMatrix y;

  CMatrix full() const;
  double residual() const;
};

enum class GeneratorKind { E, F, Ftilde };

struct GeneratorMatrix {
  GeneratorKind kind;
  int a;  // 1-based
  int b;
  CMatrix matrix;
};

GeneratorMatrix generator_matrix(GeneratorKind kind, int a, int b, int n);

// Matrix realizations of the linear combinations used by the group factors:
// E_L = L^{ab} E_ab, F~_z = z^{ab} F~_ab, F_z = conj(z)^{ab} F_ab.
CMatrix algebra_e(const CMatrix& l);
CMatrix algebra_ftilde(const CMatrix& z);
CMatrix algebra_f(const CMatrix& z);

struct GeneratorTerm {
  double coef;
  GeneratorKind kind;
  int a;  // 1-based
  int b;
};

// Right-hand side of [X_ab, Y_cd] as a combination of generators.
std::vector<GeneratorTerm> commutator_rhs(GeneratorKind x, int a, int b, GeneratorKind y, int c,
                                          int d);

// Max entrywise deviation of every basis commutator from the tabulated
// right-hand sides.
double structure_constant_check(int n);

BlockGroupElement g_of_zeta(const AntisymMatrix& zeta);

// (A z + B)(C z + D)^{-1} with C = -conj(B), D = conj(A).
AntisymMatrix moebius_act(const BlockGroupElement& g, const AntisymMatrix& zeta);

struct UdlFactors {
  AntisymMatrix upper;  // B conj(A)^{-1}
  CMatrix l_matrix;     // L with exp(L) = (A^*)^{-1}
  AntisymMatrix lower;  // A^{-1} B

  // exp(F~_upper / 2) exp(E_L) exp(-F_lower / 2) as a 2N x 2N matrix.
  CMatrix reassemble() const;
};

UdlFactors udl_decompose(const BlockGroupElement& g);

// Embedding into Sp(4N, R) in the complex oscillator frame, 4N x 4N.
CMatrix sp4n_embed(const BlockGroupElement& g);

// Max residual of U U^+ - V V^+ = 1 and U V^t = V U^t for [[U, V], [conj V, conj U]].
double bogoliubov_residual(const CMatrix& phi);

struct SqueezeResult {
  CMatrix s;              // [[0, -z], [z, 0]]
  double residual = 0.0;  // || S + U^{-1} V || for phi(g_z^{-1})
};

SqueezeResult squeeze_matrix(const AntisymMatrix& zeta);

}  // namespace sostar
