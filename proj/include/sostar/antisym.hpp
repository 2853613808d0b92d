#pragma once

#include <vector>

#include "sostar/linalg.hpp"

namespace sostar {

inline constexpr double kTolSym = 1e-12;    // relative to the Frobenius norm
inline constexpr double kTolRank = 1e-10;   // singular pairs below this are zero
inline constexpr double kTolMult = 1e-9;    // relative spacing for merging equal lambdas
inline constexpr double kTolDomain = 1e-12;

// ||m + m^t||_F, the distance from antisymmetry.
double antisymmetry_residual(const CMatrix& m);

// Complex antisymmetric N x N matrix. Construction checks finiteness and
// antisymmetry (relative tolerance kTolSym); domain membership is separate.
class AntisymMatrix {
 public:
  AntisymMatrix() = default;
  explicit AntisymMatrix(CMatrix entries);

  static AntisymMatrix zero(int n);
  // (m - m^t)/2 without the tolerance check; used for computed results.
  static AntisymMatrix project(const CMatrix& m);

  int n() const { return static_cast<int>(m_.rows()); }
  const CMatrix& entries() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  AntisymMatrix scaled(Complex c) const;
  AntisymMatrix operator-() const { return scaled(-1.0); }

 private:
  struct Unchecked {};
  AntisymMatrix(CMatrix entries, Unchecked) : m_(std::move(entries)) {}
  CMatrix m_;
};

struct DomainReport {
  bool is_antisymmetric = false;
  double spectral_norm_sq = 0.0;  // largest eigenvalue of z^* z
  bool in_domain = false;
};

DomainReport validate_domain(const CMatrix& zeta, double tol_dom = kTolDomain);
DomainReport validate_domain(const AntisymMatrix& zeta, double tol_dom = kTolDomain);

// Throws DomainViolation unless z^* z < 1 - tol_dom.
void require_in_domain(const AntisymMatrix& zeta, double tol_dom = kTolDomain);

struct MultiplicityGroup {
  double lambda = 0.0;
  int multiplicity = 0;
};

std::vector<MultiplicityGroup> group_multiplicities(const std::vector<double>& lambdas,
                                                    double tol_mult = kTolMult);

// zeta = U M U^t with M = (+)_a lambda_a sigma (+) 0.
struct CanonicalForm {
  CMatrix u;
  std::vector<double> lambdas;  // descending
  int half_rank = 0;
  int padding = 0;
  std::vector<MultiplicityGroup> groups;

  int n() const { return static_cast<int>(u.rows()); }
  CMatrix middle() const;
  CMatrix reconstruct() const;
  double reconstruction_residual(const CMatrix& zeta) const;
  double unitarity_residual() const;
};

// Block-diagonal M for the given lambdas padded with zeros to size n.
CMatrix canonical_middle(const std::vector<double>& lambdas, int n);

CanonicalForm canonical_decompose(const AntisymMatrix& zeta, double tol_mult = kTolMult);

}  // namespace sostar
