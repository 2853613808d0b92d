#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sostar/antisym.hpp"
#include "sostar/spinor.hpp"

namespace sostar {

// k families of N spinors; families[alpha][a] = |z^alpha_a>.
struct SpinorFamily {
  std::vector<std::vector<Spinor>> families;
  std::vector<double> lambdas;

  int k() const { return static_cast<int>(families.size()); }
  int n() const { return families.empty() ? 0 : static_cast<int>(families.front().size()); }
};

// |z^a_i> = (2 l_a^2 / (1 - l_a^2))^{1/2} (U_{i,2a-1}, U_{i,2a}).
SpinorFamily extract_spinor_families(const AntisymMatrix& zeta);

// Spinors read directly off the columns of U, without the area scaling.
SpinorFamily frame_spinor_families(const CMatrix& u, const std::vector<double>& lambdas);

// Indices are 0-based.
double closure_residual(const SpinorFamily& family, int alpha, int beta);
std::vector<Eigen::Vector3d> face_normals(const SpinorFamily& family, int alpha);
// Lambda_alpha = sum_a <z_a|z_a> / 2
double family_area(const SpinorFamily& family, int alpha);

struct ClassicalObservables {
  std::vector<CMatrix> e;  // per family
  std::vector<CMatrix> f;
  std::vector<CMatrix> ftilde;
  CMatrix e_total;
  CMatrix f_total;
  CMatrix ftilde_total;
};

ClassicalObservables classical_observables(const SpinorFamily& family);

// max_ab |V_a . V_b - (e_ab e_ba / 2 - e_aa e_bb / 4)| for one family.
double dot_product_residual(const SpinorFamily& family, int alpha);

// sum_ab (e_ab e_ba / 2 - e_aa e_bb / 4) for the coarse-grained e.
double coarse_closure_defect(const SpinorFamily& family);

// Quadratic function on C^{2kN} written as v^t H v / 2 + c with
// v = (w, conj w) and w the stacked spinor components.
class QuadraticObservable {
 public:
  QuadraticObservable(int k, int n);
  static QuadraticObservable from_form(int k, int n, const CMatrix& h, Complex constant);

  int k() const { return k_; }
  int n() const { return n_; }
  const CMatrix& form() const { return h_; }
  Complex constant() const { return c_; }

  // Index of the holomorphic coordinate (alpha, a, component), component 0 = x.
  int holomorphic(int alpha, int a, int component) const;
  int antiholomorphic(int alpha, int a, int component) const;
  void add_monomial(int p, int q, Complex coef);

  Complex evaluate(const SpinorFamily& family) const;
  double distance(const QuadraticObservable& other) const;

  QuadraticObservable operator+(const QuadraticObservable& o) const;
  QuadraticObservable operator-(const QuadraticObservable& o) const;
  QuadraticObservable operator*(Complex s) const;

 private:
  int k_;
  int n_;
  CMatrix h_;
  Complex c_ = 0.0;
};

// alpha < 0 selects the coarse-grained sum over families. Indices 0-based.
QuadraticObservable observable_e(int k, int n, int alpha, int a, int b);
QuadraticObservable observable_f(int k, int n, int alpha, int a, int b);
QuadraticObservable observable_ftilde(int k, int n, int alpha, int a, int b);

// Exact bracket from {x, conj x} = {y, conj y} = -i.
QuadraticObservable poisson_bracket(const QuadraticObservable& a, const QuadraticObservable& b);

struct SymmetryDescriptor {
  std::vector<MultiplicityGroup> groups;  // factor Sp(2 mu) per group
  int residual_unitary_dim = 0;

  int n() const;
  // "Sp(4) x U(1)"; the unitary factor is omitted when trivial.
  std::string to_string() const;
};

SymmetryDescriptor symmetry_group_of(const AntisymMatrix& zeta);

// Block-diagonal W in the stabilizer of M = (+) Lambda_i sigma (+) 0.
CMatrix sample_symmetry(const SymmetryDescriptor& descriptor, std::uint64_t seed);

// || W M W^t - M ||_F for the middle factor described by the descriptor.
double stabilizer_residual(const SymmetryDescriptor& descriptor, const CMatrix& w);

// Spinors of U W; W is N x N (or 2k x 2k) and must not mix the paired
// columns with the padding.
SpinorFamily apply_symmetry(const SpinorFamily& family, const CMatrix& w);

// |z> -> X^t |z> for X in SL(2, C).
SpinorFamily sl2c_boost(const SpinorFamily& family, const Eigen::Matrix2cd& x);

// Worked four-leg label with two equal singular pairs.
struct FourLegExample {
  CMatrix u;      // frame unitary
  CMatrix w;      // Sp(4) element mixing the two pairs
  double lambda;  // common singular pair value
  AntisymMatrix zeta;
};

FourLegExample four_leg_example();

}  // namespace sostar
