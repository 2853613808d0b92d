// One line per acceptance criterion; the exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "sostar/antisym.hpp"
#include "sostar/coherent.hpp"
#include "sostar/fock.hpp"
#include "sostar/geometry.hpp"
#include "sostar/group.hpp"
#include "sostar/sampling.hpp"
#include "sostar/un_layer.hpp"

using namespace sostar;

namespace {

// Tolerances and budgets.
constexpr double kTolExample = 1e-10;
constexpr double kBudgetExample = 1.0;  // seconds

constexpr double kTolDistribution = 1e-8;
constexpr double kTolDistributionSum = 1e-10;
constexpr int kDistributionJMax = 40;
constexpr int kDistributionCompare = 20;
constexpr int kDistributionSum = 200;
constexpr double kBudgetDistribution = 30.0;

constexpr int kOracleTrials = 50;
constexpr double kTolOracle = 1e-8;
constexpr double kOracleTail = 1e-12;
constexpr double kOracleLambdaSqMax = 0.5;
constexpr double kOracleLambdaSqMaxFourLegs = 0.15;
constexpr double kBudgetOracle = 300.0;

constexpr double kTolCommutator = 1e-12;

constexpr int kHighestWeightTrials = 20;
constexpr double kTolHighestWeight = 1e-9;

constexpr int kStabilizerSamples = 100;
constexpr double kTolStabilizer = 1e-10;
constexpr double kMinPerFamilyChange = 1e-3;
constexpr int kDefectTrials = 50;
constexpr double kTolDefect = 1e-10;

constexpr double kCvLambdaSqHigh = 0.999;
constexpr double kCvRelTol = 0.02;
constexpr double kCvLambdaSqLow = 1e-4;
constexpr double kCvLowThreshold = 10.0;

constexpr int kSqueezeTrials = 20;
constexpr double kTolAnnihilator = 1e-8;
constexpr double kTolSqueeze = 1e-12;
constexpr double kSqueezeTail = 1e-10;

constexpr std::size_t kOracleCapacity = 40000000;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

// 1. Four-leg example, checked through frame-invariant quantities.
Outcome four_leg() {
  auto start = std::chrono::steady_clock::now();
  FourLegExample ex = four_leg_example();
  SpinorFamily fam = frame_spinor_families(ex.u, {ex.lambda, ex.lambda});
  double worst = 0.0;
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (const Eigen::Vector3d& v : face_normals(fam, alpha)) worst = std::max(worst, std::abs(v.norm() - 0.25));
    worst = std::max(worst, std::abs(family_area(fam, alpha) - 1.0));
  }
  const double defect = coarse_closure_defect(fam);
  worst = std::max(worst, std::abs(defect + 2.0));
  // the listed normals themselves
  std::vector<Eigen::Vector3d> n1 = face_normals(fam, 0), n2 = face_normals(fam, 1);
  const std::vector<Eigen::Vector3d> want1 = {{0.25, 0, 0}, {-0.25, 0, 0}, {0, -0.25, 0}, {0, 0.25, 0}};
  for (int a = 0; a < 4; ++a) worst = std::max(worst, (n1[a] - want1[a]).norm());
  worst = std::max(worst, (n2[0] - Eigen::Vector3d(0, -0.25, 0)).norm());
  worst = std::max(worst, (n2[2] - Eigen::Vector3d(0, 0, -0.25)).norm());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kTolExample && secs < kBudgetExample,
          "defect " + fmt("%.12f", defect) + ", max deviation " + fmt("%.2e", worst) + ", " + fmt("%.3f s", secs)};
}

// 2. Closed-form area distribution against the oracle projection.
Outcome distribution() {
  auto start = std::chrono::steady_clock::now();
  FockBasis basis = build_basis(3, kDistributionJMax, BasisKind::Balanced, kOracleCapacity);
  Rng rng(2);
  double worst = 0.0, worst_sum = 0.0;
  for (double half_trace : {0.2, 0.5, 0.8}) {
    // half the trace of z^* z equals lambda^2 for rank two
    AntisymMatrix z = random_antisym_with_pairs(3, {std::sqrt(half_trace)}, rng);
    std::vector<DistributionPoint> exact = area_distribution(z, kDistributionSum);
    std::vector<DistributionPoint> fock = oracle_distribution(z, basis);
    for (int j = 0; j <= kDistributionCompare; ++j) worst = std::max(worst, std::abs(exact[j].p - fock[j].p));
    double sum = 0.0;
    for (const DistributionPoint& p : exact) sum += p.p;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kTolDistribution && worst_sum <= kTolDistributionSum && secs < kBudgetDistribution,
          "max |P - P_oracle| " + fmt("%.2e", worst) + ", |sum - 1| " + fmt("%.2e", worst_sum) + ", " +
              fmt("%.1f s", secs)};
}

// 3. Matrix elements and area statistics against the oracle.
Outcome oracle_cross_check() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(3);
  double dev = 0.0;
  int worst_j = 0;
  for (int t = 0; t < kOracleTrials; ++t) {
    const int n = 2 + t % 3;
    const double cap = n == 4 ? kOracleLambdaSqMaxFourLegs : kOracleLambdaSqMax;
    std::uniform_real_distribution<double> lam(0.01, cap);
    AntisymMatrix z = random_in_domain(n, lam(rng), rng);
    AntisymMatrix w = random_in_domain(n, lam(rng), rng);
    const int j_max = std::max(required_j_max(z, kOracleTail), required_j_max(w, kOracleTail)) + 1;
    worst_j = std::max(worst_j, j_max);
    FockBasis basis = build_basis(n, j_max, BasisKind::Balanced, kOracleCapacity);

    dev = std::max(dev, std::abs(oracle_overlap(w, z, basis) - overlap(w, z)));
    MatrixElements exact = matrix_elements(w, z);
    MatrixElements fock = oracle_matrix_elements(w, z, basis);
    dev = std::max({dev, max_abs(exact.e - fock.e), max_abs(exact.f - fock.f), max_abs(exact.ftilde - fock.ftilde)});
    AreaReport r = area_report(z);
    OracleAreaStats s = oracle_area_statistics(z, basis);
    dev = std::max({dev, max_abs(r.per_leg_mean - s.mean), std::abs(r.total_mean - s.total_mean),
                    max_abs(r.per_leg_var - s.covariance.diagonal()), max_abs(r.covariance - s.covariance),
                    std::abs(r.total_var - s.total_var)});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {dev <= kTolOracle && secs < kBudgetOracle,
          "max deviation " + fmt("%.2e", dev) + ", largest cutoff " + std::to_string(worst_j) + ", " +
              fmt("%.1f s", secs)};
}

// 4. Structure constants in both realizations.
Outcome algebra() {
  double matrix = 0.0, fock = 0.0;
  for (int n : {2, 3}) {
    matrix = std::max(matrix, structure_constant_check(n));
    fock = std::max(fock, commutator_check(build_basis(n, 3)));
  }
  return {matrix == 0.0 && fock <= kTolCommutator,
          "matrix " + fmt("%.1e", matrix) + ", Fock " + fmt("%.2e", fock)};
}

// 5. GL(N) acts on the highest weight vectors as det(g) times the moved label.
Outcome highest_weight() {
  Rng rng(5);
  FockBasis basis = build_basis(3, 3, BasisKind::Balanced);
  double worst = 0.0;
  for (int t = 0; t < kHighestWeightTrials; ++t) {
    CMatrix g = random_gaussian_matrix(3, 3, rng);
    for (int j = 0; j <= 3; ++j) worst = std::max(worst, highest_weight_check(g, j, basis));
  }
  return {worst <= kTolHighestWeight, "max residual " + fmt("%.2e", worst)};
}

double coarse_change(const SpinorFamily& a, const SpinorFamily& b) {
  ClassicalObservables x = classical_observables(a), y = classical_observables(b);
  return std::max({max_abs(x.e_total - y.e_total), max_abs(x.f_total - y.f_total),
                   max_abs(x.ftilde_total - y.ftilde_total)});
}

double per_family_change(const SpinorFamily& a, const SpinorFamily& b) {
  ClassicalObservables x = classical_observables(a), y = classical_observables(b);
  double worst = 0.0;
  for (int alpha = 0; alpha < a.k(); ++alpha) worst = std::max(worst, max_abs(x.e[alpha] - y.e[alpha]));
  return worst;
}

double defect_formula(const SpinorFamily& fam) {
  double sum = 0.0, sq = 0.0;
  for (int alpha = 0; alpha < fam.k(); ++alpha) {
    const double l = family_area(fam, alpha);
    sum += l;
    sq += l * l;
  }
  return -(sum * sum - sq);
}

Eigen::Matrix2cd random_boost(Rng& rng) {
  CMatrix x = random_gaussian_matrix(2, 2, rng);
  return Eigen::Matrix2cd(x / std::sqrt(x.determinant()));
}

// 6. Stabilizer invariance, the coarse-graining defect, and boosts.
Outcome symmetries() {
  AntisymMatrix zeta = four_leg_example().zeta;
  CanonicalForm form = canonical_decompose(zeta);
  SymmetryDescriptor d = symmetry_group_of(zeta);
  SpinorFamily base = extract_spinor_families(zeta);
  double label = 0.0, coarse = 0.0, family = 0.0;
  for (int s = 0; s < kStabilizerSamples; ++s) {
    CMatrix w = sample_symmetry(d, s);
    CMatrix moved = form.u * w * form.middle() * w.transpose() * form.u.transpose();
    label = std::max(label, max_abs(moved - zeta.entries()));
    SpinorFamily fam = apply_symmetry(base, w);
    coarse = std::max(coarse, coarse_change(base, fam));
    family = std::max(family, per_family_change(base, fam));
  }

  Rng rng(6);
  double defect_dev = 0.0, boosted_max = -INFINITY;
  int boosted_positive = 0;
  for (int t = 0; t < kDefectTrials; ++t) {
    const int k = 2 + t % 2;
    const int n = 2 * k + t % 3;
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    std::vector<double> lams;
    for (int i = 0; i < k; ++i) lams.push_back(lam(rng));
    std::sort(lams.rbegin(), lams.rend());
    SpinorFamily fam = extract_spinor_families(random_antisym_with_pairs(n, lams, rng));
    const double want = defect_formula(fam);
    defect_dev = std::max(defect_dev, std::abs(coarse_closure_defect(fam) - want) / std::max(1.0, std::abs(want)));
    const double boosted = coarse_closure_defect(sl2c_boost(fam, random_boost(rng)));
    boosted_max = std::max(boosted_max, boosted);
    if (boosted >= 0.0) ++boosted_positive;
  }
  Eigen::Matrix2cd squash = Eigen::Matrix2cd::Zero();
  squash(0, 0) = 2.0;
  squash(1, 1) = 0.5;
  const double squashed = coarse_closure_defect(sl2c_boost(base, squash));
  boosted_max = std::max(boosted_max, squashed);

  const bool pass = label <= kTolStabilizer && coarse <= kTolStabilizer && family > kMinPerFamilyChange &&
                    defect_dev <= kTolDefect && boosted_max < 0.0;
  return {pass, "label " + fmt("%.1e", label) + ", coarse " + fmt("%.1e", coarse) + ", per-family " +
                    fmt("%.3f", family) + ", defect " + fmt("%.1e", defect_dev) + ", largest boosted defect " +
                    fmt("%.3f", boosted_max) + " (" + std::to_string(boosted_positive) + "/" +
                    std::to_string(kDefectTrials) + " random boosts non-negative; diag(2, 1/2) on the example " +
                    fmt("%.3f", squashed) + ")"};
}

// 7. Coefficient of variation limits.
Outcome coefficient_of_variation() {
  double high = 0.0, low = INFINITY, bound_gap = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const int n = 2 * k + 1;
    AreaReport near = area_report(AntisymMatrix(canonical_middle(std::vector<double>(k, std::sqrt(kCvLambdaSqHigh)), n)));
    high = std::max(high, std::abs(near.cv * std::sqrt(2.0 * k) - 1.0));
    AreaReport small = area_report(AntisymMatrix(canonical_middle(std::vector<double>(k, std::sqrt(kCvLambdaSqLow)), n)));
    low = std::min(low, small.cv);
  }
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    std::uniform_real_distribution<double> lam(1e-6, 0.999);
    AreaReport r = area_report(random_in_domain(2 + t % 6, lam(rng), rng));
    bound_gap = std::max(bound_gap, r.cv - r.cv_upper_bound);
  }
  return {high <= kCvRelTol && low > kCvLowThreshold && bound_gap <= 1e-12,
          "relative gap at high area " + fmt("%.2e", high) + ", smallest cv at low area " + fmt("%.1f", low) +
              ", max cv - bound " + fmt("%.1e", bound_gap)};
}

// 8. The coherent states are the squeezed vacua.
Outcome squeezed_vacuum() {
  Rng rng(8);
  double ann = 0.0, sq = 0.0;
  for (int t = 0; t < kSqueezeTrials; ++t) {
    const int n = 2 + t % 2;
    std::uniform_real_distribution<double> lam(0.05, 0.5);
    AntisymMatrix z = random_in_domain(n, lam(rng), rng);
    FockBasis basis = build_basis(n, required_j_max(z, kSqueezeTail), BasisKind::Balanced, kOracleCapacity);
    ann = std::max(ann, annihilator_check(z, basis));
    sq = std::max(sq, squeeze_matrix(z).residual);
  }
  return {ann <= kTolAnnihilator && sq <= kTolSqueeze,
          "annihilator " + fmt("%.2e", ann) + ", S + U^-1 V " + fmt("%.2e", sq)};
}

// 9. Dimension formula against the oracle null space.
Outcome dimensions() {
  int mismatches = 0;
  std::string cases;
  for (int n = 2; n <= 4; ++n) {
    FockBasis basis = build_basis(n, 4, BasisKind::Balanced);
    for (int j = 0; j <= 4; ++j) {
      const int found = intertwiner_dimension(basis, j);
      if (static_cast<std::uint64_t>(found) != dim_fixed_area(n, j)) ++mismatches;
    }
  }
  const int n4j1 = intertwiner_dimension(build_basis(4, 1, BasisKind::Balanced), 1);
  return {mismatches == 0 && n4j1 == 6,
          std::to_string(mismatches) + " mismatches over N <= 4, J <= 4; N=4, J=1 gives " + std::to_string(n4j1)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"four-leg example", four_leg},
      {"area distribution", distribution},
      {"oracle cross-validation", oracle_cross_check},
      {"algebra exactness", algebra},
      {"highest weight action", highest_weight},
      {"symmetries and coarse-graining", symmetries},
      {"coefficient of variation", coefficient_of_variation},
      {"squeezed vacuum", squeezed_vacuum},
      {"dimension formula", dimensions}};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
