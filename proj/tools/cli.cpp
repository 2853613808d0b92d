#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sostar/antisym.hpp"
#include "sostar/coherent.hpp"
#include "sostar/errors.hpp"
#include "sostar/fock.hpp"
#include "sostar/geometry.hpp"
#include "sostar/io.hpp"
#include "sostar/sampling.hpp"

namespace sostar::cli {

namespace {

// The oracle command samples labels with lambda_1^2 in this range so that the
// default cutoff of 30 keeps the truncation well below 1e-8.
constexpr double kOracleLambdaSqMin = 0.05;
constexpr double kOracleLambdaSqMax = 0.3;

const std::map<std::string, Command> kCommands = {
    {"validate", Command::Validate},       {"decompose", Command::Decompose},
    {"expect", Command::Expect},           {"distribution", Command::Distribution},
    {"semiclassical", Command::Semiclassical}, {"symmetry", Command::Symmetry},
    {"oracle", Command::Oracle},           {"example-4leg", Command::Example4Leg}};

CMatrix input_matrix(const RunConfig& c) {
  if (c.input_path.empty()) throw Error(ErrorCode::ParseError, "this command needs --input");
  return matrix_from_json(read_json_file(c.input_path));
}

AntisymMatrix input_label(const RunConfig& c) { return AntisymMatrix(input_matrix(c)); }

Json groups_json(const std::vector<MultiplicityGroup>& groups) {
  Json out = Json::array();
  for (const MultiplicityGroup& g : groups) out.push_back({{"lambda", g.lambda}, {"multiplicity", g.multiplicity}});
  return out;
}

Json normals_json(const std::vector<Eigen::Vector3d>& normals) {
  Json out = Json::array();
  for (const Eigen::Vector3d& v : normals) out.push_back({v.x(), v.y(), v.z()});
  return out;
}

Json families_json(const SpinorFamily& fam) {
  Json out = Json::array();
  for (int alpha = 0; alpha < fam.k(); ++alpha)
    out.push_back({{"lambda", fam.lambdas[alpha]},
                   {"spinors", spinors_to_json(fam.families[alpha])},
                   {"normals", normals_json(face_normals(fam, alpha))},
                   {"total_area", family_area(fam, alpha)},
                   {"closure_residual", closure_residual(fam, alpha, alpha)}});
  return out;
}

Json cmd_validate(const RunConfig& c) {
  CMatrix m = input_matrix(c);
  DomainReport r = validate_domain(m);
  return {{"n", m.rows()},
          {"is_antisymmetric", r.is_antisymmetric},
          {"spectral_norm_sq", r.spectral_norm_sq},
          {"in_domain", r.in_domain}};
}

Json cmd_decompose(const RunConfig& c) {
  AntisymMatrix z = input_label(c);
  CanonicalForm f = canonical_decompose(z);
  const double residual = f.reconstruction_residual(z.entries());
  return {{"u", matrix_to_json(f.u)},
          {"lambdas", f.lambdas},
          {"half_rank", f.half_rank},
          {"padding", f.padding},
          {"groups", groups_json(f.groups)},
          {"reconstruction_residual", residual},
          {"unitarity_residual", f.unitarity_residual()},
          {"within_tolerance", residual <= c.tol * std::max(1.0, z.entries().norm())}};
}

Json cmd_expect(const RunConfig& c) {
  AntisymMatrix z = input_label(c);
  require_in_domain(z);
  MatrixElements m = matrix_elements(z, z);
  return {{"normalization", normalization(z)},
          {"area", area_report_to_json(area_report(z))},
          {"e", matrix_to_json(m.e)},
          {"f", matrix_to_json(m.f)},
          {"ftilde", matrix_to_json(m.ftilde)}};
}

Json cmd_distribution(const RunConfig& c) {
  AntisymMatrix z = input_label(c);
  std::vector<DistributionPoint> points = area_distribution(z, c.j_max);
  if (!c.csv_path.empty()) write_text_file(c.csv_path, distribution_csv(points));
  Json rows = Json::array();
  double total = 0.0;
  for (const DistributionPoint& p : points) {
    rows.push_back({{"J", p.j}, {"P", p.p}});
    total += p.p;
  }
  return {{"j_max", c.j_max}, {"distribution", rows}, {"total", total}};
}

Json cmd_semiclassical(const RunConfig& c) {
  AntisymMatrix z = input_label(c);
  SpinorFamily fam = extract_spinor_families(z);
  return {{"families", families_json(fam)},
          {"coarse_defect", coarse_closure_defect(fam)},
          {"symmetry", symmetry_group_of(z).to_string()}};
}

Json cmd_symmetry(const RunConfig& c) {
  AntisymMatrix z = input_label(c);
  SymmetryDescriptor d = symmetry_group_of(z);
  CMatrix w = sample_symmetry(d, c.seed);
  CanonicalForm f = canonical_decompose(z);
  CMatrix moved = f.u * w * f.middle() * w.transpose() * f.u.transpose();
  return {{"symmetry", d.to_string()},
          {"groups", groups_json(d.groups)},
          {"residual_unitary_dim", d.residual_unitary_dim},
          {"seed", c.seed},
          {"sample", matrix_to_json(w)},
          {"stabilizer_residual", stabilizer_residual(d, w)},
          {"label_residual", (moved - z.entries()).norm()}};
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Json cmd_oracle(const RunConfig& c) {
  if (c.n < 2) throw Error(ErrorCode::InvalidArgument, "--n must be at least 2");
  if (c.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be positive");
  FockBasis basis = build_basis(c.n, c.j_max, BasisKind::Balanced);
  Rng rng(c.seed);
  std::uniform_real_distribution<double> lam(kOracleLambdaSqMin, kOracleLambdaSqMax);
  double dev_overlap = 0.0, dev_elements = 0.0, dev_mean = 0.0, dev_cov = 0.0, tail = 0.0;
  for (int t = 0; t < c.trials; ++t) {
    AntisymMatrix zeta = random_in_domain(c.n, lam(rng), rng);
    AntisymMatrix omega = random_in_domain(c.n, lam(rng), rng);
    tail = std::max({tail, tail_bound(zeta, c.j_max), tail_bound(omega, c.j_max)});
    dev_overlap = std::max(dev_overlap, std::abs(oracle_overlap(omega, zeta, basis) - overlap(omega, zeta)));
    MatrixElements exact = matrix_elements(omega, zeta);
    MatrixElements fock = oracle_matrix_elements(omega, zeta, basis);
    dev_elements = std::max({dev_elements, max_abs(exact.e - fock.e), max_abs(exact.f - fock.f),
                             max_abs(exact.ftilde - fock.ftilde)});
    AreaReport r = area_report(zeta);
    OracleAreaStats s = oracle_area_statistics(zeta, basis);
    dev_mean = std::max({dev_mean, (r.per_leg_mean - s.mean).cwiseAbs().maxCoeff(),
                         std::abs(r.total_mean - s.total_mean)});
    dev_cov = std::max({dev_cov, (r.covariance - s.covariance).cwiseAbs().maxCoeff(),
                        std::abs(r.total_var - s.total_var)});
  }
  const double worst = std::max({dev_overlap, dev_elements, dev_mean, dev_cov});
  return {{"n", c.n},
          {"j_max", c.j_max},
          {"trials", c.trials},
          {"seed", c.seed},
          {"lambda1_sq_range", {kOracleLambdaSqMin, kOracleLambdaSqMax}},
          {"max_tail_bound", tail},
          {"max_overlap_deviation", dev_overlap},
          {"max_matrix_element_deviation", dev_elements},
          {"max_area_mean_deviation", dev_mean},
          {"max_area_covariance_deviation", dev_cov},
          {"max_deviation", worst}};
}

Json cmd_example_4leg(const RunConfig&) {
  FourLegExample ex = four_leg_example();
  SpinorFamily frame = frame_spinor_families(ex.u, {ex.lambda, ex.lambda});
  SpinorFamily mixed = apply_symmetry(frame, ex.w);
  return {{"zeta", matrix_to_json(ex.zeta.entries())},
          {"u", matrix_to_json(ex.u)},
          {"w", matrix_to_json(ex.w)},
          {"lambda", ex.lambda},
          {"families", families_json(frame)},
          {"coarse_defect", coarse_closure_defect(frame)},
          {"mixed_families", families_json(mixed)},
          {"mixed_coarse_defect", coarse_closure_defect(mixed)},
          {"symmetry", symmetry_group_of(ex.zeta).to_string()}};
}

Json dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Validate:
      return cmd_validate(c);
    case Command::Decompose:
      return cmd_decompose(c);
    case Command::Expect:
      return cmd_expect(c);
    case Command::Distribution:
      return cmd_distribution(c);
    case Command::Semiclassical:
      return cmd_semiclassical(c);
    case Command::Symmetry:
      return cmd_symmetry(c);
    case Command::Oracle:
      return cmd_oracle(c);
    case Command::Example4Leg:
      return cmd_example_4leg(c);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown command");
}

void report(std::ostream& err, const std::string& name, const std::string& message) {
  err << Json{{"error", name}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (!(c.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    if (c.j_max < 0) throw Error(ErrorCode::InvalidArgument, "--jmax must be non-negative");
    const std::string text = dispatch(c).dump(2) + "\n";
    if (c.output_path.empty())
      out << text;
    else
      write_text_file(c.output_path, text);
    return 0;
  } catch (const Error& e) {
    report(err, error_name(e.code()), e.what());
    return 2;
  } catch (const std::exception& e) {
    report(err, "InternalError", e.what());
    return 1;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent states of SO*(2N) and their polyhedral geometry"};
  RunConfig c;
  std::string command;
  app.add_option("command", command, "validate | decompose | expect | distribution | semiclassical | "
                                     "symmetry | oracle | example-4leg")
      ->required();
  app.add_option("--input", c.input_path, "matrix JSON {\"n\", \"re\", \"im\"}");
  app.add_option("--output", c.output_path, "write the JSON report here instead of stdout");
  app.add_option("--jmax", c.j_max, "area cutoff")->capture_default_str();
  app.add_option("--tol", c.tol, "tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--csv", c.csv_path, "CSV output for distribution");
  app.add_option("--n", c.n, "number of legs for oracle")->capture_default_str();
  app.add_option("--trials", c.trials, "random trials for oracle")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, error_name(ErrorCode::ParseError), e.what());
    return 2;
  }
  auto it = kCommands.find(command);
  if (it == kCommands.end()) {
    report(err, error_name(ErrorCode::ParseError), "unknown command '" + command + "'");
    return 2;
  }
  c.command = it->second;
  return run(c, out, err);
}

}  // namespace sostar::cli
