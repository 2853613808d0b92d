#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "helpers.hpp"
#include "sostar/antisym.hpp"
#include "sostar/io.hpp"
#include "sostar/sampling.hpp"

namespace fs = std::filesystem;
using namespace sostar;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  Workspace() {
    dir_ = fs::temp_directory_path() / ("sostar_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path write_matrix(const std::string& name, const CMatrix& m) const {
    write_text_file(path(name).string(), matrix_to_json(m).dump());
    return path(name);
  }

  Result run(const std::string& args) const {
    const char* bin = std::getenv("SOSTAR_BIN");
    REQUIRE(bin != nullptr);
    const fs::path out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd = std::string(bin) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

 private:
  fs::path dir_;
};

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_CASE("validate and expect on the single-pair label") {
  Workspace ws;
  fs::path in = ws.write_matrix("star.json", testing::zeta_star().entries());
  Result v = ws.run("validate --input " + in.string());
  REQUIRE(v.code == 0);
  Json j = parse(v.out);
  CHECK(j["in_domain"] == true);
  CHECK(j["n"] == 3);
  CHECK(j["spectral_norm_sq"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));

  Result e = ws.run("expect --input " + in.string());
  REQUIRE(e.code == 0);
  Json x = parse(e.out);
  CHECK(x["normalization"].get<double>() == doctest::Approx(0.5));
  CHECK(x["area"]["total_mean"].get<double>() == doctest::Approx(2.0));
  CMatrix em = matrix_from_json(x["e"]);
  CHECK(std::abs(em(0, 0) - 3.0) <= 1e-12);
}

TEST_CASE("distribution writes the CSV") {
  Workspace ws;
  fs::path in = ws.write_matrix("star.json", testing::zeta_star().entries());
  fs::path csv = ws.path("out.csv");
  Result r = ws.run("distribution --input " + in.string() + " --jmax 50 --csv " + csv.string());
  REQUIRE(r.code == 0);
  std::istringstream lines(slurp(csv));
  std::string header, l0, l1, l2;
  std::getline(lines, header);
  std::getline(lines, l0);
  std::getline(lines, l1);
  std::getline(lines, l2);
  CHECK(header == "J,P");
  CHECK(l0 == "0,0.25");
  CHECK(l1 == "1,0.25");
  CHECK(l2 == "2,0.1875");
  Json j = parse(r.out);
  CHECK(j["distribution"].size() == 51);
  CHECK(j["total"].get<double>() <= 1.0);
}

TEST_CASE("decompose round trip") {
  Workspace ws;
  Rng rng(4);
  CMatrix g = random_gaussian_matrix(5, 5, rng);
  CMatrix z = 0.5 * (g - g.transpose());
  fs::path in = ws.write_matrix("z.json", z);
  Result r = ws.run("decompose --input " + in.string());
  REQUIRE(r.code == 0);
  Json j = parse(r.out);
  CMatrix u = matrix_from_json(j["u"]);
  std::vector<double> lambdas = j["lambdas"].get<std::vector<double>>();
  CMatrix back = u * canonical_middle(lambdas, 5) * u.transpose();
  CHECK((back - matrix_from_json(matrix_to_json(z))).norm() <= 1e-10 * z.norm());
  CHECK(j["within_tolerance"] == true);
  CHECK(j["half_rank"] == 2);
}

TEST_CASE("semiclassical and symmetry reports") {
  Workspace ws;
  fs::path in = ws.write_matrix("star.json", testing::zeta_star().entries());
  Result s = ws.run("semiclassical --input " + in.string());
  REQUIRE(s.code == 0);
  Json j = parse(s.out);
  CHECK(j["families"].size() == 1);
  CHECK(j["families"][0]["total_area"].get<double>() == doctest::Approx(2.0));
  CHECK(std::abs(j["coarse_defect"].get<double>()) <= 1e-12);
  CHECK(j["symmetry"] == "Sp(2) x U(1)");

  fs::path d = ws.write_matrix("diamond.json", testing::zeta_diamond().entries());
  fs::path a = ws.path("a.json"), b = ws.path("b.json");
  REQUIRE(ws.run("symmetry --seed 9 --input " + d.string() + " --output " + a.string()).code == 0);
  REQUIRE(ws.run("symmetry --seed 9 --input " + d.string() + " --output " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  Json sym = parse(slurp(a));
  CHECK(sym["symmetry"] == "Sp(4)");
  CHECK(sym["stabilizer_residual"].get<double>() <= 1e-12);
  CHECK(sym["label_residual"].get<double>() <= 1e-12);
}

TEST_CASE("example-4leg") {
  Workspace ws;
  Result r = ws.run("example-4leg");
  REQUIRE(r.code == 0);
  Json j = parse(r.out);
  CHECK(j["coarse_defect"].get<double>() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(j["mixed_coarse_defect"].get<double>() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(j["symmetry"] == "Sp(4)");
  REQUIRE(j["families"].size() == 2);
  for (const Json& fam : j["families"]) {
    CHECK(fam["total_area"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    for (const Json& v : fam["normals"]) {
      const double x = v[0], y = v[1], z = v[2];
      CHECK(std::sqrt(x * x + y * y + z * z) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
  CHECK(j["families"][0]["normals"][0][0].get<double>() == doctest::Approx(0.25));
  CHECK(j["families"][1]["normals"][2][2].get<double>() == doctest::Approx(-0.25));
}

TEST_CASE("oracle report") {
  Workspace ws;
  Result r = ws.run("oracle --n 3 --jmax 30 --trials 10 --seed 7");
  REQUIRE(r.code == 0);
  Json j = parse(r.out);
  CHECK(j["max_deviation"].get<double>() < 1e-8);
  CHECK(j["max_tail_bound"].get<double>() < 1e-8);
  Result again = ws.run("oracle --n 3 --jmax 30 --trials 10 --seed 7");
  CHECK(again.out == r.out);
}

TEST_CASE("errors exit with code 2 and a JSON report") {
  Workspace ws;
  auto error_of = [](const Result& r) { return parse(r.err)["error"].get<std::string>(); };

  Result missing = ws.run("validate");
  CHECK(missing.code == 2);
  CHECK(error_of(missing) == "ParseError");

  Result unknown = ws.run("frobnicate");
  CHECK(unknown.code == 2);
  CHECK(error_of(unknown) == "ParseError");

  fs::path outside = ws.write_matrix("out.json", 1.1 * canonical_middle({1.0}, 3));
  Result dom = ws.run("expect --input " + outside.string());
  CHECK(dom.code == 2);
  CHECK(error_of(dom) == "DomainViolation");

  fs::path d = ws.write_matrix("diamond.json", testing::zeta_diamond().entries());
  Result rank = ws.run("distribution --input " + d.string());
  CHECK(rank.code == 2);
  CHECK(error_of(rank) == "RankNotTwo");

  write_text_file(ws.path("bad.json").string(), "{\"n\": 2, \"re\": [[0, 1]]}");
  Result bad = ws.run("validate --input " + ws.path("bad.json").string());
  CHECK(bad.code == 2);
  CHECK(error_of(bad) == "ParseError");

  Result tol = ws.run("example-4leg --tol -1");
  CHECK(tol.code == 2);
  CHECK(error_of(tol) == "InvalidArgument");

  Result jmax = ws.run("example-4leg --jmax -3");
  CHECK(jmax.code == 2);
}

TEST_CASE("run reports through the given streams") {
  cli::RunConfig c;
  c.command = cli::Command::Example4Leg;
  std::ostringstream out, err;
  CHECK(cli::run(c, out, err) == 0);
  CHECK(err.str().empty());
  CHECK(parse(out.str())["symmetry"] == "Sp(4)");

  c.command = cli::Command::Validate;
  std::ostringstream out2, err2;
  CHECK(cli::run(c, out2, err2) == 2);
  CHECK(out2.str().empty());
  CHECK(parse(err2.str())["error"] == "ParseError");
}
