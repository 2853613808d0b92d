#include "sostar/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sostar/errors.hpp"

namespace sostar {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

RMatrix rows_from_json(const Json& j, const char* field) {
  if (!j.is_array()) parse_error(std::string("field '") + field + "' must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  RMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      parse_error(std::string("field '") + field + "' has ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) parse_error(std::string("field '") + field + "' has a non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

Json pair_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex pair_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("spinor component must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ii = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re")) parse_error("matrix JSON needs an object with field 're'");
  RMatrix re = rows_from_json(j["re"], "re");
  RMatrix im = j.contains("im") ? rows_from_json(j["im"], "im") : RMatrix::Zero(re.rows(), re.cols());
  if (im.rows() != re.rows() || im.cols() != re.cols()) parse_error("'re' and 'im' differ in shape");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) parse_error("field 'n' must be an integer");
    const auto n = j["n"].get<long long>();
    if (n != re.rows() || n != re.cols()) parse_error("field 'n' does not match the matrix shape");
  }
  CMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json real_matrix_to_json(const RMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Json vector_to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json group_to_json(const BlockGroupElement& g) { return {{"a", matrix_to_json(g.a)}, {"b", matrix_to_json(g.b)}}; }

BlockGroupElement group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) parse_error("group JSON needs fields 'a' and 'b'");
  BlockGroupElement g{matrix_from_json(j["a"]), matrix_from_json(j["b"])};
  if (g.a.rows() != g.a.cols() || g.b.rows() != g.a.rows() || g.b.cols() != g.a.cols())
    parse_error("blocks 'a' and 'b' must be square of equal size");
  return g;
}

Json spinors_to_json(const std::vector<Spinor>& spinors) {
  Json out = Json::array();
  for (const Spinor& z : spinors) out.push_back({{"x", pair_json(z.x)}, {"y", pair_json(z.y)}});
  return out;
}

std::vector<Spinor> spinors_from_json(const Json& j) {
  if (!j.is_array()) parse_error("spinor list must be an array");
  std::vector<Spinor> out;
  for (const Json& e : j) {
    if (!e.is_object() || !e.contains("x") || !e.contains("y")) parse_error("spinor needs fields 'x' and 'y'");
    out.push_back({pair_from_json(e["x"]), pair_from_json(e["y"])});
  }
  return out;
}

Json area_report_to_json(const AreaReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return {{"per_leg_mean", vector_to_json(r.per_leg_mean)},
          {"total_mean", r.total_mean},
          {"per_leg_var", vector_to_json(r.per_leg_var)},
          {"total_var", r.total_var},
          {"covariance", real_matrix_to_json(r.covariance)},
          {"cv", num(r.cv)},
          {"cv_upper_bound", num(r.cv_upper_bound)}};
}

std::string distribution_csv(const std::vector<DistributionPoint>& points) {
  std::ostringstream os;
  os << "J,P\n" << std::setprecision(15);
  for (const DistributionPoint& p : points) os << p.j << ',' << p.p << '\n';
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace sostar
