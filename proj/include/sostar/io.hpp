#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sostar/coherent.hpp"
#include "sostar/group.hpp"
#include "sostar/spinor.hpp"

namespace sostar {

using Json = nlohmann::json;

// {"n": N, "re": [[...]], "im": [[...]]}, row-major; "im" may be omitted.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json real_matrix_to_json(const RMatrix& m);
Json vector_to_json(const RVector& v);

// {"a": matrix, "b": matrix}
Json group_to_json(const BlockGroupElement& g);
BlockGroupElement group_from_json(const Json& j);

// [{"x": [re, im], "y": [re, im]}, ...]
Json spinors_to_json(const std::vector<Spinor>& spinors);
std::vector<Spinor> spinors_from_json(const Json& j);

Json area_report_to_json(const AreaReport& r);

// Header "J,P", one row per J.
std::string distribution_csv(const std::vector<DistributionPoint>& points);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sostar
