#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "tslab/estimates.hpp"
#include "tslab/finvec.hpp"
#include "tslab/ordinal.hpp"
#include "tslab/rational.hpp"
#include "tslab/schreier.hpp"
#include "tslab/spaces.hpp"

namespace tslab {

using Json = nlohmann::json;

/// Like Json::parse, but floating-point literals are kept as their decimal
/// text (stored as strings) so they can be read back exactly.
Json parse_json_exact(std::string_view text);
Json read_json_file(const std::string& path);

Rational rational_from_json(const Json& j);
Exponent exponent_from_json(const Json& j);
Ordinal ordinal_from_json(const Json& j);

/// {"2": "1/2", "3": -0.75}
FinVec vector_from_json(const Json& j);
/// A vector object for plain spaces, an array of vector objects for sums.
Point point_from_json(const Json& j, const Space& space);
Space space_from_json(const Json& j);
/// A single point, or an array of points, or {"vectors": [...]}.
std::vector<Point> points_from_json(const Json& j, const Space& space);

Json to_json(const Rational& v);
Json to_json(const Exponent& p);
Json to_json(const Ordinal& xi);
Json to_json(const FinVec& v);
Json to_json(const FinSet& s);
Json to_json(const Point& x);
Json to_json(const NormValue& v);
Json to_json(const Space& space);
Json to_json(const WindowReport& report);
Json to_json(const ThresholdResult& result);

}  // namespace tslab
