#pragma once

// JSON encodings of the module results. Real-valued complex numbers are
// written as plain numbers, others as {"re": .., "im": ..}.

#include "nbint/monodromy.hpp"
#include "nbint/nbody.hpp"
#include "nbint/spectral.hpp"
#include "nbint/variational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nbint {

using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);  // row-major nested arrays
Json matrix_to_json(const Matrix2& m);

Json to_json(const DarbouxPoint& d);
Json to_json(const SpectralReport& r);
Json to_json(const DecouplingReport& r);
/// Verdict with an evidence array (already encoded by the caller).
Json to_json(const Verdict& v, const Json& evidence = Json::array());
Json to_json(const LoopPath& p);
Json to_json(const FundamentalMatrix& f);
Json to_json(const MonodromyReport& r);

/// Waypoints from a JSON array of numbers, [re, im] pairs or {"re", "im"} objects.
std::vector<Complex> waypoints_from_json(const Json& j);

/// Masses from a JSON array (numbers or rational strings) or from
/// whitespace/comma separated decimals and rationals. Exact when every entry
/// is given as text or as an integer.
MassVector parse_masses_text(const std::string& text);
/// `input` is a file path when such a file exists, otherwise a literal list.
MassVector parse_masses(const std::string& input);

}  // namespace nbint
