#pragma once

#include <json.hpp>

#include "catint/algebra.hpp"
#include "catint/measure.hpp"
#include "catint/stepfn.hpp"

namespace catint {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Scalar literals: "p/q" and decimal strings, JSON numbers, and
/// {"re":x, "im":y} for the complex backend.
Scalar scalar_from_json(const Json& j, Backend b);
OrderedJson scalar_to_json(const Scalar& s);

/// {"basis":[...], "unit":[...], "structure":[[[...]]], "nu":[...], "tau":[...]}
std::pair<Algebra, TauMap> algebra_from_json(const Json& j, Backend b);

/// {"vertices":[...], "arrows":[{"name","from","to"}], "relations":[[...]],
///  "tau_vertex": name}
std::pair<PathAlgebra, std::string> quiver_from_json(const Json& j);

/// Per-dimension {"measure":{"kind":...}, "interval":{"a","b"}, "xi":...};
/// accepts a single spec or an array of them.
BoxMeasure box_measure_from_json(const Json& dims, Backend b);

/// {"n":1, "u":2, "coeffs":["3","3","5","5"]}, binary cell order as documented.
StepFunction step_from_json(const Json& j, Backend b);
OrderedJson step_to_json(const StepFunction& f);

} // namespace catint
