#pragma once

#include "qbfs/geometry.hpp"
#include "qbfs/rational.hpp"
#include "qbfs/rearrangement.hpp"
#include "qbfs/step_function.hpp"

#include <json.hpp>

namespace qbfs {

using Json = nlohmann::ordered_json;

/// {"num": n, "den": d}; components that overflow int64 are written as decimal strings.
Json to_json(const Rational& r);
/// Accepts the object form, a plain integer, or a string such as "3/4" or "0.125".
Rational rational_from_json(const Json& j);

/// Real values are written as rationals; complex ones as {"re", "im"}.
Json to_json(const ComplexRational& z);
ComplexRational complex_from_json(const Json& j);

/// Dyadic cubes as {"k", "a"}, 1-D intervals as {"lo", "hi"}, other boxes as
/// {"lo": [...], "hi": [...]}.
Json to_json(const Box& b);
Box box_from_json(const Json& j);

Json to_json(const DyadicCube& q);
Json to_json(const DyadicComplex& c);

/// {"dimension": n, "pieces": [{"region": ..., "value": ...}]}.
Json to_json(const StepFunction& f);
/// Throws std::invalid_argument on malformed input or overlapping regions.
StepFunction step_function_from_json(const Json& j);

/// {"breakpoints": [...], "values": [...]}.
Json to_json(const RearrangementProfile& p);
RearrangementProfile profile_from_json(const Json& j);

}  // namespace qbfs
