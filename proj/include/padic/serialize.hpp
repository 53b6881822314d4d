#pragma once

#include <string>

#include <json.hpp>

#include "padic/archimedean.hpp"
#include "padic/dimensions.hpp"
#include "padic/fractal_string.hpp"
#include "padic/minkowski.hpp"
#include "padic/zeta.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

/// {"p", "scaling_exps", "gap_exps", optional "maps", optional "gaps"}.
SelfSimilarSystem system_from_json(const Json& j);
Json system_to_json(const SelfSimilarSystem& sys);

/// {"num": [...], "den": [...], "p", "d"}.
RationalZeta rational_zeta_from_json(const Json& j);
Json rational_zeta_to_json(const RationalZeta& rz);

Json dimension_set_to_json(const DimensionSet& ds);
Json content_report_to_json(const ContentReport& r);
Json validation_to_json(const ValidationReport& r);

/// 15 significant digits, round half to even, e.g. "1.48148148148148e-01".
std::string decimal15(const Rational& q);
std::string decimal15(double x);

/// "num/den" (just "num" for integers).
std::string rational_string(const Rational& q);

}  // namespace padic
