#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "germcalc/diagnostics.hpp"
#include "germcalc/germ.hpp"
#include "germcalc/series2.hpp"

namespace germcalc {

/// Canonical text rendering: terms by total degree, then by x-exponent
/// descending, e.g. "1 - 1/2*x*y + y^2". Lambda-polynomial coefficients of
/// positive degree are parenthesized: "x + (2*lam)*x*y".
std::string render_series(const Series2<Rat>& s);
std::string render_series(const Series2<LambdaPoly>& s);
std::string render_series(const Series1<Rat>& s, const std::string& var = "x");

/// Parses the canonical text format (either coefficient kind) at the given
/// order. Terms beyond the order are rejected.
Series2<LambdaPoly> parse_series2_text(const std::string& text, int order);

/// Lowers a lambda-coefficient series to plain rationals when no coefficient
/// actually involves lambda.
std::optional<Series2<Rat>> lower_to_rat(const Series2<LambdaPoly>& s);

/// JSON term lists: [{"xk": j, "yk": k, "c": "p/q"}, ...] with lambda
/// polynomials as coefficient arrays ["p0/q0", "p1/q1", ...].
nlohmann::json series_to_json(const Series2<Rat>& s);
nlohmann::json series_to_json(const Series2<LambdaPoly>& s);
nlohmann::json series_to_json(const Series1<Rat>& s);

Series2<Rat> series2_from_json_rat(const nlohmann::json& terms, int order);
Series2<LambdaPoly> series2_from_json_lambda(const nlohmann::json& terms, int order);

/// Germ spec files: {"delta": [terms], "w": [terms], "order": N}. The order
/// field is optional when a fallback is supplied.
GermSpec germ_spec_from_json(const nlohmann::json& doc, std::optional<int> order_override);

/// Fixed 17-significant-digit rendering for every float that leaves the
/// library, so reports are byte-reproducible.
std::string format_double(double v);

nlohmann::json to_json(const HilbertReport& rep);
nlohmann::json to_json(const GrowthReport& rep);
std::string to_csv(const HilbertReport& rep, bool header);
std::string to_csv(const GrowthReport& rep);

} // namespace germcalc
