#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "toricgec/gec.hpp"
#include "toricgec/laurent.hpp"
#include "toricgec/polytope.hpp"

namespace toricgec {

std::string rat_string(const Rat& q);

// {"rank": n, "terms": [{"e": [...], "c": "num/den"}]}, terms in lexicographic exponent order.
nlohmann::json to_json(const Laurent& p);
Laurent laurent_from_json(const nlohmann::json& j);

// {"rank", "dim", "vertices", "facets": [{"u", "a"}]}; lower-dimensional polytopes also carry "chart".
nlohmann::json to_json(const LatticePolytope& P);
// Reads {"rank": n, "vertices": [[...], ...]} and takes the hull.
LatticePolytope polytope_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ObstructionReport& r);
nlohmann::json to_json(const EinsteinResult& r);

// Infix expressions with + - * / ^ and parentheses over rational literals and the variables
// x, y, z or x1..x9. rank defaults to the largest variable index used.
Laurent parse_expression(const std::string& text, std::optional<std::size_t> rank = std::nullopt);
// Inverse of parse_expression on canonical forms; terms in ascending graded-lex order.
std::string format_expression(const Laurent& p);

// Built-in polynomials: hexagon-q, rem7, fs:n (1 + x1 + ... + xn).
std::optional<Laurent> named_polynomial(const std::string& name);

}  // namespace toricgec
