#pragma once

#include "ncsym/representations.hpp"

#include <json.hpp>

#include <string>

namespace ncsym {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

Json to_json(const VectorField& X);
Json to_json(const AlgebraBasis& b);
/// Nonzero c^k_ij with i < j, plus the antisymmetry and Jacobi verdicts.
Json to_json(const StructureConstants& sc);
Json to_json(const RepReport& r);
Json to_json(const AlgebraInvariants& inv);
Json to_json(const LeviReport& r);

/// Pretty-printed with a trailing newline; "-" or empty writes to stdout.
void write_json(const std::string& path, const Json& j);

}  // namespace ncsym
