#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mmlogic/domino.hpp"
#include "mmlogic/kripke.hpp"
#include "mmlogic/solver.hpp"

namespace mmlogic {

/// {"worlds":[...], "relations":{"R1":[["a","b"],...]}, "valuation":{"a":["p"]}}
/// Relation count is the largest R<i> key. Throws ModelError.
KripkeStructure structure_from_json(const nlohmann::json& j);
nlohmann::json structure_to_json(const KripkeStructure& m);

/// {"tiles":[...], "H":[[a,b],...], "V":[...]}
DominoSystem domino_from_json(const nlohmann::json& j);
nlohmann::json domino_to_json(const DominoSystem& d);

/// {"status": "sat"|"unsat-bounded"|"timeout", "worlds_explored": n, "size": n, ...}
nlohmann::json verdict_to_json(const SolveResult& r);

/// DOT digraph; edges carry label R<i>.
std::string structure_to_dot(const KripkeStructure& m);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mmlogic
