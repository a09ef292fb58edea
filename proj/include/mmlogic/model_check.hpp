#pragma once

#include <string_view>
#include <vector>

#include "mmlogic/formula.hpp"
#include "mmlogic/kripke.hpp"

namespace mmlogic {

/// Truth of every DAG node at every world: table[node][world].
using TruthTable = std::vector<std::vector<char>>;

/// Bottom-up evaluation over the subformula DAG. Throws ModelError if a
/// modality uses a relation the structure does not have.
TruthTable evaluate(const KripkeStructure& m, const FormulaDag& dag);

bool check_local(const KripkeStructure& m, WorldId w, const Formula& f);
bool check_local(const KripkeStructure& m, std::string_view world, const Formula& f);
bool check_global(const KripkeStructure& m, const Formula& f);

/// Subformulas of f true at w, children before parents.
std::vector<Formula> type_of(const KripkeStructure& m, std::string_view world, const Formula& f);

}  // namespace mmlogic
