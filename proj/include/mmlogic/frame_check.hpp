#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmlogic/kripke.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

/// World chosen for each clause variable, indexed like HornClause::variables.
using Assignment = std::vector<WorldId>;

/// Enumerates the body matches of one clause by nested-loop joins over
/// adjacency lists. Atom order is greedy: the atom over the smallest
/// relation first, then atoms sharing an already bound variable.
class ClauseJoin {
public:
    using Callback = std::function<bool(const Assignment&)>;

    explicit ClauseJoin(const HornClause& clause) : clause_(&clause) {}

    /// Calls cb for every assignment satisfying the body; cb returns false
    /// to stop. Returns false if stopped early. When delta_atom >= 0 that
    /// body atom ranges over `delta` instead of the full relation.
    bool for_each_match(const KripkeStructure& m, const Callback& cb, int delta_atom = -1,
                        std::span<const WorldPair> delta = {}) const;

    std::vector<std::size_t> plan(const KripkeStructure& m, int first = -1) const;

private:
    const HornClause* clause_;
};

struct Violation {
    std::size_t clause_index = 0;
    Assignment assignment;
};

struct FrameCheckResult {
    bool holds = true;
    /// Lexicographically least witness of the first violated clause.
    std::optional<Violation> counterexample;
};

/// Throws ModelError if the theory uses a relation index above the
/// structure's relation count.
FrameCheckResult check_frame_condition(const KripkeStructure& m, const FrameTheory& theory);

/// Violating assignments of one clause, at most `limit` of them.
std::vector<Assignment> clause_violations(const KripkeStructure& m, const HornClause& clause,
                                          std::size_t limit = static_cast<std::size_t>(-1));

/// R_i o R_i is contained in R_i.
bool check_transitive(const KripkeStructure& m, int relation);

}  // namespace mmlogic
