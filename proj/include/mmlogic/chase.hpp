#pragma once

#include <cstddef>
#include <vector>

#include "mmlogic/frame_check.hpp"
#include "mmlogic/kripke.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

/// One pair added by saturation and the clause instance that produced it.
struct Derivation {
    int relation = 1;
    WorldId from = 0, to = 0;
    std::size_t clause_index = 0;
    Assignment assignment;
    /// Semi-naive round, starting at 1.
    std::size_t round = 1;
};

struct ChaseResult {
    KripkeStructure structure;
    std::vector<Derivation> added;
};

/// Semi-naive Horn closure working in place on a structure. Each round
/// joins every clause with one body atom restricted to the previous
/// round's new pairs; derived pairs are merged after the round.
class HornCloser {
public:
    HornCloser(const FrameTheory& theory, KripkeStructure& m);

    /// Closes m after `seed` pairs (relation, pair) were inserted, or from
    /// scratch if close_all() is used. Returns derivations in order.
    std::vector<Derivation> close(const std::vector<std::vector<WorldPair>>& seed);
    std::vector<Derivation> close_all();

private:
    const FrameTheory& theory_;
    KripkeStructure& m_;
};

/// Least extension of m's relations closed under the theory. Worlds and
/// labels are unchanged.
ChaseResult saturate(const KripkeStructure& m, const FrameTheory& theory);

bool is_closed(const KripkeStructure& m, const FrameTheory& theory);

}  // namespace mmlogic
