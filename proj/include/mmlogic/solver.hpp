#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mmlogic/formula.hpp"
#include "mmlogic/kripke.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

enum class SatMode { local, global };
enum class Engine { explicit_search, propositional };

SatMode parse_mode(std::string_view text);
std::string_view to_string(SatMode m);
Engine parse_engine(std::string_view text);
std::string_view to_string(Engine e);

struct SolverConfig {
    int max_worlds = 4;
    SatMode mode = SatMode::local;
    double time_budget_seconds = 60.0;
    std::uint64_t seed = 0;
    Engine engine = Engine::propositional;
    /// Global mode only: a formula that must also hold at the witness world.
    std::optional<Formula> anchor;

    /// Throws Error if max_worlds < 1 or the budget is not positive.
    void validate() const;
};

enum class SolveStatus { sat, unsat_bounded, timeout };
std::string_view to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::unsat_bounded;
    std::optional<KripkeStructure> model;
    /// Witness world name (local mode, or the anchor world in global mode).
    std::string witness;
    /// Model size, 0 without a model.
    int size = 0;
    /// Largest domain size whose search space was exhausted.
    int worlds_explored = 0;
    /// Search nodes (explicit) or conflicts (propositional).
    std::uint64_t nodes = 0;
};

/// Bounded finite-model search by iterative deepening over domain sizes
/// 1..max_worlds. Returned models have Theta-closed frames; worlds are
/// named w0, w1, ... and the witness is w0.
SolveResult find_model(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg);

/// Independent re-check through the model checker and frame checker only.
bool certify(const KripkeStructure& m, std::string_view witness, const Formula& phi, const FrameTheory& theory,
             SatMode mode, const std::optional<Formula>& anchor = std::nullopt);

namespace detail {

/// Relation count used for candidate structures.
int solver_relation_count(const Formula& phi, const FrameTheory& theory, const std::optional<Formula>& anchor);
std::string solver_world_name(int index, int size);

enum class SizeOutcome { found, exhausted, timeout };

struct SizeSearch {
    SizeOutcome outcome = SizeOutcome::exhausted;
    std::optional<KripkeStructure> model;
    std::uint64_t nodes = 0;
};

using Deadline = std::chrono::steady_clock::time_point;

SizeSearch search_explicit(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg, int size,
                           Deadline deadline);
SizeSearch search_propositional(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg, int size,
                                Deadline deadline);

}  // namespace detail

}  // namespace mmlogic
