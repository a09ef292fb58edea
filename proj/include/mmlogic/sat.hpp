#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

namespace mmlogic::sat {

/// Literal: 2*var for the positive literal, 2*var+1 for its negation.
using Lit = int;
inline Lit pos(int var) { return 2 * var; }
inline Lit neg(int var) { return 2 * var + 1; }
inline Lit negate(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }

enum class Status { sat, unsat, unknown };

using Clock = std::chrono::steady_clock;

/// Propositional satisfiability backend. Clauses may be added between
/// solve() calls.
class Backend {
public:
    virtual ~Backend() = default;
    virtual int new_var() = 0;
    virtual int var_count() const = 0;
    virtual void add_clause(std::vector<Lit> clause) = 0;
    /// unknown when the deadline passes first.
    virtual Status solve(std::optional<Clock::time_point> deadline = std::nullopt) = 0;
    /// Value of var in the last satisfying assignment.
    virtual bool value(int var) const = 0;
};

/// Conflict-driven DPLL: two watched literals, first-UIP learning,
/// VSIDS branching and Luby restarts.
class CdclSolver final : public Backend {
public:
    /// seed != 0 perturbs initial activities and phases deterministically.
    explicit CdclSolver(std::uint64_t seed = 0) : seed_(seed) {}

    int new_var() override;
    int var_count() const override { return static_cast<int>(assign_.size()); }
    void add_clause(std::vector<Lit> clause) override;
    Status solve(std::optional<Clock::time_point> deadline = std::nullopt) override;
    bool value(int var) const override { return model_.at(static_cast<std::size_t>(var)); }

    std::uint64_t conflicts() const { return conflicts_; }
    std::uint64_t decisions() const { return decisions_; }

private:
    // Assignment per var: 0 unassigned, 1 true, -1 false.
    int lit_value(Lit l) const {
        const int v = assign_[static_cast<std::size_t>(var_of(l))];
        return (l & 1) ? -v : v;
    }
    int level() const { return static_cast<int>(trail_lim_.size()); }
    void enqueue(Lit l, int reason);
    int propagate();
    void analyze(int conflict, std::vector<Lit>& learnt, int& back_level);
    void cancel_until(int lvl);
    int attach(std::vector<Lit> clause);
    void bump(int var);
    int pick_branch();

    void heap_insert(int var);
    void heap_up(std::size_t i);
    void heap_down(std::size_t i);
    int heap_pop();

    std::uint64_t seed_;
    bool unsat_ = false;
    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<int>> watches_;  // by literal
    std::vector<int> assign_, level_, reason_;
    std::vector<char> phase_;
    std::vector<double> activity_;
    double inc_ = 1.0;
    std::vector<Lit> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<int> heap_, heap_pos_;
    std::vector<char> seen_;
    std::vector<char> model_;
    std::uint64_t conflicts_ = 0, decisions_ = 0;
};

}  // namespace mmlogic::sat
