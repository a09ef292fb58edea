#include "mmlogic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmlogic/error.hpp"
#include "mmlogic/frame_check.hpp"
#include "mmlogic/model_check.hpp"
#include "mmlogic/sat.hpp"

namespace mmlogic {

SatMode parse_mode(std::string_view text) {
    if (text == "local") return SatMode::local;
    if (text == "global") return SatMode::global;
    throw Error("unknown mode '" + std::string(text) + "' (expected local or global)");
}

std::string_view to_string(SatMode m) { return m == SatMode::local ? "local" : "global"; }

Engine parse_engine(std::string_view text) {
    if (text == "explicit") return Engine::explicit_search;
    if (text == "propositional") return Engine::propositional;
    throw Error("unknown engine '" + std::string(text) + "' (expected explicit or propositional)");
}

std::string_view to_string(Engine e) { return e == Engine::explicit_search ? "explicit" : "propositional"; }

std::string_view to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::sat: return "sat";
    case SolveStatus::unsat_bounded: return "unsat-bounded";
    case SolveStatus::timeout: return "timeout";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (max_worlds < 1) throw Error("max_worlds must be >= 1");
    if (!(time_budget_seconds > 0)) throw Error("time budget must be positive");
}

namespace detail {

int solver_relation_count(const Formula& phi, const FrameTheory& theory, const std::optional<Formula>& anchor) {
    int k = std::max({1, phi.max_relation(), theory.signature.relation_count(), theory.max_relation()});
    if (anchor) k = std::max(k, anchor->max_relation());
    return k;
}

std::string solver_world_name(int index, int size) {
    const std::size_t width = std::to_string(std::max(size - 1, 0)).size();
    std::string digits = std::to_string(index);
    return "w" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

SizeSearch search_propositional(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg, int size,
                                Deadline deadline) {
    using namespace sat;
    const int n = size;
    const int k = solver_relation_count(phi, theory, cfg.anchor);
    std::vector<Formula> roots{phi};
    if (cfg.anchor) roots.push_back(*cfg.anchor);
    std::vector<int> root_ids;
    const FormulaDag dag = FormulaDag::compile(roots, root_ids);

    CdclSolver s(cfg.seed);
    const int truth = s.new_var();
    s.add_clause({pos(truth)});

    std::vector<int> edge(static_cast<std::size_t>(k * n * n));
    for (auto& v : edge) v = s.new_var();
    auto r = [&](int i, int a, int b) { return edge[static_cast<std::size_t>((i - 1) * n * n + a * n + b)]; };

    std::map<std::string, std::vector<int>> prop_vars;
    std::vector<std::vector<Lit>> lit(dag.size(), std::vector<Lit>(static_cast<std::size_t>(n)));
    for (std::size_t id = 0; id < dag.size(); ++id) {
        const auto& node = dag.nodes[id];
        for (int a = 0; a < n; ++a) {
            Lit& out = lit[id][static_cast<std::size_t>(a)];
            const Lit l = node.left >= 0 ? lit[static_cast<std::size_t>(node.left)][static_cast<std::size_t>(a)] : 0;
            const Lit rr = node.right >= 0 ? lit[static_cast<std::size_t>(node.right)][static_cast<std::size_t>(a)] : 0;
            switch (node.op) {
            case Op::var: {
                auto& vars = prop_vars[node.name];
                if (vars.empty())
                    for (int w = 0; w < n; ++w) vars.push_back(s.new_var());
                out = pos(vars[static_cast<std::size_t>(a)]);
                break;
            }
            case Op::top: out = pos(truth); break;
            case Op::bottom: out = neg(truth); break;
            case Op::negation: out = negate(l); break;
            case Op::conjunction:
            case Op::disjunction:
            case Op::implication: {
                const int v = s.new_var();
                // Normalise to v <-> (x & y) or v <-> (x | y).
                const Lit x = node.op == Op::implication ? negate(l) : l;
                if (node.op == Op::conjunction) {
                    s.add_clause({neg(v), x});
                    s.add_clause({neg(v), rr});
                    s.add_clause({pos(v), negate(x), negate(rr)});
                } else {
                    s.add_clause({pos(v), negate(x)});
                    s.add_clause({pos(v), negate(rr)});
                    s.add_clause({neg(v), x, rr});
                }
                out = pos(v);
                break;
            }
            case Op::equivalence: {
                const int v = s.new_var();
                s.add_clause({neg(v), negate(l), rr});
                s.add_clause({neg(v), l, negate(rr)});
                s.add_clause({pos(v), l, rr});
                s.add_clause({pos(v), negate(l), negate(rr)});
                out = pos(v);
                break;
            }
            case Op::diamond:
            case Op::box: {
                // box(c) is encoded as the negation of diamond(~c).
                const int v = s.new_var();
                const bool dia = node.op == Op::diamond;
                std::vector<Lit> witnesses{dia ? neg(v) : pos(v)};
                for (int b = 0; b < n; ++b) {
                    const Lit child = lit[static_cast<std::size_t>(node.left)][static_cast<std::size_t>(b)];
                    const Lit c = dia ? child : negate(child);
                    const Lit holds = dia ? pos(v) : neg(v);
                    const int e = s.new_var();
                    s.add_clause({neg(e), pos(r(node.relation, a, b))});
                    s.add_clause({neg(e), c});
                    s.add_clause({holds, neg(r(node.relation, a, b)), negate(c)});
                    witnesses.push_back(pos(e));
                }
                s.add_clause(witnesses);
                out = pos(v);
                break;
            }
            }
        }
    }

    if (cfg.mode == SatMode::global) {
        for (int a = 0; a < n; ++a) s.add_clause({lit[static_cast<std::size_t>(root_ids[0])][static_cast<std::size_t>(a)]});
    } else {
        s.add_clause({lit[static_cast<std::size_t>(root_ids[0])][0]});
    }
    if (cfg.anchor) s.add_clause({lit[static_cast<std::size_t>(root_ids[1])][0]});

    // Rooted search: every world j > 0 has a predecessor below j.
    for (int j = 1; j < n; ++j) {
        std::vector<Lit> preds;
        for (int i = 1; i <= k; ++i)
            for (int a = 0; a < j; ++a) preds.push_back(pos(r(i, a, j)));
        s.add_clause(preds);
    }

    auto ground = [&](const HornClause& c, const Assignment& asg) {
        std::vector<Lit> cl;
        for (const auto& atom : c.body)
            cl.push_back(neg(r(atom.relation, static_cast<int>(asg[static_cast<std::size_t>(atom.lhs)]),
                               static_cast<int>(asg[static_cast<std::size_t>(atom.rhs)]))));
        cl.push_back(pos(r(c.head.relation, static_cast<int>(asg[static_cast<std::size_t>(c.head.lhs)]),
                           static_cast<int>(asg[static_cast<std::size_t>(c.head.rhs)]))));
        s.add_clause(std::move(cl));
    };
    // Small clauses are grounded up front; the rest lazily from counterexamples.
    std::vector<const HornClause*> lazy;
    for (const auto& c : theory.clauses) {
        const double instances = std::pow(static_cast<double>(n), static_cast<double>(c.variables.size()));
        if (instances > 4096) {
            lazy.push_back(&c);
            continue;
        }
        Assignment asg(c.variables.size(), 0);
        for (;;) {
            ground(c, asg);
            std::size_t pos_i = 0;
            while (pos_i < asg.size() && ++asg[pos_i] == static_cast<WorldId>(n)) asg[pos_i++] = 0;
            if (pos_i == asg.size()) break;
        }
    }

    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) names.push_back(solver_world_name(a, n));

    SizeSearch result;
    for (;;) {
        const Status st = s.solve(deadline);
        result.nodes = s.conflicts();
        if (st == Status::unknown) {
            result.outcome = SizeOutcome::timeout;
            return result;
        }
        if (st == Status::unsat) {
            result.outcome = SizeOutcome::exhausted;
            return result;
        }
        KripkeStructure m(names, k);
        for (int i = 1; i <= k; ++i)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (s.value(r(i, a, b))) m.add_edge(i, static_cast<WorldId>(a), static_cast<WorldId>(b));
        for (const auto& [name, vars] : prop_vars)
            for (int a = 0; a < n; ++a)
                if (s.value(vars[static_cast<std::size_t>(a)])) m.add_label(static_cast<WorldId>(a), name);
        bool refined = false;
        for (const HornClause* c : lazy) {
            for (const auto& asg : clause_violations(m, *c, 256)) {
                ground(*c, asg);
                refined = true;
            }
        }
        if (!refined) {
            result.outcome = SizeOutcome::found;
            result.model = std::move(m);
            return result;
        }
    }
}

}  // namespace detail

SolveResult find_model(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg) {
    cfg.validate();
    theory.validate();
    if (cfg.anchor && cfg.mode != SatMode::global) throw Error("an anchor formula requires global mode");
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg.time_budget_seconds));
    SolveResult result;
    for (int size = 1; size <= cfg.max_worlds; ++size) {
        const auto search = cfg.engine == Engine::explicit_search
                                ? detail::search_explicit(phi, theory, cfg, size, deadline)
                                : detail::search_propositional(phi, theory, cfg, size, deadline);
        result.nodes += search.nodes;
        if (search.outcome == detail::SizeOutcome::timeout) {
            result.status = SolveStatus::timeout;
            return result;
        }
        if (search.outcome == detail::SizeOutcome::found) {
            result.status = SolveStatus::sat;
            result.model = search.model;
            result.witness = detail::solver_world_name(0, size);
            result.size = size;
            return result;
        }
        result.worlds_explored = size;
    }
    result.status = SolveStatus::unsat_bounded;
    return result;
}

bool certify(const KripkeStructure& m, std::string_view witness, const Formula& phi, const FrameTheory& theory,
             SatMode mode, const std::optional<Formula>& anchor) {
    try {
        if (m.world_count() == 0) return false;
        if (!check_frame_condition(m, theory).holds) return false;
        if (mode == SatMode::global) {
            if (!check_global(m, phi)) return false;
            return !anchor || check_local(m, witness, *anchor);
        }
        return check_local(m, witness, phi);
    } catch (const Error&) {
        return false;
    }
}

}  // namespace mmlogic
