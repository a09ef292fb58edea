#include "mmlogic/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "mmlogic/error.hpp"

namespace mmlogic {

MidConvention parse_mid(std::string_view text) {
    if (text == "A" || text == "a" || text == "indexed") return MidConvention::indexed;
    if (text == "B" || text == "b" || text == "fixed") return MidConvention::fixed_r2;
    throw Error("unknown mid convention '" + std::string(text) + "' (expected A or B)");
}

std::string_view to_string(MidConvention c) { return c == MidConvention::indexed ? "A" : "B"; }

Topology parse_topology(std::string_view text) {
    if (text == "patch") return Topology::patch;
    if (text == "torus") return Topology::torus;
    throw Error("unknown topology '" + std::string(text) + "' (expected patch or torus)");
}

std::string_view to_string(Topology t) { return t == Topology::patch ? "patch" : "torus"; }

Decoding parse_decoding(std::string_view text) {
    if (text == "thick=R1" || text == "R1") return Decoding::thick_r1;
    if (text == "thick=R2" || text == "R2") return Decoding::thick_r2;
    throw Error("unknown decoding '" + std::string(text) + "' (expected thick=R1 or thick=R2)");
}

std::string_view to_string(Decoding d) { return d == Decoding::thick_r1 ? "thick=R1" : "thick=R2"; }

namespace {

// mid_i(u) inlined as two body atoms over fresh variables s, t.
std::vector<HornClause::NamedAtom> mid(int i, MidConvention c) {
    const int r = c == MidConvention::indexed ? i : 2;
    return {{r, "u", "s"}, {r, "s", "t"}};
}

HornClause confluence(int index, MidConvention c) {
    // 1: x R1 y, x R1 u, u R1 z, mid_2(u) -> y R2 z
    // 2: x R2 y, x R2 u, u R1 z, mid_1(u) -> y R1 z
    const int side = index == 1 ? 1 : 2;
    const int head = index == 1 ? 2 : 1;
    std::vector<HornClause::NamedAtom> body{{side, "x", "y"}, {side, "x", "u"}, {1, "u", "z"}};
    for (auto& a : mid(index == 1 ? 2 : 1, c)) body.push_back(a);
    return HornClause::make("clause" + std::to_string(index), body, {head, "y", "z"});
}

}  // namespace

FrameTheory build_phi(int n, int m, MidConvention mid_convention) {
    if (n < 0 || m < 0) throw Error("relation counts must be nonnegative");
    if (n + m <= 1) throw Error("Phi requires n+m > 1");
    FrameTheory t;
    t.signature = {n, m};
    t.clauses.push_back(confluence(1, mid_convention));
    t.clauses.push_back(confluence(2, mid_convention));
    if (n < 2) t.clauses.push_back(transitivity_clause(2));
    if (n == 0) t.clauses.push_back(transitivity_clause(1));
    for (int i = 3; i <= n + m; ++i)
        if (i > n) t.clauses.push_back(transitivity_clause(i));
    return t;
}

FrameTheory build_phi_prime(int n, int m, MidConvention mid_convention) {
    FrameTheory t = build_phi(n, m, mid_convention);
    t.clauses.push_back(HornClause::make("clause5", {{1, "x", "y"}, {2, "x", "y"}, {1, "z", "v"}}, {1, "x", "v"}));
    return t;
}

void GridModelSpec::validate() const {
    if (k < 1) throw Error("grid size k must be >= 1");
    if (topology == Topology::torus && k % 2 != 0) throw Error("a torus needs an even k (checkerboard parity)");
}

std::string grid_world(char sort, int x, int y) {
    return std::string(1, sort) + "_" + std::to_string(x) + "_" + std::to_string(y);
}

KripkeStructure grid_model(const GridModelSpec& spec) {
    spec.validate();
    const int k = spec.k;
    const bool torus = spec.topology == Topology::torus;
    const int side = torus ? k : k + 1;
    auto P = [&](int x, int y) { return grid_world('P', torus ? x % k : x, torus ? y % k : y); };

    std::vector<std::string> worlds;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) worlds.push_back(P(x, y));
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (char s : {'U', 'S', 'T'}) worlds.push_back(grid_world(s, x, y));

    KripkeStructure m(worlds, 2);
    const int thick = spec.decoding == Decoding::thick_r1 ? 1 : 2;
    const int dashed = 3 - thick;
    for (int x = 0; x < k; ++x) {
        for (int y = 0; y < k; ++y) {
            const bool even = (x + y) % 2 == 0;
            const int first = even ? thick : dashed;
            const int rest = even ? dashed : thick;
            const auto U = grid_world('U', x, y), S = grid_world('S', x, y), T = grid_world('T', x, y);
            m.add_edge(first, P(x, y), P(x + 1, y));
            m.add_edge(first, P(x, y), P(x, y + 1));
            m.add_edge(first, P(x, y), U);
            m.add_edge(rest, U, P(x + 1, y + 1));
            m.add_edge(rest, U, S);
            m.add_edge(rest, S, T);
            m.add_edge(rest, U, T);
            m.add_edge(rest, P(x + 1, y), P(x + 1, y + 1));
            m.add_edge(rest, P(x, y + 1), P(x + 1, y + 1));
        }
    }
    return m;
}

bool FigureReport::all_models() const {
    for (const auto& c : checks)
        if (!c.result.holds) return false;
    return true;
}

bool FigureReport::only_gadget_paths() const {
    if (has_three_step_path) return false;
    for (const auto& p : two_step_paths) {
        const auto& names = grid.worlds();
        if (names[p.worlds[0]][0] != 'U' || names[p.worlds[1]][0] != 'S' || names[p.worlds[2]][0] != 'T') return false;
    }
    return true;
}

std::string describe_pair(const KripkeStructure& m, int relation, WorldId a, WorldId b) {
    return "R" + std::to_string(relation) + "(" + m.world_name(a) + "," + m.world_name(b) + ")";
}

std::string describe_assignment(const KripkeStructure& m, const HornClause& c, const Assignment& a) {
    std::string out;
    for (std::size_t i = 0; i < c.variables.size(); ++i) {
        if (i) out += ", ";
        out += c.variables[i] + "=" + m.world_name(a[i]);
    }
    return out;
}

FigureReport verify_figure(const GridModelSpec& spec, MidConvention mid_convention) {
    FigureReport report{spec, mid_convention, grid_model(spec), {}, {}, false, true, 0};
    const KripkeStructure& g = report.grid;

    const std::array<std::pair<int, int>, 3> params{{{2, 0}, {1, 1}, {0, 2}}};
    for (bool prime : {false, true}) {
        for (auto [n, m] : params) {
            TheoryCheck tc;
            tc.name = std::string(prime ? "Phi'" : "Phi") + "(" + std::to_string(n) + "," + std::to_string(m) + ")";
            tc.theory = prime ? build_phi_prime(n, m, mid_convention) : build_phi(n, m, mid_convention);
            tc.result = check_frame_condition(g, tc.theory);
            if (!tc.result.holds) tc.delta = saturate(g, tc.theory).added;
            report.checks.push_back(std::move(tc));
        }
    }

    for (int r = 1; r <= g.relation_count(); ++r) {
        const Relation& rel = g.relation(r);
        for (WorldId a = 0; a < g.world_count(); ++a)
            for (WorldId b : rel.successors(a))
                for (WorldId c : rel.successors(b)) {
                    report.two_step_paths.push_back({r, {a, b, c}});
                    if (!rel.successors(c).empty()) report.has_three_step_path = true;
                }
    }
    std::sort(report.two_step_paths.begin(), report.two_step_paths.end(), [](const SamePath& x, const SamePath& y) {
        return std::tie(x.relation, x.worlds) < std::tie(y.relation, y.worlds);
    });

    for (WorldId a = 0; a < g.world_count(); ++a) {
        if (!g.relation(1).successors(a).empty() && !g.relation(2).successors(a).empty())
            report.single_relation_out_edges = false;
        for (WorldId b : g.relation(1).successors(a))
            if (g.relation(2).contains(a, b)) {
                ++report.shared_successor_worlds;
                break;
            }
    }
    return report;
}

std::string FigureReport::render() const {
    std::ostringstream out;
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    out << "grid: " << to_string(spec.topology) << " k=" << spec.k << " decoding=" << to_string(spec.decoding)
        << " mid=" << to_string(mid) << "\n";
    out << "worlds: " << grid.world_count() << "\n";
    out << "edges: " << grid.edge_count() << "\n";
    for (const auto& c : checks) {
        out << c.name << ": model: " << yes(c.result.holds) << "\n";
        if (c.result.counterexample) {
            const auto& v = *c.result.counterexample;
            const auto& clause = c.theory.clauses[v.clause_index];
            out << "  violated " << (clause.label.empty() ? "clause " + std::to_string(v.clause_index + 1) : clause.label)
                << " at " << describe_assignment(grid, clause, v.assignment) << "\n";
            out << "  saturation adds " << c.delta.size() << " pairs\n";
            for (const auto& d : c.delta) {
                const auto& dc = c.theory.clauses[d.clause_index];
                out << "    + " << describe_pair(grid, d.relation, d.from, d.to) << " by "
                    << (dc.label.empty() ? "clause " + std::to_string(d.clause_index + 1) : dc.label) << " ["
                    << describe_assignment(grid, dc, d.assignment) << "] round " << d.round << "\n";
            }
        }
    }
    out << "single-relation out-edges: " << yes(single_relation_out_edges) << "\n";
    out << "clause5 premise worlds (common R1/R2 successor): " << shared_successor_worlds << "\n";
    out << "two-step same-relation paths: " << two_step_paths.size() << "\n";
    for (const auto& p : two_step_paths)
        out << "  R" << p.relation << ": " << grid.world_name(p.worlds[0]) << " -> " << grid.world_name(p.worlds[1])
            << " -> " << grid.world_name(p.worlds[2]) << "\n";
    out << "three-step same-relation path: " << yes(has_three_step_path) << "\n";
    out << "only U->S->T two-step paths: " << yes(only_gadget_paths()) << "\n";
    return out.str();
}

KripkeStructure prune_no_predecessor(const KripkeStructure& m, std::string_view root_name) {
    const WorldId root = m.world(root_name);
    std::vector<char> alive(m.world_count(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (WorldId w = 0; w < m.world_count(); ++w) {
            if (!alive[w] || w == root) continue;
            bool has_pred = false;
            for (int r = 1; r <= m.relation_count() && !has_pred; ++r)
                for (WorldId p : m.relation(r).predecessors(w))
                    if (alive[p]) {
                        has_pred = true;
                        break;
                    }
            if (!has_pred) {
                alive[w] = 0;
                changed = true;
            }
        }
    }
    std::vector<WorldId> keep;
    for (WorldId w = 0; w < m.world_count(); ++w)
        if (alive[w]) keep.push_back(w);
    return m.restrict_to(keep);
}

}  // namespace mmlogic
