#include <gtest/gtest.h>

#include <random>

#include "mmlogic/constructions.hpp"
#include "mmlogic/error.hpp"
#include "mmlogic/frame_check.hpp"
#include "mmlogic/io.hpp"
#include "mmlogic/model_check.hpp"
#include "mmlogic/parser.hpp"
#include "oracles.hpp"

using namespace mmlogic;

namespace {

KripkeStructure chain(bool closed) {
    KripkeStructure m({"a", "b", "c"}, 1);
    m.add_edge(1, "a", "b");
    m.add_edge(1, "b", "c");
    if (closed) m.add_edge(1, "a", "c");
    return m;
}

FrameTheory transitivity(int i = 1) { return {{0, i}, {transitivity_clause(i)}}; }

}  // namespace

TEST(kripke_test, worlds_sorted_by_bytes) {
    KripkeStructure m({"b", "B", "a"}, 2);
    EXPECT_EQ(m.worlds(), (std::vector<std::string>{"B", "a", "b"}));
    EXPECT_EQ(m.world("a"), 1u);
    EXPECT_THROW(m.world("zz"), ModelError);
    EXPECT_THROW(m.relation(3), ModelError);
    EXPECT_THROW(m.relation(0), ModelError);
    EXPECT_THROW(KripkeStructure({"a", "a"}, 1), ModelError);
}

TEST(kripke_test, relation_bookkeeping) {
    KripkeStructure m({"a", "b"}, 1);
    EXPECT_TRUE(m.relation(1).insert(0, 1));
    EXPECT_FALSE(m.relation(1).insert(0, 1));
    EXPECT_EQ(m.edge_count(), 1u);
    EXPECT_EQ(m.relation(1).predecessors(1), std::vector<WorldId>{0});
    EXPECT_TRUE(m.relation(1).erase(0, 1));
    EXPECT_TRUE(m.relation(1).successors(0).empty());
    EXPECT_TRUE(m.relation(1).empty());
}

TEST(kripke_test, restrict_to_keeps_induced_edges) {
    KripkeStructure m = chain(true);
    m.add_label(2, "p");
    const KripkeStructure r = m.restrict_to({0, 2});
    EXPECT_EQ(r.worlds(), (std::vector<std::string>{"a", "c"}));
    EXPECT_EQ(r.edge_count(), 1u);
    EXPECT_TRUE(r.holds(r.world("c"), "p"));
}

TEST(structure_io_test, json_round_trip) {
    const auto j = nlohmann::json::parse(R"({"worlds":["w","v"],"relations":{"R2":[["w","v"]]},"valuation":{"v":["p"]}})");
    const KripkeStructure m = structure_from_json(j);
    EXPECT_EQ(m.relation_count(), 2);
    EXPECT_TRUE(m.relation(1).empty());
    EXPECT_TRUE(m.holds(m.world("v"), "p"));
    EXPECT_TRUE(m.label(m.world("w")).empty());
    EXPECT_EQ(structure_from_json(structure_to_json(m)), m);
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"worlds":["a"],"relations":{"R1":[["a","b"]]}})")),
                 ModelError);
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"worlds":["a"],"valuation":{"b":["p"]}})")),
                 ModelError);
    EXPECT_THROW(structure_from_json(nlohmann::json::parse(R"({"worlds":["a","a"]})")), ModelError);
}

TEST(check_local_test, examples) {
    KripkeStructure w({"w"}, 1);
    w.add_label(0, "p");
    EXPECT_TRUE(check_local(w, "w", parse_formula("p")));
    EXPECT_TRUE(check_local(w, "w", parse_formula("[1]false")));
    EXPECT_FALSE(check_local(w, "w", parse_formula("<1>true")));
    EXPECT_THROW(check_local(w, "nope", parse_formula("p")), ModelError);
    EXPECT_THROW(check_local(w, "w", parse_formula("<2>p")), ModelError);
}

TEST(check_local_test, figure_patch_corner) {
    const KripkeStructure g = grid_model({3, Topology::patch, Decoding::thick_r1});
    // P_0_0 is an even cell: thick R1 edges to its right/up/U neighbours;
    // P_1_0 is odd and its own P-edges are dashed, i.e. R2.
    EXPECT_TRUE(check_local(g, "P_0_0", parse_formula("<1><2>true")));
    EXPECT_FALSE(check_local(g, "P_0_0", parse_formula("<1><1>true")));
    EXPECT_FALSE(check_local(g, "P_0_0", parse_formula("<2>true")));
    EXPECT_TRUE(check_local(g, "T_0_0", parse_formula("[1]false & [2]false")));
}

TEST(check_global_test, examples) {
    KripkeStructure m({"v", "w"}, 1);
    m.add_label(m.world("w"), "p");
    EXPECT_TRUE(check_global(m, Formula::top()));
    EXPECT_FALSE(check_global(m, parse_formula("p")));
    EXPECT_TRUE(check_global(grid_model({3, Topology::patch, Decoding::thick_r1}), Formula::top()));
}

TEST(type_of_test, examples) {
    KripkeStructure m({"w"}, 1);
    m.add_label(0, "p");
    EXPECT_EQ(type_of(m, "w", parse_formula("p & q")), std::vector<Formula>{Formula::var("p")});
    EXPECT_EQ(type_of(m, "w", Formula::top()), std::vector<Formula>{Formula::top()});
}

TEST(model_check_property, laws_on_random_instances) {
    std::mt19937_64 rng(2024);
    const std::vector<std::string> props{"p", "q"};
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = 1 + rng() % 8;
        const KripkeStructure m = oracle::random_structure(rng, n, 2, props);
        const Formula f = oracle::random_formula(rng, 1 + rng() % 12, props, 2);
        const int rel = 1 + static_cast<int>(rng() % 2);
        bool all = true;
        for (WorldId w = 0; w < n; ++w) {
            const bool local = check_local(m, w, f);
            ASSERT_EQ(local, oracle::eval(m, w, f)) << f.to_string();
            ASSERT_EQ(check_local(m, w, Formula::box(rel, f)), check_local(m, w, !Formula::diamond(rel, !f)));
            const auto tp = type_of(m, m.world_name(w), f);
            ASSERT_LE(tp.size(), f.size());
            ASSERT_EQ(std::find(tp.begin(), tp.end(), f) != tp.end(), local);
            for (const auto& g : tp) ASSERT_TRUE(oracle::eval(m, w, g));
            all = all && local;
        }
        ASSERT_EQ(check_global(m, f), all);
    }
}

TEST(frame_check_test, chain_transitivity) {
    const auto open = check_frame_condition(chain(false), transitivity());
    ASSERT_FALSE(open.holds);
    ASSERT_TRUE(open.counterexample);
    EXPECT_EQ(open.counterexample->clause_index, 0u);
    EXPECT_EQ(open.counterexample->assignment, (Assignment{0, 1, 2}));
    EXPECT_TRUE(check_frame_condition(chain(true), transitivity()).holds);
}

TEST(frame_check_test, errors) {
    EXPECT_THROW(check_frame_condition(chain(true), transitivity(2)), ModelError);
    FrameTheory unsafe{{1, 0}, {HornClause::make("", {{1, "x", "y"}}, {1, "x", "w"})}};
    EXPECT_THROW(check_frame_condition(chain(true), unsafe), Error);
}

TEST(frame_check_test, least_witness_matches_naive) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const KripkeStructure m = oracle::random_structure(rng, 1 + rng() % 5, 2, {}, 0.4);
        FrameTheory t{{2, 0}, {}};
        for (std::size_t c = 1 + rng() % 3; c > 0; --c) t.clauses.push_back(oracle::random_clause(rng, 4, 2));
        const auto fast = check_frame_condition(m, t);
        const auto slow = oracle::naive_frame_check(m, t);
        ASSERT_EQ(fast.holds, !slow.has_value()) << t.to_string();
        if (slow) {
            ASSERT_EQ(fast.counterexample->clause_index, slow->clause_index);
            ASSERT_EQ(fast.counterexample->assignment, slow->assignment) << t.to_string();
        }
    }
}

TEST(frame_check_test, clause_violations_are_violations) {
    const FrameTheory t = transitivity();
    KripkeStructure m({"a", "b", "c", "d"}, 1);
    m.add_edge(1, "a", "b");
    m.add_edge(1, "b", "c");
    m.add_edge(1, "c", "d");
    const auto all = clause_violations(m, t.clauses[0]);
    EXPECT_EQ(all.size(), 2u);
    EXPECT_EQ(clause_violations(m, t.clauses[0], 1).size(), 1u);
    for (const auto& a : all)
        EXPECT_TRUE(oracle::body_holds(m, t.clauses[0], a) && !oracle::head_holds(m, t.clauses[0], a));
}

TEST(frame_check_test, one_cell_grid_join_against_naive) {
    const KripkeStructure g = grid_model({1, Topology::patch, Decoding::thick_r1});
    for (auto mid : {MidConvention::indexed, MidConvention::fixed_r2})
        for (auto [n, m] : {std::pair{2, 0}, {1, 1}, {0, 2}}) {
            const FrameTheory t = build_phi(n, m, mid);
            EXPECT_EQ(check_frame_condition(g, t).holds, !oracle::naive_frame_check(g, t).has_value());
        }
}

TEST(frame_check_test, full_grid_under_fixed_mid) {
    const KripkeStructure g = grid_model({3, Topology::patch, Decoding::thick_r1});
    EXPECT_TRUE(check_frame_condition(g, build_phi(2, 0, MidConvention::fixed_r2)).holds);
}

TEST(check_transitive_test, examples_and_equivalence) {
    KripkeStructure empty({"a"}, 1);
    EXPECT_TRUE(check_transitive(empty, 1));
    EXPECT_FALSE(check_transitive(chain(false), 1));
    EXPECT_TRUE(check_transitive(chain(true), 1));
    EXPECT_THROW(check_transitive(chain(true), 2), ModelError);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const KripkeStructure m = oracle::random_structure(rng, 1 + rng() % 5, 2, {}, 0.35);
        for (int r = 1; r <= 2; ++r) ASSERT_EQ(check_transitive(m, r), check_frame_condition(m, transitivity(r)).holds);
    }
}

TEST(clause_join_test, enumerates_exactly_body_matches) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const KripkeStructure m = oracle::random_structure(rng, 1 + rng() % 4, 2, {}, 0.4);
        const HornClause c = oracle::random_clause(rng, 4, 2);
        std::set<Assignment> fast, slow;
        ClauseJoin(c).for_each_match(m, [&](const Assignment& a) {
            fast.insert(Assignment(a.begin(), a.begin() + static_cast<long>(c.variables.size())));
            return true;
        });
        oracle::for_each_assignment(m.world_count(), c.variables.size(), [&](const std::vector<WorldId>& a) {
            if (oracle::body_holds(m, c, a)) slow.insert(a);
            return true;
        });
        ASSERT_EQ(fast, slow) << c.to_string();
    }
}
