#include <gtest/gtest.h>

#include <random>

#include "mmlogic/error.hpp"
#include "mmlogic/parser.hpp"
#include "oracles.hpp"

using namespace mmlogic;

namespace {

Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }

std::string parse_error(std::string_view text, bool theory = false) {
    try {
        if (theory) parse_theory(text);
        else parse_formula(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(parse_formula_test, modalities_and_connectives) {
    EXPECT_EQ(parse_formula("<1> p & [2] ~q"), Formula::diamond(1, p()) & Formula::box(2, !q()));
    EXPECT_EQ(parse_formula("true"), Formula::top());
    EXPECT_EQ(parse_formula("false"), Formula::bottom());
    EXPECT_EQ(parse_formula("!p"), !p());
    EXPECT_EQ(parse_formula("<12>p"), Formula::diamond(12, p()));
}

TEST(parse_formula_test, precedence) {
    EXPECT_EQ(parse_formula("~p & q"), (!p()) & q());
    EXPECT_EQ(parse_formula("p | q & p"), p() | (q() & p()));
    EXPECT_EQ(parse_formula("p & q -> p | q"), Formula::implication(p() & q(), p() | q()));
    EXPECT_EQ(parse_formula("p -> q <-> q"), Formula::equivalence(Formula::implication(p(), q()), q()));
    EXPECT_EQ(parse_formula("<1>p & q"), Formula::diamond(1, p()) & q());
}

TEST(parse_formula_test, implication_is_right_associative) {
    EXPECT_EQ(parse_formula("p -> q -> p"), Formula::implication(p(), Formula::implication(q(), p())));
    EXPECT_EQ(parse_formula("(p -> q) -> p"), Formula::implication(Formula::implication(p(), q()), p()));
}

TEST(parse_formula_test, comments_and_whitespace) {
    EXPECT_EQ(parse_formula("# leading comment\n  p\n  & q # trailing\n"), p() & q());
}

TEST(parse_formula_test, errors_carry_position) {
    EXPECT_NE(parse_error("<0> p").find("relation index must be >= 1"), std::string::npos);
    EXPECT_EQ(parse_error("<0> p").rfind("1:", 0), 0u);
    EXPECT_NE(parse_error("p $ q").find("unknown operator"), std::string::npos);
    EXPECT_NE(parse_error("p &").find("expected a formula"), std::string::npos);
    EXPECT_NE(parse_error("(p").find("')'"), std::string::npos);
    EXPECT_NE(parse_error("p q").find("unexpected token"), std::string::npos);
    try {
        parse_formula("p &\n  & q");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(parse_formula_test, factory_rejects_index_zero) {
    EXPECT_THROW(Formula::diamond(0, p()), std::invalid_argument);
    EXPECT_THROW(Formula::box(-1, p()), std::invalid_argument);
}

TEST(formula_test, size_and_max_relation) {
    const Formula f = parse_formula("<1>p & [3]~q");
    EXPECT_EQ(f.size(), 6u);
    EXPECT_EQ(f.max_relation(), 3);
    EXPECT_EQ(p().size(), 1u);
    EXPECT_EQ(p().max_relation(), 0);
}

TEST(formula_test, printer_minimal_parentheses) {
    EXPECT_EQ(parse_formula("(p & q) | r").to_string(), "p & q | r");
    EXPECT_EQ(parse_formula("p & (q | r)").to_string(), "p & (q | r)");
    EXPECT_EQ(parse_formula("(p -> q) -> r").to_string(), "(p -> q) -> r");
    EXPECT_EQ(parse_formula("p -> (q -> r)").to_string(), "p -> q -> r");
    EXPECT_EQ(parse_formula("<1>~[2]p").to_string(), "<1>~[2]p");
}

TEST(subformulas_test, examples) {
    EXPECT_EQ(subformulas(p()), std::vector<Formula>{p()});
    const Formula d = Formula::diamond(1, p());
    EXPECT_EQ(subformulas(d & p()), (std::vector<Formula>{p(), d, d & p()}));
    EXPECT_EQ(subformulas((!p()) & (!p())), (std::vector<Formula>{p(), !p(), (!p()) & (!p())}));
}

TEST(subformulas_test, propositions_sorted) {
    EXPECT_EQ(propositions(parse_formula("q & <1>(p | q)")), (std::vector<std::string>{"p", "q"}));
}

TEST(formula_property, round_trip_and_subformula_bound) {
    std::mt19937_64 rng(7);
    const std::vector<std::string> props{"p", "q", "r1"};
    for (int i = 0; i < 2000; ++i) {
        const Formula f = oracle::random_formula(rng, 1 + rng() % 20, props, 3);
        ASSERT_EQ(parse_formula(f.to_string()), f) << f.to_string();
        ASSERT_LE(subformulas(f).size(), f.size());
        const auto subs = subformulas(f);
        ASSERT_EQ(subs.back(), f);
    }
}

TEST(formula_dag_test, shares_equal_subformulas) {
    const Formula f = parse_formula("(p & q) | ~(p & q)");
    const FormulaDag dag = FormulaDag::compile(f);
    EXPECT_EQ(dag.size(), subformulas(f).size());
    EXPECT_EQ(dag.formulas[static_cast<std::size_t>(dag.root)], f);
    for (std::size_t i = 0; i < dag.size(); ++i) {
        EXPECT_LT(dag.nodes[i].left, static_cast<int>(i));
        EXPECT_LT(dag.nodes[i].right, static_cast<int>(i));
    }
}

TEST(parse_theory_test, transitivity_clause) {
    const FrameTheory t = parse_theory("sig 1 1; R2(x,y), R2(y,z) -> R2(x,z)");
    EXPECT_EQ(t.signature, (Signature{1, 1}));
    ASSERT_EQ(t.clauses.size(), 1u);
    EXPECT_EQ(t.clauses[0].body, transitivity_clause(2).body);
    EXPECT_EQ(t.clauses[0].head, transitivity_clause(2).head);
    EXPECT_EQ(t.clauses[0].variables, (std::vector<std::string>{"x", "y", "z"}));
}

TEST(parse_theory_test, empty_theory) {
    const FrameTheory t = parse_theory("sig 2 0;");
    EXPECT_EQ(t.signature, (Signature{2, 0}));
    EXPECT_TRUE(t.clauses.empty());
}

TEST(parse_theory_test, labels_separators_comments) {
    const FrameTheory t = parse_theory(
        "# two clauses\nsig 2 0;\nfirst: R1(x,y) & R2(y,z) -> R1(x,z);\nR2(a,b) -> R1(b,a)\n");
    ASSERT_EQ(t.clauses.size(), 2u);
    EXPECT_EQ(t.clauses[0].label, "first");
    EXPECT_EQ(t.clauses[1].label, "");
    EXPECT_EQ(t.clauses[1].head, (RelationAtom{1, 1, 0}));
}

TEST(parse_theory_test, rejects_invalid_input) {
    EXPECT_NE(parse_error("sig 1 0; R2(x,y) -> R2(x,x)", true).find("relation index 2 exceeds signature 1+0"),
              std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; R1(x,y) -> R1(x,y) | R1(y,x)", true).find("non-Horn"), std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; R1(x,y) -> R1(x,y), R1(y,x)", true).find("non-Horn"), std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; ~R1(x,y) -> R1(y,x)", true).find("non-Horn"), std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; R1(x,y), x = y -> R1(y,x)", true).find("equality"), std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; R1(x,y) -> R1(x,z)", true), "");
    EXPECT_NE(parse_error("sig 1 0; -> R1(x,x)", true), "");
    EXPECT_NE(parse_error("R1(x,y) -> R1(y,x)", true).find("sig"), std::string::npos);
    EXPECT_NE(parse_error("sig 1 0; R0(x,y) -> R1(y,x)", true), "");
}

TEST(parse_theory_test, round_trip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        FrameTheory t;
        t.signature = {2, 1};
        for (std::size_t c = rng() % 4; c > 0; --c) t.clauses.push_back(oracle::random_clause(rng, 4, 3));
        const FrameTheory back = parse_theory(t.to_string());
        ASSERT_EQ(back.signature, t.signature);
        ASSERT_EQ(back.clauses.size(), t.clauses.size());
        for (std::size_t c = 0; c < t.clauses.size(); ++c) {
            ASSERT_EQ(back.clauses[c].body, t.clauses[c].body) << t.to_string();
            ASSERT_EQ(back.clauses[c].head, t.clauses[c].head) << t.to_string();
        }
    }
}

TEST(horn_clause_test, make_numbers_variables_by_first_occurrence) {
    const HornClause c = HornClause::make("c", {{1, "y", "x"}, {2, "x", "z"}}, {1, "y", "z"});
    EXPECT_EQ(c.variables, (std::vector<std::string>{"y", "x", "z"}));
    EXPECT_EQ(c.max_relation(), 2);
    EXPECT_TRUE(c.is_safe());
    EXPECT_EQ(c.to_string(), "c: R1(y,x), R2(x,z) -> R1(y,z)");
    EXPECT_FALSE(HornClause::make("", {{1, "x", "y"}}, {1, "x", "w"}).is_safe());
}

TEST(frame_theory_test, validate) {
    FrameTheory t{{1, 0}, {transitivity_clause(2)}};
    EXPECT_THROW(t.validate(), Error);
    t.signature = {1, 1};
    EXPECT_NO_THROW(t.validate());
    t.clauses.push_back(HornClause::make("", {{1, "x", "y"}}, {1, "x", "w"}));
    EXPECT_THROW(t.validate(), Error);
}
