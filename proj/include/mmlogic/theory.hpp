#pragma once

#include <string>
#include <vector>

namespace mmlogic {

/// Binary relation atom `R<relation>(lhs, rhs)`; lhs/rhs index the clause variables.
struct RelationAtom {
    int relation = 1;
    int lhs = 0;
    int rhs = 0;

    friend bool operator==(const RelationAtom&, const RelationAtom&) = default;
};

/// Universally closed Horn clause `body -> head` over binary relation atoms.
struct HornClause {
    std::string label;
    std::vector<std::string> variables;
    std::vector<RelationAtom> body;
    RelationAtom head;

    /// Builds a clause from named atoms; variables are numbered by first
    /// occurrence, body left to right, then head.
    struct NamedAtom {
        int relation;
        std::string lhs, rhs;
    };
    static HornClause make(std::string label, const std::vector<NamedAtom>& body, const NamedAtom& head);

    int max_relation() const;
    /// True when every head variable occurs in the body.
    bool is_safe() const;
    std::string to_string() const;

    friend bool operator==(const HornClause&, const HornClause&) = default;
};

/// `n` unconstrained relations followed by `m` relations that must be transitive.
struct Signature {
    int free_count = 0;
    int transitive_count = 0;

    int relation_count() const { return free_count + transitive_count; }
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct FrameTheory {
    Signature signature;
    std::vector<HornClause> clauses;

    /// Throws mmlogic::Error if a clause is unsafe, uses an index outside
    /// 1..n+m, or the signature is negative.
    void validate() const;
    int max_relation() const;
    std::string to_string() const;

    friend bool operator==(const FrameTheory&, const FrameTheory&) = default;
};

/// Transitivity clause for R_relation: R(x,y), R(y,z) -> R(x,z).
HornClause transitivity_clause(int relation);

}  // namespace mmlogic
