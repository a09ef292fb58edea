#include "mmlogic/theory.hpp"

#include <algorithm>

#include "mmlogic/error.hpp"

namespace mmlogic {

HornClause HornClause::make(std::string label, const std::vector<NamedAtom>& body, const NamedAtom& head) {
    HornClause c;
    c.label = std::move(label);
    auto var = [&c](const std::string& name) {
        auto it = std::find(c.variables.begin(), c.variables.end(), name);
        if (it != c.variables.end()) return static_cast<int>(it - c.variables.begin());
        c.variables.push_back(name);
        return static_cast<int>(c.variables.size() - 1);
    };
    for (const auto& a : body) {
        const int l = var(a.lhs);
        const int r = var(a.rhs);
        c.body.push_back({a.relation, l, r});
    }
    const int l = var(head.lhs);
    const int r = var(head.rhs);
    c.head = {head.relation, l, r};
    return c;
}

int HornClause::max_relation() const {
    int r = head.relation;
    for (const auto& a : body) r = std::max(r, a.relation);
    return r;
}

bool HornClause::is_safe() const {
    auto in_body = [this](int v) {
        return std::any_of(body.begin(), body.end(), [v](const RelationAtom& a) { return a.lhs == v || a.rhs == v; });
    };
    return in_body(head.lhs) && in_body(head.rhs);
}

std::string HornClause::to_string() const {
    auto atom = [this](const RelationAtom& a) {
        return "R" + std::to_string(a.relation) + "(" + variables.at(a.lhs) + "," + variables.at(a.rhs) + ")";
    };
    std::string out;
    if (!label.empty()) out += label + ": ";
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) out += ", ";
        out += atom(body[i]);
    }
    out += body.empty() ? "-> " : " -> ";
    out += atom(head);
    return out;
}

void FrameTheory::validate() const {
    if (signature.free_count < 0 || signature.transitive_count < 0)
        throw Error("signature counts must be nonnegative");
    const int k = signature.relation_count();
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        const auto& c = clauses[i];
        auto check = [&](const RelationAtom& a) {
            if (a.relation < 1) throw Error("clause " + std::to_string(i + 1) + ": relation index must be >= 1");
            if (a.relation > k)
                throw Error("clause " + std::to_string(i + 1) + ": relation index " + std::to_string(a.relation) +
                            " exceeds signature " + std::to_string(signature.free_count) + "+" +
                            std::to_string(signature.transitive_count));
            const int nv = static_cast<int>(c.variables.size());
            if (a.lhs < 0 || a.lhs >= nv || a.rhs < 0 || a.rhs >= nv)
                throw Error("clause " + std::to_string(i + 1) + ": variable out of range");
        };
        for (const auto& a : c.body) check(a);
        check(c.head);
        if (!c.is_safe())
            throw Error("clause " + std::to_string(i + 1) + ": head variable does not occur in the body");
    }
}

int FrameTheory::max_relation() const {
    int r = 0;
    for (const auto& c : clauses) r = std::max(r, c.max_relation());
    return r;
}

std::string FrameTheory::to_string() const {
    std::string out = "sig " + std::to_string(signature.free_count) + " " +
                      std::to_string(signature.transitive_count) + ";\n";
    for (const auto& c : clauses) out += c.to_string() + ";\n";
    return out;
}

HornClause transitivity_clause(int relation) {
    return HornClause::make("trans_R" + std::to_string(relation),
                            {{relation, "x", "y"}, {relation, "y", "z"}}, {relation, "x", "z"});
}

}  // namespace mmlogic
