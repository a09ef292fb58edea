#include "mmlogic/frame_check.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mmlogic/error.hpp"

namespace mmlogic {

namespace {

constexpr WorldId unbound = std::numeric_limits<WorldId>::max();

void check_relations(const KripkeStructure& m, const HornClause& c) {
    if (!c.is_safe()) throw Error("unsafe clause: " + c.to_string());
    if (c.max_relation() > m.relation_count())
        throw ModelError("relation index " + std::to_string(c.max_relation()) + " out of range 1.." +
                         std::to_string(m.relation_count()));
}

struct JoinState {
    const KripkeStructure& m;
    const HornClause& clause;
    const std::vector<std::size_t>& order;
    int delta_atom;
    std::span<const WorldPair> delta;
    const ClauseJoin::Callback& cb;
    Assignment binding;

    // Binds the atom's variables to (a, b) if consistent; returns the
    // variables newly bound so the caller can undo them.
    bool bind(const RelationAtom& atom, WorldId a, WorldId b, int& undo_l, int& undo_r) {
        undo_l = undo_r = -1;
        if (binding[atom.lhs] != unbound && binding[atom.lhs] != a) return false;
        if (binding[atom.lhs] == unbound) {
            binding[atom.lhs] = a;
            undo_l = atom.lhs;
        }
        if (binding[atom.rhs] != unbound && binding[atom.rhs] != b) {
            if (undo_l >= 0) binding[undo_l] = unbound;
            undo_l = -1;
            return false;
        }
        if (binding[atom.rhs] == unbound) {
            binding[atom.rhs] = b;
            undo_r = atom.rhs;
        }
        return true;
    }

    void unbind(int l, int r) {
        if (l >= 0) binding[l] = unbound;
        if (r >= 0) binding[r] = unbound;
    }

    bool step(std::size_t depth) {
        if (depth == order.size()) return cb(binding);
        const std::size_t idx = order[depth];
        const RelationAtom& atom = clause.body[idx];
        auto visit = [&](WorldId a, WorldId b) {
            int l, r;
            if (!bind(atom, a, b, l, r)) return true;
            const bool go_on = step(depth + 1);
            unbind(l, r);
            return go_on;
        };
        if (static_cast<int>(idx) == delta_atom) {
            for (auto [a, b] : delta)
                if (!visit(a, b)) return false;
            return true;
        }
        const Relation& rel = m.relation(atom.relation);
        const WorldId lhs = binding[atom.lhs], rhs = binding[atom.rhs];
        if (lhs != unbound && rhs != unbound) return rel.contains(lhs, rhs) ? step(depth + 1) : true;
        if (lhs != unbound) {
            for (WorldId b : rel.successors(lhs))
                if (!visit(lhs, b)) return false;
            return true;
        }
        if (rhs != unbound) {
            for (WorldId a : rel.predecessors(rhs))
                if (!visit(a, rhs)) return false;
            return true;
        }
        for (WorldId a = 0; a < m.world_count(); ++a)
            for (WorldId b : rel.successors(a))
                if (!visit(a, b)) return false;
        return true;
    }
};

}  // namespace

std::vector<std::size_t> ClauseJoin::plan(const KripkeStructure& m, int first) const {
    const auto& body = clause_->body;
    std::vector<std::size_t> order;
    std::vector<char> used(body.size(), 0), bound(clause_->variables.size(), 0);
    auto take = [&](std::size_t i) {
        order.push_back(i);
        used[i] = 1;
        bound[body[i].lhs] = bound[body[i].rhs] = 1;
    };
    if (first >= 0) take(static_cast<std::size_t>(first));
    while (order.size() < body.size()) {
        // Rank: number of bound variables (more is better), then relation size.
        std::size_t best = body.size();
        int best_bound = -1;
        std::size_t best_size = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (used[i]) continue;
            const int nb = bound[body[i].lhs] + (body[i].lhs != body[i].rhs ? bound[body[i].rhs] : bound[body[i].lhs]);
            const std::size_t sz = m.relation(body[i].relation).size();
            if (nb > best_bound || (nb == best_bound && sz < best_size)) {
                best = i;
                best_bound = nb;
                best_size = sz;
            }
        }
        take(best);
    }
    return order;
}

bool ClauseJoin::for_each_match(const KripkeStructure& m, const Callback& cb, int delta_atom,
                                std::span<const WorldPair> delta) const {
    check_relations(m, *clause_);
    const auto order = plan(m, delta_atom);
    JoinState st{m, *clause_, order, delta_atom, delta, cb, Assignment(clause_->variables.size(), unbound)};
    return st.step(0);
}

std::vector<Assignment> clause_violations(const KripkeStructure& m, const HornClause& clause, std::size_t limit) {
    std::vector<Assignment> out;
    if (limit == 0) return out;
    const Relation& head = m.relation(clause.head.relation);
    ClauseJoin(clause).for_each_match(m, [&](const Assignment& a) {
        if (!head.contains(a[clause.head.lhs], a[clause.head.rhs])) {
            out.push_back(a);
            if (out.size() >= limit) return false;
        }
        return true;
    });
    return out;
}

FrameCheckResult check_frame_condition(const KripkeStructure& m, const FrameTheory& theory) {
    for (const auto& c : theory.clauses) check_relations(m, c);
    for (std::size_t i = 0; i < theory.clauses.size(); ++i) {
        const auto& c = theory.clauses[i];
        const Relation& head = m.relation(c.head.relation);
        std::optional<Assignment> best;
        ClauseJoin(c).for_each_match(m, [&](const Assignment& a) {
            if (!head.contains(a[c.head.lhs], a[c.head.rhs]) && (!best || a < *best)) best = a;
            return true;
        });
        if (best) return {false, Violation{i, std::move(*best)}};
    }
    return {};
}

bool check_transitive(const KripkeStructure& m, int relation) {
    const Relation& r = m.relation(relation);
    for (WorldId a = 0; a < m.world_count(); ++a)
        for (WorldId b : r.successors(a))
            for (WorldId c : r.successors(b))
                if (!r.contains(a, c)) return false;
    return true;
}

}  // namespace mmlogic
