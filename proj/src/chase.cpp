#include "mmlogic/chase.hpp"

#include <string>

#include "mmlogic/error.hpp"

namespace mmlogic {

HornCloser::HornCloser(const FrameTheory& theory, KripkeStructure& m) : theory_(theory), m_(m) {
    for (const auto& c : theory_.clauses)
        if (!c.is_safe()) throw Error("unsafe clause: " + c.to_string());
    if (theory_.max_relation() > m_.relation_count())
        throw ModelError("relation index " + std::to_string(theory_.max_relation()) + " out of range 1.." +
                         std::to_string(m_.relation_count()));
}

std::vector<Derivation> HornCloser::close_all() {
    std::vector<std::vector<WorldPair>> seed(static_cast<std::size_t>(m_.relation_count()) + 1);
    for (int i = 1; i <= m_.relation_count(); ++i) seed[i] = m_.relation(i).pairs();
    return close(seed);
}

std::vector<Derivation> HornCloser::close(const std::vector<std::vector<WorldPair>>& seed) {
    std::vector<Derivation> added;
    auto delta = seed;
    delta.resize(static_cast<std::size_t>(m_.relation_count()) + 1);
    std::size_t round = 0;
    for (;;) {
        bool any = false;
        for (const auto& d : delta) any = any || !d.empty();
        if (!any) break;
        ++round;
        std::vector<std::vector<WorldPair>> next(delta.size());
        // Pairs derived this round stay out of m_ until the round ends; a
        // scratch matrix dedups them.
        std::vector<Relation> fresh(delta.size(), Relation(m_.world_count()));
        for (std::size_t ci = 0; ci < theory_.clauses.size(); ++ci) {
            const auto& c = theory_.clauses[ci];
            const ClauseJoin join(c);
            const Relation& head = m_.relation(c.head.relation);
            for (std::size_t ai = 0; ai < c.body.size(); ++ai) {
                const auto& d = delta[c.body[ai].relation];
                if (d.empty()) continue;
                join.for_each_match(
                    m_,
                    [&](const Assignment& a) {
                        const WorldId x = a[c.head.lhs], y = a[c.head.rhs];
                        if (!head.contains(x, y) && fresh[c.head.relation].insert(x, y)) {
                            next[c.head.relation].emplace_back(x, y);
                            added.push_back({c.head.relation, x, y, ci, a, round});
                        }
                        return true;
                    },
                    static_cast<int>(ai), d);
            }
        }
        for (std::size_t r = 1; r < next.size(); ++r)
            for (auto [a, b] : next[r]) m_.add_edge(static_cast<int>(r), a, b);
        delta = std::move(next);
    }
    return added;
}

ChaseResult saturate(const KripkeStructure& m, const FrameTheory& theory) {
    ChaseResult result{m, {}};
    result.added = HornCloser(theory, result.structure).close_all();
    return result;
}

bool is_closed(const KripkeStructure& m, const FrameTheory& theory) {
    KripkeStructure copy = m;
    return HornCloser(theory, copy).close_all().empty();
}

}  // namespace mmlogic
