#include "mmlogic/kripke.hpp"

#include <algorithm>

#include "mmlogic/error.hpp"

namespace mmlogic {

bool Relation::insert(WorldId a, WorldId b) {
    auto& cell = matrix_[a * n_ + b];
    if (cell) return false;
    cell = 1;
    succ_[a].push_back(b);
    pred_[b].push_back(a);
    ++size_;
    return true;
}

bool Relation::erase(WorldId a, WorldId b) {
    auto& cell = matrix_[a * n_ + b];
    if (!cell) return false;
    cell = 0;
    std::erase(succ_[a], b);
    std::erase(pred_[b], a);
    --size_;
    return true;
}

std::vector<WorldPair> Relation::pairs() const {
    std::vector<WorldPair> out;
    out.reserve(size_);
    for (WorldId a = 0; a < n_; ++a)
        for (WorldId b = 0; b < n_; ++b)
            if (contains(a, b)) out.emplace_back(a, b);
    return out;
}

KripkeStructure::KripkeStructure(std::vector<std::string> worlds, int relation_count) : worlds_(std::move(worlds)) {
    std::sort(worlds_.begin(), worlds_.end());
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
        if (i && worlds_[i] == worlds_[i - 1]) throw ModelError("duplicate world '" + worlds_[i] + "'");
        index_.emplace(worlds_[i], i);
    }
    relations_.assign(static_cast<std::size_t>(std::max(relation_count, 0)), Relation(worlds_.size()));
    labels_.resize(worlds_.size());
}

WorldId KripkeStructure::world(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ModelError("unknown world '" + std::string(name) + "'");
    return it->second;
}

bool KripkeStructure::has_world(std::string_view name) const { return index_.count(std::string(name)) != 0; }

const Relation& KripkeStructure::relation(int i) const {
    if (i < 1 || i > relation_count())
        throw ModelError("relation index " + std::to_string(i) + " out of range 1.." + std::to_string(relation_count()));
    return relations_[static_cast<std::size_t>(i - 1)];
}

Relation& KripkeStructure::relation(int i) {
    return const_cast<Relation&>(static_cast<const KripkeStructure&>(*this).relation(i));
}

void KripkeStructure::ensure_relations(int count) {
    while (relation_count() < count) relations_.emplace_back(worlds_.size());
}

std::size_t KripkeStructure::edge_count() const {
    std::size_t n = 0;
    for (const auto& r : relations_) n += r.size();
    return n;
}

KripkeStructure KripkeStructure::restrict_to(const std::vector<WorldId>& keep) const {
    std::vector<std::string> names;
    for (WorldId w : keep) names.push_back(worlds_.at(w));
    KripkeStructure out(names, relation_count());
    for (WorldId w : keep) out.labels_[out.world(worlds_[w])] = labels_[w];
    for (int i = 1; i <= relation_count(); ++i)
        for (auto [a, b] : relation(i).pairs())
            if (out.has_world(worlds_[a]) && out.has_world(worlds_[b]))
                out.add_edge(i, out.world(worlds_[a]), out.world(worlds_[b]));
    return out;
}

bool KripkeStructure::same_frame(const KripkeStructure& other) const {
    return worlds_ == other.worlds_ && relations_ == other.relations_;
}

}  // namespace mmlogic
