#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mmlogic {

using WorldId = std::size_t;
using WorldPair = std::pair<WorldId, WorldId>;

/// Binary relation over worlds 0..n-1 with membership matrix and adjacency lists.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t worlds) : n_(worlds), matrix_(worlds * worlds, 0), succ_(worlds), pred_(worlds) {}

    std::size_t world_count() const { return n_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(WorldId a, WorldId b) const { return matrix_[a * n_ + b] != 0; }
    /// Returns false if the pair was already present.
    bool insert(WorldId a, WorldId b);
    bool erase(WorldId a, WorldId b);

    /// Insertion order, not sorted.
    const std::vector<WorldId>& successors(WorldId a) const { return succ_[a]; }
    const std::vector<WorldId>& predecessors(WorldId b) const { return pred_[b]; }

    /// All pairs in lexicographic order.
    std::vector<WorldPair> pairs() const;

    friend bool operator==(const Relation& a, const Relation& b) { return a.n_ == b.n_ && a.matrix_ == b.matrix_; }

private:
    std::size_t n_ = 0;
    std::size_t size_ = 0;
    std::vector<unsigned char> matrix_;
    std::vector<std::vector<WorldId>> succ_, pred_;
};

/// Finite Kripke structure <M, R_1..R_k, pi>. Worlds are kept sorted by
/// identifier bytes; a WorldId is a position in that order. Relations are
/// indexed 1..k.
class KripkeStructure {
public:
    KripkeStructure() = default;
    /// Throws ModelError on duplicate identifiers.
    KripkeStructure(std::vector<std::string> worlds, int relation_count);

    std::size_t world_count() const { return worlds_.size(); }
    int relation_count() const { return static_cast<int>(relations_.size()); }
    const std::vector<std::string>& worlds() const { return worlds_; }
    const std::string& world_name(WorldId w) const { return worlds_.at(w); }
    /// Throws ModelError for unknown identifiers.
    WorldId world(std::string_view name) const;
    bool has_world(std::string_view name) const;

    /// Throws ModelError when i is outside 1..k.
    const Relation& relation(int i) const;
    Relation& relation(int i);
    void add_edge(int i, WorldId a, WorldId b) { relation(i).insert(a, b); }
    void add_edge(int i, std::string_view a, std::string_view b) { relation(i).insert(world(a), world(b)); }
    /// Grows the relation count; new relations are empty.
    void ensure_relations(int count);
    std::size_t edge_count() const;

    const std::set<std::string>& label(WorldId w) const { return labels_.at(w); }
    bool holds(WorldId w, const std::string& prop) const { return labels_.at(w).count(prop) != 0; }
    void set_label(WorldId w, std::set<std::string> props) { labels_.at(w) = std::move(props); }
    void add_label(WorldId w, std::string prop) { labels_.at(w).insert(std::move(prop)); }

    /// Copy restricted to the given worlds (edges and labels among them kept).
    KripkeStructure restrict_to(const std::vector<WorldId>& keep) const;

    /// Same worlds and relation sets; labels ignored.
    bool same_frame(const KripkeStructure& other) const;
    friend bool operator==(const KripkeStructure& a, const KripkeStructure& b) {
        return a.same_frame(b) && a.labels_ == b.labels_;
    }

private:
    std::vector<std::string> worlds_;
    std::unordered_map<std::string, WorldId> index_;
    std::vector<Relation> relations_;
    std::vector<std::set<std::string>> labels_;
};

}  // namespace mmlogic
