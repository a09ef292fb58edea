// Backtracking model search over labels and relation pairs with Horn
// closure after every added pair and three-valued evaluation for pruning.

#include <map>

#include "mmlogic/chase.hpp"
#include "mmlogic/solver.hpp"

namespace mmlogic::detail {

namespace {

enum Tri : char { unknown = 0, yes = 1, no = 2 };

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class ExplicitSearch {
public:
    ExplicitSearch(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg, int size, Deadline deadline)
        : cfg_(cfg), n_(static_cast<std::size_t>(size)), k_(solver_relation_count(phi, theory, cfg.anchor)),
          deadline_(deadline), frame_(names(size), k_), closer_(theory, frame_) {
        std::vector<Formula> roots{phi};
        if (cfg.anchor) roots.push_back(*cfg.anchor);
        dag_ = FormulaDag::compile(roots, root_ids_);
        for (const auto& node : dag_.nodes)
            if (node.op == Op::var && !prop_index_.count(node.name)) {
                prop_index_.emplace(node.name, props_.size());
                props_.push_back(node.name);
            }
        per_world_ = props_.size() + static_cast<std::size_t>(k_) * n_;
        label_.assign(n_ * props_.size(), unknown);
        edge_.assign(static_cast<std::size_t>(k_) * n_ * n_, unknown);
        truth_.assign(dag_.size() * n_, unknown);
    }

    SizeSearch run() {
        SizeSearch out;
        const bool found = dfs(0);
        out.nodes = nodes_;
        if (timed_out_) {
            out.outcome = SizeOutcome::timeout;
        } else if (found) {
            out.outcome = SizeOutcome::found;
            KripkeStructure m = frame_;
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t p = 0; p < props_.size(); ++p)
                    if (label_[a * props_.size() + p] == yes) m.add_label(a, props_[p]);
            out.model = std::move(m);
        } else {
            out.outcome = SizeOutcome::exhausted;
        }
        return out;
    }

private:
    static std::vector<std::string> names(int size) {
        std::vector<std::string> out;
        for (int i = 0; i < size; ++i) out.push_back(solver_world_name(i, size));
        return out;
    }

    std::size_t edge_index(int rel, std::size_t a, std::size_t b) const {
        return (static_cast<std::size_t>(rel - 1) * n_ + a) * n_ + b;
    }

    bool prefer_yes(std::size_t var) const { return cfg_.seed != 0 && (mix(cfg_.seed ^ mix(var)) & 1); }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const long t = trail_.back();
            trail_.pop_back();
            if (t < 0) {
                label_[static_cast<std::size_t>(-t - 1)] = unknown;
                continue;
            }
            const auto idx = static_cast<std::size_t>(t);
            if (edge_[idx] == yes) {
                const int rel = static_cast<int>(idx / (n_ * n_)) + 1;
                frame_.relation(rel).erase((idx / n_) % n_, idx % n_);
            }
            edge_[idx] = unknown;
        }
    }

    // Sets an edge; for a positive edge closes the frame and fails if the
    // closure needs a pair already decided absent.
    bool set_edge(std::size_t idx, Tri value) {
        edge_[idx] = value;
        trail_.push_back(static_cast<long>(idx));
        if (value == no) return true;
        const int rel = static_cast<int>(idx / (n_ * n_)) + 1;
        const WorldId a = (idx / n_) % n_, b = idx % n_;
        frame_.add_edge(rel, a, b);
        std::vector<std::vector<WorldPair>> seed(static_cast<std::size_t>(k_) + 1);
        seed[static_cast<std::size_t>(rel)].emplace_back(a, b);
        bool ok = true;
        for (const auto& d : closer_.close(seed)) {
            const auto j = edge_index(d.relation, d.from, d.to);
            if (edge_[j] == no) ok = false;
            // Undo must erase every pair the closer inserted, so record it as yes.
            edge_[j] = yes;
            trail_.push_back(static_cast<long>(j));
        }
        return ok;
    }

    Tri value_of(std::size_t node, std::size_t w) const { return static_cast<Tri>(truth_[node * n_ + w]); }

    bool consistent() {
        for (std::size_t id = 0; id < dag_.size(); ++id) {
            const auto& node = dag_.nodes[id];
            const auto l = static_cast<std::size_t>(node.left), r = static_cast<std::size_t>(node.right);
            for (std::size_t w = 0; w < n_; ++w) {
                Tri v = unknown;
                switch (node.op) {
                case Op::var: v = static_cast<Tri>(label_[w * props_.size() + prop_index_.at(node.name)]); break;
                case Op::top: v = yes; break;
                case Op::bottom: v = no; break;
                case Op::negation: {
                    const Tri c = value_of(l, w);
                    v = c == yes ? no : c == no ? yes : unknown;
                    break;
                }
                case Op::conjunction:
                case Op::disjunction:
                case Op::implication: {
                    Tri x = value_of(l, w);
                    if (node.op == Op::implication) x = x == yes ? no : x == no ? yes : unknown;
                    const Tri y = value_of(r, w);
                    const Tri dominant = node.op == Op::conjunction ? no : yes;
                    if (x == dominant || y == dominant) v = dominant;
                    else if (x != unknown && y != unknown) v = x;
                    break;
                }
                case Op::equivalence: {
                    const Tri x = value_of(l, w), y = value_of(r, w);
                    if (x != unknown && y != unknown) v = x == y ? yes : no;
                    break;
                }
                case Op::diamond:
                case Op::box: {
                    // diamond: some yes-edge to a yes-child / all edges no or child no.
                    const bool dia = node.op == Op::diamond;
                    const Tri want = dia ? yes : no;
                    bool decided_all = true;
                    v = dia ? no : yes;
                    for (std::size_t b = 0; b < n_; ++b) {
                        const Tri e = static_cast<Tri>(edge_[edge_index(node.relation, w, b)]);
                        const Tri c = value_of(l, b);
                        if (e == no || (c != unknown && c != want)) continue;
                        if (e == yes && c == want) {
                            v = want;
                            decided_all = false;
                            break;
                        }
                        decided_all = false;
                    }
                    if (!decided_all && v != want) v = unknown;
                    break;
                }
                }
                truth_[id * n_ + w] = v;
            }
        }
        const auto root = static_cast<std::size_t>(root_ids_[0]);
        if (cfg_.mode == SatMode::global) {
            for (std::size_t w = 0; w < n_; ++w)
                if (value_of(root, w) == no) return false;
        } else if (value_of(root, 0) == no) {
            return false;
        }
        if (cfg_.anchor && value_of(static_cast<std::size_t>(root_ids_[1]), 0) == no) return false;
        return true;
    }

    // Worlds 0..last have all out-edges decided. The worlds they reach must
    // be a prefix 1..c of the numbering, and reach past `last` unless done.
    bool canonical_prefix(std::size_t last) const {
        std::size_t c = 0;
        bool gap = false;
        for (std::size_t j = 1; j < n_; ++j) {
            bool reached = false;
            for (int i = 1; i <= k_ && !reached; ++i)
                for (std::size_t a = 0; a <= last && !reached; ++a) reached = edge_[edge_index(i, a, j)] == yes;
            if (reached) {
                if (gap) return false;
                c = j;
            } else {
                gap = true;
            }
        }
        return last + 1 >= n_ || c >= last + 1;
    }

    bool dfs(std::size_t var) {
        if ((++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
        if (timed_out_) return false;
        const std::size_t a = var / per_world_, j = var % per_world_;
        if (j == 0 && a > 0 && !canonical_prefix(a - 1)) return false;
        if (a == n_) return true;

        const bool is_label = j < props_.size();
        const std::size_t idx = is_label ? a * props_.size() + j
                                         : edge_index(static_cast<int>((j - props_.size()) / n_) + 1, a,
                                                      (j - props_.size()) % n_);
        if (!is_label && edge_[idx] != unknown) return dfs(var + 1);

        const Tri first = prefer_yes(var) ? yes : no;
        for (Tri value : {first, first == yes ? no : yes}) {
            const std::size_t mark = trail_.size();
            bool ok = true;
            if (is_label) {
                label_[idx] = value;
                trail_.push_back(-static_cast<long>(idx) - 1);
            } else {
                ok = set_edge(idx, value);
            }
            if (ok && consistent() && dfs(var + 1)) return true;
            undo(mark);
            if (timed_out_) return false;
        }
        return false;
    }

    const SolverConfig& cfg_;
    std::size_t n_;
    int k_;
    Deadline deadline_;
    KripkeStructure frame_;
    HornCloser closer_;
    FormulaDag dag_;
    std::vector<int> root_ids_;
    std::vector<std::string> props_;
    std::map<std::string, std::size_t> prop_index_;
    std::size_t per_world_ = 0;
    std::vector<char> label_, edge_, truth_;
    std::vector<long> trail_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace

SizeSearch search_explicit(const Formula& phi, const FrameTheory& theory, const SolverConfig& cfg, int size,
                           Deadline deadline) {
    return ExplicitSearch(phi, theory, cfg, size, deadline).run();
}

}  // namespace mmlogic::detail
