#include "mmlogic/domino.hpp"

#include <algorithm>
#include <cctype>

#include "mmlogic/error.hpp"

namespace mmlogic {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

void DominoSystem::validate() const {
    if (tiles.empty()) throw Error("domino system needs at least one tile");
    std::set<std::string> seen;
    for (const auto& t : tiles) {
        if (!is_identifier(t)) throw Error("tile name '" + t + "' must be alphanumeric");
        if (!seen.insert(t).second) throw Error("duplicate tile '" + t + "'");
    }
    for (const auto* rel : {&horizontal, &vertical})
        for (auto [a, b] : *rel)
            if (a >= tiles.size() || b >= tiles.size()) throw Error("compatibility pair uses an unknown tile");
}

std::size_t DominoSystem::tile(std::string_view name) const {
    auto it = std::find(tiles.begin(), tiles.end(), name);
    if (it == tiles.end()) throw Error("unknown tile '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - tiles.begin());
}

DominoSystem DominoSystem::from_names(std::vector<std::string> tiles,
                                      const std::vector<std::pair<std::string, std::string>>& h,
                                      const std::vector<std::pair<std::string, std::string>>& v) {
    DominoSystem d;
    d.tiles = std::move(tiles);
    for (const auto& [a, b] : h) d.horizontal.emplace(d.tile(a), d.tile(b));
    for (const auto& [a, b] : v) d.vertical.emplace(d.tile(a), d.tile(b));
    d.validate();
    return d;
}

bool is_torus_tiling(const DominoSystem& d, int e, const Tiling& tiling) {
    if (e < 1 || tiling.size() != static_cast<std::size_t>(e * e)) return false;
    for (int y = 0; y < e; ++y)
        for (int x = 0; x < e; ++x) {
            const auto t = tiling[y * e + x];
            if (!d.horizontal.count({t, tiling[y * e + (x + 1) % e]})) return false;
            if (!d.vertical.count({t, tiling[((y + 1) % e) * e + x]})) return false;
        }
    return true;
}

std::optional<Tiling> tile_torus(const DominoSystem& d, int e) {
    d.validate();
    if (e < 1) throw Error("torus size must be >= 1");
    const std::size_t cells = static_cast<std::size_t>(e * e);
    Tiling tiling(cells, 0);
    // Row-major backtracking; wrap-around constraints are checked once both
    // ends are placed.
    auto fits = [&](std::size_t i) {
        const int x = static_cast<int>(i) % e, y = static_cast<int>(i) / e;
        const auto t = tiling[i];
        if (x > 0 && !d.horizontal.count({tiling[i - 1], t})) return false;
        if (x == e - 1 && !d.horizontal.count({t, tiling[y * e]})) return false;
        if (y > 0 && !d.vertical.count({tiling[i - e], t})) return false;
        if (y == e - 1 && !d.vertical.count({t, tiling[x]})) return false;
        return true;
    };
    std::size_t i = 0;
    bool fresh = true;
    for (;;) {
        if (fresh) tiling[i] = 0;
        else if (++tiling[i] == d.tiles.size()) {
            if (i == 0) return std::nullopt;
            --i;
            fresh = false;
            continue;
        }
        if (fits(i)) {
            if (++i == cells) return tiling;
            fresh = true;
        } else {
            fresh = false;
        }
    }
}

ReductionTarget parse_target(std::string_view text) {
    if (text == "global") return ReductionTarget::global;
    if (text == "local") return ReductionTarget::local;
    throw Error("unknown reduction target '" + std::string(text) + "' (expected global or local)");
}

std::string domino_props::tile(std::string_view name) { return "tile_" + std::string(name); }

Formula domino_formula(const DominoSystem& d) {
    d.validate();
    using F = Formula;
    namespace dp = domino_props;
    const F is_p = F::var(std::string(dp::is_p)), is_u = F::var(std::string(dp::is_u));
    const F is_s = F::var(std::string(dp::is_s)), is_t = F::var(std::string(dp::is_t));
    const F a = F::var(std::string(dp::par_a)), b = F::var(std::string(dp::par_b));
    std::vector<F> tile;
    for (const auto& t : d.tiles) tile.push_back(F::var(dp::tile(t)));

    auto exactly_one = [](const std::vector<F>& xs) {
        std::vector<F> parts{disjoin(xs)};
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) parts.push_back(!(xs[i] & xs[j]));
        return conjoin(parts);
    };
    auto parity = [&](bool pa, bool pb) { return (pa ? a : !a) & (pb ? b : !b); };
    auto any_tile = [&](const std::set<std::size_t>& ts) {
        std::vector<F> parts;
        for (auto t : ts) parts.push_back(tile[t]);
        return disjoin(parts);
    };

    std::vector<F> conjuncts;
    conjuncts.push_back(exactly_one({is_p, is_u, is_s, is_t}));
    conjuncts.push_back(F::implication(is_p, exactly_one(tile)));
    {
        std::vector<F> none;
        for (const auto& t : tile) none.push_back(!t);
        conjuncts.push_back(F::implication(!is_p, conjoin(none)));
    }
    conjuncts.push_back(F::implication(is_t, F::box(1, F::bottom()) & F::box(2, F::bottom())));

    for (bool pa : {false, true}) {
        for (bool pb : {false, true}) {
            const int colour = pa != pb ? 1 : 0;
            const int own = colour == 0 ? 1 : 2;  // relation of the P-world edges
            const int gadget = 3 - own;           // relation of the U/S edges
            const F here = parity(pa, pb);
            const F right = is_p & parity(!pa, pb);
            const F up = is_p & parity(pa, !pb);
            const F diag = is_p & parity(!pa, !pb);
            const F u = is_u & here, s = is_s & here, t = is_t & here;

            conjuncts.push_back(F::implication(
                is_p & here, conjoin({F::diamond(own, right), F::diamond(own, up), F::diamond(own, u),
                                      F::box(own, disjoin({right, up, u})), F::box(gadget, F::bottom())})));
            conjuncts.push_back(F::implication(
                is_u & here, conjoin({F::diamond(gadget, diag), F::diamond(gadget, s), F::diamond(gadget, t),
                                      F::box(gadget, disjoin({diag, s, t})), F::box(own, F::bottom())})));
            conjuncts.push_back(F::implication(
                is_s & here, conjoin({F::diamond(gadget, t), F::box(gadget, t), F::box(own, F::bottom())})));

            for (std::size_t ti = 0; ti < d.tiles.size(); ++ti) {
                std::set<std::size_t> h, v, via_right, via_up;
                for (auto [x, y] : d.horizontal)
                    if (x == ti) h.insert(y);
                for (auto [x, y] : d.vertical)
                    if (x == ti) v.insert(y);
                for (auto r : h)
                    for (auto [x, y] : d.vertical)
                        if (x == r) via_right.insert(y);
                for (auto up_tile : v)
                    for (auto [x, y] : d.horizontal)
                        if (x == up_tile) via_up.insert(y);
                std::set<std::size_t> diagonal;
                std::set_intersection(via_right.begin(), via_right.end(), via_up.begin(), via_up.end(),
                                      std::inserter(diagonal, diagonal.begin()));
                conjuncts.push_back(F::implication(
                    is_p & here & tile[ti],
                    conjoin({F::box(own, F::implication(right, any_tile(h))),
                             F::box(own, F::implication(up, any_tile(v))),
                             F::box(own, F::implication(u, F::box(gadget, F::implication(diag, any_tile(diagonal)))))})));
            }
        }
    }
    return conjoin(conjuncts);
}

Reduction reduce(const DominoSystem& d, ReductionTarget target, MidConvention mid, int n, int m) {
    const Formula phi_d = domino_formula(d);
    if (target == ReductionTarget::global) return {build_phi(n, m, mid), phi_d};
    return {build_phi_prime(n, m, mid),
            conjoin({Formula::diamond(1, Formula::top()), Formula::diamond(2, Formula::top()), Formula::box(1, phi_d)})};
}

KripkeStructure label_torus(const DominoSystem& d, int e, const Tiling& tiling) {
    d.validate();
    if (tiling.size() != static_cast<std::size_t>(e * e)) throw Error("tiling size does not match the torus");
    KripkeStructure m = grid_model({e, Topology::torus, Decoding::thick_r1});
    namespace dp = domino_props;
    for (int x = 0; x < e; ++x) {
        for (int y = 0; y < e; ++y) {
            auto label = [&](char sort, std::string_view marker) {
                const WorldId w = m.world(grid_world(sort, x, y));
                m.add_label(w, std::string(marker));
                if (x % 2) m.add_label(w, std::string(dp::par_a));
                if (y % 2) m.add_label(w, std::string(dp::par_b));
                return w;
            };
            const WorldId p = label('P', dp::is_p);
            m.add_label(p, dp::tile(d.tiles.at(tiling[y * e + x])));
            label('U', dp::is_u);
            label('S', dp::is_s);
            label('T', dp::is_t);
        }
    }
    return m;
}

}  // namespace mmlogic
