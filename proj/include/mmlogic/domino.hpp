#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmlogic/constructions.hpp"
#include "mmlogic/formula.hpp"
#include "mmlogic/kripke.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

/// Tile set T with horizontal (left, right) and vertical (below, above)
/// compatibility relations, stored as tile indices.
struct DominoSystem {
    std::vector<std::string> tiles;
    std::set<std::pair<std::size_t, std::size_t>> horizontal, vertical;

    /// Throws Error if T is empty, a tile name repeats or is not an
    /// identifier, or a pair references an unknown tile.
    void validate() const;
    std::size_t tile(std::string_view name) const;

    static DominoSystem from_names(std::vector<std::string> tiles,
                                   const std::vector<std::pair<std::string, std::string>>& h,
                                   const std::vector<std::pair<std::string, std::string>>& v);
};

/// Tiles of an e x e torus, row-major: tiling[y * e + x].
using Tiling = std::vector<std::size_t>;

/// Exhaustive backtracking over all tile assignments of the e x e torus.
std::optional<Tiling> tile_torus(const DominoSystem& d, int e);
bool is_torus_tiling(const DominoSystem& d, int e, const Tiling& tiling);

enum class ReductionTarget { global, local };
ReductionTarget parse_target(std::string_view text);

struct Reduction {
    FrameTheory theory;
    Formula formula;
};

/// Proposition names used by the encoding.
namespace domino_props {
inline constexpr std::string_view is_p = "is_p", is_u = "is_u", is_s = "is_s", is_t = "is_t";
inline constexpr std::string_view par_a = "par_a", par_b = "par_b";
std::string tile(std::string_view name);
}  // namespace domino_props

/// The grid-shaped constraint phi_D. Cells of colour a xor b = 0 use R1 for
/// the P-world edges and R2 for the gadget, colour 1 the reverse.
Formula domino_formula(const DominoSystem& d);

/// global: (Phi(n,m), phi_D). local: (Phi'(n,m), <1>true & <2>true & [1]phi_D).
Reduction reduce(const DominoSystem& d, ReductionTarget target, MidConvention mid = MidConvention::fixed_r2,
                 int n = 2, int m = 0);

/// The e x e torus grid model (thick=R1) labelled with sorts, cell parities
/// and the tiles of a torus tiling.
KripkeStructure label_torus(const DominoSystem& d, int e, const Tiling& tiling);

}  // namespace mmlogic
