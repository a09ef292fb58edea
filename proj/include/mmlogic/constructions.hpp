#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mmlogic/chase.hpp"
#include "mmlogic/frame_check.hpp"
#include "mmlogic/kripke.hpp"
#include "mmlogic/theory.hpp"

namespace mmlogic {

/// Reading of the mid_i(u) gadget: a 2-step path u -> s -> t via R_i
/// (indexed) or always via R_2 (fixed).
enum class MidConvention { indexed, fixed_r2 };

/// "A"/"B" <-> MidConvention. Throws Error on other input.
MidConvention parse_mid(std::string_view text);
std::string_view to_string(MidConvention c);

/// Theory Phi over n free and m transitive relations: the two confluence
/// clauses, R_2 transitivity if n < 2, R_1 transitivity if n == 0, and
/// transitivity of every further R_i with i > n. Throws Error unless n+m > 1.
FrameTheory build_phi(int n, int m, MidConvention mid = MidConvention::fixed_r2);
/// Phi plus x R1 y, x R2 y, z R1 v -> x R1 v.
FrameTheory build_phi_prime(int n, int m, MidConvention mid = MidConvention::fixed_r2);

enum class Topology { patch, torus };
/// Which relation the figure's thick edges denote; dashed edges get the other.
enum class Decoding { thick_r1, thick_r2 };

Topology parse_topology(std::string_view text);
std::string_view to_string(Topology t);
/// Accepts "thick=R1"/"thick=R2" (also "R1"/"R2").
Decoding parse_decoding(std::string_view text);
std::string_view to_string(Decoding d);

struct GridModelSpec {
    int k = 3;
    Topology topology = Topology::patch;
    Decoding decoding = Decoding::thick_r1;

    /// Throws Error if k < 1 or a torus has odd k.
    void validate() const;
};

std::string grid_world(char sort, int x, int y);

/// k x k cells of the grid gadget: worlds P/U/S/T per cell (a patch also
/// has the border P worlds), nine edges per cell with duplicates merged,
/// thick/dashed style alternating with cell parity. Empty valuation.
KripkeStructure grid_model(const GridModelSpec& spec);

struct TheoryCheck {
    std::string name;
    FrameTheory theory;
    FrameCheckResult result;
    /// Saturation delta when the grid is not closed.
    std::vector<Derivation> delta;
};

struct SamePath {
    int relation;
    std::array<WorldId, 3> worlds;
};

struct FigureReport {
    GridModelSpec spec;
    MidConvention mid;
    KripkeStructure grid;
    std::vector<TheoryCheck> checks;
    /// Every a -> b -> c with both steps in the same relation.
    std::vector<SamePath> two_step_paths;
    bool has_three_step_path = false;
    bool single_relation_out_edges = true;
    /// Worlds x with some y such that x R1 y and x R2 y (clause-5 premise).
    std::size_t shared_successor_worlds = 0;

    bool all_models() const;
    bool only_gadget_paths() const;
    std::string render() const;
};

/// Checks the grid against Phi(2,0), Phi(1,1), Phi(0,2) and the primed
/// variants, lists same-relation 2-step paths, and saturates on failure.
FigureReport verify_figure(const GridModelSpec& spec, MidConvention mid);

/// Repeatedly removes worlds other than root without incoming edges.
/// Throws ModelError for an unknown root.
KripkeStructure prune_no_predecessor(const KripkeStructure& m, std::string_view root);

/// "R<i>(a,b)" with world names.
std::string describe_pair(const KripkeStructure& m, int relation, WorldId a, WorldId b);
std::string describe_assignment(const KripkeStructure& m, const HornClause& c, const Assignment& a);

}  // namespace mmlogic
