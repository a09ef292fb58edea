#include "mmlogic/cli.hpp"

#include <cstdlib>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmlogic/chase.hpp"
#include "mmlogic/constructions.hpp"
#include "mmlogic/domino.hpp"
#include "mmlogic/error.hpp"
#include "mmlogic/frame_check.hpp"
#include "mmlogic/io.hpp"
#include "mmlogic/model_check.hpp"
#include "mmlogic/parser.hpp"
#include "mmlogic/solver.hpp"

namespace mmlogic {

namespace {

using nlohmann::json;

constexpr int exit_positive = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

double default_budget() {
    if (const char* env = std::getenv("MMLOGIC_TIME_BUDGET")) {
        try {
            const double v = std::stod(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 60.0;
}

KripkeStructure load_structure(const std::string& path) { return structure_from_json(json::parse(read_file(path))); }

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") out << content;
    else write_file(path, content);
}

json clause_json(const KripkeStructure& m, const FrameTheory& t, std::size_t ci, const Assignment& a) {
    const auto& c = t.clauses[ci];
    json asg = json::object();
    for (std::size_t i = 0; i < c.variables.size(); ++i) asg[c.variables[i]] = m.world_name(a[i]);
    return {{"clause", ci + 1}, {"label", c.label}, {"text", c.to_string()}, {"assignment", asg}};
}

std::string clause_name(const FrameTheory& t, std::size_t ci) {
    return t.clauses[ci].label.empty() ? "clause " + std::to_string(ci + 1) : t.clauses[ci].label;
}

struct Options {
    bool json_out = false;
    // check
    std::string structure, formula, theory, world, output, domino;
    bool global = false, inline_formula = false, show_type = false;
    // gen-phi
    int n = 2, m = 0;
    bool prime = false;
    std::string mid = "B";
    // gen-grid / verify-figure
    int k = 3;
    std::string topology = "patch", decoding = "thick=R1";
    bool dot = false;
    // reduce
    std::string target = "global", theory_out, formula_out;
    // solve
    std::string mode = "local", engine = "propositional", anchor, verdict_out;
    int max_worlds = 4;
    std::uint64_t seed = 0;
    double budget = 60.0;
    // prune / tile-torus
    std::string root;
    int e = 2;
};

Formula load_formula(const Options& o) {
    return parse_formula(o.inline_formula ? o.formula : read_file(o.formula));
}

int cmd_check(const Options& o, std::ostream& out) {
    const KripkeStructure m = load_structure(o.structure);
    const Formula f = load_formula(o);
    const FormulaDag dag = FormulaDag::compile(f);
    const auto table = evaluate(m, dag);
    const auto& root = table[static_cast<std::size_t>(dag.root)];
    if (!o.world.empty() && !o.global) {
        const WorldId w = m.world(o.world);
        const bool holds = root[w];
        if (o.json_out) {
            json j{{"mode", "local"}, {"world", o.world}, {"holds", holds}};
            if (o.show_type) {
                json tp = json::array();
                for (std::size_t id = 0; id < dag.size(); ++id)
                    if (table[id][w]) tp.push_back(dag.formulas[id].to_string());
                j["type"] = tp;
            }
            out << j.dump(2) << "\n";
        } else {
            out << "local " << o.world << ": " << (holds ? "true" : "false") << "\n";
            if (o.show_type)
                for (std::size_t id = 0; id < dag.size(); ++id)
                    if (table[id][w]) out << "  " << dag.formulas[id].to_string() << "\n";
        }
        return holds ? exit_positive : exit_negative;
    }
    std::vector<std::string> failing;
    for (WorldId w = 0; w < m.world_count(); ++w)
        if (!root[w]) failing.push_back(m.world_name(w));
    if (o.json_out) {
        out << json{{"mode", "global"}, {"holds", failing.empty()}, {"failing_worlds", failing}}.dump(2) << "\n";
    } else {
        out << "global: " << (failing.empty() ? "true" : "false") << "\n";
        if (!failing.empty()) out << "  first failing world: " << failing.front() << "\n";
    }
    return failing.empty() ? exit_positive : exit_negative;
}

int cmd_frame_check(const Options& o, std::ostream& out) {
    const KripkeStructure m = load_structure(o.structure);
    const FrameTheory t = parse_theory(read_file(o.theory));
    const auto r = check_frame_condition(m, t);
    if (o.json_out) {
        json j{{"holds", r.holds}};
        if (r.counterexample)
            j["counterexample"] = clause_json(m, t, r.counterexample->clause_index, r.counterexample->assignment);
        out << j.dump(2) << "\n";
    } else {
        out << "frame condition: " << (r.holds ? "holds" : "violated") << "\n";
        if (r.counterexample) {
            const auto& v = *r.counterexample;
            out << "  " << clause_name(t, v.clause_index) << ": " << t.clauses[v.clause_index].to_string() << "\n";
            out << "  witness: " << describe_assignment(m, t.clauses[v.clause_index], v.assignment) << "\n";
        }
    }
    return r.holds ? exit_positive : exit_negative;
}

int cmd_chase(const Options& o, std::ostream& out) {
    const KripkeStructure m = load_structure(o.structure);
    const FrameTheory t = parse_theory(read_file(o.theory));
    const ChaseResult r = saturate(m, t);
    json added = json::array();
    for (const auto& d : r.added) {
        json entry = clause_json(r.structure, t, d.clause_index, d.assignment);
        entry["pair"] = {"R" + std::to_string(d.relation), r.structure.world_name(d.from), r.structure.world_name(d.to)};
        entry["round"] = d.round;
        added.push_back(std::move(entry));
    }
    if (!o.output.empty()) write_file(o.output, structure_to_json(r.structure).dump(2) + "\n");
    if (o.json_out) {
        json j{{"added", added}, {"closed_input", r.added.empty()}};
        if (o.output.empty()) j["structure"] = structure_to_json(r.structure);
        out << j.dump(2) << "\n";
        return exit_positive;
    }
    out << "added pairs: " << r.added.size() << "\n";
    for (const auto& d : r.added)
        out << "  + " << describe_pair(r.structure, d.relation, d.from, d.to) << " by " << clause_name(t, d.clause_index)
            << " [" << describe_assignment(r.structure, t.clauses[d.clause_index], d.assignment) << "] round "
            << d.round << "\n";
    return exit_positive;
}

int cmd_gen_phi(const Options& o, std::ostream& out) {
    const MidConvention mid = parse_mid(o.mid);
    const FrameTheory t = o.prime ? build_phi_prime(o.n, o.m, mid) : build_phi(o.n, o.m, mid);
    if (o.json_out) {
        json clauses = json::array();
        for (const auto& c : t.clauses) clauses.push_back(c.to_string());
        out << json{{"n", o.n}, {"m", o.m}, {"clauses", clauses}}.dump(2) << "\n";
        if (!o.output.empty()) write_file(o.output, t.to_string());
        return exit_positive;
    }
    emit(out, o.output, t.to_string());
    return exit_positive;
}

int cmd_gen_grid(const Options& o, std::ostream& out) {
    const KripkeStructure g = grid_model({o.k, parse_topology(o.topology), parse_decoding(o.decoding)});
    if (o.dot) {
        emit(out, o.output, structure_to_dot(g));
        return exit_positive;
    }
    const std::string text = structure_to_json(g).dump(2) + "\n";
    if (o.output.empty() || o.output == "-") {
        out << text;
    } else {
        write_file(o.output, text);
        if (o.json_out)
            out << json{{"worlds", g.world_count()}, {"edges", g.edge_count()}}.dump() << "\n";
        else
            out << "worlds: " << g.world_count() << "\nedges: " << g.edge_count() << "\n";
    }
    return exit_positive;
}

int cmd_verify_figure(const Options& o, std::ostream& out) {
    const FigureReport r =
        verify_figure({o.k, parse_topology(o.topology), parse_decoding(o.decoding)}, parse_mid(o.mid));
    if (o.json_out) {
        json checks = json::array();
        for (const auto& c : r.checks) {
            json entry{{"theory", c.name}, {"model", c.result.holds}};
            if (c.result.counterexample)
                entry["counterexample"] =
                    clause_json(r.grid, c.theory, c.result.counterexample->clause_index, c.result.counterexample->assignment);
            json delta = json::array();
            for (const auto& d : c.delta) {
                json de = clause_json(r.grid, c.theory, d.clause_index, d.assignment);
                de["pair"] = {"R" + std::to_string(d.relation), r.grid.world_name(d.from), r.grid.world_name(d.to)};
                de["round"] = d.round;
                delta.push_back(std::move(de));
            }
            entry["delta"] = std::move(delta);
            checks.push_back(std::move(entry));
        }
        json paths = json::array();
        for (const auto& p : r.two_step_paths)
            paths.push_back({"R" + std::to_string(p.relation), r.grid.world_name(p.worlds[0]),
                             r.grid.world_name(p.worlds[1]), r.grid.world_name(p.worlds[2])});
        out << json{{"worlds", r.grid.world_count()},
                    {"edges", r.grid.edge_count()},
                    {"checks", checks},
                    {"two_step_paths", paths},
                    {"only_gadget_paths", r.only_gadget_paths()},
                    {"single_relation_out_edges", r.single_relation_out_edges},
                    {"clause5_premise_worlds", r.shared_successor_worlds}}
                   .dump(2)
            << "\n";
    } else {
        out << r.render();
    }
    return r.all_models() ? exit_positive : exit_negative;
}

int cmd_reduce(const Options& o, std::ostream& out) {
    const DominoSystem d = domino_from_json(json::parse(read_file(o.domino)));
    const Reduction r = reduce(d, parse_target(o.target), parse_mid(o.mid), o.n, o.m);
    const std::string theory = r.theory.to_string();
    const std::string formula = r.formula.to_string() + "\n";
    if (!o.theory_out.empty()) write_file(o.theory_out, theory);
    if (!o.formula_out.empty()) write_file(o.formula_out, formula);
    if (o.json_out) {
        out << json{{"theory", theory}, {"formula", r.formula.to_string()}, {"formula_size", r.formula.size()}}.dump(2)
            << "\n";
    } else if (o.theory_out.empty() || o.formula_out.empty()) {
        if (o.theory_out.empty()) out << theory;
        if (o.formula_out.empty()) out << formula;
    } else {
        out << "theory clauses: " << r.theory.clauses.size() << "\nformula size: " << r.formula.size() << "\n";
    }
    return exit_positive;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const Formula phi = load_formula(o);
    const FrameTheory t = parse_theory(read_file(o.theory));
    SolverConfig cfg;
    cfg.max_worlds = o.max_worlds;
    cfg.mode = parse_mode(o.mode);
    cfg.engine = parse_engine(o.engine);
    cfg.seed = o.seed;
    cfg.time_budget_seconds = o.budget;
    if (!o.anchor.empty()) cfg.anchor = parse_formula(o.inline_formula ? o.anchor : read_file(o.anchor));
    const SolveResult r = find_model(phi, t, cfg);
    const json verdict = verdict_to_json(r);
    if (!o.verdict_out.empty()) write_file(o.verdict_out, verdict.dump(2) + "\n");
    if (r.model && !o.output.empty()) write_file(o.output, structure_to_json(*r.model).dump(2) + "\n");
    if (o.json_out) {
        json j = verdict;
        if (r.model && o.output.empty()) j["model"] = structure_to_json(*r.model);
        out << j.dump(2) << "\n";
    } else {
        out << "status: " << to_string(r.status) << "\n";
        out << "worlds_explored: " << r.worlds_explored << "\n";
        out << "size: " << r.size << "\n";
        if (r.model) {
            out << "witness: " << r.witness << "\n";
            if (o.output.empty()) out << structure_to_json(*r.model).dump(2) << "\n";
        }
    }
    switch (r.status) {
    case SolveStatus::sat: return exit_positive;
    case SolveStatus::unsat_bounded: return exit_negative;
    case SolveStatus::timeout: return exit_error;
    }
    return exit_error;
}

int cmd_prune(const Options& o, std::ostream& out) {
    const KripkeStructure m = load_structure(o.structure);
    const KripkeStructure p = prune_no_predecessor(m, o.root);
    const std::string text = structure_to_json(p).dump(2) + "\n";
    if (o.output.empty() || o.output == "-") {
        out << text;
    } else {
        write_file(o.output, text);
        if (o.json_out)
            out << json{{"removed_worlds", m.world_count() - p.world_count()}}.dump() << "\n";
        else
            out << "removed worlds: " << m.world_count() - p.world_count() << "\n";
    }
    return exit_positive;
}

int cmd_tile_torus(const Options& o, std::ostream& out) {
    const DominoSystem d = domino_from_json(json::parse(read_file(o.domino)));
    const auto tiling = tile_torus(d, o.e);
    if (o.json_out) {
        json j{{"e", o.e}, {"tiles", tiling.has_value()}};
        if (tiling) {
            json rows = json::array();
            for (int y = 0; y < o.e; ++y) {
                json row = json::array();
                for (int x = 0; x < o.e; ++x) row.push_back(d.tiles[(*tiling)[static_cast<std::size_t>(y * o.e + x)]]);
                rows.push_back(std::move(row));
            }
            j["tiling"] = std::move(rows);
        }
        out << j.dump(2) << "\n";
    } else if (tiling) {
        out << "tiling: yes\n";
        for (int y = o.e - 1; y >= 0; --y) {
            for (int x = 0; x < o.e; ++x)
                out << (x ? " " : "  ") << d.tiles[(*tiling)[static_cast<std::size_t>(y * o.e + x)]];
            out << "\n";
        }
    } else {
        out << "tiling: none\n";
    }
    return tiling ? exit_positive : exit_negative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    o.budget = default_budget();
    CLI::App app{"Workbench for elementary multimodal logics over Horn frame theories", "mmlogic"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json_out, "Machine-readable output");

    auto* check = app.add_subcommand("check", "Model-check a formula on a structure");
    check->add_option("structure", o.structure, "Structure file (JSON)")->required();
    check->add_option("formula", o.formula, "Formula file")->required();
    check->add_option("--world", o.world, "Check locally at this world");
    check->add_flag("--global", o.global, "Check at every world (default without --world)");
    check->add_flag("--inline", o.inline_formula, "Treat the formula argument as formula text");
    check->add_flag("--type", o.show_type, "Print the subformulas true at --world");

    auto* frame = app.add_subcommand("frame-check", "Check a structure's frame against a Horn theory");
    frame->add_option("structure", o.structure)->required();
    frame->add_option("theory", o.theory)->required();

    auto* chase = app.add_subcommand("chase", "Saturate a structure under a Horn theory");
    chase->add_option("structure", o.structure)->required();
    chase->add_option("theory", o.theory)->required();
    chase->add_option("-o,--output", o.output, "Write the saturated structure here");

    auto* gen_phi = app.add_subcommand("gen-phi", "Generate the theory Phi(n,m) or Phi'(n,m)");
    gen_phi->add_option("--n", o.n, "Unconstrained relations")->required();
    gen_phi->add_option("--m", o.m, "Transitive relations")->required();
    gen_phi->add_flag("--prime", o.prime, "Add the fifth clause");
    gen_phi->add_option("--mid", o.mid, "mid_i reading: A (via R_i) or B (via R_2)");
    gen_phi->add_option("-o,--output", o.output);

    auto* gen_grid = app.add_subcommand("gen-grid", "Generate the grid model");
    gen_grid->add_option("--k", o.k, "Cells per side")->required();
    gen_grid->add_option("--topology", o.topology, "patch or torus");
    gen_grid->add_option("--decoding", o.decoding, "thick=R1 or thick=R2");
    gen_grid->add_flag("--dot", o.dot, "Emit DOT instead of JSON");
    gen_grid->add_option("-o,--output", o.output);

    auto* verify = app.add_subcommand("verify-figure", "Check the grid model against Phi and Phi'");
    verify->add_option("--k", o.k);
    verify->add_option("--mid", o.mid);
    verify->add_option("--decoding", o.decoding);
    verify->add_option("--topology", o.topology);

    auto* red = app.add_subcommand("reduce", "Encode a domino system");
    red->add_option("domino", o.domino, "Domino file (JSON)")->required();
    red->add_option("--target", o.target, "global or local");
    red->add_option("--mid", o.mid);
    red->add_option("--n", o.n);
    red->add_option("--m", o.m);
    red->add_option("--theory-out", o.theory_out);
    red->add_option("--formula-out", o.formula_out);

    auto* solve = app.add_subcommand("solve", "Bounded finite-model search");
    solve->add_option("formula", o.formula)->required();
    solve->add_option("theory", o.theory)->required();
    solve->add_flag("--inline", o.inline_formula, "Treat the formula argument as formula text");
    solve->add_option("--mode", o.mode, "local or global");
    solve->add_option("--max-worlds", o.max_worlds);
    solve->add_option("--engine", o.engine, "explicit or propositional");
    solve->add_option("--seed", o.seed);
    solve->add_option("--budget", o.budget, "Time budget in seconds (default $MMLOGIC_TIME_BUDGET or 60)");
    solve->add_option("--anchor", o.anchor, "Global mode: formula file that must hold at the witness");
    solve->add_option("-o,--output", o.output, "Write the model here");
    solve->add_option("--verdict-out", o.verdict_out, "Write the verdict record here");

    auto* prune = app.add_subcommand("prune", "Remove worlds without predecessors");
    prune->add_option("structure", o.structure)->required();
    prune->add_option("--root", o.root)->required();
    prune->add_option("-o,--output", o.output);

    auto* tile = app.add_subcommand("tile-torus", "Brute-force tiling of the e x e torus");
    tile->add_option("domino", o.domino)->required();
    tile->add_option("--e", o.e)->required();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (frame->parsed()) return cmd_frame_check(o, out);
        if (chase->parsed()) return cmd_chase(o, out);
        if (gen_phi->parsed()) return cmd_gen_phi(o, out);
        if (gen_grid->parsed()) return cmd_gen_grid(o, out);
        if (verify->parsed()) return cmd_verify_figure(o, out);
        if (red->parsed()) return cmd_reduce(o, out);
        if (solve->parsed()) return cmd_solve(o, out);
        if (prune->parsed()) return cmd_prune(o, out);
        if (tile->parsed()) return cmd_tile_torus(o, out);
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

}  // namespace mmlogic
