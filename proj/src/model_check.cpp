#include "mmlogic/model_check.hpp"

#include <algorithm>
#include <string>

#include "mmlogic/error.hpp"

namespace mmlogic {

TruthTable evaluate(const KripkeStructure& m, const FormulaDag& dag) {
    const std::size_t n = m.world_count();
    TruthTable table(dag.size(), std::vector<char>(n, 0));
    for (std::size_t id = 0; id < dag.size(); ++id) {
        const auto& node = dag.nodes[id];
        auto& out = table[id];
        switch (node.op) {
        case Op::var:
            for (WorldId w = 0; w < n; ++w) out[w] = m.holds(w, node.name);
            break;
        case Op::top: std::fill(out.begin(), out.end(), 1); break;
        case Op::bottom: break;
        case Op::negation:
            for (WorldId w = 0; w < n; ++w) out[w] = !table[node.left][w];
            break;
        case Op::conjunction:
            for (WorldId w = 0; w < n; ++w) out[w] = table[node.left][w] && table[node.right][w];
            break;
        case Op::disjunction:
            for (WorldId w = 0; w < n; ++w) out[w] = table[node.left][w] || table[node.right][w];
            break;
        case Op::implication:
            for (WorldId w = 0; w < n; ++w) out[w] = !table[node.left][w] || table[node.right][w];
            break;
        case Op::equivalence:
            for (WorldId w = 0; w < n; ++w) out[w] = table[node.left][w] == table[node.right][w];
            break;
        case Op::diamond:
        case Op::box: {
            const Relation& r = m.relation(node.relation);
            const auto& child = table[node.left];
            const bool dia = node.op == Op::diamond;
            for (WorldId w = 0; w < n; ++w) {
                bool v = !dia;
                for (WorldId s : r.successors(w)) {
                    if (dia && child[s]) { v = true; break; }
                    if (!dia && !child[s]) { v = false; break; }
                }
                out[w] = v;
            }
            break;
        }
        }
    }
    return table;
}

bool check_local(const KripkeStructure& m, WorldId w, const Formula& f) {
    if (w >= m.world_count()) throw ModelError("unknown world index " + std::to_string(w));
    const FormulaDag dag = FormulaDag::compile(f);
    return evaluate(m, dag)[dag.root][w];
}

bool check_local(const KripkeStructure& m, std::string_view world, const Formula& f) {
    return check_local(m, m.world(world), f);
}

bool check_global(const KripkeStructure& m, const Formula& f) {
    const FormulaDag dag = FormulaDag::compile(f);
    const auto table = evaluate(m, dag);
    for (char v : table[dag.root])
        if (!v) return false;
    return true;
}

std::vector<Formula> type_of(const KripkeStructure& m, std::string_view world, const Formula& f) {
    const WorldId w = m.world(world);
    const FormulaDag dag = FormulaDag::compile(f);
    const auto table = evaluate(m, dag);
    std::vector<Formula> out;
    for (std::size_t id = 0; id < dag.size(); ++id)
        if (table[id][w]) out.push_back(dag.formulas[id]);
    return out;
}

}  // namespace mmlogic
