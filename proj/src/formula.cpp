#include "mmlogic/formula.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace mmlogic {

namespace {

// Binding strength used by the printer; must mirror the parser.
int precedence(Op op) {
    switch (op) {
    case Op::equivalence: return 1;
    case Op::implication: return 2;
    case Op::disjunction: return 3;
    case Op::conjunction: return 4;
    case Op::negation:
    case Op::diamond:
    case Op::box: return 5;
    default: return 6;
    }
}

const char* symbol(Op op) {
    switch (op) {
    case Op::equivalence: return " <-> ";
    case Op::implication: return " -> ";
    case Op::disjunction: return " | ";
    case Op::conjunction: return " & ";
    default: return "";
    }
}

void print(const Formula& f, int required, std::string& out) {
    const int prec = precedence(f.op());
    const bool parens = prec < required;
    if (parens) out += '(';
    switch (f.op()) {
    case Op::var: out += f.name(); break;
    case Op::top: out += "true"; break;
    case Op::bottom: out += "false"; break;
    case Op::negation:
        out += '~';
        print(f.child(), prec, out);
        break;
    case Op::diamond:
    case Op::box:
        out += f.op() == Op::diamond ? '<' : '[';
        out += std::to_string(f.relation());
        out += f.op() == Op::diamond ? '>' : ']';
        print(f.child(), prec, out);
        break;
    default: {
        // -> is right-associative, the other binary connectives associate left.
        const bool right_assoc = f.op() == Op::implication;
        print(f.left(), right_assoc ? prec + 1 : prec, out);
        out += symbol(f.op());
        print(f.right(), right_assoc ? prec : prec + 1, out);
    }
    }
    if (parens) out += ')';
}

}  // namespace

Formula Formula::make(Op op, std::string name, int relation, const Formula* left, const Formula* right) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->name = std::move(name);
    node->relation = relation;
    node->max_relation = relation;
    if (left) {
        node->left = left->node_;
        node->size += left->size();
        node->max_relation = std::max(node->max_relation, left->max_relation());
    }
    if (right) {
        node->right = right->node_;
        node->size += right->size();
        node->max_relation = std::max(node->max_relation, right->max_relation());
    }
    return Formula(std::move(node));
}

Formula Formula::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("proposition name must be nonempty");
    return make(Op::var, std::move(name), 0, nullptr, nullptr);
}
Formula Formula::top() { return make(Op::top, {}, 0, nullptr, nullptr); }
Formula Formula::bottom() { return make(Op::bottom, {}, 0, nullptr, nullptr); }
Formula Formula::negation(Formula child) { return make(Op::negation, {}, 0, &child, nullptr); }
Formula Formula::conjunction(Formula l, Formula r) { return make(Op::conjunction, {}, 0, &l, &r); }
Formula Formula::disjunction(Formula l, Formula r) { return make(Op::disjunction, {}, 0, &l, &r); }
Formula Formula::implication(Formula l, Formula r) { return make(Op::implication, {}, 0, &l, &r); }
Formula Formula::equivalence(Formula l, Formula r) { return make(Op::equivalence, {}, 0, &l, &r); }

Formula Formula::diamond(int relation, Formula child) {
    if (relation < 1) throw std::invalid_argument("relation index must be >= 1");
    return make(Op::diamond, {}, relation, &child, nullptr);
}

Formula Formula::box(int relation, Formula child) {
    if (relation < 1) throw std::invalid_argument("relation index must be >= 1");
    return make(Op::box, {}, relation, &child, nullptr);
}

std::size_t Formula::arity() const {
    if (!node_->left) return 0;
    return node_->right ? 2 : 1;
}

std::string Formula::to_string() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    if (a.relation() != b.relation()) return a.relation() < b.relation() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    const std::size_t n = a.arity();
    if (n >= 1) {
        if (int c = compare(a.left(), b.left()); c != 0) return c;
    }
    if (n == 2) return compare(a.right(), b.right());
    return 0;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }

Formula conjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::top();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = acc & parts[i];
    return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::bottom();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = acc | parts[i];
    return acc;
}

namespace {

struct DagBuilder {
    using Key = std::tuple<Op, std::string, int, int, int>;
    FormulaDag dag;
    std::map<Key, int> ids;

    int add(const Formula& f) {
        int l = -1, r = -1;
        if (f.arity() >= 1) l = add(f.left());
        if (f.arity() == 2) r = add(f.right());
        Key key{f.op(), f.name(), f.relation(), l, r};
        if (auto it = ids.find(key); it != ids.end()) return it->second;
        const int id = static_cast<int>(dag.nodes.size());
        dag.nodes.push_back({f.op(), f.name(), f.relation(), l, r});
        dag.formulas.push_back(f);
        ids.emplace(std::move(key), id);
        return id;
    }
};

}  // namespace

FormulaDag FormulaDag::compile(const Formula& f) {
    DagBuilder b;
    b.dag.root = b.add(f);
    return std::move(b.dag);
}

FormulaDag FormulaDag::compile(const std::vector<Formula>& roots, std::vector<int>& ids) {
    DagBuilder b;
    ids.clear();
    for (const auto& f : roots) ids.push_back(b.add(f));
    b.dag.root = ids.empty() ? -1 : ids.back();
    return std::move(b.dag);
}

std::vector<Formula> subformulas(const Formula& f) { return FormulaDag::compile(f).formulas; }

std::vector<std::string> propositions(const Formula& f) {
    std::set<std::string> names;
    for (const auto& node : FormulaDag::compile(f).nodes)
        if (node.op == Op::var) names.insert(node.name);
    return {names.begin(), names.end()};
}

}  // namespace mmlogic
