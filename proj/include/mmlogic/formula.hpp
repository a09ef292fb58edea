#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace mmlogic {

enum class Op { var, top, bottom, negation, conjunction, disjunction, implication, equivalence, diamond, box };

/// Immutable multimodal formula. Copies share the underlying tree.
class Formula {
public:
    static Formula var(std::string name);
    static Formula top();
    static Formula bottom();
    static Formula negation(Formula child);
    static Formula conjunction(Formula left, Formula right);
    static Formula disjunction(Formula left, Formula right);
    static Formula implication(Formula left, Formula right);
    static Formula equivalence(Formula left, Formula right);
    /// Throws std::invalid_argument when relation < 1.
    static Formula diamond(int relation, Formula child);
    static Formula box(int relation, Formula child);

    Op op() const { return node_->op; }
    const std::string& name() const { return node_->name; }
    int relation() const { return node_->relation; }
    Formula child() const { return Formula(node_->left); }
    Formula left() const { return Formula(node_->left); }
    Formula right() const { return Formula(node_->right); }
    std::size_t arity() const;

    /// Number of AST nodes.
    std::size_t size() const { return node_->size; }
    /// Largest relation index used by any modal operator, 0 if none.
    int max_relation() const { return node_->max_relation; }

    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
        return compare(a, b) <=> 0;
    }

private:
    struct Node {
        Op op;
        std::string name;
        int relation = 0;
        std::shared_ptr<const Node> left, right;
        std::size_t size = 1;
        int max_relation = 0;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Op op, std::string name, int relation, const Formula* left, const Formula* right);
    static int compare(const Formula& a, const Formula& b);

    std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);

/// Conjunction/disjunction over a list; the empty list gives top/bottom.
Formula conjoin(const std::vector<Formula>& parts);
Formula disjoin(const std::vector<Formula>& parts);

/// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula& f);

/// Proposition names occurring in f, sorted.
std::vector<std::string> propositions(const Formula& f);

/// Subformula DAG with shared nodes collapsed. Node ids are topologically
/// ordered: every child id is smaller than its parent's.
struct FormulaDag {
    struct Node {
        Op op;
        std::string name;
        int relation = 0;
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;
    std::vector<Formula> formulas;
    int root = -1;

    static FormulaDag compile(const Formula& f);
    /// Compiles several formulas into one DAG; returns their ids.
    static FormulaDag compile(const std::vector<Formula>& roots, std::vector<int>& ids);
    std::size_t size() const { return nodes.size(); }
};

}  // namespace mmlogic
