#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "folab/graph.hpp"

namespace folab {

/// Visited-assignment budget of eval; exceeding it throws CapExceeded.
inline constexpr std::size_t kEvalBudget = 1'000'000'000;

enum class Kind { Exists, Forall, Not, And, Or, Implies, Iff, Eq, Adj };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable FO formula node over = and ~. Subtrees are shared.
/// Quantifiers carry `var` and one child; atoms carry `lhs`, `rhs`;
/// And/Or hold two or more children, Implies/Iff exactly two, Not one.
class Formula {
public:
    Kind kind;
    std::string var;
    std::string lhs, rhs;
    std::vector<FormulaPtr> args;

    bool is_quantifier() const noexcept { return kind == Kind::Exists || kind == Kind::Forall; }
    bool is_atom() const noexcept { return kind == Kind::Eq || kind == Kind::Adj; }
};

namespace fo {
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr negate(FormulaPtr f);
/// n-ary; a single operand is returned unchanged, an empty list throws.
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr eq(std::string x, std::string y);
FormulaPtr adj(std::string x, std::string y);
} // namespace fo

/// Parses the concrete syntax:
///   formula := quant | iff          quant := ("E"|"A") var "." formula
///   iff := imp ("<->" imp)*         imp := or ("->" or)*
///   or := and ("|" and)*            and := unary ("&" unary)*
///   unary := "!" unary | "(" formula ")" | quant | atom
///   atom := var ("="|"~") var       var := [a-z][a-z0-9_]*
/// "->" associates to the right, "<->" to the left. A quantifier body
/// extends as far right as possible. Throws ParseError with line/column.
FormulaPtr parse_formula(std::string_view text);

/// As parse_formula but also rejects free variables, reporting the
/// position of the first unbound occurrence.
FormulaPtr parse_sentence(std::string_view text);

/// Inverse of parse_formula up to whitespace; parentheses only where needed.
std::string render(const Formula& f);
inline std::string render(const FormulaPtr& f) { return render(*f); }

std::set<std::string> free_variables(const Formula& f);

using Assignment = std::map<std::string, Vertex>;

/// g |= f[a]. Throws InvalidArgument on an unassigned free variable or a
/// value outside the graph, CapExceeded past kEvalBudget assignments.
bool eval(const Graph& g, const Formula& f, const Assignment& a = {});
inline bool eval(const Graph& g, const FormulaPtr& f, const Assignment& a = {}) { return eval(g, *f, a); }

/// Quantifier depth.
std::size_t depth(const Formula& f);

/// Negation normal form: Implies/Iff expanded, Not only on atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

/// Maximum number of Exists/Forall switches along a root-to-leaf path of
/// the NNF.
std::size_t alternation_number(const FormulaPtr& f);

/// Replaces each x~y by !(x~y) & !(x=y), so eval(complement(g), result)
/// equals eval(g, f).
FormulaPtr complement_formula(const FormulaPtr& f);

/// Number of nodes, counting shared subtrees once per occurrence.
std::size_t formula_size(const Formula& f);

} // namespace folab
