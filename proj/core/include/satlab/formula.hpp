#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satlab/bitstring.hpp"

namespace satlab {

/// Largest variable count an Assignment can address.
inline constexpr unsigned kMaxVars = 64;
/// Largest variable count for exhaustive truth-table enumeration (2^24 bits).
inline constexpr unsigned kMaxTruthTableVars = 24;

enum class NodeKind : std::uint8_t { Var, Not, And, Or };

/// One node of a formula arena. For Var, `lhs` is the variable index and
/// `rhs` is unused; for Not only `lhs` is used.
struct Node {
  NodeKind kind;
  std::uint32_t lhs;
  std::uint32_t rhs;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Immutable Boolean expression over variables x0..x{n-1}.
///
/// Nodes are stored in post-order with the left subtree before the right one
/// and the root last. Every constructor preserves that layout, so two formulas
/// are structurally identical exactly when their arenas compare equal.
class Formula {
 public:
  static Formula variable(unsigned index, unsigned num_vars);
  static Formula negation(const Formula& child);
  static Formula conjunction(const Formula& lhs, const Formula& rhs);
  static Formula disjunction(const Formula& lhs, const Formula& rhs);

  unsigned num_vars() const noexcept { return num_vars_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::uint32_t root() const noexcept { return static_cast<std::uint32_t>(nodes_.size() - 1); }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  friend class FormulaBuilder;

  Formula(unsigned num_vars, std::vector<Node> nodes) : num_vars_(num_vars), nodes_(std::move(nodes)) {}
  static Formula binary(NodeKind kind, const Formula& lhs, const Formula& rhs);

  unsigned num_vars_ = 1;
  std::vector<Node> nodes_;
};

/// Input point of a formula. Variable x_j reads bit j of `value`; the string
/// form writes x_{n-1} first.
struct Assignment {
  std::uint64_t value = 0;
  unsigned n = 1;

  Assignment(std::uint64_t value, unsigned n);
  /// "110" is value 6 with n = 3.
  static Assignment from_string(std::string_view bits);
  std::string to_string() const;
  bool bit(unsigned j) const noexcept { return (value >> j) & 1u; }
};

/// Output string of an n-variable formula over all 2^n inputs in order.
struct TruthTable {
  BitString bits;
  unsigned n = 0;
  std::size_t ones_count = 0;
};

/// Grammar: expr := term ('|' term)* ; term := factor ('&' factor)* ;
/// factor := '!' factor | '(' expr ')' | 'x' digits. Whitespace is ignored.
/// Throws ParseError on malformed text, PreconditionError on x_j with j >= n.
Formula parse_formula(std::string_view text, unsigned num_vars);

/// Minimal-parenthesis rendering; parse_formula(render(f), n) == f.
std::string render(const Formula& f);

bool eval(const Formula& f, const Assignment& a);

/// Evaluates 64 assignments per machine word. Requires num_vars <= 24.
TruthTable truth_table(const Formula& f);

/// Conjunction of n literals, x_{n-1} first, negated where the bit is 0.
Formula minterm(const Assignment& a);

/// OR of the minterms of `targets` in ascending order. Throws on an empty set
/// or any target >= 2^n.
Formula plant_dnf(std::span<const std::uint64_t> targets, unsigned n);

/// f & (x0 | !x0) & ... & (x{n-1} | !x{n-1}): same truth table, larger formula.
Formula obfuscate_and_true(const Formula& f);

/// Recursive generator: budget 1 forces a variable, budget 2 forces Not,
/// otherwise Not/And/Or with weights 0.2/0.4/0.4 and a uniform split of the
/// remaining budget between binary children.
Formula random_formula(unsigned num_vars, std::size_t size_budget, std::uint64_t seed);

/// Description length of f in bits: 8 bits per character of render(f).
std::size_t formula_text_bits(const Formula& f);

}  // namespace satlab
