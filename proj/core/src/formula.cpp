#include "satlab/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

#include "satlab/errors.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// Appends nodes in post-order into a single arena. Callers emit a binary
/// node only after both of its subtrees, left first.
class FormulaBuilder {
 public:
  explicit FormulaBuilder(unsigned num_vars) : num_vars_(num_vars) {}

  std::uint32_t var(unsigned index) {
    if (index >= num_vars_) {
      throw PreconditionError("variable x" + std::to_string(index) + " out of range for n=" +
                              std::to_string(num_vars_));
    }
    return push({NodeKind::Var, index, 0});
  }
  std::uint32_t negate(std::uint32_t child) { return push({NodeKind::Not, child, 0}); }
  std::uint32_t binary(NodeKind kind, std::uint32_t lhs, std::uint32_t rhs) {
    return push({kind, lhs, rhs});
  }
  /// Copies an existing formula's arena as a subtree.
  std::uint32_t splice(const Formula& f) {
    const auto offset = static_cast<std::uint32_t>(nodes_.size());
    for (Node n : f.nodes()) {
      if (n.kind != NodeKind::Var) {
        n.lhs += offset;
        if (n.kind != NodeKind::Not) n.rhs += offset;
      }
      nodes_.push_back(n);
    }
    return offset + f.root();
  }

  Formula finish() && { return Formula(num_vars_, std::move(nodes_)); }

 private:
  std::uint32_t push(Node n) {
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  unsigned num_vars_;
  std::vector<Node> nodes_;
};

namespace {

void check_num_vars(unsigned n) {
  if (n < 1 || n > kMaxVars) {
    throw PreconditionError("variable count must be in [1, " + std::to_string(kMaxVars) + "], got " +
                            std::to_string(n));
  }
}

class Parser {
 public:
  Parser(std::string_view text, unsigned n) : text_(text), builder_(n), n_(n) {}

  Formula run() {
    parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return std::move(builder_).finish();
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint32_t parse_expr() {
    std::uint32_t lhs = parse_term();
    while (accept('|')) lhs = builder_.binary(NodeKind::Or, lhs, parse_term());
    return lhs;
  }
  std::uint32_t parse_term() {
    std::uint32_t lhs = parse_factor();
    while (accept('&')) lhs = builder_.binary(NodeKind::And, lhs, parse_factor());
    return lhs;
  }
  std::uint32_t parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected '!', '(' or variable, found end of input", pos_);
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return builder_.negate(parse_factor());
    }
    if (c == '(') {
      const std::size_t open = pos_++;
      const std::uint32_t inner = parse_expr();
      if (!accept(')')) {
        skip_ws();
        throw ParseError("missing ')' for '(' at offset " + std::to_string(open), pos_);
      }
      return inner;
    }
    if (c == 'x') {
      const std::size_t start = pos_++;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected digits after 'x'", pos_);
      }
      std::uint64_t index = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + static_cast<unsigned>(text_[pos_] - '0');
        if (index >= n_) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          throw ParseError("variable " + std::string(text_.substr(start, pos_ - start)) +
                               " out of range for n=" + std::to_string(n_),
                           start);
        }
        ++pos_;
      }
      return builder_.var(static_cast<unsigned>(index));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  FormulaBuilder builder_;
  unsigned n_;
};

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Or: return 0;
    case NodeKind::And: return 1;
    default: return 2;
  }
}

void render_node(std::span<const Node> nodes, std::uint32_t i, std::string& out) {
  const Node& node = nodes[i];
  auto child = [&](std::uint32_t c, bool parens) {
    if (parens) out += '(';
    render_node(nodes, c, out);
    if (parens) out += ')';
  };
  switch (node.kind) {
    case NodeKind::Var:
      out += 'x';
      out += std::to_string(node.lhs);
      break;
    case NodeKind::Not:
      out += '!';
      child(node.lhs, precedence(nodes[node.lhs].kind) < 2);
      break;
    case NodeKind::And:
    case NodeKind::Or: {
      const int own = precedence(node.kind);
      // Left-associative: the right operand needs parens at equal precedence.
      child(node.lhs, precedence(nodes[node.lhs].kind) < own);
      out += node.kind == NodeKind::And ? " & " : " | ";
      child(node.rhs, precedence(nodes[node.rhs].kind) <= own);
      break;
    }
  }
}

// Bit patterns of x0..x5 across a 64-assignment block.
constexpr std::array<std::uint64_t, 6> kLowVarMasks = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint32_t generate(FormulaBuilder& b, Rng& rng, unsigned n, std::size_t budget) {
  if (budget <= 1) return b.var(static_cast<unsigned>(rng.uniform_below(n)));
  if (budget == 2) return b.negate(generate(b, rng, n, 1));
  const double u = rng.uniform01();
  if (u < 0.2) return b.negate(generate(b, rng, n, budget - 1));
  const NodeKind kind = u < 0.6 ? NodeKind::And : NodeKind::Or;
  const std::size_t rest = budget - 1;
  const std::size_t left = rng.uniform_between(1, rest - 1);
  const std::uint32_t l = generate(b, rng, n, left);
  const std::uint32_t r = generate(b, rng, n, rest - left);
  return b.binary(kind, l, r);
}

}  // namespace

Formula Formula::variable(unsigned index, unsigned num_vars) {
  check_num_vars(num_vars);
  FormulaBuilder b(num_vars);
  b.var(index);
  return std::move(b).finish();
}

Formula Formula::negation(const Formula& child) {
  FormulaBuilder b(child.num_vars());
  b.negate(b.splice(child));
  return std::move(b).finish();
}

Formula Formula::binary(NodeKind kind, const Formula& lhs, const Formula& rhs) {
  if (lhs.num_vars() != rhs.num_vars()) {
    throw PreconditionError("operands declare different variable counts (" + std::to_string(lhs.num_vars()) +
                            " vs " + std::to_string(rhs.num_vars()) + ")");
  }
  FormulaBuilder b(lhs.num_vars());
  const std::uint32_t l = b.splice(lhs);
  const std::uint32_t r = b.splice(rhs);
  b.binary(kind, l, r);
  return std::move(b).finish();
}

Formula Formula::conjunction(const Formula& lhs, const Formula& rhs) { return binary(NodeKind::And, lhs, rhs); }
Formula Formula::disjunction(const Formula& lhs, const Formula& rhs) { return binary(NodeKind::Or, lhs, rhs); }

Assignment::Assignment(std::uint64_t v, unsigned num_vars) : value(v), n(num_vars) {
  check_num_vars(num_vars);
  if (num_vars < 64 && v >> num_vars != 0) {
    throw PreconditionError("assignment " + std::to_string(v) + " does not fit in " + std::to_string(num_vars) +
                            " bits");
  }
}

Assignment Assignment::from_string(std::string_view bits) {
  check_num_vars(static_cast<unsigned>(bits.size()));
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw ParseError("assignment must be '0'/'1'", i);
    v = (v << 1) | static_cast<std::uint64_t>(bits[i] == '1');
  }
  return Assignment(v, static_cast<unsigned>(bits.size()));
}

std::string Assignment::to_string() const {
  std::string out(n, '0');
  for (unsigned j = 0; j < n; ++j) {
    if (bit(j)) out[n - 1 - j] = '1';
  }
  return out;
}

Formula parse_formula(std::string_view text, unsigned num_vars) {
  check_num_vars(num_vars);
  return Parser(text, num_vars).run();
}

std::string render(const Formula& f) {
  std::string out;
  render_node(f.nodes(), f.root(), out);
  return out;
}

bool eval(const Formula& f, const Assignment& a) {
  if (a.n != f.num_vars()) {
    throw PreconditionError("assignment has n=" + std::to_string(a.n) + " but formula has n=" +
                            std::to_string(f.num_vars()));
  }
  const auto nodes = f.nodes();
  std::vector<std::uint8_t> value(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    switch (node.kind) {
      case NodeKind::Var: value[i] = a.bit(node.lhs); break;
      case NodeKind::Not: value[i] = !value[node.lhs]; break;
      case NodeKind::And: value[i] = value[node.lhs] & value[node.rhs]; break;
      case NodeKind::Or: value[i] = value[node.lhs] | value[node.rhs]; break;
    }
  }
  return value.back() != 0;
}

TruthTable truth_table(const Formula& f) {
  const unsigned n = f.num_vars();
  if (n > kMaxTruthTableVars) {
    throw PreconditionError("n=" + std::to_string(n) + " exceeds exhaustive cap of " +
                            std::to_string(kMaxTruthTableVars) + " variables");
  }
  TruthTable table{BitString(std::size_t{1} << n), n, 0};
  const auto nodes = f.nodes();
  std::vector<std::uint64_t> value(nodes.size());
  auto words = table.bits.mutable_words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t base = static_cast<std::uint64_t>(w) << 6;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& node = nodes[i];
      switch (node.kind) {
        case NodeKind::Var:
          value[i] = node.lhs < 6 ? kLowVarMasks[node.lhs] : (((base >> node.lhs) & 1u) ? ~0ULL : 0ULL);
          break;
        case NodeKind::Not: value[i] = ~value[node.lhs]; break;
        case NodeKind::And: value[i] = value[node.lhs] & value[node.rhs]; break;
        case NodeKind::Or: value[i] = value[node.lhs] | value[node.rhs]; break;
      }
    }
    words[w] = value.back();
  }
  table.bits.trim_tail();
  table.ones_count = table.bits.popcount();
  return table;
}

Formula minterm(const Assignment& a) {
  FormulaBuilder b(a.n);
  auto literal = [&](unsigned j) { return a.bit(j) ? b.var(j) : b.negate(b.var(j)); };
  std::uint32_t acc = literal(a.n - 1);
  for (unsigned j = a.n - 1; j-- > 0;) acc = b.binary(NodeKind::And, acc, literal(j));
  return std::move(b).finish();
}

Formula plant_dnf(std::span<const std::uint64_t> targets, unsigned n) {
  check_num_vars(n);
  if (targets.empty()) {
    throw PreconditionError("plant_dnf needs at least one target; build a contradiction explicitly for k=0");
  }
  std::vector<std::uint64_t> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  FormulaBuilder b(n);
  std::uint32_t acc = 0;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    const std::uint32_t term = b.splice(minterm(Assignment(sorted[t], n)));
    acc = t == 0 ? term : b.binary(NodeKind::Or, acc, term);
  }
  return std::move(b).finish();
}

Formula obfuscate_and_true(const Formula& f) {
  const unsigned n = f.num_vars();
  FormulaBuilder b(n);
  std::uint32_t acc = b.splice(f);
  for (unsigned j = 0; j < n; ++j) {
    const std::uint32_t pos = b.var(j);
    const std::uint32_t neg = b.negate(b.var(j));
    acc = b.binary(NodeKind::And, acc, b.binary(NodeKind::Or, pos, neg));
  }
  return std::move(b).finish();
}

Formula random_formula(unsigned num_vars, std::size_t size_budget, std::uint64_t seed) {
  check_num_vars(num_vars);
  if (size_budget < 1) throw PreconditionError("size_budget must be >= 1");
  Rng rng(seed);
  FormulaBuilder b(num_vars);
  generate(b, rng, num_vars, size_budget);
  return std::move(b).finish();
}

std::size_t formula_text_bits(const Formula& f) { return 8 * render(f).size(); }

}  // namespace satlab
