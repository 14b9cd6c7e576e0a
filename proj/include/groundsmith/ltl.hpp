#pragma once

// Linear temporal logic core: an immutable, structurally shared AST plus the
// canonical token syntax used by corpus files, template libraries and the
// HTTP API.
//
// Concrete syntax (whitespace separated, parentheses may also be glued):
//
//   formula := formula '|' formula | formula '&' formula
//            | formula 'U' formula | '!' formula | 'G' formula | 'F' formula
//            | '(' formula ')' | 'true' | 'false' | atom
//
// Precedence: unary (! G F) > U > & > |, binary operators left-associative.
// The printer emits a fully parenthesized form that parses back to the same
// tree: unary operators always wrap their operand in parentheses, binary
// nodes are parenthesized unless they are the direct operand of a unary node.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groundsmith/error.hpp"

namespace groundsmith {

enum class LtlOp : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Finally,
  Globally,
  Until,
};

inline bool is_unary(LtlOp op) {
  return op == LtlOp::Not || op == LtlOp::Finally || op == LtlOp::Globally;
}

inline bool is_binary(LtlOp op) {
  return op == LtlOp::And || op == LtlOp::Or || op == LtlOp::Until;
}

inline bool is_temporal(LtlOp op) {
  return op == LtlOp::Finally || op == LtlOp::Globally || op == LtlOp::Until;
}

inline bool is_reserved_word(std::string_view s) {
  return s == "G" || s == "F" || s == "U" || s == "true" || s == "false";
}

inline bool is_grammar_char(char c) {
  return c == '(' || c == ')' || c == '!' || c == '&' || c == '|';
}

inline bool is_valid_atom_name(std::string_view s) {
  if (s.empty() || is_reserved_word(s)) return false;
  for (char c : s) {
    if (is_grammar_char(c) || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
        c == '\f' || c == '\v')
      return false;
  }
  return true;
}

/// Immutable LTL formula. Copies share structure; equality is structural.
class Formula {
  struct Node {
    LtlOp op;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash;
  };
  using NodePtr = std::shared_ptr<const Node>;

 public:
  /// Defaults to the constant true.
  Formula() : node_(truth().node_) {}

  static Formula truth() {
    static const NodePtr n = make(LtlOp::True, {}, nullptr, nullptr);
    return Formula(n);
  }
  static Formula falsity() {
    static const NodePtr n = make(LtlOp::False, {}, nullptr, nullptr);
    return Formula(n);
  }
  static Formula atom(std::string name) {
    if (!is_valid_atom_name(name))
      throw Error(ErrorKind::SyntaxError, "invalid atom name '" + name + "'");
    return Formula(make(LtlOp::Atom, std::move(name), nullptr, nullptr));
  }
  static Formula negation(const Formula& f) { return unary(LtlOp::Not, f); }
  static Formula finally(const Formula& f) { return unary(LtlOp::Finally, f); }
  static Formula globally(const Formula& f) { return unary(LtlOp::Globally, f); }
  static Formula conjunction(const Formula& a, const Formula& b) {
    return binary(LtlOp::And, a, b);
  }
  static Formula disjunction(const Formula& a, const Formula& b) {
    return binary(LtlOp::Or, a, b);
  }
  static Formula until(const Formula& a, const Formula& b) {
    return binary(LtlOp::Until, a, b);
  }
  static Formula unary(LtlOp op, const Formula& f) {
    return Formula(make(op, {}, f.node_, nullptr));
  }
  static Formula binary(LtlOp op, const Formula& a, const Formula& b) {
    return Formula(make(op, {}, a.node_, b.node_));
  }

  LtlOp op() const noexcept { return node_->op; }
  /// Atom name; empty for every other node.
  const std::string& name() const noexcept { return node_->name; }
  /// Operand of a unary node or left operand of a binary node.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  Formula child() const { return lhs(); }

  bool is_true() const noexcept { return node_->op == LtlOp::True; }
  bool is_false() const noexcept { return node_->op == LtlOp::False; }
  std::size_t hash() const noexcept { return node_->hash; }
  /// True when both handles point at the same node.
  bool same_node(const Formula& o) const noexcept { return node_ == o.node_; }

  friend bool operator==(const Formula& a, const Formula& b) {
    return equal(a.node_.get(), b.node_.get());
  }

 private:
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static NodePtr make(LtlOp op, std::string name, NodePtr lhs, NodePtr rhs) {
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(std::hash<std::string>{}(name));
    if (lhs) mix(lhs->hash);
    if (rhs) mix(rhs->hash * 31);
    return std::make_shared<const Node>(
        Node{op, std::move(name), std::move(lhs), std::move(rhs), h});
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->hash != b->hash || a->op != b->op || a->name != b->name) return false;
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }

  NodePtr node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using LabelSet = std::set<std::string, std::less<>>;
/// A finite sequence of label sets; position i holds the atoms true at step i.
using Trace = std::vector<LabelSet>;

// ---------------------------------------------------------------------------
// Parsing and printing

namespace detail {

inline std::vector<std::string> tokenize_ltl(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      flush();
    } else if (is_grammar_char(c)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

class LtlParser {
 public:
  explicit LtlParser(std::vector<std::string> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    if (toks_.empty()) throw Error(ErrorKind::EmptyInput, "no tokens");
    Formula f = parse_or();
    if (pos_ != toks_.size()) fail("unexpected token '" + toks_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError,
                what + " at token " + std::to_string(pos_));
  }
  bool at(std::string_view t) const { return pos_ < toks_.size() && toks_[pos_] == t; }

  Formula parse_or() {
    Formula f = parse_and();
    while (at("|")) {
      ++pos_;
      f = Formula::disjunction(f, parse_and());
    }
    return f;
  }
  Formula parse_and() {
    Formula f = parse_until();
    while (at("&")) {
      ++pos_;
      f = Formula::conjunction(f, parse_until());
    }
    return f;
  }
  Formula parse_until() {
    Formula f = parse_unary();
    while (at("U")) {
      ++pos_;
      f = Formula::until(f, parse_unary());
    }
    return f;
  }
  Formula parse_unary() {
    if (pos_ >= toks_.size()) fail("unexpected end of input");
    const std::string& t = toks_[pos_];
    if (t == "!") return ++pos_, Formula::negation(parse_unary());
    if (t == "F") return ++pos_, Formula::finally(parse_unary());
    if (t == "G") return ++pos_, Formula::globally(parse_unary());
    if (t == "(") {
      ++pos_;
      Formula f = parse_or();
      if (!at(")")) fail("expected ')'");
      ++pos_;
      return f;
    }
    if (t == "true") return ++pos_, Formula::truth();
    if (t == "false") return ++pos_, Formula::falsity();
    if (!is_valid_atom_name(t)) fail("unexpected token '" + t + "'");
    ++pos_;
    return Formula::atom(t);
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

inline const char* op_symbol(LtlOp op) {
  switch (op) {
    case LtlOp::Not: return "!";
    case LtlOp::And: return "&";
    case LtlOp::Or: return "|";
    case LtlOp::Finally: return "F";
    case LtlOp::Globally: return "G";
    case LtlOp::Until: return "U";
    default: return "?";
  }
}

inline void write_ltl(const Formula& f, bool bare, std::string& out) {
  switch (f.op()) {
    case LtlOp::True: out += "true"; return;
    case LtlOp::False: out += "false"; return;
    case LtlOp::Atom: out += f.name(); return;
    case LtlOp::Not:
    case LtlOp::Finally:
    case LtlOp::Globally:
      out += op_symbol(f.op());
      out += " ( ";
      write_ltl(f.child(), true, out);
      out += " )";
      return;
    case LtlOp::And:
    case LtlOp::Or:
    case LtlOp::Until:
      if (!bare) out += "( ";
      write_ltl(f.lhs(), false, out);
      out += ' ';
      out += op_symbol(f.op());
      out += ' ';
      write_ltl(f.rhs(), false, out);
      if (!bare) out += " )";
      return;
  }
}

}  // namespace detail

inline Formula parse_ltl(std::string_view text) {
  return detail::LtlParser(detail::tokenize_ltl(text)).parse();
}

/// Canonical, fully parenthesized token string.
inline std::string format_ltl(const Formula& f) {
  std::string out;
  detail::write_ltl(f, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Finite-trace semantics

namespace detail {

// Truth value of f at every position of t.
inline std::vector<char> holds_at(const Formula& f, const Trace& t) {
  const std::size_t n = t.size();
  std::vector<char> r(n, 0);
  switch (f.op()) {
    case LtlOp::True:
      std::fill(r.begin(), r.end(), 1);
      break;
    case LtlOp::False:
      break;
    case LtlOp::Atom:
      for (std::size_t i = 0; i < n; ++i) r[i] = t[i].count(f.name()) ? 1 : 0;
      break;
    case LtlOp::Not: {
      auto c = holds_at(f.child(), t);
      for (std::size_t i = 0; i < n; ++i) r[i] = !c[i];
      break;
    }
    case LtlOp::And:
    case LtlOp::Or: {
      auto a = holds_at(f.lhs(), t);
      auto b = holds_at(f.rhs(), t);
      const bool conj = f.op() == LtlOp::And;
      for (std::size_t i = 0; i < n; ++i) r[i] = conj ? (a[i] && b[i]) : (a[i] || b[i]);
      break;
    }
    case LtlOp::Finally: {
      auto c = holds_at(f.child(), t);
      char acc = 0;
      for (std::size_t i = n; i-- > 0;) r[i] = acc = (c[i] || acc);
      break;
    }
    case LtlOp::Globally: {
      auto c = holds_at(f.child(), t);
      char acc = 1;
      for (std::size_t i = n; i-- > 0;) r[i] = acc = (c[i] && acc);
      break;
    }
    case LtlOp::Until: {
      auto a = holds_at(f.lhs(), t);
      auto b = holds_at(f.rhs(), t);
      char acc = 0;
      for (std::size_t i = n; i-- > 0;) r[i] = acc = (b[i] || (a[i] && acc));
      break;
    }
  }
  return r;
}

}  // namespace detail

/// Satisfaction of f at position 0 of a finite trace (LTLf semantics).
inline bool evaluate_trace(const Formula& f, const Trace& t) {
  if (t.empty()) throw Error(ErrorKind::EmptyTrace, "trace has no steps");
  return detail::holds_at(f, t)[0] != 0;
}

// ---------------------------------------------------------------------------
// Structural transforms

inline Formula substitute_atoms(const Formula& f,
                                const std::map<std::string, Formula, std::less<>>& map) {
  switch (f.op()) {
    case LtlOp::True:
    case LtlOp::False:
      return f;
    case LtlOp::Atom: {
      auto it = map.find(f.name());
      return it == map.end() ? f : it->second;
    }
    case LtlOp::Not:
    case LtlOp::Finally:
    case LtlOp::Globally:
      return Formula::unary(f.op(), substitute_atoms(f.child(), map));
    default:
      return Formula::binary(f.op(), substitute_atoms(f.lhs(), map),
                             substitute_atoms(f.rhs(), map));
  }
}

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == LtlOp::Atom) {
    out.insert(f.name());
  } else if (is_unary(f.op())) {
    collect_atoms(f.child(), out);
  } else if (is_binary(f.op())) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

inline std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

/// Number of operator levels on the longest root-to-leaf path.
inline int operator_depth(const Formula& f) {
  if (is_unary(f.op())) return 1 + operator_depth(f.child());
  if (is_binary(f.op()))
    return 1 + std::max(operator_depth(f.lhs()), operator_depth(f.rhs()));
  return 0;
}

inline bool contains_temporal(const Formula& f) {
  if (is_temporal(f.op())) return true;
  if (is_unary(f.op())) return contains_temporal(f.child());
  if (is_binary(f.op())) return contains_temporal(f.lhs()) || contains_temporal(f.rhs());
  return false;
}

namespace detail {

inline void flatten_chain(const Formula& f, LtlOp op, std::vector<Formula>& out) {
  if (f.op() == op) {
    flatten_chain(f.lhs(), op, out);
    flatten_chain(f.rhs(), op, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace detail

/// Boolean identities to a fixed point: unit and zero laws for & and |,
/// negated constants, and idempotence (also across an associative chain,
/// e.g. x | (x | y) becomes x | y). Temporal operators are kept as they are;
/// their operands are simplified.
inline Formula simplify(const Formula& f) {
  switch (f.op()) {
    case LtlOp::True:
    case LtlOp::False:
    case LtlOp::Atom:
      return f;
    case LtlOp::Not: {
      Formula c = simplify(f.child());
      if (c.is_true()) return Formula::falsity();
      if (c.is_false()) return Formula::truth();
      return c.same_node(f.child()) ? f : Formula::negation(c);
    }
    case LtlOp::Finally:
    case LtlOp::Globally: {
      Formula c = simplify(f.child());
      return c.same_node(f.child()) ? f : Formula::unary(f.op(), c);
    }
    case LtlOp::Until: {
      Formula a = simplify(f.lhs());
      Formula b = simplify(f.rhs());
      if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
      return Formula::until(a, b);
    }
    case LtlOp::And:
    case LtlOp::Or: {
      const bool conj = f.op() == LtlOp::And;
      Formula a = simplify(f.lhs());
      Formula b = simplify(f.rhs());
      const Formula zero = conj ? Formula::falsity() : Formula::truth();
      if (a.op() == zero.op() || b.op() == zero.op()) return zero;
      if (conj ? a.is_true() : a.is_false()) return b;
      if (conj ? b.is_true() : b.is_false()) return a;
      if (a == b) return a;

      std::vector<Formula> ops;
      detail::flatten_chain(a, f.op(), ops);
      detail::flatten_chain(b, f.op(), ops);
      std::vector<Formula> unique;
      for (const auto& o : ops) {
        bool seen = false;
        for (const auto& u : unique) {
          if (u == o) {
            seen = true;
            break;
          }
        }
        if (!seen) unique.push_back(o);
      }
      if (unique.size() != ops.size()) {
        Formula acc = unique.back();
        for (std::size_t i = unique.size() - 1; i-- > 0;)
          acc = Formula::binary(f.op(), unique[i], acc);
        return acc;
      }
      if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
      return Formula::binary(f.op(), a, b);
    }
  }
  return f;
}

}  // namespace groundsmith

template <>
struct std::hash<groundsmith::Formula> {
  std::size_t operator()(const groundsmith::Formula& f) const noexcept { return f.hash(); }
};
