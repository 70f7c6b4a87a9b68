#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certnet/errors.hpp"

namespace certnet {

/// Refusal threshold for world enumeration (2^20 worlds), overridable per
/// call.
inline constexpr std::size_t kDefaultMaxVars = 20;

inline bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : name.substr(1)) {
    const auto uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc) && uc != '_') return false;
  }
  return name != "true" && name != "false";
}

/// Ordered set of named binary attributes. Declaration order is
/// significant: it fixes world enumeration and all printed output.
class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> names) {
    for (std::string& name : names) add(std::move(name));
  }

  void add(std::string name) {
    if (!is_identifier(name)) {
      throw domain_error("invalid attribute name: \"" + name + "\"");
    }
    if (index_.count(name)) {
      throw domain_error("duplicate attribute: " + name);
    }
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? std::nullopt : std::optional(it->second);
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw unknown_atom_error(std::string(name));
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.names_ == b.names_;
  }
  friend bool operator!=(const Vocabulary& a, const Vocabulary& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

/// Positive or negated occurrence of a declared attribute.
struct Literal {
  std::size_t attribute = 0;
  bool positive = true;

  Literal negated() const { return {attribute, !positive}; }

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.attribute == b.attribute && a.positive == b.positive;
  }
  friend bool operator<(const Literal& a, const Literal& b) {
    return a.attribute != b.attribute ? a.attribute < b.attribute
                                      : a.positive < b.positive;
  }
};

inline std::string to_string(const Literal& lit, const Vocabulary& vocab) {
  return (lit.positive ? "" : "!") + vocab.name(lit.attribute);
}

/// Immutable propositional formula tree. Handles are cheap to copy; nodes
/// are shared and never mutated.
class Formula {
 public:
  enum class Kind { Constant, Atom, Not, And, Or, Implies };

  static Formula constant(bool value) {
    return Formula(std::make_shared<Node>(Node{Kind::Constant, value, {}, {}, {}}));
  }
  /// Negative literals desugar to a negation node, so every tree has one
  /// canonical shape and print/parse round-trips are structural identities.
  static Formula atom(Literal lit) {
    Formula f(std::make_shared<Node>(
        Node{Kind::Atom, false, Literal{lit.attribute, true}, {}, {}}));
    return lit.positive ? f : negation(std::move(f));
  }
  static Formula negation(Formula f) {
    return Formula(std::make_shared<Node>(
        Node{Kind::Not, false, {}, std::move(f.node_), {}}));
  }
  static Formula conjunction(Formula a, Formula b) {
    return binary(Kind::And, std::move(a), std::move(b));
  }
  static Formula disjunction(Formula a, Formula b) {
    return binary(Kind::Or, std::move(a), std::move(b));
  }
  static Formula implication(Formula a, Formula b) {
    return binary(Kind::Implies, std::move(a), std::move(b));
  }

  Kind kind() const { return node_->kind; }
  bool constant_value() const { return node_->value; }
  const Literal& literal() const { return node_->lit; }
  Formula operand() const { return Formula(node_->lhs); }  // Not
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  /// Attribute indices occurring in the formula.
  std::set<std::size_t> atoms() const {
    std::set<std::size_t> out;
    collect_atoms(out);
    return out;
  }

  /// Structural equality (same tree shape, literals and constants).
  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Constant:
        return a.constant_value() == b.constant_value();
      case Kind::Atom:
        return a.literal() == b.literal();
      case Kind::Not:
        return a.operand() == b.operand();
      default:
        return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    bool value;
    Literal lit;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Formula binary(Kind kind, Formula a, Formula b) {
    return Formula(std::make_shared<Node>(
        Node{kind, false, {}, std::move(a.node_), std::move(b.node_)}));
  }

  void collect_atoms(std::set<std::size_t>& out) const {
    switch (kind()) {
      case Kind::Constant:
        return;
      case Kind::Atom:
        out.insert(literal().attribute);
        return;
      case Kind::Not:
        operand().collect_atoms(out);
        return;
      default:
        lhs().collect_atoms(out);
        rhs().collect_atoms(out);
        return;
    }
  }

  std::shared_ptr<const Node> node_;
};

/// Disjunction of literals in canonical order (sorted by attribute, then
/// polarity) with exact duplicates removed. The empty clause is the
/// contradiction.
class Clause {
 public:
  Clause() = default;

  explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end(),
                                [](const Literal& a, const Literal& b) {
                                  return a == b;
                                }),
                    literals_.end());
  }

  bool empty() const { return literals_.empty(); }
  const std::vector<Literal>& literals() const { return literals_; }

  /// Contains both polarities of some attribute.
  bool is_tautology() const {
    for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
      if (literals_[i].attribute == literals_[i + 1].attribute) return true;
    }
    return false;
  }

  Formula to_formula() const {
    if (literals_.empty()) return Formula::constant(false);
    Formula f = Formula::atom(literals_.front());
    for (std::size_t i = 1; i < literals_.size(); ++i) {
      f = Formula::disjunction(std::move(f), Formula::atom(literals_[i]));
    }
    return f;
  }

  /// Recognizes disjunctions of (possibly negated) atoms and the constant
  /// false; anything else is not a clause.
  static std::optional<Clause> from_formula(const Formula& f) {
    std::vector<Literal> literals;
    if (!gather(f, literals)) return std::nullopt;
    return Clause(std::move(literals));
  }

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.literals_ == b.literals_;
  }
  friend bool operator<(const Clause& a, const Clause& b) {
    return a.literals_ < b.literals_;
  }

 private:
  static bool gather(const Formula& f, std::vector<Literal>& out) {
    switch (f.kind()) {
      case Formula::Kind::Constant:
        return !f.constant_value();  // false contributes nothing
      case Formula::Kind::Atom:
        out.push_back(f.literal());
        return true;
      case Formula::Kind::Not:
        if (f.operand().kind() != Formula::Kind::Atom) return false;
        out.push_back(f.operand().literal().negated());
        return true;
      case Formula::Kind::Or:
        return gather(f.lhs(), out) && gather(f.rhs(), out);
      default:
        return false;
    }
  }

  std::vector<Literal> literals_;
};

/// Total truth assignment over a vocabulary, stored in declaration order.
class World {
 public:
  explicit World(std::vector<bool> values) : values_(std::move(values)) {}

  /// World at position `rank` of the enumeration order: binary counting
  /// over declaration order, true before false, first attribute most
  /// significant.
  static World from_rank(std::size_t rank, std::size_t n) {
    std::vector<bool> values(n);
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = ((rank >> (n - 1 - j)) & 1) == 0;
    }
    return World(std::move(values));
  }

  std::size_t size() const { return values_.size(); }

  bool value(std::size_t attribute) const {
    if (attribute >= values_.size()) {
      throw unknown_atom_error("#" + std::to_string(attribute));
    }
    return values_[attribute];
  }

  bool satisfies(const Literal& lit) const {
    return value(lit.attribute) == lit.positive;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (bool v : values_) r = (r << 1) | (v ? 0 : 1);
    return r;
  }

  const std::vector<bool>& values() const { return values_; }

  friend bool operator==(const World& a, const World& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<bool> values_;
};

inline std::string to_string(const World& w, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    if (j) out += ' ';
    out += to_string(Literal{j, w.value(j)}, vocab);
  }
  return out;
}

inline void check_guard(std::size_t vars, std::size_t max_vars) {
  if (vars > max_vars) {
    throw guard_error("refusing to enumerate 2^" + std::to_string(vars) +
                      " worlds (cap is " + std::to_string(max_vars) +
                      " attributes; raise it explicitly to proceed)");
  }
}

/// All 2^n worlds in enumeration order.
inline std::vector<World> enumerate_worlds(const Vocabulary& vocab,
                                           std::size_t max_vars = kDefaultMaxVars) {
  if (vocab.size() == 0) {
    throw domain_error("cannot enumerate worlds of an empty vocabulary");
  }
  check_guard(vocab.size(), max_vars);
  std::vector<World> worlds;
  worlds.reserve(std::size_t{1} << vocab.size());
  for (std::size_t r = 0; r < (std::size_t{1} << vocab.size()); ++r) {
    worlds.push_back(World::from_rank(r, vocab.size()));
  }
  return worlds;
}

/// Classical satisfaction w |= f.
inline bool entails(const World& w, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f.constant_value();
    case Formula::Kind::Atom:
      return w.satisfies(f.literal());
    case Formula::Kind::Not:
      return !entails(w, f.operand());
    case Formula::Kind::And:
      return entails(w, f.lhs()) && entails(w, f.rhs());
    case Formula::Kind::Or:
      return entails(w, f.lhs()) || entails(w, f.rhs());
    case Formula::Kind::Implies:
      return !entails(w, f.lhs()) || entails(w, f.rhs());
  }
  return false;
}

/// All models of f over the vocabulary, in enumeration order.
inline std::vector<World> models(const Formula& f, const Vocabulary& vocab,
                                 std::size_t max_vars = kDefaultMaxVars) {
  std::vector<World> out;
  for (World& w : enumerate_worlds(vocab, max_vars)) {
    if (entails(w, f)) out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula parsing and printing.
//
// formula := impl
// impl    := disj ("->" impl)?
// disj    := conj ("|" conj)*
// conj    := neg ("&" neg)*
// neg     := "!" neg | atomexpr
// atomexpr:= ident | "true" | "false" | "(" formula ")"
// ---------------------------------------------------------------------------

namespace detail {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Vocabulary& vocab)
      : text_(text), vocab_(vocab) {}

  Formula parse() {
    Formula f = parse_impl();
    skip_ws();
    if (pos_ != text_.size()) {
      throw parse_error(pos_, "syntax error at offset " + std::to_string(pos_) +
                                  ": unexpected input");
    }
    return f;
  }

 private:
  Formula parse_impl() {
    Formula lhs = parse_disj();
    skip_ws();
    if (match("->")) {
      return Formula::implication(std::move(lhs), parse_impl());
    }
    return lhs;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (true) {
      skip_ws();
      // careful not to eat the first dash of "->"
      if (peek() == '|') {
        ++pos_;
        f = Formula::disjunction(std::move(f), parse_conj());
      } else {
        return f;
      }
    }
  }

  Formula parse_conj() {
    Formula f = parse_neg();
    while (true) {
      skip_ws();
      if (peek() == '&') {
        ++pos_;
        f = Formula::conjunction(std::move(f), parse_neg());
      } else {
        return f;
      }
    }
  }

  Formula parse_neg() {
    skip_ws();
    if (peek() == '!') {
      ++pos_;
      return Formula::negation(parse_neg());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      Formula f = parse_impl();
      skip_ws();
      if (peek() != ')') {
        throw parse_error(pos_, "syntax error at offset " + std::to_string(pos_) +
                                    ": expected ')'");
      }
      ++pos_;
      return f;
    }
    const std::size_t start = pos_;
    std::string ident = read_identifier();
    if (ident.empty()) {
      throw parse_error(pos_, "syntax error at offset " + std::to_string(pos_) +
                                  ": expected an atom, 'true', 'false', '!' or '('");
    }
    if (ident == "true") return Formula::constant(true);
    if (ident == "false") return Formula::constant(false);
    if (auto idx = vocab_.find(ident)) {
      return Formula::atom(Literal{*idx, true});
    }
    pos_ = start;
    throw unknown_atom_error(ident);
  }

  std::string read_identifier() {
    const auto alpha = [](char c) {
      const auto uc = static_cast<unsigned char>(c);
      return std::isalnum(uc) || uc == '_';
    };
    if (pos_ >= text_.size()) return {};
    const auto head = static_cast<unsigned char>(text_[pos_]);
    if (!std::isalpha(head) && head != '_') return {};
    std::size_t end = pos_;
    while (end < text_.size() && alpha(text_[end])) ++end;
    std::string out{text_.substr(pos_, end - pos_)};
    pos_ = end;
    return out;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool match(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::string_view text_;
  const Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  return detail::FormulaParser(text, vocab).parse();
}

namespace detail {

// Binding strength; parentheses are emitted only where reparsing would
// otherwise change the tree.
inline int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    default:
      return 4;
  }
}

inline void print_formula(const Formula& f, const Vocabulary& vocab,
                          int min_prec, std::string& out) {
  const int prec = precedence(f.kind());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Constant:
      out += f.constant_value() ? "true" : "false";
      break;
    case Formula::Kind::Atom:
      out += to_string(f.literal(), vocab);
      break;
    case Formula::Kind::Not:
      out += '!';
      print_formula(f.operand(), vocab, 4, out);
      break;
    case Formula::Kind::And:
      print_formula(f.lhs(), vocab, 3, out);
      out += " & ";
      print_formula(f.rhs(), vocab, 4, out);
      break;
    case Formula::Kind::Or:
      print_formula(f.lhs(), vocab, 2, out);
      out += " | ";
      print_formula(f.rhs(), vocab, 3, out);
      break;
    case Formula::Kind::Implies:
      print_formula(f.lhs(), vocab, 2, out);
      out += " -> ";
      print_formula(f.rhs(), vocab, 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

/// Canonical text: parse(format(f)) is structurally identical to f.
inline std::string format_formula(const Formula& f, const Vocabulary& vocab) {
  std::string out;
  detail::print_formula(f, vocab, 0, out);
  return out;
}

}  // namespace certnet
