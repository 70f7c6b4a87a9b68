#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certnet/degree.hpp"
#include "certnet/errors.hpp"
#include "certnet/fuzzy.hpp"
#include "certnet/kb.hpp"
#include "certnet/logic.hpp"
#include "certnet/network.hpp"

// Text formats. Both are UTF-8 with `#` comments to end of line.
//
// Network files:
//   network <ident>
//   var <ident> [<ident> ...]
//   cpt <Var> { <literal>: <value>; ... }
//   cpt <Var> | <Parent> [<Parent> ...] { <literal> | <ctx>: <value>; ... }
// where <literal> is `v` or `!v` for the table's variable, <ctx> is
// space-separated parent literals or `else`, and <value> is a degree
// (`0.25`, `1/3`), a triangle `tri(b1, peak, b2)`, or an explicit cut list
// `cuts(level: [lo, hi]; ...)`.
//
// Knowledge bases:
//   kb <ident>
//   vars <ident> [<ident> ...]
//   <weight> : <formula>        # from <node>   (provenance, optional)

namespace certnet {

namespace detail {

struct Token {
  enum class Type { Ident, Number, Symbol, End };
  Type type = Type::End;
  std::string text;
  std::size_t line = 1;
};

inline parse_error at_line(std::size_t line, const std::string& message) {
  return parse_error(line, "line " + std::to_string(line) + ": " + message);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token out = current_;
    advance();
    return out;
  }

  bool at_symbol(char c) const {
    return current_.type == Token::Type::Symbol && current_.text[0] == c;
  }

  bool at_ident(std::string_view word) const {
    return current_.type == Token::Type::Ident && current_.text == word;
  }

  void expect_symbol(char c, const std::string& where) {
    if (!at_symbol(c)) {
      throw at_line(current_.line, "expected '" + std::string(1, c) + "' " +
                                       where + describe());
    }
    advance();
  }

  std::string expect_ident(const std::string& what) {
    if (current_.type != Token::Type::Ident) {
      throw at_line(current_.line, "expected " + what + describe());
    }
    return next().text;
  }

  std::size_t line() const { return current_.line; }

 private:
  std::string describe() const {
    if (current_.type == Token::Type::End) return ", got end of input";
    return ", got \"" + current_.text + "\"";
  }

  void advance() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      current_ = {Token::Type::End, "", line_};
      return;
    }
    const char c = text_[pos_];
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalpha(uc) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size()) {
        const auto ec = static_cast<unsigned char>(text_[end]);
        if (!std::isalnum(ec) && ec != '_') break;
        ++end;
      }
      current_ = {Token::Type::Ident, std::string(text_.substr(pos_, end - pos_)),
                  line_};
      pos_ = end;
      return;
    }
    if (std::isdigit(uc)) {
      std::size_t end = pos_;
      bool dot = false;
      while (end < text_.size()) {
        const char ec = text_[end];
        if (std::isdigit(static_cast<unsigned char>(ec))) {
          ++end;
        } else if (ec == '.' && !dot) {
          dot = true;
          ++end;
        } else {
          break;
        }
      }
      current_ = {Token::Type::Number, std::string(text_.substr(pos_, end - pos_)),
                  line_};
      pos_ = end;
      return;
    }
    current_ = {Token::Type::Symbol, std::string(1, c), line_};
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  Token current_;
};

inline Degree lex_degree(Lexer& lex) {
  if (lex.peek().type != Token::Type::Number) {
    throw at_line(lex.peek().line, "expected a degree");
  }
  const std::size_t line = lex.peek().line;
  std::string text = lex.next().text;
  if (lex.at_symbol('/')) {
    lex.next();
    if (lex.peek().type != Token::Type::Number) {
      throw at_line(lex.peek().line, "expected a denominator");
    }
    text += "/" + lex.next().text;
  }
  try {
    return Degree::parse(text);
  } catch (const std::runtime_error& e) {
    throw at_line(line, e.what());
  }
}

/// degree | tri(b1, peak, b2) | cuts(level: [lo, hi]; ...)
inline FuzzyDegree lex_value(Lexer& lex) {
  const std::size_t line = lex.peek().line;
  if (lex.at_ident("tri")) {
    lex.next();
    lex.expect_symbol('(', "after tri");
    const Degree b1 = lex_degree(lex);
    lex.expect_symbol(',', "in tri(...)");
    const Degree peak = lex_degree(lex);
    lex.expect_symbol(',', "in tri(...)");
    const Degree b2 = lex_degree(lex);
    lex.expect_symbol(')', "closing tri(...)");
    try {
      return FuzzyDegree::triangular(b1, peak, b2);
    } catch (const domain_error& e) {
      throw at_line(line, e.what());
    }
  }
  if (lex.at_ident("cuts")) {
    lex.next();
    lex.expect_symbol('(', "after cuts");
    std::vector<AlphaCut> cuts;
    while (true) {
      const Degree level = lex_degree(lex);
      lex.expect_symbol(':', "after cut level");
      lex.expect_symbol('[', "before cut interval");
      const Degree lo = lex_degree(lex);
      lex.expect_symbol(',', "in cut interval");
      const Degree hi = lex_degree(lex);
      lex.expect_symbol(']', "closing cut interval");
      cuts.push_back({level, lo, hi});
      if (lex.at_symbol(';')) {
        lex.next();
        continue;
      }
      break;
    }
    lex.expect_symbol(')', "closing cuts(...)");
    try {
      return FuzzyDegree(std::move(cuts));
    } catch (const domain_error& e) {
      throw at_line(line, e.what());
    }
  }
  return FuzzyDegree::crisp(lex_degree(lex));
}

inline bool is_network_keyword(const std::string& word) {
  return word == "network" || word == "var" || word == "cpt";
}

/// Words the file grammars claim for themselves; attributes may not shadow
/// them (`true`/`false` are already rejected by Vocabulary).
inline bool is_reserved_word(const std::string& word) {
  return is_network_keyword(word) || word == "kb" || word == "vars" ||
         word == "else" || word == "tri" || word == "cuts";
}

inline void declare_attribute(Vocabulary& vocab, const std::string& name,
                              std::size_t line) {
  if (is_reserved_word(name)) {
    throw at_line(line, "\"" + name + "\" is a reserved word");
  }
  try {
    vocab.add(name);
  } catch (const domain_error& e) {
    throw at_line(line, e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Network files
// ---------------------------------------------------------------------------

/// Parses a network file. Crisp entries come back as degenerate fuzzy
/// degrees; use is_crisp/to_crisp for the crisp view.
inline FuzzyCertainNetwork parse_network(std::string_view text) {
  using detail::Token;
  detail::Lexer lex(text);

  if (!lex.at_ident("network")) {
    throw detail::at_line(lex.line(), "network file must start with 'network <name>'");
  }
  lex.next();
  FuzzyCertainNetwork net;
  net.name = lex.expect_ident("a network name");

  // declarations precede the first cpt, so tables can resolve attributes
  while (lex.at_ident("var")) {
    lex.next();
    bool any = false;
    while (lex.peek().type == Token::Type::Ident &&
           !detail::is_network_keyword(lex.peek().text)) {
      const std::size_t line = lex.line();
      detail::declare_attribute(net.vocabulary, lex.next().text, line);
      any = true;
    }
    if (!any) throw detail::at_line(lex.line(), "empty var declaration");
  }
  if (net.vocabulary.size() == 0) {
    throw detail::at_line(lex.line(), "no attributes declared");
  }

  net.tables.resize(net.vocabulary.size());
  std::vector<bool> seen(net.vocabulary.size(), false);

  while (lex.peek().type != Token::Type::End) {
    if (!lex.at_ident("cpt")) {
      throw detail::at_line(lex.line(), "expected 'cpt', got \"" +
                                            lex.peek().text + "\"");
    }
    lex.next();
    const std::size_t header_line = lex.line();
    const std::string node_name = lex.expect_ident("a variable name after 'cpt'");
    const auto node = net.vocabulary.find(node_name);
    if (!node) {
      throw detail::at_line(header_line, "cpt for undeclared variable " + node_name);
    }
    if (seen[*node]) {
      throw detail::at_line(header_line, "duplicate cpt for " + node_name);
    }
    seen[*node] = true;

    ConditionalTable<FuzzyDegree>& table = net.tables[*node];
    table.node = *node;

    if (lex.at_symbol('|')) {
      lex.next();
      while (lex.peek().type == Token::Type::Ident) {
        const std::size_t line = lex.line();
        const std::string parent = lex.next().text;
        const auto idx = net.vocabulary.find(parent);
        if (!idx) {
          throw detail::at_line(line, "undeclared parent " + parent);
        }
        table.parents.push_back(*idx);
      }
      if (table.parents.empty()) {
        throw detail::at_line(lex.line(), "expected at least one parent after '|'");
      }
    }

    lex.expect_symbol('{', "opening the cpt of " + node_name);
    while (!lex.at_symbol('}')) {
      // <literal> [ "|" <ctx> ] ":" <value>
      const std::size_t entry_line = lex.line();
      bool positive = true;
      if (lex.at_symbol('!')) {
        lex.next();
        positive = false;
      }
      const std::string lit_name = lex.expect_ident("a literal");
      if (lit_name != node_name) {
        throw detail::at_line(entry_line, "row literal " + lit_name +
                                              " does not name the table variable " +
                                              node_name);
      }

      ParentContext context = ParentContext::assignment({});
      if (table.parents.empty()) {
        // roots have exactly the empty context
      } else if (lex.at_symbol('|')) {
        lex.next();
        if (lex.at_ident("else")) {
          lex.next();
          context = ParentContext::else_context();
        } else {
          std::vector<std::optional<bool>> values(table.parents.size());
          while (!lex.at_symbol(':')) {
            bool ctx_positive = true;
            if (lex.at_symbol('!')) {
              lex.next();
              ctx_positive = false;
            }
            const std::size_t line = lex.line();
            const std::string ctx_name = lex.expect_ident("a parent literal");
            const auto idx = net.vocabulary.find(ctx_name);
            std::size_t slot = table.parents.size();
            for (std::size_t i = 0; i < table.parents.size(); ++i) {
              if (idx && table.parents[i] == *idx) slot = i;
            }
            if (slot == table.parents.size()) {
              throw detail::at_line(line, ctx_name + " is not a parent of " +
                                              node_name);
            }
            if (values[slot].has_value()) {
              throw detail::at_line(line, "parent " + ctx_name +
                                              " assigned twice in one context");
            }
            values[slot] = ctx_positive;
          }
          std::vector<bool> ctx;
          for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i].has_value()) {
              throw detail::at_line(entry_line,
                                    "context does not assign parent " +
                                        net.vocabulary.name(table.parents[i]));
            }
            ctx.push_back(*values[i]);
          }
          context = ParentContext::assignment(std::move(ctx));
        }
      } else {
        throw detail::at_line(entry_line,
                              "rows of " + node_name + " need a parent context");
      }

      lex.expect_symbol(':', "before the degree");
      table.rows.push_back({positive, std::move(context), detail::lex_value(lex)});

      if (lex.at_symbol(';')) {
        lex.next();
        continue;
      }
      break;
    }
    lex.expect_symbol('}', "closing the cpt of " + node_name);
  }

  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw detail::at_line(lex.line(),
                            "missing cpt for " + net.vocabulary.name(i));
    }
  }
  return net;
}

template <typename V>
std::string print_network(const BasicNetwork<V>& net) {
  std::string out = "network " + net.name + "\nvar";
  for (const std::string& name : net.vocabulary.names()) out += " " + name;
  out += '\n';
  for (const auto& table : net.tables) {
    out += "cpt " + net.vocabulary.name(table.node);
    if (!table.parents.empty()) {
      out += " |";
      for (std::size_t p : table.parents) out += " " + net.vocabulary.name(p);
    }
    out += " {";
    bool first = true;
    for (const auto& row : table.rows) {
      out += first ? " " : "; ";
      first = false;
      out += to_string(Literal{table.node, row.node_value}, net.vocabulary);
      if (!table.parents.empty()) {
        out += " | " + to_string(row.context, table.parents, net.vocabulary);
      }
      out += ": " + to_string(row.degree);
    }
    out += " }\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Knowledge base files
// ---------------------------------------------------------------------------

/// Parses a kb file; zero-weight lines are skipped with a note appended to
/// `warnings`. Crisp weights come back as degenerate fuzzy degrees.
inline FuzzyKnowledgeBase parse_fuzzy_kb(std::string_view text,
                                         std::vector<std::string>* warnings = nullptr) {
  FuzzyKnowledgeBase kb;
  bool have_header = false;
  bool have_vars = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    // split off the comment, keeping `# from <node>` provenance
    std::string source;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = line.substr(hash + 1);
      line = line.substr(0, hash);
      detail::Lexer clex(comment);
      if (clex.at_ident("from")) {
        clex.next();
        if (clex.peek().type == detail::Token::Type::Ident) {
          source = clex.next().text;
        }
      }
    }
    const auto is_blank = [](std::string_view s) {
      for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
      }
      return true;
    };
    if (is_blank(line)) continue;

    if (!have_header) {
      detail::Lexer lex(line);
      if (!lex.at_ident("kb")) {
        throw detail::at_line(line_no, "kb file must start with 'kb <name>'");
      }
      lex.next();
      kb.name = lex.expect_ident("a kb name");
      have_header = true;
      continue;
    }
    if (!have_vars) {
      detail::Lexer lex(line);
      if (!lex.at_ident("vars")) {
        throw detail::at_line(line_no, "expected 'vars <ident> ...'");
      }
      lex.next();
      while (lex.peek().type == detail::Token::Type::Ident) {
        detail::declare_attribute(kb.vocabulary, lex.next().text, line_no);
      }
      if (kb.vocabulary.size() == 0) {
        throw detail::at_line(line_no, "empty vars declaration");
      }
      have_vars = true;
      continue;
    }

    // <weight> : <formula> -- split at the first colon outside brackets
    int depth = 0;
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == ':' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos) {
      throw detail::at_line(line_no, "expected '<weight> : <formula>'");
    }

    detail::Lexer wlex(line.substr(0, split));
    FuzzyDegree weight = FuzzyDegree::crisp(Degree::zero());
    try {
      weight = detail::lex_value(wlex);
    } catch (const parse_error& e) {
      throw detail::at_line(line_no, e.what());
    }
    if (wlex.peek().type != detail::Token::Type::End) {
      throw detail::at_line(line_no, "trailing input after the weight");
    }

    Formula formula = Formula::constant(false);
    try {
      formula = parse_formula(line.substr(split + 1), kb.vocabulary);
    } catch (const parse_error& e) {
      throw detail::at_line(line_no, e.what());
    } catch (const unknown_atom_error& e) {
      throw detail::at_line(line_no, e.what());
    }

    if (defuzzify(weight).is_zero()) {
      if (warnings) {
        warnings->push_back("line " + std::to_string(line_no) +
                            ": zero-weight formula ignored");
      }
      continue;
    }
    kb.formulas.push_back({std::move(formula), std::move(weight),
                           std::move(source), line_no});
  }

  if (!have_header) throw detail::at_line(1, "kb file must start with 'kb <name>'");
  if (!have_vars) throw detail::at_line(line_no, "missing 'vars' declaration");
  return kb;
}

/// Crisp kb file; rejects fuzzy weights.
inline KnowledgeBase parse_kb(std::string_view text,
                              std::vector<std::string>* warnings = nullptr) {
  return to_crisp(parse_fuzzy_kb(text, warnings));
}

namespace detail {

template <typename Weighted>
std::string print_kb_lines(const std::string& name, const Vocabulary& vocab,
                           const std::vector<Weighted>& formulas) {
  std::string out = "kb " + name + "\nvars";
  for (const std::string& attr : vocab.names()) out += " " + attr;
  out += '\n';
  for (const Weighted& wf : formulas) {
    out += to_string(wf.weight) + " : " + format_formula(wf.formula, vocab);
    if (!wf.source.empty()) out += "  # from " + wf.source;
    out += '\n';
  }
  return out;
}

}  // namespace detail

inline std::string print_kb(const KnowledgeBase& kb) {
  return detail::print_kb_lines(kb.name, kb.vocabulary, kb.formulas);
}

inline std::string print_kb(const FuzzyKnowledgeBase& kb) {
  return detail::print_kb_lines(kb.name, kb.vocabulary, kb.formulas);
}

}  // namespace certnet
