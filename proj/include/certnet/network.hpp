#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certnet/degree.hpp"
#include "certnet/distribution.hpp"
#include "certnet/errors.hpp"
#include "certnet/fuzzy.hpp"
#include "certnet/logic.hpp"

namespace certnet {

/// One instantiation of a node's parents: either a full assignment (one
/// boolean per parent, in parent order) or the `else` default covering all
/// instantiations no explicit row names.
class ParentContext {
 public:
  static ParentContext else_context() { return ParentContext(std::nullopt); }

  static ParentContext assignment(std::vector<bool> values) {
    return ParentContext(std::move(values));
  }

  bool is_else() const { return !values_.has_value(); }
  const std::vector<bool>& values() const { return *values_; }

  bool matches(const World& w, const std::vector<std::size_t>& parents) const {
    if (is_else()) return true;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (w.value(parents[i]) != (*values_)[i]) return false;
    }
    return true;
  }

  friend bool operator==(const ParentContext& a, const ParentContext& b) {
    return a.values_ == b.values_;
  }

 private:
  explicit ParentContext(std::optional<std::vector<bool>> values)
      : values_(std::move(values)) {}

  std::optional<std::vector<bool>> values_;
};

inline std::string to_string(const ParentContext& ctx,
                             const std::vector<std::size_t>& parents,
                             const Vocabulary& vocab) {
  if (ctx.is_else()) return "else";
  std::string out;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (i) out += ' ';
    out += to_string(Literal{parents[i], ctx.values()[i]}, vocab);
  }
  return out;
}

template <typename V>
struct TableRow {
  bool node_value;  // which literal of the node this row grades
  ParentContext context;
  V degree;

  friend bool operator==(const TableRow& a, const TableRow& b) {
    return a.node_value == b.node_value && a.context == b.context &&
           a.degree == b.degree;
  }
};

/// Conditional certainty table of one node: N(x | u) for both literals x
/// and every parent instantiation u, with an optional `else` row per
/// literal. Explicit rows win over `else`.
template <typename V>
struct ConditionalTable {
  std::size_t node = 0;
  std::vector<std::size_t> parents;
  std::vector<TableRow<V>> rows;

  const TableRow<V>* find_assignment(bool node_value,
                                     const std::vector<bool>& ctx) const {
    for (const TableRow<V>& row : rows) {
      if (row.node_value == node_value && !row.context.is_else() &&
          row.context.values() == ctx) {
        return &row;
      }
    }
    return nullptr;
  }

  const TableRow<V>* find_else(bool node_value) const {
    for (const TableRow<V>& row : rows) {
      if (row.node_value == node_value && row.context.is_else()) return &row;
    }
    return nullptr;
  }

  /// Row matching a world: the explicit context if one matches, otherwise
  /// the else row.
  const TableRow<V>& row_for(const World& w, const Vocabulary& vocab) const {
    const bool node_value = w.value(node);
    std::vector<bool> ctx;
    ctx.reserve(parents.size());
    for (std::size_t p : parents) ctx.push_back(w.value(p));
    if (const TableRow<V>* row = find_assignment(node_value, ctx)) return *row;
    if (const TableRow<V>* row = find_else(node_value)) return *row;
    throw domain_error(
        "coverage gap: node " + vocab.name(node) + ", literal " +
        to_string(Literal{node, node_value}, vocab) + ", context " +
        to_string(ParentContext::assignment(ctx), parents, vocab));
  }

  friend bool operator==(const ConditionalTable& a, const ConditionalTable& b) {
    return a.node == b.node && a.parents == b.parents && a.rows == b.rows;
  }
};

/// Certainty network: a DAG over binary attributes with one conditional
/// table per attribute. `V` is Degree for crisp networks, FuzzyDegree for
/// fuzzy ones.
template <typename V>
struct BasicNetwork {
  std::string name;
  Vocabulary vocabulary;
  std::vector<ConditionalTable<V>> tables;  // tables[i] grades attribute i

  const ConditionalTable<V>& table(std::size_t node) const {
    return tables.at(node);
  }

  friend bool operator==(const BasicNetwork& a, const BasicNetwork& b) {
    return a.name == b.name && a.vocabulary == b.vocabulary &&
           a.tables == b.tables;
  }
};

using CertainNetwork = BasicNetwork<Degree>;
using FuzzyCertainNetwork = BasicNetwork<FuzzyDegree>;

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ValidationLevel { Permissive, Strict };

struct Violation {
  enum class Kind { Structure, Coverage, Strict };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string to_text() const {
    std::string out;
    for (const Violation& v : violations) {
      switch (v.kind) {
        case Violation::Kind::Structure:
          out += "structure: ";
          break;
        case Violation::Kind::Coverage:
          out += "coverage: ";
          break;
        case Violation::Kind::Strict:
          out += "strict: ";
          break;
      }
      out += v.message;
      out += '\n';
    }
    return out;
  }
};

namespace detail {

inline bool attains_one(const Degree& d) { return d.is_one(); }
/// Fuzzy rows count as normalized when their defuzzified value is 1.
inline bool attains_one(const FuzzyDegree& fd) {
  return defuzzify(fd).is_one();
}

inline std::string degree_text(const Degree& d) { return d.str(); }
inline std::string degree_text(const FuzzyDegree& fd) { return to_string(fd); }

/// Enumerates full parent assignments in the binary counting order used for
/// worlds (true before false).
inline std::vector<bool> assignment_at(std::size_t rank, std::size_t n) {
  std::vector<bool> values(n);
  for (std::size_t j = 0; j < n; ++j) {
    values[j] = ((rank >> (n - 1 - j)) & 1) == 0;
  }
  return values;
}

}  // namespace detail

/// Structure, coverage and range checks; `Strict` additionally requires
/// every parent instantiation to grade some literal of the node with 1.
/// Violations are reported, never repaired.
template <typename V>
ValidationReport validate(const BasicNetwork<V>& net, ValidationLevel level) {
  ValidationReport report;
  const auto structural = [&](const std::string& message) {
    report.violations.push_back({Violation::Kind::Structure, message});
  };

  const std::size_t n = net.vocabulary.size();
  if (net.tables.size() != n) {
    structural("expected one table per attribute");
    return report;
  }

  bool shape_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& table = net.tables[i];
    const std::string node_name = net.vocabulary.name(i);
    if (table.node != i) {
      structural("table of " + node_name + " mislabeled");
      shape_ok = false;
      continue;
    }
    std::vector<std::size_t> seen_parents;
    for (std::size_t p : table.parents) {
      if (p >= n) {
        structural("node " + node_name + ": undeclared parent");
        shape_ok = false;
      } else if (p == i) {
        structural("node " + node_name + " lists itself as a parent");
        shape_ok = false;
      } else if (std::count(seen_parents.begin(), seen_parents.end(), p)) {
        structural("node " + node_name + ": duplicate parent " +
                   net.vocabulary.name(p));
        shape_ok = false;
      }
      seen_parents.push_back(p);
    }
    for (const TableRow<V>& row : table.rows) {
      if (!row.context.is_else() &&
          row.context.values().size() != table.parents.size()) {
        structural("node " + node_name +
                   ": context does not assign every parent exactly once");
        shape_ok = false;
      }
    }
  }
  if (!shape_ok) return report;

  // cycle detection over parent edges
  {
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> stack;
    const auto dfs = [&](auto&& self, std::size_t v) -> bool {
      state[v] = 1;
      stack.push_back(v);
      for (std::size_t p : net.tables[v].parents) {
        if (state[p] == 1) {
          std::string cycle = net.vocabulary.name(p);
          for (auto it = std::find(stack.begin(), stack.end(), p);
               it != stack.end(); ++it) {
            if (*it != p) cycle += " -> " + net.vocabulary.name(*it);
          }
          structural("cycle: " + cycle + " -> " + net.vocabulary.name(p));
          return false;
        }
        if (state[p] == 0 && !self(self, p)) return false;
      }
      stack.pop_back();
      state[v] = 2;
      return true;
    };
    for (std::size_t v = 0; v < n; ++v) {
      if (state[v] == 0 && !dfs(dfs, v)) return report;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& table = net.tables[i];
    const std::string node_name = net.vocabulary.name(i);

    // duplicate contexts per literal
    for (bool node_value : {true, false}) {
      const std::string literal =
          to_string(Literal{i, node_value}, net.vocabulary);
      std::vector<const TableRow<V>*> explicit_rows;
      std::size_t else_rows = 0;
      for (const TableRow<V>& row : table.rows) {
        if (row.node_value != node_value) continue;
        if (row.context.is_else()) {
          ++else_rows;
          continue;
        }
        for (const TableRow<V>* other : explicit_rows) {
          if (other->context == row.context) {
            structural("node " + node_name + ": duplicate row for " + literal +
                       " | " +
                       to_string(row.context, table.parents, net.vocabulary));
          }
        }
        explicit_rows.push_back(&row);
      }
      if (else_rows > 1) {
        structural("node " + node_name + ": duplicate else row for " + literal);
      }

      // coverage: an else row covers the remainder; otherwise every
      // instantiation needs an explicit row
      const std::size_t want = std::size_t{1} << table.parents.size();
      if (else_rows == 0 && explicit_rows.size() < want) {
        for (std::size_t r = 0; r < want; ++r) {
          const auto ctx = detail::assignment_at(r, table.parents.size());
          if (!table.find_assignment(node_value, ctx)) {
            std::string what = "node " + node_name + ": no row for " + literal;
            if (!table.parents.empty()) {
              what += " | " + to_string(ParentContext::assignment(ctx),
                                        table.parents, net.vocabulary);
            }
            report.violations.push_back({Violation::Kind::Coverage, what});
          }
        }
      }
    }
  }
  if (!report.ok()) return report;

  if (level == ValidationLevel::Strict) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& table = net.tables[i];
      const std::size_t count = std::size_t{1} << table.parents.size();
      for (std::size_t r = 0; r < count; ++r) {
        const auto ctx = detail::assignment_at(r, table.parents.size());
        const auto degree_of = [&](bool node_value) -> const V& {
          if (const TableRow<V>* row = table.find_assignment(node_value, ctx)) {
            return row->degree;
          }
          return table.find_else(node_value)->degree;
        };
        const V& pos = degree_of(true);
        const V& neg = degree_of(false);
        if (!detail::attains_one(pos) && !detail::attains_one(neg)) {
          std::string where = "node " + net.vocabulary.name(i);
          if (!table.parents.empty()) {
            where += " | " + to_string(ParentContext::assignment(ctx),
                                       table.parents, net.vocabulary);
          }
          report.violations.push_back(
              {Violation::Kind::Strict,
               where + ": max(" + detail::degree_text(pos) + ", " +
                   detail::degree_text(neg) + ") != 1"});
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Chain rule
// ---------------------------------------------------------------------------

/// Table entry grading the given node in the given world.
template <typename V>
const V& local_degree(const BasicNetwork<V>& net, std::size_t node,
                      const World& w) {
  return net.table(node).row_for(w, net.vocabulary).degree;
}

namespace detail {

inline Degree combine_min(const Degree& a, const Degree& b) { return min(a, b); }
inline FuzzyDegree combine_min(const FuzzyDegree& a, const FuzzyDegree& b) {
  return fuzzy_min(a, b);
}

inline Degree unit_degree(const Degree*) { return Degree::one(); }
inline FuzzyDegree unit_degree(const FuzzyDegree*) {
  return FuzzyDegree::crisp(Degree::one());
}

}  // namespace detail

/// Min-based chain rule: each world's joint certainty is the minimum of its
/// nodes' local degrees.
template <typename V>
BasicDistribution<V> joint_distribution(const BasicNetwork<V>& net,
                                        std::size_t max_vars = kDefaultMaxVars) {
  check_guard(net.vocabulary.size(), max_vars);
  std::vector<V> values;
  values.reserve(std::size_t{1} << net.vocabulary.size());
  for (const World& w : enumerate_worlds(net.vocabulary, max_vars)) {
    V acc = detail::unit_degree(static_cast<const V*>(nullptr));
    for (std::size_t node = 0; node < net.vocabulary.size(); ++node) {
      acc = detail::combine_min(acc, local_degree(net, node, w));
    }
    values.push_back(std::move(acc));
  }
  return BasicDistribution<V>(net.vocabulary, std::move(values));
}

/// Fuzzy chain rule: the fuzzy-min fold of the nodes' fuzzy local degrees.
inline FuzzyDistribution fuzzy_joint(const FuzzyCertainNetwork& net,
                                     std::size_t max_vars = kDefaultMaxVars) {
  return joint_distribution(net, max_vars);
}

/// Replaces every fuzzy row by its defuzzified crisp degree.
inline CertainNetwork defuzzify_network(const FuzzyCertainNetwork& net) {
  CertainNetwork out;
  out.name = net.name;
  out.vocabulary = net.vocabulary;
  for (const auto& table : net.tables) {
    ConditionalTable<Degree> crisp;
    crisp.node = table.node;
    crisp.parents = table.parents;
    for (const auto& row : table.rows) {
      crisp.rows.push_back({row.node_value, row.context, defuzzify(row.degree)});
    }
    out.tables.push_back(std::move(crisp));
  }
  return out;
}

/// Embeds a crisp network as a fuzzy one with degenerate rows.
inline FuzzyCertainNetwork embed_crisp(const CertainNetwork& net) {
  FuzzyCertainNetwork out;
  out.name = net.name;
  out.vocabulary = net.vocabulary;
  for (const auto& table : net.tables) {
    ConditionalTable<FuzzyDegree> fuzzy;
    fuzzy.node = table.node;
    fuzzy.parents = table.parents;
    for (const auto& row : table.rows) {
      fuzzy.rows.push_back(
          {row.node_value, row.context, FuzzyDegree::crisp(row.degree)});
    }
    out.tables.push_back(std::move(fuzzy));
  }
  return out;
}

/// Every row is a degenerate fuzzy degree.
inline bool is_crisp(const FuzzyCertainNetwork& net) {
  for (const auto& table : net.tables) {
    for (const auto& row : table.rows) {
      if (!row.degree.is_crisp()) return false;
    }
  }
  return true;
}

/// Exact crisp view of a degenerate fuzzy network.
inline CertainNetwork to_crisp(const FuzzyCertainNetwork& net) {
  if (!is_crisp(net)) {
    throw domain_error("network has fuzzy entries; defuzzify it first");
  }
  CertainNetwork out;
  out.name = net.name;
  out.vocabulary = net.vocabulary;
  for (const auto& table : net.tables) {
    ConditionalTable<Degree> crisp;
    crisp.node = table.node;
    crisp.parents = table.parents;
    for (const auto& row : table.rows) {
      crisp.rows.push_back({row.node_value, row.context, row.degree.crisp_value()});
    }
    out.tables.push_back(std::move(crisp));
  }
  return out;
}

}  // namespace certnet
