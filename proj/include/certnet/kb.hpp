#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "certnet/degree.hpp"
#include "certnet/distribution.hpp"
#include "certnet/errors.hpp"
#include "certnet/fuzzy.hpp"
#include "certnet/logic.hpp"
#include "certnet/network.hpp"

namespace certnet {

/// (formula, weight): the formula is certain at least to degree `weight`.
/// Weights are strictly positive; zero-weight formulas say nothing and are
/// dropped with a warning when files are loaded. `source` names the network
/// node a compiled formula came from (empty for hand-written ones).
struct WeightedFormula {
  Formula formula;
  Degree weight;
  std::string source;
  std::size_t line = 0;  // file line, 0 when not loaded from a file

  // line numbers are layout, not content
  friend bool operator==(const WeightedFormula& a, const WeightedFormula& b) {
    return a.formula == b.formula && a.weight == b.weight &&
           a.source == b.source;
  }
};

struct KnowledgeBase {
  std::string name;
  Vocabulary vocabulary;
  std::vector<WeightedFormula> formulas;

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.name == b.name && a.vocabulary == b.vocabulary &&
           a.formulas == b.formulas;
  }
};

struct FuzzyWeightedFormula {
  Formula formula;
  FuzzyDegree weight;
  std::string source;
  std::size_t line = 0;

  friend bool operator==(const FuzzyWeightedFormula& a,
                         const FuzzyWeightedFormula& b) {
    return a.formula == b.formula && a.weight == b.weight &&
           a.source == b.source;
  }
};

struct FuzzyKnowledgeBase {
  std::string name;
  Vocabulary vocabulary;
  std::vector<FuzzyWeightedFormula> formulas;

  friend bool operator==(const FuzzyKnowledgeBase& a,
                         const FuzzyKnowledgeBase& b) {
    return a.name == b.name && a.vocabulary == b.vocabulary &&
           a.formulas == b.formulas;
  }
};

// ---------------------------------------------------------------------------
// Compilation: network -> weighted clauses
// ---------------------------------------------------------------------------

namespace detail {

/// Disjunction `!x | !u`: the complement literal of the node, then the
/// negated parent literals in parent order.
inline Formula excluding_clause(std::size_t node, bool node_value,
                                const std::vector<std::size_t>& parents,
                                const std::vector<bool>& ctx) {
  Formula f = Formula::atom(Literal{node, !node_value});
  for (std::size_t i = 0; i < parents.size(); ++i) {
    f = Formula::disjunction(std::move(f),
                             Formula::atom(Literal{parents[i], !ctx[i]}));
  }
  return f;
}

template <typename V>
const V& table_degree(const ConditionalTable<V>& table, bool node_value,
                      const std::vector<bool>& ctx, const Vocabulary& vocab) {
  if (const TableRow<V>* row = table.find_assignment(node_value, ctx)) {
    return row->degree;
  }
  if (const TableRow<V>* row = table.find_else(node_value)) {
    return row->degree;
  }
  throw domain_error("coverage gap: node " + vocab.name(table.node) +
                     ", literal " +
                     to_string(Literal{table.node, node_value}, vocab));
}

}  // namespace detail

/// Clauses of one node: for every literal x and every full parent
/// instantiation u (else rows expanded), an entry N(x|u) < 1 yields the
/// clause `!x | !u` weighted 1 - N(x|u); entries graded 1 yield nothing.
inline KnowledgeBase compile_node(const CertainNetwork& net, std::size_t node) {
  const ConditionalTable<Degree>& table = net.table(node);
  KnowledgeBase kb{net.vocabulary.name(node), net.vocabulary, {}};
  for (bool node_value : {true, false}) {
    const std::size_t count = std::size_t{1} << table.parents.size();
    for (std::size_t r = 0; r < count; ++r) {
      const auto ctx = detail::assignment_at(r, table.parents.size());
      const Degree& entry =
          detail::table_degree(table, node_value, ctx, net.vocabulary);
      if (entry.is_one()) continue;
      kb.formulas.push_back(
          {detail::excluding_clause(node, node_value, table.parents, ctx),
           entry.complement(), net.vocabulary.name(node)});
    }
  }
  return kb;
}

/// Union of the per-node compilations, in node declaration order.
inline KnowledgeBase compile_network(const CertainNetwork& net) {
  KnowledgeBase kb{net.name, net.vocabulary, {}};
  for (std::size_t node = 0; node < net.vocabulary.size(); ++node) {
    KnowledgeBase slice = compile_node(net, node);
    kb.formulas.insert(kb.formulas.end(),
                       std::make_move_iterator(slice.formulas.begin()),
                       std::make_move_iterator(slice.formulas.end()));
  }
  return kb;
}

/// Fuzzy counterpart: weights are the fuzzy complements of the entries, and
/// an entry is skipped when its defuzzified complement is 0 (it would claim
/// nothing).
inline FuzzyKnowledgeBase compile_fuzzy(const FuzzyCertainNetwork& net) {
  FuzzyKnowledgeBase kb{net.name, net.vocabulary, {}};
  for (std::size_t node = 0; node < net.vocabulary.size(); ++node) {
    const ConditionalTable<FuzzyDegree>& table = net.table(node);
    for (bool node_value : {true, false}) {
      const std::size_t count = std::size_t{1} << table.parents.size();
      for (std::size_t r = 0; r < count; ++r) {
        const auto ctx = detail::assignment_at(r, table.parents.size());
        const FuzzyDegree& entry =
            detail::table_degree(table, node_value, ctx, net.vocabulary);
        FuzzyDegree weight = complement(entry);
        if (defuzzify(weight).is_zero()) continue;
        kb.formulas.push_back(
            {detail::excluding_clause(node, node_value, table.parents, ctx),
             std::move(weight), net.vocabulary.name(node)});
      }
    }
  }
  return kb;
}

/// Crisp view of a fuzzy knowledge base: every weight replaced by its
/// defuzzified value. Entries whose crisp weight would be 0 are dropped,
/// mirroring the load-time rule for zero weights.
inline KnowledgeBase crisp_projection(const FuzzyKnowledgeBase& fkb) {
  KnowledgeBase kb{fkb.name, fkb.vocabulary, {}};
  for (const FuzzyWeightedFormula& wf : fkb.formulas) {
    const Degree weight = defuzzify(wf.weight);
    if (weight.is_zero()) continue;
    kb.formulas.push_back({wf.formula, weight, wf.source, wf.line});
  }
  return kb;
}

inline bool is_crisp(const FuzzyKnowledgeBase& fkb) {
  for (const FuzzyWeightedFormula& wf : fkb.formulas) {
    if (!wf.weight.is_crisp()) return false;
  }
  return true;
}

inline KnowledgeBase to_crisp(const FuzzyKnowledgeBase& fkb) {
  if (!is_crisp(fkb)) {
    throw domain_error("knowledge base has fuzzy weights");
  }
  KnowledgeBase kb{fkb.name, fkb.vocabulary, {}};
  for (const FuzzyWeightedFormula& wf : fkb.formulas) {
    kb.formulas.push_back(
        {wf.formula, wf.weight.crisp_value(), wf.source, wf.line});
  }
  return kb;
}

// ---------------------------------------------------------------------------
// Recovery: weighted clauses -> certainty distribution
// ---------------------------------------------------------------------------

/// A world satisfying every formula is graded 1; otherwise 1 minus the
/// largest violated weight.
inline Distribution recover_distribution(const KnowledgeBase& kb,
                                         std::size_t max_vars = kDefaultMaxVars) {
  std::vector<Degree> values;
  for (const World& w : enumerate_worlds(kb.vocabulary, max_vars)) {
    Degree worst = Degree::zero();  // largest violated weight
    for (const WeightedFormula& wf : kb.formulas) {
      if (!entails(w, wf.formula)) worst = max(worst, wf.weight);
    }
    values.push_back(worst.complement());
  }
  return Distribution(kb.vocabulary, std::move(values));
}

/// Same distribution as a min of maxes: per world, the min over formulas of
/// max(sat, 1 - weight), where sat is 1 on satisfaction and 0 otherwise.
inline Distribution minmax_distribution(const KnowledgeBase& kb,
                                        std::size_t max_vars = kDefaultMaxVars) {
  std::vector<Degree> values;
  for (const World& w : enumerate_worlds(kb.vocabulary, max_vars)) {
    Degree acc = Degree::one();
    for (const WeightedFormula& wf : kb.formulas) {
      const Degree sat = entails(w, wf.formula) ? Degree::one() : Degree::zero();
      acc = min(acc, max(sat, wf.weight.complement()));
    }
    values.push_back(acc);
  }
  return Distribution(kb.vocabulary, std::move(values));
}

/// Equal recovered distributions on every world.
inline bool equivalent_kb(const KnowledgeBase& a, const KnowledgeBase& b,
                          std::size_t max_vars = kDefaultMaxVars) {
  if (a.vocabulary != b.vocabulary) {
    throw domain_error("vocabulary mismatch");
  }
  return equivalent(recover_distribution(a, max_vars),
                    recover_distribution(b, max_vars));
}

/// A formula is subsumed when removing it leaves the recovered distribution
/// unchanged.
inline bool is_subsumed(const KnowledgeBase& kb, std::size_t index,
                        std::size_t max_vars = kDefaultMaxVars) {
  if (index >= kb.formulas.size()) {
    throw domain_error("formula index out of range");
  }
  KnowledgeBase without = kb;
  without.formulas.erase(without.formulas.begin() +
                         static_cast<std::ptrdiff_t>(index));
  return equivalent(recover_distribution(kb, max_vars),
                    recover_distribution(without, max_vars));
}

}  // namespace certnet
