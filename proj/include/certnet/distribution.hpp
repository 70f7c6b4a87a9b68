#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "certnet/degree.hpp"
#include "certnet/errors.hpp"
#include "certnet/fuzzy.hpp"
#include "certnet/logic.hpp"

namespace certnet {

/// Explicit table over all worlds of a vocabulary, stored in enumeration
/// order. `V` is Degree for crisp certainty distributions and FuzzyDegree
/// for fuzzy joint tables.
template <typename V>
class BasicDistribution {
 public:
  BasicDistribution(Vocabulary vocabulary, std::vector<V> values)
      : vocabulary_(std::move(vocabulary)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << vocabulary_.size())) {
      throw domain_error("distribution must assign a value to every world");
    }
  }

  const Vocabulary& vocabulary() const { return vocabulary_; }
  std::size_t world_count() const { return values_.size(); }

  const V& at_rank(std::size_t rank) const { return values_.at(rank); }
  const V& at(const World& w) const { return values_.at(w.rank()); }

  const std::vector<V>& values() const { return values_; }

  /// Tab-separated table: attribute columns rendered as `a` / `!a`, plus a
  /// trailing `degree` column, rows in world enumeration order.
  std::string to_tsv() const {
    std::string out;
    for (const std::string& name : vocabulary_.names()) {
      out += name;
      out += '\t';
    }
    out += "degree\n";
    for (std::size_t r = 0; r < values_.size(); ++r) {
      const World w = World::from_rank(r, vocabulary_.size());
      for (std::size_t j = 0; j < vocabulary_.size(); ++j) {
        out += to_string(Literal{j, w.value(j)}, vocabulary_);
        out += '\t';
      }
      out += to_string(values_[r]);
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const BasicDistribution& a, const BasicDistribution& b) {
    return a.vocabulary_ == b.vocabulary_ && a.values_ == b.values_;
  }

 private:
  Vocabulary vocabulary_;
  std::vector<V> values_;
};

using Distribution = BasicDistribution<Degree>;
using FuzzyDistribution = BasicDistribution<FuzzyDegree>;

/// Fuzzy set of worlds: each world carries a truth degree in [0, 1].
class FuzzyWorldSet {
 public:
  FuzzyWorldSet(Vocabulary vocabulary, std::vector<Degree> membership)
      : vocabulary_(std::move(vocabulary)), membership_(std::move(membership)) {
    if (membership_.size() != (std::size_t{1} << vocabulary_.size())) {
      throw domain_error("fuzzy world set must grade every world");
    }
  }

  /// Crisp embedding of a formula's model set: membership 1 on models,
  /// 0 elsewhere.
  static FuzzyWorldSet of_models(const Formula& f, const Vocabulary& vocab,
                                 std::size_t max_vars = kDefaultMaxVars) {
    std::vector<Degree> membership;
    for (const World& w : enumerate_worlds(vocab, max_vars)) {
      membership.push_back(entails(w, f) ? Degree::one() : Degree::zero());
    }
    return FuzzyWorldSet(vocab, std::move(membership));
  }

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const Degree& at_rank(std::size_t rank) const { return membership_.at(rank); }

  FuzzyWorldSet pointwise_complement() const {
    std::vector<Degree> flipped;
    flipped.reserve(membership_.size());
    for (const Degree& d : membership_) flipped.push_back(d.complement());
    return FuzzyWorldSet(vocabulary_, std::move(flipped));
  }

 private:
  Vocabulary vocabulary_;
  std::vector<Degree> membership_;
};

namespace detail {

inline void require_same_vocabulary(const Vocabulary& a, const Vocabulary& b) {
  if (a != b) throw domain_error("vocabulary mismatch");
}

}  // namespace detail

/// Max of the distribution over the models of p; 0 when p has none.
inline Degree possibility(const Distribution& d, const Formula& p) {
  Degree best = Degree::zero();
  for (std::size_t r = 0; r < d.world_count(); ++r) {
    if (entails(World::from_rank(r, d.vocabulary().size()), p)) {
      best = max(best, d.at_rank(r));
    }
  }
  return best;
}

/// N(p) = 1 - Pi(not p).
inline Degree necessity(const Distribution& d, const Formula& p) {
  return possibility(d, Formula::negation(p)).complement();
}

/// For every truth degree t attained by the fuzzy world set, the max of the
/// distribution over the worlds graded exactly t.
inline std::map<Degree, Degree> fuzzy_possibility_profile(
    const Distribution& d, const FuzzyWorldSet& fs) {
  detail::require_same_vocabulary(d.vocabulary(), fs.vocabulary());
  std::map<Degree, Degree> profile;
  for (std::size_t r = 0; r < d.world_count(); ++r) {
    const Degree& t = fs.at_rank(r);
    auto [it, inserted] = profile.emplace(t, d.at_rank(r));
    if (!inserted) it->second = max(it->second, d.at_rank(r));
  }
  return profile;
}

/// Dual profile: the possibility profile of the pointwise complement of the
/// set, with every value complemented. Keyed by the attained complement
/// degrees.
inline std::map<Degree, Degree> fuzzy_necessity_profile(
    const Distribution& d, const FuzzyWorldSet& fs) {
  std::map<Degree, Degree> profile =
      fuzzy_possibility_profile(d, fs.pointwise_complement());
  for (auto& [t, v] : profile) v = v.complement();
  return profile;
}

/// Exact pointwise equality.
inline bool equivalent(const Distribution& a, const Distribution& b) {
  detail::require_same_vocabulary(a.vocabulary(), b.vocabulary());
  return a.values() == b.values();
}

}  // namespace certnet
