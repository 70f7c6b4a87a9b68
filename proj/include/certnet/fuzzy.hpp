#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certnet/degree.hpp"
#include "certnet/errors.hpp"

namespace certnet {

/// One horizontal slice of a fuzzy number: at membership `level`, the value
/// is known to lie in [lower, upper].
struct AlphaCut {
  Degree level;
  Degree lower;
  Degree upper;

  friend bool operator==(const AlphaCut& a, const AlphaCut& b) {
    return a.level == b.level && a.lower == b.lower && a.upper == b.upper;
  }
};

/// Fuzzy certainty degree on [0, 1], stored as a list of alpha-cuts with
/// strictly increasing levels that always includes level 0 (the support)
/// and level 1 (the core). Between stored cuts the interval boundaries are
/// interpolated linearly, so the represented membership function is exactly
/// piecewise linear. Cuts must nest: raising the level never widens the
/// interval.
///
/// The list is kept canonical: interior cuts that lie on the line through
/// their neighbours are dropped, so structural equality coincides with
/// equality of the represented membership functions.
class FuzzyDegree {
 public:
  explicit FuzzyDegree(std::vector<AlphaCut> cuts) : cuts_(std::move(cuts)) {
    validate();
    canonicalize();
  }

  /// Embeds a crisp degree: every cut is the point interval [x, x].
  static FuzzyDegree crisp(Degree x) {
    return FuzzyDegree({{Degree::zero(), x, x}, {Degree::one(), x, x}});
  }

  /// Triangle with support [beta1, beta2] and peak at `peak`.
  static FuzzyDegree triangular(Degree beta1, Degree peak, Degree beta2) {
    if (!(beta1 <= peak && peak <= beta2)) {
      throw domain_error("triangular degree requires beta1 <= peak <= beta2, got tri(" +
                         beta1.str() + ", " + peak.str() + ", " + beta2.str() + ")");
    }
    return FuzzyDegree({{Degree::zero(), beta1, beta2}, {Degree::one(), peak, peak}});
  }

  const std::vector<AlphaCut>& cuts() const { return cuts_; }

  bool is_crisp() const {
    return cuts_.front().lower == cuts_.front().upper;
  }

  /// Crisp or a plain two-cut triangle.
  bool is_triangular() const {
    return cuts_.size() == 2 && cuts_.back().lower == cuts_.back().upper;
  }

  /// Value of a crisp degree; undefined unless is_crisp().
  const Degree& crisp_value() const { return cuts_.front().lower; }

  const AlphaCut& support() const { return cuts_.front(); }
  const AlphaCut& core() const { return cuts_.back(); }

  /// Interval at an arbitrary level, interpolating between stored cuts.
  std::pair<Degree, Degree> interval_at(const Degree& level) const {
    return {Degree(boundary_at(level, /*lower=*/true)),
            Degree(boundary_at(level, /*lower=*/false))};
  }

  /// Raw boundary value at `level` (lower or upper edge of the cut).
  Rational boundary_at(const Degree& level, bool lower) const {
    const auto& t = level.value();
    std::size_t i = 0;
    while (i + 1 < cuts_.size() && cuts_[i + 1].level <= level) ++i;
    const AlphaCut& lo = cuts_[i];
    if (lo.level == level || i + 1 == cuts_.size()) {
      return (lower ? lo.lower : lo.upper).value();
    }
    const AlphaCut& hi = cuts_[i + 1];
    const Rational& v0 = (lower ? lo.lower : lo.upper).value();
    const Rational& v1 = (lower ? hi.lower : hi.upper).value();
    const Rational& t0 = lo.level.value();
    const Rational& t1 = hi.level.value();
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }

  friend bool operator==(const FuzzyDegree& a, const FuzzyDegree& b) {
    return a.cuts_ == b.cuts_;
  }
  friend bool operator!=(const FuzzyDegree& a, const FuzzyDegree& b) {
    return !(a == b);
  }

 private:
  void validate() const {
    if (cuts_.empty()) throw domain_error("fuzzy degree needs at least one alpha-cut");
    if (!cuts_.front().level.is_zero()) {
      throw domain_error("fuzzy degree must include a level-0 cut");
    }
    if (!cuts_.back().level.is_one()) {
      throw domain_error("fuzzy degree must include a level-1 cut");
    }
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
      if (cuts_[i].upper < cuts_[i].lower) {
        throw domain_error("alpha-cut with lower > upper at level " +
                           cuts_[i].level.str());
      }
      if (i > 0) {
        if (!(cuts_[i - 1].level < cuts_[i].level)) {
          throw domain_error("alpha-cut levels must be strictly increasing");
        }
        if (cuts_[i].lower < cuts_[i - 1].lower ||
            cuts_[i - 1].upper < cuts_[i].upper) {
          throw domain_error("alpha-cuts must nest: level " + cuts_[i].level.str() +
                             " widens the interval");
        }
      }
    }
  }

  // Drops interior cuts that are linear interpolations of their neighbours.
  void canonicalize() {
    std::vector<AlphaCut> kept;
    kept.reserve(cuts_.size());
    for (const AlphaCut& cut : cuts_) {
      kept.push_back(cut);
      while (kept.size() >= 3 &&
             collinear(kept[kept.size() - 3], kept[kept.size() - 2],
                       kept[kept.size() - 1])) {
        kept.erase(kept.end() - 2);
      }
    }
    cuts_ = std::move(kept);
  }

  static bool collinear(const AlphaCut& a, const AlphaCut& b, const AlphaCut& c) {
    const auto on_line = [&](const Degree AlphaCut::* side) {
      const Rational& t0 = a.level.value();
      const Rational& t1 = b.level.value();
      const Rational& t2 = c.level.value();
      const Rational& v0 = (a.*side).value();
      const Rational& v1 = (b.*side).value();
      const Rational& v2 = (c.*side).value();
      return (v1 - v0) * (t2 - t0) == (v2 - v0) * (t1 - t0);
    };
    return on_line(&AlphaCut::lower) && on_line(&AlphaCut::upper);
  }

  std::vector<AlphaCut> cuts_;
};

/// Membership mu(chi): the highest level whose cut contains chi; 0 outside
/// the support. Exact on the piecewise-linear representation.
inline Degree membership(const FuzzyDegree& fd, const Degree& chi) {
  const auto& cuts = fd.cuts();
  if (chi < cuts.front().lower || cuts.front().upper < chi) {
    return Degree::zero();
  }
  for (std::size_t i = cuts.size(); i-- > 0;) {
    const AlphaCut& cut = cuts[i];
    if (cut.lower <= chi && chi <= cut.upper) {
      if (i + 1 == cuts.size()) return cut.level;
      // chi left the interval somewhere inside the segment above cut i:
      // solve the linear boundary for the crossing level.
      const AlphaCut& above = cuts[i + 1];
      const Rational& t0 = cut.level.value();
      const Rational& t1 = above.level.value();
      Rational level;
      if (chi < above.lower) {
        level = t0 + (t1 - t0) * (chi.value() - cut.lower.value()) /
                         (above.lower.value() - cut.lower.value());
      } else {
        level = t0 + (t1 - t0) * (cut.upper.value() - chi.value()) /
                         (cut.upper.value() - above.upper.value());
      }
      return Degree(level);
    }
  }
  return Degree::zero();  // unreachable: the support contains chi
}

/// The crisp value whose membership is 1; midpoint of the core if the
/// core is a flat interval.
inline Degree defuzzify(const FuzzyDegree& fd) {
  const AlphaCut& core = fd.core();
  return midpoint(core.lower, core.upper);
}

/// Pointwise complement 1 - x (extension of the crisp complement).
inline FuzzyDegree complement(const FuzzyDegree& fd) {
  std::vector<AlphaCut> cuts;
  cuts.reserve(fd.cuts().size());
  for (const AlphaCut& cut : fd.cuts()) {
    cuts.push_back({cut.level, cut.upper.complement(), cut.lower.complement()});
  }
  return FuzzyDegree(std::move(cuts));
}

namespace detail {

// Levels where two linear boundaries cross strictly inside (t0, t1).
inline void add_crossing(const Rational& t0, const Rational& t1,
                         const Rational& a0, const Rational& a1,
                         const Rational& b0, const Rational& b1,
                         std::vector<Degree>& out) {
  const Rational d0 = a0 - b0;
  const Rational d1 = a1 - b1;
  if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) {
    out.push_back(Degree(t0 + (t1 - t0) * d0 / (d0 - d1)));
  }
}

}  // namespace detail

/// Extension-principle minimum. min is monotone in both arguments, so each
/// alpha-cut of the result is the interval min of the operand cuts; extra
/// cuts are inserted wherever the operand boundaries cross between stored
/// levels, which keeps the piecewise-linear result exact.
inline FuzzyDegree fuzzy_min(const FuzzyDegree& a, const FuzzyDegree& b) {
  std::vector<Degree> levels;
  for (const AlphaCut& cut : a.cuts()) levels.push_back(cut.level);
  for (const AlphaCut& cut : b.cuts()) levels.push_back(cut.level);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Degree> crossings;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Rational& t0 = levels[i].value();
    const Rational& t1 = levels[i + 1].value();
    for (bool lower : {true, false}) {
      detail::add_crossing(t0, t1, a.boundary_at(levels[i], lower),
                           a.boundary_at(levels[i + 1], lower),
                           b.boundary_at(levels[i], lower),
                           b.boundary_at(levels[i + 1], lower), crossings);
    }
  }
  levels.insert(levels.end(), crossings.begin(), crossings.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<AlphaCut> cuts;
  cuts.reserve(levels.size());
  for (const Degree& level : levels) {
    const auto [alo, ahi] = a.interval_at(level);
    const auto [blo, bhi] = b.interval_at(level);
    cuts.push_back({level, min(alo, blo), min(ahi, bhi)});
  }
  return FuzzyDegree(std::move(cuts));
}

/// Constants of the closed-form triangular membership
///   mu(chi) = k1 * (chi - beta1) - k2 * (|chi - peak| + chi - peak)
/// read as its two linear pieces: slope k1 rising to the peak, slope
/// k1 - 2*k2 falling after it.
struct TriangularParams {
  Rational k1;
  Rational k2;
  Degree beta1;
  Degree beta2;
  Degree peak;
};

/// Validates that the constants describe a normalized triangle on
/// [beta1, beta2] peaking at `peak`, then normalizes to the alpha-cut form.
inline FuzzyDegree from_triangular_params(const TriangularParams& p) {
  if (p.k1 <= 0) {
    throw domain_error("triangular params require k1 > 0");
  }
  if (!(p.beta1 <= p.peak && p.peak <= p.beta2)) {
    throw domain_error("triangular params require beta1 <= peak <= beta2");
  }
  if (p.beta1 == p.beta2) {
    return FuzzyDegree::crisp(p.peak);  // point interval, any constants
  }

  const auto clamp01 = [](Rational v) {
    if (v < 0) return Rational(0);
    if (v > 1) return Rational(1);
    return v;
  };
  // mu(beta1) is identically 0 on the rising piece.
  const Rational mu_peak = p.k1 * (p.peak.value() - p.beta1.value());
  const Rational mu_beta2 = p.k1 * (p.beta2.value() - p.beta1.value()) -
                            2 * p.k2 * (p.beta2.value() - p.peak.value());
  if (clamp01(mu_peak) != 1 || clamp01(mu_beta2) != 0) {
    throw domain_error("triangular params are not normalized: mu(peak) = " +
                       mu_peak.str() + ", mu(beta2) = " + mu_beta2.str());
  }
  return FuzzyDegree::triangular(p.beta1, p.peak, p.beta2);
}

/// `0.3` for crisp values, `tri(a, b, c)` for triangles, explicit
/// `cuts(...)` for everything else.
inline std::string to_string(const FuzzyDegree& fd) {
  if (fd.is_crisp()) return fd.crisp_value().str();
  if (fd.is_triangular()) {
    return "tri(" + fd.support().lower.str() + ", " + fd.core().lower.str() +
           ", " + fd.support().upper.str() + ")";
  }
  std::string out = "cuts(";
  bool first = true;
  for (const AlphaCut& cut : fd.cuts()) {
    if (!first) out += "; ";
    first = false;
    out += cut.level.str() + ": [" + cut.lower.str() + ", " + cut.upper.str() + "]";
  }
  return out + ")";
}

inline std::string to_string(const Degree& d) { return d.str(); }

}  // namespace certnet
