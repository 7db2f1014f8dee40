#ifndef NBAUDIT_SAMPLING_HPP
#define NBAUDIT_SAMPLING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbaudit/error.hpp"
#include "nbaudit/posterior_distribution.hpp"
#include "nbaudit/representativeness.hpp"

namespace nbaudit {

enum class Strategy { user, item, item_pair, item_kwise, hybrid };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::user: return "user";
    case Strategy::item: return "item";
    case Strategy::item_pair: return "item-pair";
    case Strategy::item_kwise: return "item-kwise";
    case Strategy::hybrid: return "hybrid";
  }
  return "unknown";
}

/// Percentile window [lower, upper] on a class's posterior ordering.
class PercentileBounds {
public:
  PercentileBounds(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!(lower_ >= 0.0 && lower_ < 100.0) || !(upper_ > 0.0 && upper_ <= 100.0) ||
        !(lower_ < upper_))
      throw Error(ErrorKind::config, "percentile bounds need 0 <= lower < upper <= 100");
  }

  /// Window symmetric around the median, e.g. 95 -> (2.5, 97.5).
  static PercentileBounds from_confidence(double confidence) {
    if (!(confidence > 0.0 && confidence <= 100.0))
      throw Error(ErrorKind::config, "confidence must lie in (0,100]");
    return {50.0 - confidence / 2.0, 50.0 + confidence / 2.0};
  }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double confidence() const noexcept { return upper_ - lower_; }

  /// Rank-midpoint rule: 1-based rank r of m is inside iff
  /// lower/100 < (r - 0.5)/m <= upper/100.
  bool contains_rank(std::size_t rank, std::size_t m) const noexcept {
    const double mid = 100.0 * (2.0 * static_cast<double>(rank) - 1.0);
    const double mm = 2.0 * static_cast<double>(m);
    return mid > lower_ * mm && mid <= upper_ * mm;
  }

  bool operator==(const PercentileBounds&) const = default;

private:
  double lower_;
  double upper_;
};

/// sigma1 gates single members, sigma2 pairs, sigma3 groups of three or more.
struct Thresholds {
  double sigma1 = 0.5;
  double sigma2 = 1.0;
  double sigma3 = 1.0;

  void validate() const {
    if (!(sigma1 > 0.0 && sigma1 <= 1.0))
      throw Error(ErrorKind::config, "sigma1 must lie in (0,1]");
    if (!(sigma2 > 0.0)) throw Error(ErrorKind::config, "sigma2 must be > 0");
    if (!(sigma3 > 0.0)) throw Error(ErrorKind::config, "sigma3 must be > 0");
  }

  bool operator==(const Thresholds&) const = default;
};

struct EvidenceSet {
  Strategy strategy = Strategy::user;
  ClassLabel label;
  std::vector<std::size_t> indices;  // dataset rows, ascending
  std::vector<double> scores;        // Pr(label | x) aligned with indices
  std::optional<PercentileBounds> bounds;
  std::optional<Thresholds> thresholds;
  std::optional<double> joint_score;  // groups only; may exceed 1
  std::optional<double> ri;           // absent when the set is empty
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
};

namespace detail {

/// Evidence from distribution positions; fills indices, scores, RI and the empty warning.
inline EvidenceSet evidence_from_positions(const ClassPosteriorDistribution& dist,
                                           Strategy strategy,
                                           std::vector<std::size_t> positions) {
  EvidenceSet ev{strategy, dist.label, {}, {}, std::nullopt, std::nullopt, std::nullopt,
                 std::nullopt, {}};
  std::vector<std::pair<std::size_t, double>> rows;
  rows.reserve(positions.size());
  for (auto p : positions) rows.emplace_back(dist.member_indices[p], dist.scores[p]);
  std::sort(rows.begin(), rows.end());
  for (auto& [i, s] : rows) {
    ev.indices.push_back(i);
    ev.scores.push_back(s);
  }
  if (positions.empty())
    ev.warnings.emplace_back("empty evidence set: parameters select no members");
  else
    ev.ri = representativeness_from_positions(dist.size(), positions);
  return ev;
}

inline void check_prior(double prior) {
  if (!(prior > 0.0 && prior < 1.0))
    throw Error(ErrorKind::data, "class prior must lie in (0,1)");
}

}  // namespace detail

inline EvidenceSet user_based_sample(const ClassPosteriorDistribution& dist,
                                     const PercentileBounds& bounds) {
  std::vector<std::size_t> pos;
  const std::size_t m = dist.size();
  for (std::size_t p = 0; p < m; ++p)
    if (bounds.contains_rank(p + 1, m)) pos.push_back(p);
  auto ev = detail::evidence_from_positions(dist, Strategy::user, std::move(pos));
  ev.bounds = bounds;
  return ev;
}

/// Members with sigma1 <= Pr(class | x) <= 1.
inline EvidenceSet item_based_sample(const ClassPosteriorDistribution& dist, double sigma1) {
  if (!(sigma1 > 0.0 && sigma1 <= 1.0)) throw Error(ErrorKind::config, "sigma1 must lie in (0,1]");
  std::vector<std::size_t> pos;
  for (std::size_t p = 0; p < dist.size(); ++p)
    if (dist.scores[p] >= sigma1) pos.push_back(p);
  auto ev = detail::evidence_from_positions(dist, Strategy::item, std::move(pos));
  ev.thresholds = Thresholds{sigma1, 1.0, 1.0};
  return ev;
}

/// Pr(C | A and B) = Pr(C|A) Pr(C|B) / Pr(C). Bounded by 1/Pr(C), not by 1.
inline double joint_posterior_pair(double pa, double pb, double prior) {
  detail::check_prior(prior);
  if (!(pa >= 0.0 && pa <= 1.0 && pb >= 0.0 && pb <= 1.0))
    throw Error(ErrorKind::data, "posteriors must lie in [0,1]");
  return pa * pb / prior;
}

/// prod(scores) / prior^(k-1); bounded by 1/prior^(k-1).
inline double joint_posterior_kwise(std::span<const double> scores, double prior) {
  detail::check_prior(prior);
  if (scores.size() < 2) throw Error(ErrorKind::data, "k-wise joint posterior needs k >= 2");
  double num = 1.0;
  double den = 1.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    double s = scores[i];
    if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::data, "posteriors must lie in [0,1]");
    num *= s;
    if (i > 0) den *= prior;
  }
  return num / den;
}

struct GroupSearchOptions {
  std::size_t max_k = 3;
  std::size_t candidate_cap = 1'000'000;  // per level
};

struct GroupSearchResult {
  EvidenceSet singles;                             // members passing sigma1
  std::vector<std::vector<EvidenceSet>> levels;    // levels[k-2] holds the k-member groups

  std::size_t group_count() const {
    std::size_t n = 0;
    for (const auto& l : levels) n += l.size();
    return n;
  }
};

/// Level-wise (Apriori) search. A k-group survives when every member passes
/// sigma1, every (k-1)-subgroup survived, and its joint score reaches sigma2
/// (k = 2) or sigma3 (k >= 3). Groups are returned sorted by record indices.
inline GroupSearchResult item_based_group_search(const ClassPosteriorDistribution& dist,
                                                 const Thresholds& th,
                                                 const GroupSearchOptions& opt = {}) {
  th.validate();
  if (opt.max_k < 2) throw Error(ErrorKind::config, "max_k must be >= 2");
  detail::check_prior(dist.prior);

  GroupSearchResult out{item_based_sample(dist, th.sigma1), {}};
  out.singles.thresholds = th;

  using Group = std::vector<std::size_t>;  // ascending distribution positions
  std::vector<Group> prev;
  for (std::size_t p = 0; p < dist.size(); ++p)
    if (dist.scores[p] >= th.sigma1) prev.push_back({p});

  std::vector<double> buf;
  for (std::size_t k = 2; k <= opt.max_k && prev.size() >= 2; ++k) {
    const double sigma = k == 2 ? th.sigma2 : th.sigma3;
    std::vector<Group> next;
    std::vector<double> next_scores;
    std::size_t candidates = 0;
    // prev is sorted lexicographically; groups sharing the first k-2 positions are contiguous.
    for (std::size_t a = 0; a < prev.size(); ++a) {
      for (std::size_t b = a + 1; b < prev.size(); ++b) {
        if (!std::equal(prev[a].begin(), prev[a].end() - 1, prev[b].begin())) break;
        Group cand = prev[a];
        cand.push_back(prev[b].back());
        if (++candidates > opt.candidate_cap)
          throw Error(ErrorKind::overflow, "group search exceeded " +
                                               std::to_string(opt.candidate_cap) +
                                               " candidates at level " + std::to_string(k));
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && closed; ++drop) {
          Group sub;
          for (std::size_t t = 0; t < cand.size(); ++t)
            if (t != drop) sub.push_back(cand[t]);
          closed = std::binary_search(prev.begin(), prev.end(), sub);
        }
        if (!closed) continue;
        buf.clear();
        for (auto p : cand) buf.push_back(dist.scores[p]);
        double joint = joint_posterior_kwise(buf, dist.prior);
        if (joint >= sigma) {
          next.push_back(std::move(cand));
          next_scores.push_back(joint);
        }
      }
    }
    if (next.empty()) break;

    std::vector<EvidenceSet> level;
    level.reserve(next.size());
    for (std::size_t g = 0; g < next.size(); ++g) {
      auto ev = detail::evidence_from_positions(
          dist, k == 2 ? Strategy::item_pair : Strategy::item_kwise, next[g]);
      ev.thresholds = th;
      ev.joint_score = next_scores[g];
      level.push_back(std::move(ev));
    }
    std::sort(level.begin(), level.end(),
              [](const EvidenceSet& x, const EvidenceSet& y) { return x.indices < y.indices; });
    out.levels.push_back(std::move(level));
    prev = std::move(next);
  }
  return out;
}

/// User-based window first, then the sigma1 filter inside it.
inline EvidenceSet hybrid_sample(const ClassPosteriorDistribution& dist,
                                 const PercentileBounds& bounds, const Thresholds& th) {
  th.validate();
  std::vector<std::size_t> pos;
  const std::size_t m = dist.size();
  for (std::size_t p = 0; p < m; ++p)
    if (bounds.contains_rank(p + 1, m) && dist.scores[p] >= th.sigma1) pos.push_back(p);
  auto ev = detail::evidence_from_positions(dist, Strategy::hybrid, std::move(pos));
  ev.bounds = bounds;
  ev.thresholds = th;
  return ev;
}

}  // namespace nbaudit

#endif  // NBAUDIT_SAMPLING_HPP
