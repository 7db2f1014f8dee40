#ifndef NBAUDIT_POSTERIOR_DISTRIBUTION_HPP
#define NBAUDIT_POSTERIOR_DISTRIBUTION_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "nbaudit/classifier.hpp"
#include "nbaudit/dataset.hpp"
#include "nbaudit/error.hpp"

namespace nbaudit {

/// Members of one class ordered by ascending Pr(class | x), ties by record index.
/// Position p (0-based) in this order is the member's rank minus one.
struct ClassPosteriorDistribution {
  ClassPosteriorDistribution(ClassLabel l, std::size_t c, double p)
      : label(std::move(l)), class_index(c), prior(p) {}

  ClassLabel label;
  std::size_t class_index = 0;  // column in the posterior table
  double prior = 0.0;           // model prior Pr(class)
  std::vector<std::size_t> member_indices;
  std::vector<double> scores;
  /// Running sum of scores divided by the class total; ends at 1.
  std::vector<double> normalized_cdf;

  std::size_t size() const noexcept { return member_indices.size(); }

  /// Position of a record within the ordering, if it is a member.
  std::optional<std::size_t> position_of(std::size_t record) const {
    // by_record_ is sorted on record index
    auto it = std::lower_bound(by_record_.begin(), by_record_.end(),
                               std::pair<std::size_t, std::size_t>{record, 0});
    if (it == by_record_.end() || it->first != record) return std::nullopt;
    return it->second;
  }

  void index_positions() {
    by_record_.clear();
    for (std::size_t p = 0; p < member_indices.size(); ++p)
      by_record_.emplace_back(member_indices[p], p);
    std::sort(by_record_.begin(), by_record_.end());
  }

private:
  std::vector<std::pair<std::size_t, std::size_t>> by_record_;
};

/// Builds the distribution from already-ordered members and scores.
/// A class whose total score mass is 0 gets the uniform CDF p/m.
inline ClassPosteriorDistribution make_distribution(ClassLabel label, std::size_t class_index,
                                                    double prior,
                                                    std::vector<std::size_t> members,
                                                    std::vector<double> scores) {
  if (members.empty())
    throw Error(ErrorKind::data, "class '" + label.name() + "' has no members");
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return members[a] < members[b];
  });
  ClassPosteriorDistribution d(std::move(label), class_index, prior);
  d.member_indices.reserve(order.size());
  d.scores.reserve(order.size());
  for (auto o : order) {
    d.member_indices.push_back(members[o]);
    d.scores.push_back(scores[o]);
  }
  const double total = std::accumulate(d.scores.begin(), d.scores.end(), 0.0);
  const double m = static_cast<double>(d.size());
  double run = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p) {
    run += d.scores[p];
    d.normalized_cdf.push_back(total > 0 ? run / total : static_cast<double>(p + 1) / m);
  }
  d.normalized_cdf.back() = 1.0;
  d.index_positions();
  return d;
}

/// Members are the records whose true label equals `label`.
inline ClassPosteriorDistribution build_distribution(const PosteriorTable& table,
                                                     const LabeledDataset& data,
                                                     const ClassLabel& label) {
  if (table.size() != data.size())
    throw Error(ErrorKind::data, "posterior table and dataset differ in length");
  const std::size_t c = table.label_index(label);
  auto members = class_members(data, label);
  std::vector<double> scores;
  scores.reserve(members.size());
  for (auto i : members) scores.push_back(table.rows[i][c]);
  return make_distribution(label, c, table.priors.at(c), std::move(members), std::move(scores));
}

}  // namespace nbaudit

#endif  // NBAUDIT_POSTERIOR_DISTRIBUTION_HPP
