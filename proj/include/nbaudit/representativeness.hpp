#ifndef NBAUDIT_REPRESENTATIVENESS_HPP
#define NBAUDIT_REPRESENTATIVENESS_HPP

#include <algorithm>
#include <span>
#include <vector>

#include "nbaudit/error.hpp"
#include "nbaudit/posterior_distribution.hpp"

namespace nbaudit {

/// Representativeness index of a drawn subset of a class.
///
/// The class's distribution along the posterior axis has the mid-step CDF
/// F(p) = (2p + 1) / (2m) at 0-based position p. With the n drawn members at
/// ascending positions p_1 < ... < p_n,
///
///   RI = 1 - 12n / (4n^2 - 1) * sum_j (F(p_j) - (2j - 1) / (2n))^2
///
/// The prefactor is the reciprocal of the largest value the sum can take for a
/// non-decreasing F in [0,1], so RI lies in [0,1] and equals 1 for the whole class.
inline double representativeness_from_positions(std::size_t class_size,
                                                std::span<const std::size_t> positions) {
  if (positions.empty())
    throw Error(ErrorKind::data, "representativeness index undefined for an empty sample");
  std::vector<std::size_t> pos(positions.begin(), positions.end());
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
    throw Error(ErrorKind::data, "duplicate member in sample");
  if (pos.back() >= class_size) throw Error(ErrorKind::data, "sample position outside class");

  const double m = static_cast<double>(class_size);
  const double n = static_cast<double>(pos.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    double f = (2.0 * static_cast<double>(pos[j]) + 1.0) / (2.0 * m);
    double ref = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * n);
    sum += (f - ref) * (f - ref);
  }
  return 1.0 - 12.0 * n / (4.0 * n * n - 1.0) * sum;
}

/// RI of the records `drawn` (dataset row indices) within `dist`.
inline double representativeness_index(const ClassPosteriorDistribution& dist,
                                       std::span<const std::size_t> drawn) {
  std::vector<std::size_t> pos;
  pos.reserve(drawn.size());
  for (auto r : drawn) {
    auto p = dist.position_of(r);
    if (!p)
      throw Error(ErrorKind::data, "record " + std::to_string(r) + " is not a member of class '" +
                                       dist.label.name() + "'");
    pos.push_back(*p);
  }
  return representativeness_from_positions(dist.size(), pos);
}

}  // namespace nbaudit

#endif  // NBAUDIT_REPRESENTATIVENESS_HPP
