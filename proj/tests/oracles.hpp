#ifndef NBAUDIT_TESTS_ORACLES_HPP
#define NBAUDIT_TESTS_ORACLES_HPP

// Brute-force reference computations. None of these call into the
// library code paths they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

/// Joint frequency table over two binary count attributes and two classes:
/// freq[c][x1][x2] records of class c with attribute values (x1, x2).
using JointTable = std::array<std::array<std::array<int, 2>, 2>, 2>;

/// Posterior Pr(c | x1, x2) of a multinomial naive Bayes model whose token
/// probabilities are Laplace-smoothed from the joint table, evaluated with
/// plain products in linear space.
inline std::array<double, 2> exact_bayes(const JointTable& f, double alpha, int x1, int x2) {
  std::array<double, 2> n{}, t1{}, t2{};
  double total = 0;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        n[c] += f[c][a][b];
        t1[c] += f[c][a][b] * a;
        t2[c] += f[c][a][b] * b;
        total += f[c][a][b];
      }
  std::array<double, 2> joint{};
  for (int c = 0; c < 2; ++c) {
    double denom = t1[c] + t2[c] + 2 * alpha;
    double th1 = (t1[c] + alpha) / denom, th2 = (t2[c] + alpha) / denom;
    joint[c] = n[c] / total * std::pow(th1, x1) * std::pow(th2, x2);
  }
  double z = joint[0] + joint[1];
  return {joint[0] / z, joint[1] / z};
}

/// Mann-Whitney AUC: fraction of (positive, negative) pairs ordered correctly, ties count 1/2.
inline double mann_whitney_auc(const std::vector<double>& s, const std::vector<bool>& pos) {
  double good = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (pos[i] && !pos[j]) {
        pairs += 1;
        if (s[i] > s[j]) good += 1;
        else if (s[i] == s[j]) good += 0.5;
      }
  return good / pairs;
}

/// Groups of positions (0..m-1) that survive the thresholds under the
/// downward-closure rule, found by enumerating every subset of size <= max_k.
inline std::set<std::vector<std::size_t>> brute_force_groups(const std::vector<double>& scores,
                                                             double prior, double s1, double s2,
                                                             double s3, std::size_t max_k) {
  const std::size_t m = scores.size();
  std::function<bool(const std::vector<std::size_t>&)> ok = [&](const std::vector<std::size_t>& g) {
    if (g.size() == 1) return scores[g[0]] >= s1;
    double prod = 1;
    for (auto p : g) prod *= scores[p];
    double joint = prod / std::pow(prior, static_cast<double>(g.size() - 1));
    if (joint < (g.size() == 2 ? s2 : s3)) return false;
    for (std::size_t drop = 0; drop < g.size(); ++drop) {
      std::vector<std::size_t> sub;
      for (std::size_t t = 0; t < g.size(); ++t)
        if (t != drop) sub.push_back(g[t]);
      if (!ok(sub)) return false;
    }
    return true;
  };
  std::set<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) g.push_back(i);
    if (g.size() < 2 || g.size() > max_k) continue;
    if (ok(g)) out.insert(g);
  }
  return out;
}

/// Representativeness index written out term by term, as one would in a spreadsheet:
/// column A = class rank r, B = sample rank j, C = (2r-1)/(2m), D = (2j-1)/(2n), E = (C-D)^2.
inline double representativeness(std::size_t m, std::vector<std::size_t> ranks_1based) {
  std::sort(ranks_1based.begin(), ranks_1based.end());
  const double n = static_cast<double>(ranks_1based.size());
  double e = 0;
  for (std::size_t j = 1; j <= ranks_1based.size(); ++j) {
    double c = (2.0 * ranks_1based[j - 1] - 1.0) / (2.0 * m);
    double d = (2.0 * j - 1.0) / (2.0 * n);
    e += (c - d) * (c - d);
  }
  return 1.0 - e * 12.0 * n / (4.0 * n * n - 1.0);
}

/// Two-sample KS distance by evaluating both ECDFs at every observed value.
inline double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  auto ecdf = [](const std::vector<double>& s, double x) {
    double c = 0;
    for (double v : s) c += v <= x;
    return c / static_cast<double>(s.size());
  };
  for (const auto* s : {&a, &b})
    for (double x : *s) d = std::max(d, std::abs(ecdf(a, x) - ecdf(b, x)));
  return d;
}

}  // namespace oracle

#endif  // NBAUDIT_TESTS_ORACLES_HPP
