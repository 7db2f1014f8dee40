#ifndef NBAUDIT_METRICS_HPP
#define NBAUDIT_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "nbaudit/classifier.hpp"
#include "nbaudit/dataset.hpp"
#include "nbaudit/error.hpp"
#include "nbaudit/representativeness.hpp"

namespace nbaudit {

/// Undefined ratios (zero denominators) are std::nullopt.
using MaybeReal = std::optional<double>;

inline MaybeReal ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

// ---------------------------------------------------------------------------
// Confusion matrix and derived ratios

struct ConfusionMatrix {
  std::vector<ClassLabel> labels;
  std::vector<std::vector<std::uint64_t>> counts;  // [true][predicted]

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& r : counts) t = std::accumulate(r.begin(), r.end(), t);
    return t;
  }

  std::vector<std::vector<double>> normalized() const {
    const double t = static_cast<double>(total());
    std::vector<std::vector<double>> out;
    for (const auto& r : counts) {
      std::vector<double> row;
      for (auto v : r) row.push_back(t > 0 ? static_cast<double>(v) / t : 0.0);
      out.push_back(std::move(row));
    }
    return out;
  }

  std::size_t label_index(const ClassLabel& l) const {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw Error(ErrorKind::data, "label '" + l.name() + "' not in matrix");
    return static_cast<std::size_t>(it - labels.begin());
  }
};

inline ConfusionMatrix confusion(const PosteriorTable& table, std::span<const ClassLabel> truth) {
  if (truth.size() != table.size())
    throw Error(ErrorKind::data, "confusion: " + std::to_string(truth.size()) + " labels for " +
                                     std::to_string(table.size()) + " predictions");
  ConfusionMatrix cm{table.labels, {}};
  cm.counts.assign(table.labels.size(), std::vector<std::uint64_t>(table.labels.size(), 0));
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++cm.counts[table.label_index(truth[i])][table.predicted[i]];
  return cm;
}

struct BinaryCounts {
  double tp = 0, tn = 0, fp = 0, fn = 0;
};

struct BinaryMetrics {
  MaybeReal accuracy, precision, recall, specificity, f1;
};

inline BinaryMetrics binary_metrics(const BinaryCounts& c) {
  BinaryMetrics m;
  m.accuracy = ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  if (m.precision && m.recall) m.f1 = ratio(2.0 * *m.precision * *m.recall, *m.precision + *m.recall);
  return m;
}

/// One-vs-rest collapse of `cm` around `positive`.
inline BinaryCounts one_vs_rest(const ConfusionMatrix& cm, std::size_t positive) {
  BinaryCounts c;
  for (std::size_t t = 0; t < cm.counts.size(); ++t)
    for (std::size_t p = 0; p < cm.counts.size(); ++p) {
      double v = static_cast<double>(cm.counts[t][p]);
      if (t == positive && p == positive) c.tp += v;
      else if (t == positive) c.fn += v;
      else if (p == positive) c.fp += v;
      else c.tn += v;
    }
  return c;
}

inline BinaryMetrics binary_metrics(const ConfusionMatrix& cm, const ClassLabel& positive) {
  return binary_metrics(one_vs_rest(cm, cm.label_index(positive)));
}

/// Mean of each one-vs-rest metric over the classes where it is defined.
inline BinaryMetrics macro_metrics(const ConfusionMatrix& cm) {
  auto avg = [](const std::vector<MaybeReal>& v) -> MaybeReal {
    double s = 0;
    std::size_t n = 0;
    for (const auto& x : v)
      if (x) {
        s += *x;
        ++n;
      }
    if (n == 0) return std::nullopt;
    return s / static_cast<double>(n);
  };
  std::vector<MaybeReal> acc, pre, rec, spe, f1;
  for (std::size_t c = 0; c < cm.labels.size(); ++c) {
    auto m = binary_metrics(one_vs_rest(cm, c));
    acc.push_back(m.accuracy);
    pre.push_back(m.precision);
    rec.push_back(m.recall);
    spe.push_back(m.specificity);
    f1.push_back(m.f1);
  }
  return {avg(acc), avg(pre), avg(rec), avg(spe), avg(f1)};
}

// ---------------------------------------------------------------------------
// ROC

struct RocPoint {
  double fpr = 0;
  double tpr = 0;
  double threshold = 0;  // score >= threshold is called positive; +inf at the origin
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) ... (1,1)
  double auc = 0;
};

/// Threshold sweep over distinct scores, highest first; equal scores form one step.
inline RocCurve roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size())
    throw Error(ErrorKind::data, "roc: scores and labels differ in length");
  const auto npos = static_cast<double>(std::count(positive.begin(), positive.end(), true));
  const auto nneg = static_cast<double>(positive.size()) - npos;
  if (npos == 0 || nneg == 0)
    throw Error(ErrorKind::data, "roc needs at least one positive and one negative");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve roc;
  roc.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  double tp = 0, fp = 0;
  double auc2 = 0;  // twice the area, in count units
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    double dtp = 0, dfp = 0;
    for (; i < order.size() && scores[order[i]] == s; ++i)
      (positive[order[i]] ? dtp : dfp) += 1.0;
    auc2 += dfp * (2.0 * tp + dtp);
    tp += dtp;
    fp += dfp;
    roc.points.push_back({fp / nneg, tp / npos, s});
  }
  roc.auc = auc2 / (2.0 * npos * nneg);
  return roc;
}

/// Positive class = `positive` column of the posterior table.
inline RocCurve roc_auc(const PosteriorTable& table, std::span<const ClassLabel> truth,
                        const ClassLabel& positive) {
  if (truth.size() != table.size())
    throw Error(ErrorKind::data, "roc: label count differs from table size");
  auto c = table.label_index(positive);
  auto scores = table.column(c);
  std::vector<bool> flags(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) flags[i] = truth[i] == positive;
  return roc_auc(scores, flags);
}

struct MacroAuc {
  std::vector<std::optional<double>> per_class;  // nullopt when a class is absent from truth
  double auc = 0;
};

/// One-vs-rest AUC per class, macro-averaged over the classes present in `truth`.
inline MacroAuc macro_auc(const PosteriorTable& table, std::span<const ClassLabel> truth) {
  MacroAuc out;
  double s = 0;
  std::size_t n = 0;
  for (const auto& l : table.labels) {
    bool present = std::find(truth.begin(), truth.end(), l) != truth.end();
    bool all = std::all_of(truth.begin(), truth.end(), [&](const ClassLabel& t) { return t == l; });
    if (!present || all) {
      out.per_class.push_back(std::nullopt);
      continue;
    }
    double a = roc_auc(table, truth, l).auc;
    out.per_class.push_back(a);
    s += a;
    ++n;
  }
  if (n == 0) throw Error(ErrorKind::data, "auc needs at least two classes in the truth labels");
  out.auc = s / static_cast<double>(n);
  return out;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

struct KsResult {
  double d = 0;
  double critical = 0;  // 1.22 / sqrt(m)
  std::size_t m = 0;
  bool rejected() const noexcept { return d > critical; }
};

inline double ks_critical(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::data, "ks critical value needs m >= 1");
  return 1.22 / std::sqrt(static_cast<double>(m));
}

/// sup |ECDF_a - ECDF_b|. `m` defaults to |b|, the evidence-sample size.
inline KsResult ks_statistic(std::span<const double> a, std::span<const double> b,
                             std::optional<std::size_t> m = std::nullopt) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::data, "ks needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.d = d;
  r.m = m.value_or(y.size());
  r.critical = ks_critical(r.m);
  return r;
}

struct MultiKsResult {
  std::vector<KsResult> per_attribute;
  KsResult summary;  // largest d across attributes
};

inline MultiKsResult ks_multivariate(const LabeledDataset& a, const LabeledDataset& b,
                                     std::optional<std::size_t> m = std::nullopt) {
  if (a.schema().columns() != b.schema().columns())
    throw Error(ErrorKind::schema, "ks: datasets have different attributes");
  MultiKsResult out;
  for (std::size_t j = 0; j < a.schema().size(); ++j) {
    auto ca = a.column(j), cb = b.column(j);
    out.per_attribute.push_back(ks_statistic(ca, cb, m));
  }
  out.summary = *std::max_element(
      out.per_attribute.begin(), out.per_attribute.end(),
      [](const KsResult& x, const KsResult& y) { return x.d < y.d; });
  return out;
}

// ---------------------------------------------------------------------------
// Variability

/// Rank-midpoint quantile: the k-th smallest of n sits at probability (k - 0.5)/n,
/// linear interpolation in between, clamped to the extremes.
inline double quantile_midpoint(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorKind::data, "quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  double h = q * n + 0.5;  // 1-based fractional rank
  if (h <= 1.0) return sorted.front();
  if (h >= n) return sorted.back();
  auto lo = static_cast<std::size_t>(std::floor(h));
  double frac = h - static_cast<double>(lo);
  return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

struct VariabilityReport {
  double min = 0, max = 0;
  double mean = 0;
  double standard_deviation = 0;  // n - 1 denominator
  double interquartile_range = 0;
  MaybeReal skewness;  // adjusted Fisher-Pearson; needs n >= 3 and spread
  MaybeReal coefficient_of_variation;
};

inline VariabilityReport variability(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorKind::data, "variability needs at least 2 values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  VariabilityReport r;
  r.min = v.front();
  r.max = v.back();
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0, m3 = 0;
  for (double x : v) {
    double d = x - r.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  r.standard_deviation = std::sqrt(m2 / (n - 1.0));
  r.interquartile_range = quantile_midpoint(v, 0.75) - quantile_midpoint(v, 0.25);
  m2 /= n;
  m3 /= n;
  if (v.size() >= 3 && m2 > 0) {
    double g1 = m3 / std::pow(m2, 1.5);
    r.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  }
  r.coefficient_of_variation = ratio(r.standard_deviation, r.mean);
  return r;
}

}  // namespace nbaudit

#endif  // NBAUDIT_METRICS_HPP
