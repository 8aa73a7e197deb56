#ifndef TWOSAMPLE_ECDF_HPP
#define TWOSAMPLE_ECDF_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twosample {

// One group of observations. Order is irrelevant; every statistic sorts
// internally.
struct Sample {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

inline void validate_sample(const Sample& s, const char* which = "sample") {
  if (s.values.empty())
    throw std::invalid_argument(std::string(which) + " is empty");
  for (double v : s.values)
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(which) +
                                  " contains a non-finite value");
}

enum class StatKind { KS, Kuiper, CVM, AD, Wass, DTS };

inline const char* to_string(StatKind k) {
  switch (k) {
    case StatKind::KS: return "ks";
    case StatKind::Kuiper: return "kuiper";
    case StatKind::CVM: return "cvm";
    case StatKind::AD: return "ad";
    case StatKind::Wass: return "wass";
    case StatKind::DTS: return "dts";
  }
  return "?";
}

inline constexpr StatKind kAllStatKinds[6] = {StatKind::KS,  StatKind::Kuiper,
                                              StatKind::CVM, StatKind::AD,
                                              StatKind::Wass, StatKind::DTS};

// All six statistics from one pass; cheap enough to always compute together.
struct StatSet {
  double ks = 0, kuiper = 0, cvm = 0, ad = 0, wass = 0, dts = 0;

  double get(StatKind k) const {
    switch (k) {
      case StatKind::KS: return ks;
      case StatKind::Kuiper: return kuiper;
      case StatKind::CVM: return cvm;
      case StatKind::AD: return ad;
      case StatKind::Wass: return wass;
      case StatKind::DTS: return dts;
    }
    return 0;
  }
};

// Merged, sorted combined sample with the two ECDF heights, the pooled ECDF
// height, and the width to the next distinct point. Heights are recorded
// after absorbing the whole tie group, so tied points share identical values.
struct JointMerge {
  std::vector<double> points;
  std::vector<double> e_height;  // fraction of sample A <= x
  std::vector<double> f_height;  // fraction of sample B <= x
  std::vector<double> d_height;  // fraction of pooled sample <= x
  std::vector<double> gap;       // x_{next distinct} - x, 0 after the last
};

// Preprocessed grid shared by the observed statistic and every resample:
// sorted pooled values, tie-group boundaries, and inter-group gaps are all
// invariant under relabeling, so each resample only needs new counts.
struct MergedGrid {
  std::vector<double> values;           // sorted, duplicates retained
  std::vector<std::uint32_t> group_end; // one past the end of each tie group
  std::vector<double> group_gap;        // per group, 0 for the last
  std::vector<std::uint32_t> from_a;    // observed labels, 1 if from sample A
  std::uint32_t n_a = 0, n_b = 0;

  std::uint32_t size() const { return n_a + n_b; }
};

inline MergedGrid make_merged_grid(const Sample& a, const Sample& b) {
  validate_sample(a, "sample a");
  validate_sample(b, "sample b");
  const std::size_t n = a.size() + b.size();
  std::vector<std::pair<double, std::uint32_t>> tagged;
  tagged.reserve(n);
  for (double v : a.values) tagged.emplace_back(v, 1);
  for (double v : b.values) tagged.emplace_back(v, 0);
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  MergedGrid g;
  g.n_a = static_cast<std::uint32_t>(a.size());
  g.n_b = static_cast<std::uint32_t>(b.size());
  g.values.reserve(n);
  g.from_a.reserve(n);
  for (const auto& [v, tag] : tagged) {
    g.values.push_back(v);
    g.from_a.push_back(tag);
  }
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && g.values[j] == g.values[i]) ++j;
    g.group_end.push_back(static_cast<std::uint32_t>(j));
    g.group_gap.push_back(j < n ? g.values[j] - g.values[i] : 0.0);
    i = j;
  }
  return g;
}

// Single pass over the tie groups. count_a/count_b give, per sorted
// position, how many copies of that observation the (re)sample assigned to
// each group; totals must be n_a and n_b. Positions with zero total count
// simply contribute nothing, which is what makes the same grid reusable for
// bootstrap resamples.
inline StatSet compute_stats(const MergedGrid& g,
                             std::span<const std::uint32_t> count_a,
                             std::span<const std::uint32_t> count_b) {
  const double na = g.n_a, nb = g.n_b;
  const std::uint64_t n = g.n_a + g.n_b;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);

  StatSet s;
  double max_diff = 0.0, min_diff = 0.0;
  std::uint64_t cum_a = 0, cum_b = 0;
  std::size_t start = 0;
  for (std::size_t gi = 0; gi < g.group_end.size(); ++gi) {
    const std::size_t end = g.group_end[gi];
    std::uint64_t ga = 0, gb = 0;
    for (std::size_t i = start; i < end; ++i) {
      ga += count_a[i];
      gb += count_b[i];
    }
    cum_a += ga;
    cum_b += gb;
    const std::uint64_t cum = cum_a + cum_b;
    const double diff = static_cast<double>(cum_b) / nb -
                        static_cast<double>(cum_a) / na;
    const double adiff = std::abs(diff);
    max_diff = std::max(max_diff, diff);
    min_diff = std::min(min_diff, diff);
    s.ks = std::max(s.ks, adiff);

    const double m = static_cast<double>(ga + gb);
    s.cvm += m * adiff;
    // D(1-D) = cum*(n-cum)/n^2; zero only where both ECDFs agree, so those
    // terms are defined as 0.
    const std::uint64_t denom_int = cum * (n - cum);
    if (denom_int != 0) {
      const double weighted = adiff * n2 / static_cast<double>(denom_int);
      s.ad += m * weighted;
      s.dts += weighted * g.group_gap[gi];
    }
    s.wass += adiff * g.group_gap[gi];
    start = end;
  }
  s.kuiper = max_diff - min_diff;
  return s;
}

inline StatSet compute_observed_stats(const MergedGrid& g) {
  std::vector<std::uint32_t> count_b(g.from_a.size());
  for (std::size_t i = 0; i < g.from_a.size(); ++i)
    count_b[i] = 1u - g.from_a[i];
  return compute_stats(g, g.from_a, count_b);
}

inline JointMerge build_joint_merge(const Sample& a, const Sample& b) {
  const MergedGrid g = make_merged_grid(a, b);
  const double na = g.n_a, nb = g.n_b, n = na + nb;

  JointMerge jm;
  jm.points = g.values;
  jm.e_height.resize(g.size());
  jm.f_height.resize(g.size());
  jm.d_height.resize(g.size());
  jm.gap.resize(g.size());

  std::uint64_t cum_a = 0, cum_b = 0;
  std::size_t start = 0;
  for (std::size_t gi = 0; gi < g.group_end.size(); ++gi) {
    const std::size_t end = g.group_end[gi];
    for (std::size_t i = start; i < end; ++i) cum_a += g.from_a[i], cum_b += 1u - g.from_a[i];
    for (std::size_t i = start; i < end; ++i) {
      jm.e_height[i] = static_cast<double>(cum_a) / na;
      jm.f_height[i] = static_cast<double>(cum_b) / nb;
      jm.d_height[i] = static_cast<double>(cum_a + cum_b) / n;
      jm.gap[i] = g.group_gap[gi];
    }
    start = end;
  }
  return jm;
}

inline double ks_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).ks;
}
inline double kuiper_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).kuiper;
}
inline double cvm_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).cvm;
}
inline double ad_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).ad;
}
inline double wass_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).wass;
}
inline double dts_stat(const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).dts;
}

inline double stat_value(StatKind k, const Sample& a, const Sample& b) {
  return compute_observed_stats(make_merged_grid(a, b)).get(k);
}

}  // namespace twosample

#endif  // TWOSAMPLE_ECDF_HPP
