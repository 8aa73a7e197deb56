#ifndef TWOSAMPLE_TESTS_ORACLE_HPP
#define TWOSAMPLE_TESTS_ORACLE_HPP

// Brute-force reference for the six statistics. Evaluates each ECDF by
// direct counting at every evaluation point, O(n^2), with no shared code
// with the single-pass implementation.

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

inline double ecdf_at(const std::vector<double>& sample, double x) {
  std::size_t count = 0;
  for (double v : sample)
    if (v <= x) ++count;
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

struct OracleStats {
  double ks, kuiper, cvm, ad, wass, dts;
};

inline OracleStats compute(const std::vector<double>& a,
                           const std::vector<double>& b) {
  std::vector<double> combined = a;
  combined.insert(combined.end(), b.begin(), b.end());
  std::vector<double> pooled = combined;
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> distinct = pooled;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  auto diff_at = [&](double x) { return ecdf_at(b, x) - ecdf_at(a, x); };
  auto weight_at = [&](double x) {
    const double d = ecdf_at(combined, x);
    const double denom = d * (1.0 - d);
    return denom > 0.0 ? 1.0 / denom : 0.0;  // numerator is 0 wherever denom is
  };

  OracleStats s{0, 0, 0, 0, 0, 0};
  double max_diff = 0, min_diff = 0;
  for (double x : distinct) {
    max_diff = std::max(max_diff, diff_at(x));
    min_diff = std::min(min_diff, diff_at(x));
    s.ks = std::max(s.ks, std::abs(diff_at(x)));
  }
  s.kuiper = max_diff - min_diff;

  for (double x : combined) {  // multiset: duplicates each contribute a term
    s.cvm += std::abs(diff_at(x));
    s.ad += std::abs(diff_at(x)) * weight_at(x);
  }

  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    const double width = distinct[i + 1] - distinct[i];
    s.wass += std::abs(diff_at(distinct[i])) * width;
    s.dts += std::abs(diff_at(distinct[i])) * weight_at(distinct[i]) * width;
  }
  return s;
}

}  // namespace oracle

#endif  // TWOSAMPLE_TESTS_ORACLE_HPP
