#ifndef TWOSAMPLE_DGP_HPP
#define TWOSAMPLE_DGP_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "twosample/ecdf.hpp"
#include "twosample/rng.hpp"

namespace twosample {

// Data-generating processes for the power studies. Sample A is always a
// standard normal; sample B differs per family.
enum class DgpFamily {
  Null,         // N(0,1) vs N(0,1)
  MeanShift,    // N(0,1) vs N(mu, 1)
  VarInflate,   // N(0,1) vs N(0, sigma^2)
  MeanAndVar,   // N(0,1) vs N(0.5, 2.25)
  MixMean,      // mixture with shifted component means, centered to mean 0
  MixVar,       // mixture with unequal component variances, scaled to var 1
  MixBoth,      // mixture differing in both, standardized to mean 0 / var 1
};

inline const char* to_string(DgpFamily f) {
  switch (f) {
    case DgpFamily::Null: return "null";
    case DgpFamily::MeanShift: return "mean-shift";
    case DgpFamily::VarInflate: return "var-inflate";
    case DgpFamily::MeanAndVar: return "mean-and-var";
    case DgpFamily::MixMean: return "mix-mean";
    case DgpFamily::MixVar: return "mix-var";
    case DgpFamily::MixBoth: return "mix-both";
  }
  return "?";
}

inline DgpFamily dgp_family_from_string(const std::string& name) {
  for (DgpFamily f : {DgpFamily::Null, DgpFamily::MeanShift,
                      DgpFamily::VarInflate, DgpFamily::MeanAndVar,
                      DgpFamily::MixMean, DgpFamily::MixVar,
                      DgpFamily::MixBoth})
    if (name == to_string(f)) return f;
  throw std::invalid_argument("unknown DGP family: " + name);
}

struct DgpSpec {
  DgpFamily family = DgpFamily::Null;
  double param = 0.0;  // mu for MeanShift, sigma^2 for VarInflate; else unused
  std::size_t n_a = 50, n_b = 50;
};

namespace detail {

// Mixture constants. Centering/scaling is analytic, not empirical.
//   MixMean: 0.2 N(0.8,1) + 0.8 N(-0.2,1); mixture mean is already 0.
//   MixVar:  0.2 N(0,0.625) + 0.8 N(0,2.5); variance 2.125, scaled to 1.
//   MixBoth: components pre-divided by 1.7607 (the quoted standardizer).
inline double draw_mix_mean(Rng& rng) {
  return rng.uniform01() < 0.2 ? rng.normal(0.8, 1.0) : rng.normal(-0.2, 1.0);
}

inline double draw_mix_var(Rng& rng) {
  constexpr double kScale = 2.125;  // 0.2*0.625 + 0.8*2.5
  const double v = rng.uniform01() < 0.2 ? rng.normal(0.0, std::sqrt(0.625))
                                         : rng.normal(0.0, std::sqrt(2.5));
  return v / std::sqrt(kScale);
}

inline double draw_mix_both(Rng& rng) {
  constexpr double kScale = 1.7607;
  const double root = std::sqrt(kScale);
  return rng.uniform01() < 0.2
             ? rng.normal(0.8 / root, std::sqrt(4.0 / kScale))
             : rng.normal(-0.2 / root, std::sqrt(1.0 / kScale));
}

}  // namespace detail

inline double draw_dgp_b(const DgpSpec& spec, Rng& rng) {
  switch (spec.family) {
    case DgpFamily::Null: return rng.normal();
    case DgpFamily::MeanShift: return rng.normal(spec.param, 1.0);
    case DgpFamily::VarInflate:
      if (spec.param <= 0.0)
        throw std::invalid_argument("variance ratio must be positive");
      return rng.normal(0.0, std::sqrt(spec.param));
    case DgpFamily::MeanAndVar: return rng.normal(0.5, 1.5);
    case DgpFamily::MixMean: return detail::draw_mix_mean(rng);
    case DgpFamily::MixVar: return detail::draw_mix_var(rng);
    case DgpFamily::MixBoth: return detail::draw_mix_both(rng);
  }
  throw std::invalid_argument("unknown DGP family");
}

inline std::pair<Sample, Sample> draw_dgp(const DgpSpec& spec, Rng& rng) {
  if (spec.n_a == 0 || spec.n_b == 0)
    throw std::invalid_argument("sample sizes must be positive");
  Sample a, b;
  a.values.reserve(spec.n_a);
  b.values.reserve(spec.n_b);
  for (std::size_t i = 0; i < spec.n_a; ++i) a.values.push_back(rng.normal());
  for (std::size_t i = 0; i < spec.n_b; ++i)
    b.values.push_back(draw_dgp_b(spec, rng));
  return {std::move(a), std::move(b)};
}

}  // namespace twosample

#endif  // TWOSAMPLE_DGP_HPP
