#pragma once

// Shared test utilities: norms, reproducible random warps and signals.

#include <cmath>
#include <cstddef>
#include <vector>

#include "warpft/grid.hpp"
#include "warpft/numerics.hpp"
#include "warpft/warp.hpp"

namespace warpft::testhelpers {

inline double linf(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Random odd polynomial with 1..3 terms, linear coefficient well away from 0.
inline Warp random_odd_poly(SplitMix64& rng) {
  std::vector<double> coeffs;
  coeffs.push_back(rng.uniform(0.5, 2.0));
  const std::size_t extra = rng.next() % 3;
  for (std::size_t j = 0; j < extra; ++j) coeffs.push_back(rng.uniform(0.0, 0.5));
  return Warp::odd_polynomial(coeffs);
}

// Random signed monomial with exponent >= 1 so the derivative stays finite
// everywhere (the beta < 1 singularity at 0 is tested separately).
inline Warp random_monomial(SplitMix64& rng) {
  return Warp::signed_monomial(rng.uniform(0.5, 2.0), rng.uniform(1.0, 3.0));
}

inline Warp random_warp(SplitMix64& rng) {
  return (rng.next() & 1u) ? random_odd_poly(rng) : random_monomial(rng);
}

// Gaussian-enveloped test signal sampled uniformly in the warped coordinate:
// nodes are warp values, samples decay like exp(-W^2/2). Mild modulations
// keep the spectrum inside |K| < ~4 for the grids used in the tests.
inline SampledSignal enveloped_signal(const GridSpec& wgrid, SplitMix64& rng) {
  const double c0 = rng.uniform(0.5, 1.5);
  const double c1 = rng.uniform(-0.5, 0.5);
  const double c2 = rng.uniform(-0.5, 0.5);
  const double a = rng.uniform(0.3, 1.5);
  const double b = rng.uniform(0.3, 1.5);
  SampledSignal f(Coord::W, wgrid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double W = f.nodes[i];
    const double env = std::exp(-0.5 * W * W);
    f.samples[i] = env * cplx(c0 + c1 * std::cos(a * W), c2 * std::sin(b * W));
  }
  return f;
}

}  // namespace warpft::testhelpers
