#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "warpft/gft.hpp"
#include "warpft/grid.hpp"
#include "warpft/warp.hpp"

namespace warpft {

// A polynomial-phase chirp with a fixed Gaussian envelope:
//   S(t) = exp(i T(t)) * exp(-T(t)^2 / 2)
// The signal is harmonic in the warped time T(t).
struct ChirpSpec {
  Warp time_warp = Warp::identity();
};

// Samples S on t_grid. Fails with DecayError when the grid is too narrow
// for |S| <= 1e-12 at both ends.
SampledSignal synthesize(const ChirpSpec& spec, const GridSpec& t_grid);

struct HarmonizationReport {
  double omega_big_peak = 0.0;     // argmax of |S~(Omega)| on the Omega grid
  double omega_peak = 0.0;         // argmax of the harmonized spectrum |S~(omega)|
  double harmonic_residual = 0.0;  // Linf distance of S^(t) from e^{it} e^{-t^2/2}
  double objective = 0.0;          // spectral concentration score, lower = more harmonic
};

struct HarmonizeOptions {
  GridSpec omega_big_grid{-13.0, 0.0234375, 1025};  // Omega = -1 lies on a node
  GridSpec t_grid{-8.0, 0.015625, 1025};            // output time grid
  GridSpec omega_grid{-8.0, 0.015625, 1153};        // omega = +1 lies on a node
  // Resampling onto uniform warped time uses this many nodes, with the span
  // clamped to [-warped_span_cap, warped_span_cap]; the Gaussian envelope is
  // below 5e-32 there, so the clamp only trims dead tails of wide warps.
  std::size_t warped_count = 1025;
  double warped_span_cap = 12.0;
  int threads = 1;

  // Coarser grids for search loops: same spans, half the resolution.
  static HarmonizeOptions search();
};

// Two-stage harmonization of a chirp sampled in raw time t:
//   stage 1   S~(Omega) = (1/sqrt(2 pi)) integral dT e^{+i T Omega} S
//   stage 2   S^(t)     = (1/sqrt(2 pi)) integral dOmega e^{-i Omega t} S~
// Analysis warps time by T; synthesis does not, which relabels warped time
// as ordinary time and turns the chirp into a harmonic signal. The input is
// resampled internally onto nodes uniform in T(t) via warp inversion.
// The report also carries the spectrum peak and concentration objective
// computed on opt.omega_grid.
std::pair<SampledSignal, HarmonizationReport> harmonize(
    const SampledSignal& S, const Warp& T, const Warp& Omega,
    const HarmonizeOptions& opt = {});

// Ordinary Fourier spectrum of a time signal:
//   S~(omega) = (1/sqrt(2 pi)) integral dt e^{-i omega t} S^(t)
SampledSignal spectrum(const SampledSignal& S_hat, const GridSpec& omega_grid,
                       int threads = 1);

// One coefficient axis of the estimation search grid: values
// min, min + step, ..., min + (count-1) * step.
struct SearchAxis {
  double min = 0.0;
  double step = 0.0;  // may be 0 only when count == 1
  std::size_t count = 1;
};

// Cartesian grid over odd-polynomial coefficients; axes[j] ranges the
// coefficient of t^(2j+1). The linear axis must stay positive.
struct SearchGrid {
  std::vector<SearchAxis> axes;

  void validate() const;
  std::size_t candidate_count() const;
  std::string describe() const;
};

struct WarpEstimate {
  std::vector<double> coeffs;
  double objective = 0.0;
  std::size_t evaluations = 0;
  std::string grid;  // search-space description
  HarmonizationReport best_report;
};

struct EstimateOptions {
  HarmonizeOptions harmonize = HarmonizeOptions::search();
  // Shuffles only the evaluation order; the argmin is reduced in canonical
  // candidate order, so the result never depends on seed or thread count.
  std::uint64_t seed = 0;
  int threads = 1;
};

// Exhaustive search for the time warp that harmonizes S: every candidate is
// run through harmonize + spectrum and scored by
//   objective = variance of |S~(omega)|^2 about its centroid + |peak - 1|.
// Returns the candidate with the smallest objective; on ties the
// lexicographically smallest coefficient vector wins. Candidates whose
// evaluation fails numerically score +infinity.
WarpEstimate estimate_warp(const SampledSignal& S, const SearchGrid& search,
                           const EstimateOptions& opt = {});

}  // namespace warpft
