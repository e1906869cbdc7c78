#include "warpft/chirp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "warpft/errors.hpp"
#include "warpft/numerics.hpp"

namespace warpft {

namespace {

// Edge-decay threshold for signals produced inside the pipeline. Resampling
// through a cubic interpolant leaves broadband noise around 1e-10 of peak,
// which the strict input threshold would reject even though any genuine
// truncation of tail mass sits orders of magnitude above this.
constexpr double kInternalDecayThreshold = 1e-9;

cplx chirp_value(const Warp& T, double t) {
  const double w = T.eval(t);
  return std::exp(-0.5 * w * w) * unit_phasor(static_cast<long double>(w));
}

// Rebuilds the signal on nodes uniform in the warped time T(t), which makes
// stage 1 a plain trapezoid sum in the warped variable. The span is clamped
// so strongly warped grids do not drag thousands of dead-tail nodes in.
SampledSignal resample_warped_uniform(const SampledSignal& S, const Warp& T,
                                      std::size_t count, double span_cap) {
  const ComplexSpline interp(S.nodes, S.samples);
  const double lo = std::max(T.eval(S.nodes.front()), -span_cap);
  const double hi = std::min(T.eval(S.nodes.back()), span_cap);
  if (!(lo < hi))
    throw ValidationError("harmonize: warped time span is empty");
  if (count < 2) throw ValidationError("harmonize: warped_count must be >= 2");

  GridSpec wgrid{lo, (hi - lo) / static_cast<double>(count - 1), count};
  SampledSignal out(Coord::T, wgrid);
  for (std::size_t i = 0; i < count; ++i)
    out.samples[i] = interp(T.invert(out.nodes[i]));
  return out;
}

std::size_t argmax_abs(const std::vector<cplx>& v) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

// Sub-grid peak location: vertex of the log-magnitude parabola through the
// discrete argmax and its neighbors. Exact for a Gaussian line, whose log is
// quadratic. Removes the grid-snap error that would otherwise under-penalize
// a uniformly dilated candidate warp, whose concentration gain and peak
// offset cancel to first order.
double refined_peak(const std::vector<double>& nodes,
                    const std::vector<double>& q, std::size_t i) {
  if (i == 0 || i + 1 >= q.size()) return nodes[i];
  if (!(q[i - 1] > 0.0) || !(q[i] > 0.0) || !(q[i + 1] > 0.0)) return nodes[i];
  const double d1 = std::log(q[i - 1]);
  const double d0 = std::log(q[i]);
  const double d2 = std::log(q[i + 1]);
  const double curve = d1 - 2.0 * d0 + d2;
  if (!(curve < 0.0)) return nodes[i];
  double offset = 0.5 * (d1 - d2) / curve;
  offset = std::clamp(offset, -1.0, 1.0);
  return nodes[i] + offset * 0.5 * (nodes[i + 1] - nodes[i - 1]);
}

// Spectral concentration about the centroid of |S~(omega)|^2 plus the peak
// offset from omega = 1. A perfectly harmonized signal scores variance 1/2
// (the Gaussian line width) with zero peak penalty.
double concentration_objective(const SampledSignal& spec_sig,
                               double* peak_out) {
  const std::size_t n = spec_sig.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(spec_sig.samples[i]);
    q[i] = m * m;
  }
  const double mass = trapezoid(spec_sig.nodes, q);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw NumericError("spectrum has no usable mass");

  std::vector<double> moment(n);
  for (std::size_t i = 0; i < n; ++i) moment[i] = spec_sig.nodes[i] * q[i];
  const double centroid = trapezoid(spec_sig.nodes, moment) / mass;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = spec_sig.nodes[i] - centroid;
    moment[i] = d * d * q[i];
  }
  const double variance = trapezoid(spec_sig.nodes, moment) / mass;

  const double peak = refined_peak(spec_sig.nodes, q, argmax_abs(spec_sig.samples));
  if (peak_out) *peak_out = peak;
  return variance + std::abs(peak - 1.0);
}

}  // namespace

SampledSignal synthesize(const ChirpSpec& spec, const GridSpec& t_grid) {
  t_grid.validate();
  SampledSignal out(Coord::T, t_grid);
  for (std::size_t i = 0; i < t_grid.count; ++i)
    out.samples[i] = chirp_value(spec.time_warp, out.nodes[i]);

  const double edge =
      std::max(std::abs(out.samples.front()), std::abs(out.samples.back()));
  if (edge > 1e-12)
    throw DecayError("synthesize: grid too narrow, |S| at the ends is " +
                     std::to_string(edge));
  return out;
}

HarmonizeOptions HarmonizeOptions::search() {
  HarmonizeOptions opt;
  opt.omega_big_grid = GridSpec{-13.0, 0.03125, 769};
  opt.t_grid = GridSpec{-8.0, 0.03125, 513};
  opt.omega_grid = GridSpec{-8.0, 0.03125, 577};
  opt.warped_count = 513;
  return opt;
}

std::pair<SampledSignal, HarmonizationReport> harmonize(
    const SampledSignal& S, const Warp& T, const Warp& Omega,
    const HarmonizeOptions& opt) {
  S.validate();
  if (S.coord != Coord::T)
    throw ValidationError("harmonize expects a signal in coordinate t, got " +
                          to_string(S.coord));

  const SampledSignal warped =
      resample_warped_uniform(S, T, opt.warped_count, opt.warped_span_cap);

  // Stage 1: analyze with the time warp against the (possibly warped)
  // frequency axis.
  MixedKernelSpec analysis;
  analysis.source_warp = T;
  analysis.target_warp = Omega;
  analysis.sign = +1;

  TransformOptions stage1;
  stage1.source_sampling = SamplingMode::WarpedUniform;
  stage1.target_sampling = SamplingMode::WarpedUniform;
  stage1.require_coord = Coord::T;
  stage1.output_coord = Coord::BigOmega;
  stage1.threads = opt.threads;
  const SampledSignal big = forward(analysis, warped, opt.omega_big_grid, stage1);

  // Stage 2: synthesize back with an identity time warp. The warped time
  // axis is thereby relabeled as plain time, which removes the chirp.
  MixedKernelSpec synthesis;
  synthesis.source_warp = Warp::identity();
  synthesis.target_warp = Omega;
  synthesis.sign = +1;

  TransformOptions stage2;
  stage2.source_sampling = SamplingMode::WarpedUniform;  // describes `big`
  stage2.target_sampling = SamplingMode::Raw;            // output time nodes
  stage2.require_coord = Coord::BigOmega;
  stage2.output_coord = Coord::T;
  // Stage 1 leaves a broadband quadrature/interpolation floor around 1e-10
  // of peak for warped inputs. The edge check here guards against genuine
  // window truncation, not that floor, so it runs with a looser threshold.
  stage2.decay_threshold = kInternalDecayThreshold;
  stage2.threads = opt.threads;
  SampledSignal out = inverse(synthesis, big, opt.t_grid, stage2);

  HarmonizationReport report;
  report.omega_big_peak = big.nodes[argmax_abs(big.samples)];

  double residual = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = out.nodes[i];
    const cplx ref = std::exp(-0.5 * t * t) * unit_phasor(t);
    residual = std::max(residual, std::abs(out.samples[i] - ref));
  }
  report.harmonic_residual = residual;

  const SampledSignal spec_sig = spectrum(out, opt.omega_grid, opt.threads);
  report.objective = concentration_objective(spec_sig, &report.omega_peak);
  return {std::move(out), report};
}

SampledSignal spectrum(const SampledSignal& S_hat, const GridSpec& omega_grid,
                       int threads) {
  MixedKernelSpec plain;
  plain.sign = -1;

  TransformOptions opt;
  // Time nodes coincide with warped values under the identity warp, so the
  // WarpedUniform route applies and keeps the phase-recurrence path.
  opt.source_sampling = SamplingMode::WarpedUniform;
  opt.target_sampling = SamplingMode::WarpedUniform;
  opt.require_coord = Coord::T;
  opt.output_coord = Coord::SmallOmega;
  // Harmonized signals carry the pipeline noise floor at their edges, so the
  // edge check uses the same loosened threshold as stage 2 above.
  opt.decay_threshold = kInternalDecayThreshold;
  opt.threads = threads;
  return forward(plain, S_hat, omega_grid, opt);
}

void SearchGrid::validate() const {
  if (axes.empty()) throw ValidationError("estimate: empty search space");
  for (std::size_t j = 0; j < axes.size(); ++j) {
    const SearchAxis& ax = axes[j];
    if (ax.count == 0) throw ValidationError("estimate: empty search axis");
    if (!std::isfinite(ax.min) || !std::isfinite(ax.step))
      throw ValidationError("estimate: non-finite search axis");
    if (ax.count > 1 && !(ax.step > 0.0))
      throw ValidationError("estimate: search axis step must be > 0");
    const double lowest = ax.min;
    if (j == 0 && !(lowest > 0.0))
      throw ValidationError("estimate: linear coefficient axis must be > 0");
    if (j > 0 && lowest < 0.0)
      throw ValidationError("estimate: higher coefficient axes must be >= 0");
  }
}

std::size_t SearchGrid::candidate_count() const {
  std::size_t n = 1;
  for (const SearchAxis& ax : axes) n *= ax.count;
  return n;
}

std::string SearchGrid::describe() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (j) os << "; ";
    os << "a" << (2 * j + 1) << ": " << axes[j].min << " + "
       << axes[j].step << " * [0.." << (axes[j].count - 1) << "]";
  }
  return os.str();
}

WarpEstimate estimate_warp(const SampledSignal& S, const SearchGrid& search,
                           const EstimateOptions& opt) {
  S.validate();
  search.validate();

  const std::size_t total = search.candidate_count();
  const std::size_t dims = search.axes.size();

  // Decode candidate index -> coefficient vector with the last axis fastest,
  // so ascending index is ascending lexicographic order.
  const auto coeffs_of = [&](std::size_t idx) {
    std::vector<double> c(dims);
    for (std::size_t j = dims; j-- > 0;) {
      const SearchAxis& ax = search.axes[j];
      c[j] = ax.min + static_cast<double>(idx % ax.count) * ax.step;
      idx /= ax.count;
    }
    return c;
  };

  // The seed shuffles only which worker touches which candidate; every
  // result lands in its canonical slot.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(opt.seed);
  for (std::size_t i = total; i > 1; --i)
    std::swap(order[i - 1], order[rng.next() % i]);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> objective(total, inf);

  HarmonizeOptions inner = opt.harmonize;
  inner.threads = 1;  // parallelism lives across candidates
  const Warp omega = Warp::identity();

  parallel_for(total, opt.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t pos = begin; pos < end; ++pos) {
      const std::size_t idx = order[pos];
      try {
        const Warp candidate = Warp::odd_polynomial(coeffs_of(idx));
        objective[idx] = harmonize(S, candidate, omega, inner).second.objective;
      } catch (const NumericError&) {
        objective[idx] = inf;
      }
    }
  });

  // Canonical-order reduction: strict improvement wins, so ties keep the
  // earlier (lexicographically smaller) candidate.
  std::size_t best = total;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!std::isfinite(objective[idx])) continue;
    if (best == total || objective[idx] < objective[best]) best = idx;
  }
  if (best == total)
    throw NumericError("estimate: no candidate evaluated successfully");

  WarpEstimate est;
  est.coeffs = coeffs_of(best);
  est.objective = objective[best];
  est.evaluations = total;
  est.grid = search.describe();
  est.best_report =
      harmonize(S, Warp::odd_polynomial(est.coeffs), omega, inner).second;
  return est;
}

}  // namespace warpft
