#pragma once

#include <optional>

#include "warpft/grid.hpp"
#include "warpft/warp.hpp"

namespace warpft {

// How a signal's nodes relate to the warped coordinate of its axis:
//   WarpedUniform  node values ARE the warped coordinate (the default:
//                  signals are sampled uniformly in W(c));
//   Raw            node values are the raw coordinate; the warp is applied
//                  to them and quadrature picks up dW = W'(u) du weights.
enum class SamplingMode { WarpedUniform, Raw };

// Direct: reference O(N*M) trapezoid quadrature with compensated, fixed
// left-to-right summation per output node. FftFastPath: chirp-z evaluation,
// valid only for identity warps on uniform grids.
enum class Route { Direct, FftFastPath };

// Mixed-transform kernel exp(i * sign * W(u) * K(v)) / sqrt(2*pi) between a
// source axis warped by `source_warp` and a target axis warped by
// `target_warp`.
struct MixedKernelSpec {
  Warp source_warp = Warp::identity();
  Warp target_warp = Warp::identity();
  int sign = +1;

  void validate() const;
};

cplx kernel(const MixedKernelSpec& spec, double u, double v);

struct TransformOptions {
  SamplingMode source_sampling = SamplingMode::WarpedUniform;
  SamplingMode target_sampling = SamplingMode::Raw;
  std::optional<Coord> require_coord;  // validate the input signal's label
  Coord output_coord = Coord::BigK;
  double decay_threshold = 1e-12;  // relative to max |sample|
  bool allow_truncation = false;
  Route route = Route::Direct;
  int threads = 1;
};

// g(v) = integral dW(u) kernel(u, v) f(u), trapezoid over the warped
// measure. Source sampling selects plain trapezoid (WarpedUniform) or
// W'(u) du weights (Raw); target sampling selects whether target nodes are
// warped values already or raw values to be mapped through target_warp.
SampledSignal forward(const MixedKernelSpec& spec, const SampledSignal& f,
                      const GridSpec& target, const TransformOptions& opt = {});

// Inverse transform: same quadrature with the conjugated kernel. The input
// g lives on the target axis; the output is produced on `source`.
// Option roles follow the data: source_sampling describes g's nodes,
// target_sampling describes the output nodes.
SampledSignal inverse(const MixedKernelSpec& spec, const SampledSignal& g,
                      const GridSpec& source, const TransformOptions& opt = {});

struct FixedPointOptions {
  GridSpec source{-12.0, 24.0 / 1023.0, 1024};
  GridSpec target{-6.0, 12.0 / 255.0, 256};
  SamplingMode source_sampling = SamplingMode::WarpedUniform;
  SamplingMode target_sampling = SamplingMode::WarpedUniform;
  int sign = +1;
  int threads = 1;
};

// Transforms exp(-W^2/2) between the given warp pair and returns the max
// abs deviation from exp(-K^2/2) on the target grid. The Gaussian is the
// fixed point of every valid warped transform pair.
double gaussian_fixed_point_residual(const Warp& source_warp,
                                     const Warp& target_warp,
                                     const FixedPointOptions& opt = {});

}  // namespace warpft
