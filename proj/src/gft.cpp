#include "warpft/gft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fft.hpp"

namespace warpft {

void MixedKernelSpec::validate() const {
  if (sign != 1 && sign != -1)
    throw ValidationError("kernel spec: sign must be +1 or -1");
}

cplx kernel(const MixedKernelSpec& spec, double u, double v) {
  spec.validate();
  if (!std::isfinite(u) || !std::isfinite(v))
    throw DomainError("kernel: non-finite argument");
  const long double phase = static_cast<long double>(spec.sign) *
                            static_cast<long double>(spec.source_warp.eval(u)) *
                            static_cast<long double>(spec.target_warp.eval(v));
  return kInvSqrt2Pi * unit_phasor(phase);
}

namespace {

void check_decay(const SampledSignal& f, double threshold, bool allow) {
  if (allow) return;
  double peak = 0.0;
  for (const auto& z : f.samples) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return;  // zero signal truncates exactly
  const double edge = std::max(std::abs(f.samples.front()), std::abs(f.samples.back()));
  if (edge > threshold * peak) {
    char ratio[32];
    std::snprintf(ratio, sizeof(ratio), "%.3g", edge / peak);
    throw DecayError(
        "transform: signal does not decay at its grid ends (edge/peak = " +
        std::string(ratio) + "); pass allow_truncation to override");
  }
}

struct SourceData {
  std::vector<double> wvals;    // warped source coordinate per node
  std::vector<double> weights;  // quadrature weight per node (measure dW)
  bool affine = false;          // wvals[n] = w0 + n*dw exactly (from GridSpec)
  double w0 = 0.0, dw = 0.0;
};

SourceData prepare_source(const SampledSignal& f, const Warp& w,
                          SamplingMode mode) {
  SourceData s;
  s.weights = trapezoid_weights(f.nodes);
  if (mode == SamplingMode::WarpedUniform) {
    s.wvals = f.nodes;
    if (f.grid) {
      s.affine = true;
      s.w0 = f.grid->start;
      s.dw = f.grid->step;
    }
  } else {
    s.wvals.resize(f.nodes.size());
    for (std::size_t n = 0; n < f.nodes.size(); ++n) {
      s.wvals[n] = w.eval(f.nodes[n]);
      s.weights[n] *= w.derivative(f.nodes[n]);
    }
  }
  return s;
}

std::vector<double> prepare_target(const GridSpec& grid, const Warp& w,
                                   SamplingMode mode) {
  auto kvals = grid.nodes();
  if (mode == SamplingMode::Raw)
    for (auto& v : kvals) v = w.eval(v);
  return kvals;
}

// Direct-path quadrature for one output node: fixed left-to-right
// compensated sum of weight * f * exp(i * sgn * W_n * K). Phases advance by
// a unit-modulus recurrence on affine node sets, re-anchored with an exact
// phasor every 64 terms.
cplx direct_node_sum(const SourceData& src, const std::vector<cplx>& samples,
                     double sgn, double kval) {
  CompensatedCplxSum acc;
  const std::size_t n = samples.size();
  if (src.affine) {
    const cplx step = unit_phasor(static_cast<long double>(sgn) *
                                  static_cast<long double>(src.dw) *
                                  static_cast<long double>(kval));
    cplx ph{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      if ((i & 63u) == 0u) {
        const long double w_i = static_cast<long double>(src.w0) +
                                static_cast<long double>(i) *
                                    static_cast<long double>(src.dw);
        ph = unit_phasor(static_cast<long double>(sgn) * w_i *
                         static_cast<long double>(kval));
      }
      acc.add(src.weights[i] * samples[i] * ph);
      ph *= step;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const cplx ph = unit_phasor(static_cast<long double>(sgn) *
                                  static_cast<long double>(src.wvals[i]) *
                                  static_cast<long double>(kval));
      acc.add(src.weights[i] * samples[i] * ph);
    }
  }
  return acc.value();
}

std::vector<cplx> fast_path(const MixedKernelSpec& spec, const SampledSignal& f,
                            const GridSpec& target, const SourceData& src) {
  if (!spec.source_warp.is_identity() || !spec.target_warp.is_identity())
    throw ValidationError("fft fast path: both warps must be the identity");
  if (!f.grid)
    throw ValidationError("fft fast path: source signal must carry a uniform grid");
  const double sgn = spec.sign;
  const double u0 = f.grid->start, du = f.grid->step;
  const double v0 = target.start, dv = target.step;
  const std::size_t n = f.size(), m_count = target.count;
  // exp(i s u_n v_m) = exp(i s u0 v_m) exp(i s n du v0) exp(i s n m du dv)
  std::vector<cplx> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long double ph = static_cast<long double>(sgn) *
                           static_cast<long double>(i) *
                           static_cast<long double>(du) *
                           static_cast<long double>(v0);
    a[i] = src.weights[i] * f.samples[i] * unit_phasor(ph);
  }
  auto r = detail::czt_exp_sum(a, m_count, sgn * du * dv);
  for (std::size_t m = 0; m < m_count; ++m) {
    const long double ph = static_cast<long double>(sgn) *
                           static_cast<long double>(u0) *
                           (static_cast<long double>(v0) +
                            static_cast<long double>(m) *
                                static_cast<long double>(dv));
    r[m] *= kInvSqrt2Pi * unit_phasor(ph);
  }
  return r;
}

SampledSignal transform_impl(const MixedKernelSpec& spec, const SampledSignal& f,
                             const GridSpec& target, const TransformOptions& opt) {
  const double sgn = static_cast<double>(spec.sign);
  spec.validate();
  f.validate();
  target.validate();
  if (opt.require_coord && f.coord != *opt.require_coord)
    throw ValidationError("transform: input signal labeled '" +
                          to_string(f.coord) + "' but '" +
                          to_string(*opt.require_coord) + "' is required");
  check_decay(f, opt.decay_threshold, opt.allow_truncation);

  const SourceData src = prepare_source(f, spec.source_warp, opt.source_sampling);
  SampledSignal out(opt.output_coord, target);

  if (opt.route == Route::FftFastPath) {
    if (opt.source_sampling == SamplingMode::Raw &&
        !spec.source_warp.is_identity())
      throw ValidationError("fft fast path: raw sampling needs identity warp");
    out.samples = fast_path(spec, f, target, src);
    return out;
  }

  const std::vector<double> kvals =
      prepare_target(target, spec.target_warp, opt.target_sampling);
  const auto& samples = f.samples;
  parallel_for(target.count, opt.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t m = b; m < e; ++m)
      out.samples[m] = kInvSqrt2Pi * direct_node_sum(src, samples, sgn, kvals[m]);
  });
  return out;
}

}  // namespace

SampledSignal forward(const MixedKernelSpec& spec, const SampledSignal& f,
                      const GridSpec& target, const TransformOptions& opt) {
  return transform_impl(spec, f, target, opt);
}

SampledSignal inverse(const MixedKernelSpec& spec, const SampledSignal& g,
                      const GridSpec& source, const TransformOptions& opt) {
  // Conjugated kernel, integration over the target axis: swap the roles of
  // the two warps and flip the phase sign.
  MixedKernelSpec flipped;
  flipped.source_warp = spec.target_warp;
  flipped.target_warp = spec.source_warp;
  flipped.sign = -spec.sign;
  return transform_impl(flipped, g, source, opt);
}

double gaussian_fixed_point_residual(const Warp& source_warp,
                                     const Warp& target_warp,
                                     const FixedPointOptions& opt) {
  MixedKernelSpec spec{source_warp, target_warp, opt.sign};
  SampledSignal f(Coord::W, opt.source);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = opt.source_sampling == SamplingMode::WarpedUniform
                         ? f.nodes[i]
                         : source_warp.eval(f.nodes[i]);
    f.samples[i] = std::exp(-0.5 * w * w);
  }
  TransformOptions topt;
  topt.source_sampling = opt.source_sampling;
  topt.target_sampling = opt.target_sampling;
  topt.output_coord = Coord::BigK;
  topt.threads = opt.threads;
  const SampledSignal g = forward(spec, f, opt.target, topt);
  double worst = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double k = opt.target_sampling == SamplingMode::WarpedUniform
                         ? g.nodes[m]
                         : target_warp.eval(g.nodes[m]);
    worst = std::max(worst, std::abs(g.samples[m] - cplx(std::exp(-0.5 * k * k), 0.0)));
  }
  return worst;
}

}  // namespace warpft
