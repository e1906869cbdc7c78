#include "warpft/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "warpft/errors.hpp"
#include "warpft/numerics.hpp"

namespace warpft {

namespace {

void check_edge_decay(const DensityProfile& rho, double threshold) {
  const double peak = *std::max_element(rho.values.begin(), rho.values.end());
  const double edge = std::max(rho.values.front(), rho.values.back());
  if (peak <= 0.0 || edge > threshold * peak)
    throw DecayError("density does not decay at the grid ends (edge/peak " +
                     std::to_string(edge / peak) + ")");
}

// Uniform spacing is required by the FD stencils; tolerate only roundoff
// wobble in the node list.
double uniform_spacing(const std::vector<double>& nodes) {
  const double dy =
      (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double h = nodes[i + 1] - nodes[i];
    if (std::abs(h - dy) > 1e-9 * std::max(1.0, std::abs(dy)))
      throw ValidationError("fd solver needs a uniform grid");
  }
  return dy;
}

}  // namespace

DensityProfile heat_propagate(const DensityProfile& rho0, double D, double t,
                              const HeatOptions& opt) {
  rho0.validate();
  if (rho0.coord != ProfileCoord::W || rho0.measure != Measure::DW)
    throw ValidationError("heat_propagate expects a dW density on a W grid");
  if (!(D > 0.0)) throw ValidationError("heat_propagate: D must be > 0");
  if (!(t > 0.0)) throw ValidationError("heat_propagate: t must be > 0");
  check_edge_decay(rho0, opt.decay_threshold);

  const std::vector<double>& out_nodes =
      opt.output_nodes.empty() ? rho0.nodes : opt.output_nodes;
  if (out_nodes.size() < 2)
    throw ValidationError("heat_propagate: need at least 2 output nodes");
  for (std::size_t i = 0; i + 1 < out_nodes.size(); ++i)
    if (!(out_nodes[i] < out_nodes[i + 1]))
      throw ValidationError("heat_propagate: output nodes must increase");

  const std::vector<double> weights = trapezoid_weights(rho0.nodes);
  const double inv_var = 1.0 / (4.0 * D * t);
  const double norm = 1.0 / std::sqrt(4.0 * M_PI * D * t);

  std::vector<double> out(out_nodes.size());
  for (std::size_t i = 0; i < out_nodes.size(); ++i) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < rho0.nodes.size(); ++j) {
      const double d = out_nodes[i] - rho0.nodes[j];
      acc.add(weights[j] * rho0.values[j] * std::exp(-d * d * inv_var));
    }
    out[i] = norm * acc.value();
  }
  return DensityProfile(ProfileCoord::W, Measure::DW, out_nodes,
                        std::move(out));
}

DensityProfile pullback_to_x(const DensityProfile& rho_W, const Warp& w,
                             Measure mode) {
  rho_W.validate();
  if (rho_W.coord != ProfileCoord::W || rho_W.measure != Measure::DW)
    throw ValidationError("pullback_to_x expects a dW density on a W grid");

  const std::size_t n = rho_W.size();
  std::vector<double> xs(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = w.invert(rho_W.nodes[i]);
    values[i] = mode == Measure::DW
                    ? rho_W.values[i] * w.derivative(xs[i])
                    : rho_W.values[i];
  }
  return DensityProfile(ProfileCoord::X, Measure::Dx, std::move(xs),
                        std::move(values));
}

double msd(const DensityProfile& rho) {
  if (rho.nodes.size() != rho.values.size() || rho.nodes.size() < 2)
    throw ValidationError("msd: malformed profile");
  std::vector<double> weighted(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    weighted[i] = rho.nodes[i] * rho.nodes[i] * rho.values[i];
  const double mass = trapezoid(rho.nodes, rho.values);
  if (!(mass > 0.0)) throw NumericError("msd: profile has zero mass");
  return trapezoid(rho.nodes, weighted) / mass;
}

DensityProfile msd_profile_at(const Warp& w, double D, double t,
                              const MsdOptions& opt) {
  if (!(D > 0.0)) throw ValidationError("msd experiment: D must be > 0");
  if (!(t > 0.0)) throw ValidationError("msd experiment: time must be > 0");
  if (!(opt.initial_variance > 0.0))
    throw ValidationError("msd experiment: initial variance must be > 0");
  if (opt.source_count < 3 || opt.x_count < 3)
    throw ValidationError("msd experiment: grids too small");

  // Near-delta release in W, resolved by the source grid.
  const double sigma0 = std::sqrt(opt.initial_variance);
  const std::size_t sn = opt.source_count;
  std::vector<double> src_nodes(sn), src_vals(sn);
  const double src_step = 16.0 * sigma0 / static_cast<double>(sn - 1);
  for (std::size_t j = 0; j < sn; ++j) {
    const double W = -8.0 * sigma0 + static_cast<double>(j) * src_step;
    src_nodes[j] = W;
    src_vals[j] = std::exp(-0.5 * W * W / opt.initial_variance) /
                  (sigma0 * kSqrt2Pi);
  }
  const DensityProfile rho0(ProfileCoord::W, Measure::DW, src_nodes, src_vals);

  // Output grid adapted to the spread at t: uniform in x, wide enough that
  // the warped tail is negligible.
  const double sigma = std::sqrt(opt.initial_variance + 2.0 * D * t);
  const double x_max = w.invert(opt.halfwidth_sigmas * sigma);
  const std::size_t xn = opt.x_count;

  HeatOptions hopt;
  hopt.output_nodes.resize(xn);
  const double x_step = 2.0 * x_max / static_cast<double>(xn - 1);
  for (std::size_t j = 0; j < xn; ++j)
    hopt.output_nodes[j] = w.eval(-x_max + static_cast<double>(j) * x_step);

  return heat_propagate(rho0, D, t, hopt);
}

MsdSeries msd_experiment(const Warp& w, double D,
                         const std::vector<double>& times,
                         const MsdOptions& opt) {
  if (times.size() < 2)
    throw ValidationError("msd experiment: need at least 2 times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0))
      throw ValidationError("msd experiment: times must be > 0");
    if (i + 1 < times.size() && !(times[i] < times[i + 1]))
      throw ValidationError("msd experiment: times must increase");
  }

  MsdSeries series;
  series.times = times;
  series.msd.assign(times.size(), 0.0);

  // Every output time is an independent cell with its own adapted grid.
  parallel_for(times.size(), opt.threads,
               [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const DensityProfile rho_t = msd_profile_at(w, D, times[k], opt);
      series.msd[k] = msd(pullback_to_x(rho_t, w, opt.mode));
    }
  });

  series.slopes.resize(times.size() - 1);
  for (std::size_t k = 0; k + 1 < times.size(); ++k)
    series.slopes[k] = (std::log(series.msd[k + 1]) - std::log(series.msd[k])) /
                       (std::log(times[k + 1]) - std::log(times[k]));
  series.validate();
  return series;
}

double op_beta(const OPParams& params) {
  return 0.5 * params.theta - params.c + 2.0;
}

DensityProfile fd_solve_transformed(const OPParams& params,
                                    const DensityProfile& rho0, double t_end,
                                    double dt, const FdOptions& opt) {
  rho0.validate();
  if (rho0.coord != ProfileCoord::Y)
    throw ValidationError("fd solver expects a profile on a y grid");
  if (!(params.D > 0.0)) throw ValidationError("fd solver: D must be > 0");
  if (!(params.C > 0.0)) throw ValidationError("fd solver: C must be > 0");
  const double beta = op_beta(params);
  if (!(beta > 0.0))
    throw ValidationError("fd solver: derived beta must be > 0, got " +
                          std::to_string(beta));
  if (!(t_end > 0.0)) throw ValidationError("fd solver: t_end must be > 0");
  if (!(dt > 0.0)) throw ValidationError("fd solver: dt must be > 0");

  const double dy = uniform_spacing(rho0.nodes);
  const std::size_t n = rho0.size();
  const Warp warp = Warp::signed_monomial(params.C, beta);
  const double front = params.C * params.C * beta * beta * params.D;

  // a(y) = C^2 b^2 D (dx/dy)^2 through the inverse map; g = sqrt(a).
  const auto diffusivity = [&](double y) {
    const double wp = warp.derivative(warp.invert(y));
    const double a = front / (wp * wp);
    if (!std::isfinite(a))
      throw SingularityError("fd solver: singular diffusivity at y = " +
                             std::to_string(y));
    return a;
  };

  std::vector<double> coeff;  // per-face a (flux) or per-node g (split)
  double coeff_max = 0.0;
  if (opt.scheme == FdScheme::Flux) {
    coeff.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      coeff[i] = diffusivity(0.5 * (rho0.nodes[i] + rho0.nodes[i + 1]));
      coeff_max = std::max(coeff_max, coeff[i]);
    }
  } else {
    coeff.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = diffusivity(rho0.nodes[i]);
      coeff[i] = std::sqrt(a);
      coeff_max = std::max(coeff_max, a);
    }
  }

  const double dt_bound = opt.cfl * dy * dy / (2.0 * coeff_max);
  if (dt > dt_bound * (1.0 + 1e-12))
    throw StepSizeError("fd solver: dt " + std::to_string(dt) +
                        " exceeds the stability bound " +
                        std::to_string(dt_bound));

  const std::size_t steps =
      static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
  const double h = t_end / static_cast<double>(steps);

  std::vector<double> rho = rho0.values;
  std::vector<double> work(opt.scheme == FdScheme::Flux ? n - 1 : n);
  const double blowup_cap =
      1e6 * (*std::max_element(rho.begin(), rho.end()) + 1.0);

  for (std::size_t s = 0; s < steps; ++s) {
    if (opt.scheme == FdScheme::Flux) {
      // work[i] = a_{i+1/2} (rho_{i+1} - rho_i) / dy; boundary fluxes are 0.
      for (std::size_t i = 0; i + 1 < n; ++i)
        work[i] = coeff[i] * (rho[i + 1] - rho[i]) / dy;
      const double r = h / dy;
      rho[0] += r * work[0];
      for (std::size_t i = 1; i + 1 < n; ++i)
        rho[i] += r * (work[i] - work[i - 1]);
      rho[n - 1] += r * (0.0 - work[n - 2]);
    } else {
      for (std::size_t i = 0; i < n; ++i) work[i] = coeff[i] * rho[i];
      const double r = h / (dy * dy);
      // Even reflection across the boundary faces: ghost values mirror the
      // first and last cells.
      double prev = work[0];
      for (std::size_t i = 0; i < n; ++i) {
        const double next = i + 1 < n ? work[i + 1] : work[n - 1];
        const double lap = next - 2.0 * work[i] + prev;
        prev = work[i];
        rho[i] += r * coeff[i] * lap;
      }
    }

    if ((s & 63u) == 0u || s + 1 == steps) {
      for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(rho[i]) || std::abs(rho[i]) > blowup_cap)
          throw StepSizeError("fd solver: blow-up detected at step " +
                              std::to_string(s));
    }
  }

  DensityProfile out;
  out.coord = ProfileCoord::Y;
  out.measure = rho0.measure;
  out.nodes = rho0.nodes;
  out.values = std::move(rho);
  return out;
}

}  // namespace warpft
