// Acceptance suite: seven standalone criteria, one pass/fail line each.
// Exits nonzero if any criterion fails its checks or its runtime cap.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "warpft/chirp.hpp"
#include "warpft/diffusion.hpp"
#include "warpft/gft.hpp"
#include "warpft/grid.hpp"
#include "warpft/warp.hpp"

using namespace warpft;
using namespace warpft::testhelpers;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& label) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + label;
    }
  }
  void note(const std::string& text) {
    detail += (detail.empty() ? "" : "; ") + text;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ------------------------------------------------------------ criterion 1

Outcome criterion_gaussian_fixed_point() {
  Outcome o;
  const struct {
    const char* name;
    Warp warp;
  } pairs[] = {
      {"identity", Warp::identity()},
      {"monomial_b3", Warp::signed_monomial(1.0, 3.0)},
      {"cubic", Warp::odd_polynomial({1.0, 1.0})},
  };
  for (const auto& p : pairs) {
    const auto start = std::chrono::steady_clock::now();
    const double r = gaussian_fixed_point_residual(p.warp, p.warp);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    o.note(std::string(p.name) + "=" + fmt(r) + " in " + fmt(secs) + "s");
    o.require(r <= 1e-6, std::string(p.name) + " residual <= 1e-6");
    o.require(secs <= 5.0, std::string(p.name) + " runtime <= 5s");
  }
  return o;
}

// ------------------------------------------------------------ criterion 2

Outcome criterion_chirp_harmonization() {
  Outcome o;
  const struct {
    const char* name;
    Warp warp;
  } chirps[] = {
      {"cubic", Warp::odd_polynomial({1.0, 0.1})},
      {"quintic", Warp::odd_polynomial({1.0, 0.05, 0.01})},
  };
  const HarmonizeOptions opt;
  for (const auto& c : chirps) {
    ChirpSpec spec;
    spec.time_warp = c.warp;
    const SampledSignal S = synthesize(spec, opt.t_grid);
    const auto [S_hat, report] = harmonize(S, c.warp, Warp::identity(), opt);

    o.require(std::abs(report.omega_big_peak - (-1.0)) <=
                  opt.omega_big_grid.step + 1e-12,
              std::string(c.name) + " big-peak at -1 within one step");

    double resid = 0.0;
    for (std::size_t i = 0; i < S_hat.size(); ++i) {
      const double t = S_hat.nodes[i];
      const cplx want =
          std::exp(-0.5 * t * t) * cplx(std::cos(t), std::sin(t));
      resid = std::max(resid, std::abs(S_hat.samples[i] - want));
    }
    o.require(resid <= 1e-4, std::string(c.name) + " harmonic residual <= 1e-4");

    const SampledSignal spec_sig = spectrum(S_hat, opt.omega_grid);
    std::size_t peak = 0;
    double gap = 0.0;
    for (std::size_t i = 0; i < spec_sig.size(); ++i) {
      if (std::abs(spec_sig.samples[i]) > std::abs(spec_sig.samples[peak]))
        peak = i;
      const double w = spec_sig.nodes[i] - 1.0;
      gap = std::max(gap, std::abs(spec_sig.samples[i] -
                                   cplx(std::exp(-0.5 * w * w), 0.0)));
    }
    o.require(std::abs(spec_sig.nodes[peak] - 1.0) <=
                  opt.omega_grid.step + 1e-12,
              std::string(c.name) + " spectrum peak at 1 within one step");
    o.require(gap <= 1e-4, std::string(c.name) + " spectrum shape <= 1e-4");
    o.note(std::string(c.name) + " residual=" + fmt(resid) + " shape=" +
           fmt(gap));
  }
  return o;
}

// ------------------------------------------------------------ criterion 3

Outcome criterion_msd_crossover() {
  Outcome o;
  std::vector<double> times;
  for (int k = 0; k <= 48; ++k)
    times.push_back(std::pow(10.0, -3.0 + static_cast<double>(k) / 8.0));
  const double D = 0.5;

  const MsdSeries cubic =
      msd_experiment(Warp::odd_polynomial({1.0, 1.0}), D, times);
  double early_worst = 0.0, late_worst = 0.0, slack = -1e300;
  for (std::size_t i = 0; i < cubic.slopes.size(); ++i) {
    if (times[i + 1] <= 1e-2 * (1.0 + 1e-9))
      early_worst = std::max(early_worst, std::abs(cubic.slopes[i] - 1.0));
    if (times[i] >= 1e2 * (1.0 - 1e-9))
      late_worst = std::max(late_worst, std::abs(cubic.slopes[i] - 1.0 / 3.0));
    if (i > 0) slack = std::max(slack, cubic.slopes[i] - cubic.slopes[i - 1]);
  }
  o.require(early_worst <= 0.1, "early slopes within 0.1 of 1");
  o.require(late_worst <= 0.05, "late slopes within 0.05 of 1/3");
  o.require(slack <= 1e-9, "slopes decrease monotonically");

  const MsdSeries ident = msd_experiment(Warp::identity(), D, times);
  double ident_worst = 0.0;
  for (double s : ident.slopes)
    ident_worst = std::max(ident_worst, std::abs(s - 1.0));
  o.require(ident_worst <= 0.02, "identity slopes within 0.02 of 1");

  o.note("early=" + fmt(early_worst) + " late=" + fmt(late_worst) +
         " monotone_slack=" + fmt(slack) + " identity=" + fmt(ident_worst));
  return o;
}

// ------------------------------------------------------------ criterion 4

Outcome criterion_bracket_and_operator() {
  Outcome o;
  SplitMix64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Warp w = random_warp(rng);
    const double mag = rng.uniform(0.1, 3.0);   // keep clear of the origin
    const double x = (rng.next() & 1u) ? mag : -mag;
    const double p = rng.uniform(-3.0, 3.0);
    worst = std::max(worst,
                     std::abs(poisson_bracket_check(w, PhaseSpacePoint{x, p}) -
                              1.0));
  }
  o.require(worst <= 1e-12, "bracket residual <= 1e-12 at 1000 points");

  const Warp w = Warp::odd_polynomial({1.0, 1.0});
  auto signal = [&](std::size_t count) {
    SampledSignal f(Coord::X, GridSpec{-4.0, 8.0 / double(count - 1), count});
    for (std::size_t i = 0; i < count; ++i) {
      const double W = w.eval(f.nodes[i]);
      f.samples[i] = std::exp(-0.5 * W * W);
    }
    return f;
  };
  auto error_of = [&](const SampledSignal& f) {
    const SampledSignal out = apply_pw_operator(w, f);
    double err = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double W = w.eval(out.nodes[i]);
      err = std::max(err, std::abs(out.samples[i] -
                                   cplx(0.0, W * std::exp(-0.5 * W * W))));
    }
    return err;
  };
  const double coarse = error_of(signal(1001));
  const double fine = error_of(signal(2001));
  const double order = std::log2(coarse / fine);
  o.require(order >= 1.9, "operator refinement order >= 1.9");
  o.note("bracket=" + fmt(worst) + " order=" + fmt(order));
  return o;
}

// ------------------------------------------------------------ criterion 5

Outcome criterion_fd_oracle_equivalence() {
  Outcome o;

  // Identity parameters: both stencils march the plain heat equation and
  // must land on the closed-form propagation of the same initial data.
  {
    const double dy = 0.01, L = 16.0;
    const std::size_t n = static_cast<std::size_t>(L / dy);
    std::vector<double> y(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = (static_cast<double>(i) + 0.5) * dy;
      const double d = y[i] - 8.0;
      v[i] = std::exp(-0.5 * d * d / 0.49) / std::sqrt(2.0 * M_PI * 0.49);
    }
    const DensityProfile rho0(ProfileCoord::Y, Measure::DW, y, v);
    const DensityProfile heat_in(ProfileCoord::W, Measure::DW, y, v);
    const DensityProfile want = heat_propagate(heat_in, 1.0, 1.0);

    const OPParams params;  // D = 1, a(y) = 1
    const double dt = 0.39 * dy * dy / 2.0;

    FdOptions fo;
    const DensityProfile flux = fd_solve_transformed(params, rho0, 1.0, dt, fo);
    fo.scheme = FdScheme::SymmetricSplit;
    const DensityProfile split = fd_solve_transformed(params, rho0, 1.0, dt, fo);

    double l2f = 0.0, l2s = 0.0, mass0 = 0.0, mass1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      l2f += (flux.values[i] - want.values[i]) * (flux.values[i] - want.values[i]);
      l2s += (split.values[i] - want.values[i]) * (split.values[i] - want.values[i]);
      mass0 += v[i] * dy;
      mass1 += flux.values[i] * dy;
    }
    l2f = std::sqrt(l2f * dy);
    l2s = std::sqrt(l2s * dy);
    const double drift = std::abs(mass1 - mass0);
    o.require(l2f <= 1e-3, "identity flux L2 <= 1e-3");
    o.require(l2s <= 1e-3, "identity split L2 <= 1e-3");
    o.require(drift <= 1e-10, "identity flux mass drift <= 1e-10");
    o.note("identity flux=" + fmt(l2f) + " split=" + fmt(l2s) + " drift=" +
           fmt(drift));
  }

  // C = 1, beta = 2 (theta = 2, c = 1): self-similar data released at t0 and
  // marched to t = 1. The oracle is the closed-form heat propagation in
  // Z = y^(3/2) with Dhat = 9 D / 4; the flux profile matches it with weight
  // kappa1 = sqrt(4 pi Dhat) and the split profile with the extra g = sqrt(D/y)
  // that symmetrizes the operator.
  {
    const double D = 1.0, t0 = 0.1;
    const double Dhat = 9.0 * D / 4.0;
    const OPParams params{D, 1.0, 2.0, 1.0};

    const double dy = 0.01, L = 8.0;
    const std::size_t n = static_cast<std::size_t>(L / dy);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = (static_cast<double>(i) + 0.5) * dy;

    const double sigma = std::sqrt(2.0 * Dhat * t0);
    DensityProfile h0(ProfileCoord::W, Measure::DW,
                      GridSpec{-8.0 * sigma, 16.0 * sigma / 1024, 1025}.nodes(),
                      {});
    h0.values.resize(h0.nodes.size());
    for (std::size_t i = 0; i < h0.nodes.size(); ++i) {
      const double Z = h0.nodes[i];
      h0.values[i] =
          std::exp(-Z * Z / (4.0 * Dhat * t0)) / std::sqrt(4.0 * M_PI * Dhat * t0);
    }
    HeatOptions hopt;
    for (std::size_t i = 0; i < n; ++i)
      hopt.output_nodes.push_back(std::pow(y[i], 1.5));
    const DensityProfile rhoH = heat_propagate(h0, Dhat, 1.0 - t0, hopt);
    const double kappa1 = std::sqrt(4.0 * M_PI * Dhat);

    const double dt = 0.39 * dy * dy / (2.0 * (D / y[0]));

    std::vector<double> vf(n), vs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double shape = std::exp(-std::pow(y[i], 3) / (9.0 * D * t0));
      vf[i] = std::pow(t0, -1.0 / 3.0) * shape;
      vs[i] = std::pow(t0, -2.0 / 3.0) * std::sqrt(y[i]) * shape;
    }

    FdOptions fo;
    const DensityProfile flux = fd_solve_transformed(
        params, DensityProfile(ProfileCoord::Y, Measure::DW, y, vf), 1.0 - t0,
        dt, fo);
    fo.scheme = FdScheme::SymmetricSplit;
    const DensityProfile split = fd_solve_transformed(
        params, DensityProfile(ProfileCoord::Y, Measure::DW, y, vs), 1.0 - t0,
        dt, fo);

    double l2f = 0.0, l2s = 0.0, mass0 = 0.0, mass1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double df = flux.values[i] - kappa1 * rhoH.values[i];
      const double g = std::sqrt(D / y[i]);
      const double ds = g * split.values[i] - std::sqrt(D) * kappa1 * rhoH.values[i];
      l2f += df * df;
      l2s += ds * ds;
      mass0 += vf[i] * dy;
      mass1 += flux.values[i] * dy;
    }
    l2f = std::sqrt(l2f * dy);
    l2s = std::sqrt(l2s * dy);
    const double drift = std::abs(mass1 - mass0);
    o.require(l2f <= 1e-3, "beta=2 flux L2 <= 1e-3");
    o.require(l2s <= 1e-3, "beta=2 split L2 <= 1e-3");
    o.require(drift <= 1e-10, "beta=2 flux mass drift <= 1e-10");
    o.note("beta2 flux=" + fmt(l2f) + " split=" + fmt(l2s) + " drift=" +
           fmt(drift));
  }
  return o;
}

// ------------------------------------------------------------ criterion 6

Outcome criterion_transform_algebra() {
  Outcome o;
  SplitMix64 rng(2025);
  const GridSpec source{-10.0, 20.0 / 511, 512};
  const GridSpec target{-12.0, 24.0 / 639, 640};

  double lin_worst = 0.0, pars_worst = 0.0, rt_worst = 0.0, fft_worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    MixedKernelSpec spec;
    spec.source_warp = random_warp(rng);
    spec.target_warp = random_warp(rng);

    TransformOptions opt;
    opt.target_sampling = SamplingMode::WarpedUniform;

    const SampledSignal f = enveloped_signal(source, rng);
    const SampledSignal g = enveloped_signal(source, rng);
    const SampledSignal F = forward(spec, f, target, opt);
    const SampledSignal G = forward(spec, g, target, opt);

    // Linearity.
    const cplx a(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const cplx b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    SampledSignal mix = f;
    for (std::size_t i = 0; i < mix.size(); ++i)
      mix.samples[i] = a * f.samples[i] + b * g.samples[i];
    const SampledSignal M = forward(spec, mix, target, opt);
    double scale = 0.0;
    for (std::size_t i = 0; i < M.size(); ++i) {
      const cplx want = a * F.samples[i] + b * G.samples[i];
      scale = std::max(scale, std::abs(want));
      lin_worst = std::max(lin_worst, std::abs(M.samples[i] - want));
    }
    lin_worst /= std::max(1.0, scale);

    // Parseval in the warped measure.
    std::vector<double> pf(f.size()), pF(F.size());
    for (std::size_t i = 0; i < f.size(); ++i) pf[i] = std::norm(f.samples[i]);
    for (std::size_t i = 0; i < F.size(); ++i) pF[i] = std::norm(F.samples[i]);
    const double ef = trapezoid(f.nodes, pf);
    const double eF = trapezoid(F.nodes, pF);
    pars_worst = std::max(pars_worst, std::abs(ef - eF) / ef);

    // Round trip.
    TransformOptions back = opt;
    back.output_coord = Coord::W;
    const SampledSignal f2 = inverse(spec, F, source, back);
    rt_worst = std::max(rt_worst, linf(f.samples, f2.samples));
  }

  // The fast path only exists for identity warps on uniform grids.
  for (int trial = 0; trial < 5; ++trial) {
    MixedKernelSpec id;
    id.sign = (trial & 1) ? -1 : +1;
    TransformOptions direct;
    direct.target_sampling = SamplingMode::WarpedUniform;
    TransformOptions fast = direct;
    fast.route = Route::FftFastPath;
    const SampledSignal f = enveloped_signal(source, rng);
    const SampledSignal d = forward(id, f, target, direct);
    const SampledSignal q = forward(id, f, target, fast);
    fft_worst = std::max(fft_worst, linf(d.samples, q.samples));
  }

  o.require(lin_worst <= 1e-6, "linearity <= 1e-6");
  o.require(pars_worst <= 1e-6, "parseval <= 1e-6");
  o.require(rt_worst <= 1e-6, "roundtrip <= 1e-6");
  o.require(fft_worst <= 1e-10, "fft vs direct <= 1e-10");
  o.note("linearity=" + fmt(lin_worst) + " parseval=" + fmt(pars_worst) +
         " roundtrip=" + fmt(rt_worst) + " fft=" + fmt(fft_worst));
  return o;
}

// ------------------------------------------------------------ criterion 7

Outcome criterion_warp_estimation() {
  Outcome o;
  SearchGrid grid;
  grid.axes = {SearchAxis{0.5, 0.05, 21}, SearchAxis{0.0, 0.01, 21}};

  const std::size_t truth_idx[5][2] = {
      {10, 10}, {10, 0}, {11, 10}, {9, 15}, {12, 20}};
  std::size_t evals = 0;
  for (const auto& idx : truth_idx) {
    // Decode the truth the same way the search decodes candidates, so exact
    // recovery is a well-defined bitwise comparison.
    const double a1 =
        grid.axes[0].min + static_cast<double>(idx[0]) * grid.axes[0].step;
    const double a3 =
        grid.axes[1].min + static_cast<double>(idx[1]) * grid.axes[1].step;

    ChirpSpec spec;
    spec.time_warp = Warp::odd_polynomial({a1, a3});
    const SampledSignal S = synthesize(spec, GridSpec{-8.0, 0.015625, 1025});

    const WarpEstimate est = estimate_warp(S, grid);
    evals += est.evaluations;
    const bool hit = est.coeffs.size() == 2 && est.coeffs[0] == a1 &&
                     est.coeffs[1] == a3;
    o.require(hit, "exact recovery of (" + fmt(a1) + "," + fmt(a3) + ")");
    if (hit) o.note("(" + fmt(a1) + "," + fmt(a3) + ") ok");
  }
  o.require(evals == 5 * 441, "all candidates evaluated");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* title;
    Outcome (*run)();
    double cap_seconds;  // <= 0 means no cap
  };
  const Entry entries[] = {
      {1, "gaussian fixed point", criterion_gaussian_fixed_point, -1.0},
      {2, "chirp harmonization", criterion_chirp_harmonization, 30.0},
      {3, "msd crossover", criterion_msd_crossover, 60.0},
      {4, "poisson bracket and operator order", criterion_bracket_and_operator,
       -1.0},
      {5, "fd oracle equivalence", criterion_fd_oracle_equivalence, -1.0},
      {6, "transform algebra", criterion_transform_algebra, -1.0},
      {7, "warp estimation", criterion_warp_estimation, 120.0},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.note(std::string("exception: ") + ex.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (e.cap_seconds > 0.0 && secs > e.cap_seconds) {
      o.pass = false;
      o.note("runtime cap " + fmt(e.cap_seconds) + "s exceeded");
    }
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n",
                o.pass ? "PASS" : "FAIL", e.number, e.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
