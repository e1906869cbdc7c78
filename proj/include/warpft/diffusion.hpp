#pragma once

#include <cstddef>
#include <vector>

#include "warpft/grid.hpp"
#include "warpft/warp.hpp"

namespace warpft {

struct HeatOptions {
  // Where to evaluate the propagated density; empty reuses the input nodes.
  std::vector<double> output_nodes;
  double decay_threshold = 1e-12;  // edge/peak ratio allowed at the grid ends
};

// Exact normal diffusion in the warped coordinate:
//   rho(W, t) = integral dW' G(W - W', t) rho0(W'),
//   G(d, t)   = exp(-d^2 / (4 D t)) / sqrt(4 pi D t)
// evaluated by trapezoid quadrature over the input grid. The normalized
// kernel keeps the dW mass constant, which the MSD analysis relies on.
DensityProfile heat_propagate(const DensityProfile& rho0, double D, double t,
                              const HeatOptions& opt = {});

// Relabels a dW density onto the raw coordinate through x = W^{-1}:
//   mode DW  proper transform rho_x(x) = rho_W(W(x)) * W'(x), dx mass equals
//            the original dW mass;
//   mode Dx  the anomalous reading rho(x) = rho_W(W(x)) with no Jacobian,
//            integrated against dx as-is.
DensityProfile pullback_to_x(const DensityProfile& rho_W, const Warp& w,
                             Measure mode);

// Second moment about the origin under the profile's declared measure:
// integral x^2 rho dmu / integral rho dmu over the profile nodes.
double msd(const DensityProfile& rho);

struct MsdOptions {
  // Variance of the near-delta initial Gaussian in W. Small enough that the
  // earliest slope of normal diffusion is already 1 to a few 1e-6.
  double initial_variance = 1e-8;
  std::size_t source_count = 257;  // nodes resolving the initial Gaussian
  std::size_t x_count = 2049;      // raw-coordinate nodes per output time
  double halfwidth_sigmas = 10.0;  // W-coverage of the per-time x-grid
  Measure mode = Measure::Dx;      // the anomalous reading by default
  int threads = 1;                 // times are independent experiment cells
};

// W-space profile of the near-delta release after time t, on an x-uniform
// output grid adapted to the spread at t. One cell of the MSD experiment.
DensityProfile msd_profile_at(const Warp& w, double D, double t,
                              const MsdOptions& opt = {});

// Releases a near-delta in W, heat-propagates it to each time, pulls the
// density back to x, and records MSD plus local log-log slopes. With the dx
// reading and w = x + x^3 the slopes cross over from 1 to 1/3.
MsdSeries msd_experiment(const Warp& w, double D,
                         const std::vector<double>& times,
                         const MsdOptions& opt = {});

// Power-law diffusion parameters: D x^{1-c} d/dx x^{c-1-theta} d/dx, with
// the monomial warp y = C x^beta, beta = theta/2 - c + 2.
struct OPParams {
  double D = 1.0;
  double c = 1.0;
  double theta = 0.0;
  double C = 1.0;
};

double op_beta(const OPParams& params);

// Two explicit discretizations of the transformed power-law equation:
//   Flux            rho_t = d/dy [ a(y) d rho/dy ],      a = C^2 b^2 D (dx/dy)^2
//   SymmetricSplit  rho_t = g(y) d^2/dy^2 [ g(y) rho ],  g = sqrt(a)
// Flux conserves the dy mass by telescoping fluxes; the split form keeps
// the symmetric operator ordering written out above.
enum class FdScheme { Flux, SymmetricSplit };

struct FdOptions {
  FdScheme scheme = FdScheme::Flux;
  double cfl = 0.4;  // dt must satisfy dt <= cfl * dy^2 / (2 max coefficient)
};

// Marches rho0 (uniform y-grid) to t_end with explicit Euler steps of at
// most dt (the last step is shrunk to land exactly). Zero-flux boundaries
// for the flux scheme, even reflection across the boundary faces for the
// split scheme. Rejects CFL-violating dt and detected blow-ups with
// StepSizeError.
DensityProfile fd_solve_transformed(const OPParams& params,
                                    const DensityProfile& rho0, double t_end,
                                    double dt, const FdOptions& opt = {});

}  // namespace warpft
