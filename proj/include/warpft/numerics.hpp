#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace warpft {

using cplx = std::complex<double>;

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrt2Pi = 2.5066282746310005024;

// Neumaier-compensated running sum. Accumulation order is the call order;
// callers that need bitwise reproducibility must feed terms left to right.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

struct CompensatedCplxSum {
  CompensatedSum re, im;

  void add(const cplx& z) {
    re.add(z.real());
    im.add(z.imag());
  }

  cplx value() const { return {re.value(), im.value()}; }
};

// e^{i*phase}; the phase is carried in extended precision so large phase
// products keep sub-1e-14 angular error.
cplx unit_phasor(long double phase);

// Trapezoid quadrature weights for a strictly increasing node list.
std::vector<double> trapezoid_weights(std::span<const double> nodes);

double trapezoid(std::span<const double> nodes, std::span<const double> values);

// First derivative of sampled values, second order: 3-point Lagrange
// stencils, one-sided at the ends. Needs >= 3 strictly increasing nodes.
std::vector<double> derivative_samples(std::span<const double> nodes,
                                       std::span<const double> values);

// Natural cubic spline on strictly increasing nodes.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the nodes
};

class ComplexSpline {
 public:
  ComplexSpline() = default;
  ComplexSpline(std::span<const double> xs, std::span<const cplx> ys);

  cplx operator()(double x) const;

 private:
  CubicSpline re_, im_;
};

// Solves f(x) = target for strictly increasing f: expanding bracket
// (geometric growth) followed by bisection/Newton hybrid refinement.
// Stops when |f(x) - target| <= rel_tol * max(1, |target|).
double invert_increasing(const std::function<double(double)>& f,
                         const std::function<double(double)>& df,
                         double target, double rel_tol = 1e-12);

// Runs body(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Chunk boundaries do not affect results; workers own disjoint
// output ranges.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

// splitmix64: small portable generator so frozen test values do not depend
// on standard-library distribution internals.
struct SplitMix64 {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;

  explicit SplitMix64(std::uint64_t seed = 1) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

}  // namespace warpft
