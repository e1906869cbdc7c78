#include "warpft/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "warpft/errors.hpp"

namespace warpft {

cplx unit_phasor(long double phase) {
  return {static_cast<double>(std::cos(phase)),
          static_cast<double>(std::sin(phase))};
}

static void require_increasing(std::span<const double> nodes) {
  if (nodes.size() < 2) throw ValidationError("need at least 2 nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1]))
      throw ValidationError("nodes must be strictly increasing");
  }
}

std::vector<double> trapezoid_weights(std::span<const double> nodes) {
  require_increasing(nodes);
  const std::size_t n = nodes.size();
  std::vector<double> w(n);
  w[0] = 0.5 * (nodes[1] - nodes[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (nodes[i + 1] - nodes[i - 1]);
  w[n - 1] = 0.5 * (nodes[n - 1] - nodes[n - 2]);
  return w;
}

double trapezoid(std::span<const double> nodes, std::span<const double> values) {
  if (nodes.size() != values.size())
    throw ValidationError("trapezoid: node/value size mismatch");
  const auto w = trapezoid_weights(nodes);
  CompensatedSum acc;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc.add(w[i] * values[i]);
  return acc.value();
}

std::vector<double> derivative_samples(std::span<const double> nodes,
                                       std::span<const double> values) {
  if (nodes.size() != values.size())
    throw ValidationError("derivative_samples: node/value size mismatch");
  if (nodes.size() < 3)
    throw ValidationError("derivative_samples: need at least 3 nodes");
  require_increasing(nodes);
  const std::size_t n = nodes.size();
  std::vector<double> d(n);
  // 3-point Lagrange derivative at x = nodes[i] using nodes j0, j0+1, j0+2.
  auto stencil = [&](std::size_t i, std::size_t j0) {
    const double x = nodes[i];
    const double x0 = nodes[j0], x1 = nodes[j0 + 1], x2 = nodes[j0 + 2];
    const double f0 = values[j0], f1 = values[j0 + 1], f2 = values[j0 + 2];
    const double c0 = (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2));
    const double c1 = (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2));
    const double c2 = (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
    return c0 * f0 + c1 * f1 + c2 * f2;
  };
  d[0] = stencil(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = stencil(i, i - 1);
  d[n - 1] = stencil(n - 1, n - 3);
  return d;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
  if (x_.size() != y_.size()) throw ValidationError("spline: size mismatch");
  if (x_.size() < 3) throw ValidationError("spline: need at least 3 nodes");
  require_increasing(x_);
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  // Thomas solve for natural end conditions (m_0 = m_{n-1} = 0).
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  diag[0] = 1.0;
  diag[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  std::vector<double> lower(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) lower[i] = x_[i] - x_[i - 1];
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
}

double CubicSpline::operator()(double x) const {
  if (x_.empty()) throw ValidationError("spline: not built");
  const double span = x_.back() - x_.front();
  const double slack = 1e-9 * span;
  if (x < x_.front() - slack || x > x_.back() + slack)
    throw DomainError("spline: evaluation outside node range");
  x = std::clamp(x, x_.front(), x_.back());
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) / 6.0;
}

ComplexSpline::ComplexSpline(std::span<const double> xs, std::span<const cplx> ys) {
  std::vector<double> re(ys.size()), im(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    re[i] = ys[i].real();
    im[i] = ys[i].imag();
  }
  std::vector<double> x(xs.begin(), xs.end());
  re_ = CubicSpline(x, re);
  im_ = CubicSpline(std::move(x), std::move(im));
}

cplx ComplexSpline::operator()(double x) const { return {re_(x), im_(x)}; }

double invert_increasing(const std::function<double(double)>& f,
                         const std::function<double(double)>& df,
                         double target, double rel_tol) {
  if (!std::isfinite(target)) throw DomainError("invert: non-finite target");
  const double ftol = rel_tol * std::max(1.0, std::abs(target));
  double lo, hi;
  const double f0 = f(0.0);
  if (std::abs(f0 - target) <= ftol) return 0.0;
  if (f0 < target) {
    lo = 0.0;
    hi = 1.0;
    double fh;
    while ((fh = f(hi)) < target) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw NumericError("invert: bracket overflow");
    }
    if (fh == target) return hi;  // expansion landed on the root
  } else {
    hi = 0.0;
    lo = -1.0;
    double fl;
    while ((fl = f(lo)) > target) {
      hi = lo;
      lo *= 2.0;
      if (!std::isfinite(lo)) throw NumericError("invert: bracket overflow");
    }
    if (fl == target) return lo;
  }
  // Newton safeguarded by the bracket, driven past the requested tolerance
  // until no representable point is left between the bracket ends, so clean
  // targets invert to exactly representable roots.
  double x = 0.5 * (lo + hi);
  double best_x = x;
  double best = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = f(x) - target;
    if (std::abs(fx) < best) {
      best = std::abs(fx);
      best_x = x;
    }
    if (fx == 0.0) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double d = df(x);
    double xn;
    if (std::isfinite(d) && d > 0.0) {
      xn = x - fx / d;
      if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    } else {
      xn = 0.5 * (lo + hi);
    }
    if (xn == lo || xn == hi || xn == x) break;  // bracket interior exhausted
    x = xn;
  }
  if (best <= ftol) return best_x;
  throw NumericError("invert: no convergence");
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  std::size_t nt = threads <= 0 ? std::thread::hardware_concurrency() : threads;
  if (nt == 0) nt = 1;
  nt = std::min<std::size_t>(nt, n);
  if (nt <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t b = t * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace warpft
