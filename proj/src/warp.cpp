#include "warpft/warp.hpp"

#include <cmath>
#include <string>

#include "warpft/numerics.hpp"

namespace warpft {

namespace {

void check_finite_arg(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string("non-finite ") + what);
}

}  // namespace

Warp::Warp(OddPolynomial p) : form_(std::move(p)) {
  const auto& c = std::get<OddPolynomial>(form_).coeffs;
  if (c.empty()) throw ValidationError("odd polynomial warp: no coefficients");
  if (!std::isfinite(c[0]) || !(c[0] > 0.0))
    throw ValidationError("odd polynomial warp: linear coefficient must be > 0");
  for (std::size_t j = 1; j < c.size(); ++j)
    if (!std::isfinite(c[j]) || c[j] < 0.0)
      throw ValidationError("odd polynomial warp: coefficients must be >= 0");
}

Warp::Warp(SignedMonomial m) : form_(m) {
  if (!std::isfinite(m.scale) || !(m.scale > 0.0))
    throw ValidationError("signed monomial warp: scale must be > 0");
  if (!std::isfinite(m.exponent) || !(m.exponent > 0.0))
    throw ValidationError("signed monomial warp: exponent must be > 0");
}

Warp Warp::identity() { return Warp(OddPolynomial{{1.0}}); }

Warp Warp::odd_polynomial(std::vector<double> coeffs) {
  return Warp(OddPolynomial{std::move(coeffs)});
}

Warp Warp::signed_monomial(double scale, double exponent) {
  return Warp(SignedMonomial{scale, exponent});
}

double Warp::eval(double x) const {
  check_finite_arg(x, "x");
  if (const auto* p = std::get_if<OddPolynomial>(&form_)) {
    // Horner in x^2 keeps W exactly odd in floating point.
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t j = p->coeffs.size(); j-- > 0;) acc = acc * x2 + p->coeffs[j];
    return x * acc;
  }
  const auto& m = std::get<SignedMonomial>(form_);
  if (x == 0.0) return 0.0;
  return std::copysign(m.scale * std::pow(std::abs(x), m.exponent), x);
}

double Warp::derivative(double x) const {
  check_finite_arg(x, "x");
  if (const auto* p = std::get_if<OddPolynomial>(&form_)) {
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t j = p->coeffs.size(); j-- > 0;)
      acc = acc * x2 + static_cast<double>(2 * j + 1) * p->coeffs[j];
    return acc;
  }
  const auto& m = std::get<SignedMonomial>(form_);
  if (x == 0.0) {
    if (m.exponent < 1.0)
      throw SingularityError("signed monomial warp: derivative diverges at x = 0");
    return m.exponent == 1.0 ? m.scale : 0.0;
  }
  return m.scale * m.exponent * std::pow(std::abs(x), m.exponent - 1.0);
}

double Warp::second_derivative(double x) const {
  check_finite_arg(x, "x");
  if (const auto* p = std::get_if<OddPolynomial>(&form_)) {
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t j = p->coeffs.size(); j-- > 1;)
      acc = acc * x2 +
            static_cast<double>((2 * j + 1) * (2 * j)) * p->coeffs[j];
    return x * acc;
  }
  const auto& m = std::get<SignedMonomial>(form_);
  if (x == 0.0) {
    if (m.exponent < 2.0 && m.exponent != 1.0)
      throw SingularityError(
          "signed monomial warp: second derivative diverges at x = 0");
    return 0.0;
  }
  return std::copysign(
      m.scale * m.exponent * (m.exponent - 1.0) *
          std::pow(std::abs(x), m.exponent - 2.0),
      x);
}

double Warp::invert(double v) const {
  check_finite_arg(v, "value");
  if (v == 0.0) return 0.0;
  // Solve on the positive branch and use oddness, so invert(-v) == -invert(v)
  // bit for bit.
  const double target = std::abs(v);
  const double root = invert_increasing(
      [this](double x) { return eval(x); },
      [this](double x) {
        if (const auto* m = std::get_if<SignedMonomial>(&form_)) {
          if (x == 0.0 && m->exponent < 1.0) return 0.0;  // force bisection
        }
        return derivative(x);
      },
      target);
  return std::copysign(root, v);
}

bool Warp::is_identity() const {
  if (const auto* p = std::get_if<OddPolynomial>(&form_)) {
    if (p->coeffs[0] != 1.0) return false;
    for (std::size_t j = 1; j < p->coeffs.size(); ++j)
      if (p->coeffs[j] != 0.0) return false;
    return true;
  }
  const auto& m = std::get<SignedMonomial>(form_);
  return m.scale == 1.0 && m.exponent == 1.0;
}

double conjugate_momentum(const Warp& w, const PhaseSpacePoint& pt) {
  check_finite_arg(pt.x, "x");
  check_finite_arg(pt.p, "p");
  const double d = w.derivative(pt.x);
  if (!std::isfinite(d) || !(d > 0.0))
    throw SingularityError("conjugate momentum: W'(x) must be finite and > 0");
  return pt.p / d;
}

double poisson_bracket_check(const Warp& w, const PhaseSpacePoint& pt) {
  check_finite_arg(pt.x, "x");
  check_finite_arg(pt.p, "p");
  const double wp = w.derivative(pt.x);
  if (!std::isfinite(wp) || !(wp > 0.0))
    throw SingularityError("poisson bracket: W'(x) must be finite and > 0");
  const double wpp = w.second_derivative(pt.x);
  // {W, P_W} = (dW/dx)(dP/dp) - (dW/dp)(dP/dx) with P = p / W'(x).
  const double dP_dp = 1.0 / wp;
  const double dW_dp = 0.0;
  const double dP_dx = -pt.p * wpp / (wp * wp);
  return wp * dP_dp - dW_dp * dP_dx;
}

SampledSignal apply_pw_operator(const Warp& w, const SampledSignal& f) {
  f.validate();
  if (f.coord != Coord::X)
    throw ValidationError("apply_pw_operator: input must be sampled in x");
  if (f.size() < 5)
    throw ValidationError("apply_pw_operator: need at least 5 nodes");
  const std::size_t n = f.size();
  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = f.samples[i].real();
    im[i] = f.samples[i].imag();
  }
  const auto dre = derivative_samples(f.nodes, re);
  const auto dim = derivative_samples(f.nodes, im);
  SampledSignal out = f;
  for (std::size_t i = 0; i < n; ++i) {
    const double wp = w.derivative(f.nodes[i]);
    if (!std::isfinite(wp) || !(wp > 0.0))
      throw SingularityError("apply_pw_operator: W'(x) must be finite and > 0");
    // -i * (df/dx) / W'
    out.samples[i] = cplx(dim[i] / wp, -dre[i] / wp);
  }
  return out;
}

}  // namespace warpft
