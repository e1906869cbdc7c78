#pragma once

#include <variant>
#include <vector>

#include "warpft/grid.hpp"

namespace warpft {

// Strictly increasing odd coordinate map W(x): W(-x) = -W(x), W(0) = 0,
// W'(x) > 0 away from isolated admissible points. Two families:
//
//   OddPolynomial   W(x) = sum_j a_j x^(2j-1),  a_1 > 0, a_j >= 0
//   SignedMonomial  W(x) = C * sign(x) * |x|^beta,  C > 0, beta > 0
//
// Both are globally invertible on the real line.
class Warp {
 public:
  struct OddPolynomial {
    // coeffs[j] multiplies x^(2j+1); coeffs[0] is the linear coefficient.
    std::vector<double> coeffs;
  };

  struct SignedMonomial {
    double scale = 1.0;     // C
    double exponent = 1.0;  // beta
  };

  explicit Warp(OddPolynomial p);
  explicit Warp(SignedMonomial m);

  static Warp identity();
  static Warp odd_polynomial(std::vector<double> coeffs);
  static Warp signed_monomial(double scale, double exponent);

  double eval(double x) const;

  // W'(x). For SignedMonomial with beta < 1 this diverges at x = 0 and a
  // SingularityError is thrown; for beta > 1 it returns 0 there.
  double derivative(double x) const;

  // W''(x). Throws SingularityError where the analytic value diverges.
  double second_derivative(double x) const;

  // Solves W(x) = v by expanding bracket plus bisection/Newton refinement;
  // |W(invert(v)) - v| <= 1e-12 * max(1, |v|). Odd by construction.
  double invert(double v) const;

  bool is_identity() const;
  const std::variant<OddPolynomial, SignedMonomial>& form() const { return form_; }

 private:
  std::variant<OddPolynomial, SignedMonomial> form_;
};

struct PhaseSpacePoint {
  double x = 0.0;
  double p = 0.0;
};

// Momentum conjugate to W: P_W = p / W'(x).
double conjugate_momentum(const Warp& w, const PhaseSpacePoint& pt);

// Canonical bracket {W, P_W} evaluated from analytic partial derivatives;
// equals 1 for every valid warp, so the return value is a correctness probe.
double poisson_bracket_check(const Warp& w, const PhaseSpacePoint& pt);

// Applies -i d/dW = -i (1/W'(x)) d/dx to samples on an x-grid, using
// second-order differences (one-sided at the ends). Needs >= 5 nodes.
SampledSignal apply_pw_operator(const Warp& w, const SampledSignal& f);

}  // namespace warpft
