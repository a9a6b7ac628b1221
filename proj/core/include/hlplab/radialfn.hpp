#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hlplab {

// One c * r^power * log(r)^log_order term. log_order is capped at 1: the
// operators in this lab map power functions to at most one logarithm (the
// exponent-collision case), which keeps the algebra closed.
struct PowerLogTerm {
  double coeff = 0.0;
  double power = 0.0;
  int log_order = 0;  // 0 or 1
};

// A radius interval; hi may be +inf. Endpoints carry no open/closed flag —
// all uses are measure-theoretic.
struct RadiusInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// A radial function represented exactly as a piecewise sum of power-log
// terms. breakpoints are strictly increasing radii in (0, inf]; piece i lives
// on [b_{i-1}, b_i) with b_{-1} = 0, and the function is 0 beyond the last
// breakpoint. Ties at breakpoints evaluate right-continuously.
class PiecewisePowerLog {
 public:
  PiecewisePowerLog() = default;  // the zero function
  PiecewisePowerLog(std::vector<double> breakpoints,
                    std::vector<std::vector<PowerLogTerm>> pieces);

  // Text form, one statement per piece:
  //   piece [lo,hi): c*r^a*log(r)^k + c*r^a + ...
  // Statements are separated by newlines or ';'. parse() also accepts the
  // shorthand "TERMS on [lo,hi)" (any bracket style).
  static PiecewisePowerLog parse(const std::string& text);
  std::string format() const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<PowerLogTerm>>& pieces() const {
    return pieces_;
  }
  bool is_zero() const { return pieces_.empty(); }

  // Interval [lo, hi) of piece i.
  RadiusInterval interval(std::size_t i) const;

  // Index of the piece containing r, or npos when r is past the last
  // breakpoint (where the function is 0).
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t piece_index(double r) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<PowerLogTerm>> pieces_;
};

// Sum of the containing piece's terms at radius r (> 0, else DomainError).
double evaluate(const PiecewisePowerLog& f, double r);

// Exact closed-form value of  int_lo^hi f(r) r^extra_power dr  via per-term
// antiderivatives; |power + extra_power + 1| < 1e-12 switches to the
// logarithmic branch. Throws DivergenceError (naming the offending term) when
// an endpoint integral diverges.
double integrate_weighted(const PiecewisePowerLog& f, double lo, double hi,
                          double extra_power);

// {r > 0 : f(r) > lambda} as finitely many disjoint intervals in increasing
// order. Single-power pieces are solved in closed form; supported two-power
// shapes by monotone-segment bisection to relative radius tolerance 1e-12.
// Pieces with more than two distinct powers throw UnsupportedShapeError.
std::vector<RadiusInterval> superlevel_set(const PiecewisePowerLog& f,
                                           double lambda);

// c * f (term-wise coefficient scaling).
PiecewisePowerLog scale(const PiecewisePowerLog& f, double c);

namespace detail {
// Interior critical radii of r -> sum(terms)(r) for the supported shapes,
// used by superlevel_set and by the weak-norm candidate search.
std::vector<double> critical_points(const std::vector<PowerLogTerm>& terms);
// Signed limit direction of sum(terms)(r) - lambda as r -> 0+ / r -> inf:
// -1, 0 (finite limit equal to the returned value via *finite), +1.
int limit_sign_at_zero(const std::vector<PowerLogTerm>& terms, double lambda,
                       double* finite_limit);
int limit_sign_at_inf(const std::vector<PowerLogTerm>& terms, double lambda,
                      double* finite_limit);
// Terms merged by (power, log_order) with near-zero coefficients dropped.
std::vector<PowerLogTerm> merge_terms(std::vector<PowerLogTerm> terms);
}  // namespace detail

}  // namespace hlplab
