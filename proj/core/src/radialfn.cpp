#include "hlplab/radialfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "hlplab/errors.hpp"

namespace hlplab {

namespace {

constexpr double kCollisionTol = 1e-12;  // |power+1| switch to the log branch
constexpr double kPowerMergeTol = 1e-12;
constexpr double kRadiusTol = 1e-12;  // bisection tolerance (relative)
const double kInf = std::numeric_limits<double>::infinity();

std::string term_str(const PowerLogTerm& t) {
  char buf[96];
  if (t.log_order == 0)
    std::snprintf(buf, sizeof buf, "%.17g*r^%.17g", t.coeff, t.power);
  else
    std::snprintf(buf, sizeof buf, "%.17g*r^%.17g*log(r)^1", t.coeff, t.power);
  return buf;
}

double eval_terms(const std::vector<PowerLogTerm>& terms, double r) {
  double acc = 0.0;
  const double lr = std::log(r);
  for (const auto& t : terms) {
    double v = t.coeff * std::pow(r, t.power);
    if (t.log_order == 1) v *= lr;
    acc += v;
  }
  return acc;
}

// Definite integral of c r^m log(r)^k over [a, b] (0 <= a <= b <= inf) with
// divergent endpoints reported via DivergenceError. `origin` names the term
// in error messages.
double power_term_integral(double c, double m, int k, double a, double b,
                           const PowerLogTerm& origin) {
  if (c == 0.0 || a == b) return 0.0;
  const double s = m + 1.0;
  const bool log_branch = std::fabs(s) < kCollisionTol;

  auto diverge = [&](const char* where) -> double {
    std::ostringstream msg;
    msg << "integrate_weighted: term " << term_str(origin)
        << " diverges at r=" << where << " (effective exponent " << m << ")";
    throw DivergenceError(msg.str());
  };

  if (a == 0.0 && (log_branch || s < 0.0)) diverge("0");
  if (std::isinf(b) && (log_branch || s > 0.0)) diverge("inf");

  if (k == 0) {
    if (log_branch) return c * std::log(b / a);
    if (a == 0.0) return c * std::pow(b, s) / s;
    if (std::isinf(b)) return -c * std::pow(a, s) / s;
    // c a^s expm1(s log(b/a)) / s  — stable when s is tiny but past the
    // collision threshold.
    return c * std::pow(a, s) * std::expm1(s * std::log(b / a)) / s;
  }

  // k == 1: antiderivative c r^s (log r / s - 1/s^2), log branch c log^2(r)/2.
  if (log_branch) {
    if (a == 0.0 || std::isinf(b)) diverge(a == 0.0 ? "0" : "inf");
    const double la = std::log(a), lb = std::log(b);
    return c * 0.5 * (lb * lb - la * la);
  }
  if (a == 0.0) {
    // limit of r^s log r at 0 is 0 for s > 0
    const double lb = std::log(b);
    return c * std::pow(b, s) * (lb / s - 1.0 / (s * s));
  }
  if (std::isinf(b)) {
    const double la = std::log(a);
    return -c * std::pow(a, s) * (la / s - 1.0 / (s * s));
  }
  const double la = std::log(a), lb = std::log(b);
  if (std::fabs(s) * std::max(std::fabs(la), std::fabs(lb)) < 1e-4) {
    // Series around s = 0:  int u e^{su} du = sum_j s^j/j! (lb^{j+2}-la^{j+2})/(j+2)
    double total = 0.0, sj = 1.0, fact = 1.0;
    for (int j = 0; j <= 4; ++j) {
      const double num =
          std::pow(lb, j + 2) - std::pow(la, j + 2);
      total += sj / fact * num / (j + 2);
      sj *= s;
      fact *= (j + 1);
    }
    return c * total;
  }
  const double fa = std::pow(a, s) * (la / s - 1.0 / (s * s));
  const double fb = std::pow(b, s) * (lb / s - 1.0 / (s * s));
  return c * (fb - fa);
}

}  // namespace

PiecewisePowerLog::PiecewisePowerLog(
    std::vector<double> breakpoints, std::vector<std::vector<PowerLogTerm>> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() != pieces_.size())
    throw DomainError("PiecewisePowerLog: one term list per interval required");
  double prev = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double b = breakpoints_[i];
    if (!(b > prev))
      throw DomainError("PiecewisePowerLog: breakpoints must be strictly "
                        "increasing and positive");
    if (std::isinf(b) && i + 1 != breakpoints_.size())
      throw DomainError("PiecewisePowerLog: only the last breakpoint may be inf");
    prev = b;
  }
  for (const auto& piece : pieces_)
    for (const auto& t : piece) {
      if (!std::isfinite(t.coeff) || !std::isfinite(t.power))
        throw DomainError("PiecewisePowerLog: coefficients and powers must be finite");
      if (t.log_order != 0 && t.log_order != 1)
        throw DomainError("PiecewisePowerLog: log_order must be 0 or 1");
    }
}

RadiusInterval PiecewisePowerLog::interval(std::size_t i) const {
  if (i >= pieces_.size()) throw DomainError("PiecewisePowerLog: bad piece index");
  return {i == 0 ? 0.0 : breakpoints_[i - 1], breakpoints_[i]};
}

std::size_t PiecewisePowerLog::piece_index(double r) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
  if (it == breakpoints_.end()) return npos;
  return static_cast<std::size_t>(it - breakpoints_.begin());
}

double evaluate(const PiecewisePowerLog& f, double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("evaluate: radius must be positive and finite");
  const std::size_t i = f.piece_index(r);
  if (i == PiecewisePowerLog::npos) return 0.0;
  return eval_terms(f.pieces()[i], r);
}

double integrate_weighted(const PiecewisePowerLog& f, double lo, double hi,
                          double extra_power) {
  if (!(lo >= 0.0) || std::isnan(hi) || !(hi >= lo))
    throw DomainError("integrate_weighted: need 0 <= lo <= hi");
  if (f.is_zero() || lo == hi) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const RadiusInterval iv = f.interval(i);
    const double a = std::max(lo, iv.lo);
    const double b = std::min(hi, iv.hi);
    if (!(a < b)) continue;
    for (const auto& t : f.pieces()[i])
      total += power_term_integral(t.coeff, t.power + extra_power, t.log_order,
                                   a, b, t);
  }
  return total;
}

PiecewisePowerLog scale(const PiecewisePowerLog& f, double c) {
  auto pieces = f.pieces();
  for (auto& piece : pieces)
    for (auto& t : piece) t.coeff *= c;
  return PiecewisePowerLog(f.breakpoints(), std::move(pieces));
}

// --------------------------------------------------------------------------
// superlevel sets
// --------------------------------------------------------------------------

namespace detail {

std::vector<PowerLogTerm> merge_terms(std::vector<PowerLogTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    if (x.power != y.power) return x.power < y.power;
    return x.log_order < y.log_order;
  });
  std::vector<PowerLogTerm> out;
  for (const auto& t : terms) {
    if (t.coeff == 0.0) continue;
    if (!out.empty() && out.back().log_order == t.log_order &&
        std::fabs(out.back().power - t.power) <= kPowerMergeTol) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0.0) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// Groups merged terms by power: (power, k0 coeff, k1 coeff).
struct PowerGroup {
  double power = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
};

static std::vector<PowerGroup> group_by_power(
    const std::vector<PowerLogTerm>& merged) {
  std::vector<PowerGroup> groups;
  for (const auto& t : merged) {
    if (!groups.empty() &&
        std::fabs(groups.back().power - t.power) <= kPowerMergeTol) {
      (t.log_order == 0 ? groups.back().c0 : groups.back().c1) += t.coeff;
    } else {
      PowerGroup g;
      g.power = t.power;
      (t.log_order == 0 ? g.c0 : g.c1) = t.coeff;
      groups.push_back(g);
    }
  }
  return groups;
}

std::vector<double> critical_points(const std::vector<PowerLogTerm>& terms) {
  const auto merged = merge_terms(terms);
  const auto groups = group_by_power(merged);
  std::vector<double> crit;
  if (groups.empty()) return crit;

  if (groups.size() == 1) {
    const auto& g = groups[0];
    if (g.c1 == 0.0) return crit;  // pure power or constant: monotone
    if (std::fabs(g.power) <= kPowerMergeTol) return crit;  // c0 + c1 log r
    // d/dr r^a (c0 + c1 log r) = r^{a-1} (a c0 + c1 + a c1 log r)
    crit.push_back(std::exp(-(g.power * g.c0 + g.c1) / (g.c1 * g.power)));
    return crit;
  }

  if (groups.size() == 2) {
    const auto& g1 = groups[0];
    const auto& g2 = groups[1];
    if (g1.c1 == 0.0 && g2.c1 == 0.0) {
      // two pure powers; a zero power contributes a constant (no slope)
      const double a1 = g1.power, a2 = g2.power;
      if (std::fabs(a1) <= kPowerMergeTol || std::fabs(a2) <= kPowerMergeTol)
        return crit;
      const double ratio = -(g2.c0 * a2) / (g1.c0 * a1);
      if (ratio > 0.0) crit.push_back(std::pow(ratio, 1.0 / (a1 - a2)));
      return crit;
    }
    // constant + power-with-log: d0 + r^a (e0 + e1 log r)
    const PowerGroup* cst = nullptr;
    const PowerGroup* pw = nullptr;
    if (std::fabs(g1.power) <= kPowerMergeTol && g1.c1 == 0.0) {
      cst = &g1;
      pw = &g2;
    } else if (std::fabs(g2.power) <= kPowerMergeTol && g2.c1 == 0.0) {
      cst = &g2;
      pw = &g1;
    }
    if (cst != nullptr) {
      (void)cst;
      if (pw->c1 == 0.0) return crit;  // constant + pure power: monotone
      crit.push_back(
          std::exp(-(pw->power * pw->c0 + pw->c1) / (pw->c1 * pw->power)));
      return crit;
    }
    throw UnsupportedShapeError(
        "superlevel_set: unsupported two-power shape with log terms");
  }

  throw UnsupportedShapeError(
      "superlevel_set: piece has more than two distinct powers");
}

int limit_sign_at_zero(const std::vector<PowerLogTerm>& terms, double lambda,
                       double* finite_limit) {
  const auto groups = group_by_power(merge_terms(terms));
  if (finite_limit) *finite_limit = -lambda;
  if (groups.empty()) return lambda > 0.0 ? -1 : (lambda < 0.0 ? 1 : 0);
  const auto& g = groups.front();  // smallest power dominates as r -> 0+
  if (g.power < -kPowerMergeTol) {
    // r^a -> +inf; log factor -> -inf flips the k=1 sign
    if (g.c1 != 0.0) return g.c1 > 0.0 ? -1 : 1;
    return g.c0 > 0.0 ? 1 : -1;
  }
  if (std::fabs(g.power) <= kPowerMergeTol) {
    if (g.c1 != 0.0) return g.c1 > 0.0 ? -1 : 1;  // c log r
    const double v = g.c0 - lambda;
    if (finite_limit) *finite_limit = g.c0;
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  }
  // all powers positive: terms vanish, limit is -lambda
  return lambda > 0.0 ? -1 : (lambda < 0.0 ? 1 : 0);
}

int limit_sign_at_inf(const std::vector<PowerLogTerm>& terms, double lambda,
                      double* finite_limit) {
  const auto groups = group_by_power(merge_terms(terms));
  if (finite_limit) *finite_limit = -lambda;
  if (groups.empty()) return lambda > 0.0 ? -1 : (lambda < 0.0 ? 1 : 0);
  const auto& g = groups.back();  // largest power dominates as r -> inf
  if (g.power > kPowerMergeTol) {
    if (g.c1 != 0.0) return g.c1 > 0.0 ? 1 : -1;  // log factor is positive
    return g.c0 > 0.0 ? 1 : -1;
  }
  if (std::fabs(g.power) <= kPowerMergeTol) {
    if (g.c1 != 0.0) return g.c1 > 0.0 ? 1 : -1;
    const double v = g.c0 - lambda;
    if (finite_limit) *finite_limit = g.c0;
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  }
  return lambda > 0.0 ? -1 : (lambda < 0.0 ? 1 : 0);
}

}  // namespace detail

namespace {

// Sign of sum(terms) - lambda at radius r, treating exact 0 as negative
// (the superlevel set is strict).
int sign_at(const std::vector<PowerLogTerm>& terms, double lambda, double r) {
  const double v = eval_terms(terms, r) - lambda;
  return v > 0.0 ? 1 : -1;
}

// Root of sum(terms) - lambda on a segment where it is monotone and changes
// sign. lo may be 0 and hi may be inf; the bracket is finitized first.
double bisect_root(const std::vector<PowerLogTerm>& terms, double lambda,
                   double lo, double hi, int sign_lo, int sign_hi) {
  double a = lo, b = hi;
  if (a == 0.0) {
    a = std::isinf(b) ? 1.0 : std::min(1.0, b / 2.0);
    int guard = 0;
    while (sign_at(terms, lambda, a) != sign_lo && guard++ < 1100) a *= 0.5;
    if (guard >= 1100)
      throw UnsupportedShapeError("superlevel_set: could not finitize bracket at 0");
  }
  if (std::isinf(b)) {
    b = std::max(2.0 * a, 2.0);
    int guard = 0;
    while (sign_at(terms, lambda, b) != sign_hi && guard++ < 1100) b *= 2.0;
    if (guard >= 1100)
      throw UnsupportedShapeError(
          "superlevel_set: could not finitize bracket at inf");
  }
  for (int it = 0; it < 300; ++it) {
    if (b - a <= kRadiusTol * std::max(1.0, std::fabs(b))) break;
    const double mid = (b / a > 4.0) ? std::sqrt(a * b) : 0.5 * (a + b);
    if (sign_at(terms, lambda, mid) == sign_lo)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

void append_interval(std::vector<RadiusInterval>& out, double lo, double hi) {
  if (!(hi > lo)) return;
  if (!out.empty() &&
      lo <= out.back().hi + kRadiusTol * std::max(1.0, std::fabs(lo))) {
    out.back().hi = std::max(out.back().hi, hi);
    return;
  }
  out.push_back({lo, hi});
}

}  // namespace

std::vector<RadiusInterval> superlevel_set(const PiecewisePowerLog& f,
                                           double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("superlevel_set: lambda must be positive and finite");
  std::vector<RadiusInterval> out;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const RadiusInterval iv = f.interval(i);
    const auto terms = detail::merge_terms(f.pieces()[i]);
    if (terms.empty()) continue;
    const auto groups = detail::group_by_power(terms);

    // Closed form: single pure power (or constant).
    if (groups.size() == 1 && groups[0].c1 == 0.0) {
      const double c = groups[0].c0, a = groups[0].power;
      if (std::fabs(a) <= kPowerMergeTol) {
        if (c > lambda) append_interval(out, iv.lo, iv.hi);
        continue;
      }
      if (c <= 0.0) continue;  // c r^a <= 0 < lambda
      const double R = std::pow(lambda / c, 1.0 / a);
      if (a > 0.0)
        append_interval(out, std::max(iv.lo, R), iv.hi);
      else
        append_interval(out, iv.lo, std::min(iv.hi, R));
      continue;
    }

    // General supported shape: split into monotone segments and bisect.
    std::vector<double> pts;
    pts.push_back(iv.lo);
    for (double c : detail::critical_points(terms))
      if (c > iv.lo && c < iv.hi) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    pts.push_back(iv.hi);

    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
      const double x0 = pts[s], x1 = pts[s + 1];
      int s0, s1;
      if (x0 == 0.0) {
        double fin;
        const int code = detail::limit_sign_at_zero(terms, lambda, &fin);
        s0 = (code != 0) ? code : (fin > lambda ? 1 : -1);
      } else {
        s0 = sign_at(terms, lambda, x0);
      }
      if (std::isinf(x1)) {
        double fin;
        const int code = detail::limit_sign_at_inf(terms, lambda, &fin);
        s1 = (code != 0) ? code : (fin > lambda ? 1 : -1);
      } else {
        s1 = sign_at(terms, lambda, x1);
      }

      if (s0 > 0 && s1 > 0) {
        append_interval(out, x0, x1);
      } else if (s0 > 0 && s1 < 0) {
        const double root = bisect_root(terms, lambda, x0, x1, s0, s1);
        append_interval(out, x0, root);
      } else if (s0 < 0 && s1 > 0) {
        const double root = bisect_root(terms, lambda, x0, x1, s0, s1);
        append_interval(out, root, x1);
      }
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// text format
// --------------------------------------------------------------------------

namespace {

struct Cursor {
  std::string s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip_ws();
    const std::size_t len = std::char_traits<char>::length(w);
    if (s.compare(i, len, w) == 0) {
      i += len;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw DomainError("PiecewisePowerLog::parse: " + what + " near '" +
                      s.substr(i, 24) + "'");
  }
  double number() {
    skip_ws();
    const char* start = s.c_str() + i;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) fail("expected a number");
    i += static_cast<std::size_t>(end - start);
    return v;
  }
};

std::vector<PowerLogTerm> parse_terms(Cursor& cur, const std::string& stop_word) {
  std::vector<PowerLogTerm> terms;
  bool first = true;
  while (true) {
    cur.skip_ws();
    if (cur.done()) break;
    if (!stop_word.empty() && cur.s.compare(cur.i, stop_word.size(), stop_word) == 0)
      break;
    double sign = 1.0;
    if (cur.eat('+')) {
      sign = 1.0;
    } else if (cur.eat('-')) {
      sign = -1.0;
    } else if (!first) {
      cur.fail("expected '+' or '-' between terms");
    }
    double coeff = 1.0, power = 0.0;
    int log_order = 0;
    bool saw_factor = false, saw_coeff = false;
    while (true) {
      cur.skip_ws();
      if (cur.eat_word("log(r)")) {
        int k = 1;
        if (cur.eat('^')) k = static_cast<int>(cur.number());
        if (k < 0 || k > 1) cur.fail("log order must be 0 or 1");
        log_order += k;
        if (log_order > 1) cur.fail("log order must be 0 or 1");
        saw_factor = true;
      } else if (cur.peek() == 'r') {
        ++cur.i;
        double p = 1.0;
        if (cur.eat('^')) p = cur.number();
        power += p;
        saw_factor = true;
      } else {
        if (saw_coeff) cur.fail("unexpected factor");
        coeff *= cur.number();
        saw_factor = saw_coeff = true;
      }
      if (!cur.eat('*')) break;
    }
    if (!saw_factor) cur.fail("empty term");
    terms.push_back({sign * coeff, power, log_order});
    first = false;
    cur.skip_ws();
    if (cur.done()) break;
    if (!stop_word.empty() && cur.s.compare(cur.i, stop_word.size(), stop_word) == 0)
      break;
    if (cur.peek() != '+' && cur.peek() != '-')
      cur.fail("expected '+', '-', or end of piece");
  }
  // a literal "0" parses as a zero-coefficient term: drop it
  std::erase_if(terms, [](const PowerLogTerm& t) { return t.coeff == 0.0; });
  return terms;
}

RadiusInterval parse_interval(Cursor& cur) {
  if (!cur.eat('[') && !cur.eat('(')) cur.fail("expected '[' or '('");
  const double lo = cur.number();
  if (!cur.eat(',')) cur.fail("expected ','");
  double hi;
  cur.skip_ws();
  if (cur.eat_word("inf") || cur.eat_word("Inf") || cur.eat_word("INF"))
    hi = kInf;
  else
    hi = cur.number();
  if (!cur.eat(')') && !cur.eat(']')) cur.fail("expected ')' or ']'");
  return {lo, hi};
}

}  // namespace

PiecewisePowerLog PiecewisePowerLog::parse(const std::string& text) {
  // split on newlines and ';'
  std::vector<std::string> statements;
  std::string current;
  for (char c : text) {
    if (c == '\n' || c == ';') {
      statements.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  statements.push_back(current);

  struct Raw {
    RadiusInterval iv;
    std::vector<PowerLogTerm> terms;
  };
  std::vector<Raw> raw;
  for (const auto& stmt : statements) {
    Cursor cur{stmt, 0};
    if (cur.done()) continue;
    Raw r;
    if (cur.eat_word("piece")) {
      r.iv = parse_interval(cur);
      if (!cur.eat(':')) cur.fail("expected ':'");
      r.terms = parse_terms(cur, "");
      if (!cur.done()) cur.fail("trailing input");
    } else {
      r.terms = parse_terms(cur, "on");
      if (!cur.eat_word("on")) cur.fail("expected 'on [lo,hi)'");
      r.iv = parse_interval(cur);
      if (!cur.done()) cur.fail("trailing input");
    }
    if (!(r.iv.hi > r.iv.lo) || !(r.iv.lo >= 0.0))
      throw DomainError("PiecewisePowerLog::parse: bad interval bounds");
    raw.push_back(std::move(r));
  }
  if (raw.empty()) return PiecewisePowerLog();

  std::sort(raw.begin(), raw.end(),
            [](const Raw& a, const Raw& b) { return a.iv.lo < b.iv.lo; });

  std::vector<double> bps;
  std::vector<std::vector<PowerLogTerm>> pieces;
  double cursor = 0.0;
  for (auto& r : raw) {
    if (r.iv.lo < cursor - 1e-12 * std::max(1.0, cursor))
      throw DomainError("PiecewisePowerLog::parse: overlapping pieces");
    if (r.iv.lo > cursor + 1e-12 * std::max(1.0, r.iv.lo)) {
      bps.push_back(r.iv.lo);  // implicit zero gap
      pieces.push_back({});
    }
    bps.push_back(r.iv.hi);
    pieces.push_back(std::move(r.terms));
    cursor = r.iv.hi;
  }
  return PiecewisePowerLog(std::move(bps), std::move(pieces));
}

std::string PiecewisePowerLog::format() const {
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const RadiusInterval iv = interval(i);
    char head[64];
    if (std::isinf(iv.hi))
      std::snprintf(head, sizeof head, "piece [%.17g,inf): ", iv.lo);
    else
      std::snprintf(head, sizeof head, "piece [%.17g,%.17g): ", iv.lo, iv.hi);
    out += head;
    if (pieces_[i].empty()) {
      out += "0";
    } else {
      for (std::size_t j = 0; j < pieces_[i].size(); ++j) {
        PowerLogTerm t = pieces_[i][j];
        if (j == 0) {
          out += term_str(t);
        } else if (t.coeff < 0.0) {
          t.coeff = -t.coeff;
          out += " - " + term_str(t);
        } else {
          out += " + " + term_str(t);
        }
      }
    }
    if (i + 1 < pieces_.size()) out += "\n";
  }
  return out;
}

}  // namespace hlplab
