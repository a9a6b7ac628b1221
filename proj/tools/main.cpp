// hlplab — command-line laboratory for sharp weak-type operator norms.
//
// Subcommands: constants, verify {thm21|thm22|thm31}, apply, weak-norm,
// probe. Exit codes: 0 all checks pass, 1 any verification failed,
// 2 usage or domain error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hlplab/constants.hpp"
#include "hlplab/errors.hpp"
#include "hlplab/extremals.hpp"
#include "hlplab/norms.hpp"
#include "hlplab/operators.hpp"
#include "hlplab/quad.hpp"
#include "hlplab/radialfn.hpp"
#include "hlplab/rng.hpp"
#include "hlplab/spaces.hpp"

namespace {

using nlohmann::json;
using namespace hlplab;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

enum class OutFmt { Human, Json, Csv };

struct Global {
  bool want_json = false;
  bool want_csv = false;
  bool want_human = false;
  bool no_timestamp = false;
  double rel_tol = 1e-10;
  bool rel_tol_set = false;
  std::uint64_t mc_seed = 0;

  OutFmt fmt() const {
    if (want_json) return OutFmt::Json;
    if (want_csv) return OutFmt::Csv;
    return OutFmt::Human;
  }
  QuadratureConfig quad(double fallback_tol = 0.0) const {
    QuadratureConfig cfg;
    cfg.rel_tol = (!rel_tol_set && fallback_tol > 0.0) ? fallback_tol : rel_tol;
    cfg.mc_seed = mc_seed;
    return cfg;
  }
};

std::string now_iso8601() {
  const std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// JSON cannot carry inf/nan as numbers; encode them as strings.
json finite_or_string(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

// ---------------------------------------------------------------------------
// verification reports
// ---------------------------------------------------------------------------

struct Report {
  std::string case_id;
  std::string provenance;
  double computed = kNan;
  double reference = kNan;
  double rel_error = kNan;
  double tolerance = 0.0;
  bool pass = false;
  long long runtime_ms = 0;
};

// Runs one verification case; fn returns {computed, reference}. Exceptions
// are recorded as failures, never propagated (a broken case must not take
// down the rest of the batch).
template <class Fn>
void run_case(std::vector<Report>& out, const std::string& id,
              const std::string& provenance, double tol, Fn&& fn) {
  Report rep;
  rep.case_id = id;
  rep.provenance = provenance;
  rep.tolerance = tol;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto [computed, reference] = fn();
    rep.computed = computed;
    rep.reference = reference;
    const double denom =
        std::fabs(reference) > 0.0 ? std::fabs(reference) : 1.0;
    rep.rel_error = std::fabs(computed - reference) / denom;
    rep.pass = std::isfinite(rep.rel_error) && rep.rel_error <= tol;
  } catch (const ConvergenceError& err) {
    rep.pass = false;
    rep.provenance += std::string(" [converged=false: ") + err.what() + "]";
  } catch (const std::exception& err) {
    rep.pass = false;
    rep.provenance += std::string(" [error: ") + err.what() + "]";
  }
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  out.push_back(std::move(rep));
}

int emit_reports(const Global& g, const std::string& command,
                 const json& parameters, const std::vector<Report>& reports) {
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;

  switch (g.fmt()) {
    case OutFmt::Json: {
      json doc;
      doc["command"] = command;
      doc["parameters"] = parameters;
      if (!g.no_timestamp) doc["generated_at"] = now_iso8601();
      json arr = json::array();
      for (const auto& r : reports) {
        json jr;
        jr["case"] = r.case_id;
        jr["computed"] = finite_or_string(r.computed);
        jr["reference"] = finite_or_string(r.reference);
        jr["reference_provenance"] = r.provenance;
        jr["rel_error"] = finite_or_string(r.rel_error);
        jr["tolerance"] = r.tolerance;
        jr["pass"] = r.pass;
        jr["runtime_ms"] = g.no_timestamp ? 0 : r.runtime_ms;
        arr.push_back(std::move(jr));
      }
      doc["reports"] = std::move(arr);
      doc["all_pass"] = all_pass;
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case OutFmt::Csv: {
      std::cout << "case,computed,reference,rel_error,tolerance,pass,"
                   "runtime_ms,reference_provenance\n";
      for (const auto& r : reports) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,", r.computed,
                      r.reference, r.rel_error, r.tolerance);
        std::cout << csv_quote(r.case_id) << "," << buf
                  << (r.pass ? "true" : "false") << ","
                  << (g.no_timestamp ? 0 : r.runtime_ms) << ","
                  << csv_quote(r.provenance) << "\n";
      }
      break;
    }
    case OutFmt::Human: {
      std::cout << command << "\n";
      std::cout << "parameters: " << parameters.dump() << "\n\n";
      for (const auto& r : reports) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "[%s] %-28s computed=%-16.9g reference=%-16.9g "
                      "rel=%-10.3g tol=%g",
                      r.pass ? "PASS" : "FAIL", r.case_id.c_str(), r.computed,
                      r.reference, r.rel_error, r.tolerance);
        std::cout << buf << "\n";
        std::cout << "       " << r.provenance << "\n";
      }
      std::cout << "\n"
                << (all_pass ? "all cases pass" : "SOME CASES FAILED") << "\n";
      break;
    }
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// shared plumbing
// ---------------------------------------------------------------------------

PiecewisePowerLog parse_function_arg(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw DomainError("cannot open function file " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return PiecewisePowerLog::parse(ss.str());
  }
  return PiecewisePowerLog::parse(text);
}

KernelForm kernel_form_from_name(const std::string& name) {
  if (name == "hlpmax") return KernelForm::HlpMax;
  if (name == "hilbert") return KernelForm::HilbertSum;
  if (name == "hardy") return KernelForm::HardyIndicator;
  throw DomainError("unknown kernel '" + name +
                    "' (expected hlpmax, hilbert, or hardy)");
}

std::vector<double> log_radii(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, double(i) / (count - 1));
  return out;
}

json sharp_constant_json(const SharpConstant& c) {
  return json::parse(c.to_json());
}

json hypothesis_json(const HypothesisReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc;
    jc["name"] = c.name;
    jc["relation"] = c.relation;
    jc["lhs"] = finite_or_string(c.lhs);
    jc["rhs"] = finite_or_string(c.rhs);
    jc["pass"] = c.pass;
    checks.push_back(std::move(jc));
  }
  return json{{"overall", rep.overall}, {"checks", std::move(checks)}};
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

struct ConstantsOpts {
  double p = 3.0, q = 2.0, beta = 0.5, gamma = 0.0;
  int n = 1;
  std::string kernel = "hlpmax";
};

int run_constants(const Global& g, const ConstantsOpts& o) {
  json params{{"p", o.p},         {"q", o.q}, {"beta", o.beta},
              {"gamma", o.gamma}, {"n", o.n}, {"kernel", o.kernel},
              {"rel_tol", g.rel_tol}};

  std::vector<std::pair<std::string, json>> entries;
  auto add = [&](const std::string& name, auto&& make) {
    try {
      entries.emplace_back(name, sharp_constant_json(make()));
    } catch (const std::exception& err) {
      entries.emplace_back(name, json{{"error", err.what()}});
    }
  };

  std::optional<Thm21Constants> tc;
  try {
    tc = thm21_constant(o.p, o.q, o.beta, o.gamma, o.n);
  } catch (const std::exception& err) {
    entries.emplace_back("thm21_statement", json{{"error", err.what()}});
    entries.emplace_back("thm21_proof", json{{"error", err.what()}});
  }
  if (tc) {
    entries.emplace_back("thm21_statement",
                         sharp_constant_json(tc->statement));
    entries.emplace_back("thm21_proof",
                         sharp_constant_json(tc->proof_variant));
  }
  add("thm22", [&] { return thm22_constant(o.gamma, o.n); });
  add("m1", [&] {
    return m_branch_constant(FormulaId::M1, o.p, o.q, o.beta, o.gamma, o.n);
  });
  add("m2", [&] {
    return m_branch_constant(FormulaId::M2, o.p, o.q, o.beta, o.gamma, o.n);
  });
  add("m3", [&] { return m3_constant(o.gamma, o.n); });
  add("thm31_bound_m1", [&] {
    RadialKernel K;
    K.form = kernel_form_from_name(o.kernel);
    K.arity = 1;
    K.n = o.n;
    return thm31_bound(K, {o.beta}, {o.p}, o.q, o.gamma, o.n, 1, g.quad());
  });

  const HypothesisReport hyp =
      check_thm21_hypotheses(o.p, o.q, o.beta, o.gamma, o.n);

  switch (g.fmt()) {
    case OutFmt::Json: {
      json doc;
      doc["command"] = "constants";
      doc["parameters"] = params;
      if (!g.no_timestamp) doc["generated_at"] = now_iso8601();
      json consts;
      for (auto& [name, value] : entries) consts[name] = std::move(value);
      doc["constants"] = std::move(consts);
      if (tc)
        doc["thm21_discrepancy"] = json{
            {"flagged", tc->discrepancy_flagged},
            {"rel_difference", tc->rel_difference}};
      doc["hypotheses"] = json{{"thm21", hypothesis_json(hyp)}};
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case OutFmt::Csv: {
      std::cout << "name,value,error_estimate,formula_id\n";
      for (const auto& [name, value] : entries) {
        if (value.contains("error")) {
          std::cout << name << ",nan,nan,"
                    << csv_quote(value["error"].get<std::string>()) << "\n";
          continue;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g",
                      value["value"].get<double>(),
                      value["error_estimate"].get<double>());
        std::cout << name << "," << buf << ","
                  << value["formula_id"].get<std::string>() << "\n";
      }
      break;
    }
    case OutFmt::Human: {
      std::cout << "constants for " << params.dump() << "\n\n";
      for (const auto& [name, value] : entries) {
        if (value.contains("error")) {
          std::cout << "  " << name << ": unavailable ("
                    << value["error"].get<std::string>() << ")\n";
          continue;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", value["value"].get<double>());
        std::cout << "  " << name << " = " << buf << "   ["
                  << value["formula_id"].get<std::string>() << "]";
        if (value["error_estimate"].get<double>() > 0.0) {
          std::snprintf(buf, sizeof buf, "%.3g",
                        value["error_estimate"].get<double>());
          std::cout << "  (err est " << buf << ")";
        }
        std::cout << "\n";
        for (const auto& [cname, cval] : value["components"].items())
          std::cout << "      " << cname << " = " << cval.dump() << "\n";
      }
      if (tc) {
        std::cout << "\n  thm21 statement/proof discrepancy: "
                  << (tc->discrepancy_flagged ? "FLAGGED" : "none")
                  << " (rel difference " << tc->rel_difference << ")\n";
      }
      std::cout << "  thm21 hypotheses: "
                << (hyp.overall ? "all pass" : "VIOLATED") << "\n";
      for (const auto& c : hyp.checks)
        if (!c.pass)
          std::cout << "      violated: " << c.name << "  (" << c.relation
                    << ", lhs=" << c.lhs << ", rhs=" << c.rhs << ")\n";
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify thm21 / thm22 / thm31
// ---------------------------------------------------------------------------

struct Thm21Opts {
  double p = 3.0, q = 2.0, beta = 0.5, gamma = 0.0;
  int n = 1;
  int radii = 200;
};

int run_verify_thm21(const Global& g, const Thm21Opts& o) {
  json params{{"p", o.p},         {"q", o.q}, {"beta", o.beta},
              {"gamma", o.gamma}, {"n", o.n}, {"radii", o.radii},
              {"rel_tol", g.rel_tol}};

  const Thm21Constants tc = thm21_constant(o.p, o.q, o.beta, o.gamma, o.n);
  const double C = hlp_constant_C(o.p, o.beta, o.n);
  const ConjugateExponent pe(o.p);
  const SpaceParams sp{o.p, o.q, o.beta, o.gamma, o.n};
  const ExtremalFamily fam{ExtremalId::Thm21, {}};
  const PiecewisePowerLog f0 = make_extremal(fam, sp);
  const PiecewisePowerLog image = apply_hlp_symbolic(f0, o.n);
  const PiecewisePowerLog printed = closed_form_image(fam, sp);
  const std::vector<double> rs = log_radii(1e-3, 1e3, o.radii);

  std::vector<Report> reports;

  run_case(reports, "hypotheses",
           "conjunction of the theorem's hypothesis checks", 0.0, [&] {
             return std::pair{tc.hypotheses.overall ? 1.0 : 0.0, 1.0};
           });

  run_case(reports, "strong_norm_f0",
           "extremal norm claimed in the source derivation: C_{p,n,beta}^{1/p}",
           1e-6, [&] {
             return std::pair{strong_norm(f0, o.p, o.beta, o.n),
                              std::pow(C, 1.0 / o.p)};
           });

  run_case(reports, "weak_norm_Hf0",
           "M1: (omega_n/(n+gamma))^{1/q} * C_{p,n,beta}", 1e-6, [&] {
             const SharpConstant m1 = m_branch_constant(
                 FormulaId::M1, o.p, o.q, o.beta, o.gamma, o.n);
             return std::pair{weak_norm(image, o.q, o.gamma, o.n), m1.value};
           });

  run_case(reports, "ratio_vs_proof_variant",
           "Thm21Proof: (omega_n/(n+gamma))^{1/q} * C^{1/p'}", 1e-6, [&] {
             const double ratio = weak_norm(image, o.q, o.gamma, o.n) /
                                  strong_norm(f0, o.p, o.beta, o.n);
             return std::pair{ratio, tc.proof_variant.value};
           });

  run_case(reports, "ratio_vs_statement_variant",
           "Thm21Statement: (omega_n/(n+beta))^{1/q} * C^{1/p'}", 1e-6, [&] {
             const double ratio = weak_norm(image, o.q, o.gamma, o.n) /
                                  strong_norm(f0, o.p, o.beta, o.n);
             return std::pair{ratio, tc.statement.value};
           });

  run_case(reports, "discrepancy_flag",
           "flag must fire exactly when the two prefactors differ "
           "(beta != gamma)",
           0.0, [&] {
             const double expected =
                 std::fabs(o.beta - o.gamma) > 1e-12 ? 1.0 : 0.0;
             return std::pair{tc.discrepancy_flagged ? 1.0 : 0.0, expected};
           });

  run_case(reports, "symbolic_vs_numeric_image",
           "max relative gap between the exact piecewise image and "
           "quadrature evaluation",
           1e-10, [&] {
             double worst = 0.0;
             for (double r : rs) {
               const double a = evaluate(image, r);
               const double b = apply_hlp(f0, o.n, r);
               worst = std::max(worst, std::fabs(a - b) /
                                           std::max(std::fabs(b), 1e-300));
             }
             return std::pair{worst, 0.0};
           });

  run_case(reports, "image_vs_printed_form",
           "max relative gap between the derived image and the printed "
           "closed form",
           1e-8, [&] {
             double worst = 0.0;
             for (double r : rs) {
               const double a = evaluate(image, r);
               const double b = evaluate(printed, r);
               worst = std::max(worst, std::fabs(a - b) /
                                           std::max(std::fabs(b), 1e-300));
             }
             return std::pair{worst, 0.0};
           });

  return emit_reports(g, "verify thm21", params, reports);
}

struct Thm22Opts {
  double gamma = 0.0;
  int n = 1;
  int radii = 200;
};

int run_verify_thm22(const Global& g, const Thm22Opts& o) {
  const double q = (o.n + o.gamma) / o.n;
  json params{{"gamma", o.gamma},
              {"n", o.n},
              {"q", q},
              {"radii", o.radii},
              {"rel_tol", g.rel_tol}};

  const double wn = unit_sphere_area(o.n);
  const SharpConstant cstar = thm22_constant(o.gamma, o.n);
  const SpaceParams sp{1.0, q, 0.0, o.gamma, o.n};
  const ExtremalFamily fam{ExtremalId::Thm22, {}};
  const PiecewisePowerLog f0 = make_extremal(fam, sp);
  const PiecewisePowerLog image = apply_hlp_symbolic(f0, o.n);
  const PiecewisePowerLog printed = closed_form_image(fam, sp);
  const std::vector<double> rs = log_radii(1e-3, 1e3, o.radii);

  std::vector<Report> reports;

  run_case(reports, "strong_norm_f0", "closed form omega_n/(2n)", 1e-8, [&] {
    return std::pair{strong_norm(f0, 1.0, 0.0, o.n), wn / (2.0 * o.n)};
  });

  run_case(reports, "weak_norm_Hf0",
           "Thm22 constant times the extremal's strong norm", 1e-8, [&] {
             return std::pair{weak_norm(image, q, o.gamma, o.n),
                              cstar.value * wn / (2.0 * o.n)};
           });

  run_case(reports, "ratio_attains_constant",
           "Thm22: (omega_n/(n+gamma))^{n/(n+gamma)}", 1e-8, [&] {
             const double ratio = weak_norm(image, q, o.gamma, o.n) /
                                  strong_norm(f0, 1.0, 0.0, o.n);
             return std::pair{ratio, cstar.value};
           });

  run_case(reports, "symbolic_vs_numeric_image",
           "max relative gap between the exact piecewise image and "
           "quadrature evaluation",
           1e-10, [&] {
             double worst = 0.0;
             for (double r : rs) {
               const double a = evaluate(image, r);
               const double b = apply_hlp(f0, o.n, r);
               worst = std::max(worst, std::fabs(a - b) /
                                           std::max(std::fabs(b), 1e-300));
             }
             return std::pair{worst, 0.0};
           });

  run_case(reports, "image_vs_printed_form",
           "max relative gap between the derived image and the printed "
           "closed form",
           1e-8, [&] {
             double worst = 0.0;
             for (double r : rs) {
               const double a = evaluate(image, r);
               const double b = evaluate(printed, r);
               worst = std::max(worst, std::fabs(a - b) /
                                           std::max(std::fabs(b), 1e-300));
             }
             return std::pair{worst, 0.0};
           });

  return emit_reports(g, "verify thm22", params, reports);
}

struct Thm31Opts {
  std::string kernel = "hilbert";
  int m = 2;
  int n = 1;
  std::vector<double> p{3.0, 3.0};
  std::vector<double> beta{0.5, 0.5};
  double gamma = 0.0;
  double q = 0.0;  // 0 = derive from the balance condition
  int samples = 3;
};

int run_verify_thm31(const Global& g, const Thm31Opts& o) {
  if (static_cast<int>(o.p.size()) != o.m ||
      static_cast<int>(o.beta.size()) != o.m)
    throw DomainError("verify thm31: --p and --beta need one entry per slot");

  double q = o.q;
  if (q <= 0.0) {
    double s = 0.0;
    for (int i = 0; i < o.m; ++i)
      s += (o.beta[static_cast<std::size_t>(i)] + o.n) /
           o.p[static_cast<std::size_t>(i)];
    q = (o.gamma + o.n) / s;
  }

  json params{{"kernel", o.kernel}, {"m", o.m},
              {"n", o.n},           {"p", o.p},
              {"beta", o.beta},     {"gamma", o.gamma},
              {"q", q},             {"samples", o.samples},
              {"mc_seed", g.mc_seed}};
  const QuadratureConfig cfg = g.quad(o.m > 1 ? 1e-6 : 0.0);
  params["rel_tol"] = cfg.rel_tol;

  RadialKernel K;
  K.form = kernel_form_from_name(o.kernel);
  K.arity = o.m;
  K.n = o.n;

  std::vector<Report> reports;

  const HypothesisReport hyp =
      check_thm31_hypotheses(o.p, o.beta, q, o.gamma, o.n, o.m);
  run_case(reports, "hypotheses",
           "conjunction of the multilinear bound's hypothesis checks", 0.0,
           [&] { return std::pair{hyp.overall ? 1.0 : 0.0, 1.0}; });

  std::optional<SharpConstant> bound;
  run_case(reports, "bound_computed",
           "Thm31Bound: (omega_n/(n+gamma))^{1/q} * M (nested quadrature "
           "error estimate as tolerance witness)",
           1e-6, [&] {
             bound = thm31_bound(K, o.beta, o.p, q, o.gamma, o.n, o.m, cfg);
             const double rel =
                 bound->error_estimate / std::max(bound->value, 1e-300);
             return std::pair{rel, 0.0};
           });

  if (o.m == 1 && K.form == KernelForm::HlpMax) {
    run_case(reports, "kernel_constant_vs_closed_form",
             "MGeneric must reproduce C_{p,n,beta}^{1/p'} for the max "
             "kernel at m=1",
             1e-8, [&] {
               const SharpConstant M =
                   kernel_constant_M(K, o.beta, o.p, o.n, o.m, cfg);
               const ConjugateExponent pe(o.p[0]);
               const double C = hlp_constant_C(o.p[0], o.beta[0], o.n);
               return std::pair{M.value, std::pow(C, 1.0 / pe.p_prime)};
             });
  }

  run_case(reports, "bound_property_excess",
           "max over sampled inputs of (weak_norm / (bound * prod strong) "
           "- 1), clamped at 0",
           1e-5, [&] {
             if (!bound)
               throw DomainError("upper bound unavailable; see bound_computed");
             double worst = 0.0;
             for (int i = 0; i < o.samples; ++i) {
               CounterRng rng(g.mc_seed, 9000 + static_cast<std::uint64_t>(i));
               std::vector<PiecewisePowerLog> fs;
               double strong_product = 1.0;
               for (int j = 0; j < o.m; ++j) {
                 const auto ju = static_cast<std::size_t>(j);
                 const double lo = -0.9 * (o.beta[ju] + o.n) / o.p[ju];
                 const double a = lo + rng.next_u01() * (1.0 - lo);
                 fs.emplace_back(std::vector<double>{1.0},
                                 std::vector<std::vector<PowerLogTerm>>{
                                     {{1.0, a, 0}}});
                 strong_product *=
                     strong_norm(fs.back(), o.p[ju], o.beta[ju], o.n);
               }
               double weak;
               if (o.m == 1 && K.form == KernelForm::HlpMax) {
                 weak = weak_norm(apply_hlp_symbolic(fs[0], o.n), q, o.gamma,
                                  o.n);
               } else {
                 const auto shape = K.form == KernelForm::HardyIndicator
                                        ? ShapeHint::Unimodal
                                        : ShapeHint::Decreasing;
                 weak = weak_norm_numeric(
                     [&](double r) {
                       return apply_kernel_operator(K, fs, r, cfg);
                     },
                     q, o.gamma, o.n, shape, 1e-6, 1e6);
               }
               worst = std::max(worst,
                                weak / (bound->value * strong_product) - 1.0);
             }
             return std::pair{std::max(worst, 0.0), 0.0};
           });

  return emit_reports(g, "verify thm31", params, reports);
}

// ---------------------------------------------------------------------------
// apply
// ---------------------------------------------------------------------------

struct ApplyOpts {
  std::vector<std::string> fs;
  std::string kernel = "hlp";
  std::string hardy_radius = "euclidean";
  int n = 1;
  std::vector<double> rs;
};

int run_apply(const Global& g, const ApplyOpts& o) {
  if (o.fs.empty()) throw DomainError("apply: need at least one --f");
  if (o.rs.empty()) throw DomainError("apply: need at least one --r");

  std::vector<PiecewisePowerLog> fs;
  for (const auto& text : o.fs) fs.push_back(parse_function_arg(text));

  json params{{"kernel", o.kernel},   {"n", o.n},
              {"f", o.fs},            {"rel_tol", g.rel_tol},
              {"mc_seed", g.mc_seed}};

  struct Row {
    double r;
    double value;
    std::optional<double> symbolic;
  };
  std::vector<Row> rows;

  if (o.kernel == "hlp") {
    if (fs.size() != 1)
      throw DomainError("apply: the scalar operator takes exactly one --f");
    std::optional<PiecewisePowerLog> symbolic;
    std::string symbolic_note;
    try {
      symbolic = apply_hlp_symbolic(fs[0], o.n);
    } catch (const std::exception& err) {
      symbolic_note = err.what();
    }
    for (double r : o.rs) {
      Row row{r, apply_hlp(fs[0], o.n, r), std::nullopt};
      if (symbolic) row.symbolic = evaluate(*symbolic, r);
      rows.push_back(row);
    }
    if (!symbolic_note.empty()) params["symbolic_note"] = symbolic_note;
  } else {
    RadialKernel K;
    K.form = kernel_form_from_name(o.kernel);
    K.arity = static_cast<int>(fs.size());
    K.n = o.n;
    K.hardy_radius = o.hardy_radius == "maxblocks" ? HardyRadius::MaxBlocks
                                                   : HardyRadius::Euclidean;
    const QuadratureConfig cfg = g.quad();
    for (double r : o.rs)
      rows.push_back({r, apply_kernel_operator(K, fs, r, cfg), std::nullopt});
  }

  switch (g.fmt()) {
    case OutFmt::Json: {
      json doc;
      doc["command"] = "apply";
      doc["parameters"] = params;
      if (!g.no_timestamp) doc["generated_at"] = now_iso8601();
      json arr = json::array();
      for (const auto& row : rows) {
        json jr{{"r", row.r}, {"value", finite_or_string(row.value)}};
        if (row.symbolic) jr["symbolic"] = finite_or_string(*row.symbolic);
        arr.push_back(std::move(jr));
      }
      doc["results"] = std::move(arr);
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case OutFmt::Csv: {
      std::cout << "r,value,symbolic\n";
      for (const auto& row : rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", row.r, row.value);
        std::cout << buf;
        if (row.symbolic) {
          std::snprintf(buf, sizeof buf, ",%.17g", *row.symbolic);
          std::cout << buf;
        } else {
          std::cout << ",";
        }
        std::cout << "\n";
      }
      break;
    }
    case OutFmt::Human: {
      for (const auto& row : rows) {
        char buf[128];
        if (row.symbolic)
          std::snprintf(buf, sizeof buf,
                        "r=%-12.6g value=%-18.12g symbolic=%-18.12g", row.r,
                        row.value, *row.symbolic);
        else
          std::snprintf(buf, sizeof buf, "r=%-12.6g value=%-18.12g", row.r,
                        row.value);
        std::cout << buf << "\n";
      }
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// weak-norm
// ---------------------------------------------------------------------------

struct WeakNormOpts {
  std::string f;
  double q = 1.0, gamma = 0.0;
  int n = 1;
};

int run_weak_norm(const Global& g, const WeakNormOpts& o) {
  const PiecewisePowerLog fn = parse_function_arg(o.f);
  DistributionCurve curve;
  const double norm = weak_norm(fn, o.q, o.gamma, o.n, &curve);
  const char* exact =
      curve.exactness == Exactness::ClosedForm ? "closed_form" : "numeric";

  json params{{"f", o.f}, {"q", o.q}, {"gamma", o.gamma}, {"n", o.n}};

  switch (g.fmt()) {
    case OutFmt::Json: {
      json doc;
      doc["command"] = "weak-norm";
      doc["parameters"] = params;
      if (!g.no_timestamp) doc["generated_at"] = now_iso8601();
      doc["weak_norm"] = finite_or_string(norm);
      doc["exactness"] = exact;
      json arr = json::array();
      for (const auto& s : curve.samples)
        arr.push_back(json{{"lambda", finite_or_string(s.lambda)},
                           {"measure", finite_or_string(s.measure)}});
      doc["curve"] = std::move(arr);
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case OutFmt::Csv: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g", norm);
      std::cout << "# weak_norm = " << buf << "\n" << curve.to_csv();
      break;
    }
    case OutFmt::Human: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.12g", norm);
      std::cout << "weak norm = " << buf << "  (" << exact << ", "
                << curve.samples.size() << " distribution samples)\n";
      break;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// probe
// ---------------------------------------------------------------------------

struct ProbeOpts {
  std::string family = "powercutoff";
  std::optional<double> a;
  double p = 1.0, q = 1.0, beta = 0.0, gamma = 0.0;
  int n = 1;
  double bound = 0.0;  // 0 = derive from the matching constant
  ProbeSearchConfig search;
};

int run_probe(const Global& g, const ProbeOpts& o) {
  ExtremalFamily fam;
  if (o.family == "thm21") fam.id = ExtremalId::Thm21;
  else if (o.family == "thm22") fam.id = ExtremalId::Thm22;
  else if (o.family == "powercutoff") fam.id = ExtremalId::PowerCutoff;
  else
    throw DomainError("unknown family '" + o.family +
                      "' (expected thm21, thm22, or powercutoff)");
  if (o.a) fam.params["a"] = *o.a;

  double bound = o.bound;
  std::string bound_source = "user";
  if (bound <= 0.0) {
    if (o.p > 1.0) {
      bound = thm21_constant(o.p, o.q, o.beta, o.gamma, o.n)
                  .proof_variant.value;
      bound_source = "Thm21Proof";
    } else {
      bound = thm22_constant(o.gamma, o.n).value;
      bound_source = "Thm22";
    }
  }

  const SpaceParams sp{o.p, o.q, o.beta, o.gamma, o.n};
  const ProbeResult result = sharpness_probe(fam, sp, bound, o.search);

  switch (g.fmt()) {
    case OutFmt::Json: {
      json doc = json::parse(result.to_json());
      doc["command"] = "probe";
      doc["family"] = o.family;
      doc["bound_source"] = bound_source;
      if (!g.no_timestamp) doc["generated_at"] = now_iso8601();
      std::cout << doc.dump(2) << "\n";
      break;
    }
    case OutFmt::Csv: {
      std::cout << "field,value\n";
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g", result.best_ratio);
      std::cout << "best_ratio," << buf << "\n";
      std::snprintf(buf, sizeof buf, "%.17g", result.bound);
      std::cout << "bound," << buf << "\n";
      std::snprintf(buf, sizeof buf, "%.17g", result.gap);
      std::cout << "gap," << buf << "\n";
      std::cout << "evaluations," << result.evaluations << "\n";
      for (const auto& [key, v] : result.best_params) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        std::cout << "param_" << key << "," << buf << "\n";
      }
      break;
    }
    case OutFmt::Human: {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "best ratio %.12g vs bound %.12g (gap %.3g, %lld "
                    "evaluations, source %s)",
                    result.best_ratio, result.bound, result.gap,
                    result.evaluations, bound_source.c_str());
      std::cout << buf << "\n";
      for (const auto& [key, v] : result.best_params) {
        std::snprintf(buf, sizeof buf, "  %s = %.12g", key.c_str(), v);
        std::cout << buf << "\n";
      }
      break;
    }
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  Global g;
  CLI::App app{"hlplab — numerical laboratory for sharp weak-type norms of "
               "Hardy-Littlewood-Polya-type operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value configuration file");
  app.add_flag("--json", g.want_json, "machine-readable JSON output");
  app.add_flag("--csv", g.want_csv, "CSV output");
  app.add_flag("--human", g.want_human, "human-readable output (default)");
  auto* rel_tol_opt = app.add_option(
      "--rel-tol", g.rel_tol, "relative tolerance for adaptive quadrature");
  app.add_option("--mc-seed", g.mc_seed, "seed for Monte Carlo estimates");
  app.add_flag("--no-timestamp", g.no_timestamp,
               "omit timestamps and zero runtime fields (for byte-stable "
               "output)");

  ConstantsOpts co;
  auto* c_cmd = app.add_subcommand(
      "constants", "print every closed-form constant with its components");
  c_cmd->fallthrough();
  c_cmd->add_option("--p", co.p, "source exponent p");
  c_cmd->add_option("--q", co.q, "target exponent q");
  c_cmd->add_option("--beta", co.beta, "source weight exponent");
  c_cmd->add_option("--gamma", co.gamma, "target weight exponent");
  c_cmd->add_option("--n", co.n, "ambient dimension");
  c_cmd->add_option("--kernel", co.kernel,
                    "kernel for the m=1 bound (hlpmax|hilbert|hardy)");

  auto* v_cmd = app.add_subcommand("verify", "run a verification pipeline");
  v_cmd->fallthrough();
  v_cmd->require_subcommand(1);

  Thm21Opts v21;
  auto* v21_cmd = v_cmd->add_subcommand(
      "thm21", "two-exponent weak bound: extremal pipeline vs constants");
  v21_cmd->fallthrough();
  v21_cmd->add_option("--p", v21.p, "source exponent p");
  v21_cmd->add_option("--q", v21.q, "target exponent q");
  v21_cmd->add_option("--beta", v21.beta, "source weight exponent");
  v21_cmd->add_option("--gamma", v21.gamma, "target weight exponent");
  v21_cmd->add_option("--n", v21.n, "ambient dimension");
  v21_cmd->add_option("--radii", v21.radii, "image cross-check radii count");

  Thm22Opts v22;
  auto* v22_cmd = v_cmd->add_subcommand(
      "thm22", "L^1 endpoint bound: extremal pipeline vs constant");
  v22_cmd->fallthrough();
  v22_cmd->add_option("--gamma", v22.gamma, "target weight exponent");
  v22_cmd->add_option("--n", v22.n, "ambient dimension");
  v22_cmd->add_option("--radii", v22.radii, "image cross-check radii count");

  Thm31Opts v31;
  auto* v31_cmd = v_cmd->add_subcommand(
      "thm31", "multilinear kernel bound: upper-bound property on samples");
  v31_cmd->fallthrough();
  v31_cmd->add_option("--kernel", v31.kernel, "hlpmax|hilbert|hardy");
  v31_cmd->add_option("--m", v31.m, "number of input slots");
  v31_cmd->add_option("--n", v31.n, "ambient dimension");
  v31_cmd->add_option("--p", v31.p, "per-slot exponents (comma separated)")
      ->delimiter(',');
  v31_cmd->add_option("--beta", v31.beta, "per-slot weights (comma separated)")
      ->delimiter(',');
  v31_cmd->add_option("--gamma", v31.gamma, "target weight exponent");
  v31_cmd->add_option("--q", v31.q,
                      "target exponent (0 = derive from the balance "
                      "condition)");
  v31_cmd->add_option("--samples", v31.samples, "sampled inputs per run");

  ApplyOpts ao;
  auto* a_cmd = app.add_subcommand(
      "apply", "evaluate an operator image at given radii");
  a_cmd->fallthrough();
  a_cmd->add_option("--f", ao.fs,
                    "input function (text format or @file); repeat for "
                    "multilinear kernels")
      ->required();
  a_cmd->add_option("--kernel", ao.kernel, "hlp|hlpmax|hilbert|hardy");
  a_cmd->add_option("--hardy-radius", ao.hardy_radius,
                    "euclidean|maxblocks (hardy kernel only)");
  a_cmd->add_option("--n", ao.n, "ambient dimension");
  a_cmd->add_option("--r", ao.rs, "radii (comma separated)")
      ->required()
      ->delimiter(',');

  WeakNormOpts wo;
  auto* w_cmd = app.add_subcommand(
      "weak-norm", "weak norm of a piecewise power-log function");
  w_cmd->fallthrough();
  w_cmd->add_option("--f", wo.f, "function (text format or @file)")
      ->required();
  w_cmd->add_option("--q", wo.q, "target exponent q");
  w_cmd->add_option("--gamma", wo.gamma, "target weight exponent");
  w_cmd->add_option("--n", wo.n, "ambient dimension");

  ProbeOpts po;
  auto* p_cmd = app.add_subcommand(
      "probe", "maximize the weak/strong norm ratio over an extremal family");
  p_cmd->fallthrough();
  p_cmd->add_option("--family", po.family, "thm21|thm22|powercutoff");
  double probe_a = 0.0;
  auto* a_opt = p_cmd->add_option(
      "--a", probe_a, "fix the PowerCutoff exponent (omit to search)");
  p_cmd->add_option("--p", po.p, "source exponent p");
  p_cmd->add_option("--q", po.q, "target exponent q");
  p_cmd->add_option("--beta", po.beta, "source weight exponent");
  p_cmd->add_option("--gamma", po.gamma, "target weight exponent");
  p_cmd->add_option("--n", po.n, "ambient dimension");
  p_cmd->add_option("--bound", po.bound,
                    "claimed sharp constant (0 = derive from the matching "
                    "theorem constant)");
  p_cmd->add_option("--a-lo", po.search.param_lo, "search window lower edge");
  p_cmd->add_option("--a-hi", po.search.param_hi, "search window upper edge");
  p_cmd->add_option("--a-tol", po.search.param_tol,
                    "golden-section termination width");
  p_cmd->add_option("--max-evals", po.search.max_evaluations,
                    "ratio evaluation cap");

  int exit_code = 0;
  try {
    app.parse(argc, argv);
    g.rel_tol_set = rel_tol_opt->count() > 0;
    if (*a_opt) po.a = probe_a;

    if (*c_cmd) exit_code = run_constants(g, co);
    else if (*v21_cmd) exit_code = run_verify_thm21(g, v21);
    else if (*v22_cmd) exit_code = run_verify_thm22(g, v22);
    else if (*v31_cmd) exit_code = run_verify_thm31(g, v31);
    else if (*a_cmd) exit_code = run_apply(g, ao);
    else if (*w_cmd) exit_code = run_weak_norm(g, wo);
    else if (*p_cmd) exit_code = run_probe(g, po);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return exit_code;
}
