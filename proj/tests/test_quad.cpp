#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hlplab/errors.hpp"
#include "hlplab/quad.hpp"

using namespace hlplab;
namespace nb = std::numbers;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("integrate_1d: polynomial on a finite interval") {
    QuadratureConfig cfg;
    auto r = integrate_1d([](double x) { return x * x; }, 0.0, 1.0, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("integrate_1d: kinked tail integrand with head singularity") {
    // int_0^inf max(1,r)^-1.5 r^-0.25 dr
    //   = int_0^1 r^-0.25 + int_1^inf r^-1.75 = 4/3 + 4/3 = 8/3
    QuadratureConfig cfg;
    cfg.singularity_exponent_hint = -0.25;
    std::vector<double> splits{1.0};
    auto r = integrate_1d(
        [](double x) {
            return std::pow(std::max(1.0, x), -1.5) * std::pow(x, -0.25);
        },
        0.0, kInf, cfg, splits);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("integrate_1d: integrable endpoint singularity") {
    QuadratureConfig cfg;
    cfg.singularity_exponent_hint = -0.5;
    auto r = integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                          1.0, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("integrate_1d: plain tail") {
    QuadratureConfig cfg;
    auto r =
        integrate_1d([](double x) { return 1.0 / (x * x); }, 1.0, kInf, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate_1d: oscillatory sanity") {
    QuadratureConfig cfg;
    auto r = integrate_1d([](double x) { return std::sin(x); }, 0.0, nb::pi,
                          cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrate_1d: NaN integrand raises EvaluationError") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(
        integrate_1d([](double) { return std::nan(""); }, 0.0, 1.0, cfg),
        EvaluationError);
}

TEST_CASE("integrate_1d: exhausting subdivisions reports converged=false") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.abs_tol = 1e-300;
    cfg.max_subdivisions = 1;
    auto r = integrate_1d(
        [](double x) { return std::sqrt(std::abs(x - 0.37)); }, 0.0, 1.0,
        cfg);
    CHECK_FALSE(r.converged);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("QuadratureConfig validation") {
    QuadratureConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.max_subdivisions = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.mc_samples = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.singularity_exponent_hint = -1.5;  // not integrable
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("integrate_nested: product indicator and exponential") {
    QuadratureConfig cfg;
    NestedOptions opts;
    opts.upper = {1.0, 1.0};
    auto r = integrate_nested([](std::span<const double>) { return 1.0; }, 2,
                              cfg, opts);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    auto e = integrate_nested(
        [](std::span<const double> s) { return std::exp(-s[0] - s[1]); }, 2,
        cfg);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("integrate_nested: bivariate max kernels") {
    QuadratureConfig cfg;
    NestedOptions opts;
    // integrand kink where max switches; splitting at 1 keeps each level smooth
    opts.splits = {{1.0}, {1.0}};

    // int_0^inf int_0^inf max(1,s,t)^-3 ds dt = 3
    auto r3 = integrate_nested(
        [](std::span<const double> s) {
            return std::pow(std::max({1.0, s[0], s[1]}), -3.0);
        },
        2, cfg, opts);
    CHECK(r3.converged);
    CHECK(r3.value == doctest::Approx(3.0).epsilon(1e-9));

    // int_0^inf int_0^inf max(1,s,t)^-5 ds dt = 5/3
    auto r5 = integrate_nested(
        [](std::span<const double> s) {
            return std::pow(std::max({1.0, s[0], s[1]}), -5.0);
        },
        2, cfg, opts);
    CHECK(r5.converged);
    CHECK(r5.value == doctest::Approx(5.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("integrate_nested: trilinear Hilbert-type tail") {
    QuadratureConfig cfg;
    // int over (0,inf)^3 of (1+s+t+u)^-4 = 1/6
    auto r = integrate_nested(
        [](std::span<const double> s) {
            return std::pow(1.0 + s[0] + s[1] + s[2], -4.0);
        },
        3, cfg);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
}

TEST_CASE("integrate_nested: arity above three is rejected") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(
        integrate_nested([](std::span<const double>) { return 1.0; }, 4, cfg),
        DomainError);
    CHECK_THROWS_AS(
        integrate_nested([](std::span<const double>) { return 1.0; }, 0, cfg),
        DomainError);
}

TEST_CASE("ImportanceMap: uniform and power-law densities") {
    auto u = ImportanceMap::uniform(0.0, 2.0);
    CHECK(u.density(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u.sample(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(ImportanceMap::uniform(1.0, 1.0), DomainError);

    auto p = ImportanceMap::power_law(0.0, -2.0);
    // density integrates to 1: int_0^1 c + int_1^inf c r^-2 = 2c = 1
    CHECK(p.density(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.density(2.0) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK_THROWS_AS(ImportanceMap::power_law(-1.0, -2.0), DomainError);
    CHECK_THROWS_AS(ImportanceMap::power_law(0.0, -1.0), DomainError);
}

TEST_CASE("integrate_mc: uniform density integrates a constant exactly") {
    QuadratureConfig cfg;
    cfg.mc_samples = 10'000;
    std::vector<ImportanceMap> maps{ImportanceMap::uniform(0.0, 1.0)};
    auto r = integrate_mc([](std::span<const double>) { return 1.0; }, 1,
                          maps, cfg);
    // E[f/density] with f = density => every sample contributes exactly 1
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("integrate_mc: area of the quarter disk") {
    QuadratureConfig cfg;
    cfg.mc_samples = 400'000;
    cfg.mc_seed = 1234;
    std::vector<ImportanceMap> maps{ImportanceMap::uniform(0.0, 1.0),
                                    ImportanceMap::uniform(0.0, 1.0)};
    auto r = integrate_mc(
        [](std::span<const double> s) {
            return s[0] * s[0] + s[1] * s[1] <= 1.0 ? 1.0 : 0.0;
        },
        2, maps, cfg);
    CHECK(r.value == doctest::Approx(nb::pi / 4.0).epsilon(5e-3));
    CHECK(r.error_estimate > 0.0);
}

TEST_CASE("integrate_mc: power-law proposal handles singular head and tail") {
    QuadratureConfig cfg;
    cfg.mc_samples = 300'000;
    cfg.mc_seed = 7;
    std::vector<ImportanceMap> maps{ImportanceMap::power_law(-0.25, -1.75)};
    auto r = integrate_mc(
        [](std::span<const double> s) {
            return std::pow(std::max(1.0, s[0]), -1.5) *
                   std::pow(s[0], -0.25);
        },
        1, maps, cfg);
    CHECK(r.value == doctest::Approx(8.0 / 3.0).epsilon(5e-3));
}

TEST_CASE("integrate_mc: seeded runs are bitwise reproducible") {
    QuadratureConfig cfg;
    cfg.mc_samples = 50'000;
    cfg.mc_seed = 99;
    std::vector<ImportanceMap> maps{ImportanceMap::power_law(0.0, -2.0)};
    auto f = [](std::span<const double> s) {
        return std::exp(-s[0]);
    };
    auto a = integrate_mc(f, 1, maps, cfg);
    auto b = integrate_mc(f, 1, maps, cfg);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);

    cfg.mc_seed = 100;
    auto c = integrate_mc(f, 1, maps, cfg);
    CHECK(a.value != c.value);
}
