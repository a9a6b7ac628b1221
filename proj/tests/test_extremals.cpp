#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hlplab/constants.hpp"
#include "hlplab/errors.hpp"
#include "hlplab/extremals.hpp"
#include "hlplab/norms.hpp"
#include "hlplab/operators.hpp"

using namespace hlplab;

namespace {
SpaceParams flagship() {
    SpaceParams s;
    s.p = 3.0;
    s.q = 2.0;
    s.beta = 0.5;
    s.gamma = 0.0;
    s.n = 1;
    return s;
}
}  // namespace

TEST_CASE("make_extremal: first-family profile with collided exponents") {
    // p=3, beta=1/2, n=1: both candidate exponents equal -1/4, so the
    // profile collapses to the single term 2 r^-1/4 on (0,1].
    auto f = make_extremal({ExtremalId::Thm21, {}}, flagship());
    REQUIRE(f.pieces().size() == 1);
    REQUIRE(f.pieces()[0].size() == 1);
    CHECK(f.pieces()[0][0].coeff == doctest::Approx(2.0));
    CHECK(f.pieces()[0][0].power == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(evaluate(f, 0.0625) ==
          doctest::Approx(2.0 * std::pow(0.0625, -0.25)).epsilon(1e-14));
    CHECK(evaluate(f, 2.0) == 0.0);
}

TEST_CASE("make_extremal: first-family profile with distinct exponents") {
    // p=2.5, beta=0.3, n=1: B = 0.2, A = (0.3+1)/1.5 - 1 = -2/15 != -B
    SpaceParams s;
    s.p = 2.5;
    s.beta = 0.3;
    s.n = 1;
    auto f = make_extremal({ExtremalId::Thm21, {}}, s);
    REQUIRE(f.pieces().size() == 1);
    CHECK(f.pieces()[0].size() == 2);
    double B = 0.3 / 1.5;
    double A = (0.3 + 1.0) / 1.5 - 1.0;
    double r = 0.37;
    CHECK(evaluate(f, r) ==
          doctest::Approx(std::pow(r, A) + std::pow(r, -B)).epsilon(1e-13));
}

TEST_CASE("make_extremal: second-family profile is r^n on the unit ball") {
    SpaceParams s;
    s.n = 2;
    auto f = make_extremal({ExtremalId::Thm22, {}}, s);
    CHECK(evaluate(f, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(evaluate(f, 2.0) == 0.0);
}

TEST_CASE("make_extremal: power cutoff family") {
    SpaceParams s;
    s.p = 2.0;
    s.beta = 0.5;
    s.n = 1;
    auto f = make_extremal({ExtremalId::PowerCutoff, {{"a", 0.0}}}, s);
    CHECK(evaluate(f, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(evaluate(f, 2.0) == 0.0);

    // missing parameter
    CHECK_THROWS_AS(make_extremal({ExtremalId::PowerCutoff, {}}, s),
                    DomainError);
    // a so negative that f leaves the source space: a p + beta + n <= 0
    CHECK_THROWS_AS(
        make_extremal({ExtremalId::PowerCutoff, {{"a", -0.75}}}, s),
        DomainError);
}

TEST_CASE("closed_form_image: second family across dimensions") {
    for (int n : {1, 2, 3}) {
        SpaceParams s;
        s.n = n;
        ExtremalFamily fam{ExtremalId::Thm22, {}};
        auto img = closed_form_image(fam, s);
        double c = unit_sphere_area(n) / (2.0 * n);
        CHECK(evaluate(img, 0.5) ==
              doctest::Approx(c * (2.0 - std::pow(0.5, n))).epsilon(1e-13));
        CHECK(evaluate(img, 2.0) ==
              doctest::Approx(c * std::pow(2.0, -n)).epsilon(1e-13));

        // closed form == symbolic operator image everywhere sampled
        auto sym = apply_hlp_symbolic(make_extremal(fam, s), n);
        for (double r : {0.01, 0.5, 0.999, 1.0, 3.0, 50.0}) {
            CHECK(evaluate(img, r) ==
                  doctest::Approx(evaluate(sym, r)).epsilon(1e-11));
        }
    }
}

TEST_CASE("closed_form_image: first family reproduces the stated form") {
    // closed_form_image returns the image as stated for this family:
    // C (r^A + r^-B - 1) on (0,1), C r^-n beyond. At the reference point the
    // exponents collide, so the interior reads C (2 r^-1/4 - 1).
    ExtremalFamily fam{ExtremalId::Thm21, {}};
    auto img = closed_form_image(fam, flagship());
    double C = 16.0 / 3.0;
    CHECK(evaluate(img, 1.0) == doctest::Approx(C).epsilon(1e-13));
    CHECK(evaluate(img, 0.0625) ==
          doctest::Approx(C * (2.0 * std::pow(0.0625, -0.25) - 1.0))
              .epsilon(1e-13));
    CHECK(evaluate(img, 8.0) == doctest::Approx(C / 8.0).epsilon(1e-13));
}

TEST_CASE("first family: stated image and derived image disagree inside the "
          "unit ball") {
    // Applying the operator to the profile derives
    //   C [ (1+t) r^-1/4 - t ],  t = p/(p-2) = 3,
    // on (0,1) — not the stated C (2 r^-1/4 - 1). The two agree on the tail.
    ExtremalFamily fam{ExtremalId::Thm21, {}};
    auto stated = closed_form_image(fam, flagship());
    auto derived = apply_hlp_symbolic(make_extremal(fam, flagship()), 1);

    double C = 16.0 / 3.0;
    CHECK(evaluate(derived, 0.0625) ==
          doctest::Approx(C * (4.0 * std::pow(0.0625, -0.25) - 3.0))
              .epsilon(1e-12));

    // interior mismatch is large and systematic
    double r = 0.0625;
    double rel = std::abs(evaluate(derived, r) - evaluate(stated, r)) /
                 evaluate(derived, r);
    CHECK(rel > 0.05);

    // tail agreement is exact
    for (double r2 : {1.0, 2.0, 100.0}) {
        CHECK(evaluate(derived, r2) ==
              doctest::Approx(evaluate(stated, r2)).epsilon(1e-11));
    }
}

TEST_CASE("closed_form_image: no closed form for the cutoff family") {
    SpaceParams s;
    s.p = 2.0;
    s.beta = 0.5;
    s.n = 1;
    CHECK_THROWS_AS(
        closed_form_image({ExtremalId::PowerCutoff, {{"a", 0.0}}}, s),
        DomainError);
}

TEST_CASE("sharpness_probe: fixed second family attains its bound") {
    SpaceParams s;
    s.n = 1;
    s.p = 1.0;
    s.q = 1.0;  // L^1 -> weak L^1
    double bound = thm22_constant(0.0, 1).value;  // = 2
    auto res = sharpness_probe({ExtremalId::Thm22, {}}, s, bound);
    CHECK(res.best_ratio == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(res.gap == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.evaluations == 1);
}

TEST_CASE("sharpness_probe: cutoff family sweep stays within the bound") {
    SpaceParams s;
    s.n = 1;
    s.p = 1.0;
    s.q = 1.0;
    double bound = thm22_constant(0.0, 1).value;
    auto res = sharpness_probe({ExtremalId::PowerCutoff, {}}, s, bound);
    // every member of this family attains ratio 2 exactly, so the search
    // should sit at the bound (up to quadrature-level noise)
    CHECK(res.best_ratio <= bound * (1.0 + 1e-6));
    CHECK(res.best_ratio == doctest::Approx(bound).epsilon(1e-6));
    CHECK(res.gap <= 1e-6);
    CHECK(res.best_params.count("a") == 1);
    CHECK(res.evaluations > 1);
}

TEST_CASE("sharpness_probe: first family against the proof-side variant") {
    // The derived image of the first-family profile gives a weak/strong
    // ratio strictly below the proof-side constant: gap ~ 0.16.
    auto c = thm21_constant(3.0, 2.0, 0.5, 0.0, 1);
    auto res = sharpness_probe({ExtremalId::Thm21, {}}, flagship(),
                               c.proof_variant.value);
    double expected_ratio =
        (std::sqrt(2.0) * 64.0 / 9.0) / std::cbrt(64.0 / 3.0);
    CHECK(res.best_ratio == doctest::Approx(expected_ratio).epsilon(1e-9));
    CHECK(res.gap > 0.15);
    CHECK(res.gap < 0.17);
}

TEST_CASE("sharpness_probe: invalid bound rejected") {
    SpaceParams s;
    s.n = 1;
    CHECK_THROWS_AS(sharpness_probe({ExtremalId::Thm22, {}}, s, 0.0),
                    DomainError);
    CHECK_THROWS_AS(sharpness_probe({ExtremalId::Thm22, {}}, s, -1.0),
                    DomainError);
}

TEST_CASE("sharpness_probe: deterministic") {
    SpaceParams s;
    s.n = 1;
    s.p = 1.0;
    s.q = 1.0;
    auto a = sharpness_probe({ExtremalId::PowerCutoff, {}}, s, 2.0);
    auto b = sharpness_probe({ExtremalId::PowerCutoff, {}}, s, 2.0);
    CHECK(a.best_ratio == b.best_ratio);
    CHECK(a.best_params.at("a") == b.best_params.at("a"));
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("ProbeResult::to_json carries the search summary") {
    SpaceParams s;
    s.n = 1;
    s.p = 1.0;
    s.q = 1.0;
    auto res = sharpness_probe({ExtremalId::Thm22, {}}, s, 2.0);
    std::string j = res.to_json();
    CHECK(j.find("\"best_ratio\"") != std::string::npos);
    CHECK(j.find("\"bound\"") != std::string::npos);
    CHECK(j.find("\"gap\"") != std::string::npos);
    CHECK(j.find("\"evaluations\"") != std::string::npos);
    CHECK(j.find("\"best_params\"") != std::string::npos);
}
