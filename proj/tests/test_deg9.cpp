#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <random>

#include "cascade/deg9.hpp"

using namespace cascade;
using namespace cascade::deg9;

namespace {

std::mt19937_64 rng(4242);
Cx rand_disk(double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = radius * std::sqrt(u(rng));
    double th = 2.0 * std::numbers::pi * u(rng);
    return {r * std::cos(th), r * std::sin(th)};
}

ParamSet9 rand_params(double radius = 2.0) {
    return {rand_disk(radius), rand_disk(radius), rand_disk(radius),
            rand_disk(radius), rand_disk(radius), rand_disk(radius)};
}

MonicPoly tri_cubic() {  // z^9 - 7 z^3 + 6
    return MonicPoly(9, {Cx(6), Cx(0), Cx(0), Cx(-7), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0)});
}

bool coeffs_equal(const MonicPoly& p, std::vector<Cx> expect, double tol = 1e-12) {
    REQUIRE(p.coeffs.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k)
        if (std::abs(p.coeffs[k] - expect[k]) > tol) return false;
    return true;
}

}  // namespace

TEST_CASE("forward9 fixtures") {
    CHECK(coeffs_equal(forward9({Cx(0), Cx(0), Cx(0), Cx(6), Cx(-7), Cx(0)}),
                       {Cx(6), Cx(0), Cx(0), Cx(-7), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0)}));
    // (z^3 + z^2)^3
    CHECK(coeffs_equal(forward9({Cx(0), Cx(0), Cx(1), Cx(0), Cx(0), Cx(0)}),
                       {Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1), Cx(3), Cx(3)}));
    CHECK(coeffs_equal(forward9({}), std::vector<Cx>(9, Cx(0))));
}

TEST_CASE("composition matches the explicit coefficient formulas") {
    for (int trial = 0; trial < 1000; ++trial)
        CHECK(check_explicit_formulas9(rand_params(1.0)) <= 1e-12);
}

TEST_CASE("solve9 fixtures") {
    ToleranceConfig cfg;
    // cascade y in {1, 2, -3} from y^3 - 7y + 6, then z^3 = y
    auto [roots, tr] = solve9({Cx(0), Cx(0), Cx(0), Cx(6), Cx(-7), Cx(0)}, cfg);
    std::vector<Cx> expect;
    const Cx omega(-0.5, std::numbers::sqrt3 / 2.0);
    for (double y : {1.0, 2.0, -3.0}) {
        Cx base = std::pow(Cx(y), 1.0 / 3.0);
        for (int k = 0; k < 3; ++k) expect.push_back(base * std::pow(omega, k));
    }
    CHECK(match_root_multisets(roots, RootSet(expect), 1e-12).matched);
    RootSet ys({tr.y[0], tr.y[1], tr.y[2]});
    CHECK(std::abs(ys.roots[0] - Cx(-3)) < 1e-13);
    CHECK(std::abs(ys.roots[1] - Cx(1)) < 1e-13);
    CHECK(std::abs(ys.roots[2] - Cx(2)) < 1e-13);

    // z^9 + 1: the nine 9th roots of -1
    auto [r2, t2] = solve9({Cx(0), Cx(0), Cx(0), Cx(1), Cx(0), Cx(0)}, cfg);
    for (auto z : r2.roots) CHECK(std::abs(std::abs(z) - 1.0) < 1e-13);
    MonicPoly p9(9, {Cx(1), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0)});
    for (auto z : r2.roots) CHECK(scaled_residual(p9, z) < 1e-13);

    auto [r3, t3] = solve9({}, cfg);
    for (auto z : r3.roots) CHECK(std::abs(z) < 1e-15);
}

TEST_CASE("solve9 residuals and oracle equivalence on random draws") {
    ToleranceConfig cfg;
    int oracle_checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ParamSet9 p = rand_params();
        MonicPoly poly = forward9(p);
        auto [roots, tr] = solve9(p, cfg);
        for (auto z : roots.roots) CHECK(scaled_residual(poly, z) <= 1e-9);

        for (int mu = 0; mu < 3; ++mu) {
            Cx y = tr.y[mu];
            CHECK(std::abs(((y + p.beta2) * y + p.beta1) * y + p.beta0) < 1e-8);
        }

        if (trial % 20 == 0) {
            double min_sep = 1e300;
            for (std::size_t i = 0; i < roots.roots.size(); ++i)
                for (std::size_t j = i + 1; j < roots.roots.size(); ++j)
                    min_sep = std::min(min_sep, std::abs(roots.roots[i] - roots.roots[j]));
            if (min_sep >= 1e-3) {
                CHECK(match_root_multisets(roots, durand_kerner(poly, cfg), cfg.pairing_tol)
                          .matched);
                ++oracle_checked;
            }
        }
    }
    CHECK(oracle_checked > 10);
}

TEST_CASE("s_expressions fixtures") {
    ToleranceConfig cfg;
    auto s = s_expressions(tri_cubic(), cfg);
    REQUIRE(s.values[0].has_value());
    CHECK(std::abs(*s.values[0]) == 0.0);
    for (int k = 1; k < 6; ++k) CHECK_FALSE(s.values[k].has_value());

    // (z^3 + z^2)^3: alpha2 = 1, alpha1 = 0; the alpha1-denominator entries stay
    // indeterminate, the rest agree with S = 0
    MonicPoly cube(9, {Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1), Cx(3), Cx(3)});
    auto s2 = s_expressions(cube, cfg);
    REQUIRE(s2.values[0].has_value());
    CHECK(std::abs(*s2.values[0]) < 1e-14);
    REQUIRE(s2.values[1].has_value());
    CHECK(std::abs(*s2.values[1]) < 1e-14);
    REQUIRE(s2.values[2].has_value());
    CHECK(std::abs(*s2.values[2]) < 1e-14);
    // alpha1 = 0 zeroes the c21, c31 and c32 denominators alike
    CHECK_FALSE(s2.values[3].has_value());
    CHECK_FALSE(s2.values[4].has_value());
    CHECK_FALSE(s2.values[5].has_value());

    CHECK_THROWS_AS(s_expressions(MonicPoly(8, std::vector<Cx>(8, Cx(0))), cfg),
                    invalid_input);
}

TEST_CASE("determinate s_expressions agree with 3*alpha0 + beta2 on the image") {
    ToleranceConfig cfg;
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        ParamSet9 p = rand_params();
        if (std::abs(p.alpha1 * p.alpha2) < 1e-3) continue;
        Cx S = 3.0 * p.alpha0 + p.beta2;
        auto s = s_expressions(forward9(p), cfg);
        double scale = 1.0 + std::abs(S);
        for (int k = 0; k < 6; ++k)
            if (s.values[k]) CHECK(std::abs(*s.values[k] - S) <= 1e-9 * scale);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("constraints9 fixtures") {
    for (double r : constraints9(tri_cubic())) CHECK(r == 0.0);

    MonicPoly off(9, {Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1), Cx(0), Cx(0), Cx(0)});
    auto res = constraints9(off);  // z^9 + z^5
    CHECK(res[0] == Catch::Approx(1.0));

    CHECK_THROWS_AS(constraints9(MonicPoly(8, std::vector<Cx>(8, Cx(0)))), invalid_input);
}

TEST_CASE("constraints9 vanish on the image, nonzero off it") {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations_detected = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        MonicPoly c = forward9(rand_params());
        for (double r : constraints9(c)) CHECK(r <= 1e-10);

        double th = 2.0 * std::numbers::pi * u(rng);
        c.coeffs[5] += 1e-2 * Cx(std::cos(th), std::sin(th));
        auto res = constraints9(c);
        double worst = 0.0;
        for (double r : res) worst = std::max(worst, r);
        if (worst >= 1e-4) ++violations_detected;
    }
    CHECK(violations_detected >= trials * 99 / 100);
}

TEST_CASE("recover9 fixtures") {
    ParamSet9 p = recover9(tri_cubic());
    CHECK(std::abs(p.alpha0) == 0.0);
    CHECK(std::abs(p.alpha1) == 0.0);
    CHECK(std::abs(p.alpha2) == 0.0);
    CHECK(std::abs(p.beta0 - Cx(6)) == 0.0);
    CHECK(std::abs(p.beta1 - Cx(-7)) == 0.0);
    CHECK(std::abs(p.beta2) == 0.0);

    MonicPoly cube(9, {Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1), Cx(3), Cx(3)});
    ParamSet9 q = recover9(cube);
    CHECK(std::abs(q.alpha2 - Cx(1)) < 1e-15);
    CHECK(std::abs(q.alpha1) < 1e-15);
    CHECK(std::abs(q.beta2) < 1e-15);
    CHECK(std::abs(q.beta1) < 1e-15);
    CHECK(std::abs(q.beta0) < 1e-15);
}

TEST_CASE("recover9 round trip, determinism, and gauge orbit") {
    for (int trial = 0; trial < 200; ++trial) {
        MonicPoly c = forward9(rand_params());
        ParamSet9 rec = recover9(c);
        CHECK(poly_rel_diff(forward9(rec), c) <= 1e-9);

        // determinism: bit-identical on repeat
        ParamSet9 rec2 = recover9(c);
        CHECK(std::memcmp(&rec, &rec2, sizeof rec) == 0);

        // nonzero gauge reproduces the polynomial too
        Cx g = rand_disk(2.0);
        CHECK(poly_rel_diff(forward9(recover9(c, g)), c) <= 1e-9);
    }
}

TEST_CASE("shift gauge leaves the composition invariant") {
    for (int trial = 0; trial < 100; ++trial) {
        ParamSet9 p = rand_params();
        Cx t = rand_disk(2.0);
        CHECK(poly_rel_diff(forward9(shift_gauge(p, t)), forward9(p)) <= 1e-10);
    }
}

TEST_CASE("detect9") {
    ToleranceConfig cfg;
    CHECK(detect9(tri_cubic(), cfg).in_family);

    MonicPoly off(9, {Cx(0), Cx(0), Cx(0), Cx(0), Cx(0), Cx(1), Cx(0), Cx(0), Cx(0)});
    auto d = detect9(off, cfg);
    CHECK_FALSE(d.in_family);
    CHECK_FALSE(d.recovered.has_value());

    for (int trial = 0; trial < 1000; ++trial)
        CHECK(detect9(forward9(rand_params()), cfg).in_family);
}
