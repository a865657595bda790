#pragma once

#include "cascade/core.hpp"

namespace cascade::deg8 {

/// Parameters of the degree-8 family Qg(Qb(Qa(z))) with
/// Qa(z) = z^2 + alpha1 z + alpha0, Qb(y) = y^2 + beta1 y + beta0,
/// Qg(x) = x^2 + gamma1 x + gamma0.
struct ParamSet8 {
    Cx alpha0, alpha1, beta0, beta1, gamma0, gamma1;

    void check_finite() const {
        require_finite(alpha0, "alpha0");
        require_finite(alpha1, "alpha1");
        require_finite(beta0, "beta0");
        require_finite(beta1, "beta1");
        require_finite(gamma0, "gamma0");
        require_finite(gamma1, "gamma1");
    }
};

/// Intermediate cascade values: x of the outermost quadratic, y indexed
/// (mu, nu) as y[nu*2 + mu], z indexed (lambda, mu, nu) as z[(nu*2+mu)*2 + lambda].
struct CascadeTrace8 {
    std::array<Cx, 2> x;
    std::array<Cx, 4> y;
    std::array<Cx, 8> z;
};

struct Diagnosis8 {
    bool in_family = false;
    std::array<double, 4> constraint_residuals{};
    std::optional<ParamSet8> recovered;
    Cx gauge_alpha0{0.0}, gauge_beta0{0.0};
};

/// Coefficients c_0..c_7 of the composition Qg . Qb . Qa, by coefficient
/// convolution. This is the defining construction; the explicit per-coefficient
/// formulas below are a diagnostic cross-check only.
inline MonicPoly forward8(const ParamSet8& p) {
    p.check_finite();
    std::vector<Cx> qa{p.alpha0, p.alpha1, Cx(1.0)};
    std::vector<Cx> inner = polyops::compose({p.beta0, p.beta1, Cx(1.0)}, qa);
    std::vector<Cx> full = polyops::compose({p.gamma0, p.gamma1, Cx(1.0)}, inner);
    full.pop_back();  // leading 1
    for (const Cx& v : full)
        if (!is_finite(v)) throw numerical_failure("forward8: non-finite coefficient");
    return MonicPoly(8, std::move(full));
}

/// Explicit closed-form coefficient formulas for the family. The c0 formula is
/// implemented with the corrected term 2*alpha0*beta1 inside the bracket; the
/// uncorrected variant (2*alpha0^2*beta1, wrong for alpha0 not in {0,1}) is kept
/// for the diagnostic comparison.
inline std::array<Cx, 8> explicit_coeffs8(const ParamSet8& p, bool corrected_c0 = true) {
    const Cx a0 = p.alpha0, a1 = p.alpha1, b0 = p.beta0, b1 = p.beta1;
    const Cx g0 = p.gamma0, g1 = p.gamma1;
    std::array<Cx, 8> c;
    c[7] = 4.0 * a1;
    c[6] = 4.0 * a0 + 6.0 * a1 * a1 + 2.0 * b1;
    c[5] = 12.0 * a0 * a1 + 4.0 * a1 * a1 * a1 + 6.0 * a1 * b1;
    c[4] = 6.0 * a0 * (a0 + 2.0 * a1 * a1 + b1) + a1 * a1 * (a1 * a1 + 6.0 * b1) +
           2.0 * b0 + b1 * b1 + g1;
    c[3] = 4.0 * a0 * a1 * (3.0 * a0 + a1 * a1 + 3.0 * b1) +
           2.0 * a1 * (2.0 * b0 + a1 * a1 * b1 + b1 * b1 + g1);
    c[2] = 2.0 * a0 * (2.0 * a0 * a0 + 3.0 * a0 * a1 * a1 + 2.0 * b0 +
                       3.0 * (a0 + a1 * a1) * b1 + b1 * b1) +
           2.0 * a1 * a1 * b0 + (2.0 * b0 + a1 * a1 * b1) * b1 +
           (2.0 * a0 + a1 * a1 + b1) * g1;
    c[1] = a1 * (2.0 * a0 * (2.0 * a0 * a0 + 2.0 * b0 + (3.0 * a0 + b1) * b1) +
                 2.0 * b0 * b1 + (2.0 * a0 + b1) * g1);
    const Cx bracket_term = corrected_c0 ? 2.0 * a0 * b1 : 2.0 * a0 * a0 * b1;
    c[0] = a0 * (a0 * a0 * a0 + a0 * (2.0 * b0 + bracket_term + b1 * b1) +
                 2.0 * b0 * b1 + (a0 + b1) * g1) +
           b0 * (b0 + g1) + g0;
    return c;
}

struct FormulaCheck8 {
    double max_rel_diff_c1_to_c7 = 0.0;  // composition vs explicit formulas
    double c0_corrected_diff = 0.0;      // relative, composition vs corrected c0
    double c0_uncorrected_diff = 0.0;    // relative, composition vs uncorrected c0
};

/// Compare the composition expansion against the explicit formulas.
inline FormulaCheck8 check_explicit_formulas8(const ParamSet8& p) {
    MonicPoly comp = forward8(p);
    auto fixed = explicit_coeffs8(p, true);
    auto raw = explicit_coeffs8(p, false);
    double scale = 1.0 + comp.max_coeff_mag();
    FormulaCheck8 out;
    for (int k = 1; k < 8; ++k)
        out.max_rel_diff_c1_to_c7 =
            std::max(out.max_rel_diff_c1_to_c7, std::abs(comp.coeffs[k] - fixed[k]) / scale);
    out.c0_corrected_diff = std::abs(comp.coeffs[0] - fixed[0]) / scale;
    out.c0_uncorrected_diff = std::abs(comp.coeffs[0] - raw[0]) / scale;
    return out;
}

/// Closed-form root cascade: x from the outermost quadratic, then y, then z.
inline std::pair<RootSet, CascadeTrace8> solve8(const ParamSet8& p,
                                                const ToleranceConfig& cfg = {}) {
    p.check_finite();
    CascadeTrace8 tr;
    auto xs = solve_quadratic(p.gamma1, p.gamma0);
    tr.x = xs;
    std::vector<Cx> roots;
    roots.reserve(8);
    for (int nu = 0; nu < 2; ++nu) {
        auto ys = solve_quadratic(p.beta1, p.beta0 - xs[nu]);
        for (int mu = 0; mu < 2; ++mu) {
            tr.y[nu * 2 + mu] = ys[mu];
            auto zs = solve_quadratic(p.alpha1, p.alpha0 - ys[mu]);
            for (int lam = 0; lam < 2; ++lam) {
                tr.z[(nu * 2 + mu) * 2 + lam] = zs[lam];
                roots.push_back(zs[lam]);
            }
        }
    }
    MonicPoly poly = forward8(p);
    for (const Cx& r : roots)
        if (scaled_residual(poly, r) > cfg.rel_residual)
            throw numerical_failure("solve8: root residual exceeds tolerance");
    return {RootSet(std::move(roots)), tr};
}

/// Scaled residuals of the four coefficient constraints the family satisfies.
/// Each residual is |c_k - rhs| / (1 + max magnitude of the rhs monomials).
inline std::array<double, 4> constraints8(const MonicPoly& c) {
    if (c.degree != 8) throw invalid_input("constraints8: degree must be 8");
    const Cx c7 = c.coeffs[7], c6 = c.coeffs[6], c5 = c.coeffs[5], c4 = c.coeffs[4];
    const Cx c3 = c.coeffs[3], c2 = c.coeffs[2], c1 = c.coeffs[1];
    const double m7 = std::abs(c7), m6 = std::abs(c6), m4 = std::abs(c4);

    auto scaled = [](Cx lhs, Cx rhs, std::initializer_list<double> monomials) {
        double m = 0.0;
        for (double v : monomials) m = std::max(m, v);
        return std::abs(lhs - rhs) / (1.0 + m);
    };

    std::array<double, 4> res;
    res[0] = scaled(c5, c7 * (24.0 * c6 - 7.0 * c7 * c7) / 32.0,
                    {m7 * 24.0 * m6 / 32.0, 7.0 * m7 * m7 * m7 / 32.0});
    res[1] = scaled(c3, c7 * (128.0 * c4 - 20.0 * c6 * c7 * c7 + 7.0 * std::pow(c7, 4)) / 256.0,
                    {m7 * 128.0 * m4 / 256.0, 20.0 * m6 * m7 * m7 * m7 / 256.0,
                     7.0 * std::pow(m7, 5) / 256.0});
    res[2] = scaled(c2,
                    (512.0 * c4 * (4.0 * c6 - c7 * c7) -
                     64.0 * (8.0 * c6 - 3.0 * c7 * c7) * c6 * c6 +
                     (16.0 * c6 - 7.0 * c7 * c7) * std::pow(c7, 4)) /
                        4096.0,
                    {512.0 * 4.0 * m4 * m6 / 4096.0, 512.0 * m4 * m7 * m7 / 4096.0,
                     64.0 * 8.0 * m6 * m6 * m6 / 4096.0,
                     64.0 * 3.0 * m7 * m7 * m6 * m6 / 4096.0,
                     16.0 * m6 * std::pow(m7, 4) / 4096.0, 7.0 * std::pow(m7, 6) / 4096.0});
    res[3] = scaled(c1,
                    c7 * (8.0 * c6 - 3.0 * c7 * c7) *
                        (32.0 * c4 - 8.0 * c6 * c6 + std::pow(c7, 4)) / 2048.0,
                    {m7 * 8.0 * m6 * 32.0 * m4 / 2048.0, m7 * 8.0 * m6 * 8.0 * m6 * m6 / 2048.0,
                     m7 * 8.0 * m6 * std::pow(m7, 4) / 2048.0,
                     3.0 * m7 * m7 * m7 * 32.0 * m4 / 2048.0,
                     3.0 * m7 * m7 * m7 * 8.0 * m6 * m6 / 2048.0,
                     3.0 * std::pow(m7, 7) / 2048.0});
    return res;
}

/// Gauge-fixed inverse map: alpha0 and beta0 are free; the remaining four
/// parameters follow from the coefficients in the order alpha1, beta1,
/// gamma1, gamma0.
inline ParamSet8 recover8(const MonicPoly& c, Cx gauge_alpha0 = Cx(0.0),
                          Cx gauge_beta0 = Cx(0.0)) {
    if (c.degree != 8) throw invalid_input("recover8: degree must be 8");
    require_finite(gauge_alpha0, "gauge_alpha0");
    require_finite(gauge_beta0, "gauge_beta0");
    const Cx c7 = c.coeffs[7], c6 = c.coeffs[6], c4 = c.coeffs[4], c0 = c.coeffs[0];
    const Cx a0 = gauge_alpha0, b0 = gauge_beta0;

    ParamSet8 p;
    p.alpha0 = a0;
    p.beta0 = b0;
    p.alpha1 = c7 / 4.0;
    p.beta1 = -(32.0 * a0 - 8.0 * c6 + 3.0 * c7 * c7) / 16.0;
    p.gamma1 = -a0 * c6 + 2.0 * (a0 * a0 - b0) + c4 +
               (-8.0 * c6 * c6 + 12.0 * a0 * c7 * c7 + std::pow(c7, 4)) / 32.0;
    p.gamma0 = c0 - (a0 * (8.0 * c6 - 3.0 * c7 * c7) - 16.0 * (a0 * a0 - b0)) *
                        (std::pow(c7, 4) - 8.0 * c6 * c6 + 32.0 * c4 -
                         2.0 * a0 * (8.0 * c6 - 3.0 * c7 * c7) +
                         32.0 * (a0 * a0 - b0)) /
                        512.0;
    return p;
}

/// Family membership: constraint residuals plus a recover/forward round trip.
inline Diagnosis8 detect8(const MonicPoly& c, const ToleranceConfig& cfg = {},
                          Cx gauge_alpha0 = Cx(0.0), Cx gauge_beta0 = Cx(0.0)) {
    Diagnosis8 d;
    d.gauge_alpha0 = gauge_alpha0;
    d.gauge_beta0 = gauge_beta0;
    d.constraint_residuals = constraints8(c);
    bool ok = true;
    for (double r : d.constraint_residuals) ok = ok && r <= cfg.rel_residual;
    if (!ok) return d;
    ParamSet8 rec = recover8(c, gauge_alpha0, gauge_beta0);
    if (poly_rel_diff(forward8(rec), c) > cfg.rel_residual) return d;
    d.in_family = true;
    d.recovered = rec;
    return d;
}

}  // namespace cascade::deg8
