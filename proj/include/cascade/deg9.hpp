#pragma once

#include "cascade/core.hpp"

namespace cascade::deg9 {

/// Parameters of the degree-9 family Cb(Ca(z)) with
/// Ca(z) = z^3 + alpha2 z^2 + alpha1 z + alpha0 and
/// Cb(y) = y^3 + beta2 y^2 + beta1 y + beta0.
struct ParamSet9 {
    Cx alpha0, alpha1, alpha2, beta0, beta1, beta2;

    void check_finite() const {
        require_finite(alpha0, "alpha0");
        require_finite(alpha1, "alpha1");
        require_finite(alpha2, "alpha2");
        require_finite(beta0, "beta0");
        require_finite(beta1, "beta1");
        require_finite(beta2, "beta2");
    }
};

/// Cascade values: y of the outer cubic, z indexed (lambda, mu) as z[mu*3 + lambda].
struct CascadeTrace9 {
    std::array<Cx, 3> y;
    std::array<Cx, 9> z;
};

/// The six equal expressions S = 3*alpha0 + beta2 that the family's
/// coefficients determine, in order [c6, c5, c4, c21, c31, c32].
/// An entry is indeterminate when its printed denominator is too small.
struct SExpressions {
    std::array<std::optional<Cx>, 6> values;
    std::array<Cx, 6> numerators;
    std::array<Cx, 6> denominators;
};

struct Diagnosis9 {
    bool in_family = false;
    std::array<double, 5> constraint_residuals{};
    std::optional<ParamSet9> recovered;
    Cx gauge_alpha0{0.0};
};

inline MonicPoly forward9(const ParamSet9& p) {
    p.check_finite();
    std::vector<Cx> ca{p.alpha0, p.alpha1, p.alpha2, Cx(1.0)};
    std::vector<Cx> full = polyops::compose({p.beta0, p.beta1, p.beta2, Cx(1.0)}, ca);
    full.pop_back();
    for (const Cx& v : full)
        if (!is_finite(v)) throw numerical_failure("forward9: non-finite coefficient");
    return MonicPoly(9, std::move(full));
}

/// Explicit closed-form coefficient formulas, diagnostic cross-check of forward9.
inline std::array<Cx, 9> explicit_coeffs9(const ParamSet9& p) {
    const Cx a0 = p.alpha0, a1 = p.alpha1, a2 = p.alpha2;
    const Cx b0 = p.beta0, b1 = p.beta1, b2 = p.beta2;
    std::array<Cx, 9> c;
    c[0] = a0 * (b1 + a0 * (a0 + b2)) + b0;
    c[1] = a0 * a1 * (3.0 * a0 + 2.0 * b2) + a1 * b1;
    c[2] = 3.0 * a0 * (a1 * a1 + a0 * a2) + b2 * (a1 * a1 + 2.0 * a0 * a2) + a2 * b1;
    c[3] = 3.0 * a0 * (a0 + 2.0 * a1 * a2) + 2.0 * b2 * (a0 + a1 * a2) + a1 * a1 * a1 + b1;
    c[4] = 3.0 * a0 * (2.0 * a1 + a2 * a2) + 3.0 * a1 * a1 * a2 + (2.0 * a1 + a2 * a2) * b2;
    c[5] = 3.0 * a1 * (a1 + a2 * a2) + 2.0 * a2 * (3.0 * a0 + b2);
    c[6] = 3.0 * a0 + a2 * (6.0 * a1 + a2 * a2) + b2;
    c[7] = 3.0 * (a1 + a2 * a2);
    c[8] = 3.0 * a2;
    return c;
}

inline double check_explicit_formulas9(const ParamSet9& p) {
    MonicPoly comp = forward9(p);
    auto ex = explicit_coeffs9(p);
    double scale = 1.0 + comp.max_coeff_mag();
    double worst = 0.0;
    for (int k = 0; k < 9; ++k)
        worst = std::max(worst, std::abs(comp.coeffs[k] - ex[k]) / scale);
    return worst;
}

/// Closed-form root cascade: the outer cubic for y, then three shifted inner cubics.
inline std::pair<RootSet, CascadeTrace9> solve9(const ParamSet9& p,
                                                const ToleranceConfig& cfg = {}) {
    p.check_finite();
    CascadeTrace9 tr;
    auto ys = solve_cubic(p.beta2, p.beta1, p.beta0, cfg);
    tr.y = ys;
    std::vector<Cx> roots;
    roots.reserve(9);
    for (int mu = 0; mu < 3; ++mu) {
        auto zs = solve_cubic(p.alpha2, p.alpha1, p.alpha0 - ys[mu], cfg);
        for (int lam = 0; lam < 3; ++lam) {
            tr.z[mu * 3 + lam] = zs[lam];
            roots.push_back(zs[lam]);
        }
    }
    MonicPoly poly = forward9(p);
    for (const Cx& r : roots)
        if (scaled_residual(poly, r) > cfg.rel_residual)
            throw numerical_failure("solve9: root residual exceeds tolerance");
    return {RootSet(std::move(roots)), tr};
}

namespace detail {

struct SParts {
    Cx alpha1, alpha2;
    std::array<Cx, 6> num, den;
};

inline SParts s_parts(const MonicPoly& c) {
    if (c.degree != 9) throw invalid_input("degree must be 9");
    const Cx c1 = c.coeffs[1], c2 = c.coeffs[2], c3 = c.coeffs[3], c4 = c.coeffs[4];
    const Cx c5 = c.coeffs[5], c6 = c.coeffs[6], c7 = c.coeffs[7], c8 = c.coeffs[8];
    SParts s;
    const Cx a2 = c8 / 3.0;
    const Cx a1 = (3.0 * c7 - c8 * c8) / 9.0;
    s.alpha1 = a1;
    s.alpha2 = a2;
    s.num = {c6 - a2 * (6.0 * a1 + a2 * a2),
             c5 - 3.0 * a1 * (a1 + a2 * a2),
             c4 - 3.0 * a1 * a1 * a2,
             c2 * a1 - c1 * a2,
             c3 * a1 - c1 - std::pow(a1, 4),
             c3 * a2 - c2 - a1 * a1 * a1 * a2};
    s.den = {Cx(1.0),
             2.0 * a2,
             2.0 * a1 + a2 * a2,
             a1 * a1 * a1,
             2.0 * a1 * a1 * a2,
             a1 * (2.0 * a2 * a2 - a1)};
    return s;
}

}  // namespace detail

inline SExpressions s_expressions(const MonicPoly& c, const ToleranceConfig& cfg = {}) {
    auto s = detail::s_parts(c);
    SExpressions out;
    out.numerators = s.num;
    out.denominators = s.den;
    for (int k = 0; k < 6; ++k) {
        if (std::abs(s.den[k]) >= cfg.denom_floor * (1.0 + std::abs(s.num[k])))
            out.values[k] = s.num[k] / s.den[k];
    }
    return out;
}

/// The five constraints, each in cross-multiplied form num_k - S * den_k with
/// S taken from the denominator-free c6 expression, so vanishing denominators
/// never divide. Residual k is scaled by 1 + the largest monomial magnitude of
/// the relation, the lone constrained coefficient excluded.
inline std::array<double, 5> constraints9(const MonicPoly& c) {
    auto s = detail::s_parts(c);
    const Cx S = s.num[0];  // denominator 1
    const double a1 = std::abs(s.alpha1), a2 = std::abs(s.alpha2), Sm = std::abs(S);
    const double c1 = std::abs(c.coeffs[1]), c2 = std::abs(c.coeffs[2]),
                 c3 = std::abs(c.coeffs[3]);

    auto scaled = [&](int k, std::initializer_list<double> monomials) {
        double m = 0.0;
        for (double v : monomials) m = std::max(m, v);
        return std::abs(s.num[k] - S * s.den[k]) / (1.0 + m);
    };

    std::array<double, 5> res;
    res[0] = scaled(1, {3.0 * a1 * a1, 3.0 * a1 * a2 * a2, Sm * 2.0 * a2});
    res[1] = scaled(2, {3.0 * a1 * a1 * a2, Sm * 2.0 * a1, Sm * a2 * a2});
    res[2] = scaled(3, {c2 * a1, c1 * a2, Sm * a1 * a1 * a1});
    res[3] = scaled(4, {c3 * a1, std::pow(a1, 4), Sm * 2.0 * a1 * a1 * a2});
    res[4] = scaled(5, {c3 * a2, std::pow(a1, 3) * a2, Sm * 2.0 * a1 * a2 * a2,
                        Sm * a1 * a1});
    return res;
}

/// Gauge-fixed inverse map with alpha0 pinned to the gauge value. The chain is
/// denominator-free: alpha2, alpha1 from c8, c7; beta2 from the c6 relation;
/// beta1 from the c3 relation; beta0 from the c0 relation.
inline ParamSet9 recover9(const MonicPoly& c, Cx gauge_alpha0 = Cx(0.0)) {
    if (c.degree != 9) throw invalid_input("recover9: degree must be 9");
    require_finite(gauge_alpha0, "gauge_alpha0");
    const Cx c8 = c.coeffs[8], c7 = c.coeffs[7], c6 = c.coeffs[6];
    const Cx c3 = c.coeffs[3], c0 = c.coeffs[0];
    const Cx g = gauge_alpha0;

    ParamSet9 p;
    p.alpha0 = g;
    p.alpha2 = c8 / 3.0;
    p.alpha1 = (3.0 * c7 - c8 * c8) / 9.0;
    const Cx S = c6 - p.alpha2 * (6.0 * p.alpha1 + p.alpha2 * p.alpha2);
    p.beta2 = S - 3.0 * g;
    p.beta1 = c3 - 3.0 * g * (g + 2.0 * p.alpha1 * p.alpha2) -
              2.0 * p.beta2 * (g + p.alpha1 * p.alpha2) -
              p.alpha1 * p.alpha1 * p.alpha1;
    p.beta0 = c0 - g * (p.beta1 + g * (g + p.beta2));
    return p;
}

inline Diagnosis9 detect9(const MonicPoly& c, const ToleranceConfig& cfg = {},
                          Cx gauge_alpha0 = Cx(0.0)) {
    Diagnosis9 d;
    d.gauge_alpha0 = gauge_alpha0;
    d.constraint_residuals = constraints9(c);
    bool ok = true;
    for (double r : d.constraint_residuals) ok = ok && r <= cfg.rel_residual;
    if (!ok) return d;
    ParamSet9 rec = recover9(c, gauge_alpha0);
    if (poly_rel_diff(forward9(rec), c) > cfg.rel_residual) return d;
    d.in_family = true;
    d.recovered = rec;
    return d;
}

/// The exact shift gauge: replacing alpha0 by alpha0 + t and the outer cubic
/// Cb(y) by Cb(y - t) leaves the composition unchanged.
inline ParamSet9 shift_gauge(const ParamSet9& p, Cx t) {
    ParamSet9 q = p;
    q.alpha0 = p.alpha0 + t;
    // Cb(y - t) expanded in y
    q.beta2 = p.beta2 - 3.0 * t;
    q.beta1 = p.beta1 + 3.0 * t * t - 2.0 * p.beta2 * t;
    q.beta0 = p.beta0 - p.beta1 * t + p.beta2 * t * t - t * t * t;
    return q;
}

}  // namespace cascade::deg9
