#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cascade {

using Cx = std::complex<double>;

struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Cx z, const char* what) {
    if (!is_finite(z)) throw invalid_input(std::string("non-finite value for ") + what);
}

/// Tolerances shared by every solver and detector.
struct ToleranceConfig {
    double rel_residual = 1e-9;
    double pairing_tol = 1e-6;
    double denom_floor = 1e-12;
    int dk_max_iters = 500;
    double dk_conv_tol = 1e-13;
};

/// Monic polynomial z^N + sum c_m z^m, stored as c_0..c_{N-1}.
struct MonicPoly {
    int degree = 0;
    std::vector<Cx> coeffs;  // ascending, size == degree

    MonicPoly() = default;
    MonicPoly(int deg, std::vector<Cx> c) : degree(deg), coeffs(std::move(c)) {
        if (degree < 1 || static_cast<int>(coeffs.size()) != degree)
            throw invalid_input("MonicPoly: coeffs length must equal degree");
        for (const Cx& v : coeffs) require_finite(v, "MonicPoly coefficient");
    }

    double max_coeff_mag() const {
        double m = 0.0;
        for (const Cx& v : coeffs) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Canonical root order: ascending real part, ties by ascending imaginary part.
inline void canonical_sort(std::vector<Cx>& roots) {
    std::sort(roots.begin(), roots.end(), [](Cx a, Cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

struct RootSet {
    std::vector<Cx> roots;  // canonical order, counted with multiplicity

    RootSet() = default;
    explicit RootSet(std::vector<Cx> r) : roots(std::move(r)) { canonical_sort(roots); }
};

inline Cx eval_poly(const MonicPoly& p, Cx z) {
    require_finite(z, "eval_poly argument");
    Cx acc = 1.0;  // implicit leading coefficient
    for (int k = p.degree - 1; k >= 0; --k) acc = acc * z + p.coeffs[k];
    if (!is_finite(acc)) throw numerical_failure("eval_poly: overflow to non-finite");
    return acc;
}

/// |P(z)| / ((1 + max|c_m|) * max(1,|z|)^N) -- the uniform root-acceptance metric.
inline double scaled_residual(const MonicPoly& p, Cx z) {
    double denom = (1.0 + p.max_coeff_mag()) * std::pow(std::max(1.0, std::abs(z)), p.degree);
    return std::abs(eval_poly(p, z)) / denom;
}

/// Roots of x^2 + a1 x + a0, stable form: the larger-magnitude root from the
/// sign-matched radical, the other from the product a0 / x_big.
inline std::array<Cx, 2> solve_quadratic(Cx a1, Cx a0) {
    require_finite(a1, "solve_quadratic a1");
    require_finite(a0, "solve_quadratic a0");
    Cx s = std::sqrt(a1 * a1 - 4.0 * a0);
    if (a1.real() * s.real() + a1.imag() * s.imag() < 0.0) s = -s;
    Cx big = -(a1 + s) / 2.0;
    if (big == Cx(0.0)) return {Cx(0.0), -a1};  // a1 + s == 0 forces a0 == 0
    return {big, a0 / big};
}

/// Roots of x^3 + a2 x^2 + a1 x + a0 (Cardano on the depressed cubic).
inline std::array<Cx, 3> solve_cubic(Cx a2, Cx a1, Cx a0,
                                     const ToleranceConfig& cfg = {}) {
    require_finite(a2, "solve_cubic a2");
    require_finite(a1, "solve_cubic a1");
    require_finite(a0, "solve_cubic a0");
    const Cx shift = a2 / 3.0;
    const Cx p = a1 - a2 * a2 / 3.0;
    const Cx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    const Cx d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Cx u3 = -q / 2.0 + d;
    if (Cx alt = -q / 2.0 - d; std::abs(alt) > std::abs(u3)) u3 = alt;

    static const Cx omega(-0.5, std::numbers::sqrt3 / 2.0);
    std::array<Cx, 3> out;
    const Cx u = std::pow(u3, 1.0 / 3.0);
    if (std::abs(u) < cfg.denom_floor) {
        // p and q both ~0: triple root of the depressed cubic at 0
        out = {-shift, -shift, -shift};
        return out;
    }
    Cx w = u;
    for (int k = 0; k < 3; ++k) {
        out[k] = w - p / (3.0 * w) - shift;
        w *= omega;
    }
    return out;
}

/// Durand-Kerner (Weierstrass) simultaneous iteration; the independent oracle.
inline RootSet durand_kerner(const MonicPoly& p, const ToleranceConfig& cfg = {}) {
    const int n = p.degree;
    if (n < 1) throw invalid_input("durand_kerner: degree must be >= 1");

    const double r0 = 1.0 + p.max_coeff_mag();
    const Cx seed(0.4, 0.9);
    std::vector<Cx> z(n);
    Cx w = 1.0;
    for (int k = 0; k < n; ++k) {
        z[k] = r0 * w;
        w *= seed;
    }

    bool converged = false;
    for (int iter = 0; iter < cfg.dk_max_iters && !converged; ++iter) {
        double max_update = 0.0, max_root = 0.0;
        for (int k = 0; k < n; ++k) {
            Cx denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            if (denom == Cx(0.0)) denom = Cx(cfg.denom_floor, cfg.denom_floor);
            Cx step = eval_poly(p, z[k]) / denom;
            z[k] -= step;
            max_update = std::max(max_update, std::abs(step));
            max_root = std::max(max_root, std::abs(z[k]));
        }
        converged = max_update < cfg.dk_conv_tol * (1.0 + max_root);
    }

    double worst = 0.0;
    for (const Cx& root : z) worst = std::max(worst, scaled_residual(p, root));
    if (!converged && worst > cfg.rel_residual)
        throw numerical_failure("durand_kerner: no convergence, best scaled residual " +
                                std::to_string(worst));
    return RootSet(std::move(z));
}

struct MatchResult {
    bool matched = false;
    double max_distance = 0.0;           // of the best pairing found
    std::vector<int> pairing;            // pairing[i] = index in b matched to a[i]
};

namespace detail {

// Exact min-max (bottleneck) assignment by DFS with pruning; N <= 9 in practice.
inline void bottleneck_dfs(const std::vector<std::vector<double>>& dist, int i,
                           std::vector<int>& used, std::vector<int>& cur,
                           double cur_max, double& best, std::vector<int>& best_perm) {
    const int n = static_cast<int>(dist.size());
    if (cur_max >= best) return;
    if (i == n) {
        best = cur_max;
        best_perm = cur;
        return;
    }
    for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        double d = dist[i][j];
        if (d >= best) continue;
        used[j] = 1;
        cur[i] = j;
        bottleneck_dfs(dist, i + 1, used, cur, std::max(cur_max, d), best, best_perm);
        used[j] = 0;
    }
}

}  // namespace detail

/// Minimum-cost (bottleneck) perfect matching between two root multisets.
/// Greedy nearest-neighbour first; exact search only when greedy exceeds tol.
inline MatchResult match_root_multisets(const RootSet& a, const RootSet& b, double tol) {
    const int n = static_cast<int>(a.roots.size());
    if (n != static_cast<int>(b.roots.size()))
        throw invalid_input("match_root_multisets: length mismatch");
    MatchResult res;
    if (n == 0) {
        res.matched = true;
        return res;
    }

    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i][j] = std::abs(a.roots[i] - b.roots[j]);

    std::vector<int> used(n, 0), perm(n, -1);
    double greedy_max = 0.0;
    for (int i = 0; i < n; ++i) {
        int pick = -1;
        double bestd = 0.0;
        for (int j = 0; j < n; ++j)
            if (!used[j] && (pick < 0 || dist[i][j] < bestd)) {
                pick = j;
                bestd = dist[i][j];
            }
        used[pick] = 1;
        perm[i] = pick;
        greedy_max = std::max(greedy_max, bestd);
    }

    if (greedy_max > tol) {
        std::fill(used.begin(), used.end(), 0);
        std::vector<int> cur(n, -1), best_perm = perm;
        double best = greedy_max;
        detail::bottleneck_dfs(dist, 0, used, cur, 0.0, best, best_perm);
        perm = best_perm;
        greedy_max = best;
    }

    res.max_distance = greedy_max;
    res.matched = greedy_max <= tol;
    res.pairing = std::move(perm);
    return res;
}

// ---- polynomial coefficient arithmetic (full arrays, ascending, incl. leading) ----
namespace polyops {

inline std::vector<Cx> mul(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    std::vector<Cx> out(a.size() + b.size() - 1, Cx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline void add_scaled(std::vector<Cx>& a, const std::vector<Cx>& b, Cx s) {
    if (a.size() < b.size()) a.resize(b.size(), Cx(0.0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

/// outer(inner(z)) by Horner over coefficient arrays; outer given ascending.
inline std::vector<Cx> compose(const std::vector<Cx>& outer, const std::vector<Cx>& inner) {
    std::vector<Cx> acc{outer.back()};
    for (int k = static_cast<int>(outer.size()) - 2; k >= 0; --k) {
        acc = mul(acc, inner);
        acc[0] += outer[k];
    }
    return acc;
}

}  // namespace polyops

/// max|a_k - b_k| / (1 + max coefficient magnitude) across two same-degree polys.
inline double poly_rel_diff(const MonicPoly& a, const MonicPoly& b) {
    if (a.degree != b.degree) throw invalid_input("poly_rel_diff: degree mismatch");
    double scale = 1.0 + std::max(a.max_coeff_mag(), b.max_coeff_mag());
    double worst = 0.0;
    for (int k = 0; k < a.degree; ++k)
        worst = std::max(worst, std::abs(a.coeffs[k] - b.coeffs[k]));
    return worst / scale;
}

}  // namespace cascade
