#pragma once

#include <chrono>
#include <variant>

#include "cascade/core.hpp"
#include "cascade/deg8.hpp"
#include "cascade/deg9.hpp"

namespace cascade::corpus {

struct PerturbSpec {
    int coeff_index = 0;
    double magnitude = 0.0;
};

struct GenSpec {
    int degree = 8;  // 8 or 9
    long count = 1;
    std::uint64_t seed = 0;
    double radius = 2.0;
    bool real_only = false;
    std::optional<PerturbSpec> perturb;

    void validate() const {
        if (degree != 8 && degree != 9) throw invalid_input("GenSpec: degree must be 8 or 9");
        if (count < 1) throw invalid_input("GenSpec: count must be >= 1");
        if (!(radius > 0.0)) throw invalid_input("GenSpec: radius must be positive");
        if (perturb && (perturb->coeff_index < 0 || perturb->coeff_index >= degree))
            throw invalid_input("GenSpec: perturb index out of range");
    }
};

struct Instance {
    long index = 0;
    int degree = 8;
    std::variant<deg8::ParamSet8, deg9::ParamSet9> params;
    MonicPoly poly;
    bool params_valid = true;  // false when the polynomial was perturbed
};

struct BenchReport {
    int degree = 0;
    long count = 0;
    std::uint64_t closed_form_total_ns = 0;
    std::uint64_t oracle_total_ns = 0;
    double speedup_ratio = 0.0;  // oracle time / closed-form time
    double max_residual_closed_form = 0.0;
    double max_residual_oracle = 0.0;
    long mismatches = 0;
};

namespace detail {

// Counter-based stream: instance k's randomness depends only on (seed, k).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed, std::uint64_t counter)
        : state(seed ^ (0x9E3779B97F4A7C15ULL * (counter + 1))) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    Cx in_disk(double radius, bool real_only) {
        if (real_only) return Cx(radius * (2.0 * uniform01() - 1.0), 0.0);
        double r = radius * std::sqrt(uniform01());
        double th = 2.0 * std::numbers::pi * uniform01();
        return Cx(r * std::cos(th), r * std::sin(th));
    }
};

}  // namespace detail

inline Instance gen_instance(const GenSpec& spec, long k) {
    detail::SplitMix64 rng(spec.seed, static_cast<std::uint64_t>(k));
    Instance inst;
    inst.index = k;
    inst.degree = spec.degree;
    if (spec.degree == 8) {
        deg8::ParamSet8 p;
        p.alpha0 = rng.in_disk(spec.radius, spec.real_only);
        p.alpha1 = rng.in_disk(spec.radius, spec.real_only);
        p.beta0 = rng.in_disk(spec.radius, spec.real_only);
        p.beta1 = rng.in_disk(spec.radius, spec.real_only);
        p.gamma0 = rng.in_disk(spec.radius, spec.real_only);
        p.gamma1 = rng.in_disk(spec.radius, spec.real_only);
        inst.params = p;
        inst.poly = deg8::forward8(p);
    } else {
        deg9::ParamSet9 p;
        p.alpha0 = rng.in_disk(spec.radius, spec.real_only);
        p.alpha1 = rng.in_disk(spec.radius, spec.real_only);
        p.alpha2 = rng.in_disk(spec.radius, spec.real_only);
        p.beta0 = rng.in_disk(spec.radius, spec.real_only);
        p.beta1 = rng.in_disk(spec.radius, spec.real_only);
        p.beta2 = rng.in_disk(spec.radius, spec.real_only);
        inst.params = p;
        inst.poly = deg9::forward9(p);
    }
    if (spec.perturb) {
        double th = 2.0 * std::numbers::pi * rng.uniform01();
        inst.poly.coeffs[spec.perturb->coeff_index] +=
            spec.perturb->magnitude * Cx(std::cos(th), std::sin(th));
        inst.params_valid = false;
    }
    return inst;
}

inline std::vector<Instance> gen_instances(const GenSpec& spec) {
    spec.validate();
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (long k = 0; k < spec.count; ++k) out.push_back(gen_instance(spec, k));
    return out;
}

/// Times the closed-form cascades against the Durand-Kerner oracle over a
/// deterministic corpus. A warm-up pass precedes the timed loops; root
/// multisets are compared per instance outside the timed sections.
inline BenchReport bench_compare(const GenSpec& spec, const ToleranceConfig& cfg = {}) {
    spec.validate();
    if (spec.perturb) throw invalid_input("bench_compare: perturb must be unset");
    using clock = std::chrono::steady_clock;

    std::vector<Instance> corpus = gen_instances(spec);

    auto solve_closed = [&](const Instance& inst) -> RootSet {
        if (inst.degree == 8)
            return deg8::solve8(std::get<deg8::ParamSet8>(inst.params), cfg).first;
        return deg9::solve9(std::get<deg9::ParamSet9>(inst.params), cfg).first;
    };

    // warm-up, excluded from totals
    (void)solve_closed(corpus.front());
    (void)durand_kerner(corpus.front().poly, cfg);

    BenchReport rep;
    rep.degree = spec.degree;
    rep.count = spec.count;

    std::vector<RootSet> closed(corpus.size()), oracle(corpus.size());
    auto run = [&](auto&& fn, std::vector<RootSet>& dst) -> std::uint64_t {
        auto t0 = clock::now();
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            try {
                dst[i] = fn(corpus[i]);
            } catch (const numerical_failure& e) {
                throw numerical_failure("instance " + std::to_string(corpus[i].index) +
                                        " (seed " + std::to_string(spec.seed) +
                                        "): " + e.what());
            }
        }
        auto t1 = clock::now();
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    };

    rep.closed_form_total_ns = run(solve_closed, closed);
    rep.oracle_total_ns =
        run([&](const Instance& i) { return durand_kerner(i.poly, cfg); }, oracle);
    rep.speedup_ratio = rep.closed_form_total_ns > 0
                            ? static_cast<double>(rep.oracle_total_ns) /
                                  static_cast<double>(rep.closed_form_total_ns)
                            : 0.0;

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (const Cx& r : closed[i].roots)
            rep.max_residual_closed_form =
                std::max(rep.max_residual_closed_form, scaled_residual(corpus[i].poly, r));
        for (const Cx& r : oracle[i].roots)
            rep.max_residual_oracle =
                std::max(rep.max_residual_oracle, scaled_residual(corpus[i].poly, r));
        if (!match_root_multisets(closed[i], oracle[i], cfg.pairing_tol).matched)
            ++rep.mismatches;
    }
    if (rep.max_residual_closed_form > cfg.rel_residual ||
        rep.max_residual_oracle > cfg.rel_residual)
        throw numerical_failure("bench_compare: residual bound exceeded (seed " +
                                std::to_string(spec.seed) + ")");
    return rep;
}

}  // namespace cascade::corpus
