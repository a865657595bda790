#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cascade/core.hpp"
#include "cascade/corpus.hpp"
#include "cascade/deg8.hpp"
#include "cascade/deg9.hpp"

// Emitters write JSON text directly with fixed 17-significant-digit float
// formatting so identical inputs always produce identical bytes. Parsing goes
// through nlohmann::json.
namespace cascade::jsonio {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt(Cx z) { return "[" + fmt(z.real()) + "," + fmt(z.imag()) + "]"; }

inline std::string fmt_complex_array(const std::vector<Cx>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out + "]";
}

template <std::size_t N>
inline std::string fmt_complex_array(const std::array<Cx, N>& v) {
    return fmt_complex_array(std::vector<Cx>(v.begin(), v.end()));
}

inline std::string emit_poly(const MonicPoly& p) {
    return "{\"degree\":" + std::to_string(p.degree) +
           ",\"coeffs\":" + fmt_complex_array(p.coeffs) + "}";
}

inline std::string emit_params(const deg8::ParamSet8& p) {
    return "{\"alpha0\":" + fmt(p.alpha0) + ",\"alpha1\":" + fmt(p.alpha1) +
           ",\"beta0\":" + fmt(p.beta0) + ",\"beta1\":" + fmt(p.beta1) +
           ",\"gamma0\":" + fmt(p.gamma0) + ",\"gamma1\":" + fmt(p.gamma1) + "}";
}

inline std::string emit_params(const deg9::ParamSet9& p) {
    return "{\"alpha0\":" + fmt(p.alpha0) + ",\"alpha1\":" + fmt(p.alpha1) +
           ",\"alpha2\":" + fmt(p.alpha2) + ",\"beta0\":" + fmt(p.beta0) +
           ",\"beta1\":" + fmt(p.beta1) + ",\"beta2\":" + fmt(p.beta2) + "}";
}

inline std::string emit_roots(const RootSet& r) {
    return "{\"roots\":" + fmt_complex_array(r.roots) + "}";
}

inline std::string emit_trace(const deg8::CascadeTrace8& t) {
    return "{\"x\":" + fmt_complex_array(t.x) + ",\"y\":" + fmt_complex_array(t.y) +
           ",\"z\":" + fmt_complex_array(t.z) + "}";
}

inline std::string emit_trace(const deg9::CascadeTrace9& t) {
    return "{\"y\":" + fmt_complex_array(t.y) + ",\"z\":" + fmt_complex_array(t.z) + "}";
}

template <std::size_t N>
inline std::string fmt_real_array(const std::array<double, N>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out + "]";
}

inline std::string emit_diagnosis(const deg8::Diagnosis8& d) {
    std::string out = "{\"in_family\":";
    out += d.in_family ? "true" : "false";
    out += ",\"residuals\":" + fmt_real_array(d.constraint_residuals);
    out += ",\"recovered\":";
    out += d.recovered ? emit_params(*d.recovered) : "null";
    out += ",\"gauge\":{\"alpha0\":" + fmt(d.gauge_alpha0) +
           ",\"beta0\":" + fmt(d.gauge_beta0) + "}}";
    return out;
}

inline std::string emit_diagnosis(const deg9::Diagnosis9& d) {
    std::string out = "{\"in_family\":";
    out += d.in_family ? "true" : "false";
    out += ",\"residuals\":" + fmt_real_array(d.constraint_residuals);
    out += ",\"recovered\":";
    out += d.recovered ? emit_params(*d.recovered) : "null";
    out += ",\"gauge\":{\"alpha0\":" + fmt(d.gauge_alpha0) + "}}";
    return out;
}

inline std::string emit_instance(const corpus::Instance& inst) {
    std::string out = "{\"index\":" + std::to_string(inst.index) +
                      ",\"degree\":" + std::to_string(inst.degree) + ",\"params\":";
    if (inst.degree == 8)
        out += emit_params(std::get<deg8::ParamSet8>(inst.params));
    else
        out += emit_params(std::get<deg9::ParamSet9>(inst.params));
    out += ",\"params_valid\":";
    out += inst.params_valid ? "true" : "false";
    out += ",\"coeffs\":";
    out += fmt_complex_array(inst.poly.coeffs);
    return out + "}";
}

inline std::string emit_bench(const corpus::BenchReport& r) {
    return "{\"degree\":" + std::to_string(r.degree) +
           ",\"count\":" + std::to_string(r.count) +
           ",\"closed_form_total_ns\":" + std::to_string(r.closed_form_total_ns) +
           ",\"oracle_total_ns\":" + std::to_string(r.oracle_total_ns) +
           ",\"speedup_ratio\":" + fmt(r.speedup_ratio) +
           ",\"max_residual_closed_form\":" + fmt(r.max_residual_closed_form) +
           ",\"max_residual_oracle\":" + fmt(r.max_residual_oracle) +
           ",\"mismatches\":" + std::to_string(r.mismatches) + "}";
}

// ---- parsing ----

inline Cx parse_complex(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw invalid_input("expected complex value as [re, im]");
    Cx z(j[0].get<double>(), j[1].get<double>());
    require_finite(z, "JSON complex value");
    return z;
}

inline std::vector<Cx> parse_complex_array(const nlohmann::json& j) {
    if (!j.is_array()) throw invalid_input("expected array of [re, im] pairs");
    std::vector<Cx> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(parse_complex(e));
    return out;
}

inline MonicPoly parse_poly(const nlohmann::json& j, int expect_degree) {
    if (!j.contains("degree") || !j.contains("coeffs"))
        throw invalid_input("polynomial JSON needs 'degree' and 'coeffs'");
    int deg = j.at("degree").get<int>();
    if (deg != expect_degree)
        throw invalid_input("polynomial degree " + std::to_string(deg) + " does not match --degree " +
                            std::to_string(expect_degree));
    auto coeffs = parse_complex_array(j.at("coeffs"));
    if (static_cast<int>(coeffs.size()) != deg)
        throw invalid_input("coeffs length must equal degree");
    return MonicPoly(deg, std::move(coeffs));
}

inline deg8::ParamSet8 parse_params8(const nlohmann::json& j) {
    for (const char* key : {"alpha0", "alpha1", "beta0", "beta1", "gamma0", "gamma1"})
        if (!j.contains(key)) throw invalid_input(std::string("missing parameter ") + key);
    if (j.size() != 6) throw invalid_input("degree-8 params must have exactly 6 keys");
    deg8::ParamSet8 p;
    p.alpha0 = parse_complex(j.at("alpha0"));
    p.alpha1 = parse_complex(j.at("alpha1"));
    p.beta0 = parse_complex(j.at("beta0"));
    p.beta1 = parse_complex(j.at("beta1"));
    p.gamma0 = parse_complex(j.at("gamma0"));
    p.gamma1 = parse_complex(j.at("gamma1"));
    return p;
}

inline deg9::ParamSet9 parse_params9(const nlohmann::json& j) {
    for (const char* key : {"alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2"})
        if (!j.contains(key)) throw invalid_input(std::string("missing parameter ") + key);
    if (j.size() != 6) throw invalid_input("degree-9 params must have exactly 6 keys");
    deg9::ParamSet9 p;
    p.alpha0 = parse_complex(j.at("alpha0"));
    p.alpha1 = parse_complex(j.at("alpha1"));
    p.alpha2 = parse_complex(j.at("alpha2"));
    p.beta0 = parse_complex(j.at("beta0"));
    p.beta1 = parse_complex(j.at("beta1"));
    p.beta2 = parse_complex(j.at("beta2"));
    return p;
}

}  // namespace cascade::jsonio
