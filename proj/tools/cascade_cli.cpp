// cascade: construct, solve, detect, and benchmark the solvable degree-8 and
// degree-9 composition families. JSON in, JSON out.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/json_io.hpp"

namespace {

using namespace cascade;
using nlohmann::json;

struct CommonOpts {
    int degree = 8;
    std::string in = "-";
    std::string out = "-";
    double tol = 1e-9;
    std::string gauge_alpha0 = "0,0";
    std::string gauge_beta0 = "0,0";
};

Cx parse_pair(const std::string& s, const char* what) {
    std::istringstream iss(s);
    double re, im;
    char comma;
    if (!(iss >> re >> comma >> im) || comma != ',' || !(iss >> std::ws).eof())
        throw invalid_input(std::string(what) + ": expected RE,IM");
    Cx z(re, im);
    require_finite(z, what);
    return z;
}

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw invalid_input("cannot open input file: " + path);
        buf << f.rdbuf();
    }
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        std::ofstream f(path);
        if (!f) throw invalid_input("cannot open output file: " + path);
        f << text;
    }
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_input("malformed JSON input");
    return j;
}

ToleranceConfig make_cfg(const CommonOpts& o) {
    ToleranceConfig cfg;
    cfg.rel_residual = o.tol;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool gauges = false) {
    cmd->add_option("--degree", o.degree, "Family degree (8 or 9)")
        ->required()
        ->check(CLI::IsMember({8, 9}));
    cmd->add_option("--in", o.in, "Input path, or - for stdin");
    cmd->add_option("--out", o.out, "Output path, or - for stdout");
    cmd->add_option("--tol", o.tol, "Relative residual tolerance");
    if (gauges) {
        cmd->add_option("--gauge-alpha0", o.gauge_alpha0, "Gauge value RE,IM for alpha0");
        cmd->add_option("--gauge-beta0", o.gauge_beta0, "Gauge value RE,IM for beta0 (degree 8)");
    }
}

int cmd_forward(const CommonOpts& o) {
    json j = parse_json(read_input(o.in));
    if (!j.contains("params")) throw invalid_input("forward: input needs 'params'");
    if (j.contains("degree") && j.at("degree").get<int>() != o.degree)
        throw invalid_input("input degree does not match --degree");
    std::string out;
    if (o.degree == 8)
        out = jsonio::emit_poly(deg8::forward8(jsonio::parse_params8(j.at("params"))));
    else
        out = jsonio::emit_poly(deg9::forward9(jsonio::parse_params9(j.at("params"))));
    write_output(o.out, out + "\n");
    return 0;
}

int cmd_solve(const CommonOpts& o, bool use_oracle) {
    json j = parse_json(read_input(o.in));
    ToleranceConfig cfg = make_cfg(o);
    std::string out;
    if (j.contains("params")) {
        if (j.contains("degree") && j.at("degree").get<int>() != o.degree)
            throw invalid_input("input degree does not match --degree");
        if (o.degree == 8) {
            auto [roots, tr] = deg8::solve8(jsonio::parse_params8(j.at("params")), cfg);
            out = "{\"roots\":" + jsonio::fmt_complex_array(roots.roots) +
                  ",\"trace\":" + jsonio::emit_trace(tr) + "}";
        } else {
            auto [roots, tr] = deg9::solve9(jsonio::parse_params9(j.at("params")), cfg);
            out = "{\"roots\":" + jsonio::fmt_complex_array(roots.roots) +
                  ",\"trace\":" + jsonio::emit_trace(tr) + "}";
        }
    } else if (j.contains("coeffs")) {
        MonicPoly p = jsonio::parse_poly(j, o.degree);
        if (use_oracle) {
            RootSet roots = durand_kerner(p, cfg);
            out = "{\"roots\":" + jsonio::fmt_complex_array(roots.roots) + "}";
        } else if (o.degree == 8) {
            auto d = deg8::detect8(p, cfg, parse_pair(o.gauge_alpha0, "--gauge-alpha0"),
                                   parse_pair(o.gauge_beta0, "--gauge-beta0"));
            if (!d.in_family) {
                std::cerr << "solve: polynomial is not in the degree-8 composition family"
                             " (use --oracle to solve iteratively)\n";
                return 1;
            }
            auto [roots, tr] = deg8::solve8(*d.recovered, cfg);
            out = "{\"roots\":" + jsonio::fmt_complex_array(roots.roots) +
                  ",\"trace\":" + jsonio::emit_trace(tr) + "}";
        } else {
            auto d = deg9::detect9(p, cfg, parse_pair(o.gauge_alpha0, "--gauge-alpha0"));
            if (!d.in_family) {
                std::cerr << "solve: polynomial is not in the degree-9 composition family"
                             " (use --oracle to solve iteratively)\n";
                return 1;
            }
            auto [roots, tr] = deg9::solve9(*d.recovered, cfg);
            out = "{\"roots\":" + jsonio::fmt_complex_array(roots.roots) +
                  ",\"trace\":" + jsonio::emit_trace(tr) + "}";
        }
    } else {
        throw invalid_input("solve: input needs 'params' or 'coeffs'");
    }
    write_output(o.out, out + "\n");
    return 0;
}

int cmd_detect(const CommonOpts& o) {
    json j = parse_json(read_input(o.in));
    MonicPoly p = jsonio::parse_poly(j, o.degree);
    ToleranceConfig cfg = make_cfg(o);
    bool in_family;
    std::string out;
    if (o.degree == 8) {
        auto d = deg8::detect8(p, cfg, parse_pair(o.gauge_alpha0, "--gauge-alpha0"),
                               parse_pair(o.gauge_beta0, "--gauge-beta0"));
        in_family = d.in_family;
        out = "{\"diagnosis\":" + jsonio::emit_diagnosis(d) + "}";
    } else {
        auto d = deg9::detect9(p, cfg, parse_pair(o.gauge_alpha0, "--gauge-alpha0"));
        in_family = d.in_family;
        out = "{\"diagnosis\":" + jsonio::emit_diagnosis(d) + "}";
    }
    write_output(o.out, out + "\n");
    return in_family ? 0 : 1;
}

int cmd_verify(const CommonOpts& o) {
    json j = parse_json(read_input(o.in));
    MonicPoly p = jsonio::parse_poly(j, o.degree);
    if (!j.contains("roots")) throw invalid_input("verify: input needs 'roots'");
    std::vector<Cx> roots = jsonio::parse_complex_array(j.at("roots"));
    if (static_cast<int>(roots.size()) != p.degree)
        throw invalid_input("verify: roots length must equal degree");
    double worst = 0.0;
    for (const Cx& r : roots) worst = std::max(worst, scaled_residual(p, r));
    write_output(o.out, "{\"max_residual\":" + jsonio::fmt(worst) + "}\n");
    return worst <= o.tol ? 0 : 1;
}

corpus::GenSpec make_genspec(const CommonOpts& o, long count, std::uint64_t seed,
                             double radius, bool real_only, const std::string& perturb) {
    corpus::GenSpec spec;
    spec.degree = o.degree;
    spec.count = count;
    spec.seed = seed;
    spec.radius = radius;
    spec.real_only = real_only;
    if (!perturb.empty()) {
        std::istringstream iss(perturb);
        int idx;
        double mag;
        char comma;
        if (!(iss >> idx >> comma >> mag) || comma != ',' || !(iss >> std::ws).eof())
            throw invalid_input("--perturb: expected IDX,MAG");
        spec.perturb = corpus::PerturbSpec{idx, mag};
    }
    spec.validate();
    return spec;
}

int cmd_gen(const CommonOpts& o, long count, std::uint64_t seed, double radius,
            bool real_only, const std::string& perturb) {
    auto spec = make_genspec(o, count, seed, radius, real_only, perturb);
    std::string out;
    for (const auto& inst : corpus::gen_instances(spec))
        out += jsonio::emit_instance(inst) + "\n";
    write_output(o.out, out);
    return 0;
}

int cmd_bench(const CommonOpts& o, long count, std::uint64_t seed, double radius,
              bool real_only) {
    auto spec = make_genspec(o, count, seed, radius, real_only, "");
    auto rep = corpus::bench_compare(spec, make_cfg(o));
    write_output(o.out, jsonio::emit_bench(rep) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solvable degree-8/9 polynomial composition families"};
    app.require_subcommand(1);

    CommonOpts o;
    long count = 1;
    std::uint64_t seed = 0;
    double radius = 2.0;
    bool real_only = false, use_oracle = false;
    std::string perturb;

    auto* fwd = app.add_subcommand("forward", "Parameters to monic coefficients");
    add_common(fwd, o);
    auto* slv = app.add_subcommand("solve", "Closed-form roots of a family member");
    add_common(slv, o, true);
    slv->add_flag("--oracle", use_oracle, "Solve any polynomial with Durand-Kerner");
    auto* det = app.add_subcommand("detect", "Test family membership of a polynomial");
    add_common(det, o, true);
    auto* ver = app.add_subcommand("verify", "Max scaled residual of roots vs polynomial");
    add_common(ver, o);
    auto* gen = app.add_subcommand("gen", "Generate a deterministic JSONL corpus");
    add_common(gen, o);
    auto* ben = app.add_subcommand("bench", "Time closed-form solving vs the oracle");
    add_common(ben, o);
    for (CLI::App* c : {gen, ben}) {
        c->add_option("--count", count, "Number of instances");
        c->add_option("--seed", seed, "Corpus seed");
        c->add_option("--radius", radius, "Parameter sampling disk radius");
        c->add_flag("--real-only", real_only, "Draw real parameters only");
    }
    gen->add_option("--perturb", perturb, "IDX,MAG coefficient perturbation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (fwd->parsed()) return cmd_forward(o);
        if (slv->parsed()) return cmd_solve(o, use_oracle);
        if (det->parsed()) return cmd_detect(o);
        if (ver->parsed()) return cmd_verify(o);
        if (gen->parsed()) return cmd_gen(o, count, seed, radius, real_only, perturb);
        if (ben->parsed()) return cmd_bench(o, count, seed, radius, real_only);
    } catch (const cascade::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cascade::numerical_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
