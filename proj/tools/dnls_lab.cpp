#include "dnls/energies.hpp"
#include "dnls/experiments.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/multipliers.hpp"
#include "dnls/parallel.hpp"
#include "dnls/selftest.hpp"
#include "dnls/solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

using namespace dnls;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kBadArgs = 2;
constexpr int kGuard = 3;
constexpr int kProperty = 4;

const char* kFooter = R"(Exit codes: 0 ok, 1 other error, 2 bad arguments, 3 size guard exceeded,
4 property failure.

Config file (--config PATH): plain text, one key=value per line, '#' starts a
comment, blank lines ignored. A key is the long name of an option of the chosen
subcommand or of the global options, without the leading dashes, e.g.
    dt=5e-4
    t-end=2
    N=8,16,32
    drift=true
Unknown keys are rejected. Precedence: command-line flags, then the config
file, then built-in defaults. --threads falls back to DNLS_LAB_THREADS.)";

struct Globals {
    int threads = 0;
    std::string config;
    std::string out = ".";
};

struct bad_args : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_args("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int no = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++no;
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw bad_args(path + ":" + std::to_string(no) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

// fill options not given on the command line
void apply_config(const std::map<std::string, std::string>& kv, CLI::App& app, CLI::App* sub) {
    for (const auto& [key, value] : kv) {
        CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt || key == "config") throw bad_args("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        if (opt->get_expected_max() > 1) {
            std::string item;
            std::stringstream ss(value);
            while (std::getline(ss, item, ',')) opt->add_result(item);
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

void emit(const Globals& g, const std::string& name, const ojson& report) {
    fs::create_directories(g.out);
    const std::string text = report.dump(2) + "\n";
    std::ofstream(fs::path(g.out) / name, std::ios::binary) << text;
    std::cout << text;
}

void write_text(const Globals& g, const std::string& name, const std::string& text) {
    fs::create_directories(g.out);
    std::ofstream(fs::path(g.out) / name, std::ios::binary) << text;
}

SpectralField power_seed(const TorusGrid& grid, int band, double decay, double mass, std::uint64_t seed) {
    Rng rng(seed);
    RandomProfile p;
    p.band = band;
    p.decay = decay;
    p.mass = mass;
    return random_field(grid, rng, p);
}

std::string file_safe(std::string s) {
    for (auto& c : s)
        if (c == ':' || c == '/') c = '_';
    return s;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    double a = 1, a_imag = 0, lambda = 1, dt = 1e-3, t_end = 1, beta = 1, hs = 0.5;
    int N = 2, M = 64, nmax = 0, diag_stride = 0;
    bool drift = false, modified = false;
    std::string init = "mono";
    double mass = 1, rate = 0.9;
    int band = 10;
    std::uint64_t seed = 1;
    double symbol_s = 0, symbol_N = 8;
};

int run_simulate(const Globals& gl, const SimulateArgs& a) {
    const int nmax = a.nmax > 0 ? a.nmax : (a.M - 1) / 3;
    TorusGrid grid(a.lambda, a.M, nmax);
    SpectralField v0;
    const cplx amp(a.a, a.a_imag);
    if (a.init == "mono") {
        if (std::abs(a.N) > nmax) throw bad_args("--N outside the band");
        v0 = single_mode(grid, a.N, amp);
    } else {
        Rng rng(a.seed);
        RandomProfile p;
        p.kind = RandomProfile::Exponential;
        p.rate = a.rate;
        p.band = std::min(a.band, nmax);
        p.mass = a.mass;
        v0 = random_field(grid, rng, p);
    }
    SolverConfig cfg;
    cfg.dt = a.dt;
    cfg.t_end = a.t_end;
    cfg.beta = a.beta;
    cfg.drift = a.drift;
    cfg.diag_stride = a.diag_stride;
    cfg.hs = a.hs;
    if (a.symbol_s > 0) {
        cfg.symbol = build_symbol(a.symbol_s, a.symbol_N, grid);
        cfg.modified_energies = a.modified;
    }
    auto tr = integrate(v0, cfg);
    write_text(gl, "trajectory.csv", trajectory_csv(tr));
    write_text(gl, "trajectory.json", trajectory_sidecar(tr, cfg, grid) + "\n");

    ojson r;
    r["command"] = "simulate";
    r["steps"] = tr.steps;
    r["rows"] = tr.rows.size();
    r["final_mass"] = tr.rows.back().mass;
    r["final_energy"] = tr.rows.back().energy;
    r["final_momentum"] = tr.rows.back().momentum;
    if (a.init == "mono") {
        // with the drift term kept every gauge sees the DNLS phase
        auto exact = exact_monochromatic(amp, a.N, a.drift ? 0.0 : a.beta, tr.rows.back().t, grid);
        const double ref = norm(exact, NormKind::L2());
        r["final_l2_error"] = ref > 0 ? norm(tr.final_state - exact, NormKind::L2()) / ref : 0.0;
    }
    r["csv"] = "trajectory.csv";
    r["sidecar"] = "trajectory.json";
    emit(gl, "simulate.json", r);
    return 0;
}

struct GaugeArgs {
    std::vector<double> betas{-0.25, 0.5, 0.75, 1.0};
    int samples = 100, M = 128, nmax = 63;
    double lambda = 1, mass = 1.5, rate = 0.8;
    std::uint64_t seed = 1;
};

int run_gauge(const Globals& gl, const GaugeArgs& a) {
    TorusGrid grid(a.lambda, a.M, a.nmax);
    ojson rows = ojson::array();
    bool ok = true;
    for (double beta : a.betas) {
        double trip = 0, te = 0, tp = 0;
        for (int i = 0; i < a.samples; ++i) {
            Rng rng(a.seed + i);
            RandomProfile p;
            p.kind = RandomProfile::Exponential;
            p.rate = a.rate * a.lambda;
            p.band = a.nmax;
            p.mass = a.mass;
            auto w = random_field(grid, rng, p);
            trip = std::max(trip, norm(gauge_apply(gauge_apply(w, beta), -beta) - w, NormKind::L2()) /
                                      norm(w, NormKind::L2()));
            auto u = gauge_apply(w, -beta);
            const double Eb = energy_beta(w, beta), Pb = momentum_beta(w, beta);
            te = std::max(te, std::abs(energy(u) - Eb) / (1 + std::abs(Eb)));
            tp = std::max(tp, std::abs(momentum(u) - Pb) / (1 + std::abs(Pb)));
        }
        ok = ok && trip <= 1e-10 && te <= 1e-8 && tp <= 1e-8;
        rows.push_back({{"beta", beta}, {"round_trip", trip}, {"energy_transfer", te}, {"momentum_transfer", tp}});
    }
    ojson r;
    r["command"] = "gauge";
    r["samples"] = a.samples;
    r["rows"] = rows;
    r["tolerances"] = {{"round_trip", 1e-10}, {"transfer", 1e-8}};
    r["passed"] = ok;
    emit(gl, "gauge.json", r);
    return ok ? 0 : kProperty;
}

struct ScanArgs {
    std::string mode = "increment";
    double s = 0.5, t_window = 1, dt = 1e-3, decay = 1.0, mass = 2, lambda = 1;
    std::vector<double> N{8, 16, 32};
    int samples = 10, eval_radius = 32, band = 32, M = 128;
    std::uint64_t seed = 17;
};

int run_energy_scan(const Globals& gl, const ScanArgs& a) {
    ojson r;
    r["command"] = "energy-scan";
    r["mode"] = a.mode;
    if (a.mode == "increment") {
        TorusGrid grid(1, a.M, a.band);
        auto seed = power_seed(grid, a.band, a.decay, a.mass, a.seed);
        IncrementOptions opt;
        opt.dt = a.dt;
        opt.samples = a.samples;
        opt.eval_radius = a.eval_radius;
        auto scan = almost_conservation_scan(seed, a.s, a.N, a.t_window, opt);
        ojson rows = ojson::array();
        for (const auto& x : scan.rows)
            rows.push_back({{"N", x.N}, {"lambda", x.lambda}, {"e3_start", x.e3_start},
                            {"sup_increment", x.sup_increment}, {"mean_increment", x.mean_increment},
                            {"band", x.band}, {"threshold_index", x.threshold_index},
                            {"corrections_active", x.corrections_active}});
        r["rows"] = rows;
        r["fitted_slope"] = std::isfinite(scan.fitted_slope) ? ojson(scan.fitted_slope) : ojson();
    } else if (a.mode == "closeness") {
        TorusGrid grid(a.lambda, a.M, a.band);
        auto f = power_seed(grid, a.band, a.decay, a.mass, a.seed);
        LambdaOptions lo;
        lo.max_modes_low = std::max(lo.max_modes_low, 2 * a.band + 1);
        std::vector<double> er, mr;
        ojson rows = ojson::array();
        for (double N : a.N) {
            auto c = closeness_check(f, build_symbol(a.s, N, grid), {}, lo);
            er.push_back(c.energy_ratio);
            mr.push_back(c.momentum_ratio);
            rows.push_back({{"N", N}, {"energy_gap", c.energy_gap}, {"momentum_gap", c.momentum_gap},
                            {"h1_of_If", c.h1}, {"energy_ratio", c.energy_ratio},
                            {"momentum_ratio", c.momentum_ratio}});
        }
        auto slope = [](double x) { return std::isfinite(x) ? ojson(x) : ojson(); };
        r["rows"] = rows;
        r["energy_slope"] = slope(loglog_slope(a.N, er));
        r["momentum_slope"] = slope(loglog_slope(a.N, mr));
    } else {
        throw bad_args("--mode must be increment or closeness");
    }
    emit(gl, "energy_scan.json", r);
    return 0;
}

struct BoundsArgs {
    std::string lemma = "all";
    std::vector<double> N{8, 16, 32};
    double lambda = 0, s = 0.8;
    int index_bound = 0;
    std::string kind = "smoothstep";
};

int run_bounds(const Globals& gl, const BoundsArgs& a) {
    std::vector<std::string> ids;
    if (a.lemma == "all") {
        ids = bound_ids();
    } else {
        const auto all = bound_ids();
        if (std::find(all.begin(), all.end(), a.lemma) == all.end()) throw bad_args("unknown --lemma " + a.lemma);
        ids = {a.lemma};
    }
    Interpolant kind;
    if (a.kind == "smoothstep") kind = Interpolant::Smoothstep;
    else if (a.kind == "kink") kind = Interpolant::Kink;
    else throw bad_args("--kind must be smoothstep or kink");

    ojson summary = ojson::array();
    for (const auto& id : ids) {
        ojson ratios = ojson::array();
        double first = -1, last = -1;
        for (double N : a.N) {
            auto set = default_scan(id, N);
            const double lam = a.lambda > 0 ? a.lambda : set.lambda;
            const int box = a.index_bound > 0 ? a.index_bound : set.index_bound;
            auto rep = verify_bound(id, N, lam, OmegaParams{}, box, a.s, kind);
            char name[96];
            std::snprintf(name, sizeof name, "bounds_%s_N%g.json", file_safe(id).c_str(), N);
            write_text(gl, name, to_json(rep) + "\n");
            ratios.push_back({{"N", N}, {"max_ratio", rep.max_ratio}, {"visited", rep.visited}, {"file", name}});
            if (first < 0) first = rep.max_ratio;
            last = rep.max_ratio;
        }
        summary.push_back({{"lemma", id}, {"runs", ratios}, {"stable", last <= 2 * first}});
    }
    ojson r;
    r["command"] = "bounds";
    r["lemmas"] = summary;
    emit(gl, "bounds.json", r);
    return 0;
}

struct GNArgs {
    std::string which = "all";
    int samples = 10000, M = 64, nmax = 24;
    double lambda = 1, delta = 1.0, eps = 0.1, K_eps = 0;
    std::uint64_t seed = 12;
};

int run_gn(const Globals& gl, const GNArgs& a) {
    const bool herr = a.which == "all" || a.which == "herr";
    const bool agueh = a.which == "all" || a.which == "agueh";
    const bool wein = a.which == "all" || a.which == "weinstein";
    if (!herr && !agueh && !wein) throw bad_args("--which must be herr, agueh, weinstein or all");
    TorusGrid grid(a.lambda, a.M, a.nmax);
    Rng rng(a.seed);
    std::uniform_real_distribution<double> dec(0.5, 3.0), ms(0.05, 15.0);
    double wh = INFINITY, wa = INFINITY, ww = INFINITY, kfit = 0;
    for (int i = 0; i < a.samples; ++i) {
        RandomProfile p;
        p.band = a.nmax;
        p.decay = dec(rng);
        p.mass = ms(rng);
        auto f = random_field(grid, rng, p);
        if (herr) wh = std::min(wh, gn_check(f, GNKind::Herr).slack);
        GNParams gp;
        gp.delta = a.delta;
        gp.eps = a.eps;
        if (agueh) wa = std::min(wa, gn_check(f, GNKind::AguehTorus, gp).slack);
        if (wein) {
            kfit = std::max(kfit, weinstein_K_needed(f, a.eps));
            if (a.K_eps > 0) {
                gp.K_eps = a.K_eps;
                ww = std::min(ww, gn_check(f, GNKind::WeinsteinTorus, gp).slack);
            }
        }
    }
    bool ok = true;
    ojson r;
    r["command"] = "gn-check";
    r["samples"] = a.samples;
    r["C_GN"] = c_gn();
    if (herr) {
        r["herr_min_slack"] = wh;
        ok = ok && wh >= -1e-9;
    }
    if (agueh) {
        r["agueh_min_slack"] = wa;
        ok = ok && wa >= -1e-9;
    }
    if (wein) {
        r["weinstein_eps"] = a.eps;
        r["weinstein_fitted_K"] = kfit;
        if (a.K_eps > 0) {
            r["weinstein_min_slack"] = ww;
            ok = ok && ww >= -1e-9;
        }
    }
    r["passed"] = ok;
    emit(gl, "gn_check.json", r);
    return ok ? 0 : kProperty;
}

struct CoercArgs {
    std::string regime = "4pi";
    std::vector<double> mass;
    int samples = 300, M = 64, nmax = 24;
    double lambda = 1;
    std::uint64_t seed = 42;
};

int run_coercivity(const Globals& gl, const CoercArgs& a) {
    const double pi = std::numbers::pi;
    MassRegime reg;
    std::vector<double> masses = a.mass;
    if (a.regime == "4pi") {
        reg = MassRegime::FourPi;
        if (masses.empty()) masses = {2 * pi, 3 * pi, 3.8 * pi};
    } else if (a.regime == "2pi") {
        reg = MassRegime::TwoPi;
        if (masses.empty()) masses = {1.0 * pi, 1.5 * pi, 1.9 * pi};
    } else {
        throw bad_args("--regime must be 2pi or 4pi");
    }
    TorusGrid grid(a.lambda, a.M, a.nmax);
    ojson rows = ojson::array();
    bool ok = true, monotone = true;
    double prev = -1;
    for (double m : masses) {
        auto c = coercivity_experiment(grid, a.samples, reg, m, a.seed);
        rows.push_back({{"mass", m}, {"used", c.used}, {"max_ratio", c.max_ratio},
                        {"gauge_comparison_min_slack", c.worst_gauge_slack}});
        ok = ok && c.worst_gauge_slack >= -1e-9;
        monotone = monotone && c.max_ratio >= prev;
        prev = c.max_ratio;
    }
    ojson r;
    r["command"] = "coercivity";
    r["regime"] = a.regime;
    r["samples"] = a.samples;
    r["rows"] = rows;
    r["ratio_monotone_in_mass"] = monotone;
    r["passed"] = ok;
    emit(gl, "coercivity.json", r);
    return ok ? 0 : kProperty;
}

struct IllArgs {
    double s = 0, epsilon = 0.1, delta = 0.01, T = 1, dt = 5e-4;
    int max_nmax = 1 << 14;
    bool no_step = false;
};

int run_illposed(const Globals& gl, const IllArgs& a) {
    IllposedOptions o;
    o.dt = a.dt;
    o.max_nmax = a.max_nmax;
    o.step = !a.no_step;
    auto rep = illposedness_demo(a.s, a.epsilon, a.delta, a.T, o);
    ojson r;
    r["command"] = "illposed";
    r["s"] = rep.s;
    r["epsilon"] = rep.epsilon;
    r["delta"] = rep.delta;
    r["T"] = rep.T;
    r["b"] = rep.b;
    r["b_tilde"] = rep.b_tilde;
    r["N"] = rep.N;
    r["t_N"] = rep.t_N;
    r["d0"] = rep.d0;
    r["d0_bound"] = rep.d0_bound;
    r["dT"] = rep.dT;
    r["dT_bound"] = rep.dT_bound;
    r["stepping_error"] = rep.stepping_error >= 0 ? ojson(rep.stepping_error) : ojson();
    r["certified"] = rep.certified;
    const bool ok = rep.certified && (rep.stepping_error < 0 || rep.stepping_error <= 1e-6);
    r["passed"] = ok;
    emit(gl, "illposed.json", r);
    return ok ? 0 : kProperty;
}

struct CountArgs {
    double N1 = 16, N2 = 1, lambda = 1;
    std::string supports = "separated";
    int samples = 0;
    std::uint64_t seed = 1;
};

int run_count(const Globals& gl, const CountArgs& a) {
    Supports sup;
    if (a.supports == "separated") sup = Supports::Separated;
    else if (a.supports == "opposite") sup = Supports::OppositeSides;
    else if (a.supports == "same") sup = Supports::SameSide;
    else throw bad_args("--supports must be separated, opposite or same");
    auto c = bilinear_counting(a.N1, a.N2, a.lambda, a.samples, sup, a.seed);
    ojson r;
    r["command"] = "count-bilinear";
    r["N1"] = c.N1;
    r["N2"] = c.N2;
    r["lambda"] = c.lambda;
    r["supports"] = c.supports;
    r["max_cardinality"] = c.max_cardinality;
    r["bound"] = c.bound;
    r["k_values"] = c.k_values;
    r["exhaustive"] = c.exhaustive;
    r["witness"] = c.witness;
    const bool ok = double(c.max_cardinality) <= c.bound;
    r["passed"] = ok;
    emit(gl, "count_bilinear.json", r);
    return ok ? 0 : kProperty;
}

struct BudgetArgs {
    double s = 0.5, T = 100, gamma = 1.5, kappa = 1;
};

int run_budget(const Globals& gl, const BudgetArgs& a) {
    auto b = growth_budget(a.s, a.T, a.gamma, a.kappa);
    ojson r;
    r["command"] = "budget";
    r["s"] = b.s;
    r["T"] = b.T;
    r["gamma"] = b.gamma;
    r["kappa"] = b.kappa;
    r["N"] = b.N;
    r["lambda"] = b.lambda;
    r["J_min"] = b.J_min;
    r["J_bound"] = b.J_bound;
    r["T_exponent"] = b.T_exponent;
    r["growth_exponent"] = b.growth_exponent;
    r["predicted_growth"] = b.predicted_growth;
    emit(gl, "budget.json", r);
    return 0;
}

int run_selftest(const Globals& gl) {
    auto checks = dnls::run_selftest();
    const std::string text = selftest_json(checks);
    fs::create_directories(gl.out);
    std::ofstream(fs::path(gl.out) / "selftest.json", std::ios::binary) << text;
    std::cout << text;
    for (const auto& c : checks)
        if (!c.passed) return kProperty;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dnls_lab: numerical laboratory for the periodic derivative NLS"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    auto* threads_opt = app.add_option("--threads", gl.threads, "worker threads (0 = library default)");
    app.add_option("--config", gl.config, "flat key=value config file");
    app.add_option("--out", gl.out, "output directory")->capture_default_str();

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "integrate the gauged equation, write CSV and sidecar");
    sim->add_option("--a", sa.a, "amplitude, real part")->capture_default_str();
    sim->add_option("--a-imag", sa.a_imag, "amplitude, imaginary part")->capture_default_str();
    sim->add_option("--N", sa.N, "mode index of the monochromatic datum")->capture_default_str();
    sim->add_option("--lambda", sa.lambda, "torus scale")->capture_default_str();
    sim->add_option("--M", sa.M, "grid nodes")->capture_default_str();
    sim->add_option("--nmax", sa.nmax, "index band (0 = (M-1)/3)")->capture_default_str();
    sim->add_option("--dt", sa.dt)->capture_default_str();
    sim->add_option("--t-end", sa.t_end)->capture_default_str();
    sim->add_option("--beta", sa.beta, "gauge parameter")->capture_default_str();
    sim->add_flag("--drift", sa.drift, "keep the 2 i beta mu w_x term");
    sim->add_option("--diag-stride", sa.diag_stride, "steps between rows (0 = first and last)")->capture_default_str();
    sim->add_option("--init", sa.init, "mono or random")->check(CLI::IsMember({"mono", "random"}))->capture_default_str();
    sim->add_option("--mass", sa.mass, "random datum mass")->capture_default_str();
    sim->add_option("--rate", sa.rate, "random datum exponential rate")->capture_default_str();
    sim->add_option("--band", sa.band, "random datum band")->capture_default_str();
    sim->add_option("--seed", sa.seed)->capture_default_str();
    sim->add_option("--hs", sa.hs, "Sobolev index of the Hs_norm column")->capture_default_str();
    sim->add_option("--symbol-s", sa.symbol_s, "smoothing symbol s (0 = none)")->capture_default_str();
    sim->add_option("--symbol-N", sa.symbol_N, "smoothing symbol N")->capture_default_str();
    sim->add_flag("--modified-energies", sa.modified, "E1, E2, E3 columns (needs --symbol-s)");

    GaugeArgs ga;
    auto* gau = app.add_subcommand("gauge", "gauge round trip and transfer identities on random fields");
    gau->add_option("--beta", ga.betas)->delimiter(',')->capture_default_str();
    gau->add_option("--samples", ga.samples)->capture_default_str();
    gau->add_option("--lambda", ga.lambda)->capture_default_str();
    gau->add_option("--M", ga.M)->capture_default_str();
    gau->add_option("--nmax", ga.nmax)->capture_default_str();
    gau->add_option("--mass", ga.mass)->capture_default_str();
    gau->add_option("--seed", ga.seed)->capture_default_str();

    ScanArgs sc;
    auto* esc = app.add_subcommand("energy-scan", "E3 increments along the flow, or closeness gaps");
    esc->add_option("--mode", sc.mode, "increment or closeness")->capture_default_str();
    esc->add_option("--s", sc.s)->capture_default_str();
    esc->add_option("--N", sc.N)->delimiter(',')->capture_default_str();
    esc->add_option("--t-window", sc.t_window)->capture_default_str();
    esc->add_option("--dt", sc.dt)->capture_default_str();
    esc->add_option("--samples", sc.samples, "E3 evaluations per window")->capture_default_str();
    esc->add_option("--eval-radius", sc.eval_radius)->capture_default_str();
    esc->add_option("--band", sc.band, "seed index band")->capture_default_str();
    esc->add_option("--M", sc.M)->capture_default_str();
    esc->add_option("--lambda", sc.lambda, "closeness mode torus scale")->capture_default_str();
    esc->add_option("--decay", sc.decay, "seed power decay")->capture_default_str();
    esc->add_option("--mass", sc.mass)->capture_default_str();
    esc->add_option("--seed", sc.seed)->capture_default_str();

    BoundsArgs ba;
    auto* bnd = app.add_subcommand("bounds", "pointwise multiplier bound scans");
    bnd->add_option("--lemma", ba.lemma, "bound id or all")->capture_default_str();
    bnd->add_option("--N", ba.N)->delimiter(',')->capture_default_str();
    bnd->add_option("--lambda", ba.lambda, "0 = default box")->capture_default_str();
    bnd->add_option("--index-bound", ba.index_bound, "0 = default box")->capture_default_str();
    bnd->add_option("--s", ba.s)->capture_default_str();
    bnd->add_option("--kind", ba.kind, "smoothstep or kink")->capture_default_str();

    GNArgs gn;
    auto* gnc = app.add_subcommand("gn-check", "Gagliardo-Nirenberg type inequalities on random fields");
    gnc->add_option("--which", gn.which, "herr, agueh, weinstein or all")->capture_default_str();
    gnc->add_option("--samples", gn.samples)->capture_default_str();
    gnc->add_option("--lambda", gn.lambda)->capture_default_str();
    gnc->add_option("--M", gn.M)->capture_default_str();
    gnc->add_option("--nmax", gn.nmax)->capture_default_str();
    gnc->add_option("--delta", gn.delta)->capture_default_str();
    gnc->add_option("--eps", gn.eps)->capture_default_str();
    gnc->add_option("--K-eps", gn.K_eps, "0 = report the fitted constant only")->capture_default_str();
    gnc->add_option("--seed", gn.seed)->capture_default_str();

    CoercArgs co;
    auto* coe = app.add_subcommand("coercivity", "kinetic energy control below the mass thresholds");
    coe->add_option("--regime", co.regime, "2pi or 4pi")->capture_default_str();
    coe->add_option("--mass", co.mass, "masses to scan (default per regime)")->delimiter(',');
    coe->add_option("--samples", co.samples)->capture_default_str();
    coe->add_option("--lambda", co.lambda)->capture_default_str();
    coe->add_option("--M", co.M)->capture_default_str();
    coe->add_option("--nmax", co.nmax)->capture_default_str();
    coe->add_option("--seed", co.seed)->capture_default_str();

    IllArgs ia;
    auto* ill = app.add_subcommand("illposed", "phase separation of two nearby monochromatic solutions");
    ill->add_option("--s", ia.s)->capture_default_str();
    ill->add_option("--epsilon", ia.epsilon)->capture_default_str();
    ill->add_option("--delta", ia.delta)->capture_default_str();
    ill->add_option("--T", ia.T)->capture_default_str();
    ill->add_option("--dt", ia.dt)->capture_default_str();
    ill->add_option("--max-nmax", ia.max_nmax)->capture_default_str();
    ill->add_flag("--no-step", ia.no_step, "skip the time-stepped cross-check");

    CountArgs ca;
    auto* cnt = app.add_subcommand("count-bilinear", "lattice counting behind the bilinear estimate");
    cnt->add_option("--N1", ca.N1)->capture_default_str();
    cnt->add_option("--N2", ca.N2)->capture_default_str();
    cnt->add_option("--lambda", ca.lambda)->capture_default_str();
    cnt->add_option("--supports", ca.supports, "separated, opposite or same")->capture_default_str();
    cnt->add_option("--samples", ca.samples, "sampled k values for large boxes (0 = every k)")->capture_default_str();
    cnt->add_option("--seed", ca.seed)->capture_default_str();

    BudgetArgs bu;
    auto* bud = app.add_subcommand("budget", "parameter arithmetic of the iteration");
    bud->add_option("--s", bu.s)->capture_default_str();
    bud->add_option("--T", bu.T)->capture_default_str();
    bud->add_option("--gamma", bu.gamma)->capture_default_str();
    bud->add_option("--kappa", bu.kappa)->capture_default_str();

    auto* st = app.add_subcommand("selftest", "fast invariant suite; nonzero exit on any failure");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        if (!gl.config.empty()) apply_config(read_config(gl.config), app, chosen);
        if (threads_opt->count() == 0) {
            if (const char* env = std::getenv("DNLS_LAB_THREADS")) {
                try {
                    gl.threads = std::stoi(env);
                } catch (const std::exception&) {
                    throw bad_args("DNLS_LAB_THREADS is not an integer");
                }
            }
        }
        if (gl.threads < 0) throw bad_args("--threads must be nonnegative");
        if (gl.threads > 0) set_threads(gl.threads);

        if (chosen == sim) return run_simulate(gl, sa);
        if (chosen == gau) return run_gauge(gl, ga);
        if (chosen == esc) return run_energy_scan(gl, sc);
        if (chosen == bnd) return run_bounds(gl, ba);
        if (chosen == gnc) return run_gn(gl, gn);
        if (chosen == coe) return run_coercivity(gl, co);
        if (chosen == ill) return run_illposed(gl, ia);
        if (chosen == cnt) return run_count(gl, ca);
        if (chosen == bud) return run_budget(gl, bu);
        if (chosen == st) return run_selftest(gl);
    } catch (const bad_args& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const assumption_refused& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kBadArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const guard_exceeded& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kGuard;
    } catch (const property_failure& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return kProperty;
    } catch (const integration_failure& e) {
        std::cerr << "integration failure at t = " << e.t << ": " << e.what() << "\n";
        return kProperty;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
