// One line per acceptance criterion. Exit status is nonzero if any fails.
// argv[1], if given, is the dnls_lab executable used for the determinism check.

#include "dnls/energies.hpp"
#include "dnls/experiments.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/multilinear.hpp"
#include "dnls/multipliers.hpp"
#include "dnls/selftest.hpp"
#include "dnls/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace dnls;
namespace fs = std::filesystem;

namespace {

const cplx I1(0, 1);
int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
    return norm(a - b, NormKind::L2()) / norm(b, NormKind::L2());
}

SpectralField smooth(const TorusGrid& g, std::uint64_t seed, double m) {
    Rng rng(seed);
    RandomProfile p;
    p.kind = RandomProfile::Exponential;
    p.rate = 0.8 * g.lambda;
    p.band = g.nmax;
    p.mass = m;
    return random_field(g, rng, p);
}

// a e^{i(Nx - N^2 t - |a|^2 N t)} sampled on the nodes, then transformed
SpectralField travelling_wave(const TorusGrid& g, cplx a, int N, double t) {
    std::vector<cplx> u(g.M);
    const double L = g.length();
    for (int j = 0; j < g.M; ++j) {
        const double x = L * j / g.M;
        u[j] = a * std::exp(I1 * (N * x - double(N) * N * t - std::norm(a) * N * t));
    }
    return from_nodes(u, g);
}

void exact_solution() {
    const auto t0 = std::chrono::steady_clock::now();
    TorusGrid g(1, 64, 21);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1;
    auto tr = integrate(single_mode(g, 2, 1.0), cfg);
    const double err = rel_l2(tr.final_state, travelling_wave(g, 1.0, 2, 1.0));
    const double secs = seconds_since(t0);
    report(1, err <= 1e-8 && secs < 10, "exact solution", fmt("rel L2 error %.2e (<= 1e-8), %.2f s (< 10 s)", err, secs));
}

void gauge_transfer() {
    double trip = 0, transfer = 0;
    int fields = 0;
    for (int i = 0; i < 100; ++i) {
        TorusGrid g(i % 2 ? 2.0 : 1.0, 128, 63);
        auto w = smooth(g, 1000 + i, 0.5 + 0.05 * i);
        ++fields;
        for (double beta : {-0.25, 0.5, 0.75, 1.0}) {
            trip = std::max(trip, rel_l2(gauge_apply(gauge_apply(w, beta), -beta), w));
            const double Eb = energy_beta(w, beta);
            transfer = std::max(transfer, std::abs(energy(gauge_apply(w, -beta)) - Eb) / (1 + std::abs(Eb)));
        }
    }
    report(2, trip <= 1e-10 && transfer <= 1e-8, "gauge round trip and energy transfer",
           fmt("%d fields x 4 betas: round trip %.2e (<= 1e-10), transfer %.2e (<= 1e-8)", fields, trip, transfer));
}

void conservation() {
    double dm = 0, de = 0, dp = 0, dmean = 0;
    TorusGrid g(1, 64, 21);
    for (std::uint64_t seed : {5, 6, 7}) {
        SolverConfig cfg;
        cfg.diag_stride = 50;
        auto tr = integrate(smooth(g, seed, 1.0), cfg);
        const auto& r0 = tr.rows.front();
        for (const auto& r : tr.rows) {
            dm = std::max(dm, std::abs(r.mass - r0.mass) / r0.mass);
            de = std::max(de, std::abs(r.energy - r0.energy) / std::abs(r0.energy));
            dp = std::max(dp, std::abs(r.momentum - r0.momentum) / std::abs(r0.momentum));
        }
        SolverConfig c0;
        c0.beta = 0;
        c0.diag_stride = 100;
        c0.keep_states = true;
        auto u0 = smooth(g, seed + 10, 0.8);
        auto tu = integrate(u0, c0);
        for (const auto& u : tu.states) dmean = std::max(dmean, std::abs(u[0] - u0[0]) / std::abs(u0[0]));
    }
    report(3, dm <= 1e-9 && de <= 1e-7 && dp <= 1e-7 && dmean <= 1e-9, "conservation over [0, 1]",
           fmt("mass %.1e (<= 1e-9), E %.1e, P %.1e (<= 1e-7), DNLS mean %.1e (<= 1e-9)", dm, de, dp, dmean));
}

void modulation() {
    Rng rng(31);
    std::uniform_int_distribution<int> shift(-16, 16);
    std::uniform_real_distribution<double> dec(1.0, 2.5);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        TorusGrid g(1 + i % 3, 128, 63);
        RandomProfile p;
        p.band = 40;
        p.decay = dec(rng);
        p.mass = 0.2 + 0.01 * (i % 200);
        auto f = random_field(g, rng, p);
        const int s = shift(rng);
        const double expect = -g.k(s) * mass(f);
        const double d = momentum_beta(modulate(f, s), 0.75) - momentum_beta(f, 0.75);
        worst = std::max(worst, s == 0 ? std::abs(d) : std::abs(d - expect) / std::abs(expect));
    }
    report(4, worst <= 1e-9, "modulation identity", fmt("1000 pairs, worst relative defect %.2e (<= 1e-9)", worst));
}

void multiplier_algebra() {
    MultiplierSet ms(ISymbol(0.8, 8, Interpolant::Smoothstep), 2);
    double w1 = 0, w2 = 0, raw1 = 0;
    long n4 = 0;
    auto relgap = [](cplx a, cplx b) {
        const double s = std::max(std::abs(a), std::abs(b));
        return s > 0 ? std::abs(a + b) / s : 0.0;
    };
    enumerate_gamma(4, 24, [&](const FrequencyTuple& t) {
        const double k12 = t.k(0) + t.k(1), k14 = t.k(0) + t.k(3);
        if (t.idx[0] + t.idx[1] == 0 || t.idx[0] + t.idx[3] == 0) return;
        const cplx a4 = -2.0 * I1 * k12 * k14;
        auto k = t.values();
        ++n4;
        // both sides are sums of terms far larger than the result, so the
        // gap is measured against the largest summand
        double cubic = 0, square = 0;
        for (int j = 0; j < 4; ++j) {
            const double mj = ms.m(k[j]);
            cubic = std::max(cubic, mj * mj * k[j] * k[j] * std::abs(k[(j + 2) % 4]));
            square = std::max(square, mj * mj * k[j] * k[j]);
        }
        cubic = std::max(cubic, std::abs(ms.m(k[0]) * ms.m(k[1]) * ms.m(k[2]) * ms.m(k[3]) * k12 * k14 * (k[0] + k[2])));
        const cplx M = ms.M4_1(k.data()), sM = ms.sigma4(k.data()) * a4;
        const cplx K = ms.K4_1(k.data()), sK = -ms.sigma4_tilde(k.data()) * a4;
        raw1 = std::max(raw1, relgap(M, sM));
        w1 = std::max(w1, std::abs(M + sM) / std::max({std::abs(M), std::abs(sM), cubic}));
        w2 = std::max(w2, std::abs(K + sK) / std::max({std::abs(K), std::abs(sK), square}));
    }, 2);

    double w3 = 0;
    long n6 = 0;
    for (double lam : {1.0, 4.0}) {
        MultiplierSet m6(ISymbol(0.8, 4 / lam, Interpolant::Smoothstep), lam);
        enumerate_gamma(6, 10, [&](const FrequencyTuple& t) {
            auto k = t.values();
            if (m6.omega(k.data()) == OmegaRegion::Complement) return;
            double d = 0;
            for (int j = 0; j < 6; ++j) d += (j % 2 ? -1 : 1) * k[j] * k[j];
            ++n6;
            w3 = std::max(w3, relgap(m6.M6_2(k.data()), m6.sigma6(k.data()) * (-I1 * d)));
        }, lam);
    }

    double cons = 0;
    for (double lam : {1.0, 2.0}) {
        TorusGrid g(lam, 64, 12);
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            Rng rng(seed * 7 + std::uint64_t(lam));
            RandomProfile p;
            p.band = 12;
            p.decay = 0.6;
            p.mass = 1.5;
            auto v = random_field(g, rng, p);
            auto sym = build_symbol(0.6, 4, g);
            MultiplierSet mm(sym.m, lam);
            auto Iv = apply_I(v, sym);
            const cplx lhs = essential_energy(Iv) + lambda_form(mm.get("sigma4"), v);
            const cplx rhs = -lambda2_k1k2(Iv) + 0.5 * lambda_form(mm.get("M4"), v);
            cons = std::max(cons, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    const bool ok = w1 <= 1e-12 && w2 <= 1e-12 && w3 <= 1e-12 && cons <= 1e-9 && n6 > 0;
    report(5, ok, "multiplier algebra",
           fmt("Gamma4 box 24 (%ld off-resonant): M4_1 %.1e, K4_1 %.1e; Gamma6 box 10 on Omega (%ld): M6_2 %.1e "
               "(<= 1e-12); E2 consolidation %.1e (<= 1e-9); M4_1 gap over |M4_1| alone %.1e",
               n4, w1, w2, n6, w3, cons, raw1));
}

void bound_stability() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    std::string worst;
    double wq = 0;
    int n = 0;
    for (const auto& id : bound_ids()) {
        auto s8 = default_scan(id, 8), s32 = default_scan(id, 32);
        auto a = verify_bound(id, 8, s8.lambda, OmegaParams{}, s8.index_bound);
        auto b = verify_bound(id, 32, s32.lambda, OmegaParams{}, s32.index_bound);
        ++n;
        const double q = a.max_ratio > 0 ? b.max_ratio / a.max_ratio : (b.max_ratio > 0 ? INFINITY : 0);
        if (!(b.max_ratio <= 2 * a.max_ratio)) bad.push_back(fmt("%s %.3g -> %.3g", id.c_str(), a.max_ratio, b.max_ratio));
        if (q > wq) {
            wq = q;
            worst = id;
        }
    }
    const double secs = seconds_since(t0);
    std::string detail = fmt("%d ids, %.0f s (< 300 s), largest growth %s x%.2f", n, secs, worst.c_str(), wq);
    for (const auto& s : bad) detail += "; exceeds 2x: " + s;
    report(6, bad.empty() && secs < 300, "pointwise bound stability N = 8 vs 32", detail);
}

void resonance() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::int64_t> k(-1000000, 1000000);
    std::uniform_int_distribution<std::int64_t> tau(-1000000000000LL, 1000000000000LL);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t k1 = k(rng), k2 = k(rng), k3 = k(rng), k4 = -k1 - k2 - k3;
        const std::int64_t t1 = tau(rng), t2 = tau(rng), t3 = tau(rng), t4 = -t1 - t2 - t3;
        const std::int64_t w = (t1 + k1 * k1) + (t2 - k2 * k2) + (t3 + k3 * k3) + (t4 - k4 * k4);
        const bool direct = w == 2 * (k1 + k2) * (k1 + k4);
        const bool lib = modulation_sum_check(FrequencyTuple{int(k1), int(k2), int(k3), int(k4)}, {t1, t2, t3, t4});
        bad += !(direct && lib);
    }
    report(7, bad == 0, "resonance identity", fmt("10^4 fuzzed Gamma4 tuples, direct and library routes, %d mismatches", bad));
}

void closeness() {
    const int band = 80;
    TorusGrid g(1, 4 * band, band);
    Rng rng(17);
    RandomProfile p;
    p.band = band;
    p.decay = 1.0;
    p.mass = 1.0;
    auto f = random_field(g, rng, p);
    LambdaOptions lo;
    lo.max_modes_low = 2 * band + 1;
    std::vector<double> Ns{8, 16, 32, 64}, er, mr, eg, mg;
    std::string rows;
    for (double N : Ns) {
        auto c = closeness_check(f, build_symbol(0.5, N, g), {}, lo);
        er.push_back(c.energy_ratio);
        mr.push_back(c.momentum_ratio);
        eg.push_back(c.energy_gap);
        mg.push_back(c.momentum_gap);
        rows += fmt(" N=%g:%.2e/%.2e", N, c.energy_ratio, c.momentum_ratio);
    }
    const double se = loglog_slope(Ns, er), sp = loglog_slope(Ns, mr);
    const bool all_positive = std::all_of(er.begin(), er.end(), [](double x) { return x > 0; }) &&
                              std::all_of(mr.begin(), mr.end(), [](double x) { return x > 0; });
    report(8, all_positive && se <= -0.8 && sp <= -0.8, "closeness scaling",
           fmt("normalized slopes energy %.2f, momentum %.2f (<= -0.8);", se, sp) + rows +
               fmt("; unnormalized gap slopes %.2f, %.2f", loglog_slope(Ns, eg), loglog_slope(Ns, mg)));
}

void almost_conservation() {
    TorusGrid g(1, 128, 32);
    Rng rng(17);
    RandomProfile p;
    p.band = 32;
    p.decay = 1.0;
    p.mass = 2;
    auto seed = random_field(g, rng, p);
    auto scan = almost_conservation_scan(seed, 0.5, {8, 16, 32}, 1.0);
    std::string rows;
    int active = 0;
    for (const auto& r : scan.rows) {
        rows += fmt(" N=%g:%.2e", r.N, r.sup_increment);
        active += r.corrections_active;
    }
    report(9, scan.fitted_slope <= -1.0, "almost conservation decay",
           fmt("slope %.2f (<= -1.0);", scan.fitted_slope) + rows +
               fmt("; evaluation band %d, corrections active in %d of %zu rows", scan.eval_radius, active,
                   scan.rows.size()));
}

void gn() {
    Rng rng(2718);
    std::uniform_real_distribution<double> dec(0.5, 3.0), ms(0.05, 15.0), del(0.05, 5.0);
    double herr = INFINITY, agueh = INFINITY;
    for (int i = 0; i < 10000; ++i) {
        TorusGrid g(1 + i % 4, 64, 24);
        RandomProfile p;
        p.band = 24;
        p.decay = dec(rng);
        p.mass = ms(rng);
        auto f = random_field(g, rng, p);
        herr = std::min(herr, gn_check(f, GNKind::Herr).slack);
        GNParams gp;
        gp.delta = del(rng);
        agueh = std::min(agueh, gn_check(f, GNKind::AguehTorus, gp).slack);
    }
    const double cgn = std::exp(std::log(3.0) / 6 - std::log(2 * std::numbers::pi) / 9);
    const bool ok = herr >= -1e-9 && agueh >= -1e-9 && std::abs(c_gn() - cgn) < 1e-14;
    report(10, ok, "Gagliardo-Nirenberg inequalities",
           fmt("10^4 fields: Herr min slack %.2e, Agueh min slack %.2e (>= -1e-9), C_GN %.6f (log-domain route %.6f)", herr, agueh,
               c_gn(), cgn));
}

void illposed() {
    const double s = 0, eps = 0.1, delta = 0.01, T = 1;
    // smallest N with N^{1-2s}(b^2 - b~^2) >= 2 pi / T
    const double gap = eps * eps - (eps - delta) * (eps - delta);
    const auto N_expect = std::int64_t(std::ceil(2 * std::numbers::pi / T / gap - 1e-12));
    auto r = illposedness_demo(s, eps, delta, T);
    const double root = std::sqrt(2 * std::numbers::pi);
    const bool ok = r.N == N_expect && r.d0 <= 2 * delta * root && r.dT >= 0.5 * eps * root && r.certified &&
                    r.stepping_error >= 0 && r.stepping_error <= 1e-6;
    report(11, ok, "ill-posedness demo",
           fmt("N %lld (expected %lld), d0 %.4f (<= %.4f), d(t_N) %.4f (>= %.4f), stepped vs analytic %.1e (<= 1e-6)",
               (long long)r.N, (long long)N_expect, r.d0, 2 * delta * root, r.dT, 0.5 * eps * root,
               r.stepping_error));
}

void bilinear() {
    bool ok = true;
    int runs = 0;
    std::int64_t worst = 0;
    std::string detail;
    for (double lam : {1.0, 16.0, 64.0})
        for (double N1 : {16.0, 64.0, 256.0}) {
            for (auto sup : {Supports::Separated, Supports::OppositeSides}) {
                const double N2 = sup == Supports::Separated ? N1 / 16 : N1;
                auto c = bilinear_counting(N1, N2, lam, 0, sup);
                ++runs;
                worst = std::max(worst, c.max_cardinality);
                if (!c.exhaustive || double(c.max_cardinality) > c.bound) {
                    ok = false;
                    detail += fmt("; %s N1=%g lambda=%g: %lld > %.2f", c.supports.c_str(), N1, lam,
                                  (long long)c.max_cardinality, c.bound);
                }
            }
        }
    bool refused = false;
    std::string why;
    try {
        bilinear_counting(64, 64, 16, 0, Supports::SameSide);
    } catch (const assumption_refused& e) {
        refused = true;
        why = e.what();
    }
    ok = ok && refused;
    report(12, ok, "bilinear counting",
           fmt("%d exhaustive runs, largest count %lld, bound 8(1 + lambda/N1); same-side %s", runs,
               (long long)worst, refused ? "refused" : "NOT refused") +
               detail);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void determinism(const char* cli) {
    if (!cli) {
        const auto a = selftest_json(run_selftest()), b = selftest_json(run_selftest());
        report(13, a == b, "selftest determinism", "in-process runs (no executable given)");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / ("dnls_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    int codes[2];
    std::string files[2], outs[2];
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / ("run" + std::to_string(i));
        const auto log = dir / ("stdout" + std::to_string(i));
        const std::string cmd = "\"" + std::string(cli) + "\" selftest --out \"" + out.string() + "\" > \"" +
                                log.string() + "\"";
        codes[i] = std::system(cmd.c_str());
        files[i] = slurp(out / "selftest.json");
        outs[i] = slurp(log);
    }
    fs::remove_all(dir);
    const bool same = !files[0].empty() && files[0] == files[1] && outs[0] == outs[1];
    report(13, same && codes[0] == 0 && codes[1] == 0, "selftest determinism",
           fmt("two runs: report %s (%zu bytes), exit codes %d %d", same ? "byte-identical" : "DIFFERS",
               files[0].size(), codes[0], codes[1]));
}

} // namespace

int main(int argc, char** argv) {
    exact_solution();
    gauge_transfer();
    conservation();
    modulation();
    multiplier_algebra();
    bound_stability();
    resonance();
    closeness();
    almost_conservation();
    gn();
    illposed();
    bilinear();
    determinism(argc > 1 ? argv[1] : nullptr);
    std::printf("%d of 13 criteria passed\n", 13 - failures);
    return failures == 0 ? 0 : 1;
}
