#include "dnls/selftest.hpp"

#include "dnls/experiments.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/multilinear.hpp"
#include "dnls/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

namespace dnls {

namespace {

SpectralField smooth(const TorusGrid& g, std::uint64_t seed, double m) {
    Rng rng(seed);
    RandomProfile p;
    p.kind = RandomProfile::Exponential;
    p.rate = 0.8 * g.lambda;
    p.band = g.nmax;
    p.mass = m;
    return random_field(g, rng, p);
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
    return norm(a - b, NormKind::L2()) / norm(b, NormKind::L2());
}

SelfCheck at_most(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

} // namespace

std::vector<SelfCheck> run_selftest() {
    std::vector<SelfCheck> out;

    {
        TorusGrid g(1, 64, 21);
        SolverConfig cfg;
        auto tr = integrate(single_mode(g, 2, 1.0), cfg);
        out.push_back(at_most("exact_monochromatic_solution", rel_l2(tr.final_state, exact_monochromatic(1.0, 2, 1, 1, g)),
                              1e-8, "a = 1, n = 2, dt = 1e-3, t = 1"));
    }

    {
        TorusGrid g(1, 128, 63);
        double trip = 0, transfer = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto w = smooth(g, seed, 1.0 + 0.2 * double(seed % 5));
            for (double beta : {-0.25, 0.5, 0.75, 1.0}) {
                trip = std::max(trip, rel_l2(gauge_apply(gauge_apply(w, beta), -beta), w));
                auto u = gauge_apply(w, -beta);
                const double Eb = energy_beta(w, beta), Pb = momentum_beta(w, beta);
                transfer = std::max({transfer, std::abs(energy(u) - Eb) / (1 + std::abs(Eb)),
                                     std::abs(momentum(u) - Pb) / (1 + std::abs(Pb))});
            }
        }
        out.push_back(at_most("gauge_round_trip", trip, 1e-10));
        out.push_back(at_most("gauge_transfer", transfer, 1e-8));
    }

    {
        TorusGrid g(1, 64, 21);
        SolverConfig cfg;
        cfg.diag_stride = 250;
        auto tr = integrate(smooth(g, 5, 1.0), cfg);
        double dm = 0, de = 0;
        const auto& r0 = tr.rows.front();
        for (const auto& r : tr.rows) {
            dm = std::max(dm, std::abs(r.mass - r0.mass) / r0.mass);
            de = std::max({de, std::abs(r.energy - r0.energy) / std::abs(r0.energy),
                           std::abs(r.momentum - r0.momentum) / std::abs(r0.momentum)});
        }
        out.push_back(at_most("mass_drift", dm, 1e-9));
        out.push_back(at_most("energy_momentum_drift", de, 1e-7));
        cfg.beta = 0;
        auto u0 = smooth(g, 8, 0.8);
        auto tu = integrate(u0, cfg);
        out.push_back(at_most("dnls_mean_drift", std::abs(tu.final_state[0] - u0[0]) / std::abs(u0[0]), 1e-9));
    }

    {
        TorusGrid g(2, 128, 63);
        Rng rng(9);
        std::uniform_int_distribution<int> shift(-12, 12);
        RandomProfile p;
        p.band = 40;
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            auto f = random_field(g, rng, p);
            const int s = shift(rng);
            const double aM = g.k(s) * mass(f);
            const double d = momentum_beta(modulate(f, s), 0.75) - momentum_beta(f, 0.75);
            worst = std::max(worst, std::abs(d + aM) / (1 + std::abs(aM)));
        }
        out.push_back(at_most("modulation_identity", worst, 1e-9));
    }

    {
        MultiplierSet ms(ISymbol(0.8, 8, Interpolant::Smoothstep), 2);
        double w4 = 0, w6 = 0;
        enumerate_gamma(4, 12, [&](const FrequencyTuple& t) {
            if (alpha_scaled(t) == 0) return;
            auto k = t.values();
            const cplx a4 = alpha(t);
            const cplx M = ms.M4_1(k.data()), K = ms.K4_1(k.data());
            w4 = std::max({w4, std::abs(M + ms.sigma4(k.data()) * a4) / std::max(1.0, std::abs(M)),
                           std::abs(K - ms.sigma4_tilde(k.data()) * a4) / std::max(1.0, std::abs(K))});
        }, 2);
        MultiplierSet m6(ISymbol(0.8, 1, Interpolant::Smoothstep), 1);
        enumerate_gamma(6, 6, [&](const FrequencyTuple& t) {
            auto k = t.values();
            if (m6.omega(k.data()) == OmegaRegion::Complement) return;
            const cplx M = m6.M6_2(k.data());
            w6 = std::max(w6, std::abs(M + m6.sigma6(k.data()) * alpha(t)) / std::max(1.0, std::abs(M)));
        });
        out.push_back(at_most("quartic_cancellations", w4, 1e-12, "index bound 12"));
        out.push_back(at_most("sextic_cancellation", w6, 1e-12, "index bound 6"));
    }

    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> d(-1000, 1000);
        std::uniform_int_distribution<std::int64_t> tau(-1000000, 1000000);
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const int a = d(rng), b = d(rng), c = d(rng);
            const std::int64_t t1 = tau(rng), t2 = tau(rng), t3 = tau(rng);
            bad += !modulation_sum_check(FrequencyTuple{a, b, c, -a - b - c}, {t1, t2, t3, -t1 - t2 - t3});
        }
        out.push_back(at_most("resonance_identity_failures", bad, 0));
    }

    {
        Rng rng(12);
        TorusGrid g(1, 64, 24);
        double herr = 0, agueh = 0;
        for (int i = 0; i < 200; ++i) {
            RandomProfile p;
            p.band = 24;
            p.decay = 0.5 + 0.01 * i;
            p.mass = 0.1 + 0.05 * i;
            auto f = random_field(g, rng, p);
            herr = std::min(herr, gn_check(f, GNKind::Herr).slack);
            GNParams gp;
            gp.delta = 0.2 + 0.01 * i;
            agueh = std::min(agueh, gn_check(f, GNKind::AguehTorus, gp).slack);
        }
        out.push_back(at_most("herr_negative_slack", -herr, 1e-9));
        out.push_back(at_most("agueh_negative_slack", -agueh, 1e-9));
    }

    {
        const auto N = illposed_frequency(0, 0.1, 0.09, 1);
        out.push_back({"illposed_frequency", N == 3307, double(N), 3307, "s = 0, eps = 0.1, delta = 0.01, T = 1"});
        auto r = illposedness_demo(0, 0.5, 0.2, 1);
        out.push_back(at_most("illposed_small_demo_stepping", r.stepping_error, 1e-6,
                              r.certified ? "certified" : "not certified"));
        out.back().passed = out.back().passed && r.certified;
    }

    {
        auto c = bilinear_counting(16, 1, 4, 0);
        out.push_back(at_most("bilinear_count", double(c.max_cardinality), c.bound, "N1 = 16, N2 = 1, lambda = 4"));
        bool refused = false;
        try {
            bilinear_counting(16, 16, 4, 0, Supports::SameSide);
        } catch (const assumption_refused&) {
            refused = true;
        }
        out.push_back({"bilinear_same_side_refused", refused, refused ? 1.0 : 0.0, 1, {}});
    }

    {
        auto b = growth_budget(0.5, 100);
        const bool ok = b.N == 16384 && b.lambda == b.N && b.growth_exponent == 1.0;
        out.push_back({"budget_half", ok, b.N, 16384, "s = 1/2, T = 100"});
    }

    {
        TorusGrid g(1, 64, 21);
        bool mono = true;
        try {
            build_symbol(0.5, 4, g);
        } catch (const symbol_violation&) {
            mono = false;
        }
        out.push_back({"symbol_monotone", mono, mono ? 1.0 : 0.0, 1, {}});
    }

    return out;
}

std::string selftest_json(const std::vector<SelfCheck>& checks) {
    nlohmann::ordered_json j;
    j["suite"] = "selftest";
    int failed = 0;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        failed += !c.passed;
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["value"] = c.value;
        e["threshold"] = c.threshold;
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["passed"] = int(checks.size()) - failed;
    j["failed"] = failed;
    return j.dump(2) + "\n";
}

} // namespace dnls
