#include "doctest.h"
#include "dnls/fields.hpp"
#include "dnls/multilinear.hpp"
#include "dnls/multipliers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <json.hpp>

using namespace dnls;

namespace {

const cplx I(0, 1);

// N far above every frequency used, so m == 1 on the box
MultiplierSet flat(double lambda = 1) { return MultiplierSet(ISymbol(0.5, 1 << 20, Interpolant::Smoothstep), lambda); }
MultiplierSet smooth(double N, double lambda) {
    return MultiplierSet(ISymbol(0.8, N, Interpolant::Smoothstep), lambda);
}

double disp(const double* k, int n) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += (j % 2 ? -1 : 1) * k[j] * k[j];
    return s;
}

// permutation sums written out directly
cplx M6_direct(const MultiplierSet& ms, const double* k) {
    auto M4 = [&](double a, double b, double c, double d) {
        const double x[4] = {a, b, c, d};
        return ms.M4(x);
    };
    double first = 0;
    for (int j = 0; j < 6; ++j) {
        const double mj = ms.m(k[j]);
        first += (j % 2 ? 1 : -1) * mj * mj * k[j] * k[j];
    }
    std::array<int, 3> po{0, 1, 2};
    cplx acc = 0;
    do {
        std::array<int, 3> pe{0, 1, 2};
        do {
            const double a = k[2 * po[0]], c = k[2 * po[1]], e = k[2 * po[2]];
            const double b = k[2 * pe[0] + 1], d = k[2 * pe[1] + 1], f = k[2 * pe[2] + 1];
            acc += M4(a + b + c, d, e, f) * b + M4(a, b + c + d, e, f) * c + M4(a, b, c + d + e, f) * d +
                   M4(a, b, c, d + e + f) * e;
        } while (std::next_permutation(pe.begin(), pe.end()));
    } while (std::next_permutation(po.begin(), po.end()));
    return I / 6.0 * first - I / 72.0 * acc;
}

cplx M8_direct(const MultiplierSet& ms, const double* k) {
    auto M4 = [&](double a, double b, double c, double d) {
        const double x[4] = {a, b, c, d};
        return ms.M4(x);
    };
    std::array<int, 4> po{0, 1, 2, 3};
    cplx acc = 0;
    do {
        std::array<int, 4> pe{0, 1, 2, 3};
        do {
            const double a = k[2 * po[0]], c = k[2 * po[1]], e = k[2 * po[2]], g = k[2 * po[3]];
            const double b = k[2 * pe[0] + 1], d = k[2 * pe[1] + 1], f = k[2 * pe[2] + 1], h = k[2 * pe[3] + 1];
            acc += M4(a + b + c + d + e, f, g, h) - M4(a, b + c + d + e + f, g, h) + M4(a, b, c + d + e + f + g, h) -
                   M4(a, b, c, d + e + f + g + h);
        } while (std::next_permutation(pe.begin(), pe.end()));
    } while (std::next_permutation(po.begin(), po.end()));
    return I / (4.0 * 576) * acc;
}

// (1/4) sum_j (-1)^{j+1} X_j^2(k13 m1 m2 m3 m4), averaged over parity permutations
cplx K61_direct(const MultiplierSet& ms, const double* k) {
    auto Q = [&](double a, double b, double c, double d) { return (a + c) * ms.m(a) * ms.m(b) * ms.m(c) * ms.m(d); };
    std::array<int, 3> po{0, 1, 2};
    double acc = 0;
    do {
        std::array<int, 3> pe{0, 1, 2};
        do {
            const double a = k[2 * po[0]], c = k[2 * po[1]], e = k[2 * po[2]];
            const double b = k[2 * pe[0] + 1], d = k[2 * pe[1] + 1], f = k[2 * pe[2] + 1];
            acc += Q(a + b + c, d, e, f) - Q(a, b + c + d, e, f) + Q(a, b, c + d + e, f) - Q(a, b, c, d + e + f);
        } while (std::next_permutation(pe.begin(), pe.end()));
    } while (std::next_permutation(po.begin(), po.end()));
    return acc / (4.0 * 36);
}

// random zero-sum tuple, k = idx / lambda
void random_tuple(std::mt19937& rng, int n, int B, double lambda, double* k) {
    std::uniform_int_distribution<int> d(-B, B);
    int s = 0;
    for (int j = 0; j < n - 1; ++j) {
        const int a = d(rng);
        s += a;
        k[j] = a / lambda;
    }
    k[n - 1] = -s / lambda;
}

SpectralField rough(const TorusGrid& g, std::uint64_t seed, int band) {
    Rng rng(seed);
    RandomProfile p;
    p.decay = 0.6;
    p.band = band;
    p.mass = 2.0;
    return random_field(g, rng, p);
}

} // namespace

TEST_CASE("quartic multiplier at a hand tuple") {
    auto ms = flat();
    const double k[4] = {3, -1, -1, -1};
    // B = 9(-1) + 1(-1) + 1(3) + 1(-1) = -8, k12 k14 = 4
    CHECK(ms.M4(k) == cplx(1));
    CHECK(std::abs(ms.sigma4(k) - cplx(-0.25 * (2 - 8.0 / 4))) < 1e-15);
    const double z[4] = {0, 0, 0, 0};
    CHECK(ms.M4(z) == cplx(0));
    CHECK(ms.M4_1(z) == cplx(0));
}

TEST_CASE("resonant quartic convention") {
    auto ms = flat();
    // k14 = 0 and k12 = 0: sigma4 vanishes, M4 keeps the product piece
    const double a[4] = {2, -1, 1, -2}, b[4] = {2, -2, 1, -1};
    CHECK(ms.sigma4(a) == cplx(0));
    CHECK(ms.sigma4(b) == cplx(0));
    CHECK(ms.M4(a) == cplx(1.5));
    CHECK(ms.M4(b) == cplx(1.5));
    // M4 = 2 sigma4 + m1 m2 m3 m4 k13 / 2 on every tuple
    auto sm = smooth(8, 2);
    double worst = 0;
    enumerate_gamma(4, 24, [&](const FrequencyTuple& t) {
        auto k = t.values();
        double pm = 1;
        for (int j = 0; j < 4; ++j) pm *= sm.m(k[j]);
        const cplx rhs = 2.0 * sm.sigma4(k.data()) + 0.5 * pm * (k[0] + k[2]);
        worst = std::max(worst, std::abs(sm.M4(k.data()) - rhs) / (1 + std::abs(rhs)));
    }, 2);
    CHECK(worst < 1e-12);
}

TEST_CASE("quartic cancellations, exhaustive") {
    auto ms = smooth(8, 2);
    double w1 = 0, w2 = 0;
    long off = 0;
    enumerate_gamma(4, 24, [&](const FrequencyTuple& t) {
        auto k = t.values();
        const cplx a4 = alpha(t);
        if (alpha_scaled(t) == 0) {
            CHECK(ms.K4_1(k.data()) == cplx(0));
            return;
        }
        ++off;
        const cplx M = ms.M4_1(k.data()), K = ms.K4_1(k.data());
        w1 = std::max(w1, std::abs(M + ms.sigma4(k.data()) * a4) / std::max(1.0, std::abs(M)));
        w2 = std::max(w2, std::abs(K - ms.sigma4_tilde(k.data()) * a4) / std::max(1.0, std::abs(K)));
    }, 2);
    CHECK(off > 50000);
    CHECK(w1 < 1e-12);
    CHECK(w2 < 1e-12);
}

TEST_CASE("quadratic-correction numerator with a flat symbol") {
    auto ms = flat(1.5);
    std::mt19937 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        double k[4];
        random_tuple(rng, 4, 30, 1.5, k);
        // flat symbol: K4_1 is minus half the dispersion, i.e. -(i/2) alpha4
        CHECK(std::abs(ms.K4_1(k) + 0.5 * I * (-I * disp(k, 4))) < 1e-9);
    }
    for (double Nn : {8.0, 32.0}) {
        auto sm = smooth(Nn, 1);
        for (int K1 : {40, 64, 200}) {
            const double k[4] = {double(K1), 0, double(-K1), 0};
            const double m = sm.m(K1);
            CHECK(std::abs(sm.sigma4_tilde(k) - (-I * m * m / 2.0)) < 1e-14);
        }
    }
}

TEST_CASE("sextic and octic closed forms against the elongation sums") {
    auto ms = smooth(8, 2);
    std::mt19937 rng(7);
    double w6 = 0, w8 = 0;
    for (int trial = 0; trial < 150; ++trial) {
        double k[8];
        random_tuple(rng, 6, 48, 2, k);
        const cplx d6 = M6_direct(ms, k);
        w6 = std::max(w6, std::abs(ms.M6_2(k) - d6) / (1 + std::abs(d6)));
        const cplx k6 = K61_direct(ms, k);
        w6 = std::max(w6, std::abs(ms.K6_1(k) - k6) / (1 + std::abs(k6)));
        random_tuple(rng, 8, 40, 2, k);
        const cplx d8 = M8_direct(ms, k);
        w8 = std::max(w8, std::abs(ms.M8_2(k) - d8) / (1e-6 + std::abs(d8)));
    }
    CHECK(w6 < 1e-10);
    CHECK(w8 < 1e-9);
}

TEST_CASE("flat symbol kills the higher multipliers") {
    auto ms = flat();
    double worst = 0;
    enumerate_gamma(6, 6, [&](const FrequencyTuple& t) {
        auto k = t.values();
        worst = std::max({worst, std::abs(ms.M6_2(k.data())), std::abs(ms.K6_1(k.data()))});
    });
    CHECK(worst < 1e-11);
    std::mt19937 rng(3);
    double w8 = 0;
    for (int trial = 0; trial < 300; ++trial) {
        double k[8];
        random_tuple(rng, 8, 12, 1, k);
        w8 = std::max(w8, std::abs(ms.M8_2(k)));
    }
    CHECK(w8 < 1e-11);
    // and a smooth symbol below its threshold
    auto sm = smooth(64, 1);
    double w = 0;
    for (int trial = 0; trial < 300; ++trial) {
        double k[8];
        random_tuple(rng, 6, 15, 1, k);
        w = std::max(w, std::abs(sm.M6_2(k)));
    }
    CHECK(w < 1e-10);
}

TEST_CASE("symmetrized multipliers ignore slot order within a parity class") {
    auto ms = smooth(8, 1);
    std::mt19937 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        double k[8], p[8];
        random_tuple(rng, 6, 30, 1, k);
        std::copy(k, k + 6, p);
        std::swap(p[0], p[4]);
        std::swap(p[1], p[3]);
        CHECK(std::abs(ms.M6_2(k) - ms.M6_2(p)) <= 1e-10 * (1 + std::abs(ms.M6_2(k))));
        CHECK(std::abs(ms.K6_1(k) - ms.K6_1(p)) <= 1e-10 * (1 + std::abs(ms.K6_1(k))));
        random_tuple(rng, 8, 30, 1, k);
        std::copy(k, k + 8, p);
        std::swap(p[2], p[6]);
        std::swap(p[1], p[5]);
        CHECK(std::abs(ms.M8_2(k) - ms.M8_2(p)) <= 1e-10 * (1e-6 + std::abs(ms.M8_2(k))));
    }
}

TEST_CASE("declared conjugation symmetries") {
    auto ms = smooth(4, 1);
    for (const auto& id : multiplier_ids()) {
        auto M = ms.get(id);
        if (M.sigma == 0 || M.n > 6 || id == "sigma6") continue;
        CAPTURE(id);
        CHECK(symmetry_defect(M, M.sigma, 20, 400, 5) < 1e-12);
    }
    CHECK_THROWS(ms.get("nope"));
}

TEST_CASE("resonant set classification") {
    auto ms = MultiplierSet(ISymbol(0.5, 32, Interpolant::Smoothstep), 1);
    auto cls = [&](std::array<double, 6> k) { return ms.omega(k.data()); };
    CHECK(cls({64, -60, 1, -2, -1, -2}) == OmegaRegion::Omega2);
    CHECK(cls({64, 1, -62, -1, -1, -1}) == OmegaRegion::Omega1);
    CHECK(cls({64, -48, -16, 0, 0, 0}) == OmegaRegion::Omega3);
    CHECK(cls({10, -10, 0, 0, 0, 0}) == OmegaRegion::Complement);
    // k12 = 0 fails the strict lower bound
    CHECK(cls({64, -64, 1, -1, 1, -1}) == OmegaRegion::Complement);
    // classification sees the normalized tuple
    CHECK(cls({1, -2, 64, -60, -1, -2}) == OmegaRegion::Omega2);
    CHECK(ms.sigma6(std::array<double, 6>{10, -10, 0, 0, 0, 0}.data()) == cplx(0));

    double t[6];
    const double k[6] = {1, -2, 64, -60, -1, -2};
    normalize_tuple(k, 6, t);
    CHECK(is_normalized(t, 6));
    CHECK(t[0] == 64);
    CHECK(t[1] == -60);
}

TEST_CASE("sextic correction cancels on the resonant set") {
    // exhaustive on a small box, plus random tuples with a nonzero third frequency
    for (double lam : {1.0, 4.0}) {
        auto ms = smooth(16 / lam / 4, lam);
        long inside = 0;
        double worst = 0;
        enumerate_gamma(6, 10, [&](const FrequencyTuple& t) {
            auto k = t.values();
            if (ms.omega(k.data()) == OmegaRegion::Complement) {
                CHECK(ms.sigma6(k.data()) == cplx(0));
                return;
            }
            ++inside;
            const cplx M = ms.M6_2(k.data());
            const cplx a6 = alpha(t);
            worst = std::max(worst, std::abs(M + ms.sigma6(k.data()) * a6) / std::max(1.0, std::abs(M)));
        }, lam);
        CHECK(inside > 0);
        CHECK(worst < 1e-12);
    }
    auto ms = smooth(32, 1);
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> big(40, 200), small(-2, 2);
    int hits[3] = {0, 0, 0};
    double worst = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        // odd trials put the runner-up in the third slot
        const int partner = trial % 2 ? 2 : 1;
        int idx[6], s = 0;
        for (int j = 0; j < 6; ++j) s += (idx[j] = j == 0 ? big(rng) : small(rng));
        idx[partner] -= s;
        double k[6];
        for (int j = 0; j < 6; ++j) k[j] = idx[j];
        const auto r = ms.omega(k);
        if (r == OmegaRegion::Complement) continue;
        ++hits[int(r)];
        const cplx M = ms.M6_2(k);
        worst = std::max(worst, std::abs(M + ms.sigma6(k) * (-I * disp(k, 6))) / std::max(1.0, std::abs(M)));
    }
    CHECK(hits[0] > 0);
    CHECK(hits[1] > 0);
    CHECK(worst < 1e-12);
}

TEST_CASE("elongated multipliers") {
    auto ms = smooth(8, 1);
    const double z[10] = {};
    CHECK(ms.M8_3(z) == cplx(0));
    CHECK(ms.K8_3(z) == cplx(0));
    CHECK(ms.M10_3(z) == cplx(0));
    CHECK(ms.K6_3_tilde(z) == cplx(0));
    CHECK(ms.K6_4_tilde(z) == cplx(0));
    CHECK(ms.K8_3_tilde(z) == cplx(0));

    // K~6^4 substituted by hand, signs alternating with the slot
    auto st = [&](double a, double b, double c, double d) {
        const double ma = ms.m(a), mb = ms.m(b), mc = ms.m(c), md = ms.m(d);
        const double num = 0.5 * (-ma * ma * a * a + mb * mb * b * b - mc * mc * c * c + md * md * d * d);
        const double dd = a * a - b * b + c * c - d * d;
        return dd == 0 ? cplx(0) : num / (-I * dd);
    };
    const double k[6] = {20, -3, 5, -17, 2, -7};
    const cplx hand = st(20 - 3 + 5, -17, 2, -7) - st(20, -3 + 5 - 17, 2, -7) + st(20, -3, 5 - 17 + 2, -7) -
                      st(20, -3, 5, -17 + 2 - 7);
    CHECK(std::abs(ms.K6_4_tilde(k) - hand) < 1e-13);
    const cplx hand3 = I * (st(20 - 3 + 5, -17, 2, -7) * -3.0 + st(20, -3 + 5 - 17, 2, -7) * 5.0 +
                            st(20, -3, 5 - 17 + 2, -7) * -17.0 + st(20, -3, 5, -17 + 2 - 7) * 2.0);
    CHECK(std::abs(ms.K6_3_tilde(k) - hand3) < 1e-12);
}

TEST_CASE("quadratic energy consolidates into the quartic multiplier") {
    for (double lam : {1.0, 2.0}) {
        TorusGrid g(lam, 64, 12);
        auto v = rough(g, 31 + int(lam), 12);
        auto ms = smooth(4, lam);
        Multiplier prod{"pm k13", 4, 1, [&](const double* k) {
                            return cplx(ms.m(k[0]) * ms.m(k[1]) * ms.m(k[2]) * ms.m(k[3]) * (k[0] + k[2]));
                        }};
        const cplx lhs = 0.25 * lambda_form(prod, v) + lambda_form(ms.get("sigma4"), v);
        const cplx rhs = 0.5 * lambda_form(ms.get("M4"), v);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
        CHECK(std::abs(rhs.imag()) <= 1e-9 * std::abs(rhs));
    }
}

TEST_CASE("forms of the energy multipliers are real or imaginary as declared") {
    TorusGrid g(1, 32, 6);
    auto v = rough(g, 77, 6);
    auto ms = smooth(2, 1);
    auto re = [&](const char* id) {
        const cplx z = lambda_form(ms.get(id), v);
        return std::abs(z.imag()) <= 1e-10 * (1e-12 + std::abs(z));
    };
    auto im = [&](const char* id) {
        const cplx z = lambda_form(ms.get(id), v);
        return std::abs(z.real()) <= 1e-10 * (1e-12 + std::abs(z));
    };
    CHECK(re("M4_1"));
    CHECK(re("M4"));
    CHECK(re("M6_2"));
    CHECK(im("K4_1"));
    CHECK(im("K6_1"));
    CHECK(im("K6_2"));
}

TEST_CASE("pointwise bound scans") {
    CHECK_THROWS_AS(verify_bound("9.9", 8, 1, {}, 10), std::invalid_argument);
    auto a = verify_bound("M4:all", 8, 1, {}, 20);
    CHECK(!a.empty);
    CHECK(std::isfinite(a.max_ratio));
    CHECK(a.witness.size() == 4);
    auto b = verify_bound("M4:all", 16, 1, {}, 40);
    CHECK(b.max_ratio <= 2 * a.max_ratio);
    // the witness reproduces the ratio
    auto ms = smooth(8, 1);
    double k[4];
    for (int j = 0; j < 4; ++j) k[j] = a.witness[j];
    double Ns[4];
    for (int j = 0; j < 4; ++j) Ns[j] = std::max(std::abs(k[j]), 1.0);
    std::sort(Ns, Ns + 4, std::greater<>());
    const double mN = ms.m(Ns[0]);
    CHECK(std::abs(std::abs(ms.M4(k)) / (mN * mN * Ns[0]) - a.max_ratio) < 1e-12);
    // too small a box leaves the high-high region empty
    auto e = verify_bound("M4:pair13", 8, 1, {}, 4);
    CHECK(e.empty);
    CHECK(e.max_ratio == 0);
    auto j = nlohmann::json::parse(to_json(a));
    CHECK(j["lemma"] == "M4:all");
    CHECK(j.contains("witness"));
    CHECK(j.contains("region"));
    CHECK(bound_ids().size() == 22);
    CHECK(default_scan("M8_2:all", 8).index_bound == 16);
    CHECK(default_scan("M4:all", 32).index_bound == 192);

    // the off-resonant sextic region only holds tuples whose two largest
    // frequencies are comparable and at least N
    for (double N : {8.0, 16.0}) {
        auto sc = default_scan("M6_2:offres-low", N);
        auto r = verify_bound("M6_2:offres-low", N, sc.lambda, {}, sc.index_bound);
        REQUIRE(r.witness.size() == 6);
        std::vector<double> mag;
        for (int w : r.witness) mag.push_back(std::abs(w) / sc.lambda);
        std::sort(mag.begin(), mag.end(), std::greater<>());
        CHECK(mag[1] >= N);
        CHECK(mag[0] <= 9 * mag[1]);
    }
}
