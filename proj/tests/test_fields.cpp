#include "doctest.h"
#include "dnls/fields.hpp"

#include <cmath>
#include <numbers>

using namespace dnls;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("single-mode norms") {
    TorusGrid g(1, 64, 20);
    const cplx a(0.7, -0.4);
    const int N = 5;
    auto f = single_mode(g, N, a);
    const double a2 = std::norm(a);
    CHECK(std::pow(norm(f, NormKind::L2()), 2) == doctest::Approx(2 * pi * a2).epsilon(1e-13));
    for (double s : {0.5, 1.0, 1.7})
        CHECK(norm(f, NormKind::HsDot(s)) == doctest::Approx(std::sqrt(2 * pi) * std::abs(a) * std::pow(N, s)).epsilon(1e-13));
    CHECK(std::pow(norm(f, NormKind::L4()), 4) == doctest::Approx(2 * pi * a2 * a2).epsilon(1e-12));
    CHECK(mu(f) == doctest::Approx(a2).epsilon(1e-13));
}

TEST_CASE("L4 of a single mode on a dilated torus") {
    TorusGrid g(3, 64, 20);
    const cplx a(1.1, 0.2);
    auto f = single_mode(g, 4, a);
    CHECK(std::pow(norm(f, NormKind::L4()), 4) == doctest::Approx(2 * pi * 3 * std::pow(std::abs(a), 4)).epsilon(1e-12));
}

TEST_CASE("zero field has zero norms") {
    TorusGrid g(1, 32, 10);
    SpectralField z(g);
    for (auto k : {NormKind::L2(), NormKind::L4(), NormKind::L6(), NormKind::Lp(3), NormKind::Hs(0.5), NormKind::HsDot(1),
                   NormKind::FL(0.5, 3)})
        CHECK(norm(z, k) == 0);
    CHECK(mu(z) == 0);
}

TEST_CASE("mu of a constant field") {
    TorusGrid g(2.5, 32, 10);
    const cplx c(0.3, 0.8);
    CHECK(mu(constant_field(g, c)) == doctest::Approx(std::norm(c)).epsilon(1e-14));
}

TEST_CASE("derivative of sin is cos at the nodes") {
    TorusGrid g(1, 32, 10);
    std::vector<cplx> s(32);
    for (int j = 0; j < 32; ++j) s[j] = std::sin(g.node(j));
    auto d = inverse_transform(derivative(forward_transform(s, g)));
    for (int j = 0; j < 32; ++j) CHECK(std::abs(d[j] - std::cos(g.node(j))) < 1e-12);
    auto c = derivative(constant_field(g, 2.0));
    for (auto z : c.data()) CHECK(z == cplx{});
    auto e = derivative(single_mode(g, 3, 1.0));
    CHECK(std::abs(e[3] - cplx(0, 3) * 2.0 * pi) < 1e-13);
}

TEST_CASE("H1 splits into L2 plus kinetic part") {
    for (double lam : {1.0, 4.0}) {
        TorusGrid g(lam, 64, 31);
        Rng rng(17);
        RandomProfile p;
        p.band = 31;
        auto f = random_field(g, rng, p);
        const double h1 = std::pow(norm(f, NormKind::Hs(1)), 2);
        const double split = std::pow(norm(f, NormKind::L2()), 2) + std::pow(norm(derivative(f), NormKind::L2()), 2);
        CHECK(std::abs(h1 - split) <= 1e-12 * h1);
        CHECK(norm(f, NormKind::Hs(0)) == doctest::Approx(norm(f, NormKind::L2())).epsilon(1e-12));
    }
}

TEST_CASE("bracket bounds on the lattice") {
    for (double lam : {1.0, 2.0, 16.0}) {
        TorusGrid g(lam, 256, 127);
        for (int n = 1; n <= g.nmax; ++n) {
            const double k = g.k(n);
            CHECK(std::abs(k) <= bracket(k));
            CHECK(bracket(k) <= std::sqrt(2.0) * std::max(1.0, lam) * std::abs(k));
        }
    }
}

TEST_CASE("L6 quadrature matches a fine Riemann sum") {
    TorusGrid g(1, 32, 8);
    Rng rng(2);
    RandomProfile p;
    p.band = 8;
    auto f = random_field(g, rng, p);
    auto fine = to_nodes(f, 4096);
    double acc = 0;
    for (auto z : fine) acc += std::pow(std::abs(z), 6);
    acc *= g.length() / 4096;
    CHECK(std::pow(norm(f, NormKind::L6()), 6) == doctest::Approx(acc).epsilon(1e-11));
}

TEST_CASE("Fourier-Lebesgue norm of a single mode") {
    TorusGrid g(1, 32, 10);
    auto f = single_mode(g, 2, 1.0);
    // (1/2pi * (<2>^s 2pi)^r)^{1/r}
    const double s = 0.5, r = 3;
    const double expect = std::pow(std::pow(std::pow(5.0, s / 2) * 2 * pi, r) / (2 * pi), 1 / r);
    CHECK(norm(f, NormKind::FL(s, r)) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("random fields are reproducible and hit the requested mass") {
    TorusGrid g(1, 64, 31);
    RandomProfile p;
    p.mass = 3.0;
    Rng a(99), b(99);
    auto f = random_field(g, a, p);
    auto h = random_field(g, b, p);
    CHECK(f.data() == h.data());
    CHECK(std::pow(norm(f, NormKind::L2()), 2) == doctest::Approx(3.0).epsilon(1e-13));
    p.real = true;
    auto r = random_field(g, a, p);
    for (auto z : inverse_transform(r)) CHECK(std::abs(z.imag()) < 1e-13);
}
