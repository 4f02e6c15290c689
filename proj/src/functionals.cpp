#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"

#include <cmath>
#include <numbers>

namespace dnls {

namespace {

// u and u_x on enough nodes that degree-d integrands integrate exactly
struct Nodes {
    int P;
    double L;
    std::vector<cplx> u, ux;

    Nodes(const SpectralField& f, int degree) {
        P = padded_nodes(f.grid(), degree);
        L = f.grid().length();
        u = to_nodes(f, P);
        ux = to_nodes(derivative(f), P);
    }

    template <class F>
    double integrate(F&& fn) const {
        double acc = 0;
        for (int i = 0; i < P; ++i) acc += fn(u[i], ux[i]);
        return acc * L / P;
    }
};

double im_term(cplx u, cplx ux) { return std::imag(u * std::conj(ux)); }

} // namespace

double mass(const SpectralField& u) { return norm(u, NormKind::L2()) * norm(u, NormKind::L2()); }

double im_current(const SpectralField& v) {
    // Parseval: int v conj(v_x) = -(i/L) sum k |v^|^2
    const auto& g = v.grid();
    double acc = 0;
    for (int n = -v.nmax(); n <= v.nmax(); ++n) acc += g.k(n) * std::norm(v[n]);
    return -acc / g.length();
}

double kinetic(const SpectralField& v) {
    const double d = norm(v, NormKind::HsDot(1));
    return d * d;
}

double momentum(const SpectralField& u) { return momentum_beta(u, 0); }

double energy(const SpectralField& u) { return energy_beta(u, 0); }

ConservedTriple conserved(const SpectralField& u) { return {mass(u), momentum(u), energy(u)}; }

double momentum_beta(const SpectralField& w, double beta) {
    Nodes nd(w, 4);
    const double I = nd.integrate([&](cplx u, cplx ux) {
        const double a2 = std::norm(u);
        return im_term(u, ux) + (0.5 - beta) * a2 * a2;
    });
    return I + beta * mu(w) * mass(w);
}

double energy_beta(const SpectralField& w, double beta) {
    Nodes nd(w, 6);
    const double c3 = beta * beta - 1.5 * beta + 0.5;
    const double I = nd.integrate([&](cplx u, cplx ux) {
        const double a2 = std::norm(u);
        return std::norm(ux) + (1.5 - 2 * beta) * a2 * im_term(u, ux) + c3 * a2 * a2 * a2;
    });
    if (beta == 0) return I;
    const double m = mu(w);
    const double l4 = nd.integrate([](cplx u, cplx) { return std::norm(u) * std::norm(u); });
    return I + 0.5 * beta * m * l4 + 2 * beta * m * momentum_beta(w, beta) - beta * beta * m * m * mass(w);
}

double essential_energy(const SpectralField& v) {
    Nodes nd(v, 4);
    return nd.integrate([](cplx u, cplx ux) { return std::norm(ux) - 0.5 * std::norm(u) * im_term(u, ux); });
}

double essential_momentum(const SpectralField& v) {
    Nodes nd(v, 4);
    return nd.integrate([](cplx u, cplx ux) {
        const double a2 = std::norm(u);
        return im_term(u, ux) - 0.5 * a2 * a2;
    });
}

SpectralField modulate(const SpectralField& g, int shift) {
    const int nm = g.nmax();
    SpectralField out(g.grid());
    for (int n = -nm; n <= nm; ++n) {
        if (g[n] == cplx{}) continue;
        const int m = n + shift;
        if (m < -nm || m > nm) throw band_overflow("modulation pushes mass outside the band");
        out[m] = g[n];
    }
    return out;
}

double alpha_star(const SpectralField& g) {
    const double l2 = norm(g, NormKind::L2());
    if (l2 == 0) throw std::invalid_argument("alpha_star of the zero field");
    const double l4 = norm(g, NormKind::L4());
    return std::pow(l4, 4) / (8 * std::sqrt(std::numbers::pi) * l2);
}

int alpha_lattice(const SpectralField& g) {
    return int(std::floor(g.grid().lambda * alpha_star(g))) + 1;
}

double c_gn() { return std::pow(3.0, 1.0 / 6) * std::pow(2 * std::numbers::pi, -1.0 / 9); }

GNReport gn_check(const SpectralField& f, GNKind which, const GNParams& p) {
    const double pi = std::numbers::pi;
    const double lam = f.grid().lambda;
    GNReport r;
    switch (which) {
    case GNKind::Herr: {
        Nodes nd(f, 6);
        const double m = mu(f);
        const double l = nd.integrate([&](cplx u, cplx) {
            const double a2 = std::norm(u);
            return (a2 - m) * (a2 - m) * a2;
        });
        r.lhs = std::sqrt(std::max(l, 0.0));
        r.rhs = std::sqrt(kinetic(f)) * mass(f);
        break;
    }
    case GNKind::AguehTorus: {
        r.lhs = norm(f, NormKind::L6());
        const double inner = kinetic(f) + mass(f) / (pi * lam * p.delta);
        r.rhs = c_gn() * std::pow(1 + p.delta / (5 * pi * lam), 2.0 / 9) * std::pow(inner, 1.0 / 18) *
                std::pow(norm(f, NormKind::L4()), 8.0 / 9);
        break;
    }
    case GNKind::WeinsteinTorus: {
        r.lhs = std::pow(norm(f, NormKind::L6()), 6);
        const double m = mass(f);
        r.rhs = (4 / (pi * pi) + p.eps) * kinetic(f) * m * m + p.K_eps * m * m * m;
        break;
    }
    }
    r.slack = r.rhs - r.lhs;
    return r;
}

double weinstein_K_needed(const SpectralField& f, double eps) {
    const double pi = std::numbers::pi;
    const double m = mass(f);
    if (m == 0) return 0;
    const double l6 = std::pow(norm(f, NormKind::L6()), 6);
    return std::max(0.0, (l6 - (4 / (pi * pi) + eps) * kinetic(f) * m * m) / (m * m * m));
}

namespace {

// Periodic bump of width ~ lambda/sqrt(kappa) at x0, modulated so that its
// essential momentum is nearly cancelled: the regime where the ratio is large.
SpectralField modulated_bump(const TorusGrid& g, double kappa, double x0, double mass_target) {
    std::vector<cplx> v(g.M);
    for (int j = 0; j < g.M; ++j) v[j] = std::exp(kappa * (std::cos((g.node(j) - x0) / g.lambda) - 1));
    SpectralField f = from_nodes(v, g);
    const double scale = std::sqrt(mass_target) / norm(f, NormKind::L2());
    f *= scale;
    const double theta = -std::pow(norm(f, NormKind::L4()), 4) / (2 * mass_target);
    const double alpha = std::lround(theta * g.lambda) / g.lambda;
    for (int j = 0; j < g.M; ++j) v[j] *= scale * std::exp(cplx(0, alpha * g.node(j)));
    f = from_nodes(v, g);
    return (std::sqrt(mass_target) / norm(f, NormKind::L2())) * f;
}

} // namespace

CoercivityReport coercivity_experiment(const TorusGrid& g, int sample_count, MassRegime regime, double mass_target,
                                       std::uint64_t seed) {
    CoercivityReport rep;
    rep.samples = sample_count;
    rep.mass = mass_target;
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RandomProfile prof;
    prof.decay = 1.5;
    prof.band = std::min(g.nmax / 3, 12);
    prof.mass = mass_target;
    rep.worst_gauge_slack = INFINITY;
    const double beta = -0.25;
    const double kappa_max = 0.25 * g.nmax;
    for (int i = 0; i < sample_count; ++i) {
        SpectralField f;
        if (i % 2 == 0) {
            f = random_field(g, rng, prof);
        } else {
            const double kappa = 1 + (kappa_max - 1) * unif(rng);
            const double x0 = g.length() * unif(rng);
            f = modulated_bump(g, kappa, x0, mass_target);
        }
        const double kin = kinetic(f);
        const double E = essential_energy(f);
        double denom;
        if (regime == MassRegime::TwoPi) {
            if (E < 0) continue;
            denom = E + 1;
        } else {
            const double P = essential_momentum(f);
            denom = std::abs(E) + P * P + 1;
        }
        ++rep.used;
        rep.max_ratio = std::max(rep.max_ratio, kin / denom);

        // f = G_{-beta} g with g = G_beta f
        SpectralField gg = gauge_apply(f, beta);
        const double M = mass(gg);
        const double bound = (1 + beta * beta * M * M + 2 * std::abs(beta) * M) * kinetic(gg);
        rep.worst_gauge_slack = std::min(rep.worst_gauge_slack, bound - kin);
    }
    if (rep.used == 0) rep.worst_gauge_slack = 0;
    return rep;
}

} // namespace dnls
