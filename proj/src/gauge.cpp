#include "dnls/gauge.hpp"

#include <cmath>

namespace dnls {

namespace {

TorusGrid doubled(const TorusGrid& g) { return TorusGrid(g.lambda, 2 * g.M, 2 * g.nmax); }

// node values of |f|^2 - mu, as coefficients on the doubled band
SpectralField density_fluctuation(const SpectralField& f) {
    const TorusGrid g2 = doubled(f.grid());
    auto v = to_nodes(f, g2.M);
    for (auto& z : v) z = std::norm(z);
    SpectralField r = from_nodes(v, g2);
    r[0] = 0;
    return r;
}

} // namespace

SpectralField antiderivative_J(const SpectralField& f) {
    SpectralField r = density_fluctuation(f);
    const auto& g2 = r.grid();
    for (int n = -g2.nmax; n <= g2.nmax; ++n) r[n] = n == 0 ? cplx{} : r[n] / cplx(0, g2.k(n));
    return r;
}

SpectralField gauge_apply(const SpectralField& f, double beta) {
    if (beta == 0) return f;
    SpectralField J = antiderivative_J(f);
    const int P = J.grid().M;
    auto j = to_nodes(J, P);
    auto v = to_nodes(f, P);
    for (int i = 0; i < P; ++i) v[i] *= std::exp(cplx(0, -beta * j[i].real()));
    return from_nodes(v, f.grid());
}

double psi_coefficient(const SpectralField& w, double beta) {
    if (beta == 0) return 0;
    const auto& g = w.grid();
    const int P = padded_nodes(g, 4);
    auto v = to_nodes(w, P);
    auto vx = to_nodes(derivative(w), P);
    double acc = 0;
    for (int i = 0; i < P; ++i) {
        const double im = std::imag(v[i] * std::conj(vx[i]));
        const double a2 = std::norm(v[i]);
        acc += 2 * im + (1.5 - 2 * beta) * a2 * a2;
    }
    const double L = g.length();
    const double integral = acc * L / P;
    const double m = mu(w);
    return beta / L * integral + beta * beta * m * m;
}

SpectralField translate(const SpectralField& f, double c) {
    SpectralField out(f.grid());
    for (int n = -f.nmax(); n <= f.nmax(); ++n) out[n] = f[n] * std::exp(cplx(0, -f.grid().k(n) * c));
    return out;
}

std::vector<TimedField> gauge_spacetime(const std::vector<TimedField>& series, double beta, double tol) {
    std::vector<TimedField> out;
    if (series.empty()) return out;
    const double mu0 = mu(series.front().f);
    for (const auto& [t, f] : series) {
        const double m = mu(f);
        if (std::abs(m - mu0) > tol * std::max(mu0, 1e-300))
            throw mass_drift("mu drifts along the series; spacetime gauge undefined");
        out.push_back({t, translate(gauge_apply(f, beta), 2 * beta * m * t)});
    }
    return out;
}

SpectralField g1_nonlinearity(const SpectralField& v) {
    const auto& g = v.grid();
    const int P = padded_nodes(g, 5);
    auto u = to_nodes(v, P);
    auto ux = to_nodes(derivative(v), P);
    const double m = mu(v);
    const double psi = psi_coefficient(v, 1.0);
    std::vector<cplx> out(P);
    const cplx I(0, 1);
    for (int i = 0; i < P; ++i) {
        const double a2 = std::norm(u[i]);
        out[i] = -I * u[i] * u[i] * std::conj(ux[i]) - 0.5 * a2 * a2 * u[i] + m * a2 * u[i] - psi * u[i];
    }
    return from_nodes(out, g);
}

SplitNonlinearity split_nonlinearity(const SpectralField& v) {
    const auto& g = v.grid();
    const int P = padded_nodes(g, 5);
    auto u = to_nodes(v, P);
    auto ux = to_nodes(derivative(v), P);
    double im_avg = 0, q4_avg = 0, q2_avg = 0;
    for (int i = 0; i < P; ++i) {
        const double a2 = std::norm(u[i]);
        im_avg += std::imag(u[i] * std::conj(ux[i]));
        q4_avg += a2 * a2;
        q2_avg += a2;
    }
    // (1/L) * (L/P) * sum
    im_avg /= P;
    q4_avg /= P;
    q2_avg /= P;
    const cplx I(0, 1);
    std::vector<cplx> t(P), q(P);
    for (int i = 0; i < P; ++i) {
        const double a2 = std::norm(u[i]);
        t[i] = -I * (u[i] * std::conj(ux[i]) - 2.0 * I * im_avg) * u[i];
        q[i] = -0.5 * (a2 * a2 - q4_avg) * u[i] + q2_avg * (a2 - q2_avg) * u[i];
    }
    return {from_nodes(t, g), from_nodes(q, g)};
}

SpectralField T_frequency_restricted(const SpectralField& v) {
    const auto& g = v.grid();
    const int nm = g.nmax;
    const double L = g.length();
    // conj(v)^(h) = conj(v^(-h))
    auto vb = [&](int h) { return std::conj(v.at(-h)); };
    SpectralField out(g);
    for (int n = -nm; n <= nm; ++n) {
        cplx acc = 0;
        for (int n1 = -nm; n1 <= nm; ++n1) {
            if (n1 == n) continue;
            for (int n3 = -nm; n3 <= nm; ++n3) {
                if (n3 == n) continue;
                const int n2 = n - n1 - n3;
                if (n2 < -nm || n2 > nm) continue;
                acc += g.k(n2) * v[n1] * vb(n2) * v[n3];
            }
        }
        // overlap k1 = k3 = k was removed twice; both diagonals carry the mean current
        acc += g.k(n) * v[n] * vb(-n) * v[n];
        out[n] = acc / (L * L);
    }
    return out;
}

double gauge_lipschitz_scan(const TorusGrid& g, double beta, double s, double radius, int pairs,
                            std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RandomProfile prof;
    prof.kind = RandomProfile::Exponential;
    prof.rate = 0.5;
    prof.band = std::min(g.nmax / 4, 8);
    double worst = 0;
    for (int p = 0; p < pairs; ++p) {
        SpectralField f = random_field(g, rng, prof);
        f *= radius * unif(rng) / norm(f, NormKind::Hs(s));
        SpectralField h = random_field(g, rng, prof);
        h *= radius * unif(rng) / norm(h, NormKind::Hs(s));
        const double d = norm(f - h, NormKind::Hs(s));
        if (d == 0) continue;
        const double r = norm(gauge_apply(f, beta) - gauge_apply(h, beta), NormKind::Hs(s)) / d;
        worst = std::max(worst, r);
    }
    return worst;
}

} // namespace dnls
