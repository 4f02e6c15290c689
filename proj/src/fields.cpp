#include "dnls/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace dnls {

double bracket(double k) { return std::sqrt(1.0 + k * k); }

double mu(const SpectralField& f) {
    const double L = f.grid().length();
    double acc = 0;
    for (const auto& z : f.data()) acc += std::norm(z);
    // int |f|^2 = acc / L, then divide by L again
    return acc / (L * L);
}

double norm(const SpectralField& f, const NormKind& kind) {
    const auto& g = f.grid();
    const double L = g.length();
    const int nm = f.nmax();
    switch (kind.tag) {
    case NormTag::Hs:
    case NormTag::HsDot: {
        double acc = 0;
        for (int n = -nm; n <= nm; ++n) {
            const double k = g.k(n);
            double w = kind.tag == NormTag::Hs ? std::pow(bracket(k), kind.s)
                                               : (n == 0 ? (kind.s == 0 ? 1.0 : 0.0) : std::pow(std::abs(k), kind.s));
            acc += w * w * std::norm(f[n]);
        }
        return std::sqrt(acc / L);
    }
    case NormTag::FL: {
        if (kind.r < 1) throw std::invalid_argument("FL exponent r < 1");
        double acc = 0;
        for (int n = -nm; n <= nm; ++n)
            acc += std::pow(std::pow(bracket(g.k(n)), kind.s) * std::abs(f[n]), kind.r);
        return std::pow(acc / L, 1.0 / kind.r);
    }
    case NormTag::Lp: {
        if (kind.p < 1) throw std::invalid_argument("Lp exponent p < 1");
        if (kind.p == 2) return norm(f, NormKind::Hs(0));
        const int pad = int(std::ceil(kind.p / 2));
        int P = pad * g.M;
        while (P <= kind.p * nm) P += g.M;
        auto v = to_nodes(f, P);
        double acc = 0;
        for (const auto& z : v) acc += std::pow(std::abs(z), kind.p);
        return std::pow(acc * L / P, 1.0 / kind.p);
    }
    }
    return 0;
}

SpectralField derivative(const SpectralField& f) {
    SpectralField d(f.grid());
    for (int n = -f.nmax(); n <= f.nmax(); ++n) d[n] = cplx(0, f.grid().k(n)) * f[n];
    return d;
}

cplx inner(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    cplx acc = 0;
    for (std::size_t i = 0; i < f.data().size(); ++i) acc += f.data()[i] * std::conj(g.data()[i]);
    return acc / f.grid().length();
}

cplx integrate_nodes(const std::vector<cplx>& v, double length) {
    cplx acc = 0;
    for (const auto& z : v) acc += z;
    return acc * length / double(v.size());
}

double integrate_nodes(const std::vector<double>& v, double length) {
    double acc = 0;
    for (double z : v) acc += z;
    return acc * length / double(v.size());
}

SpectralField single_mode(const TorusGrid& g, int n, cplx a) {
    SpectralField f(g);
    f[n] = a * g.length();
    return f;
}

SpectralField constant_field(const TorusGrid& g, cplx c) { return single_mode(g, 0, c); }

SpectralField random_field(const TorusGrid& g, Rng& rng, const RandomProfile& prof) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f(g);
    const int b = std::min(prof.band, g.nmax);
    for (int n = -b; n <= b; ++n) {
        const double k = g.k(n);
        double amp = prof.kind == RandomProfile::Power ? std::pow(bracket(k), -prof.decay)
                                                       : std::exp(-prof.rate * std::abs(k));
        double re = gauss(rng), im = gauss(rng);
        f[n] = amp * g.length() * cplx(re, im);
    }
    if (prof.real) {
        // f^(-k) = conj f^(k)
        for (int n = 1; n <= b; ++n) f[-n] = std::conj(f[n]);
        f[0] = f[0].real();
    }
    if (prof.mass > 0) {
        const double m = norm(f, NormKind::L2());
        if (m > 0) f *= std::sqrt(prof.mass) / m;
    }
    return f;
}

} // namespace dnls
