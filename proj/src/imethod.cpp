#include "dnls/imethod.hpp"

#include <cmath>
#include <string>

namespace dnls {

bool is_dyadic(double N) {
    if (!(N >= 1)) return false;
    int e;
    double fr = std::frexp(N, &e);
    return fr == 0.5;
}

ISymbol::ISymbol(double s, double N, Interpolant kind) : s_(s), N_(N), kind_(kind) {
    if (!(s >= 0.5 && s < 1)) throw std::invalid_argument("need 1/2 <= s < 1");
    if (!is_dyadic(N)) throw std::invalid_argument("N must be a power of two");
}

double ISymbol::operator()(double xi) const {
    const double a = std::abs(xi);
    if (a <= N_) return 1.0;
    if (kind_ == Interpolant::Kink || a >= 2 * N_) return std::pow(N_ / a, 1 - s_);
    const double t = (a - N_) / N_;
    const double sig = t * t * t * (10 + t * (-15 + 6 * t));
    return std::pow(N_ / a, (1 - s_) * sig);
}

IMultiplier build_symbol(double s, double N, const TorusGrid& grid, Interpolant kind) {
    IMultiplier I{ISymbol(s, N, kind), grid, {}};
    I.values.resize(grid.modes());
    for (int n = -grid.nmax; n <= grid.nmax; ++n) I.values[n + grid.nmax] = I.m(grid.k(n));
    // checks on the nonnegative lattice, with a rounding allowance
    const double tol = 1e-14;
    for (int n = 1; n <= grid.nmax; ++n) {
        const double k0 = grid.k(n - 1), k1 = grid.k(n);
        const double m0 = I.at(n - 1), m1 = I.at(n);
        if (m1 > m0 * (1 + tol))
            throw symbol_violation("m increases at k = " + std::to_string(k1));
        if (m1 * std::sqrt(k1) < m0 * std::sqrt(k0) * (1 - tol))
            throw symbol_violation("m(k) k^{1/2} decreases at k = " + std::to_string(k1));
        if (I.at(n) != I.at(-n)) throw symbol_violation("m not even");
    }
    return I;
}

SpectralField apply_I(const SpectralField& f, const IMultiplier& sym) {
    if (!(f.grid() == sym.grid)) throw grid_mismatch("symbol tabulated on another grid");
    SpectralField out(f.grid());
    for (int n = -f.nmax(); n <= f.nmax(); ++n) out[n] = sym.at(n) * f[n];
    return out;
}

SmoothingRatios smoothing_ratio_check(const SpectralField& f, const IMultiplier& sym) {
    const double s = sym.m.s();
    const double hs = norm(f, NormKind::Hs(s));
    const double h1 = norm(apply_I(f, sym), NormKind::Hs(1));
    SmoothingRatios r;
    if (hs == 0) return r;
    r.r1 = hs / h1;
    r.r2 = h1 / (std::pow(sym.m.N(), 1 - s) * hs);
    return r;
}

} // namespace dnls
