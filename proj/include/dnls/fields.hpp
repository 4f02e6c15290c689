#pragma once

#include "dnls/torus.hpp"

#include <cstdint>
#include <random>

namespace dnls {

enum class NormTag { Lp, Hs, HsDot, FL };

struct NormKind {
    NormTag tag = NormTag::Lp;
    double p = 2;   // Lp exponent
    double s = 0;   // Sobolev weight
    double r = 2;   // Fourier-Lebesgue exponent

    static NormKind L2() { return {NormTag::Lp, 2, 0, 2}; }
    static NormKind L4() { return {NormTag::Lp, 4, 0, 2}; }
    static NormKind L6() { return {NormTag::Lp, 6, 0, 2}; }
    static NormKind Lp(double p) { return {NormTag::Lp, p, 0, 2}; }
    static NormKind Hs(double s) { return {NormTag::Hs, 2, s, 2}; }
    static NormKind HsDot(double s) { return {NormTag::HsDot, 2, s, 2}; }
    static NormKind FL(double s, double r) { return {NormTag::FL, 2, s, r}; }
};

double norm(const SpectralField& f, const NormKind& kind);
double mu(const SpectralField& f);
double bracket(double k); // <k> = sqrt(1 + k^2)

SpectralField derivative(const SpectralField& f);

// int f conj(g) dx, via Parseval
cplx inner(const SpectralField& f, const SpectralField& g);

// (L/P) sum of node values: exact integral of a band-limited integrand
cplx integrate_nodes(const std::vector<cplx>& v, double length);
double integrate_nodes(const std::vector<double>& v, double length);

SpectralField single_mode(const TorusGrid& g, int n, cplx a);  // a e^{i n x/lambda}
SpectralField constant_field(const TorusGrid& g, cplx c);

// Seeded random ensembles. Power profile: |f^(k)| ~ <k>^{-decay} * gaussian on
// |n| <= band. Exponential profile: ~ exp(-rate |k|). Rescaled to mass if > 0.
struct RandomProfile {
    enum Kind { Power, Exponential } kind = Power;
    double decay = 1.5;
    double rate = 1.0;
    int band = 8;
    double mass = 0;  // target int |f|^2; 0 keeps raw scale
    bool real = false;
};

using Rng = std::mt19937_64;
SpectralField random_field(const TorusGrid& g, Rng& rng, const RandomProfile& prof);

} // namespace dnls
