#pragma once

#include "dnls/fields.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dnls {

struct ConservedTriple {
    double mass = 0;
    double momentum = 0;
    double energy = 0;
};

double mass(const SpectralField& u);
double momentum(const SpectralField& u);
double energy(const SpectralField& u);
ConservedTriple conserved(const SpectralField& u);

double momentum_beta(const SpectralField& w, double beta);
double energy_beta(const SpectralField& w, double beta);

double essential_energy(const SpectralField& v);    // int |v_x|^2 - |v|^2 Im(v conj(v)_x) / 2
double essential_momentum(const SpectralField& v);  // int Im(v conj(v)_x) - |v|_4^4 / 2

double im_current(const SpectralField& v);  // int Im(v conj(v)_x)
double kinetic(const SpectralField& v);     // |v_x|_2^2

struct band_overflow : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// e^{i alpha x} g with alpha = shift / lambda; exact index shift.
SpectralField modulate(const SpectralField& g, int shift);

double alpha_star(const SpectralField& g);
// index n of the smallest lattice frequency n/lambda strictly above alpha_star
int alpha_lattice(const SpectralField& g);

enum class GNKind { WeinsteinTorus, AguehTorus, Herr };

struct GNParams {
    double eps = 0.1;     // Weinstein torus form
    double K_eps = 1.0;
    double delta = 1.0;   // Agueh torus form
};

struct GNReport {
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
};

double c_gn();  // 3^{1/6} (2 pi)^{-1/9}
GNReport gn_check(const SpectralField& f, GNKind which, const GNParams& p = {});
// Smallest K_eps making the Weinstein torus form hold for f.
double weinstein_K_needed(const SpectralField& f, double eps);

enum class MassRegime { TwoPi, FourPi };

struct CoercivityReport {
    int samples = 0;
    int used = 0;            // samples passing the regime filter
    double max_ratio = 0;
    double mass = 0;
    double worst_gauge_slack = 0;  // min of rhs - lhs in the beta = -1/4 comparison
};

// Random fields of the given mass on g. Ratio |f_x|^2 / (E_ess + 1) for the 2pi
// regime (samples with E_ess < 0 skipped) or / (|E_ess| + P_ess^2 + 1).
CoercivityReport coercivity_experiment(const TorusGrid& g, int sample_count, MassRegime regime, double mass,
                                       std::uint64_t seed);

} // namespace dnls
