#pragma once

#include "dnls/functionals.hpp"
#include "dnls/imethod.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

// Nonlinearity N of i v_t + v_xx = N for the beta = 1 equation, on the
// 3x padded node set.
SpectralField rhs_g1dnls(const SpectralField& v);

// Right side of the gauged equation for general beta:
//   2i(1-b)|w|^2 w_x + i(1-2b) w^2 conj(w)_x + b mu |w|^2 w + (b/2 - b^2)|w|^4 w - psi w
// plus 2i b mu w_x when drift is set (the -2i b mu w_x term of the left side,
// moved over). Without drift the equation is the one in the frame moving
// with speed 2 b mu, which for b = 1 is the beta = 1 equation.
SpectralField rhs_dnls_gauged(const SpectralField& w, double beta, bool drift = true);

// Monochromatic solution a e^{i(kx + theta t)}, k = n / lambda, of the
// gauged equation without drift: theta = -k^2 + (1 - 2 beta) |a|^2 k.
// beta = 0 is DNLS, beta = 1 the beta = 1 equation.
SpectralField exact_monochromatic(cplx a, int n, double beta, double t, const TorusGrid& grid);

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1;
    double beta = 1;
    bool drift = false;
    int diag_stride = 0;   // diagnostics every this many steps; 0 = first and last only
    bool keep_states = false;
    double hs = 0.5;       // Sobolev index of the Hs_norm column
    // smoothing symbol for the H1_of_Iv and modified-energy columns
    std::optional<IMultiplier> symbol;
    bool modified_energies = false;
};

struct DiagnosticRow {
    double t = 0;
    double mass = 0, momentum = 0, energy = 0;  // M, P_beta, E_beta
    std::optional<double> e1, e2, e3;
    double hs_norm = 0;
    std::optional<double> h1_iv;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;  // every diagnostic time if keep_states, else the last
    std::vector<DiagnosticRow> rows;
    SpectralField final_state;
    long steps = 0;
};

// Non-finite state. Carries the last finite one.
struct integration_failure : std::runtime_error {
    integration_failure(const std::string& what, double t_, SpectralField last)
        : std::runtime_error(what), t(t_), last_good(std::move(last)) {}
    double t;
    SpectralField last_good;
};

// One integrating-factor RK4 step (exact e^{-i k^2 dt} linear factor).
SpectralField ifrk4_step(const SpectralField& v, double dt, double beta = 1, bool drift = false);

Trajectory integrate(const SpectralField& v0, const SolverConfig& cfg);

DiagnosticRow diagnostics(double t, const SpectralField& v, const SolverConfig& cfg);

// RFC 4180 CSV with header t,mass,momentum,energy,E1,E2,E3,Hs_norm,H1_of_Iv;
// absent values are empty fields.
std::string trajectory_csv(const Trajectory& tr);
// Config, grid and a digest of both, stable key order.
std::string trajectory_sidecar(const Trajectory& tr, const SolverConfig& cfg, const TorusGrid& grid);

} // namespace dnls
