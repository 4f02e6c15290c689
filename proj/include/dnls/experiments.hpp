#pragma once

#include "dnls/energies.hpp"
#include "dnls/solver.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

// u^lambda(x) = lambda^{-1/2} u(x / lambda): f on T_1 moved to T_lambda. The
// index band is unchanged, coefficients scale by lambda^{1/2}.
SpectralField natural_scaling(const SpectralField& f, double lambda);

// ---------------------------------------------------------------------------
// almost conservation of E3

struct IncrementOptions {
    double dt = 1e-3;
    int samples = 10;        // E3 evaluations over the window, besides t = 0
    int eval_radius = 32;    // E3 is taken on the copy truncated to this index band
    Interpolant kind = Interpolant::Kink;
    OmegaParams omega;
};

struct IncrementRow {
    double N = 0;
    double lambda = 0;
    double e3_start = 0;
    double sup_increment = 0;   // max_t |E3(t) - E3(0)| over the samples
    double mean_increment = 0;  // signed mean of E3(t) - E3(0)
    int band = 0;               // index band of the evaluated copy
    double threshold_index = 0; // lambda N: first index where m < 1
    bool corrections_active = false;
};

struct IncrementScan {
    std::vector<IncrementRow> rows;
    double fitted_slope = 0;  // log-log least squares over rows with positive increments; NaN if < 2
    int eval_radius = 0;
};

IncrementScan almost_conservation_scan(const SpectralField& seed, double s, const std::vector<double>& N_list,
                                       double t_window, const IncrementOptions& opt = {});

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// phase separation of two monochromatic solutions

struct IllposedOptions {
    int max_nmax = 1 << 14;
    double dt = 5e-4;
    bool step = true;  // cross-check the closed form by time stepping
};

struct IllposedReport {
    double s = 0, epsilon = 0, delta = 0, T = 0;
    double b = 0, b_tilde = 0;
    std::int64_t N = 0;
    double t_N = 0;
    double d0 = 0, dT = 0;            // H^s distances at 0 and t_N
    double d0_bound = 0, dT_bound = 0;  // 2 delta sqrt(2 pi), epsilon sqrt(2 pi) / 2
    double stepping_error = -1;       // relative L2 gap, -1 if not stepped
    bool certified = false;
};

// Smallest integer N with t_N <= T / 2.
std::int64_t illposed_frequency(double s, double b, double b_tilde, double T);

IllposedReport illposedness_demo(double s, double epsilon, double delta, double T, const IllposedOptions& opt = {});

// ---------------------------------------------------------------------------
// lattice counting behind the bilinear estimate

enum class Supports {
    Separated,     // |k1| ~ N1, |k2| ~ N2, N1 >= 16 N2, any signs
    OppositeSides, // k1 in [N1, 2N1), k2 in (-2N2, -N2]
    SameSide,      // both positive
};

struct assumption_refused : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CountReport {
    double N1 = 0, N2 = 0, lambda = 0;
    std::string supports;
    std::int64_t max_cardinality = 0;
    double bound = 0;  // 8 (1 + lambda / N1)
    std::int64_t k_values = 0;
    bool exhaustive = false;
    std::vector<std::int64_t> witness;  // {k index, smallest n1^2 + n2^2 in the window}
};

// Max over k and over unit windows in tau of #{k1 : tau + k1^2 + (k - k1)^2 in the window}.
// Every k when sample_count <= 0 or the box is small, else sample_count random k.
// Throws assumption_refused for comparable same-side supports.
CountReport bilinear_counting(double N1, double N2, double lambda, int sample_count,
                              Supports sup = Supports::Separated, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// parameter arithmetic of the iteration

struct Budget {
    double s = 0, T = 0, gamma = 1.5, kappa = 1;
    double N = 0;        // smallest dyadic N with lambda^2 T <= N^gamma lambda^kappa
    double lambda = 0;   // N^{(1-s)/s}
    double J_min = 0;    // lambda^2 T
    double J_bound = 0;  // N^gamma lambda^kappa
    double T_exponent = 0;       // T <~ N^{gamma + (kappa - 2)(1 - s)/s}
    double growth_exponent = 0;  // 2 - 2s
    double predicted_growth = 0; // T^{2 - 2s}
};

Budget growth_budget(double s, double T, double gamma = 1.5, double kappa = 1);

} // namespace dnls
