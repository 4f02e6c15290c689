#pragma once

#include "dnls/fields.hpp"

#include <stdexcept>
#include <utility>

namespace dnls {

// Mean-zero antiderivative of |f|^2 - mu[f]. Lives on a grid with twice the
// band of f so that it is exact.
SpectralField antiderivative_J(const SpectralField& f);

// e^{-i beta J(f)} f, exponential taken on a 2x padded node set.
SpectralField gauge_apply(const SpectralField& f, double beta);

// (beta/2 pi lambda) int (2 Im(w conj(w)_x) + (3/2 - 2 beta)|w|^4) + beta^2 mu^2
double psi_coefficient(const SpectralField& w, double beta);

struct TimedField {
    double t;
    SpectralField f;
};

struct mass_drift : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// G_beta(u(t)) translated by 2 beta mu t. Throws mass_drift if mu varies by
// more than tol (relative) along the series.
std::vector<TimedField> gauge_spacetime(const std::vector<TimedField>& series, double beta,
                                        double tol = 1e-8);

// Shift x -> x - c, i.e. multiply f^(k) by e^{-ikc}.
SpectralField translate(const SpectralField& f, double c);

// Nonlinearity of the beta = 1 equation
//   -i v^2 conj(v)_x - |v|^4 v / 2 + mu |v|^2 v - psi v
SpectralField g1_nonlinearity(const SpectralField& v);

struct SplitNonlinearity {
    SpectralField T;
    SpectralField Q;
};
// Physical-space evaluation of the two groups.
SplitNonlinearity split_nonlinearity(const SpectralField& v);

// T part by the restricted frequency sum: diagonals k1 = k and k3 = k removed,
// the doubly removed cube k v(k) conj(v)(-k) v(k) added back once.
// O(modes^2) per output frequency.
SpectralField T_frequency_restricted(const SpectralField& v);

// Largest observed |G f - G g|_{H^s} / |f - g|_{H^s} over random pairs in an
// H^s ball.
double gauge_lipschitz_scan(const TorusGrid& g, double beta, double s, double radius, int pairs,
                            std::uint64_t seed);

} // namespace dnls
