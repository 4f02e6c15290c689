#pragma once

#include "dnls/fields.hpp"

#include <stdexcept>

namespace dnls {

enum class Interpolant {
    Kink,        // m = min(1, (N/|xi|)^{1-s})
    Smoothstep,  // exponent blended by 6t^5 - 15t^4 + 10t^3 on [N, 2N]
};

// Symbol m of the smoothing operator I. Evaluates at any real frequency.
class ISymbol {
public:
    ISymbol() = default;
    ISymbol(double s, double N, Interpolant kind = Interpolant::Kink);

    double operator()(double xi) const;
    double s() const { return s_; }
    double N() const { return N_; }
    Interpolant kind() const { return kind_; }

private:
    double s_ = 0.5;
    double N_ = 1;
    Interpolant kind_ = Interpolant::Kink;
};

struct symbol_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Symbol tabulated on a grid's lattice.
struct IMultiplier {
    ISymbol m;
    TorusGrid grid;
    std::vector<double> values; // index n + nmax

    double at(int n) const { return values[n + grid.nmax]; }
};

// Throws symbol_violation if m is not non-increasing or m(k) k^{1/2} is not
// non-decreasing on the retained lattice points.
IMultiplier build_symbol(double s, double N, const TorusGrid& grid, Interpolant kind = Interpolant::Kink);

bool is_dyadic(double N);

SpectralField apply_I(const SpectralField& f, const IMultiplier& sym);

struct SmoothingRatios {
    double r1 = 0; // |f|_{H^s} / |If|_{H^1}
    double r2 = 0; // |If|_{H^1} / (N^{1-s} |f|_{H^s})
};
SmoothingRatios smoothing_ratio_check(const SpectralField& f, const IMultiplier& sym);

} // namespace dnls
