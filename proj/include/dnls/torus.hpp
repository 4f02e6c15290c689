#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

// Periodic domain of length 2*pi*lambda sampled at M nodes. Frequencies are
// n/lambda for integer n with |n| <= nmax; all lattice arithmetic is done on n.
struct TorusGrid {
    double lambda = 1.0;
    int M = 64;
    int nmax = 31;

    TorusGrid() = default;
    TorusGrid(double lambda_, int M_, int nmax_);

    double length() const;
    double k(int n) const { return n / lambda; }
    double kmax() const { return nmax / lambda; }
    int modes() const { return 2 * nmax + 1; }
    double node(int j) const;

    bool operator==(const TorusGrid& o) const {
        return lambda == o.lambda && M == o.M && nmax == o.nmax;
    }
};

// Grid with the largest band the node count can hold.
TorusGrid full_band(double lambda, int M);

class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const TorusGrid& g) : grid_(g), c_(g.modes()) {}

    const TorusGrid& grid() const { return grid_; }
    int nmax() const { return grid_.nmax; }

    cplx& operator[](int n) { return c_[n + grid_.nmax]; }
    const cplx& operator[](int n) const { return c_[n + grid_.nmax]; }
    // zero outside the band
    cplx at(int n) const { return (n < -grid_.nmax || n > grid_.nmax) ? cplx{} : (*this)[n]; }

    std::vector<cplx>& data() { return c_; }
    const std::vector<cplx>& data() const { return c_; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(cplx a);

private:
    TorusGrid grid_;
    std::vector<cplx> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx a, SpectralField b);

// Same coefficients on a grid with different band; coefficients outside the
// new band are dropped.
SpectralField rebanded(const SpectralField& f, int nmax);
SpectralField regridded(const SpectralField& f, const TorusGrid& g);

SpectralField forward_transform(const std::vector<cplx>& samples, const TorusGrid& grid);
std::vector<cplx> inverse_transform(const SpectralField& f);

// Samples of f on P uniform nodes (P need not equal grid.M, only P > 2*nmax).
std::vector<cplx> to_nodes(const SpectralField& f, int P);
// Coefficients of a P-node sample vector, truncated to the band of grid.
SpectralField from_nodes(const std::vector<cplx>& samples, const TorusGrid& grid);

// Node count sufficient for exact products of the given degree: pad * M where
// pad = 2 for cubic, 3 for quintic. Never below the alias-free minimum.
int padded_nodes(const TorusGrid& grid, int degree);

// (a*b)(k) = 1/(2 pi lambda) sum_h a(k-h) b(h), truncated to the band.
SpectralField star_convolve(const SpectralField& a, const SpectralField& b);

struct grid_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
void require_same_grid(const SpectralField& a, const SpectralField& b);

} // namespace dnls
