#include "dnls/torus.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dnls {

namespace {

// FFTW planning is not thread safe; execution with new-array calls is.
struct PlanCache {
    std::mutex mu;
    std::map<std::pair<int, int>, fftw_plan> plans;

    fftw_plan get(int P, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(P, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::vector<cplx> tmp(P);
        auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
        fftw_plan plan = fftw_plan_dft_1d(P, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(key, plan);
        return plan;
    }
    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void fft_inplace(std::vector<cplx>& v, int sign) {
    auto* p = reinterpret_cast<fftw_complex*>(v.data());
    fftw_execute_dft(cache().get(int(v.size()), sign), p, p);
}

} // namespace

TorusGrid::TorusGrid(double lambda_, int M_, int nmax_) : lambda(lambda_), M(M_), nmax(nmax_) {
    if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    if (M <= 0 || M % 2) throw std::invalid_argument("M must be positive and even");
    if (nmax < 0) throw std::invalid_argument("nmax must be nonnegative");
    if (M <= 2 * nmax) throw std::invalid_argument("M too small for band: need M > 2*nmax");
}

double TorusGrid::length() const { return 2 * std::numbers::pi * lambda; }

double TorusGrid::node(int j) const { return length() * j / M; }

TorusGrid full_band(double lambda, int M) { return TorusGrid(lambda, M, M / 2 - 1); }

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx a) {
    for (auto& z : c_) z *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx a, SpectralField b) { return b *= a; }

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw grid_mismatch("fields live on different grids");
}

SpectralField rebanded(const SpectralField& f, int nmax) {
    const auto& g = f.grid();
    int M = g.M;
    while (M <= 2 * nmax) M *= 2;
    return regridded(f, TorusGrid(g.lambda, M, nmax));
}

SpectralField regridded(const SpectralField& f, const TorusGrid& g) {
    if (g.lambda != f.grid().lambda) throw grid_mismatch("regrid across different lambda");
    SpectralField out(g);
    int b = std::min(g.nmax, f.nmax());
    for (int n = -b; n <= b; ++n) out[n] = f[n];
    return out;
}

std::vector<cplx> to_nodes(const SpectralField& f, int P) {
    const int nm = f.nmax();
    if (P <= 2 * nm) throw std::invalid_argument("too few nodes for band");
    std::vector<cplx> v(P);
    const double s = 1.0 / f.grid().length();
    for (int n = -nm; n <= nm; ++n) v[(n + P) % P] = s * f[n];
    fft_inplace(v, FFTW_BACKWARD);
    return v;
}

SpectralField from_nodes(const std::vector<cplx>& samples, const TorusGrid& grid) {
    const int P = int(samples.size());
    if (P <= 2 * grid.nmax) throw std::invalid_argument("too few nodes for band");
    std::vector<cplx> v(samples);
    fft_inplace(v, FFTW_FORWARD);
    SpectralField f(grid);
    const double s = grid.length() / P;
    for (int n = -grid.nmax; n <= grid.nmax; ++n) f[n] = s * v[(n + P) % P];
    return f;
}

SpectralField forward_transform(const std::vector<cplx>& samples, const TorusGrid& grid) {
    if (int(samples.size()) != grid.M) throw std::invalid_argument("sample count differs from grid.M");
    return from_nodes(samples, grid);
}

std::vector<cplx> inverse_transform(const SpectralField& f) { return to_nodes(f, f.grid().M); }

int padded_nodes(const TorusGrid& grid, int degree) {
    int pad = degree <= 1 ? 1 : (degree <= 3 ? 2 : 3);
    if (degree > 5) pad = (degree + 2) / 2;
    int P = pad * grid.M;
    // alias-free for a degree-d product read back on the band
    const int need = (degree + 1) * grid.nmax + 1;
    while (P < need) P += grid.M;
    return P;
}

SpectralField star_convolve(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    const int P = padded_nodes(a.grid(), 2);
    auto x = to_nodes(a, P);
    auto y = to_nodes(b, P);
    for (int j = 0; j < P; ++j) x[j] *= y[j];
    return from_nodes(x, a.grid());
}

} // namespace dnls
