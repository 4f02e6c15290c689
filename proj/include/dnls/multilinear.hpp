#pragma once

#include "dnls/errors.hpp"
#include "dnls/torus.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace dnls {

constexpr int kMaxArity = 10;

// Integer-index tuple; k_j = idx[j] / lambda. Slots are 0-based here, the
// usual 1-based names k_1..k_n map to idx[0..n-1].
struct FrequencyTuple {
    int n = 0;
    std::array<int, kMaxArity> idx{};
    double lambda = 1;

    FrequencyTuple() = default;
    FrequencyTuple(std::initializer_list<int> ids, double lam = 1);

    double k(int j) const { return idx[j] / lambda; }
    std::array<double, kMaxArity> values() const;
    bool on_gamma() const;
    // |k| sorted descending: N_1 >= N_2 >= ...
    std::array<double, kMaxArity> sorted_magnitudes() const;
};

using MultiplierFn = std::function<cplx(const double* k)>;

struct Multiplier {
    std::string id;
    int n = 0;
    int sigma = 0;  // declared conjugation symmetry, 0 if none declared
    MultiplierFn eval;

    cplx operator()(const double* k) const { return eval(k); }
    cplx operator()(const FrequencyTuple& t) const {
        auto v = t.values();
        return eval(v.data());
    }
};

// X_j^ell: argument j (1-based) replaced by k_j + ... + k_{j+ell}.
Multiplier elongate(const Multiplier& M, int j, int ell);

// sum of (-1)^{j+1} idx_j^2; alpha_n = -i * alpha_scaled / lambda^2
std::int64_t alpha_scaled(const FrequencyTuple& t);
cplx alpha(const FrequencyTuple& t);

// omega_1+..+omega_4 with tau in units of 1/lambda^2 (integers, zero sum),
// compared exactly against 2 k12 k14.
bool modulation_sum_check(const FrequencyTuple& t, const std::array<std::int64_t, 4>& tau);

// All zero-sum n-tuples with |idx_j| <= bound in lexicographic order.
void enumerate_gamma(int n, int bound, const std::function<void(const FrequencyTuple&)>& visit,
                     double lambda = 1, double max_visits = 5e9);
std::int64_t count_gamma(int n, int bound);

struct LambdaOptions {
    double max_visits = 2e10;
    // per-slot active-mode caps by arity
    int max_modes_low = 65;   // n <= 6
    int max_modes_high = 25;  // n >= 8
};

// Sum over Gamma_n of M(k) prod_j slot_j(k_j) times (1/(2 pi lambda))^{n-1},
// slot_j = f_j^ for odd j and conj(f_j^(-k)) for even j (1-based).
cplx lambda_form(const Multiplier& M, const std::vector<const SpectralField*>& fields, const LambdaOptions& opt = {});
// f, conj f, f, conj f, ...
cplx lambda_form(const Multiplier& M, const SpectralField& f, const LambdaOptions& opt = {});

// Transform paths for the two separable forms.
// Lambda_2(k1 k2; f) = -int |f_x|^2
cplx lambda2_k1k2(const SpectralField& f);
// Lambda_4(k1 + k3; w) = -2i int |w|^2 conj(w) w_x
cplx lambda4_k13(const SpectralField& w);

// Samples tuples and returns max |conj(M)(-k2,-k1,...,-kn,-k_{n-1}) - sigma M(k)|
// relative to max |M|.
double symmetry_defect(const Multiplier& M, int sigma, int bound, int samples, std::uint64_t seed, double lambda = 1);

} // namespace dnls
