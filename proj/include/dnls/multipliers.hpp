#pragma once

#include "dnls/imethod.hpp"
#include "dnls/multilinear.hpp"

#include <string>
#include <vector>

namespace dnls {

struct OmegaParams {
    double C_sim = 9;    // a ~ b  iff b/C_sim <= a <= C_sim b
    double C_much = 16;  // a >> b iff a >= C_much b (and a > 0)
    double c12 = 1;      // constant in the opposite-parity lower bound on |k12|
};

enum class OmegaRegion { Omega1, Omega2, Omega3, Complement };
const char* to_string(OmegaRegion r);

// Odd slots sorted by |k| descending, even slots likewise, parity classes
// swapped when |k2| > |k1|. Returns the permuted tuple.
void normalize_tuple(const double* k, int n, double* out);
bool is_normalized(const double* k, int n);

// alpha_6 / (-i), i.e. k1^2 - k2^2 + ... for any even n
double dispersion(const double* k, int n);

struct correction_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form multipliers for a fixed smoothing symbol on T_lambda.
class MultiplierSet {
public:
    MultiplierSet(const ISymbol& m, double lambda, OmegaParams p = {});

    const ISymbol& symbol() const { return sym_; }
    double lambda() const { return lambda_; }
    double N() const { return sym_.N(); }
    const OmegaParams& omega_params() const { return omega_; }

    double m(double k) const;

    cplx M4_1(const double* k) const;
    cplx sigma4(const double* k) const;
    cplx M4(const double* k) const;
    cplx K4_1(const double* k) const;
    cplx sigma4_tilde(const double* k) const;

    cplx K6_1(const double* k) const;
    cplx K6_2(const double* k) const;
    cplx M6_2(const double* k) const;
    cplx M8_2(const double* k) const;

    OmegaRegion omega(const double* k) const;
    // throws correction_violation if alpha_6 vanishes inside Omega
    cplx sigma6(const double* k) const;

    cplx M8_3(const double* k) const;
    cplx K8_3(const double* k) const;
    cplx M10_3(const double* k) const;
    cplx K6_3_tilde(const double* k) const;
    cplx K6_4_tilde(const double* k) const;
    cplx K8_3_tilde(const double* k) const;

    // Wrapped for lambda_form; ids as listed by multiplier_ids().
    Multiplier get(const std::string& id) const;

private:
    bool zero_lattice(double x) const { return std::abs(x) * lambda_ < 0.5; }
    bool zero_quadratic(double x) const { return std::abs(x) * lambda_ * lambda_ < 0.5; }
    cplx M4_args(double a, double b, double c, double d) const;

    ISymbol sym_;
    double lambda_;
    OmegaParams omega_;
    std::vector<double> table_;
    int radius_;
};

std::vector<std::string> multiplier_ids();

struct BoundReport {
    std::string lemma;
    std::string region;
    double N = 0;
    double lambda = 1;
    double s = 0;
    std::string symbol;
    int index_bound = 0;
    long long visited = 0;  // tuples inside the region
    double max_ratio = 0;
    std::vector<int> witness;  // index tuple attaining max_ratio
    bool empty = true;
};

std::vector<std::string> bound_ids();

// Scans the lemma's region inside the index box and returns sup |M| / bound.
BoundReport verify_bound(const std::string& lemma, double N, double lambda, const OmegaParams& p, int index_bound,
                         double s = 0.8, Interpolant kind = Interpolant::Smoothstep);

// Box used by the stability runs: lambda = 2 and index bound 3, 2, 1 times
// lambda N for arity 4, 6, 8.
struct ScanSetting {
    double lambda = 2;
    int index_bound = 0;
};
ScanSetting default_scan(const std::string& lemma, double N);

std::string to_json(const BoundReport& r);

} // namespace dnls
