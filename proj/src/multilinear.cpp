#include "dnls/multilinear.hpp"

#include "dnls/fields.hpp"
#include "dnls/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dnls {

FrequencyTuple::FrequencyTuple(std::initializer_list<int> ids, double lam) : n(int(ids.size())), lambda(lam) {
    if (n > kMaxArity) throw std::invalid_argument("FrequencyTuple: arity too large");
    std::copy(ids.begin(), ids.end(), idx.begin());
}

std::array<double, kMaxArity> FrequencyTuple::values() const {
    std::array<double, kMaxArity> v{};
    for (int j = 0; j < n; ++j) v[j] = idx[j] / lambda;
    return v;
}

bool FrequencyTuple::on_gamma() const {
    long s = 0;
    for (int j = 0; j < n; ++j) s += idx[j];
    return s == 0;
}

std::array<double, kMaxArity> FrequencyTuple::sorted_magnitudes() const {
    std::array<double, kMaxArity> v{};
    for (int j = 0; j < n; ++j) v[j] = std::abs(idx[j]) / lambda;
    std::sort(v.begin(), v.begin() + n, std::greater<>());
    return v;
}

Multiplier elongate(const Multiplier& M, int j, int ell) {
    if (j < 1 || j > M.n) throw std::invalid_argument("elongate: index out of range");
    if (ell < 0 || ell % 2) throw std::invalid_argument("elongate: ell must be even and >= 0");
    if (ell == 0) return M;
    if (M.n + ell > kMaxArity) throw std::invalid_argument("elongate: arity too large");
    Multiplier out;
    out.id = "X" + std::to_string(j) + "^" + std::to_string(ell) + "(" + M.id + ")";
    out.n = M.n + ell;
    out.sigma = 0;
    const int n = M.n;
    auto inner = M.eval;
    out.eval = [inner, n, j, ell](const double* k) {
        double a[kMaxArity];
        for (int i = 0; i < j - 1; ++i) a[i] = k[i];
        double s = 0;
        for (int i = j - 1; i <= j - 1 + ell; ++i) s += k[i];
        a[j - 1] = s;
        for (int i = j; i < n; ++i) a[i] = k[i + ell];
        return inner(a);
    };
    return out;
}

std::int64_t alpha_scaled(const FrequencyTuple& t) {
    std::int64_t s = 0;
    for (int j = 0; j < t.n; ++j) {
        const std::int64_t q = std::int64_t(t.idx[j]) * t.idx[j];
        s += (j % 2 == 0) ? q : -q;
    }
    return s;
}

cplx alpha(const FrequencyTuple& t) {
    return cplx(0, -double(alpha_scaled(t)) / (t.lambda * t.lambda));
}

bool modulation_sum_check(const FrequencyTuple& t, const std::array<std::int64_t, 4>& tau) {
    if (t.n != 4 || !t.on_gamma()) throw std::invalid_argument("modulation_sum_check: need a Gamma_4 tuple");
    if (tau[0] + tau[1] + tau[2] + tau[3] != 0) throw std::invalid_argument("modulation_sum_check: taus must sum to 0");
    std::int64_t omega = 0;
    for (int j = 0; j < 4; ++j) {
        const std::int64_t q = std::int64_t(t.idx[j]) * t.idx[j];
        omega += tau[j] + ((j % 2 == 0) ? q : -q);
    }
    const std::int64_t k12 = t.idx[0] + t.idx[1], k14 = t.idx[0] + t.idx[3];
    return omega == 2 * k12 * k14;
}

void enumerate_gamma(int n, int bound, const std::function<void(const FrequencyTuple&)>& visit, double lambda,
                     double max_visits) {
    if (n < 1 || n > kMaxArity || bound < 0) throw std::invalid_argument("enumerate_gamma: bad arguments");
    if (std::pow(2.0 * bound + 1, n - 1) > max_visits) throw guard_exceeded("enumerate_gamma: size guard exceeded");
    FrequencyTuple t;
    t.n = n;
    t.lambda = lambda;
    // depth-first in increasing order; the last slot is forced, so this is lexicographic
    auto rec = [&](auto&& self, int j, int sum) -> void {
        if (j == n - 1) {
            if (std::abs(sum) <= bound) {
                t.idx[j] = -sum;
                visit(t);
            }
            return;
        }
        const int rem = (n - 1 - j) * bound;  // reach of the remaining slots
        for (int a = -bound; a <= bound; ++a) {
            if (std::abs(sum + a) > rem) continue;
            t.idx[j] = a;
            self(self, j + 1, sum + a);
        }
    };
    rec(rec, 0, 0);
}

std::int64_t count_gamma(int n, int bound) {
    std::int64_t c = 0;
    enumerate_gamma(n, bound, [&](const FrequencyTuple&) { ++c; });
    return c;
}

namespace {

cplx tree_sum(std::vector<cplx>& v) {
    if (v.empty()) return 0;
    std::size_t len = v.size();
    while (len > 1) {
        const std::size_t half = (len + 1) / 2;
        for (std::size_t i = 0; i + half < len; ++i) v[i] += v[i + half];
        len = half;
    }
    return v[0];
}

} // namespace

cplx lambda_form(const Multiplier& M, const std::vector<const SpectralField*>& fields, const LambdaOptions& opt) {
    const int n = int(fields.size());
    if (n < 2 || n % 2 || n > kMaxArity) throw std::invalid_argument("lambda_form: arity must be even in [2,10]");
    if (M.n != n) throw std::invalid_argument("lambda_form: multiplier arity does not match field count");
    const TorusGrid& g = fields[0]->grid();
    for (auto* f : fields) require_same_grid(*fields[0], *f);
    const int K = g.nmax, W = 2 * K + 1;

    std::vector<std::vector<cplx>> slot(n, std::vector<cplx>(W));
    std::vector<std::vector<int>> active(n);
    for (int j = 0; j < n; ++j) {
        const SpectralField& f = *fields[j];
        for (int a = -K; a <= K; ++a) {
            const cplx v = (j % 2 == 0) ? f[a] : std::conj(f[-a]);
            slot[j][a + K] = v;
            if (v != cplx(0)) active[j].push_back(a);
        }
    }
    const int cap = n <= 6 ? opt.max_modes_low : opt.max_modes_high;
    double visits = 1;
    for (int j = 0; j < n; ++j) {
        if (int(active[j].size()) > cap)
            throw guard_exceeded("lambda_form: " + std::to_string(active[j].size()) + " active modes in a slot, cap " +
                                 std::to_string(cap) + " for n = " + std::to_string(n));
        if (active[j].empty()) return 0;
        if (j < n - 1) visits *= double(active[j].size());
    }
    if (visits > opt.max_visits) throw guard_exceeded("lambda_form: enumeration size guard exceeded");

    const double lam = g.lambda;
    const auto& lead = active[0];
    std::vector<cplx> partial(lead.size());
    parallel_for(int(lead.size()), [&](int li) {
        double k[kMaxArity];
        cplx acc = 0;
        const int a0 = lead[li];
        k[0] = a0 / lam;
        auto rec = [&](auto&& self, int j, int sum, cplx prod) -> void {
            if (j == n - 1) {
                const int a = -sum;
                if (a < -K || a > K) return;
                const cplx v = slot[j][a + K];
                if (v == cplx(0)) return;
                k[j] = a / lam;
                acc += M.eval(k) * prod * v;
                return;
            }
            const int rem = (n - 1 - j) * K;
            for (int a : active[j]) {
                if (std::abs(sum + a) > rem) continue;
                k[j] = a / lam;
                self(self, j + 1, sum + a, prod * slot[j][a + K]);
            }
        };
        rec(rec, 1, a0, slot[0][a0 + K]);
        partial[li] = acc;
    });
    return tree_sum(partial) * std::pow(1.0 / g.length(), n - 1);
}

cplx lambda_form(const Multiplier& M, const SpectralField& f, const LambdaOptions& opt) {
    std::vector<const SpectralField*> fs(M.n, &f);
    return lambda_form(M, fs, opt);
}

cplx lambda2_k1k2(const SpectralField& f) {
    double s = 0;
    for (int a = -f.nmax(); a <= f.nmax(); ++a) s += f.grid().k(a) * f.grid().k(a) * std::norm(f[a]);
    return -s / f.grid().length();
}

cplx lambda4_k13(const SpectralField& w) {
    const int P = padded_nodes(w.grid(), 4);
    auto u = to_nodes(w, P);
    auto ux = to_nodes(derivative(w), P);
    std::vector<cplx> q(P);
    for (int j = 0; j < P; ++j) q[j] = std::norm(u[j]) * std::conj(u[j]) * ux[j];
    return cplx(0, -2) * integrate_nodes(q, w.grid().length());
}

double symmetry_defect(const Multiplier& M, int sigma, int bound, int samples, std::uint64_t seed, double lambda) {
    const int n = M.n;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-bound, bound);
    double worst = 0, scale = 0;
    int done = 0;
    while (done < samples) {
        double k[kMaxArity], r[kMaxArity];
        int idx[kMaxArity];
        int sum = 0;
        for (int j = 0; j < n - 1; ++j) sum += (idx[j] = pick(rng));
        if (std::abs(sum) > bound) continue;
        idx[n - 1] = -sum;
        for (int j = 0; j < n; ++j) k[j] = idx[j] / lambda;
        // (-k2, -k1, -k4, -k3, ...)
        for (int j = 0; j < n; j += 2) {
            r[j] = -k[j + 1];
            r[j + 1] = -k[j];
        }
        const cplx m = M.eval(k);
        const cplx mr = std::conj(M.eval(r));
        worst = std::max(worst, std::abs(mr - double(sigma) * m));
        scale = std::max(scale, std::abs(m));
        ++done;
    }
    return scale > 0 ? worst / scale : worst;
}

} // namespace dnls
