#include "dnls/experiments.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>

namespace dnls {

SpectralField natural_scaling(const SpectralField& f, double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("natural_scaling: lambda must be positive");
    const auto& g = f.grid();
    SpectralField out(TorusGrid(g.lambda * lambda, g.M, g.nmax));
    const double c = std::sqrt(lambda);
    for (int n = -g.nmax; n <= g.nmax; ++n) out[n] = c * f[n];
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double d = n * sxx - sx * sx;
    if (d == 0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / d;
}

IncrementScan almost_conservation_scan(const SpectralField& seed, double s, const std::vector<double>& N_list,
                                       double t_window, const IncrementOptions& opt) {
    if (seed.grid().lambda != 1) throw std::invalid_argument("almost_conservation_scan: seed must live on T_1");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("almost_conservation_scan: need 0 < s < 1");
    IncrementScan scan;
    scan.eval_radius = std::min(opt.eval_radius, seed.nmax());
    std::vector<double> xs, ys;
    for (double N : N_list) {
        IncrementRow row;
        row.N = N;
        row.lambda = std::pow(N, (1 - s) / s);
        auto v0 = natural_scaling(seed, row.lambda);
        row.band = scan.eval_radius;
        row.threshold_index = row.lambda * N;
        row.corrections_active = row.band >= row.threshold_index;

        TorusGrid eg = rebanded(v0, row.band).grid();
        auto sym = build_symbol(s, N, eg, opt.kind);
        auto e3 = [&](const SpectralField& v) {
            return modified_energy(rebanded(v, row.band), sym, opt.omega).e3;
        };

        SolverConfig cfg;
        cfg.dt = opt.dt;
        cfg.t_end = t_window;
        cfg.keep_states = true;
        const long steps = t_window > 0 ? std::lround(std::ceil(t_window / opt.dt - 1e-9)) : 0;
        cfg.diag_stride = std::max<long>(1, steps / std::max(1, opt.samples));
        auto tr = integrate(v0, cfg);
        row.e3_start = e3(tr.states.front());
        double sum = 0;
        for (std::size_t i = 1; i < tr.states.size(); ++i) {
            const double d = e3(tr.states[i]) - row.e3_start;
            row.sup_increment = std::max(row.sup_increment, std::abs(d));
            sum += d;
        }
        if (tr.states.size() > 1) row.mean_increment = sum / double(tr.states.size() - 1);
        xs.push_back(N);
        ys.push_back(row.sup_increment);
        scan.rows.push_back(row);
    }
    scan.fitted_slope = loglog_slope(xs, ys);
    return scan;
}

// ---------------------------------------------------------------------------

std::int64_t illposed_frequency(double s, double b, double b_tilde, double T) {
    if (!(s >= 0 && s < 0.5)) throw std::invalid_argument("illposed: need 0 <= s < 1/2");
    if (!(T > 0)) throw std::invalid_argument("illposed: need T > 0");
    const double gap = b * b - b_tilde * b_tilde;
    if (gap == 0) throw std::invalid_argument("illposed: |b| = |b~| leaves t_N undefined");
    // t_N = pi / (N^{1-2s} gap) <= T/2
    const double need = 2 * M_PI / (T * std::abs(gap));
    const double x = std::pow(need, 1 / (1 - 2 * s));
    if (!(x < 4e18)) throw guard_exceeded("illposed: frequency beyond 64-bit range");
    auto N = std::max<std::int64_t>(1, std::int64_t(std::ceil(x)));
    auto ok = [&](std::int64_t n) { return std::pow(double(n), 1 - 2 * s) >= need; };
    while (N > 1 && ok(N - 1)) --N;
    while (!ok(N)) ++N;
    return N;
}

IllposedReport illposedness_demo(double s, double epsilon, double delta, double T, const IllposedOptions& opt) {
    if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("illposed: need 0 < epsilon < 1");
    if (!(delta >= 0 && delta < epsilon)) throw std::invalid_argument("illposed: need 0 <= delta < epsilon");
    IllposedReport r;
    r.s = s;
    r.epsilon = epsilon;
    r.delta = delta;
    r.T = T;
    r.b = epsilon;
    r.b_tilde = epsilon - delta;
    r.N = illposed_frequency(s, r.b, r.b_tilde, T);
    const double phase_gap = std::pow(double(r.N), 1 - 2 * s) * (r.b * r.b - r.b_tilde * r.b_tilde);
    r.t_N = M_PI / phase_gap;
    if (r.N > opt.max_nmax)
        throw guard_exceeded("illposed: N = " + std::to_string(r.N) + " exceeds the grid capacity " +
                             std::to_string(opt.max_nmax) + "; raise max_nmax (K_max)");
    const int n = int(r.N);
    int M = 64;
    while (M <= 2 * n) M *= 2;
    TorusGrid g(1, M, n);
    const double scale = std::pow(double(r.N), -s);
    const cplx a = r.b * scale, at = r.b_tilde * scale;
    const NormKind Hs = NormKind::Hs(s);
    r.d0 = norm(exact_monochromatic(a, n, 1, 0, g) - exact_monochromatic(at, n, 1, 0, g), Hs);
    auto v = exact_monochromatic(a, n, 1, r.t_N, g), vt = exact_monochromatic(at, n, 1, r.t_N, g);
    r.dT = norm(v - vt, Hs);
    r.d0_bound = 2 * delta * std::sqrt(2 * M_PI);
    r.dT_bound = 0.5 * epsilon * std::sqrt(2 * M_PI);
    r.certified = r.d0 <= r.d0_bound && r.dT >= r.dT_bound && r.t_N <= T / 2;
    if (opt.step) {
        SolverConfig cfg;
        cfg.dt = opt.dt;
        cfg.t_end = r.t_N;
        auto sv = integrate(exact_monochromatic(a, n, 1, 0, g), cfg).final_state;
        auto st = integrate(exact_monochromatic(at, n, 1, 0, g), cfg).final_state;
        r.stepping_error = std::max(norm(sv - v, NormKind::L2()) / norm(v, NormKind::L2()),
                                    norm(st - vt, NormKind::L2()) / norm(vt, NormKind::L2()));
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Range {
    std::int64_t lo, hi;  // inclusive index range
};

// index ranges of a dyadic shell [N, 2N) on (1/lambda) Z
std::vector<Range> shell(double N, double lambda, int sign) {
    const auto lo = std::int64_t(std::ceil(N * lambda - 1e-9));
    const auto hi = std::int64_t(std::ceil(2 * N * lambda - 1e-9)) - 1;
    std::vector<Range> out;
    if (sign >= 0) out.push_back({lo, hi});
    if (sign <= 0) out.push_back({-hi, -lo});
    return out;
}

} // namespace

CountReport bilinear_counting(double N1, double N2, double lambda, int sample_count, Supports sup,
                              std::uint64_t seed) {
    if (!(N1 > 0 && N2 > 0 && lambda > 0)) throw std::invalid_argument("bilinear_counting: sizes must be positive");
    if (N2 > N1) throw std::invalid_argument("bilinear_counting: need N2 <= N1");
    const bool separated = N1 >= 16 * N2;
    CountReport r;
    r.N1 = N1;
    r.N2 = N2;
    r.lambda = lambda;
    switch (sup) {
    case Supports::Separated:
        if (!separated)
            throw assumption_refused("bilinear_counting: N1 ~ N2 needs the supports on opposite sides of the origin; "
                                     "with both on one side |k1 - k2| can vanish and the count is not bounded "
                                     "by 1 + lambda/N1");
        r.supports = "separated";
        break;
    case Supports::OppositeSides: r.supports = "opposite-sides"; break;
    case Supports::SameSide:
        if (!separated)
            throw assumption_refused("bilinear_counting: comparable supports on the same side of the origin are "
                                     "excluded; the counting bound requires opposite sides (|k1 - k2| can vanish)");
        r.supports = "same-side";
        break;
    }
    const int s1 = sup == Supports::Separated ? 0 : 1;
    const int s2 = sup == Supports::Separated ? 0 : (sup == Supports::OppositeSides ? -1 : 1);
    const auto S1 = shell(N1, lambda, s1), S2 = shell(N2, lambda, s2);
    const std::int64_t lam2 = std::int64_t(std::llround(lambda * lambda));
    if (std::abs(lambda * lambda - double(lam2)) > 1e-9)
        throw std::invalid_argument("bilinear_counting: lambda^2 must be an integer");

    std::int64_t kmin = std::numeric_limits<std::int64_t>::max(), kmax = std::numeric_limits<std::int64_t>::min();
    std::int64_t size2 = 0;
    for (auto a : S1)
        for (auto b : S2) {
            kmin = std::min(kmin, a.lo + b.lo);
            kmax = std::max(kmax, a.hi + b.hi);
        }
    for (auto b : S2) size2 += b.hi - b.lo + 1;
    const std::int64_t nk = kmax - kmin + 1;

    std::vector<std::int64_t> ks;
    r.exhaustive = sample_count <= 0 || double(nk) * double(size2) <= 2e7 || nk <= sample_count;
    if (r.exhaustive) {
        for (auto k = kmin; k <= kmax; ++k) ks.push_back(k);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> d(kmin, kmax);
        for (int i = 0; i < sample_count; ++i) ks.push_back(d(rng));
        std::sort(ks.begin(), ks.end());
    }
    r.k_values = std::int64_t(ks.size());
    r.bound = 8 * (1 + lambda / N1);

    std::vector<std::int64_t> n2s, vals;
    for (auto k : ks) {
        n2s.clear();
        for (auto b : S2)
            for (auto n2 = b.lo; n2 <= b.hi; ++n2) {
                const auto n1 = k - n2;
                bool in1 = false;
                for (auto a : S1) in1 = in1 || (n1 >= a.lo && n1 <= a.hi);
                if (in1) n2s.push_back(n2);
            }
        if (n2s.empty()) continue;
        // (k - n2)^2 + n2^2 grows with |2 n2 - k|: merge the two halves
        std::sort(n2s.begin(), n2s.end());
        const auto mid = std::lower_bound(n2s.begin(), n2s.end(), k, [](std::int64_t n2, std::int64_t kk) {
            return 2 * n2 < kk;
        });
        auto q = [k](std::int64_t n2) { return (k - n2) * (k - n2) + n2 * n2; };
        vals.clear();
        auto lo = std::make_reverse_iterator(mid);
        auto hi = mid;
        while (lo != n2s.rend() || hi != n2s.end()) {
            if (hi == n2s.end() || (lo != n2s.rend() && q(*lo) <= q(*hi))) vals.push_back(q(*lo++));
            else vals.push_back(q(*hi++));
        }
        std::size_t i = 0;
        for (std::size_t j = 0; j < vals.size(); ++j) {
            while (vals[j] - vals[i] >= lam2) ++i;
            const auto c = std::int64_t(j - i + 1);
            if (c > r.max_cardinality) {
                r.max_cardinality = c;
                r.witness = {k, vals[i]};
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

Budget growth_budget(double s, double T, double gamma, double kappa) {
    if (!(s >= 0.5 && s < 1)) throw std::invalid_argument("growth_budget: need 1/2 <= s < 1");
    if (!(T > 0)) throw std::invalid_argument("growth_budget: need T > 0");
    Budget b;
    b.s = s;
    b.T = T;
    b.gamma = gamma;
    b.kappa = kappa;
    b.T_exponent = gamma + (kappa - 2) * (1 - s) / s;
    if (!(b.T_exponent > 0)) throw std::invalid_argument("growth_budget: gamma, kappa give no admissible N");
    double N = 1;
    auto fits = [&](double n) {
        const double lam = std::pow(n, (1 - s) / s);
        return lam * lam * T <= std::pow(n, gamma) * std::pow(lam, kappa);
    };
    while (!fits(N)) N *= 2;
    b.N = N;
    b.lambda = std::pow(N, (1 - s) / s);
    b.J_min = b.lambda * b.lambda * T;
    b.J_bound = std::pow(N, gamma) * std::pow(b.lambda, kappa);
    b.growth_exponent = 2 - 2 * s;
    b.predicted_growth = std::pow(T, b.growth_exponent);
    return b;
}

} // namespace dnls
