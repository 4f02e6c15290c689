#include "dnls/multipliers.hpp"

#include "dnls/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace dnls {

namespace {

constexpr cplx I1(0, 1);
constexpr std::array<std::array<int, 3>, 6> kPerm3 = {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};


// arguments of X_j^ell at 1-based j for an n_out-ary tuple
int elongated_args(const double* k, int n_out, int j, int ell, double* a) {
    for (int i = 0; i < j - 1; ++i) a[i] = k[i];
    double s = 0;
    for (int i = j - 1; i <= j - 1 + ell; ++i) s += k[i];
    a[j - 1] = s;
    for (int i = j; i < n_out - ell; ++i) a[i] = k[i + ell];
    return n_out - ell;
}

} // namespace

const char* to_string(OmegaRegion r) {
    switch (r) {
    case OmegaRegion::Omega1: return "Omega1";
    case OmegaRegion::Omega2: return "Omega2";
    case OmegaRegion::Omega3: return "Omega3";
    case OmegaRegion::Complement: return "complement";
    }
    return "?";
}

void normalize_tuple(const double* k, int n, double* out) {
    double odd[kMaxArity / 2], even[kMaxArity / 2];
    const int h = n / 2;
    for (int i = 0; i < h; ++i) {
        odd[i] = k[2 * i];
        even[i] = k[2 * i + 1];
    }
    auto by_mag = [](double a, double b) { return std::abs(a) > std::abs(b); };
    std::stable_sort(odd, odd + h, by_mag);
    std::stable_sort(even, even + h, by_mag);
    const bool swap = std::abs(even[0]) > std::abs(odd[0]);
    for (int i = 0; i < h; ++i) {
        out[2 * i] = swap ? even[i] : odd[i];
        out[2 * i + 1] = swap ? odd[i] : even[i];
    }
}

bool is_normalized(const double* k, int n) {
    if (std::abs(k[1]) > std::abs(k[0])) return false;
    for (int j = 2; j < n; ++j)
        if (std::abs(k[j]) > std::abs(k[j - 2])) return false;
    return true;
}

double dispersion(const double* k, int n) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += (j % 2 == 0 ? 1 : -1) * k[j] * k[j];
    return s;
}

MultiplierSet::MultiplierSet(const ISymbol& m, double lambda, OmegaParams p) : sym_(m), lambda_(lambda), omega_(p) {
    if (!(lambda > 0)) throw std::invalid_argument("MultiplierSet: lambda must be positive");
    if (!(p.C_sim >= 1 && p.C_much > p.C_sim && p.c12 > 0)) throw std::invalid_argument("OmegaParams: bad constants");
    radius_ = 1 << 14;
    table_.resize(radius_ + 1);
    for (int i = 0; i <= radius_; ++i) table_[i] = sym_(i / lambda_);
}

double MultiplierSet::m(double k) const {
    const double a = std::abs(k) * lambda_;
    if (a <= radius_) {
        const int i = int(a + 0.5);
        if (std::abs(a - i) < 1e-9) return table_[i];
    }
    return sym_(k);
}

cplx MultiplierSet::M4_args(double a, double b, double c, double d) const {
    const double k12 = a + b, k14 = a + d;
    const double ma = m(a), mb = m(b), mc = m(c), md = m(d);
    // resonant set: keep M4 = 2 sigma4 + m1m2m3m4 k13 / 2 with sigma4 = 0 there
    if (zero_lattice(k12) || zero_lattice(k14)) return 0.5 * ma * mb * mc * md * (a + c);
    const double num = ma * ma * a * a * c + mb * mb * b * b * d + mc * mc * c * c * a + md * md * d * d * b;
    return -num / (2 * k12 * k14);
}

cplx MultiplierSet::M4_1(const double* k) const {
    const double m1 = m(k[0]), m2 = m(k[1]), m3 = m(k[2]), m4 = m(k[3]);
    const double num = m1 * m1 * k[0] * k[0] * k[2] + m2 * m2 * k[1] * k[1] * k[3] + m3 * m3 * k[2] * k[2] * k[0] +
                       m4 * m4 * k[3] * k[3] * k[1];
    const double prod = m1 * m2 * m3 * m4 * (k[0] + k[1]) * (k[0] + k[2]) * (k[0] + k[3]);
    return -0.5 * I1 * (prod + num);
}

cplx MultiplierSet::sigma4(const double* k) const {
    const double k12 = k[0] + k[1], k14 = k[0] + k[3];
    if (zero_lattice(k12) || zero_lattice(k14)) return 0;
    const double m1 = m(k[0]), m2 = m(k[1]), m3 = m(k[2]), m4 = m(k[3]);
    const double num = m1 * m1 * k[0] * k[0] * k[2] + m2 * m2 * k[1] * k[1] * k[3] + m3 * m3 * k[2] * k[2] * k[0] +
                       m4 * m4 * k[3] * k[3] * k[1];
    return -0.25 * (m1 * m2 * m3 * m4 * (k[0] + k[2]) + num / (k12 * k14));
}

cplx MultiplierSet::M4(const double* k) const { return M4_args(k[0], k[1], k[2], k[3]); }

cplx MultiplierSet::K4_1(const double* k) const {
    double s = 0;
    for (int j = 0; j < 4; ++j) {
        const double mj = m(k[j]);
        s += (j % 2 == 0 ? -1 : 1) * mj * mj * k[j] * k[j];
    }
    return 0.5 * s;
}

cplx MultiplierSet::sigma4_tilde(const double* k) const {
    const double d = dispersion(k, 4);
    // resonant value matching the flat-symbol limit -i/2
    if (zero_quadratic(d)) return -0.5 * I1 * m(k[0]) * m(k[1]) * m(k[2]) * m(k[3]);
    return K4_1(k) / (-I1 * d);
}

// symmetrized (1/4) sum_j (-1)^{j+1} X_j^2(k13 m1 m2 m3 m4): a single odd slot
// with an even pair, against an odd pair with a single even slot
cplx MultiplierSet::K6_1(const double* k) const {
    double mk[6];
    for (int j = 0; j < 6; ++j) mk[j] = m(k[j]);
    double odd = 0, even = 0;
    for (int i = 0; i < 3; ++i)
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                const int o = 2 * i, e1 = 2 * p + 1, e2 = 2 * q + 1;
                odd -= (k[e1] + k[e2]) * mk[o] * mk[e1] * mk[e2] * m(-k[o] - k[e1] - k[e2]);
                const int e = 2 * i + 1, o1 = 2 * p, o2 = 2 * q;
                even += (k[o1] + k[o2]) * mk[o1] * mk[o2] * mk[e] * m(-k[o1] - k[o2] - k[e]);
            }
    return (odd - even) / 18.0;
}

// mass-coupled elongations alternate: conjugate slots pick up the opposite phase
cplx MultiplierSet::K6_2(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 4; ++j) {
        elongated_args(k, 6, j, 2, a);
        s += (j % 2 == 1 ? 1.0 : -1.0) * sigma4(a);
    }
    return s;
}

namespace {

// M4 with the four symbol values supplied
inline double M4_with(double a, double b, double c, double d, double ma, double mb, double mc, double md,
                      bool resonant) {
    if (resonant) return 0.5 * ma * mb * mc * md * (a + c);
    const double num = ma * ma * a * a * c + mb * mb * b * b * d + mc * mc * c * c * a + md * md * d * d * b;
    return -num / (2 * (a + b) * (a + d));
}

} // namespace

// The permutation sums collapse: each M4 argument depends on at most four
// distinct slots, the rest only through the zero-sum constraint.
cplx MultiplierSet::M6_2(const double* k) const {
    double mk[6];
    double first = 0;
    for (int j = 0; j < 6; ++j) {
        mk[j] = m(k[j]);
        first += (j % 2 == 0 ? -1 : 1) * mk[j] * mk[j] * k[j] * k[j];
    }
    const double So = k[0] + k[2] + k[4], Se = k[1] + k[3] + k[5];
    auto M4x = [&](double a, double b, double c, double d, double ma, double mb, double mc, double md) {
        return M4_with(a, b, c, d, ma, mb, mc, md, zero_lattice(a + b) || zero_lattice(a + d));
    };
    double acc = 0;
    for (const auto& po : kPerm3)
        for (const auto& pe : kPerm3) {
            const int a = 2 * po[0], c = 2 * po[1], e = 2 * po[2];
            const int b = 2 * pe[0] + 1, d = 2 * pe[1] + 1, f = 2 * pe[2] + 1;
            // each distinct term appears twice among the 36 orderings; take the half with a < c etc.
            if (a < c) {
                const double x = So - k[e] + k[b];
                acc += 2 * M4x(x, k[d], k[e], k[f], m(x), mk[d], mk[e], mk[f]) * k[b];
            }
            if (b < d) {
                const double x = Se - k[f] + k[c];
                acc += 2 * M4x(k[a], x, k[e], k[f], mk[a], m(x), mk[e], mk[f]) * k[c];
            }
            if (c < e) {
                const double x = So - k[a] + k[d];
                acc += 2 * M4x(k[a], k[b], x, k[f], mk[a], mk[b], m(x), mk[f]) * k[d];
            }
            if (d < f) {
                const double x = Se - k[b] + k[e];
                acc += 2 * M4x(k[a], k[b], k[c], x, mk[a], mk[b], mk[c], m(x)) * k[e];
            }
        }
    return I1 / 6.0 * first - I1 / 72.0 * acc;
}

cplx MultiplierSet::M8_2(const double* k) const {
    double mk[8];
    for (int j = 0; j < 8; ++j) mk[j] = m(k[j]);
    auto M4x = [&](double a, double b, double c, double d, double ma, double mb, double mc, double md) {
        return M4_with(a, b, c, d, ma, mb, mc, md, zero_lattice(a + b) || zero_lattice(a + d));
    };
    // every distinct term has multiplicity 12 among the 576 orderings;
    // x collects all slots but three, the other three sit in the remaining places
    double acc = 0;
    for (int i = 0; i < 4; ++i)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                if (p == q) continue;
                {
                    const int o = 2 * i, e1 = 2 * p + 1, e2 = 2 * q + 1;
                    const double x = -k[o] - k[e1] - k[e2], mx = m(x);
                    acc += M4x(x, k[e1], k[o], k[e2], mx, mk[e1], mk[o], mk[e2]);
                    acc += M4x(k[o], k[e1], x, k[e2], mk[o], mk[e1], mx, mk[e2]);
                }
                {
                    const int o1 = 2 * p, o2 = 2 * q, e = 2 * i + 1;
                    const double x = -k[o1] - k[o2] - k[e], mx = m(x);
                    acc -= M4x(k[o1], x, k[o2], k[e], mk[o1], mx, mk[o2], mk[e]);
                    acc -= M4x(k[o1], k[e], k[o2], x, mk[o1], mk[e], mk[o2], mx);
                }
            }
    return I1 / 192.0 * acc;
}

OmegaRegion MultiplierSet::omega(const double* k) const {
    double t[6];
    normalize_tuple(k, 6, t);
    double mag[6];
    for (int j = 0; j < 6; ++j) mag[j] = std::abs(t[j]);
    double N_[6];
    std::copy(mag, mag + 6, N_);
    std::sort(N_, N_ + 6, std::greater<>());
    const double N = sym_.N(), Cs = omega_.C_sim, Cm = omega_.C_much;
    auto sim = [&](double a, double b) { return a >= b / Cs && a <= Cs * b; };
    auto much = [&](double a, double b) { return a > 0 && a >= Cm * b; };
    const bool upsilon = sim(N_[0], N_[1]) && N_[1] >= N;
    if (!upsilon) return OmegaRegion::Complement;
    if (much(N_[2], N_[3])) return OmegaRegion::Omega3;
    const bool low3 = much(N, N_[2]);
    if (!low3) return OmegaRegion::Complement;
    // after normalization the runner-up is k2 or k3
    if (mag[2] >= mag[1]) {
        if (sim(mag[0], mag[2]) && mag[2] >= N) return OmegaRegion::Omega1;
        return OmegaRegion::Complement;
    }
    if (sim(mag[0], mag[1]) && mag[1] >= N &&
        std::abs(t[0] + t[1]) > omega_.c12 * std::sqrt(N_[2] / N_[0]) * N_[2])
        return OmegaRegion::Omega2;
    return OmegaRegion::Complement;
}

cplx MultiplierSet::sigma6(const double* k) const {
    if (omega(k) == OmegaRegion::Complement) return 0;
    const double d = dispersion(k, 6);
    if (zero_quadratic(d)) {
        std::ostringstream os;
        os << "alpha_6 vanishes inside Omega at (";
        for (int j = 0; j < 6; ++j) os << (j ? "," : "") << k[j];
        os << ")";
        throw correction_violation(os.str());
    }
    return -M6_2(k) / (-I1 * d);
}

cplx MultiplierSet::M8_3(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 6; ++j) {
        elongated_args(k, 8, j, 2, a);
        s += sigma6(a) * k[j];
    }
    return -I1 * s;
}

cplx MultiplierSet::K8_3(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 6; ++j) {
        elongated_args(k, 8, j, 2, a);
        s += (j % 2 == 1 ? 1.0 : -1.0) * sigma6(a);
    }
    return s;
}

cplx MultiplierSet::M10_3(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 6; ++j) {
        elongated_args(k, 10, j, 4, a);
        s += (j % 2 == 1 ? 1.0 : -1.0) * sigma6(a);
    }
    return 0.5 * I1 * s;
}

cplx MultiplierSet::K6_3_tilde(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 4; ++j) {
        elongated_args(k, 6, j, 2, a);
        s += sigma4_tilde(a) * k[j];
    }
    return I1 * s;
}

cplx MultiplierSet::K6_4_tilde(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 4; ++j) {
        elongated_args(k, 6, j, 2, a);
        s += (j % 2 == 1 ? 1.0 : -1.0) * sigma4_tilde(a);
    }
    return s;
}

cplx MultiplierSet::K8_3_tilde(const double* k) const {
    double a[kMaxArity];
    cplx s = 0;
    for (int j = 1; j <= 4; ++j) {
        elongated_args(k, 8, j, 4, a);
        s += (j % 2 == 0 ? 1.0 : -1.0) * sigma4_tilde(a);
    }
    return 0.5 * I1 * s;
}

namespace {

using Eval = cplx (MultiplierSet::*)(const double*) const;

struct Entry {
    const char* id;
    int n;
    int sigma;
    Eval fn;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"M4_1", 4, 1, &MultiplierSet::M4_1},
        {"sigma4", 4, 1, &MultiplierSet::sigma4},
        {"M4", 4, 1, &MultiplierSet::M4},
        {"K4_1", 4, -1, &MultiplierSet::K4_1},
        {"sigma4_tilde", 4, -1, &MultiplierSet::sigma4_tilde},
        {"K6_1", 6, -1, &MultiplierSet::K6_1},
        {"K6_2", 6, 0, &MultiplierSet::K6_2},
        {"M6_2", 6, 1, &MultiplierSet::M6_2},
        {"M8_2", 8, 0, &MultiplierSet::M8_2},
        {"sigma6", 6, 1, &MultiplierSet::sigma6},
        {"M8_3", 8, 0, &MultiplierSet::M8_3},
        {"K8_3", 8, 0, &MultiplierSet::K8_3},
        {"M10_3", 10, 0, &MultiplierSet::M10_3},
        {"K6_3_tilde", 6, 0, &MultiplierSet::K6_3_tilde},
        {"K6_4_tilde", 6, 0, &MultiplierSet::K6_4_tilde},
        {"K8_3_tilde", 8, 0, &MultiplierSet::K8_3_tilde},
    };
    return r;
}

} // namespace

std::vector<std::string> multiplier_ids() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.id);
    return out;
}

Multiplier MultiplierSet::get(const std::string& id) const {
    for (const auto& e : registry()) {
        if (id != e.id) continue;
        auto self = std::make_shared<const MultiplierSet>(*this);
        Eval fn = e.fn;
        return Multiplier{id, e.n, e.sigma, [self, fn](const double* k) { return ((*self).*fn)(k); }};
    }
    throw std::invalid_argument("unknown multiplier id: " + id);
}

// ---------------------------------------------------------------------------
// pointwise bounds

namespace {

enum class Region { All, Pair13, Pair12, Pair12NonRes, Low3, OmegaCLow3, Omega1Low3 };

const char* region_name(Region r) {
    switch (r) {
    case Region::All: return "all (head-3 box)";
    case Region::Pair13: return "|k1|~|k3|>=N, N3<=N/C_much";
    case Region::Pair12: return "|k1|~|k2|>=N, N3<=N/C_much";
    case Region::Pair12NonRes: return "|k1|~|k2|>=N, N3<=N/C_much, alpha4!=0";
    case Region::Low3: return "N3<=N/C_much";
    case Region::OmegaCLow3: return "N1~N2>=N minus Omega, N3<=N/C_much";
    case Region::Omega1Low3: return "Omega1, N3<=N/C_much";
    }
    return "?";
}

struct Ctx {
    const MultiplierSet& ms;
    const double* k;  // normalized
    const double* Ns; // sorted magnitudes, floored at one lattice step
    double mN1;       // m(N1)
};

struct BoundItem {
    const char* id;
    int n;
    Region region;
    std::function<double(const Ctx&)> value;
    std::function<double(const Ctx&)> bound;
};

const std::vector<BoundItem>& bound_items() {
    using C = const Ctx&;
    static const std::vector<BoundItem> items = {
        {"M4:all", 4, Region::All, [](C c) { return std::abs(c.ms.M4(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
        {"M4:pair13", 4, Region::Pair13, [](C c) { return std::abs(c.ms.M4(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[2]; }},
        {"M4:pair12-residual", 4, Region::Pair12NonRes,
         [](C c) {
             const double m1 = c.ms.m(c.k[0]);
             return std::abs(c.ms.M4(c.k) - m1 * m1 * c.k[1] * c.k[1] / (2 * c.k[0]));
         },
         [](C c) { return c.Ns[2]; }},
        {"M6_2:all", 6, Region::All, [](C c) { return std::abs(c.ms.M6_2(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0] * c.Ns[0]; }},
        {"M6_2:low", 6, Region::Low3, [](C c) { return std::abs(c.ms.M6_2(c.k)); },
         [](C c) { return c.Ns[0] * c.Ns[2]; }},
        {"sigma4:all", 4, Region::All, [](C c) { return std::abs(c.ms.sigma4(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
        {"M8_2:all", 8, Region::All, [](C c) { return std::abs(c.ms.M8_2(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
        {"M8_2:low", 8, Region::Low3, [](C c) { return std::abs(c.ms.M8_2(c.k)); }, [](C c) { return c.Ns[2]; }},
        {"K4_1:all", 4, Region::All, [](C c) { return std::abs(c.ms.K4_1(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0] * c.Ns[0]; }},
        {"K4_1:pair12", 4, Region::Pair12, [](C c) { return std::abs(c.ms.K4_1(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0] * c.Ns[2]; }},
        {"K6_1:all", 6, Region::All, [](C c) { return std::abs(c.ms.K6_1(c.k)); }, [](C) { return 1.0; }},
        {"K6_2:all", 6, Region::All, [](C c) { return std::abs(c.ms.K6_2(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
        {"M6_2:low-split", 6, Region::Low3, [](C c) { return std::abs(c.ms.M6_2(c.k)); },
         [](C c) {
             // k1* + k2*: after normalization the runner-up is k2 or k3
             const double top2 = std::abs(c.k[1]) >= std::abs(c.k[2]) ? c.k[0] + c.k[1] : c.k[0] + c.k[2];
             return c.Ns[0] * std::max(std::abs(top2), 1 / c.ms.lambda()) + c.Ns[2] * c.Ns[2];
         }},
        {"M6_2:offres-low", 6, Region::OmegaCLow3, [](C c) { return std::abs(c.ms.M6_2(c.k)); },
         [](C c) { return std::sqrt(c.Ns[0]) * std::pow(c.Ns[2], 1.5); }},
        {"sigma6:all", 6, Region::All, [](C c) { return std::abs(c.ms.sigma6(c.k)); }, [](C) { return 1.0; }},
        {"sigma6:omega1-low", 6, Region::Omega1Low3, [](C c) { return std::abs(c.ms.sigma6(c.k)); },
         [](C c) { return c.Ns[2] / c.Ns[0]; }},
        {"M8_3:all", 8, Region::All, [](C c) { return std::abs(c.ms.M8_3(c.k)); }, [](C c) { return c.Ns[0]; }},
        {"M8_3:low", 8, Region::Low3, [](C c) { return std::abs(c.ms.M8_3(c.k)); },
         [](C c) { return std::sqrt(c.Ns[0] * c.Ns[2]); }},
        {"sigma4_tilde:all", 4, Region::All, [](C c) { return std::abs(c.ms.sigma4_tilde(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
        {"sigma4_tilde:low", 4, Region::Low3, [](C c) { return std::abs(c.ms.sigma4_tilde(c.k)); },
         [](C c) { return c.mN1 * c.mN1; }},
        {"K6_3_tilde:all", 6, Region::All, [](C c) { return std::abs(c.ms.K6_3_tilde(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0] * c.Ns[0]; }},
        {"K6_3_tilde:low", 6, Region::Low3, [](C c) { return std::abs(c.ms.K6_3_tilde(c.k)); },
         [](C c) { return c.mN1 * c.mN1 * c.Ns[0]; }},
    };
    return items;
}

// Visits normalized tuples (|k1|>=|k3|>=.., |k2|>=|k4|>=.., |k1|>=|k2|) on the
// zero-sum hyperplane with |idx| <= B and at most `head` entries above T.
// Partitioned by the leading index; visit(lead_slot, idx).
void enumerate_normalized(int n, int B, int T, int head,
                          const std::function<void(int, const int*)>& visit) {
    std::vector<int> leads;
    for (int a = -B; a <= B; ++a) leads.push_back(a);
    parallel_for(int(leads.size()), [&](int li) {
        int idx[kMaxArity];
        idx[0] = leads[li];
        auto cap_of = [&](int j) { return j == 1 ? std::abs(idx[0]) : std::abs(idx[j - 2]); };
        auto rec = [&](auto&& self, int j, int sum, int big) -> void {
            if (j == n - 1) {
                const int a = -sum;
                if (std::abs(a) > B || std::abs(a) > cap_of(j)) return;
                if (std::abs(a) > T && big + 1 > head) return;
                idx[j] = a;
                visit(li, idx);
                return;
            }
            int cap = std::min(B, cap_of(j));
            if (big >= head) cap = std::min(cap, T);
            // the remaining slots after j cannot exceed their parity caps
            for (int a = -cap; a <= cap; ++a) {
                idx[j] = a;
                int reach = 0;
                for (int r = j + 1; r < n; ++r) {
                    int q = r - 2;
                    while (q > j) q -= 2;
                    reach += std::min(B, std::abs(idx[q < 0 ? 0 : q]));
                }
                if (std::abs(sum + a) > reach) continue;
                self(self, j + 1, sum + a, big + (std::abs(a) > T ? 1 : 0));
            }
        };
        rec(rec, 1, idx[0], std::abs(idx[0]) > T ? 1 : 0);
    });
}

} // namespace

std::vector<std::string> bound_ids() {
    std::vector<std::string> out;
    for (const auto& b : bound_items()) out.push_back(b.id);
    return out;
}

BoundReport verify_bound(const std::string& lemma, double N, double lambda, const OmegaParams& p, int index_bound,
                         double s, Interpolant kind) {
    const BoundItem* item = nullptr;
    for (const auto& b : bound_items())
        if (lemma == b.id) item = &b;
    if (!item) throw std::invalid_argument("unknown bound id: " + lemma);
    if (index_bound < 1) throw std::invalid_argument("verify_bound: index_bound must be positive");

    MultiplierSet ms(ISymbol(s, N, kind), lambda, p);
    const int n = item->n;
    const int T = int(std::floor(lambda * N / p.C_much + 1e-12));
    const int head = item->region == Region::All ? (n == 4 ? 4 : 3) : 2;
    const double guard = std::pow(2.0 * index_bound + 1, 2) * std::pow(2.0 * T + 1, n - 2);
    if (n > 4 && guard > 5e10) throw guard_exceeded("verify_bound: enumeration too large");

    BoundReport rep;
    rep.lemma = lemma;
    rep.region = region_name(item->region);
    rep.N = N;
    rep.lambda = lambda;
    rep.s = s;
    rep.symbol = kind == Interpolant::Kink ? "kink" : "smoothstep";
    rep.index_bound = index_bound;

    struct Best {
        double ratio = -1;
        long long count = 0;
        std::array<int, kMaxArity> w{};
    };
    std::vector<Best> best(2 * index_bound + 1);
    const double Cs = p.C_sim, Cm = p.C_much;
    auto sim = [&](double a, double b) { return a >= b / Cs && a <= Cs * b; };

    enumerate_normalized(n, index_bound, T, head, [&](int li, const int* idx) {
        double k[kMaxArity], mag[kMaxArity];
        for (int j = 0; j < n; ++j) {
            k[j] = idx[j] / lambda;
            mag[j] = std::abs(k[j]);
        }
        double Ns[kMaxArity];
        std::copy(mag, mag + n, Ns);
        std::sort(Ns, Ns + n, std::greater<>());
        const bool low3 = N >= Cm * Ns[2];
        switch (item->region) {
        case Region::All: break;
        case Region::Low3:
            if (!low3) return;
            break;
        case Region::Pair13:
            if (!(low3 && mag[2] >= mag[1] && sim(mag[0], mag[2]) && mag[2] >= N)) return;
            break;
        case Region::Pair12:
        case Region::Pair12NonRes:
            if (!(low3 && mag[1] > mag[2] && sim(mag[0], mag[1]) && mag[1] >= N)) return;
            if (item->region == Region::Pair12NonRes && std::abs(dispersion(k, n)) * lambda * lambda < 0.5) return;
            break;
        case Region::OmegaCLow3:
            // complement taken inside the two-large set only
            if (!low3 || !(sim(Ns[0], Ns[1]) && Ns[1] >= N) || ms.omega(k) != OmegaRegion::Complement) return;
            break;
        case Region::Omega1Low3:
            if (!low3 || ms.omega(k) != OmegaRegion::Omega1) return;
            break;
        }
        for (int j = 0; j < n; ++j) Ns[j] = std::max(Ns[j], 1 / lambda);
        const double mN1 = ms.m(Ns[0]);
        Ctx c{ms, k, Ns, mN1};
        Best& b = best[li];
        ++b.count;
        const double v = item->value(c);
        const double r = v == 0 ? 0 : v / item->bound(c);
        if (r > b.ratio) {
            b.ratio = r;
            std::copy(idx, idx + n, b.w.begin());
        }
    });

    for (const auto& b : best) {
        rep.visited += b.count;
        if (b.count && b.ratio > rep.max_ratio) {
            rep.max_ratio = b.ratio;
            rep.witness.assign(b.w.begin(), b.w.begin() + n);
        }
    }
    rep.empty = rep.visited == 0;
    if (!rep.empty && rep.witness.empty()) {
        // every value vanished; report the first visited tuple's shape
        rep.witness.assign(n, 0);
    }
    return rep;
}

ScanSetting default_scan(const std::string& lemma, double N) {
    for (const auto& b : bound_items()) {
        if (lemma != b.id) continue;
        ScanSetting sc;
        const int factor = b.n == 4 ? 3 : b.n == 6 ? 2 : 1;
        sc.index_bound = int(std::lround(factor * sc.lambda * N));
        return sc;
    }
    throw std::invalid_argument("unknown bound id: " + lemma);
}

std::string to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["lemma"] = r.lemma;
    j["N"] = r.N;
    j["lambda"] = r.lambda;
    j["s"] = r.s;
    j["symbol"] = r.symbol;
    j["region"] = r.region;
    j["index_bound"] = r.index_bound;
    j["visited"] = r.visited;
    j["max_ratio"] = r.max_ratio;
    j["empty"] = r.empty;
    j["witness"] = r.witness;
    return j.dump();
}

} // namespace dnls
