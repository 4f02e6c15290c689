#include "dnls/energies.hpp"

#include "dnls/errors.hpp"
#include "dnls/fields.hpp"
#include "dnls/functionals.hpp"
#include "dnls/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

cplx lambda6_sigma6(const MultiplierSet& ms, const SpectralField& v) {
    // sigma6 is symmetric within each parity class except where the Omega test
    // sees x and -x in one class; such tuples are summed over every ordering
    const int K = v.nmax();
    const int S = K / 16;
    const double lam = v.grid().lambda;
    const double T = ms.N() * lam;
    std::vector<int> odd, even;
    for (int a = -K; a <= K; ++a) {
        if (v[a] != cplx(0)) odd.push_back(a);
        if (v[-a] != cplx(0)) even.push_back(a);
    }
    if (odd.empty()) return 0;
    auto big = [S](int a) { return std::abs(a) > S ? 1 : 0; };
    auto top = [T](int a) { return std::abs(a) >= T ? 1 : 0; };
    auto orderings = [](const int* t) { return t[0] == t[2] ? 1 : (t[0] == t[1] || t[1] == t[2] ? 3 : 6); };
    auto mirrored = [](const int* t) {
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (t[i] == -t[j] && t[i] != 0) return true;
        return false;
    };

    const int W = int(odd.size());
    std::vector<cplx> partial(W);
    parallel_for(W, [&](int i1) {
        cplx acc = 0;
        int o[3], e[3];
        double k[kMaxArity];
        auto eval = [&](const int* oo, const int* ee) {
            for (int j = 0; j < 3; ++j) {
                k[2 * j] = oo[j] / lam;
                k[2 * j + 1] = ee[j] / lam;
            }
            return ms.sigma6(k);
        };
        o[0] = odd[i1];
        for (int i2 = i1; i2 < W; ++i2) {
            o[1] = odd[i2];
            for (int i3 = i2; i3 < W; ++i3) {
                o[2] = odd[i3];
                const int ob = big(o[0]) + big(o[1]) + big(o[2]);
                const int ot = top(o[0]) + top(o[1]) + top(o[2]);
                const int so = o[0] + o[1] + o[2];
                if (std::abs(so) > 3 * K) continue;
                const cplx po = v[o[0]] * v[o[1]] * v[o[2]];
                const bool omir = mirrored(o);
                for (std::size_t j1 = 0; j1 < even.size(); ++j1) {
                    e[0] = even[j1];
                    const int b1 = ob + big(e[0]);
                    if (b1 > 3) continue;
                    for (std::size_t j2 = j1; j2 < even.size(); ++j2) {
                        e[1] = even[j2];
                        e[2] = -(so + e[0] + e[1]);
                        if (e[2] < e[1]) break;
                        if (e[2] > K) continue;
                        if (b1 + big(e[1]) + big(e[2]) > 3) continue;
                        if (ot + top(e[0]) + top(e[1]) + top(e[2]) < 2) continue;
                        const cplx ce = std::conj(v[-e[2]]);
                        if (ce == cplx(0)) continue;
                        const cplx prod = po * std::conj(v[-e[0]]) * std::conj(v[-e[1]]) * ce;
                        if (!omir && !mirrored(e)) {
                            const cplx s6 = eval(o, e);
                            if (s6 != cplx(0)) acc += double(orderings(o) * orderings(e)) * s6 * prod;
                            continue;
                        }
                        int oo[3] = {o[0], o[1], o[2]};
                        do {
                            int ee[3] = {e[0], e[1], e[2]};
                            do acc += eval(oo, ee) * prod;
                            while (std::next_permutation(ee, ee + 3));
                        } while (std::next_permutation(oo, oo + 3));
                    }
                }
            }
        }
        partial[i1] = acc;
    });
    cplx total = 0;
    for (const auto& p : partial) total += p;
    return total * std::pow(1.0 / v.grid().length(), 5);
}

ModifiedEnergyValue modified_energy(const SpectralField& v, const IMultiplier& sym, const OmegaParams& p,
                                    const LambdaOptions& opt) {
    require_same_grid(v, SpectralField(sym.grid));
    MultiplierSet ms(sym.m, v.grid().lambda, p);
    const auto& M = ms;
    Multiplier kin{"k1k2m1m2", 2, 1, [&M](const double* k) { return cplx(k[0] * k[1] * M.m(k[0]) * M.m(k[1])); }};
    Multiplier quart{"k13m1m2m3m4", 4, 1, [&M](const double* k) {
                         return cplx((k[0] + k[2]) * M.m(k[0]) * M.m(k[1]) * M.m(k[2]) * M.m(k[3]));
                     }};

    const cplx kinetic = -lambda_form(kin, v, opt);
    const cplx quartic = 0.25 * lambda_form(quart, v, opt);
    const cplx s4 = lambda_form(ms.get("sigma4"), v, opt);
    const cplx s6 = lambda6_sigma6(ms, v);
    const cplx st = cplx(0, 1) * mu(v) * lambda_form(ms.get("sigma4_tilde"), v, opt);

    ModifiedEnergyValue r;
    r.kinetic = kinetic.real();
    r.quartic = quartic.real();
    r.sigma4 = s4.real();
    r.sigma6 = s6.real();
    r.sigma4_tilde = st.real();
    r.e1 = r.kinetic + r.quartic;
    r.e2 = r.e1 + r.sigma4;
    r.e3 = r.e2 + r.sigma6 + r.sigma4_tilde;
    r.e1_direct = essential_energy(apply_I(v, sym));

    const double scale = std::abs(kinetic) + std::abs(quartic) + std::abs(s4) + std::abs(s6) + std::abs(st);
    if (scale > 0)
        for (cplx z : {kinetic, quartic, s4, s6, st}) r.imag_defect = std::max(r.imag_defect, std::abs(z.imag()) / scale);
    const double tol = 1e-8 * (std::abs(r.kinetic) + std::abs(r.quartic)) + 1e-14;
    if (std::abs(r.e1 - r.e1_direct) > tol)
        throw property_failure("modified_energy: multilinear and nodal first energies differ by " +
                               std::to_string(std::abs(r.e1 - r.e1_direct)));
    return r;
}

ClosenessReport closeness_check(const SpectralField& f, const IMultiplier& sym, const OmegaParams& p,
                                const LambdaOptions& opt) {
    ClosenessReport c;
    const auto If = apply_I(f, sym);
    const auto e = modified_energy(f, sym, p, opt);
    c.energy_gap = std::abs(e.e1_direct - e.e3);
    c.momentum_gap = std::abs(essential_momentum(If) - essential_momentum(f));
    c.h1 = norm(If, NormKind::Hs(1));
    const double h2 = c.h1 * c.h1;
    if (h2 > 0) {
        c.energy_ratio = c.energy_gap / (h2 * h2 + h2 * h2 * h2);
        c.momentum_ratio = c.momentum_gap / (h2 + h2 * h2);
    }
    return c;
}

} // namespace dnls
