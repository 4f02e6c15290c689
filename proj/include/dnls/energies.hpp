#pragma once

#include "dnls/imethod.hpp"
#include "dnls/multilinear.hpp"
#include "dnls/multipliers.hpp"

namespace dnls {

struct ModifiedEnergyValue {
    double e1 = 0, e2 = 0, e3 = 0;
    // e1 = kinetic + quartic, e2 = e1 + sigma4, e3 = e2 + sigma6 + sigma4_tilde
    double kinetic = 0;       // -Lambda2(k1 k2 m1 m2)
    double quartic = 0;       // Lambda4(k13 m1 m2 m3 m4) / 4
    double sigma4 = 0;        // Lambda4(sigma4)
    double sigma6 = 0;        // Lambda6(sigma6)
    double sigma4_tilde = 0;  // i mu Lambda4(sigma~4)
    double e1_direct = 0;     // essential energy of Iv on nodes
    double imag_defect = 0;   // largest |Im| / scale over the parts
};

// Throws property_failure if the two routes to e1 disagree beyond 1e-8.
ModifiedEnergyValue modified_energy(const SpectralField& v, const IMultiplier& sym, const OmegaParams& p = {},
                                    const LambdaOptions& opt = {});

// Lambda6(sigma6; v), summed only where at most three entries exceed nmax/16;
// sigma6 vanishes elsewhere.
cplx lambda6_sigma6(const MultiplierSet& ms, const SpectralField& v);

struct ClosenessReport {
    double energy_gap = 0;    // |E[If] - E3[f]|
    double momentum_gap = 0;  // |P[If] - P[f]|
    double h1 = 0;            // |If|_{H^1}
    double energy_ratio = 0;  // gap / (h1^4 + h1^6)
    double momentum_ratio = 0;// gap / (h1^2 + h1^4)
};

ClosenessReport closeness_check(const SpectralField& f, const IMultiplier& sym, const OmegaParams& p = {},
                                const LambdaOptions& opt = {});

} // namespace dnls
