#include "dnls/solver.hpp"

#include "dnls/energies.hpp"
#include "dnls/gauge.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace dnls {

namespace {
const cplx I1(0, 1);

bool finite(const SpectralField& f) {
    for (const auto& c : f.data())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

// e^{-i k^2 h} per mode
std::vector<cplx> linear_factor(const TorusGrid& g, double h) {
    std::vector<cplx> e(g.modes());
    for (int n = -g.nmax; n <= g.nmax; ++n) {
        const double k = g.k(n);
        e[n + g.nmax] = std::exp(cplx(0, -k * k * h));
    }
    return e;
}

SpectralField times(const std::vector<cplx>& e, SpectralField f) {
    for (std::size_t i = 0; i < e.size(); ++i) f.data()[i] *= e[i];
    return f;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
} // namespace

SpectralField rhs_g1dnls(const SpectralField& v) { return g1_nonlinearity(v); }

SpectralField rhs_dnls_gauged(const SpectralField& w, double beta, bool drift) {
    const auto& g = w.grid();
    const int P = padded_nodes(g, 5);
    auto u = to_nodes(w, P);
    auto ux = to_nodes(derivative(w), P);
    const double m = mu(w);
    const double psi = psi_coefficient(w, beta);
    std::vector<cplx> out(P);
    for (int i = 0; i < P; ++i) {
        const double a2 = std::norm(u[i]);
        out[i] = 2.0 * I1 * (1 - beta) * a2 * ux[i] + I1 * (1 - 2 * beta) * u[i] * u[i] * std::conj(ux[i]) +
                 beta * m * a2 * u[i] + (beta / 2 - beta * beta) * a2 * a2 * u[i] - psi * u[i];
        if (drift) out[i] += 2.0 * I1 * beta * m * ux[i];
    }
    return from_nodes(out, g);
}

SpectralField exact_monochromatic(cplx a, int n, double beta, double t, const TorusGrid& grid) {
    const double k = grid.k(n);
    const double theta = -k * k + (1 - 2 * beta) * std::norm(a) * k;
    return single_mode(grid, n, a * std::exp(cplx(0, theta * t)));
}

SpectralField ifrk4_step(const SpectralField& v, double dt, double beta, bool drift) {
    const auto& g = v.grid();
    auto E = linear_factor(g, dt / 2);
    auto rhs = [&](const SpectralField& x) {
        SpectralField n = (beta == 1 && !drift) ? rhs_g1dnls(x) : rhs_dnls_gauged(x, beta, drift);
        n *= -I1;
        return n;
    };
    const auto k1 = rhs(v);
    const auto Ev = times(E, v);
    const auto k2 = rhs(times(E, v + (dt / 2) * k1));
    const auto k3 = rhs(Ev + (dt / 2) * k2);
    const auto k4 = rhs(times(E, Ev) + dt * times(E, k3));
    auto out = times(E, times(E, v + (dt / 6) * k1)) + (dt / 6) * (2.0 * times(E, k2 + k3) + k4);
    return out;
}

DiagnosticRow diagnostics(double t, const SpectralField& v, const SolverConfig& cfg) {
    DiagnosticRow r;
    r.t = t;
    r.mass = mass(v);
    r.momentum = momentum_beta(v, cfg.beta);
    r.energy = energy_beta(v, cfg.beta);
    r.hs_norm = norm(v, NormKind::Hs(cfg.hs));
    if (cfg.symbol) {
        r.h1_iv = norm(apply_I(v, *cfg.symbol), NormKind::Hs(1));
        if (cfg.modified_energies) {
            auto e = modified_energy(v, *cfg.symbol);
            r.e1 = e.e1;
            r.e2 = e.e2;
            r.e3 = e.e3;
        }
    }
    return r;
}

Trajectory integrate(const SpectralField& v0, const SolverConfig& cfg) {
    if (!(cfg.dt > 0)) throw std::invalid_argument("integrate: dt must be positive");
    if (cfg.t_end < 0) throw std::invalid_argument("integrate: t_end must be nonnegative");
    const long steps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    const double h = steps > 0 ? cfg.t_end / steps : 0;
    Trajectory tr;
    auto record = [&](double t, const SpectralField& v) {
        tr.times.push_back(t);
        tr.rows.push_back(diagnostics(t, v, cfg));
        if (cfg.keep_states) tr.states.push_back(v);
    };
    SpectralField v = v0;
    record(0, v);
    for (long s = 1; s <= steps; ++s) {
        auto next = ifrk4_step(v, h, cfg.beta, cfg.drift);
        if (!finite(next))
            throw integration_failure("integrate: non-finite state at step " + std::to_string(s), (s - 1) * h, v);
        v = std::move(next);
        const bool last = s == steps;
        if (last || (cfg.diag_stride > 0 && s % cfg.diag_stride == 0)) record(s * h, v);
    }
    tr.steps = steps;
    tr.final_state = v;
    if (!cfg.keep_states) tr.states = {v};
    return tr;
}

std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream os;
    os << "t,mass,momentum,energy,E1,E2,E3,Hs_norm,H1_of_Iv\r\n";
    auto opt = [](const std::optional<double>& x) { return x ? num(*x) : std::string(); };
    for (const auto& r : tr.rows)
        os << num(r.t) << ',' << num(r.mass) << ',' << num(r.momentum) << ',' << num(r.energy) << ',' << opt(r.e1)
           << ',' << opt(r.e2) << ',' << opt(r.e3) << ',' << num(r.hs_norm) << ',' << opt(r.h1_iv) << "\r\n";
    return os.str();
}

std::string trajectory_sidecar(const Trajectory& tr, const SolverConfig& cfg, const TorusGrid& grid) {
    nlohmann::ordered_json c;
    c["scheme"] = "IFRK4";
    c["dealias_pad"] = 3;
    c["dt"] = cfg.dt;
    c["t_end"] = cfg.t_end;
    c["beta"] = cfg.beta;
    c["drift"] = cfg.drift;
    c["diag_stride"] = cfg.diag_stride;
    c["hs"] = cfg.hs;
    c["grid"] = {{"lambda", grid.lambda}, {"M", grid.M}, {"nmax", grid.nmax}};
    if (cfg.symbol) {
        c["symbol"] = {{"s", cfg.symbol->m.s()},
                       {"N", cfg.symbol->m.N()},
                       {"kind", cfg.symbol->m.kind() == Interpolant::Kink ? "kink" : "smoothstep"}};
        c["modified_energies"] = cfg.modified_energies;
    }
    nlohmann::ordered_json j;
    j["config"] = c;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016zx", std::hash<std::string>{}(c.dump()));
    j["config_digest"] = hex;
    j["steps"] = tr.steps;
    j["rows"] = tr.rows.size();
    j["columns"] = {"t", "mass", "momentum", "energy", "E1", "E2", "E3", "Hs_norm", "H1_of_Iv"};
    return j.dump(2);
}

} // namespace dnls
