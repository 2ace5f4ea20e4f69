#include "enpp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "enpp/norms.hpp"
#include "enpp/operators.hpp"
#include "enpp/profiles.hpp"
#include "enpp/testfields.hpp"

namespace enpp {

StageContext make_stage_context(GridPtr grid, const Parameters& p) {
    StageContext ctx;
    ctx.grid = grid;
    ctx.params = p;
    ctx.F = f_star_field(grid, p);
    ctx.dzF = d_z(ctx.F);
    ctx.sdF = ctx.F;
    for (std::size_t i = 0; i < ctx.sdF.v.size(); ++i)
        ctx.sdF.v[i] += (1.0 + p.delta) * ctx.dzF.v[i];
    ctx.stream = std::make_shared<EllipticSolver>(grid, p, EllipticKind::stream);
    ctx.potential = std::make_shared<EllipticSolver>(grid, p, EllipticKind::potential);
    ctx.phi_F = ctx.stream->solve(ctx.F);
    SpecialPi unit;
    ctx.pi_unit = special_pi(unit, grid, p);
    ctx.g_unit = apply_potential_operator(ctx.pi_unit, p);
    ctx.g_normalizer_sq = h_k_norm(ctx.g_unit, p).total_sq;
    ctx.lk0_F = l_k_at_zmin(ctx.F);
    ctx.lk0_dzF = l_k_at_zmin(ctx.dzF);
    return ctx;
}

Rates modulation_rates(const StageContext& ctx, const Field& eps, const Field& G,
                       const Field& Pi, const Field& phi_eps,
                       Config::Modulation mode) {
    const Parameters& p = ctx.params;
    Rates r;

    double A, B;
    if (mode == Config::Modulation::reduced) {
        // leading two-term balance
        const Grid& g = *ctx.grid;
        Field et = partial_theta(eps);
        Field shear(eps.grid);
        for (std::size_t i = 0; i < g.nz(); ++i)
            for (std::size_t j = 0; j < g.ntheta(); ++j)
                shear.at(i, j) =
                    std::sin(2.0 * g.theta(j)) / (1.0 + g.z(i)) * et.at(i, j);
        A = -4.0 * p.alpha;
        B = -3.0 * l_k_at_zmin(shear);
    } else {
        Field dz_eps = d_z(eps);
        Field Meps = op_M(eps, ctx.phi_F, phi_eps, ctx.F, p);
        NonlinearTerms nt = nonlinear_terms(eps, G, Pi, phi_eps, p);
        const double lk_dz = l_k_at_zmin(dz_eps) + ctx.lk0_dzF;
        const double lk_w = l_k_at_zmin(eps) + ctx.lk0_F;
        A = lk_dz - lk_w;
        B = l_k_at_zmin(Meps) - l_k_at_zmin(nt.N1) - l_k_at_zmin(nt.N2);
    }

    if (std::abs(A) < p.alpha)
        throw std::runtime_error("modulation balance degenerate: |A| < alpha");

    const double one_plus = -B / A;
    r.lambda_rate = one_plus - 1.0;
    r.mu_rate = (2.0 + p.delta) * one_plus;
    r.A = A;
    r.B = B;
    return r;
}

Field rhs_eps(const StageContext& ctx, const Field& eps, const Field& G,
              const Field& Pi, const Field& phi_eps, const Rates& r) {
    const Parameters& p = ctx.params;
    Field dz_eps = d_z(eps);
    Field Meps = op_M(eps, ctx.phi_F, phi_eps, ctx.F, p);
    NonlinearTerms nt = nonlinear_terms(eps, G, Pi, phi_eps, p);

    const double one_plus = 1.0 + r.lambda_rate;
    Field out(eps.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double sd_eps = eps.v[i] + (1.0 + p.delta) * dz_eps.v[i];
        const double E = -r.mu_rate * ctx.dzF.v[i] + one_plus * ctx.sdF.v[i];
        out.v[i] = -r.mu_rate * dz_eps.v[i] + one_plus * sd_eps - Meps.v[i] + E +
                   nt.N1.v[i] + nt.N2.v[i];
    }
    return out;
}

Field rhs_G(const StageContext& ctx, const Field& eps, const Field& G,
            const Field& Pi, const Field& phi_eps, const Rates& r) {
    const Parameters& p = ctx.params;
    Field dz_G = d_z(G);
    Field MG = op_M_G(G, ctx.phi_F, p);
    NonlinearTerms nt = nonlinear_terms(eps, G, Pi, phi_eps, p);

    const double one_plus = 1.0 + r.lambda_rate;
    Field out(G.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double sd_G = G.v[i] + (1.0 + p.delta) * dz_G.v[i];
        out.v[i] = -r.mu_rate * dz_G.v[i] + one_plus * sd_G - MG.v[i] + nt.N3.v[i];
    }
    return out;
}

// ---------------------------------------------------------------- Simulator

Simulator::Simulator(GridPtr grid, const Parameters& p, Config::PiMode pi_mode,
                     Config::Modulation modulation)
    : ctx_(std::make_shared<StageContext>(make_stage_context(std::move(grid), p))),
      pi_mode_(pi_mode),
      modulation_(modulation) {}

Field Simulator::reconstruct_G(const State& st) const {
    if (pi_mode_ == Config::PiMode::full) return st.G;
    Field g = ctx_->g_unit;
    g *= st.pi_amplitude;
    return g;
}

Field Simulator::reconstruct_Pi(const State& st) const {
    if (pi_mode_ == Config::PiMode::full) return ctx_->potential->solve(st.G);
    Field pi = ctx_->pi_unit;
    pi *= st.pi_amplitude;
    return pi;
}

Simulator::State Simulator::initial_state(const Field& eps0, double pi0_amplitude) const {
    State st;
    st.eps = eps0;
    if (pi_mode_ == Config::PiMode::full) {
        st.G = ctx_->g_unit;
        st.G *= pi0_amplitude;
    } else {
        st.G = Field(ctx_->grid);
        st.pi_amplitude = pi0_amplitude;
    }
    return st;
}

struct Simulator::Deriv {
    Field deps;
    Field dG;          // full mode
    double damp = 0.0; // special mode
    double dlambda = 0.0, dmu = 0.0;
    double lambda_rate = 0.0, mu_rate = 0.0;
};

Simulator::Deriv Simulator::derivative(const State& st, int* warn_counter) const {
    const StageContext& ctx = *ctx_;
    const Parameters& p = ctx.params;
    Field G = reconstruct_G(st);
    Field Pi = reconstruct_Pi(st);
    Field phi_eps = ctx.stream->solve(st.eps);

    // Shared operator evaluations. The modulation balance and the assembled
    // right-hand side must use the same field objects so the constraint
    // L_K(rhs)(z_min) = 0 holds to roundoff.
    Field dz_eps = d_z(st.eps);
    Field Meps = op_M(st.eps, ctx.phi_F, phi_eps, ctx.F, p);
    NonlinearTerms nt = nonlinear_terms(st.eps, G, Pi, phi_eps, p);

    double A, B;
    if (modulation_ == Config::Modulation::reduced) {
        const Grid& g = *ctx.grid;
        Field et = partial_theta(st.eps);
        Field shear(st.eps.grid);
        for (std::size_t i = 0; i < g.nz(); ++i)
            for (std::size_t j = 0; j < g.ntheta(); ++j)
                shear.at(i, j) =
                    std::sin(2.0 * g.theta(j)) / (1.0 + g.z(i)) * et.at(i, j);
        A = -4.0 * p.alpha;
        B = -3.0 * l_k_at_zmin(shear);
    } else {
        A = (l_k_at_zmin(dz_eps) + ctx.lk0_dzF) - (l_k_at_zmin(st.eps) + ctx.lk0_F);
        B = l_k_at_zmin(Meps) - l_k_at_zmin(nt.N1) - l_k_at_zmin(nt.N2);
    }
    if (std::abs(A) < p.alpha)
        throw std::runtime_error("modulation balance degenerate: |A| < alpha");
    const double one_plus = -B / A;
    const double lambda_rate = one_plus - 1.0;
    const double mu_rate = (2.0 + p.delta) * one_plus;

    if (warn_counter) {
        // a-priori bound |lambda_s/lambda + 1| <~ |eps| / alpha
        double en = h_k_norm(st.eps, p).norm();
        if (std::abs(one_plus) > 10.0 * en / p.alpha + 1e-12) ++*warn_counter;
    }

    Deriv d;
    d.deps = Field(st.eps.grid);
    for (std::size_t i = 0; i < d.deps.v.size(); ++i) {
        const double sd_eps = st.eps.v[i] + (1.0 + p.delta) * dz_eps.v[i];
        const double E = -mu_rate * ctx.dzF.v[i] + one_plus * ctx.sdF.v[i];
        d.deps.v[i] = -mu_rate * dz_eps.v[i] + one_plus * sd_eps - Meps.v[i] + E +
                      nt.N1.v[i] + nt.N2.v[i];
    }

    Field dz_G = d_z(G);
    Field MG = op_M_G(G, ctx.phi_F, p);
    Field rg(G.grid);
    for (std::size_t i = 0; i < rg.v.size(); ++i) {
        const double sd_G = G.v[i] + (1.0 + p.delta) * dz_G.v[i];
        rg.v[i] = -mu_rate * dz_G.v[i] + one_plus * sd_G - MG.v[i] + nt.N3.v[i];
    }
    if (pi_mode_ == Config::PiMode::full) {
        d.dG = std::move(rg);
    } else {
        // Project the G equation onto the unit shape. k = 0 is the default
        // and dominant use, so the eta-weighted product stands in for H^k.
        double num = weighted_l2(rg, ctx.g_unit, p.eta);
        double den = weighted_l2(ctx.g_unit, ctx.g_unit, p.eta);
        d.damp = num / den;
    }
    d.dlambda = lambda_rate * st.lambda;
    d.dmu = mu_rate * st.mu;
    d.lambda_rate = lambda_rate;
    d.mu_rate = mu_rate;
    return d;
}

namespace {

double max_abs(const Field& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

Simulator::State Simulator::step(const State& st, double dt) const {
    auto advance = [&](const State& base, const Deriv& d, double w) {
        State out = base;
        out.eps = st.eps;
        for (std::size_t i = 0; i < out.eps.v.size(); ++i)
            out.eps.v[i] += w * d.deps.v[i];
        if (pi_mode_ == Config::PiMode::full) {
            out.G = st.G;
            for (std::size_t i = 0; i < out.G.v.size(); ++i)
                out.G.v[i] += w * d.dG.v[i];
        } else {
            out.pi_amplitude = st.pi_amplitude + w * d.damp;
        }
        out.lambda = st.lambda + w * d.dlambda;
        out.mu = st.mu + w * d.dmu;
        out.s = st.s + w;
        return out;
    };

    Deriv k1 = derivative(st, &warn_counter_);
    Deriv k2 = derivative(advance(st, k1, dt / 2.0), nullptr);
    Deriv k3 = derivative(advance(st, k2, dt / 2.0), nullptr);
    Deriv k4 = derivative(advance(st, k3, dt), nullptr);

    State out = st;
    out.s = st.s + dt;
    for (std::size_t i = 0; i < out.eps.v.size(); ++i)
        out.eps.v[i] += dt / 6.0 * (k1.deps.v[i] + 2.0 * k2.deps.v[i] +
                                    2.0 * k3.deps.v[i] + k4.deps.v[i]);
    if (pi_mode_ == Config::PiMode::full) {
        for (std::size_t i = 0; i < out.G.v.size(); ++i)
            out.G.v[i] += dt / 6.0 * (k1.dG.v[i] + 2.0 * k2.dG.v[i] +
                                      2.0 * k3.dG.v[i] + k4.dG.v[i]);
    } else {
        out.pi_amplitude = st.pi_amplitude +
                           dt / 6.0 * (k1.damp + 2.0 * k2.damp + 2.0 * k3.damp + k4.damp);
    }
    out.lambda = st.lambda + dt / 6.0 * (k1.dlambda + 2.0 * k2.dlambda +
                                         2.0 * k3.dlambda + k4.dlambda);
    out.mu = st.mu + dt / 6.0 * (k1.dmu + 2.0 * k2.dmu + 2.0 * k3.dmu + k4.dmu);
    out.lambda_rate = k1.lambda_rate;
    out.mu_rate = k1.mu_rate;

    const double grow_eps = max_abs(out.eps) / (max_abs(st.eps) + 1e-300);
    const double grow_G = max_abs(reconstruct_G(out)) / (max_abs(reconstruct_G(st)) + 1e-300);
    if ((max_abs(st.eps) > 1e-14 && grow_eps > 10.0) ||
        (max_abs(reconstruct_G(st)) > 1e-14 && grow_G > 10.0)) {
        std::ostringstream os;
        os << "CFL violation at s=" << out.s << ": field growth x" << std::max(grow_eps, grow_G)
           << " in one step (dt=" << dt << ")";
        throw std::runtime_error(os.str());
    }
    return out;
}

// ------------------------------------------------------------- experiment

namespace {

// least squares y ~ a + b x
void linfit(const std::vector<double>& x, const std::vector<double>& y,
            double& a, double& b) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    b = (n * sxy - sx * sy) / d;
    a = (sy - b * sx) / n;
}

} // namespace

SimulationReport run_decay_experiment(const Config& cfg) {
    Parameters p = make_parameters(cfg.alpha, cfg.resolved_delta(), cfg.k);
    GridPtr grid = make_grid(cfg.z_min, cfg.z_max, cfg.nz, cfg.ntheta);
    Simulator sim(grid, p, cfg.pi_mode, cfg.modulation);
    const StageContext& ctx = sim.context();

    double eps_amp = cfg.eps0_amplitude, pi_amp = cfg.pi0_amplitude;
    if (cfg.nu > 0.0) {
        const double E0 = cfg.nu * std::pow(cfg.alpha, 1.5);
        eps_amp = std::sqrt(E0 / 2.0);
        pi_amp = std::sqrt(E0 / 2.0);
    }

    Field eps0(grid);
    if (eps_amp > 0.0) {
        Field raw = random_test_field(grid, cfg.seed);
        // enforce the nonlocal constraint, then normalize in H^k
        raw = projector_P(raw, p);
        double n0 = h_k_norm(raw, p).norm();
        raw *= eps_amp / n0;
        eps0 = raw;
    }

    Simulator::State st = sim.initial_state(eps0, pi_amp);

    SimulationReport rep;
    auto log_state = [&](const Simulator::State& s) {
        Field G = sim.reconstruct_G(s);
        rep.s.push_back(s.s);
        rep.lambda.push_back(s.lambda);
        rep.mu.push_back(s.mu);
        rep.energy.push_back(
            energy_with_normalizer(s.eps, G, p, ctx.g_normalizer_sq));
        rep.eps_norm.push_back(h_k_norm(s.eps, p).norm());
        rep.G_norm.push_back(h_k_norm(G, p).norm());
        rep.lk0.push_back(l_k_at_zmin(s.eps));
    };
    log_state(st);

    const double E0 = rep.energy.front();
    const std::size_t nsteps = std::size_t(std::ceil(cfg.s_max / cfg.dt - 1e-12));
    for (std::size_t n = 0; n < nsteps; ++n) {
        double dt = std::min(cfg.dt, cfg.s_max - st.s);
        try {
            st = sim.step(st, dt);
        } catch (const std::runtime_error& e) {
            rep.status = SimulationReport::Status::cfl_abort;
            rep.message = e.what();
            break;
        }
        log_state(st);
        if (E0 > 0.0 && rep.energy.back() > 2.0 * E0 &&
            rep.status == SimulationReport::Status::ok) {
            rep.status = SimulationReport::Status::energy_growth;
            rep.message = "energy exceeded 2 E(0)";
        }
    }
    rep.rough_bound_warnings = sim.warn_counter_;

    // decay-law fit on s >= transient
    const double transient = std::min(0.5, 0.1 * cfg.s_max);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rep.s.size(); ++i)
        if (rep.s[i] >= transient && rep.energy[i] > 0.0) {
            xs.push_back(rep.s[i]);
            ys.push_back(std::log(rep.energy[i]));
        }
    if (xs.size() >= 3) {
        double a, b;
        linfit(xs, ys, a, b);
        rep.kappa = -b;
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double d = ys[i] - (a + b * xs[i]);
            ss += d * d;
        }
        rep.kappa_fit_residual = std::sqrt(ss / double(xs.size()));
    }

    // pointwise differential inequality -dE/ds >= c E - C a^{-3/2} E^{3/2}:
    // regress y = -E'/E against x = a^{-3/2} sqrt(E), then raise C until the
    // inequality holds at every interior sample.
    if (rep.s.size() >= 5 && E0 > 0.0) {
        std::vector<double> xv, yv;
        for (std::size_t i = 1; i + 1 < rep.s.size(); ++i) {
            if (rep.s[i] < transient) continue;
            double dE = (rep.energy[i + 1] - rep.energy[i - 1]) /
                        (rep.s[i + 1] - rep.s[i - 1]);
            if (rep.energy[i] <= 0.0) continue;
            yv.push_back(-dE / rep.energy[i]);
            xv.push_back(std::pow(p.alpha, -1.5) * std::sqrt(rep.energy[i]));
        }
        if (xv.size() >= 3) {
            double a, b;
            linfit(xv, yv, a, b);
            double C = std::max(0.0, -b);
            for (std::size_t i = 0; i < xv.size(); ++i)
                C = std::max(C, (a - yv[i]) / xv[i]);
            rep.c_meas = a;
            rep.C_meas = C;
        }
    }
    return rep;
}

} // namespace enpp
