#include "sbim/swarm.hpp"
#include "sbim/errors.hpp"
#include "sbim/random.hpp"

#include <chrono>
#include <cmath>

namespace sbim {

namespace {

double phi_p(double eta_value, double p)
{
    return eta_value > 0.0 ? std::pow(eta_value, p) : 0.0;
}

int count_alive(const std::vector<agent> &agents)
{
    int n = 0;
    for (const auto &a : agents)
        n += a.alive ? 1 : 0;
    return n;
}

} // namespace

void comm_params::validate() const
{
    if (!(p_exponent > 0.0) || !(tol_mass > 0.0) || !(tol_merge > 0.0) || !(mass_dt > 0.0))
        throw config_error("communication needs p > 0, positive tolerances and mass_dt > 0");
}

std::vector<double> eta(const std::vector<double> &values)
{
    std::vector<double> out(values.size(), 0.0);
    if (values.empty())
        return out;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo))
        return out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = (values[i] - lo) / (hi - lo);
    return out;
}

comm_report communicate(std::vector<agent> &agents, const comm_params &comm)
{
    comm_report rep;
    for (auto &a : agents) {
        if (a.alive && a.mass < comm.tol_mass) {
            a.alive = false;
            a.mass = 0.0;
            ++rep.removed;
        }
    }
    std::vector<int> idx;
    std::vector<double> values;
    for (int i = 0; i < static_cast<int>(agents.size()); ++i) {
        if (agents[i].alive) {
            idx.push_back(i);
            values.push_back(agents[i].state.f_curr);
        }
    }
    if (idx.empty())
        throw state_error("no alive agents left");

    const std::vector<double> e = eta(values);
    std::size_t best_pos = 0;
    for (std::size_t j = 1; j < values.size(); ++j)
        if (values[j] < values[best_pos]
            || (values[j] == values[best_pos] && agents[idx[j]].id < agents[idx[best_pos]].id))
            best_pos = j;
    rep.best = idx[best_pos];

    double others = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        agent &a = agents[idx[j]];
        a.mass_prev2 = a.mass_prev;
        a.mass_prev = a.mass;
        a.eta_prev = a.eta;
        a.eta = e[j];
        if (j == best_pos)
            continue;
        const double rate = comm.mass_dt * phi_p(e[j], comm.p_exponent);
        if (rate >= 1.0) {
            a.mass = 0.5 * comm.tol_mass;
            rep.clamped = true;
        } else {
            a.mass -= rate * a.mass;
        }
        others += a.mass;
    }
    agents[rep.best].mass = 1.0 - others;
    return rep;
}

int merge(std::vector<agent> &agents, const comm_params &comm)
{
    int removed = 0;
    const int n = static_cast<int>(agents.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && agents[i].alive; ++j) {
            if (!agents[j].alive)
                continue;
            if ((agents[i].state.x_curr - agents[j].state.x_curr).norm() >= comm.tol_merge)
                continue;
            const bool j_wins = agents[j].state.f_curr < agents[i].state.f_curr
                || (agents[j].state.f_curr == agents[i].state.f_curr
                    && agents[j].id < agents[i].id);
            agent &winner = j_wins ? agents[j] : agents[i];
            agent &loser = j_wins ? agents[i] : agents[j];
            winner.mass += loser.mass;
            loser.mass = 0.0;
            loser.alive = false;
            ++removed;
        }
    }
    return removed;
}

void sb_nesterov_update(const objective &f, std::vector<agent> &agents,
    const sb_nesterov_params &params, long n, int best)
{
    if (n < 1)
        throw domain_error("SB-Nesterov update needs n >= 1");
    if (best < 0 || best >= static_cast<int>(agents.size()) || !agents[best].alive)
        throw state_error("SB-Nesterov update needs the best agent of this step");
    const double dt = params.dt;
    double others_next = 0.0, others_now = 0.0;
    for (int i = 0; i < static_cast<int>(agents.size()); ++i) {
        if (i == best || !agents[i].alive)
            continue;
        others_next += agents[i].mass;
        others_now += agents[i].mass_prev;
    }
    const double friction = 3.0 / (static_cast<double>(n) * dt);
    for (int i = 0; i < static_cast<int>(agents.size()); ++i) {
        agent &a = agents[i];
        if (!a.alive)
            continue;
        const double m_prev = a.mass_prev2;
        const double m_now = a.mass_prev;
        double r, slot;
        if (i != best) {
            r = friction + 0.5 * phi_p(a.eta_prev, params.p_exponent) * m_prev / m_now;
            slot = 0.5 * phi_p(a.eta, params.p_exponent);
        } else {
            r = friction + 0.5 * ((1.0 - others_now) - m_prev) / m_now;
            slot = 0.5 * (1.0 - others_next - m_now) / m_now;
        }
        const inertial_state &s = a.state;
        const vec y = s.velocity + dt * ((slot - r) * s.velocity
            - (m_now / (m_now + params.eps_reg)) * s.g_curr);
        inertial_state next;
        next.k = s.k + 1;
        next.x_prev = s.x_curr;
        next.f_prev = s.f_curr;
        next.x_curr = s.x_curr + dt * y;
        next.f_curr = f.value(next.x_curr);
        next.g_curr = f.grad(next.x_curr);
        next.velocity = y;
        a.state = std::move(next);
    }
}

std::vector<vec> sample_box(const objective &f, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<vec> out;
    for (int i = 0; i < count; ++i) {
        vec x(f.dim());
        for (int j = 0; j < f.dim(); ++j) {
            const double lo = f.box_lo()[j], hi = f.box_hi()[j];
            x[j] = std::min(lo + uniform01(rng) * (hi - lo), hi);
        }
        out.push_back(std::move(x));
    }
    return out;
}

run_outcome sbim_run(const objective &f, const scheme_params &p, const swarm_config &cfg,
    const std::vector<vec> &x0)
{
    const auto t_start = std::chrono::steady_clock::now();
    p.validate();
    cfg.comm.validate();
    if (x0.empty())
        throw config_error("swarm needs at least one agent");

    std::vector<agent> agents(x0.size());
    const double m0 = 1.0 / static_cast<double>(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) {
        agent &a = agents[i];
        a.id = static_cast<int>(i);
        a.state = initial_state(f, x0[i]);
        a.mass = a.mass_prev = a.mass_prev2 = m0;
        if (p.scheme == scheme_kind::nesterov || p.scheme == scheme_kind::imexrb)
            a.state.velocity = (a.state.x_curr - a.state.x_prev) / p.h;
    }

    run_outcome out;
    const sb_nesterov_params nparams{cfg.eps_reg, p.h, cfg.comm.p_exponent};
    long newest = 1;
    out.termination = "max-iterations";
    while (newest < cfg.max_iter) {
        const long n = newest;
        const comm_report rep = communicate(agents, cfg.comm);
        out.mass_clamps += rep.clamped ? 1 : 0;
        try {
            if (p.scheme == scheme_kind::nesterov) {
                sb_nesterov_update(f, agents, nparams, n, rep.best);
            } else {
                for (auto &a : agents) {
                    if (!a.alive)
                        continue;
                    step_flags flags;
                    if (p.scheme == scheme_kind::imexrb)
                        a.state = imexrb_inertial_step(f, p, cfg.imex, a.history, a.state,
                            cfg.solver, &flags);
                    else
                        a.state = scheme_step(f, p, a.state, cfg.solver, &flags);
                    out.prox_nonsmooth += flags.nonsmooth_accept ? 1 : 0;
                    out.solver_fallbacks += flags.used_fallback ? 1 : 0;
                    out.imex_tolerance_not_met += flags.tolerance_not_met ? 1 : 0;
                }
            }
        } catch (const solver_error &e) {
            out.termination = "solver-failure";
            out.error = e.what();
            break;
        }
        merge(agents, cfg.comm);
        newest = n + 1;

        if (cfg.record_energy) {
            std::vector<agent_view> views;
            for (const auto &a : agents) {
                if (!a.alive)
                    continue;
                agent_view v;
                v.mass = a.mass;
                v.f = a.state.f_curr;
                v.velocity = p.scheme == scheme_kind::nesterov
                    ? a.state.velocity
                    : vec((a.state.x_curr - a.state.x_prev) / p.h);
                views.push_back(std::move(v));
            }
            out.energy.push_back(swarm_energy(views).total);
        }

        const int alive = count_alive(agents);
        if (alive == 1) {
            for (const auto &a : agents) {
                if (!a.alive)
                    continue;
                const stop_result st = stop_and_success(a.state.f_prev, a.state.f_curr,
                    a.state.x_prev, a.state.x_curr, f.min_value(), cfg.stop, alive);
                if (st.stop)
                    out.termination = "converged";
            }
            if (out.termination == "converged")
                break;
        }
    }

    const agent *best = nullptr;
    for (const auto &a : agents)
        if (a.alive && (!best || a.state.f_curr < best->state.f_curr))
            best = &a;
    out.alive = count_alive(agents);
    out.iterations = newest;
    if (best) {
        out.best_x = best->state.x_curr;
        out.best_f = best->state.f_curr;
        out.f_gap = out.best_f - f.min_value();
        out.success = out.termination != "solver-failure"
            && std::abs(out.f_gap) <= cfg.stop.tol_success;
    }
    out.wall_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t_start).count();
    return out;
}

} // namespace sbim
