#include "sbim/diagnostics.hpp"
#include "sbim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sbim {

std::pair<double, double> delta_c(const scheme_params &p, long k)
{
    const double kd = static_cast<double>(k);
    const double g_next = p.gamma_at(kd + 1.0);
    const double c = g_next + kd * (g_next - p.gamma_at(kd)) - p.beta_at(kd) * kd * p.h;
    return {c, -c * p.h * (kd + 1.0)};
}

fd_energy energy_fd(const objective &f, const scheme_params &p, const inertial_state &s)
{
    if (s.k < 1)
        throw domain_error("energy needs k >= 1");
    const double k = static_cast<double>(s.k);
    const double gap = s.f_curr - f.min_value();
    const auto [c, delta] = delta_c(p, s.k);
    (void)c;
    fd_energy out;
    out.v = (p.alpha - 1.0) * (s.x_curr - f.minimizer())
        + k * (s.x_curr - s.x_prev + (p.gamma_at(k) * p.h) * s.g_curr);
    out.v.array() -= p.alpha * gap;
    out.kinetic = 0.5 * out.v.squaredNorm();
    out.energy = delta * gap + out.kinetic;
    return out;
}

swarm_energy_report swarm_energy(const std::vector<agent_view> &agents,
    std::optional<double> f_star)
{
    swarm_energy_report rep;
    for (const auto &a : agents) {
        double kin = 0.0;
        if (a.velocity.size())
            kin = 0.5 * a.mass * a.velocity.squaredNorm();
        else
            rep.kinetic_absent = true;
        const double e = kin + a.mass * a.f;
        rep.per_agent.push_back(e);
        rep.total += e;
        if (f_star) {
            const double en = a.mass * (a.f - *f_star) + kin;
            rep.nesterov_form.push_back(en);
            rep.nesterov_total += en;
        }
    }
    return rep;
}

rate_estimate_result rate_estimate(const std::vector<double> &f_gaps,
    const std::vector<double> &deltas, double floor)
{
    if (f_gaps.size() != deltas.size())
        throw dimension_error("gap and delta sequences differ in length");
    rate_estimate_result out;
    std::size_t usable = f_gaps.size();
    for (std::size_t j = 0; j < f_gaps.size(); ++j) {
        if (!(f_gaps[j] > floor)) {
            usable = j;
            out.exact_convergence = true;
            break;
        }
    }
    for (std::size_t j = 0; j + 1 < usable; ++j) {
        const double ratio = deltas[j + 1] / deltas[j];
        if (ratio == 1.0 || !(ratio > 0.0) || !std::isfinite(ratio))
            continue;
        out.p_k.push_back(std::log(f_gaps[j] / f_gaps[j + 1]) / std::log(ratio));
        out.index.push_back(static_cast<long>(j));
    }
    if (out.p_k.empty())
        throw estimate_error("fewer than two usable points for the rate estimate");
    double sum = 0.0;
    for (double v : out.p_k)
        sum += v;
    out.iterations = static_cast<long>(out.p_k.size());
    out.p_bar = sum / static_cast<double>(out.iterations);
    return out;
}

dissipation_report dissipation_check(const std::vector<long> &ks,
    const std::vector<double> &energies, double rel_tol, long first_k, double abs_floor)
{
    if (ks.size() != energies.size())
        throw dimension_error("index and energy sequences differ in length");
    dissipation_report rep;
    for (std::size_t j = 0; j + 1 < energies.size(); ++j) {
        if (ks[j] < first_k)
            continue;
        const double rise = energies[j + 1] - energies[j];
        rep.max_rise = std::max(rep.max_rise, rise);
        if (energies[j + 1] > energies[j] * (1.0 + rel_tol) + abs_floor)
            rep.violations.push_back(ks[j]);
    }
    return rep;
}

dissipation_report dissipation_check(const energy_trace &trace, double rel_tol, long first_k,
    double abs_floor)
{
    std::vector<long> ks;
    std::vector<double> es;
    for (const auto &r : trace) {
        ks.push_back(r.k);
        es.push_back(r.energy_fd);
    }
    return dissipation_check(ks, es, rel_tol, first_k, abs_floor);
}

stop_result stop_and_success(double f_prev, double f_curr, cref x_prev, cref x_curr,
    double f_star, const stop_criteria &crit, int alive)
{
    stop_result r;
    r.stop = alive == 1 && std::abs(f_curr - f_prev) <= crit.tol_f
        && (x_curr - x_prev).norm() <= crit.tol_x;
    r.success = std::abs(f_curr - f_star) <= crit.tol_success;
    return r;
}

} // namespace sbim
