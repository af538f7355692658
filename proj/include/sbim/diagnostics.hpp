#ifndef SBIM_DIAGNOSTICS_HPP
#define SBIM_DIAGNOSTICS_HPP

#include "sbim/integrators.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sbim {

/// (C_k, delta_k) with C_k = gamma_{k+1} + k(gamma_{k+1} - gamma_k) - beta_k k h
/// and delta_k = -C_k h (k+1)
std::pair<double, double> delta_c(const scheme_params &p, long k);

struct fd_energy
{
    double energy = 0.0;
    vec v;
    double kinetic = 0.0;
};

/// E^k = delta_k (F^k - F*) + |v_k|^2 / 2 with
/// v_k = (alpha-1)(x^k - x*) - alpha(F^k - F*) 1 + k(x^k - x^{k-1} + gamma_k h grad F^k)
fd_energy energy_fd(const objective &f, const scheme_params &p, const inertial_state &s);

/// one row of an energy trace
struct trace_row
{
    long k = 0;
    double f_gap = 0.0;
    double delta_k = 0.0;
    double c_k = 0.0;
    double energy_fd = 0.0;
    double kinetic = 0.0;
    double total_swarm_energy = 0.0;
    vec v_k;
};

using energy_trace = std::vector<trace_row>;

/// what the swarm energy needs to know about one agent
struct agent_view
{
    double mass = 0.0;
    double f = 0.0;
    /// velocity estimate: (x^k - x^{k-1})/h or the explicit y_i; empty if unknown
    vec velocity;
};

struct swarm_energy_report
{
    /// E_i = m_i |v_i|^2 / 2 + a_i F(x_i) with a_i = m_i
    std::vector<double> per_agent;
    double total = 0.0;
    /// a_i (F(x_i) - F*) + m_i |y_i|^2 / 2; empty when F* is not given
    std::vector<double> nesterov_form;
    double nesterov_total = 0.0;
    bool kinetic_absent = false;
};

swarm_energy_report swarm_energy(const std::vector<agent_view> &agents,
    std::optional<double> f_star = std::nullopt);

struct rate_estimate_result
{
    std::vector<double> p_k;
    /// index j of each retained p_k (pair j, j+1 of the input)
    std::vector<long> index;
    double p_bar = 0.0;
    /// number of retained p_k
    long iterations = 0;
    /// the gap reached the floor and the tail was cut
    bool exact_convergence = false;
};

/// p_j = log(gap_j / gap_{j+1}) / log(delta_{j+1} / delta_j)
///
/// Everything from the first gap <= floor onwards is dropped, as are pairs
/// with delta ratio 1. Throws estimate_error when no p_j is left.
rate_estimate_result rate_estimate(const std::vector<double> &f_gaps,
    const std::vector<double> &deltas, double floor = 1e-15);

struct dissipation_report
{
    std::vector<long> violations;
    double max_rise = 0.0;
};

/// flags k with E^{k+1} > E^k (1 + rel_tol) + abs_floor, for k >= first_k
dissipation_report dissipation_check(const energy_trace &trace, double rel_tol,
    long first_k = 0, double abs_floor = 1e-12);
dissipation_report dissipation_check(const std::vector<long> &ks,
    const std::vector<double> &energies, double rel_tol, long first_k = 0,
    double abs_floor = 1e-12);

struct stop_criteria
{
    double tol_f = 1e-6;
    double tol_x = 1e-6;
    double tol_success = 1e-4;
};

struct stop_result
{
    bool stop = false;
    bool success = false;
};

/// stop when |dF| <= tol_f and |dx| <= tol_x (and one agent left in swarm mode);
/// success when |F(x_out) - F*| <= tol_success
stop_result stop_and_success(double f_prev, double f_curr, cref x_prev, cref x_curr,
    double f_star, const stop_criteria &crit = {}, int alive = 1);

} // namespace sbim

#endif
