#ifndef SBIM_SWARM_HPP
#define SBIM_SWARM_HPP

#include "sbim/diagnostics.hpp"
#include "sbim/integrators.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace sbim {

struct agent
{
    int id = 0;
    inertial_state state;
    /// m^{n+1} after communicate (m^n before it)
    double mass = 0.0;
    /// m^n and m^{n-1} once communicate has run
    double mass_prev = 0.0;
    double mass_prev2 = 0.0;
    /// eta^n and eta^{n-1}
    double eta = 0.0;
    double eta_prev = 0.0;
    bool alive = true;
    /// past full states [x; V] for IMEX-RB
    std::deque<vec> history;
};

struct comm_params
{
    double p_exponent = 1.0;
    double tol_mass = 1e-6;
    double tol_merge = 1e-3;
    /// forward-Euler step of the mass equation
    double mass_dt = 1.0;

    void validate() const;
};

struct comm_report
{
    /// index (not id) of the best agent i-
    int best = -1;
    int removed = 0;
    /// some agent needed mass_dt phi >= 1 and was clamped to tol_mass/2
    bool clamped = false;
};

/// (F_i - Fmin)/(Fmax - Fmin); zeros when the range is degenerate
std::vector<double> eta(const std::vector<double> &values);

/// removes light agents, then moves mass toward the best agent
comm_report communicate(std::vector<agent> &agents, const comm_params &comm);

/// merges agents closer than tol_merge; returns the number removed
int merge(std::vector<agent> &agents, const comm_params &comm);

struct sb_nesterov_params
{
    double eps_reg = 1e-12;
    double dt = 1.0;
    double p_exponent = 1.0;
};

/// velocity and position update of the mass-coupled Nesterov swarm at step n;
/// `best` is the index returned by the communicate call of this step
void sb_nesterov_update(const objective &f, std::vector<agent> &agents,
    const sb_nesterov_params &params, long n, int best);

struct swarm_config
{
    int agents = 10;
    comm_params comm;
    stop_criteria stop;
    long max_iter = 2000;
    solver_config solver;
    imex_config imex;
    double eps_reg = 1e-12;
    bool record_energy = true;
};

struct run_outcome
{
    vec best_x;
    double best_f = 0.0;
    double f_gap = 0.0;
    /// index of the newest iterate when the run ended
    long iterations = 0;
    bool success = false;
    /// converged, max-iterations or solver-failure
    std::string termination;
    std::string error;
    int alive = 0;
    std::vector<double> energy;
    double wall_seconds = 0.0;
    int mass_clamps = 0;
    int prox_nonsmooth = 0;
    int solver_fallbacks = 0;
    int imex_tolerance_not_met = 0;
};

/// swarm initialized at the given positions (x^1 = x^0 - 1e-4 grad F(x^0))
run_outcome sbim_run(const objective &f, const scheme_params &p, const swarm_config &cfg,
    const std::vector<vec> &x0);

/// positions drawn uniformly from the box with the given seed
std::vector<vec> sample_box(const objective &f, int count, std::uint64_t seed);

} // namespace sbim

#endif
