#ifndef SBIM_HARNESS_HPP
#define SBIM_HARNESS_HPP

#include "sbim/swarm.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace sbim {

enum class run_mode { converge, swarm, energy_trace };

run_mode parse_mode(const std::string &name);
std::string mode_name(run_mode m);

struct experiment_config
{
    run_mode mode = run_mode::converge;
    std::string function = "sphere";
    int dim = 1;
    double shift = 0.0;
    double offset = 0.0;

    /// scheme, alpha, gamma and beta; h is overridden by h_sweep / swarm_h
    scheme_params scheme;
    solver_config solver;
    imex_config imex;
    comm_params comm;
    /// mass_dt follows the step h unless set
    std::optional<double> mass_dt;
    stop_criteria stop;

    long trials = 1000;
    std::uint64_t master_seed = 0;
    int agents = 10;
    int workers = 1;
    double eps_reg = 1e-12;

    std::vector<double> h_sweep = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
        0.0078125};
    /// step of swarm and energy-trace runs; scheme default when unset
    std::optional<double> h;
    /// explicit start; every coordinate 3.0 when unset and x0_uniform is false
    std::optional<vec> x0;
    bool x0_uniform = false;

    long max_iter_converge = 200000;
    long max_iter_swarm = 2000;

    /// throws config_error
    void validate() const;
};

/// defaults of a run mode: swarm runs sample the box and use the global prox grid
experiment_config default_config(run_mode mode);

/// h = 1 for the swarm, Delta t = 0.01 for IMEX-RB
double default_swarm_step(scheme_kind s);

/// the gradient step of gd: 1/L when the objective has a Lipschitz hint
std::optional<double> default_gd_step(const objective &f);

struct table_row
{
    std::string mode;
    std::string function;
    int dim = 1;
    double shift = 0.0;
    double offset = 0.0;
    std::string scheme;
    double h = 0.0;
    double p_bar = std::numeric_limits<double>::quiet_NaN();
    /// converge: 0/1 for the single run; swarm: successes
    long successes = 0;
    long trials = 1;
    double success_rate = 0.0;
    double mean_iterations = 0.0;
    double mean_cpu_seconds = 0.0;
    bool exact_convergence = false;
    long solver_failures = 0;
    bool flagged = false;
    std::string status = "ok";

    bool operator==(const table_row &o) const;
};

struct trial_record
{
    long trial = 0;
    std::uint64_t seed = 0;
    long iterations = 0;
    bool success = false;
    double f_gap = 0.0;
    double wall_seconds = 0.0;
    std::string termination;
    int mass_clamps = 0;
    int prox_nonsmooth = 0;
    int solver_fallbacks = 0;
    int imex_tolerance_not_met = 0;
};

/// a single-agent run of one scheme and its rate estimate
struct convergence_run
{
    energy_trace trace;
    std::vector<double> p_k;
    double p_bar = std::numeric_limits<double>::quiet_NaN();
    bool success = false;
    bool exact_convergence = false;
    long iterations = 0;
    std::string status = "ok";
    int imex_tolerance_not_met = 0;
};

/// start x0, x^1 = x^0 - 1e-4 grad F(x^0), then steps to the stopping test
convergence_run run_single(const objective &f, const scheme_params &p, cref x0,
    const experiment_config &cfg);

std::shared_ptr<const benchmark> make_objective(const experiment_config &cfg);
vec start_point(const objective &f, const experiment_config &cfg, std::uint64_t seed = 0);
/// scheme parameters with step h and the gd default step applied
scheme_params params_for(const objective &f, const experiment_config &cfg, double h);

std::vector<table_row> run_convergence(const experiment_config &cfg);

struct batch_result
{
    table_row row;
    std::vector<trial_record> trials;
};

batch_result run_swarm_batch(const experiment_config &cfg);

/// single run at cfg.h (or the first h of the sweep) with p_k attached to the trace
convergence_run run_energy_trace(const experiment_config &cfg);

void export_rows(const std::vector<table_row> &rows, const std::string &path);
std::string rows_to_csv(const std::vector<table_row> &rows, bool include_timing = true);
nlohmann::json rows_to_json(const std::vector<table_row> &rows);
std::vector<table_row> rows_from_json(const nlohmann::json &j);
std::vector<table_row> import_rows(const std::string &path);

std::string trials_to_csv(const std::vector<trial_record> &trials, bool include_timing = true);
std::string trace_to_csv(const convergence_run &run);

/// writes text to path; throws io_error
void write_file(const std::string &path, const std::string &text);

/// fields named like the CLI long options; unknown keys are rejected
experiment_config config_from_json(const nlohmann::json &j, experiment_config base = {});
nlohmann::json config_to_json(const experiment_config &cfg);

/// "1:1/128" (halving), "0.5" or "1,0.5,0.1"
std::vector<double> parse_h_sweep(const std::string &text);

/// double formatted with the shortest round-trip representation
std::string format_double(double v);

} // namespace sbim

#endif
