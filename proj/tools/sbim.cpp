#include "sbim/errors.hpp"
#include "sbim/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct cli_options
{
    std::string config_path;
    std::string fn;
    int dim = 0;
    double shift_b = 0.0, offset_c = 0.0;
    std::string scheme;
    double alpha = 0.0, step_h = 0.0, gamma = -1.0, beta_scale = 0.0;
    double imex_eps = 0.0;
    int imex_max_inner = 0;
    std::string h_sweep;
    std::string x0;
    int agents = 0;
    double p_exponent = 0.0, tol_mass = 0.0, tol_merge = 0.0, mass_dt = 0.0;
    std::uint64_t seed = 0;
    long trials = 0;
    int workers = 0;
    long max_iter = 0;
    double grad_step = -1.0;
    int prox_grid = -1;
    std::string out;
    std::string trials_out;
};

void add_common(CLI::App *cmd, cli_options &o)
{
    cmd->add_option("--config", o.config_path, "JSON config file (flags override it)");
    cmd->add_option("--fn", o.fn, "objective: sphere, modified-sphere, sum-squares, "
                                  "rotated-hyper-ellipsoid, ackley, ackley-printed, rastrigin");
    cmd->add_option("--dim", o.dim, "dimension");
    cmd->add_option("--shift-b", o.shift_b, "shift B of the minimizer");
    cmd->add_option("--offset-c", o.offset_c, "additive constant C");
    cmd->add_option("--scheme", o.scheme, "fd, imexrb, semi, fb, ipahd, nesterov, gd");
    cmd->add_option("--alpha", o.alpha, "vanishing damping alpha (default 2)");
    cmd->add_option("--step-h,--h", o.step_h, "step h (Delta t for imexrb)");
    cmd->add_option("--gamma", o.gamma, "constant Hessian damping gamma (default 200)");
    cmd->add_option("--beta-scale", o.beta_scale, "beta_k = beta-scale/(k h) (default 500)");
    cmd->add_option("--imex-eps", o.imex_eps, "IMEX-RB projection tolerance");
    cmd->add_option("--imex-max-inner", o.imex_max_inner, "IMEX-RB inner iterations M");
    cmd->add_option("--x0", o.x0, "start point 'a,b,...' or uniform-box");
    cmd->add_option("--max-iter", o.max_iter, "iteration cap");
    cmd->add_option("--grad-step", o.grad_step, "gradient step s of gd and nesterov");
    cmd->add_option("--prox-grid", o.prox_grid, "grid points per coordinate of the global prox search (0 = local)");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output file (.csv or .json)");
}

sbim::experiment_config build_config(const cli_options &o, sbim::run_mode mode)
{
    sbim::experiment_config c = sbim::default_config(mode);
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in)
            throw sbim::io_error("cannot open config '" + o.config_path + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception &e) {
            throw sbim::config_error(std::string("config is not valid JSON: ") + e.what());
        }
        c = sbim::config_from_json(j, c);
        c.mode = mode;
    }
    nlohmann::json j = nlohmann::json::object();
    if (!o.fn.empty()) j["fn"] = o.fn;
    if (o.dim) j["dim"] = o.dim;
    if (o.shift_b != 0.0) j["shift-b"] = o.shift_b;
    if (o.offset_c != 0.0) j["offset-c"] = o.offset_c;
    if (!o.scheme.empty()) j["scheme"] = o.scheme;
    if (o.alpha != 0.0) j["alpha"] = o.alpha;
    if (o.step_h != 0.0) j["h"] = o.step_h;
    if (o.gamma >= 0.0) j["gamma"] = o.gamma;
    if (o.beta_scale != 0.0) j["beta-scale"] = o.beta_scale;
    if (o.imex_eps != 0.0) j["imex-eps"] = o.imex_eps;
    if (o.imex_max_inner) j["imex-max-inner"] = o.imex_max_inner;
    if (!o.h_sweep.empty()) j["h-sweep"] = o.h_sweep;
    if (o.agents) j["agents"] = o.agents;
    if (o.p_exponent != 0.0) j["p-exponent"] = o.p_exponent;
    if (o.tol_mass != 0.0) j["tol-mass"] = o.tol_mass;
    if (o.tol_merge != 0.0) j["tol-merge"] = o.tol_merge;
    if (o.mass_dt != 0.0) j["mass-dt"] = o.mass_dt;
    if (o.seed) j["seed"] = o.seed;
    if (o.trials) j["trials"] = o.trials;
    if (o.workers) j["workers"] = o.workers;
    if (o.max_iter) j["max-iter"] = o.max_iter;
    if (o.grad_step >= 0.0) j["grad-step"] = o.grad_step;
    if (o.prox_grid >= 0) j["prox-grid"] = o.prox_grid;
    if (!o.x0.empty()) {
        if (o.x0 == "uniform-box") {
            j["x0"] = "uniform-box";
        } else {
            std::vector<double> v;
            std::stringstream ss(o.x0);
            std::string item;
            while (std::getline(ss, item, ','))
                v.push_back(std::stod(item));
            j["x0"] = v;
        }
    }
    c = sbim::config_from_json(j, c);
    if (c.x0 && c.x0->size() == 1 && c.dim > 1)
        c.x0 = sbim::vec::Constant(c.dim, (*c.x0)[0]);
    c.validate();
    return c;
}

void print_rows(const std::vector<sbim::table_row> &rows)
{
    std::cout << sbim::rows_to_csv(rows);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"swarm-based inertial minimization"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");
    cli_options o;

    auto *conv = app.add_subcommand("converge", "single-agent convergence-rate sweep over h");
    add_common(conv, o);
    conv->add_option("--h-sweep", o.h_sweep, "'1:1/128' halving, or a comma list");

    auto *sw = app.add_subcommand("swarm", "seeded batch of swarm runs");
    add_common(sw, o);
    sw->add_option("--trials", o.trials, "number of trials (default 1000)");
    sw->add_option("--agents", o.agents, "agents per swarm (default 10)");
    sw->add_option("--p-exponent", o.p_exponent, "exponent p of phi_p (default 1)");
    sw->add_option("--tol-mass", o.tol_mass, "mass removal threshold (default 1e-6)");
    sw->add_option("--tol-merge", o.tol_merge, "merge distance (default 1e-3)");
    sw->add_option("--mass-dt", o.mass_dt, "mass equation step (default h)");
    sw->add_option("--workers", o.workers, "worker threads (no effect on results)");
    sw->add_option("--trials-out", o.trials_out, "per-trial CSV");

    auto *et = app.add_subcommand("energy-trace", "per-step energy and rate trace");
    add_common(et, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (conv->parsed()) {
            const auto c = build_config(o, sbim::run_mode::converge);
            const auto rows = sbim::run_convergence(c);
            if (o.out.empty())
                print_rows(rows);
            else
                sbim::export_rows(rows, o.out);
        } else if (sw->parsed()) {
            const auto c = build_config(o, sbim::run_mode::swarm);
            const auto res = sbim::run_swarm_batch(c);
            if (o.out.empty())
                print_rows({res.row});
            else
                sbim::export_rows({res.row}, o.out);
            if (!o.trials_out.empty())
                sbim::write_file(o.trials_out, sbim::trials_to_csv(res.trials));
        } else if (et->parsed()) {
            const auto c = build_config(o, sbim::run_mode::energy_trace);
            const auto run = sbim::run_energy_trace(c);
            const std::string csv = sbim::trace_to_csv(run);
            if (o.out.empty())
                std::cout << csv;
            else
                sbim::write_file(o.out, csv);
        }
    } catch (const sbim::io_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
