#include <sbim/diagnostics.hpp>
#include <sbim/harness.hpp>
#include <sbim/objective.hpp>
#include <sbim/swarm.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace sbim;

namespace {

constexpr double cross_scheme_band = 0.02;
constexpr double cross_scheme_seconds = 10.0;
constexpr double rate_lo = 3.2;
constexpr double rate_hi = 5.3;
constexpr int rate_inversions_allowed = 1;
constexpr double bound_slack = 1e-8;
constexpr double bound_seconds = 60.0;
constexpr double dissipation_rel_tol = 1e-10;
constexpr long dissipation_first_k = 2;
constexpr double imex_eps_per_dt = 1e-3;
constexpr double order_ratio = 2.0;
constexpr double order_band = 0.2;
constexpr long swarm_trials = 200;
constexpr std::uint64_t swarm_seed = 42;
constexpr double ackley_rate_min = 0.95;
constexpr double ackley_iterations_max = 4.0;
constexpr double fd_rastrigin_rate_min = 0.90;
constexpr double nm_rastrigin_rate_max = 0.05;
constexpr double gd_rastrigin_rate_lo = 0.03;
constexpr double gd_rastrigin_rate_hi = 0.30;
constexpr double swarm_seconds = 900.0;
constexpr long mass_fuzz_steps = 10000;
constexpr double estimator_tol = 1e-10;
constexpr double reduction_tol = 1e-12;
constexpr int reduction_steps = 50;
constexpr double oracle_grad_tol = 1e-6;
constexpr double oracle_hess_tol = 1e-6;
constexpr int oracle_points = 100;
constexpr double prox_tol = 1e-10;
constexpr double sphere50_rate_min = 1.0;
constexpr double sphere50_seconds = 300.0;

const std::vector<std::string> convex_suite{"sphere", "modified-sphere", "sum-squares",
    "rotated-hyper-ellipsoid"};
const std::vector<int> convex_dims{1, 2, 10};

int failures = 0;

void report(int id, const std::string &title, bool pass, const std::string &detail)
{
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
        detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6)
{
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

experiment_config converge_config(const std::string &fn, int dim, scheme_kind s)
{
    experiment_config c;
    c.function = fn;
    c.dim = dim;
    c.scheme.scheme = s;
    return c;
}

void cross_scheme_agreement()
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<scheme_kind> schemes{scheme_kind::fd, scheme_kind::fb, scheme_kind::semi,
        scheme_kind::imexrb};
    std::vector<double> rates;
    bool all_success = true;
    std::string detail;
    for (scheme_kind s : schemes) {
        experiment_config c = converge_config("rotated-hyper-ellipsoid", 1, s);
        c.h_sweep = {1.0};
        const table_row r = run_convergence(c).front();
        rates.push_back(r.p_bar);
        all_success = all_success && r.successes == 1;
        detail += scheme_name(s) + " p=" + fmt(r.p_bar) + (r.successes ? "" : " (failed)") + "; ";
    }
    double spread = 0.0;
    for (double a : rates)
        for (double b : rates)
            spread = std::max(spread, std::abs(a - b));
    const double t = seconds_since(t0);
    const bool pass = all_success && std::isfinite(spread) && spread <= cross_scheme_band
        && t < cross_scheme_seconds;
    report(1, "cross-scheme rate agreement", pass,
        detail + "max pairwise |dp|=" + fmt(spread) + " (limit " + fmt(cross_scheme_band)
            + "), " + fmt(t, 3) + " s");
}

void rate_band()
{
    experiment_config c = converge_config("rotated-hyper-ellipsoid", 1, scheme_kind::fd);
    const auto rows = run_convergence(c);
    bool in_band = true;
    int inversions = 0;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double p = rows[i].p_bar;
        in_band = in_band && std::isfinite(p) && p >= rate_lo && p <= rate_hi;
        if (i > 0 && !(p <= rows[i - 1].p_bar))
            ++inversions;
        detail += "h=" + fmt(rows[i].h) + ":" + fmt(p, 5) + " ";
    }
    const bool pass = in_band && inversions <= rate_inversions_allowed;
    report(2, "rate magnitude band", pass,
        detail + "| band [" + fmt(rate_lo) + ", " + fmt(rate_hi) + "], inversions of the decrease: "
            + std::to_string(inversions) + " (allowed "
            + std::to_string(rate_inversions_allowed) + ")");
}

void worst_case_bound()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string worst_case = "-";
    bool all_ran = true;
    for (const auto &fn : convex_suite)
        for (int d : convex_dims) {
            experiment_config c = converge_config(fn, d, scheme_kind::fd);
            c.mode = run_mode::energy_trace;
            const convergence_run run = run_energy_trace(c);
            all_ran = all_ran && run.status.rfind("failed", 0) != 0;
            const double e1 = run.trace.front().energy_fd;
            for (const auto &row : run.trace) {
                const double ratio = row.delta_k * row.f_gap / e1;
                if (!(ratio <= worst) || !std::isfinite(ratio)) {
                    worst = ratio;
                    worst_case = fn + " d=" + std::to_string(d) + " k=" + std::to_string(row.k);
                }
            }
        }
    const double t = seconds_since(t0);
    const bool pass = all_ran && worst <= 1.0 + bound_slack && t < bound_seconds;
    report(3, "worst-case bound", pass,
        "max delta_k (F^k - F*) / E^1 = " + fmt(worst) + " at " + worst_case + " (limit 1 + "
            + fmt(bound_slack) + "), 12 runs at h=1, " + fmt(t, 3) + " s");
}

void discrete_dissipation()
{
    long fd_violations = 0, imex_violations = 0;
    int imex_flags = 0;
    bool all_ran = true;
    for (const auto &fn : convex_suite)
        for (int d : convex_dims) {
            experiment_config c = converge_config(fn, d, scheme_kind::fd);
            c.mode = run_mode::energy_trace;
            const convergence_run fd = run_energy_trace(c);
            all_ran = all_ran && fd.status.rfind("failed", 0) != 0;
            fd_violations += static_cast<long>(
                dissipation_check(fd.trace, dissipation_rel_tol, dissipation_first_k)
                    .violations.size());

            experiment_config ci = converge_config(fn, d, scheme_kind::imexrb);
            ci.mode = run_mode::energy_trace;
            ci.h = 1.0;
            ci.imex.eps_stab = imex_eps_per_dt * *ci.h;
            const convergence_run im = run_energy_trace(ci);
            all_ran = all_ran && im.status.rfind("failed", 0) != 0;
            imex_flags += im.imex_tolerance_not_met;
            imex_violations += static_cast<long>(
                dissipation_check(im.trace, dissipation_rel_tol, dissipation_first_k)
                    .violations.size());
        }
    const bool pass = all_ran && fd_violations == 0 && imex_violations == 0;
    report(4, "discrete dissipation", pass,
        "violations for k >= 2: fd " + std::to_string(fd_violations) + ", imexrb "
            + std::to_string(imex_violations) + " (eps = dt * " + fmt(imex_eps_per_dt)
            + ", tolerance-not-met " + std::to_string(imex_flags) + "), 12 runs each at h=1");
}

void imex_first_order()
{
    const vector_field g = [](double, cref u) { return vec(-u); };
    imex_config cfg;
    std::vector<double> errors;
    const std::vector<double> steps{0.1, 0.05, 0.025};
    for (double dt : steps) {
        cfg.eps_stab = imex_eps_per_dt * dt;
        const int n = static_cast<int>(std::lround(1.0 / dt));
        std::deque<vec> hist{vec::Ones(1)};
        double err = 0.0;
        for (int i = 1; i <= n; ++i) {
            const imex_result r = imexrb_step(g, i * dt, dt, hist, cfg);
            hist.push_front(r.u);
            if (hist.size() > 5)
                hist.pop_back();
            err = std::max(err, std::abs(r.u[0] - std::exp(-i * dt)));
        }
        errors.push_back(err);
    }
    const double r1 = errors[0] / errors[1], r2 = errors[1] / errors[2];
    const double lo = order_ratio * (1.0 - order_band), hi = order_ratio * (1.0 + order_band);
    const bool pass = r1 >= lo && r1 <= hi && r2 >= lo && r2 <= hi;
    report(5, "IMEX-RB first-order convergence", pass,
        "max errors " + fmt(errors[0]) + ", " + fmt(errors[1]) + ", " + fmt(errors[2])
            + "; ratios " + fmt(r1, 4) + ", " + fmt(r2, 4) + " (band [" + fmt(lo) + ", "
            + fmt(hi) + "])");
}

batch_result swarm_batch(const std::string &fn, scheme_kind s)
{
    experiment_config c = default_config(run_mode::swarm);
    c.function = fn;
    c.dim = 1;
    c.scheme.scheme = s;
    c.trials = swarm_trials;
    c.master_seed = swarm_seed;
    c.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return run_swarm_batch(c);
}

void swarm_tables()
{
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (scheme_kind s : {scheme_kind::fb, scheme_kind::semi, scheme_kind::ipahd}) {
        const table_row r = swarm_batch("ackley", s).row;
        const bool ok = r.success_rate >= ackley_rate_min
            && r.mean_iterations <= ackley_iterations_max;
        pass = pass && ok;
        detail += "ackley " + scheme_name(s) + " rate=" + fmt(r.success_rate, 4)
            + " iters=" + fmt(r.mean_iterations, 4) + (ok ? "" : " [out]") + "; ";
    }
    const table_row fd = swarm_batch("rastrigin", scheme_kind::fd).row;
    const bool fd_ok = fd.success_rate >= fd_rastrigin_rate_min;
    detail += "rastrigin fd rate=" + fmt(fd.success_rate, 4) + " iters="
        + fmt(fd.mean_iterations, 4) + " failures=" + std::to_string(fd.solver_failures)
        + (fd_ok ? "" : " [out, need >= " + fmt(fd_rastrigin_rate_min) + "]") + "; ";
    const table_row nm = swarm_batch("rastrigin", scheme_kind::nesterov).row;
    const bool nm_ok = nm.success_rate <= nm_rastrigin_rate_max;
    detail += "rastrigin nesterov rate=" + fmt(nm.success_rate, 4) + " iters="
        + fmt(nm.mean_iterations, 4) + (nm_ok ? "" : " [out]") + "; ";
    const table_row gd = swarm_batch("rastrigin", scheme_kind::gd).row;
    const bool gd_ok = gd.success_rate >= gd_rastrigin_rate_lo
        && gd.success_rate <= gd_rastrigin_rate_hi;
    detail += "rastrigin gd rate=" + fmt(gd.success_rate, 4) + " iters="
        + fmt(gd.mean_iterations, 4)
        + (gd_ok ? "" : " [out, need [" + fmt(gd_rastrigin_rate_lo) + ", "
                   + fmt(gd_rastrigin_rate_hi) + "]]") + "; ";
    const double t = seconds_since(t0);
    pass = pass && fd_ok && nm_ok && gd_ok && t < swarm_seconds;
    report(6, "swarm table reproduction", pass,
        detail + std::to_string(swarm_trials) + " trials each, " + fmt(t, 4) + " s");
}

void mass_and_determinism()
{
    const auto f = make_benchmark("rastrigin", 1);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> dt(0.01, 1.5);
    comm_params comm;
    double worst = 0.0;
    long steps = 0;
    while (steps < mass_fuzz_steps) {
        std::vector<agent> agents(10);
        for (int i = 0; i < 10; ++i) {
            agents[i].id = i;
            const vec x = vec::Constant(1, pos(rng));
            agents[i].state = inertial_state::make(*f, x, x);
            agents[i].mass = agents[i].mass_prev = agents[i].mass_prev2 = 0.1;
        }
        comm.mass_dt = dt(rng);
        for (int s = 0; s < 25 && steps < mass_fuzz_steps; ++s, ++steps) {
            for (auto &a : agents)
                a.state = inertial_state::make(*f, vec::Constant(1, pos(rng)), a.state.x_curr);
            const comm_report rep = communicate(agents, comm);
            double total = 0.0;
            for (int i = 0; i < static_cast<int>(agents.size()); ++i)
                if (agents[i].alive && i != rep.best)
                    total += agents[i].mass;
            total += agents[rep.best].mass;
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }

    experiment_config c = default_config(run_mode::swarm);
    c.function = "rastrigin";
    c.scheme.scheme = scheme_kind::semi;
    c.trials = 20;
    c.master_seed = 7;
    const batch_result a = run_swarm_batch(c);
    c.workers = 4;
    const batch_result b = run_swarm_batch(c);
    const bool same = rows_to_csv({a.row}, false) == rows_to_csv({b.row}, false)
        && trials_to_csv(a.trials, false) == trials_to_csv(b.trials, false);
    report(7, "mass conservation and determinism", worst == 0.0 && same,
        "max |sum m - 1| = " + fmt(worst) + " over " + std::to_string(steps)
            + " fuzzed communicate calls; repeated seeded batch identical: "
            + (same ? "yes" : "no"));
}

void estimator_oracle()
{
    double worst = 0.0;
    for (double p : {0.5, 1.0, 2.0, 3.7}) {
        std::vector<double> gaps, deltas;
        for (int k = 1; k <= 40; ++k) {
            const double d = 300.0 * (k + 1);
            deltas.push_back(d);
            gaps.push_back(2.5 * std::pow(d, -p));
        }
        const rate_estimate_result r = rate_estimate(gaps, deltas);
        worst = std::max(worst, std::abs(r.p_bar - p));
        for (double pk : r.p_k)
            worst = std::max(worst, std::abs(pk - p));
    }
    report(8, "estimator oracle", worst <= estimator_tol,
        "max |p_k - p| = " + fmt(worst) + " for p in {0.5, 1, 2, 3.7} (limit "
            + fmt(estimator_tol) + ")");
}

void single_agent_reduction()
{
    const auto f = make_benchmark("sphere", 1);
    const double dt = 0.1;
    auto run = [&](double eps) {
        sb_nesterov_params params{eps, dt, 1.0};
        std::vector<agent> agents(1);
        agents[0].state = inertial_state::make(*f, vec::Constant(1, 3.0), vec::Constant(1, 3.0));
        agents[0].state.velocity = vec::Zero(1);
        agents[0].mass = agents[0].mass_prev = agents[0].mass_prev2 = 1.0;
        double x = 3.0, y = 0.0, worst = 0.0;
        for (long n = 1; n <= reduction_steps; ++n) {
            const comm_report rep = communicate(agents, {});
            sb_nesterov_update(*f, agents, params, n, rep.best);
            y += dt * (-3.0 / (static_cast<double>(n) * dt) * y - 2.0 * x);
            x += dt * y;
            worst = std::max(worst, std::abs(agents[0].state.x_curr[0] - x));
        }
        return worst;
    };
    const double tight = run(1e-15);
    const double with_default = run(1e-12);
    report(9, "single-agent reduction", tight <= reduction_tol,
        "max |x_sb - x_ode| over " + std::to_string(reduction_steps) + " steps = " + fmt(tight)
            + " with eps_reg 1e-15 (limit " + fmt(reduction_tol) + "); default eps_reg 1e-12 gives "
            + fmt(with_default));
}

void oracle_checks()
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    double grad_worst = 0.0, hess_worst = 0.0, prox_worst = 0.0;
    bool hess_constant = true;
    for (const auto &name : function_names()) {
        for (int d : {1, 2, 10}) {
            const auto f = make_benchmark(name, d, 1.5, 0.25);
            for (int i = 0; i < oracle_points; ++i) {
                vec x(d);
                for (int j = 0; j < d; ++j)
                    x[j] = f->box_lo()[j] + u(rng) * (f->box_hi()[j] - f->box_lo()[j]);
                const fd_report r = fd_check(*f, x, 1e-6);
                grad_worst = std::max(grad_worst, r.grad_rel_err);
                hess_worst = std::max(hess_worst, r.hess_rel_err);
                if (f->is_quadratic()) {
                    const vec dir = vec::Ones(d);
                    hess_constant = hess_constant
                        && f->hess_vec(x, dir) == f->hess_vec(f->minimizer(), dir);
                    const double mu = 0.1 + 2.0 * u(rng);
                    const vec closed = *f->prox_closed_form(mu, x);
                    const vec iterative = prox_iterative(*f, mu, x);
                    prox_worst = std::max(prox_worst,
                        (closed - iterative).lpNorm<Eigen::Infinity>()
                            / std::max(1.0, closed.lpNorm<Eigen::Infinity>()));
                }
            }
        }
    }
    const bool pass = grad_worst <= oracle_grad_tol && hess_worst <= oracle_hess_tol
        && hess_constant && prox_worst <= prox_tol;
    report(10, "oracle checks", pass,
        "gradient rel err " + fmt(grad_worst) + ", Hessian-vector rel err " + fmt(hess_worst)
            + " (limits " + fmt(oracle_grad_tol) + ", " + fmt(oracle_hess_tol)
            + "), quadratic Hessians constant: " + (hess_constant ? "yes" : "no")
            + ", prox closed form vs iterative " + fmt(prox_worst) + " (limit " + fmt(prox_tol)
            + ")");
}

void sphere_50d()
{
    const auto t0 = std::chrono::steady_clock::now();
    experiment_config c = converge_config("sphere", 50, scheme_kind::fd);
    c.h_sweep = {1.0};
    const table_row r = run_convergence(c).front();
    const double t = seconds_since(t0);
    const bool pass = r.successes == 1 && r.p_bar >= sphere50_rate_min && t < sphere50_seconds;
    std::printf("%s property (50D sphere with fd): p=%s, success %ld, %s iterations, %s s\n",
        pass ? "PASS" : "FAIL", fmt(r.p_bar).c_str(), r.successes,
        fmt(r.mean_iterations).c_str(), fmt(t, 3).c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

} // namespace

int main()
{
    cross_scheme_agreement();
    rate_band();
    worst_case_bound();
    discrete_dissipation();
    imex_first_order();
    swarm_tables();
    mass_and_determinism();
    estimator_oracle();
    single_agent_reduction();
    oracle_checks();
    sphere_50d();
    std::printf("%d of 11 checks failed\n", failures);
    return failures == 0 ? 0 : 1;
}
