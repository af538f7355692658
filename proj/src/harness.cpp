#include "sbim/harness.hpp"
#include "sbim/errors.hpp"
#include "sbim/random.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace sbim {

namespace {

const std::vector<std::string> csv_columns = {"mode", "function", "dim", "shift_b",
    "offset_c", "scheme", "h", "p_bar", "successes", "trials", "success_rate",
    "mean_iterations", "mean_cpu_seconds", "exact_convergence", "solver_failures", "flagged",
    "status"};

bool same_double(double a, double b)
{
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

nlohmann::json json_double(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

double double_from_json(const nlohmann::json &j)
{
    if (j.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

double parse_number(const std::string &text)
{
    const auto slash = text.find('/');
    if (slash != std::string::npos)
        return parse_number(text.substr(0, slash)) / parse_number(text.substr(slash + 1));
    double v = 0.0;
    const char *b = text.data();
    const char *e = b + text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw config_error("not a number: '" + text + "'");
    return v;
}

trace_row make_row(const objective &f, const scheme_params &p, const inertial_state &s)
{
    trace_row r;
    r.k = s.k;
    r.f_gap = s.f_curr - f.min_value();
    const auto [c, delta] = delta_c(p, s.k);
    r.c_k = c;
    r.delta_k = delta;
    const fd_energy e = energy_fd(f, p, s);
    r.energy_fd = e.energy;
    r.kinetic = e.kinetic;
    r.v_k = e.v;
    const vec vel = p.scheme == scheme_kind::nesterov && s.velocity.size()
        ? s.velocity
        : vec((s.x_curr - s.x_prev) / p.h);
    r.total_swarm_energy = swarm_energy({agent_view{1.0, s.f_curr, vel}}).total;
    return r;
}

} // namespace

run_mode parse_mode(const std::string &name)
{
    if (name == "converge")
        return run_mode::converge;
    if (name == "swarm")
        return run_mode::swarm;
    if (name == "energy-trace")
        return run_mode::energy_trace;
    throw config_error("unknown mode '" + name + "'");
}

std::string mode_name(run_mode m)
{
    switch (m) {
    case run_mode::converge:
        return "converge";
    case run_mode::swarm:
        return "swarm";
    case run_mode::energy_trace:
        return "energy-trace";
    }
    return "unknown";
}

void experiment_config::validate() const
{
    parse_function(function);
    if (dim < 1)
        throw config_error("dimension must be positive");
    if (trials < 1)
        throw config_error("trials must be >= 1");
    if (agents < 1)
        throw config_error("agents must be >= 1");
    if (workers < 1)
        throw config_error("workers must be >= 1");
    if (h_sweep.empty())
        throw config_error("h sweep is empty");
    for (double v : h_sweep)
        if (!(v > 0.0))
            throw config_error("every h must be positive");
    if (h && !(*h > 0.0))
        throw config_error("h must be positive");
    if (x0 && x0->size() != dim)
        throw config_error("x0 length does not match the dimension");
    if (!(eps_reg > 0.0))
        throw config_error("eps_reg must be positive");
    if (mass_dt && !(*mass_dt > 0.0))
        throw config_error("mass_dt must be positive");
    if (solver.newton_max_iter < 1 || !(solver.newton_tol > 0.0))
        throw config_error("solver needs tol > 0 and max_iter >= 1");
    scheme_params probe = scheme;
    probe.h = h_sweep.front();
    probe.validate();
    comm_params c = comm;
    c.mass_dt = 1.0;
    c.validate();
    imex.validate();
}

double default_swarm_step(scheme_kind s)
{
    return s == scheme_kind::imexrb ? 0.01 : 1.0;
}

std::optional<double> default_gd_step(const objective &f)
{
    if (auto l = f.lipschitz_hint(); l && *l > 0.0)
        return 1.0 / *l;
    return std::nullopt;
}

bool table_row::operator==(const table_row &o) const
{
    return mode == o.mode && function == o.function && dim == o.dim
        && same_double(shift, o.shift) && same_double(offset, o.offset) && scheme == o.scheme
        && same_double(h, o.h) && same_double(p_bar, o.p_bar) && successes == o.successes
        && trials == o.trials && same_double(success_rate, o.success_rate)
        && same_double(mean_iterations, o.mean_iterations)
        && same_double(mean_cpu_seconds, o.mean_cpu_seconds)
        && exact_convergence == o.exact_convergence && solver_failures == o.solver_failures
        && flagged == o.flagged && status == o.status;
}

experiment_config default_config(run_mode mode)
{
    experiment_config c;
    c.mode = mode;
    if (mode == run_mode::swarm) {
        c.solver.prox_grid = 801;
        c.x0_uniform = true;
    }
    return c;
}

std::shared_ptr<const benchmark> make_objective(const experiment_config &cfg)
{
    return make_benchmark(cfg.function, cfg.dim, cfg.shift, cfg.offset);
}

vec start_point(const objective &f, const experiment_config &cfg, std::uint64_t seed)
{
    if (cfg.x0_uniform)
        return sample_box(f, 1, seed).front();
    if (cfg.x0)
        return *cfg.x0;
    return vec::Constant(f.dim(), 3.0);
}

scheme_params params_for(const objective &f, const experiment_config &cfg, double h)
{
    scheme_params p = cfg.scheme;
    p.h = h;
    if (p.scheme == scheme_kind::gd && !p.grad_step)
        p.grad_step = default_gd_step(f);
    p.validate();
    return p;
}

convergence_run run_single(const objective &f, const scheme_params &p, cref x0,
    const experiment_config &cfg)
{
    convergence_run run;
    inertial_state s = initial_state(f, x0);
    if (p.scheme == scheme_kind::imexrb)
        s.velocity = (s.x_curr - s.x_prev) / p.h;
    if (p.scheme == scheme_kind::nesterov)
        s.velocity = s.x_curr;
    std::deque<vec> history;
    run.trace.push_back(make_row(f, p, s));
    try {
        while (s.k < cfg.max_iter_converge) {
            step_flags flags;
            if (p.scheme == scheme_kind::imexrb)
                s = imexrb_inertial_step(f, p, cfg.imex, history, s, cfg.solver, &flags);
            else
                s = scheme_step(f, p, s, cfg.solver, &flags);
            run.imex_tolerance_not_met += flags.tolerance_not_met ? 1 : 0;
            run.trace.push_back(make_row(f, p, s));
            if (!std::isfinite(s.f_curr)) {
                run.status = "failed: diverged";
                break;
            }
            if (stop_and_success(s.f_prev, s.f_curr, s.x_prev, s.x_curr, f.min_value(),
                    cfg.stop).stop)
                break;
        }
        if (run.status == "ok" && s.k >= cfg.max_iter_converge)
            run.status = "max-iterations";
    } catch (const solver_error &e) {
        run.status = std::string("failed: ") + e.what();
    }
    run.iterations = s.k;
    run.success = run.status.rfind("failed", 0) != 0
        && std::abs(s.f_curr - f.min_value()) <= cfg.stop.tol_success;

    std::vector<double> gaps, deltas;
    for (const auto &r : run.trace) {
        gaps.push_back(r.f_gap);
        deltas.push_back(r.delta_k);
    }
    run.p_k.assign(run.trace.size(), std::numeric_limits<double>::quiet_NaN());
    try {
        const rate_estimate_result est = rate_estimate(gaps, deltas);
        run.p_bar = est.p_bar;
        run.exact_convergence = est.exact_convergence;
        for (std::size_t i = 0; i < est.p_k.size(); ++i)
            run.p_k[est.index[i]] = est.p_k[i];
    } catch (const estimate_error &) {
        run.exact_convergence = !gaps.empty() && !(gaps.front() > 1e-15);
        for (double g : gaps)
            if (!(g > 1e-15))
                run.exact_convergence = true;
    }
    return run;
}

std::vector<table_row> run_convergence(const experiment_config &cfg)
{
    cfg.validate();
    const auto f = make_objective(cfg);
    std::vector<table_row> rows;
    for (double h : cfg.h_sweep) {
        const scheme_params p = params_for(*f, cfg, h);
        const auto t0 = std::chrono::steady_clock::now();
        const convergence_run run = run_single(*f, p, start_point(*f, cfg, cfg.master_seed), cfg);
        table_row r;
        r.mode = "converge";
        r.function = cfg.function;
        r.dim = cfg.dim;
        r.shift = cfg.shift;
        r.offset = cfg.offset;
        r.scheme = scheme_name(p.scheme);
        r.h = h;
        r.p_bar = run.p_bar;
        r.successes = run.success ? 1 : 0;
        r.trials = 1;
        r.success_rate = r.successes;
        r.mean_iterations = static_cast<double>(run.iterations);
        r.mean_cpu_seconds
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.exact_convergence = run.exact_convergence;
        r.solver_failures = run.status.rfind("failed", 0) == 0 ? 1 : 0;
        r.status = run.status;
        rows.push_back(std::move(r));
    }
    return rows;
}

batch_result run_swarm_batch(const experiment_config &cfg)
{
    cfg.validate();
    const auto f = make_objective(cfg);
    const double h = cfg.h ? *cfg.h : default_swarm_step(cfg.scheme.scheme);
    const scheme_params p = params_for(*f, cfg, h);
    swarm_config sc;
    sc.agents = cfg.agents;
    sc.comm = cfg.comm;
    sc.comm.mass_dt = cfg.mass_dt ? *cfg.mass_dt : h;
    sc.stop = cfg.stop;
    sc.max_iter = cfg.max_iter_swarm;
    sc.solver = cfg.solver;
    sc.imex = cfg.imex;
    sc.eps_reg = cfg.eps_reg;
    sc.record_energy = false;

    batch_result out;
    out.trials.resize(static_cast<std::size_t>(cfg.trials));
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (long t = next++; t < cfg.trials; t = next++) {
            const std::uint64_t seed = trial_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
            std::vector<vec> x0;
            if (cfg.x0 && !cfg.x0_uniform)
                x0.assign(static_cast<std::size_t>(cfg.agents), *cfg.x0);
            else
                x0 = sample_box(*f, cfg.agents, seed);
            const run_outcome o = sbim_run(*f, p, sc, x0);
            trial_record &r = out.trials[static_cast<std::size_t>(t)];
            r.trial = t;
            r.seed = seed;
            r.iterations = o.iterations;
            r.success = o.success;
            r.f_gap = o.f_gap;
            r.wall_seconds = o.wall_seconds;
            r.termination = o.termination;
            r.mass_clamps = o.mass_clamps;
            r.prox_nonsmooth = o.prox_nonsmooth;
            r.solver_fallbacks = o.solver_fallbacks;
            r.imex_tolerance_not_met = o.imex_tolerance_not_met;
        }
    };
    const int nw = static_cast<int>(std::min<long>(cfg.workers, cfg.trials));
    if (nw <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nw; ++w)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    table_row &row = out.row;
    row.mode = "swarm";
    row.function = cfg.function;
    row.dim = cfg.dim;
    row.shift = cfg.shift;
    row.offset = cfg.offset;
    row.scheme = scheme_name(p.scheme);
    row.h = h;
    row.trials = cfg.trials;
    double iters = 0.0, cpu = 0.0;
    for (const auto &r : out.trials) {
        row.successes += r.success ? 1 : 0;
        row.solver_failures += r.termination == "solver-failure" ? 1 : 0;
        iters += static_cast<double>(r.iterations);
        cpu += r.wall_seconds;
    }
    const double n = static_cast<double>(cfg.trials);
    row.success_rate = static_cast<double>(row.successes) / n;
    row.mean_iterations = iters / n;
    row.mean_cpu_seconds = cpu / n;
    row.flagged = 2 * row.solver_failures > cfg.trials;
    row.status = row.flagged ? "flagged: majority of trials hit solver failures" : "ok";
    return out;
}

convergence_run run_energy_trace(const experiment_config &cfg)
{
    cfg.validate();
    const auto f = make_objective(cfg);
    const double h = cfg.h ? *cfg.h : cfg.h_sweep.front();
    const scheme_params p = params_for(*f, cfg, h);
    return run_single(*f, p, start_point(*f, cfg, cfg.master_seed), cfg);
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string rows_to_csv(const std::vector<table_row> &rows, bool include_timing)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &c : csv_columns) {
        if (!include_timing && c == "mean_cpu_seconds")
            continue;
        os << (first ? "" : ",") << c;
        first = false;
    }
    os << '\n';
    for (const auto &r : rows) {
        os << csv_escape(r.mode) << ',' << csv_escape(r.function) << ',' << r.dim << ','
           << format_double(r.shift) << ',' << format_double(r.offset) << ','
           << csv_escape(r.scheme) << ',' << format_double(r.h) << ','
           << format_double(r.p_bar) << ',' << r.successes << ',' << r.trials << ','
           << format_double(r.success_rate) << ',' << format_double(r.mean_iterations) << ',';
        if (include_timing)
            os << format_double(r.mean_cpu_seconds) << ',';
        os << (r.exact_convergence ? 1 : 0) << ',' << r.solver_failures << ','
           << (r.flagged ? 1 : 0) << ',' << csv_escape(r.status) << '\n';
    }
    return os.str();
}

nlohmann::json rows_to_json(const std::vector<table_row> &rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : rows) {
        arr.push_back({{"mode", r.mode}, {"function", r.function}, {"dim", r.dim},
            {"shift_b", json_double(r.shift)}, {"offset_c", json_double(r.offset)},
            {"scheme", r.scheme}, {"h", json_double(r.h)}, {"p_bar", json_double(r.p_bar)},
            {"successes", r.successes}, {"trials", r.trials},
            {"success_rate", json_double(r.success_rate)},
            {"mean_iterations", json_double(r.mean_iterations)},
            {"mean_cpu_seconds", json_double(r.mean_cpu_seconds)},
            {"exact_convergence", r.exact_convergence},
            {"solver_failures", r.solver_failures}, {"flagged", r.flagged},
            {"status", r.status}});
    }
    return arr;
}

std::vector<table_row> rows_from_json(const nlohmann::json &j)
{
    if (!j.is_array())
        throw config_error("expected a JSON array of rows");
    std::vector<table_row> rows;
    for (const auto &o : j) {
        table_row r;
        r.mode = o.at("mode").get<std::string>();
        r.function = o.at("function").get<std::string>();
        r.dim = o.at("dim").get<int>();
        r.shift = double_from_json(o.at("shift_b"));
        r.offset = double_from_json(o.at("offset_c"));
        r.scheme = o.at("scheme").get<std::string>();
        r.h = double_from_json(o.at("h"));
        r.p_bar = double_from_json(o.at("p_bar"));
        r.successes = o.at("successes").get<long>();
        r.trials = o.at("trials").get<long>();
        r.success_rate = double_from_json(o.at("success_rate"));
        r.mean_iterations = double_from_json(o.at("mean_iterations"));
        r.mean_cpu_seconds = double_from_json(o.at("mean_cpu_seconds"));
        r.exact_convergence = o.at("exact_convergence").get<bool>();
        r.solver_failures = o.at("solver_failures").get<long>();
        r.flagged = o.at("flagged").get<bool>();
        r.status = o.at("status").get<std::string>();
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw io_error("failed writing '" + path + "'");
}

void export_rows(const std::vector<table_row> &rows, const std::string &path)
{
    if (rows.empty())
        throw std::invalid_argument("nothing to export");
    const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    write_file(path, json ? rows_to_json(rows).dump(2) + "\n" : rows_to_csv(rows));
}

std::vector<table_row> import_rows(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "'");
    try {
        return rows_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception &e) {
        throw config_error(std::string("bad rows file: ") + e.what());
    }
}

std::string trials_to_csv(const std::vector<trial_record> &trials, bool include_timing)
{
    std::ostringstream os;
    os << "trial,seed,iterations,success,f_gap," << (include_timing ? "wall_seconds," : "")
       << "termination,mass_clamps,prox_nonsmooth,solver_fallbacks,imex_tolerance_not_met\n";
    for (const auto &t : trials) {
        os << t.trial << ',' << t.seed << ',' << t.iterations << ',' << (t.success ? 1 : 0)
           << ',' << format_double(t.f_gap) << ',';
        if (include_timing)
            os << format_double(t.wall_seconds) << ',';
        os << t.termination << ',' << t.mass_clamps << ',' << t.prox_nonsmooth << ','
           << t.solver_fallbacks << ',' << t.imex_tolerance_not_met << '\n';
    }
    return os.str();
}

std::string trace_to_csv(const convergence_run &run)
{
    std::ostringstream os;
    os << "k,f_gap,delta_k,c_k,energy_fd,kinetic,total_swarm_energy,p_k\n";
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
        const trace_row &r = run.trace[i];
        os << r.k << ',' << format_double(r.f_gap) << ',' << format_double(r.delta_k) << ','
           << format_double(r.c_k) << ',' << format_double(r.energy_fd) << ','
           << format_double(r.kinetic) << ',' << format_double(r.total_swarm_energy) << ','
           << format_double(i < run.p_k.size() ? run.p_k[i]
                                                : std::numeric_limits<double>::quiet_NaN())
           << '\n';
    }
    return os.str();
}

std::vector<double> parse_h_sweep(const std::string &text)
{
    std::vector<double> out;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const double hi = parse_number(text.substr(0, colon));
        const double lo = parse_number(text.substr(colon + 1));
        if (!(hi > 0.0) || !(lo > 0.0) || lo > hi)
            throw config_error("h sweep '" + text + "' must run from a larger to a smaller positive h");
        for (double h = hi; h >= lo * (1.0 - 1e-12); h *= 0.5)
            out.push_back(h);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item));
    if (out.empty())
        throw config_error("empty h sweep");
    return out;
}

experiment_config config_from_json(const nlohmann::json &j, experiment_config c)
{
    if (!j.is_object())
        throw config_error("config must be a JSON object");
    static const std::set<std::string> known = {"mode", "fn", "dim", "shift-b", "offset-c",
        "scheme", "alpha", "step-h", "h", "gamma", "beta-scale", "imex-eps", "imex-max-inner",
        "imex-window", "qr-floor", "newton-tol", "newton-max-iter", "fixed-point-fallback",
        "agents", "p-exponent", "tol-mass", "tol-merge", "mass-dt", "seed", "trials",
        "workers", "h-sweep", "x0", "max-iter", "grad-step", "prox-grid", "eps-reg"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw config_error("unknown config key '" + it.key() + "'");
    try {
        if (j.contains("mode"))
            c.mode = parse_mode(j["mode"].get<std::string>());
        if (j.contains("fn"))
            c.function = j["fn"].get<std::string>();
        if (j.contains("dim"))
            c.dim = j["dim"].get<int>();
        if (j.contains("shift-b"))
            c.shift = j["shift-b"].get<double>();
        if (j.contains("offset-c"))
            c.offset = j["offset-c"].get<double>();
        if (j.contains("scheme"))
            c.scheme.scheme = parse_scheme(j["scheme"].get<std::string>());
        if (j.contains("alpha"))
            c.scheme.alpha = j["alpha"].get<double>();
        for (const char *key : {"step-h", "h"})
            if (j.contains(key))
                c.h = j[key].get<double>();
        if (j.contains("gamma"))
            c.scheme.gamma = schedule::constant(j["gamma"].get<double>());
        if (j.contains("beta-scale"))
            c.scheme.beta = schedule::inverse_kh(j["beta-scale"].get<double>());
        if (j.contains("imex-eps"))
            c.imex.eps_stab = j["imex-eps"].get<double>();
        if (j.contains("imex-max-inner"))
            c.imex.max_inner = j["imex-max-inner"].get<int>();
        if (j.contains("imex-window"))
            c.imex.window = j["imex-window"].get<int>();
        if (j.contains("qr-floor"))
            c.imex.qr_floor = j["qr-floor"].get<double>();
        if (j.contains("newton-tol"))
            c.solver.newton_tol = j["newton-tol"].get<double>();
        if (j.contains("newton-max-iter"))
            c.solver.newton_max_iter = j["newton-max-iter"].get<int>();
        if (j.contains("fixed-point-fallback"))
            c.solver.fixed_point_fallback = j["fixed-point-fallback"].get<bool>();
        if (j.contains("agents"))
            c.agents = j["agents"].get<int>();
        if (j.contains("p-exponent"))
            c.comm.p_exponent = j["p-exponent"].get<double>();
        if (j.contains("tol-mass"))
            c.comm.tol_mass = j["tol-mass"].get<double>();
        if (j.contains("tol-merge"))
            c.comm.tol_merge = j["tol-merge"].get<double>();
        if (j.contains("mass-dt"))
            c.mass_dt = j["mass-dt"].get<double>();
        if (j.contains("seed"))
            c.master_seed = j["seed"].get<std::uint64_t>();
        if (j.contains("trials"))
            c.trials = j["trials"].get<long>();
        if (j.contains("workers"))
            c.workers = j["workers"].get<int>();
        if (j.contains("h-sweep")) {
            const auto &hs = j["h-sweep"];
            c.h_sweep = hs.is_string() ? parse_h_sweep(hs.get<std::string>())
                                       : hs.get<std::vector<double>>();
        }
        if (j.contains("x0")) {
            const auto &x = j["x0"];
            if (x.is_string()) {
                if (x.get<std::string>() != "uniform-box")
                    throw config_error("x0 must be a list of numbers or \"uniform-box\"");
                c.x0_uniform = true;
                c.x0.reset();
            } else {
                const auto v = x.get<std::vector<double>>();
                c.x0 = Eigen::Map<const vec>(v.data(), static_cast<Eigen::Index>(v.size()));
                c.x0_uniform = false;
            }
        }
        if (j.contains("max-iter")) {
            c.max_iter_converge = j["max-iter"].get<long>();
            c.max_iter_swarm = c.max_iter_converge;
        }
        if (j.contains("grad-step"))
            c.scheme.grad_step = j["grad-step"].get<double>();
        if (j.contains("prox-grid"))
            c.solver.prox_grid = j["prox-grid"].get<int>();
        if (j.contains("eps-reg"))
            c.eps_reg = j["eps-reg"].get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw config_error(std::string("bad config value: ") + e.what());
    }
    return c;
}

nlohmann::json config_to_json(const experiment_config &c)
{
    nlohmann::json j = {{"mode", mode_name(c.mode)}, {"fn", c.function}, {"dim", c.dim},
        {"shift-b", c.shift}, {"offset-c", c.offset}, {"scheme", scheme_name(c.scheme.scheme)},
        {"alpha", c.scheme.alpha}, {"gamma", c.scheme.gamma.value},
        {"beta-scale", c.scheme.beta.value}, {"imex-eps", c.imex.eps_stab},
        {"imex-max-inner", c.imex.max_inner}, {"imex-window", c.imex.window},
        {"qr-floor", c.imex.qr_floor}, {"newton-tol", c.solver.newton_tol},
        {"newton-max-iter", c.solver.newton_max_iter},
        {"fixed-point-fallback", c.solver.fixed_point_fallback}, {"agents", c.agents},
        {"p-exponent", c.comm.p_exponent}, {"tol-mass", c.comm.tol_mass},
        {"tol-merge", c.comm.tol_merge}, {"seed", c.master_seed}, {"trials", c.trials},
        {"workers", c.workers}, {"h-sweep", c.h_sweep}, {"prox-grid", c.solver.prox_grid},
        {"eps-reg", c.eps_reg}};
    if (c.h)
        j["h"] = *c.h;
    if (c.mass_dt)
        j["mass-dt"] = *c.mass_dt;
    if (c.scheme.grad_step)
        j["grad-step"] = *c.scheme.grad_step;
    if (c.x0_uniform)
        j["x0"] = "uniform-box";
    else if (c.x0)
        j["x0"] = std::vector<double>(c.x0->data(), c.x0->data() + c.x0->size());
    return j;
}

} // namespace sbim
