#include <doctest.h>

#include <sbim/errors.hpp>
#include <sbim/harness.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace sbim;

namespace {

table_row sample_row()
{
    table_row r;
    r.mode = "converge";
    r.function = "rotated-hyper-ellipsoid";
    r.dim = 2;
    r.shift = 0.1;
    r.offset = -1.0 / 3.0;
    r.scheme = "fd";
    r.h = 0.0078125;
    r.p_bar = 4.123456789012345;
    r.successes = 1;
    r.trials = 1;
    r.success_rate = 1.0;
    r.mean_iterations = 129.0;
    r.mean_cpu_seconds = 0.1;
    return r;
}

std::filesystem::path temp_path(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("sbim_test_" + name);
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(SBIM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

experiment_config small_swarm(const std::string &fn, scheme_kind s, long trials)
{
    experiment_config c = default_config(run_mode::swarm);
    c.function = fn;
    c.scheme.scheme = s;
    c.trials = trials;
    c.master_seed = 42;
    return c;
}

} // namespace

TEST_CASE("h sweep parsing")
{
    const auto sweep = parse_h_sweep("1:1/128");
    REQUIRE(sweep.size() == 8);
    CHECK(sweep.front() == 1.0);
    CHECK(sweep.back() == 1.0 / 128.0);
    CHECK(parse_h_sweep("1,0.5,0.1") == std::vector<double>{1.0, 0.5, 0.1});
    CHECK_THROWS_AS(parse_h_sweep("abc"), config_error);
}

TEST_CASE("csv export")
{
    const std::string csv = rows_to_csv({sample_row()});
    std::istringstream in(csv);
    std::string header, line, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, line));
    CHECK_FALSE(std::getline(in, extra));
    CHECK(header.rfind("mode,function,dim", 0) == 0);
    CHECK(line.find("0.0078125") != std::string::npos);
}

TEST_CASE("json round trip")
{
    table_row nan_row = sample_row();
    nan_row.p_bar = std::numeric_limits<double>::quiet_NaN();
    const std::vector<table_row> rows{sample_row(), nan_row};
    CHECK(rows_from_json(rows_to_json(rows)) == rows);

    const auto path = temp_path("rows.json");
    export_rows(rows, path.string());
    CHECK(import_rows(path.string()) == rows);
    std::filesystem::remove(path);
}

TEST_CASE("export errors")
{
    CHECK_THROWS_AS(export_rows({}, temp_path("empty.csv").string()), std::invalid_argument);
    CHECK_THROWS_AS(export_rows({sample_row()}, "/nonexistent-dir/x/rows.csv"), io_error);
}

TEST_CASE("config json")
{
    nlohmann::json j = {{"fn", "ackley"}, {"dim", 2}, {"scheme", "fb"}, {"trials", 7}};
    const experiment_config c = config_from_json(j);
    CHECK(c.function == "ackley");
    CHECK(c.dim == 2);
    CHECK(c.scheme.scheme == scheme_kind::fb);
    CHECK(c.trials == 7);
    CHECK(config_from_json(config_to_json(c)).trials == 7);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"bogus", 1}}), config_error);
}

TEST_CASE("convergence runs")
{
    experiment_config c;
    c.function = "rotated-hyper-ellipsoid";
    c.h_sweep = {1.0};
    const auto rows = run_convergence(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].successes == 1);
    CHECK(rows[0].p_bar > 3.2);
    CHECK(rows[0].p_bar < 5.3);

    experiment_config at_min;
    at_min.function = "sphere";
    at_min.h_sweep = {1.0};
    at_min.x0 = vec::Zero(1);
    const auto exact = run_convergence(at_min);
    CHECK(exact[0].exact_convergence);
    CHECK(exact[0].successes == 1);
}

TEST_CASE("swarm batches")
{
    SUBCASE("all agents at the minimizer")
    {
        experiment_config c = small_swarm("sphere", scheme_kind::fb, 1);
        c.x0_uniform = false;
        c.x0 = vec::Zero(1);
        const batch_result b = run_swarm_batch(c);
        CHECK(b.row.success_rate == 1.0);
        CHECK(b.row.mean_iterations == 2.0);
    }
    SUBCASE("reproducible and independent of the worker count")
    {
        experiment_config c = small_swarm("rastrigin", scheme_kind::semi, 12);
        const batch_result a = run_swarm_batch(c);
        c.workers = 4;
        const batch_result b = run_swarm_batch(c);
        CHECK(rows_to_csv({a.row}, false) == rows_to_csv({b.row}, false));
        CHECK(trials_to_csv(a.trials, false) == trials_to_csv(b.trials, false));
        CHECK(a.row.success_rate == static_cast<double>(a.row.successes) / 12.0);
        CHECK(a.row.success_rate >= 0.0);
        CHECK(a.row.success_rate <= 1.0);
    }
}

TEST_CASE("energy trace export")
{
    experiment_config c;
    c.mode = run_mode::energy_trace;
    c.h = 0.0625;
    const convergence_run run = run_energy_trace(c);
    const std::string csv = trace_to_csv(run);
    CHECK(csv.rfind("k,f_gap,delta_k", 0) == 0);
    CHECK(run.trace.size() > 2);
}

TEST_CASE("command-line exit codes")
{
    const auto out = temp_path("cli.csv");
    CHECK(run_cli("converge --fn sphere --dim 1 --scheme fd --h-sweep 1 --out " + out.string())
        == 0);
    CHECK(std::filesystem::exists(out));
    std::filesystem::remove(out);
    CHECK(run_cli("converge --fn himmelblau --out " + out.string()) == 1);
    CHECK(run_cli("converge --fn sphere --h-sweep 1 --out /nonexistent-dir/x/t.csv") == 2);
    CHECK(run_cli("swarm --fn rastrigin --dim 1 --scheme fb --trials 2 --seed 1 --out "
              + out.string())
        == 0);
    std::filesystem::remove(out);
    CHECK(run_cli("energy-trace --fn sphere --dim 1 --scheme fd --h 0.0625 --out "
              + out.string())
        == 0);
    std::filesystem::remove(out);
}
