#ifndef SBIM_INTEGRATORS_HPP
#define SBIM_INTEGRATORS_HPP

#include "sbim/objective.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sbim {

/// map k -> coefficient; k is real so that continuous time t = k h can be used
struct schedule
{
    enum class form { constant, inverse_kh };

    form shape = form::constant;
    double value = 0.0;
    /// when set, replaces the built-in forms
    std::function<double(double k, double h)> custom;

    double at(double k, double h) const;

    static schedule constant(double v) { return {form::constant, v, {}}; }
    /// value / (k h)
    static schedule inverse_kh(double scale) { return {form::inverse_kh, scale, {}}; }
};

enum class scheme_kind { fd, imexrb, semi, fb, ipahd, nesterov, gd };

scheme_kind parse_scheme(const std::string &name);
std::string scheme_name(scheme_kind s);
std::vector<std::string> scheme_names();

struct scheme_params
{
    double alpha = 2.0;
    /// step h; Delta t for IMEX-RB
    double h = 1.0;
    schedule gamma = schedule::constant(200.0);
    schedule beta = schedule::inverse_kh(500.0);
    scheme_kind scheme = scheme_kind::fd;
    /// gradient step s of nesterov and gd; h^2 when unset
    std::optional<double> grad_step;

    double gamma_at(double k) const { return gamma.at(k, h); }
    double beta_at(double k) const { return beta.at(k, h); }
    double step_s() const { return grad_step ? *grad_step : h * h; }

    /// throws config_error on alpha < 1, h <= 0 or s < 0
    void validate() const;
};

struct solver_config
{
    /// residual tolerance, relative to the magnitude of the equation's terms
    double newton_tol = 1e-12;
    int newton_max_iter = 100;
    bool fixed_point_fallback = true;
    int fixed_point_max_iter = 10000;
    /// grid points per coordinate for the global prox search over the
    /// objective's box; 0 keeps the local solve
    int prox_grid = 0;
    /// the global search is skipped when prox_grid^d exceeds this
    long prox_grid_budget = 20000;
};

struct imex_config
{
    double eps_stab = 1e-6;
    int max_inner = 20;
    double qr_floor = 1e-10;
    /// number of past states in the QR window; 0 selects min(n, 2d) capped at 20
    int window = 0;

    void validate() const;
};

/// single-agent iterate: x^k, x^{k-1} and cached oracle values
struct inertial_state
{
    long k = 1;
    vec x_curr;
    vec x_prev;
    double f_curr = 0.0;
    double f_prev = 0.0;
    vec g_curr;
    /// V^k for IMEX-RB, y^k for Nesterov; empty otherwise
    vec velocity;

    /// state at iteration k with cached values freshly evaluated
    static inertial_state make(const objective &f, cref x_curr, cref x_prev, long k = 1);
};

/// x^1 = x^0 - 1e-4 grad F(x^0), returned as the state at k = 1
inertial_state initial_state(const objective &f, cref x0);

/// diagnostic counters filled by the steppers
struct step_flags
{
    int newton_iterations = 0;
    bool used_fallback = false;
    /// prox stalled at a point where the gradient jumps (Ackley's kink)
    bool nonsmooth_accept = false;
    bool tolerance_not_met = false;
    int inner_iterations = 0;
};

/// k(x - 2x^k + x^{k-1}) + alpha(x - x^k) - alpha(F(x) - F^k) 1
///   + gamma_k k h (grad F(x) - grad F^k) + beta_k k h^2 grad F(x)
vec fd_residual(const objective &f, const scheme_params &p, const inertial_state &s, cref x);

inertial_state fd_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);

/// solves x + mu grad F(x) = y
///
/// Quadratics use the closed form. Otherwise a globalized Newton method
/// descends F(x) + |x - y|^2/(2 mu) starting from `start` (y when empty).
/// With cfg.prox_grid > 0 the prox objective is first scanned on a grid over
/// the box and the best grid points are polished as well; the lowest value wins.
vec prox(const objective &f, double mu, cref y, const solver_config &cfg = {},
    const std::optional<vec> &start = std::nullopt, step_flags *flags = nullptr);

/// the iterative path of prox, also used on quadratics to cross-check the closed form
vec prox_iterative(const objective &f, double mu, cref y, const solver_config &cfg = {},
    const std::optional<vec> &start = std::nullopt, step_flags *flags = nullptr);

/// proximal scheme data: the point y^k and the weight mu_k
struct prox_point
{
    vec y;
    double mu;
};

prox_point semi_point(const scheme_params &p, const inertial_state &s);
prox_point fb_point(const scheme_params &p, const inertial_state &s);
/// IPAHD with beta^IPAHD = gamma_k and b_k = beta_k
prox_point ipahd_point(const scheme_params &p, const inertial_state &s);

/// x^{k+1} = prox_{mu F}(y), warm-started at x^k
inertial_state prox_step(const objective &f, const prox_point &pt, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);

inertial_state semi_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);
inertial_state fb_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);
inertial_state ipahd_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);

/// x^{k+1} = y^k - s grad F(y^k); y^{k+1} = x^{k+1} + k/(k+3)(x^{k+1} - x^k)
///
/// Here s.k is the index of x_curr and s.velocity holds y^k (k = 0 allowed).
inertial_state nesterov_step(const objective &f, double step_s, const inertial_state &s);

inertial_state gd_step(const objective &f, double step_s, const inertial_state &s);

/// first-order form of the inertial ODE: returns (xdot, vdot)
std::pair<vec, vec> rhs_first_order(const objective &f, const scheme_params &p, double t,
    cref x, cref v);

/// vector field u' = g(t, u)
using vector_field = std::function<vec(double t, cref u)>;

struct imex_result
{
    vec u;
    int inner_iterations = 0;
    int basis_size = 0;
    double residual_ratio = 0.0;
    bool tolerance_not_met = false;
};

/// orthonormal basis of the given columns, skipping columns whose new
/// component is below qr_floor relative to the column norm
mat qr_basis(const std::vector<vec> &columns, double qr_floor);

/// one IMEX-RB step from u^n (history.front()) to t_{n+1} = t_next
///
/// history holds u^n, u^{n-1}, ... (most recent first).
imex_result imexrb_step(const vector_field &g, double t_next, double dt,
    const std::deque<vec> &history, const imex_config &cfg, const solver_config &scfg = {});

/// IMEX-RB on u = [x; V] for the inertial ODE; s.velocity must hold V^k and
/// history the past full states (most recent first, front = [x^k; V^k])
inertial_state imexrb_inertial_step(const objective &f, const scheme_params &p,
    const imex_config &cfg, std::deque<vec> &history, const inertial_state &s,
    const solver_config &scfg = {}, step_flags *flags = nullptr);

/// dispatch for the schemes that need only the state (all but imexrb)
inertial_state scheme_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg = {}, step_flags *flags = nullptr);

struct decay_conditions_report
{
    std::vector<bool> cond1_ok;
    /// empty when no Lipschitz bound was supplied
    std::vector<bool> cond2_ok;
    /// the variant with sqrt(2 L d)
    std::vector<bool> cond2_dim_ok;
    std::vector<double> cond2_lhs;
    std::vector<bool> cond3_ok;
    std::vector<std::string> warnings;

    bool all_cond1() const;
    bool all_cond2() const;
    bool all_cond3() const;
};

/// sufficient conditions for the discrete energy decay, for k = 1..K:
/// C_k < 0; delta_{k+1} - delta_k + (alpha-1) C_k h - alpha C_k h sqrt(2L) <= 0; gamma_k >= 0
decay_conditions_report check_decay_conditions(const scheme_params &p, std::optional<double> L,
    long K, int dim = 1);

} // namespace sbim

#endif
