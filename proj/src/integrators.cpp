#include "sbim/integrators.hpp"
#include "sbim/diagnostics.hpp"
#include "sbim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sbim {

namespace {

constexpr double eps_mach = std::numeric_limits<double>::epsilon();

struct scheme_entry
{
    scheme_kind kind;
    const char *name;
};

constexpr scheme_entry scheme_table[] = {
    {scheme_kind::fd, "fd"},
    {scheme_kind::imexrb, "imexrb"},
    {scheme_kind::semi, "semi"},
    {scheme_kind::fb, "fb"},
    {scheme_kind::ipahd, "ipahd"},
    {scheme_kind::nesterov, "nesterov"},
    {scheme_kind::gd, "gd"},
};

inertial_state advance(const objective &f, const inertial_state &s, vec x_next)
{
    inertial_state out;
    out.k = s.k + 1;
    out.x_prev = s.x_curr;
    out.f_prev = s.f_curr;
    out.x_curr = std::move(x_next);
    out.f_curr = f.value(out.x_curr);
    out.g_curr = f.grad(out.x_curr);
    return out;
}

/// magnitude of the terms of the FD residual, used to scale its tolerance
double fd_scale(const objective &f, const scheme_params &p, const inertial_state &s, cref x,
    double fx, cref gx)
{
    const double k = static_cast<double>(s.k);
    const double c1 = p.gamma_at(k) * k * p.h;
    const double c2 = p.beta_at(k) * k * p.h * p.h;
    const double sqrt_d = std::sqrt(static_cast<double>(f.dim()));
    return 1.0 + (k + p.alpha) * x.norm() + (2.0 * k + p.alpha) * s.x_curr.norm()
        + k * s.x_prev.norm() + p.alpha * sqrt_d * (std::abs(fx) + std::abs(s.f_curr))
        + std::abs(c1) * (gx.norm() + s.g_curr.norm()) + std::abs(c2) * gx.norm();
}

vec fd_residual_cached(const scheme_params &p, const inertial_state &s, cref x, double fx,
    cref gx)
{
    const double k = static_cast<double>(s.k);
    const double c1 = p.gamma_at(k) * k * p.h;
    const double c2 = p.beta_at(k) * k * p.h * p.h;
    vec r = k * (x - 2.0 * s.x_curr + s.x_prev) + p.alpha * (x - s.x_curr)
        + c1 * (gx - s.g_curr) + c2 * gx;
    r.array() -= p.alpha * (fx - s.f_curr);
    return r;
}

mat fd_jacobian(const objective &f, const scheme_params &p, const inertial_state &s, cref x,
    cref gx)
{
    const double k = static_cast<double>(s.k);
    const double c = p.gamma_at(k) * k * p.h + p.beta_at(k) * k * p.h * p.h;
    const int d = f.dim();
    mat j = c * f.hessian(x);
    j.diagonal().array() += k + p.alpha;
    j -= p.alpha * vec::Ones(d) * gx.transpose();
    return j;
}

double prox_phi(const objective &f, double mu, cref y, cref x)
{
    return f.value(x) + (x - y).squaredNorm() / (2.0 * mu);
}

/// probes x +- delta e_i; true when none of them lowers the prox objective,
/// which identifies minimizers at points where the gradient jumps
bool is_local_min(const objective &f, double mu, cref y, cref x, double phi)
{
    const double slack = 8.0 * eps_mach * (std::abs(phi) + 1.0);
    const double delta = 1e-7 * (1.0 + x.norm());
    vec e = vec::Zero(f.dim());
    for (int i = 0; i < f.dim(); ++i) {
        e[i] = delta;
        if (prox_phi(f, mu, y, x + e) < phi - slack || prox_phi(f, mu, y, x - e) < phi - slack)
            return false;
        e[i] = 0.0;
    }
    return true;
}

} // namespace

double schedule::at(double k, double h) const
{
    if (custom)
        return custom(k, h);
    switch (shape) {
    case form::constant:
        return value;
    case form::inverse_kh:
        return value / (k * h);
    }
    return value;
}

scheme_kind parse_scheme(const std::string &name)
{
    for (const auto &e : scheme_table)
        if (name == e.name)
            return e.kind;
    throw config_error("unknown scheme '" + name + "'");
}

std::string scheme_name(scheme_kind s)
{
    for (const auto &e : scheme_table)
        if (s == e.kind)
            return e.name;
    return "unknown";
}

std::vector<std::string> scheme_names()
{
    std::vector<std::string> out;
    for (const auto &e : scheme_table)
        out.emplace_back(e.name);
    return out;
}

void scheme_params::validate() const
{
    if (!(alpha >= 1.0))
        throw config_error("alpha must be >= 1");
    if (!(h > 0.0))
        throw config_error("step h must be positive");
    if (grad_step && !(*grad_step >= 0.0))
        throw config_error("gradient step must be non-negative");
}

void imex_config::validate() const
{
    if (!(eps_stab > 0.0) || max_inner < 1 || !(qr_floor > 0.0) || window < 0)
        throw config_error("IMEX-RB needs eps > 0, M >= 1, qr floor > 0 and window >= 0");
}

inertial_state inertial_state::make(const objective &f, cref x_curr, cref x_prev, long k)
{
    inertial_state s;
    s.k = k;
    s.x_curr = x_curr;
    s.x_prev = x_prev;
    s.f_curr = f.value(x_curr);
    s.f_prev = f.value(x_prev);
    s.g_curr = f.grad(x_curr);
    return s;
}

inertial_state initial_state(const objective &f, cref x0)
{
    const vec x1 = x0 - 1e-4 * f.grad(x0);
    return inertial_state::make(f, x1, x0, 1);
}

vec fd_residual(const objective &f, const scheme_params &p, const inertial_state &s, cref x)
{
    return fd_residual_cached(p, s, x, f.value(x), f.grad(x));
}

inertial_state fd_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    if (s.k < 1)
        throw domain_error("fd_step needs k >= 1");
    if (cfg.newton_max_iter < 1)
        throw solver_error("implicit solve allowed no Newton iterations",
            std::numeric_limits<double>::infinity());

    vec x = 2.0 * s.x_curr - s.x_prev;
    double fx = f.value(x);
    vec gx = f.grad(x);
    vec r = fd_residual_cached(p, s, x, fx, gx);
    double rn = r.norm();

    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (rn <= cfg.newton_tol * fd_scale(f, p, s, x, fx, gx)) {
            if (flags)
                flags->newton_iterations = it;
            return advance(f, s, std::move(x));
        }
        const mat j = fd_jacobian(f, p, s, x, gx);
        const vec dx = j.fullPivLu().solve(-r);
        if (!dx.allFinite())
            break;
        double t = 1.0;
        bool moved = false;
        while (t > 1e-12) {
            const vec xt = x + t * dx;
            const double ft = f.value(xt);
            const vec gt = f.grad(xt);
            const vec rt = fd_residual_cached(p, s, xt, ft, gt);
            const double rtn = rt.norm();
            if (rtn <= (1.0 - 1e-4 * t) * rn
                || rtn <= cfg.newton_tol * fd_scale(f, p, s, xt, ft, gt)) {
                x = xt;
                fx = ft;
                gx = gt;
                r = rt;
                rn = rtn;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved)
            break;
    }
    if (rn <= cfg.newton_tol * fd_scale(f, p, s, x, fx, gx)) {
        if (flags)
            flags->newton_iterations = cfg.newton_max_iter;
        return advance(f, s, std::move(x));
    }

    if (cfg.fixed_point_fallback) {
        if (flags)
            flags->used_fallback = true;
        // x <- x - tau R(x) with tau below 1/||J||
        const double tau = 1.0 / fd_jacobian(f, p, s, x, gx).norm();
        for (int it = 0; it < cfg.fixed_point_max_iter; ++it) {
            x -= tau * r;
            fx = f.value(x);
            gx = f.grad(x);
            r = fd_residual_cached(p, s, x, fx, gx);
            rn = r.norm();
            if (!std::isfinite(rn))
                break;
            if (rn <= cfg.newton_tol * fd_scale(f, p, s, x, fx, gx))
                return advance(f, s, std::move(x));
        }
    }
    throw solver_error("implicit step did not converge", rn);
}

vec prox_iterative(const objective &f, double mu, cref y, const solver_config &cfg,
    const std::optional<vec> &start, step_flags *flags)
{
    if (!(mu > 0.0))
        throw domain_error("prox weight must be positive");
    vec x = start ? *start : vec(y);
    auto tol_of = [&](cref xx, cref gg) {
        return cfg.newton_tol * std::max({1.0, y.norm(), xx.norm(), mu * gg.norm()});
    };

    vec g = f.grad(x);
    double phi = prox_phi(f, mu, y, x);
    double rn = (x + mu * g - y).norm();
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (rn <= tol_of(x, g))
            return x;
        const vec grad_phi = g + (x - y) / mu;
        mat h = f.hessian(x);
        h.diagonal().array() += 1.0 / mu;
        // Newton on the prox objective with eigenvalues mirrored to stay a descent direction
        Eigen::SelfAdjointEigenSolver<mat> es(0.5 * (h + h.transpose()));
        vec lam = es.eigenvalues().cwiseAbs().cwiseMax(1.0 / mu * 1e-8);
        const vec dir = -es.eigenvectors()
            * (es.eigenvectors().transpose() * grad_phi).cwiseQuotient(lam);
        const double slope = grad_phi.dot(dir);
        double t = 1.0;
        bool moved = false;
        bool stalled = false;
        const double slack = 8.0 * eps_mach * (std::abs(phi) + 1.0);
        for (int ls = 0; ls < 60; ++ls) {
            const vec xt = x + t * dir;
            const double pt = prox_phi(f, mu, y, xt);
            if (pt <= phi + 1e-4 * t * slope + slack) {
                const vec gt = f.grad(xt);
                const double rt = (xt + mu * gt - y).norm();
                // roundoff slack must not let the iteration wander uphill in residual
                if (pt <= phi + 1e-4 * t * slope || rt < rn) {
                    stalled = t * dir.norm() <= 1e-13 * (1.0 + x.norm());
                    x = xt;
                    g = gt;
                    phi = pt;
                    rn = rt;
                    moved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!moved || stalled) {
            if (is_local_min(f, mu, y, x, phi)) {
                if (flags)
                    flags->nonsmooth_accept = true;
                return x;
            }
            if (!moved)
                break;
        }
    }
    if (rn > tol_of(x, g) && is_local_min(f, mu, y, x, phi)) {
        if (flags)
            flags->nonsmooth_accept = true;
        return x;
    }
    if (rn <= tol_of(x, g))
        return x;

    if (cfg.fixed_point_fallback) {
        if (flags)
            flags->used_fallback = true;
        // x <- y - mu grad F(x), a contraction when mu L < 1
        for (int it = 0; it < cfg.fixed_point_max_iter; ++it) {
            x = y - mu * g;
            g = f.grad(x);
            rn = (x + mu * g - y).norm();
            if (!std::isfinite(rn))
                break;
            if (rn <= tol_of(x, g))
                return x;
        }
    }
    throw solver_error("prox solve did not converge", rn);
}

vec prox(const objective &f, double mu, cref y, const solver_config &cfg,
    const std::optional<vec> &start, step_flags *flags)
{
    if (!(mu > 0.0))
        throw domain_error("prox weight must be positive");
    if (auto closed = f.prox_closed_form(mu, y))
        return *closed;
    const int d = f.dim();
    double grid_size = std::pow(static_cast<double>(cfg.prox_grid), d);
    if (cfg.prox_grid < 2 || grid_size > static_cast<double>(cfg.prox_grid_budget))
        return prox_iterative(f, mu, y, cfg, start, flags);

    // scan the grid, keeping the few lowest points as extra starts
    constexpr int keep = 3;
    std::vector<std::pair<double, vec>> best;
    std::vector<int> idx(d, 0);
    const vec step = (f.box_hi() - f.box_lo()) / (cfg.prox_grid - 1);
    for (long n = 0; n < static_cast<long>(grid_size); ++n) {
        vec x(d);
        for (int i = 0; i < d; ++i)
            x[i] = f.box_lo()[i] + idx[i] * step[i];
        const double phi = prox_phi(f, mu, y, x);
        if (static_cast<int>(best.size()) < keep || phi < best.back().first) {
            best.emplace_back(phi, std::move(x));
            std::sort(best.begin(), best.end(),
                [](const auto &a, const auto &b) { return a.first < b.first; });
            if (static_cast<int>(best.size()) > keep)
                best.pop_back();
        }
        for (int i = 0; i < d && ++idx[i] == cfg.prox_grid; ++i)
            idx[i] = 0;
    }
    std::vector<vec> starts;
    starts.push_back(start ? *start : vec(y));
    for (auto &b : best)
        starts.push_back(std::move(b.second));

    std::optional<vec> winner;
    double winner_phi = std::numeric_limits<double>::infinity();
    step_flags winner_flags;
    std::optional<solver_error> last_error;
    for (const auto &s0 : starts) {
        step_flags local;
        try {
            vec x = prox_iterative(f, mu, y, cfg, s0, &local);
            const double phi = prox_phi(f, mu, y, x);
            if (phi < winner_phi) {
                winner_phi = phi;
                winner = std::move(x);
                winner_flags = local;
            }
        } catch (const solver_error &e) {
            last_error = e;
        }
    }
    if (!winner)
        throw *last_error;
    if (flags) {
        flags->nonsmooth_accept = flags->nonsmooth_accept || winner_flags.nonsmooth_accept;
        flags->used_fallback = flags->used_fallback || winner_flags.used_fallback;
    }
    return *winner;
}

prox_point semi_point(const scheme_params &p, const inertial_state &s)
{
    const double k = static_cast<double>(s.k);
    const double ka = k + p.alpha;
    const double gamma = p.gamma_at(k);
    const vec dx = s.x_curr - s.x_prev;
    vec y = s.x_curr + (k / ka) * dx + (k * p.h / ka * gamma) * s.g_curr;
    y.array() += p.alpha / ka * s.g_curr.dot(dx);
    return {std::move(y), k * p.h / ka * (gamma + p.beta_at(k) * p.h)};
}

prox_point fb_point(const scheme_params &p, const inertial_state &s)
{
    const double k = static_cast<double>(s.k);
    const double ka = k + p.alpha;
    const double gamma = p.gamma_at(k);
    vec y = s.x_curr + (k / ka) * (s.x_curr - s.x_prev) + (k * p.h / ka * gamma) * s.g_curr;
    y.array() += p.alpha / ka * (s.f_curr - s.f_prev);
    return {std::move(y), k * p.h / ka * (gamma + p.beta_at(k) * p.h)};
}

prox_point ipahd_point(const scheme_params &p, const inertial_state &s)
{
    const double k = static_cast<double>(s.k);
    const double momentum = 1.0 - p.alpha / (k + p.alpha);
    const double b_ip = p.gamma_at(k);
    const double b = p.beta_at(k);
    vec y = s.x_curr + momentum * (s.x_curr - s.x_prev) + (b_ip * p.h * momentum) * s.g_curr;
    return {std::move(y), k / (k + p.alpha) * (b_ip * p.h + p.h * p.h * b)};
}

inertial_state prox_step(const objective &f, const prox_point &pt, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    return advance(f, s, prox(f, pt.mu, pt.y, cfg, s.x_curr, flags));
}

inertial_state semi_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    if (s.k < 1)
        throw domain_error("semi_step needs k >= 1");
    return prox_step(f, semi_point(p, s), s, cfg, flags);
}

inertial_state fb_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    if (s.k < 1)
        throw domain_error("fb_step needs k >= 1");
    return prox_step(f, fb_point(p, s), s, cfg, flags);
}

inertial_state ipahd_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    if (s.k < 1)
        throw domain_error("ipahd_step needs k >= 1");
    return prox_step(f, ipahd_point(p, s), s, cfg, flags);
}

inertial_state nesterov_step(const objective &f, double step_s, const inertial_state &s)
{
    if (s.k < 0)
        throw domain_error("nesterov_step needs k >= 0");
    const vec &y = s.velocity.size() ? s.velocity : s.x_curr;
    vec x_next = y - step_s * f.grad(y);
    inertial_state out = advance(f, s, std::move(x_next));
    const double k = static_cast<double>(s.k);
    out.velocity = out.x_curr + (k / (k + 3.0)) * (out.x_curr - out.x_prev);
    return out;
}

inertial_state gd_step(const objective &f, double step_s, const inertial_state &s)
{
    return advance(f, s, s.x_curr - step_s * s.g_curr);
}

std::pair<vec, vec> rhs_first_order(const objective &f, const scheme_params &p, double t,
    cref x, cref v)
{
    if (!(t > 0.0))
        throw domain_error("first-order right-hand side needs t > 0");
    const double k = t / p.h;
    const vec g = f.grad(x);
    vec vdot = -(p.alpha / t) * v - p.gamma_at(k) * f.hess_vec(x, v) - p.beta_at(k) * g;
    vdot.array() += p.alpha / t * g.dot(v);
    return {vec(v), std::move(vdot)};
}

mat qr_basis(const std::vector<vec> &columns, double qr_floor)
{
    if (columns.empty())
        return mat();
    const int n = static_cast<int>(columns.front().size());
    mat q(n, 0);
    for (const auto &c : columns) {
        const double cn = c.norm();
        if (cn == 0.0 || q.cols() >= n)
            continue;
        vec w = c;
        // two passes of Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            w -= q * (q.transpose() * w);
        const double wn = w.norm();
        if (wn <= qr_floor * cn)
            continue;
        q.conservativeResize(n, q.cols() + 1);
        q.col(q.cols() - 1) = w / wn;
    }
    return q;
}

imex_result imexrb_step(const vector_field &g, double t_next, double dt,
    const std::deque<vec> &history, const imex_config &cfg, const solver_config &scfg)
{
    cfg.validate();
    if (history.empty())
        throw domain_error("IMEX-RB needs at least one past state");
    if (!(t_next > 0.0))
        throw domain_error("IMEX-RB needs t_{n+1} > 0");
    const vec &un = history.front();
    const int n_state = static_cast<int>(un.size());
    int window = cfg.window > 0 ? cfg.window : std::min(n_state, 20);
    window = std::min<int>(window, static_cast<int>(history.size()));
    std::vector<vec> cols(history.begin(), history.begin() + window);
    mat v = qr_basis(cols, cfg.qr_floor);
    if (v.cols() == 0) {
        // u^n = 0: seed the basis with the direction of the vector field
        const vec g0 = g(t_next, un);
        if (g0.norm() > 0.0)
            v = g0.normalized();
        else
            v = vec::Unit(n_state, 0);
    }

    imex_result res;
    for (int inner = 0; inner < cfg.max_inner; ++inner) {
        const int r = static_cast<int>(v.cols());
        // reduced implicit Euler: G(w) = w - dt V^T g(t, V w + u^n) = 0
        vec w = vec::Zero(r);
        vec gw = g(t_next, un);
        vec big_g = w - dt * v.transpose() * gw;
        double gn = big_g.norm();
        int it = 0;
        auto tol_of = [&](const vec &ww, const vec &gg) {
            return scfg.newton_tol * (1.0 + ww.norm() + dt * gg.norm() + un.norm());
        };
        for (; it < scfg.newton_max_iter && gn > tol_of(w, gw); ++it) {
            mat jac = mat::Identity(r, r);
            const vec base = v * w + un;
            for (int j = 0; j < r; ++j) {
                const double e = std::sqrt(eps_mach) * (1.0 + base.norm());
                const vec dg = (g(t_next, base + e * v.col(j)) - gw) / e;
                jac.col(j) -= dt * (v.transpose() * dg);
            }
            const vec step = jac.fullPivLu().solve(-big_g);
            if (!step.allFinite())
                throw solver_error("reduced IMEX-RB Newton produced a non-finite step", gn);
            double t = 1.0;
            bool moved = false;
            while (t > 1e-10) {
                const vec wt = w + t * step;
                const vec gt = g(t_next, v * wt + un);
                const vec bt = wt - dt * v.transpose() * gt;
                if (bt.norm() < gn || bt.norm() <= tol_of(wt, gt)) {
                    w = wt;
                    gw = gt;
                    big_g = bt;
                    gn = bt.norm();
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!moved)
                break;
        }
        if (gn > tol_of(w, gw))
            throw solver_error("reduced IMEX-RB Newton did not converge", gn);

        vec u_next = un + dt * gw;
        vec resid = u_next - v * (v.transpose() * u_next);
        const double rn = resid.norm();
        const double un_norm = u_next.norm();
        res.u = u_next;
        res.inner_iterations = inner + 1;
        res.basis_size = r;
        res.residual_ratio = un_norm > 0.0 ? rn / un_norm : 0.0;
        if (res.residual_ratio <= cfg.eps_stab)
            return res;
        if (r >= n_state)
            break;
        resid -= v * (v.transpose() * resid);
        const double rn2 = resid.norm();
        if (!(rn2 > 0.0))
            break;
        v.conservativeResize(n_state, r + 1);
        v.col(r) = resid / rn2;
    }
    res.tolerance_not_met = res.residual_ratio > cfg.eps_stab;
    return res;
}

inertial_state imexrb_inertial_step(const objective &f, const scheme_params &p,
    const imex_config &cfg, std::deque<vec> &history, const inertial_state &s,
    const solver_config &scfg, step_flags *flags)
{
    const int d = f.dim();
    if (s.velocity.size() != d)
        throw domain_error("IMEX-RB state carries no velocity");
    if (history.empty()) {
        vec u(2 * d);
        u << s.x_curr, s.velocity;
        history.push_front(u);
    }
    auto g = [&](double t, cref u) {
        auto [xd, vd] = rhs_first_order(f, p, t, u.head(d), u.tail(d));
        vec out(2 * d);
        out << xd, vd;
        return out;
    };
    imex_config eff = cfg;
    if (eff.window == 0)
        eff.window = std::min(2 * d, 20);
    const double t_next = static_cast<double>(s.k + 1) * p.h;
    imex_result r = imexrb_step(g, t_next, p.h, history, eff, scfg);
    if (flags) {
        flags->tolerance_not_met = r.tolerance_not_met;
        flags->inner_iterations = r.inner_iterations;
    }
    history.push_front(r.u);
    while (static_cast<int>(history.size()) > std::max(eff.window, 1))
        history.pop_back();
    inertial_state out = advance(f, s, r.u.head(d));
    out.velocity = r.u.tail(d);
    return out;
}

inertial_state scheme_step(const objective &f, const scheme_params &p, const inertial_state &s,
    const solver_config &cfg, step_flags *flags)
{
    switch (p.scheme) {
    case scheme_kind::fd:
        return fd_step(f, p, s, cfg, flags);
    case scheme_kind::semi:
        return semi_step(f, p, s, cfg, flags);
    case scheme_kind::fb:
        return fb_step(f, p, s, cfg, flags);
    case scheme_kind::ipahd:
        return ipahd_step(f, p, s, cfg, flags);
    case scheme_kind::nesterov:
        return nesterov_step(f, p.step_s(), s);
    case scheme_kind::gd:
        return gd_step(f, p.step_s(), s);
    case scheme_kind::imexrb:
        break;
    }
    throw config_error("IMEX-RB needs its history; call imexrb_inertial_step");
}

bool decay_conditions_report::all_cond1() const
{
    return std::all_of(cond1_ok.begin(), cond1_ok.end(), [](bool b) { return b; });
}

bool decay_conditions_report::all_cond2() const
{
    return !cond2_ok.empty()
        && std::all_of(cond2_ok.begin(), cond2_ok.end(), [](bool b) { return b; });
}

bool decay_conditions_report::all_cond3() const
{
    return std::all_of(cond3_ok.begin(), cond3_ok.end(), [](bool b) { return b; });
}

decay_conditions_report check_decay_conditions(const scheme_params &p, std::optional<double> L,
    long K, int dim)
{
    if (K < 1)
        throw domain_error("condition check needs K >= 1");
    decay_conditions_report rep;
    if (!L)
        rep.warnings.emplace_back("no Lipschitz bound: condition 2 skipped");
    for (long k = 1; k <= K; ++k) {
        const auto [c_k, d_k] = delta_c(p, k);
        const auto [c_next, d_next] = delta_c(p, k + 1);
        (void)c_next;
        rep.cond1_ok.push_back(c_k < 0.0);
        rep.cond3_ok.push_back(p.gamma_at(static_cast<double>(k)) >= 0.0);
        if (L) {
            const double base = d_next - d_k + (p.alpha - 1.0) * c_k * p.h;
            const double lhs = base - p.alpha * c_k * p.h * std::sqrt(2.0 * *L);
            const double lhs_dim = base - p.alpha * c_k * p.h * std::sqrt(2.0 * *L * dim);
            rep.cond2_lhs.push_back(lhs);
            rep.cond2_ok.push_back(lhs <= 0.0);
            rep.cond2_dim_ok.push_back(lhs_dim <= 0.0);
        }
    }
    return rep;
}

} // namespace sbim
