#include "sbim/objective.hpp"
#include "sbim/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sbim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct name_entry
{
    function_kind kind;
    const char *name;
};

constexpr name_entry names[] = {
    {function_kind::sphere, "sphere"},
    {function_kind::modified_sphere, "modified-sphere"},
    {function_kind::sum_squares, "sum-squares"},
    {function_kind::rotated_hyper_ellipsoid, "rotated-hyper-ellipsoid"},
    {function_kind::ackley, "ackley"},
    {function_kind::ackley_printed, "ackley-printed"},
    {function_kind::rastrigin, "rastrigin"},
};

} // namespace

objective::objective(int dim, double shift, double offset)
    : dim_(dim), shift_(shift), offset_(offset)
{
    if (dim < 1)
        throw dimension_error("objective dimension must be positive");
    x_star_ = vec::Constant(dim, shift);
}

void objective::finalize()
{
    f_star_ = value(x_star_);
}

void objective::check_dim(cref x) const
{
    if (x.size() != dim_)
        throw dimension_error("expected a vector of length " + std::to_string(dim_)
            + ", got " + std::to_string(x.size()));
}

std::optional<vec> objective::prox_closed_form(double, cref) const
{
    return std::nullopt;
}

mat objective::hessian(cref x) const
{
    mat h(dim_, dim_);
    vec e = vec::Zero(dim_);
    for (int j = 0; j < dim_; ++j) {
        e[j] = 1.0;
        h.col(j) = hess_vec(x, e);
        e[j] = 0.0;
    }
    return h;
}

benchmark::benchmark(function_kind kind, int dim, double shift, double offset)
    : objective(dim, shift, offset), kind_(kind)
{
    double half_width = 4.0;
    weights_ = vec::Ones(dim);
    switch (kind) {
    case function_kind::sphere:
        half_width = 5.12;
        lipschitz_ = 2.0;
        break;
    case function_kind::modified_sphere:
        half_width = 5.12;
        for (int i = 0; i < dim; ++i)
            weights_[i] = std::ldexp(1.0, i + 1);
        quad_const_ = -1745.0;
        quad_scale_ = 899.0;
        lipschitz_ = std::ldexp(1.0, dim) * 2.0 / 899.0;
        break;
    case function_kind::sum_squares:
        half_width = 10.0;
        for (int i = 0; i < dim; ++i)
            weights_[i] = i + 1;
        lipschitz_ = 2.0 * dim;
        break;
    case function_kind::rotated_hyper_ellipsoid:
        // sum_i sum_{j<=i} z_j^2 counts z_j^2 once for every i >= j
        half_width = 65.536;
        for (int i = 0; i < dim; ++i)
            weights_[i] = dim - i;
        lipschitz_ = 2.0 * dim;
        break;
    case function_kind::ackley:
        cos_coef_ = 1.0 / dim;
        break;
    case function_kind::ackley_printed:
        cos_coef_ = -1.0 / std::sqrt(static_cast<double>(dim));
        break;
    case function_kind::rastrigin:
        break;
    }
    lo_ = vec::Constant(dim, shift - half_width);
    hi_ = vec::Constant(dim, shift + half_width);
    finalize();
}

bool benchmark::is_quadratic() const
{
    return kind_ == function_kind::sphere || kind_ == function_kind::modified_sphere
        || kind_ == function_kind::sum_squares
        || kind_ == function_kind::rotated_hyper_ellipsoid;
}

std::string benchmark::name() const
{
    return function_name(kind_);
}

double benchmark::value(cref x) const
{
    check_dim(x);
    const vec z = x.array() - shift_;
    const double d = dim_;
    if (is_quadratic())
        return (weights_.dot(z.cwiseAbs2()) + quad_const_) / quad_scale_ + offset_;
    if (kind_ == function_kind::rastrigin) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i)
            s += z[i] * z[i] - 10.0 * std::cos(two_pi * z[i]) + 10.0;
        return s / d + offset_;
    }
    const double r = std::sqrt(z.squaredNorm() / d);
    const double c = (two_pi * z.array()).cos().sum();
    return -20.0 * std::exp(-0.2 * r) - std::exp(cos_coef_ * c) + 20.0
        + std::numbers::e + offset_;
}

vec benchmark::grad(cref x) const
{
    check_dim(x);
    const vec z = x.array() - shift_;
    const double d = dim_;
    if (is_quadratic())
        return (2.0 / quad_scale_) * weights_.cwiseProduct(z);
    if (kind_ == function_kind::rastrigin) {
        vec g(dim_);
        for (int i = 0; i < dim_; ++i)
            g[i] = (2.0 * z[i] + 20.0 * std::numbers::pi * std::sin(two_pi * z[i])) / d;
        return g;
    }
    vec g = vec::Zero(dim_);
    const double r = std::sqrt(z.squaredNorm() / d);
    // the radial term is not differentiable at z = 0; take the zero subgradient
    if (r > 0.0)
        g += (4.0 * std::exp(-0.2 * r) / (d * r)) * z;
    const double e = std::exp(cos_coef_ * (two_pi * z.array()).cos().sum());
    g += (two_pi * cos_coef_ * e) * (two_pi * z.array()).sin().matrix();
    return g;
}

vec benchmark::hess_vec(cref x, cref v) const
{
    check_dim(x);
    check_dim(v);
    const vec z = x.array() - shift_;
    const double d = dim_;
    if (is_quadratic())
        return (2.0 / quad_scale_) * weights_.cwiseProduct(v);
    if (kind_ == function_kind::rastrigin) {
        vec hv(dim_);
        for (int i = 0; i < dim_; ++i) {
            const double c = std::cos(two_pi * z[i]);
            hv[i] = (2.0 + 40.0 * std::numbers::pi * std::numbers::pi * c) * v[i] / d;
        }
        return hv;
    }
    vec hv = vec::Zero(dim_);
    const double r = std::sqrt(z.squaredNorm() / d);
    if (r > 0.0) {
        const double ex = std::exp(-0.2 * r);
        const double a = 4.0 * ex / (d * r);
        const double da = 4.0 * ex / d * (-0.2 / r - 1.0 / (r * r));
        hv += a * v + (da / (d * r) * z.dot(v)) * z;
    }
    const vec s = (two_pi * z.array()).sin();
    const vec c = (two_pi * z.array()).cos();
    const double e = std::exp(cos_coef_ * c.sum());
    hv += (two_pi * cos_coef_ * e)
        * (two_pi * c.cwiseProduct(v) - (two_pi * cos_coef_ * s.dot(v)) * s);
    return hv;
}

std::optional<vec> benchmark::prox_closed_form(double mu, cref y) const
{
    if (!is_quadratic())
        return std::nullopt;
    check_dim(y);
    // (1 + 2 mu a_i / s) x_i = y_i + 2 mu a_i B / s
    const vec w = (2.0 * mu / quad_scale_) * weights_;
    return ((y.array() + w.array() * shift_) / (1.0 + w.array())).matrix();
}

function_kind parse_function(const std::string &name)
{
    for (const auto &e : names)
        if (name == e.name)
            return e.kind;
    throw config_error("unknown function '" + name + "'");
}

std::string function_name(function_kind kind)
{
    for (const auto &e : names)
        if (kind == e.kind)
            return e.name;
    return "unknown";
}

std::vector<std::string> function_names()
{
    std::vector<std::string> out;
    for (const auto &e : names)
        out.emplace_back(e.name);
    return out;
}

std::shared_ptr<const benchmark> make_benchmark(const std::string &name, int dim,
    double shift, double offset)
{
    return std::make_shared<const benchmark>(parse_function(name), dim, shift, offset);
}

fd_report fd_check(const objective &f, cref x, double step)
{
    fd_report rep;
    if (!(step > 0.0)) {
        rep.degenerate_step = true;
        rep.grad_rel_err = std::numeric_limits<double>::quiet_NaN();
        rep.hess_rel_err = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    const int d = f.dim();
    const vec g = f.grad(x);
    vec g_fd(d);
    vec xp = x, xm = x;
    for (int i = 0; i < d; ++i) {
        xp[i] += step;
        xm[i] -= step;
        g_fd[i] = (f.value(xp) - f.value(xm)) / (2.0 * step);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    rep.grad_rel_err = (g - g_fd).lpNorm<Eigen::Infinity>()
        / std::max(g.lpNorm<Eigen::Infinity>(), 1.0);

    vec e = vec::Zero(d);
    for (int j = 0; j < d; ++j) {
        e[j] = 1.0;
        const vec hv = f.hess_vec(x, e);
        xp[j] += step;
        xm[j] -= step;
        const vec hv_fd = (f.grad(xp) - f.grad(xm)) / (2.0 * step);
        xp[j] = x[j];
        xm[j] = x[j];
        e[j] = 0.0;
        const double err = (hv - hv_fd).lpNorm<Eigen::Infinity>()
            / std::max(hv.lpNorm<Eigen::Infinity>(), 1.0);
        rep.hess_rel_err = std::max(rep.hess_rel_err, err);
    }
    return rep;
}

} // namespace sbim
