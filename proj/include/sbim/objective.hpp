#ifndef SBIM_OBJECTIVE_HPP
#define SBIM_OBJECTIVE_HPP

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sbim {

using vec = Eigen::VectorXd;
using mat = Eigen::MatrixXd;
using cref = Eigen::Ref<const Eigen::VectorXd>;

/// smooth objective with value, gradient and Hessian-vector oracles
///
/// Implementations must be immutable after construction; all oracles are
/// called concurrently by the swarm and the batch harness.
class objective
{
public:
    virtual ~objective() = default;

    virtual std::string name() const = 0;
    virtual double value(cref x) const = 0;
    virtual vec grad(cref x) const = 0;
    virtual vec hess_vec(cref x, cref v) const = 0;

    /// closed-form solution of x + mu grad F(x) = y when one exists
    virtual std::optional<vec> prox_closed_form(double mu, cref y) const;

    /// dense Hessian assembled column by column from hess_vec
    mat hessian(cref x) const;

    int dim() const { return dim_; }
    double shift() const { return shift_; }
    double offset() const { return offset_; }
    const vec &box_lo() const { return lo_; }
    const vec &box_hi() const { return hi_; }
    const vec &minimizer() const { return x_star_; }
    double min_value() const { return f_star_; }
    std::optional<double> lipschitz_hint() const { return lipschitz_; }

protected:
    /// stores box, minimizer and hint; F* must be set by finalize()
    objective(int dim, double shift, double offset);

    /// evaluates F* = F(x*); call at the end of the derived constructor
    void finalize();

    void check_dim(cref x) const;

    int dim_;
    double shift_;
    double offset_;
    vec lo_, hi_;
    vec x_star_;
    double f_star_ = 0.0;
    std::optional<double> lipschitz_;
};

enum class function_kind
{
    sphere,
    modified_sphere,
    sum_squares,
    rotated_hyper_ellipsoid,
    ackley,
    ackley_printed,
    rastrigin
};

/// the benchmark functions
///
/// Quadratics are diagonal: F = sum_i a_i z_i^2 + const with z = x - B.
/// `ackley` is the usual form with exp(+(1/d) sum cos(2 pi z)), whose global
/// minimum is z = 0. `ackley_printed` keeps exp(-(1/sqrt d) sum cos(2 pi z));
/// its value at z = 0 is not the global minimum.
class benchmark : public objective
{
public:
    benchmark(function_kind kind, int dim, double shift = 0.0, double offset = 0.0);

    std::string name() const override;
    double value(cref x) const override;
    vec grad(cref x) const override;
    vec hess_vec(cref x, cref v) const override;
    std::optional<vec> prox_closed_form(double mu, cref y) const override;

    function_kind kind() const { return kind_; }
    bool is_quadratic() const;

private:
    function_kind kind_;
    /// diagonal weights a_i of the quadratic families
    vec weights_;
    double quad_const_ = 0.0;
    double quad_scale_ = 1.0;
    /// coefficient c of the cosine term exp(c sum cos(2 pi z)) in Ackley
    double cos_coef_ = 0.0;
};

/// canonical names: sphere, modified-sphere, sum-squares,
/// rotated-hyper-ellipsoid, ackley, ackley-printed, rastrigin
function_kind parse_function(const std::string &name);
std::string function_name(function_kind kind);
std::vector<std::string> function_names();

std::shared_ptr<const benchmark> make_benchmark(const std::string &name, int dim,
    double shift = 0.0, double offset = 0.0);

struct fd_report
{
    /// max_i |g_i - g_fd,i| / max(||g||_inf, 1)
    double grad_rel_err = 0.0;
    /// same measure for every Hessian column against the FD of the gradient
    double hess_rel_err = 0.0;
    bool degenerate_step = false;
};

/// central-difference comparison of grad and hess_vec at x
fd_report fd_check(const objective &f, cref x, double step = 1e-6);

} // namespace sbim

#endif
