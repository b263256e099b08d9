#include "ssmlab/training.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssmlab {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

// exp(nu) with nu clamped so the result stays finite; by then the magnitude
// exp(-exp(nu)) has underflowed to exactly 0 and every dependent power sum
// vanishes, so the clamp never changes a finite gradient.
double exp_nu(double nu) { return std::exp(std::min(nu, 700.0)); }

// exp(-x) rounds to exactly 1.0 once x is below the last-place gap at 1, so
// cap the magnitude one ulp inside the unit circle: realized systems must
// stay strictly stable for every parameter value.
double magnitude_from_nu(double nu) {
    return std::min(std::exp(-exp_nu(nu)), 0x1.fffffffffffffp-1);
}

double nu_from_magnitude(double rho) { return std::log(-std::log(rho)); }

// Fixed-order four-way reduction: deterministic (the combine order never
// depends on n) and fast (four independent accumulation chains).
double dot4(const double* x, const double* y, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += x[i] * y[i];
        a1 += x[i + 1] * y[i + 1];
        a2 += x[i + 2] * y[i + 2];
        a3 += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i) a0 += x[i] * y[i];
    return (a0 + a1) + (a2 + a3);
}

struct EvalScratch {
    std::vector<double> expnu;                 // exp(min(nu, 700)) per mode
    std::vector<double> are, aim, gre, gim;
    std::vector<double> powre, powim;
    std::vector<double> wre, wim, w2re, w2im;  // sum r_k p_k and sum (k-1) r_k p_k
    std::vector<double> prodre;                // pow * g, forward staging

    void resize(std::size_t n) {
        expnu.resize(n);
        are.resize(n); aim.resize(n); gre.resize(n); gim.resize(n);
        powre.resize(n); powim.resize(n);
        wre.resize(n); wim.resize(n); w2re.resize(n); w2im.resize(n);
        prodre.resize(n);
    }
};

struct EvalStats {
    double loss = 0.0;
    double abs_err_l1 = 0.0;
};

// Fused objective + gradient for the stable parameterization.  The output at
// step k and the gradient accumulators both consume the same running power
// a^(k-1), so a single sweep over k produces the loss, the residual, and the
// two per-mode weighted power sums the chain rule needs.  Inner loops keep
// the state dimension contiguous so the compiler can vectorize them, and all
// reductions have a fixed association order, so results are deterministic.
// grad may be null (loss only).
EvalStats eval_loss_grad(const StableParams& params, const ScalarSeries& target,
                         std::vector<double>* grad, EvalScratch& s) {
    const std::size_t n = params.dim;
    const std::size_t t = target.length();
    const double* x = params.x.data();
    s.resize(n);

    EvalStats stats;
    if (params.mode == Mode::Real) {
        const double* nu = x;
        const double* b = x + n;
        const double* c = x + 2 * n;
        for (std::size_t j = 0; j < n; ++j) {
            s.expnu[j] = exp_nu(nu[j]);
            s.are[j] = params.sign[j] * magnitude_from_nu(nu[j]);
            s.gre[j] = b[j] * c[j];
        }

        std::fill(s.powre.begin(), s.powre.end(), 1.0);
        if (grad) {
            std::fill(s.wre.begin(), s.wre.end(), 0.0);
            std::fill(s.w2re.begin(), s.w2re.end(), 0.0);
        }
        for (std::size_t k = 0; k < t; ++k) {
            const double y = dot4(s.powre.data(), s.gre.data(), n);
            const double r = y - target[k];
            stats.loss += r * r;
            stats.abs_err_l1 += std::abs(r);
            if (grad) {
                const double w = static_cast<double>(k) * r;  // (k-1) r_k, 1-indexed
                for (std::size_t j = 0; j < n; ++j) {
                    const double p = s.powre[j];
                    s.wre[j] += r * p;
                    s.w2re[j] += w * p;
                    s.powre[j] = p * s.are[j];
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) s.powre[j] *= s.are[j];
            }
        }
        if (!grad) return stats;

        grad->assign(3 * n, 0.0);
        double* g = grad->data();
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = -2.0 * s.expnu[j] * s.gre[j] * s.w2re[j];
            g[n + j] = 2.0 * c[j] * s.wre[j];
            g[2 * n + j] = 2.0 * b[j] * s.wre[j];
        }
        return stats;
    }

    const double* nu = x;
    const double* theta = x + n;
    const double* bre = x + 2 * n;
    const double* bim = x + 3 * n;
    const double* cre = x + 4 * n;
    const double* cim = x + 5 * n;
    for (std::size_t j = 0; j < n; ++j) {
        s.expnu[j] = exp_nu(nu[j]);
        const double rho = magnitude_from_nu(nu[j]);
        s.are[j] = rho * std::cos(theta[j]);
        s.aim[j] = rho * std::sin(theta[j]);
        s.gre[j] = bre[j] * cre[j] - bim[j] * cim[j];
        s.gim[j] = bre[j] * cim[j] + bim[j] * cre[j];
    }

    std::fill(s.powre.begin(), s.powre.end(), 1.0);
    std::fill(s.powim.begin(), s.powim.end(), 0.0);
    if (grad) {
        std::fill(s.wre.begin(), s.wre.end(), 0.0);
        std::fill(s.wim.begin(), s.wim.end(), 0.0);
        std::fill(s.w2re.begin(), s.w2re.end(), 0.0);
        std::fill(s.w2im.begin(), s.w2im.end(), 0.0);
    }
    for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            s.prodre[j] = s.powre[j] * s.gre[j] - s.powim[j] * s.gim[j];
        }
        double a0 = 0.0, a1 = 0.0;
        {
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                a0 += s.prodre[j];
                a1 += s.prodre[j + 1];
            }
            if (j < n) a0 += s.prodre[j];
        }
        const double r = (a0 + a1) - target[k];
        stats.loss += r * r;
        stats.abs_err_l1 += std::abs(r);
        if (grad) {
            const double w = static_cast<double>(k) * r;
            for (std::size_t j = 0; j < n; ++j) {
                const double pre = s.powre[j];
                const double pim = s.powim[j];
                s.wre[j] += r * pre;
                s.wim[j] += r * pim;
                s.w2re[j] += w * pre;
                s.w2im[j] += w * pim;
                s.powre[j] = pre * s.are[j] - pim * s.aim[j];
                s.powim[j] = pre * s.aim[j] + pim * s.are[j];
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                const double npre = s.powre[j] * s.are[j] - s.powim[j] * s.aim[j];
                s.powim[j] = s.powre[j] * s.aim[j] + s.powim[j] * s.are[j];
                s.powre[j] = npre;
            }
        }
    }
    if (!grad) return stats;

    grad->assign(6 * n, 0.0);
    double* g = grad->data();
    for (std::size_t j = 0; j < n; ++j) {
        const double wre = s.wre[j], wim = s.wim[j];
        const double w2re = s.w2re[j], w2im = s.w2im[j];
        g[j] = -2.0 * s.expnu[j] * (w2re * s.gre[j] - w2im * s.gim[j]);
        g[n + j] = -2.0 * (w2re * s.gim[j] + w2im * s.gre[j]);
        g[2 * n + j] = 2.0 * (wre * cre[j] - wim * cim[j]);
        g[3 * n + j] = -2.0 * (wre * cim[j] + wim * cre[j]);
        g[4 * n + j] = 2.0 * (wre * bre[j] - wim * bim[j]);
        g[5 * n + j] = -2.0 * (wre * bim[j] + wim * bre[j]);
    }
    return stats;
}

double scheduled_lr(const TrainConfig& config, std::size_t step) {
    if (config.schedule == ScheduleKind::Constant) return config.learning_rate;
    const double frac = static_cast<double>(step) / static_cast<double>(config.steps);
    return config.learning_rate * 0.5 * (1.0 + std::cos(std::numbers::pi * frac));
}

class FirstOrderOptimizer {
public:
    FirstOrderOptimizer(OptimizerKind kind, std::size_t n, double weight_decay)
        : kind_(kind), weight_decay_(weight_decay), m_(n, 0.0), v_(n, 0.0) {}

    void step(std::vector<double>& x, const std::vector<double>& g, double lr) {
        ++count_;
        beta1_pow_ *= kAdamBeta1;
        beta2_pow_ *= kAdamBeta2;
        const double bc1 = 1.0 - beta1_pow_;
        const double bc2 = 1.0 - beta2_pow_;

        double rect = 1.0;
        bool adaptive = true;
        if (kind_ == OptimizerKind::RAdam) {
            const double rho_inf = 2.0 / (1.0 - kAdamBeta2) - 1.0;
            const double rho = rho_inf - 2.0 * static_cast<double>(count_) *
                                             beta2_pow_ / bc2;
            if (rho > 4.0) {
                rect = std::sqrt(((rho - 4.0) * (rho - 2.0) * rho_inf) /
                                 ((rho_inf - 4.0) * (rho_inf - 2.0) * rho));
            } else {
                adaptive = false;  // variance not yet tractable: momentum-only step
            }
        }

        for (std::size_t i = 0; i < x.size(); ++i) {
            m_[i] = kAdamBeta1 * m_[i] + (1.0 - kAdamBeta1) * g[i];
            v_[i] = kAdamBeta2 * v_[i] + (1.0 - kAdamBeta2) * g[i] * g[i];
            const double mhat = m_[i] / bc1;
            double update;
            if (adaptive) {
                update = rect * mhat / (std::sqrt(v_[i] / bc2) + kAdamEps);
            } else {
                update = mhat;
            }
            if (kind_ == OptimizerKind::AdamW) update += weight_decay_ * x[i];
            x[i] -= lr * update;
        }
    }

private:
    OptimizerKind kind_;
    double weight_decay_;
    std::vector<double> m_, v_;
    std::size_t count_ = 0;
    double beta1_pow_ = 1.0;
    double beta2_pow_ = 1.0;
};

TraceRow make_row(std::size_t step, const EvalStats& stats, const StableParams& params,
                  double target_l1) {
    const std::size_t n = params.dim;
    const double* x = params.x.data();
    double max_a = 0.0, max_b = 0.0, max_c = 0.0;
    if (params.mode == Mode::Real) {
        for (std::size_t j = 0; j < n; ++j) {
            max_a = std::max(max_a, magnitude_from_nu(x[j]));
            max_b = std::max(max_b, std::abs(x[n + j]));
            max_c = std::max(max_c, std::abs(x[2 * n + j]));
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            max_a = std::max(max_a, magnitude_from_nu(x[j]));
            max_b = std::max(max_b, std::hypot(x[2 * n + j], x[3 * n + j]));
            max_c = std::max(max_c, std::hypot(x[4 * n + j], x[5 * n + j]));
        }
    }
    // Degenerate all-zero targets fall back to the absolute error.
    const double norm_err =
        target_l1 > 0.0 ? stats.abs_err_l1 / target_l1 : stats.abs_err_l1;
    return TraceRow{step, stats.loss, norm_err, max_b, max_c, max_a};
}

}  // namespace

DiagonalSsm StableParams::realize() const {
    const std::size_t n = dim;
    if (mode == Mode::Real) {
        std::vector<double> a(n), b(n), c(n);
        for (std::size_t j = 0; j < n; ++j) {
            a[j] = sign[j] * magnitude_from_nu(x[j]);
            b[j] = x[n + j];
            c[j] = x[2 * n + j];
        }
        return DiagonalSsm::real(std::move(a), std::move(b), std::move(c));
    }
    std::vector<cdouble> a(n), b(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double rho = magnitude_from_nu(x[j]);
        const double theta = x[n + j];
        a[j] = cdouble{rho * std::cos(theta), rho * std::sin(theta)};
        b[j] = cdouble{x[2 * n + j], x[3 * n + j]};
        c[j] = cdouble{x[4 * n + j], x[5 * n + j]};
    }
    return DiagonalSsm::complex(std::move(a), std::move(b), std::move(c));
}

StableParams StableParams::from_ssm(const DiagonalSsm& ssm) {
    const std::size_t n = ssm.dim();
    StableParams params;
    params.mode = ssm.mode;
    params.dim = n;
    if (ssm.mode == Mode::Real) {
        params.x.assign(3 * n, 0.0);
        params.sign.assign(n, 1.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = ssm.a[j].real();
            const double rho = std::abs(a);
            if (!(rho > 0.0) || rho >= 1.0) {
                throw std::invalid_argument(
                    "StableParams::from_ssm: requires 0 < |a| < 1");
            }
            params.sign[j] = (a < 0.0) ? -1.0 : 1.0;
            params.x[j] = nu_from_magnitude(rho);
            params.x[n + j] = ssm.b[j].real();
            params.x[2 * n + j] = ssm.c[j].real();
        }
        return params;
    }
    params.x.assign(6 * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double rho = std::abs(ssm.a[j]);
        if (!(rho > 0.0) || rho >= 1.0) {
            throw std::invalid_argument("StableParams::from_ssm: requires 0 < |a| < 1");
        }
        params.x[j] = nu_from_magnitude(rho);
        params.x[n + j] = std::atan2(ssm.a[j].imag(), ssm.a[j].real());
        params.x[2 * n + j] = ssm.b[j].real();
        params.x[3 * n + j] = ssm.b[j].imag();
        params.x[4 * n + j] = ssm.c[j].real();
        params.x[5 * n + j] = ssm.c[j].imag();
    }
    return params;
}

StableParams StableParams::init(Mode mode, std::size_t dim, InitKind kind,
                                SeededRng& rng) {
    if (dim == 0) throw std::invalid_argument("StableParams::init: dim must be >= 1");
    StableParams params;
    params.mode = mode;
    params.dim = dim;
    const double coupling = 1.0 / std::sqrt(static_cast<double>(dim));
    constexpr double kMaxMag = 1.0 - 1e-6;
    constexpr double kMinMag = 1e-6;

    if (mode == Mode::Real) {
        params.x.assign(3 * dim, 0.0);
        params.sign.assign(dim, 1.0);
        for (std::size_t j = 0; j < dim; ++j) {
            if (kind == InitKind::UniformRing) {
                const double rho = std::min(rng.uniform(0.99, 1.0), kMaxMag);
                params.x[j] = nu_from_magnitude(rho);
                params.sign[j] = (rng.uniform01() < 0.5) ? 1.0 : -1.0;
            } else {
                const double v = rng.uniform_sym(1.0);
                params.sign[j] = (v < 0.0) ? -1.0 : 1.0;
                const double rho = std::clamp(std::abs(v), kMinMag, kMaxMag);
                params.x[j] = nu_from_magnitude(rho);
            }
        }
        for (std::size_t j = 0; j < dim; ++j) params.x[dim + j] = rng.uniform_sym(coupling);
        for (std::size_t j = 0; j < dim; ++j) params.x[2 * dim + j] = rng.uniform_sym(coupling);
        return params;
    }

    params.x.assign(6 * dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        if (kind == InitKind::UniformRing) {
            const double rho = std::min(rng.uniform(0.99, 1.0), kMaxMag);
            params.x[j] = nu_from_magnitude(rho);
            params.x[dim + j] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        } else {
            const double v = rng.uniform_sym(1.0);
            const double rho = std::clamp(std::abs(v), kMinMag, kMaxMag);
            params.x[j] = nu_from_magnitude(rho);
            params.x[dim + j] = (v < 0.0) ? std::numbers::pi : 0.0;
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        params.x[2 * dim + j] = rng.uniform_sym(coupling);
        params.x[3 * dim + j] = rng.uniform_sym(coupling);
    }
    for (std::size_t j = 0; j < dim; ++j) {
        params.x[4 * dim + j] = rng.uniform_sym(coupling);
        params.x[5 * dim + j] = rng.uniform_sym(coupling);
    }
    return params;
}

double loss(const DiagonalSsm& ssm, const ScalarSeries& target) {
    if (target.empty()) throw std::invalid_argument("loss: target must be non-empty");
    const ScalarSeries response = impulse_response(ssm, target.length());
    double sum = 0.0;
    for (std::size_t k = 0; k < target.length(); ++k) {
        const double r = response[k] - target[k];
        sum += r * r;
    }
    return sum;
}

std::vector<double> gradient(const StableParams& params, const ScalarSeries& target) {
    if (target.empty()) {
        throw std::invalid_argument("gradient: target must be non-empty");
    }
    const std::size_t expected =
        (params.mode == Mode::Real ? 3 : 6) * params.dim;
    if (params.dim == 0 || params.x.size() != expected ||
        (params.mode == Mode::Real && params.sign.size() != params.dim)) {
        throw std::invalid_argument("gradient: malformed parameter vector");
    }
    std::vector<double> grad;
    EvalScratch scratch;
    eval_loss_grad(params, target, &grad, scratch);
    return grad;
}

TrainResult train(const TrainConfig& config) {
    if (config.dim == 0) throw std::invalid_argument("train: dim must be >= 1");
    if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
        throw std::invalid_argument("train: learning_rate must be positive");
    }
    if (!(config.weight_decay >= 0.0)) {
        throw std::invalid_argument("train: weight_decay must be >= 0");
    }
    if (config.weight_decay > 0.0 && config.optimizer != OptimizerKind::AdamW) {
        throw std::invalid_argument("train: weight_decay requires the adamw optimizer");
    }
    if (config.record_every == 0) {
        throw std::invalid_argument("train: record_every must be >= 1");
    }

    const ScalarSeries target = generate(config.target);
    const double target_l1 = l1_norm(target);

    SeededRng rng(config.seed);
    StableParams params = StableParams::init(config.mode, config.dim, config.init, rng);
    FirstOrderOptimizer optimizer(config.optimizer, params.param_count(),
                                  config.weight_decay);

    TrainTrace trace;
    trace.optimizer = to_string(config.optimizer);
    trace.raw_parameters = false;

    EvalScratch scratch;
    std::vector<double> grad;
    for (std::size_t step = 0; step < config.steps; ++step) {
        const EvalStats stats = eval_loss_grad(params, target, &grad, scratch);
        if (!std::isfinite(stats.loss)) {
            throw NumericError("train: non-finite loss at step " + std::to_string(step));
        }
        if (step % config.record_every == 0) {
            trace.rows.push_back(make_row(step, stats, params, target_l1));
        }
        optimizer.step(params.x, grad, scheduled_lr(config, step));
    }

    const EvalStats final_stats = eval_loss_grad(params, target, nullptr, scratch);
    if (!std::isfinite(final_stats.loss)) {
        throw NumericError("train: non-finite loss at final evaluation");
    }
    trace.rows.push_back(make_row(config.steps, final_stats, params, target_l1));

    return TrainResult{params.realize(), params, std::move(trace)};
}

RawGdResult train_raw_gd(const RawGdConfig& config) {
    if (config.dim == 0) throw std::invalid_argument("train_raw_gd: dim must be >= 1");
    if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
        throw std::invalid_argument("train_raw_gd: learning_rate must be positive");
    }
    if (config.record_every == 0) {
        throw std::invalid_argument("train_raw_gd: record_every must be >= 1");
    }

    const ScalarSeries target = generate(config.target);
    const double target_l1 = l1_norm(target);
    const std::size_t n = config.dim;
    const std::size_t t = target.length();

    SeededRng rng(config.seed);
    std::vector<double> a(n), b(n), c(n);
    const double coupling = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = std::clamp(rng.uniform_sym(1.0), -(1.0 - 1e-6), 1.0 - 1e-6);
    }
    for (std::size_t j = 0; j < n; ++j) b[j] = rng.uniform_sym(coupling);
    for (std::size_t j = 0; j < n; ++j) c[j] = rng.uniform_sym(coupling);

    TrainTrace trace;
    trace.optimizer = "gd";
    trace.raw_parameters = true;

    std::vector<double> residual(t), pow(n), sum_r(n), sum_kr(n);
    auto evaluate = [&](EvalStats& stats, bool with_sums) {
        stats = EvalStats{};
        std::fill(pow.begin(), pow.end(), 1.0);
        if (with_sums) {
            std::fill(sum_r.begin(), sum_r.end(), 0.0);
            std::fill(sum_kr.begin(), sum_kr.end(), 0.0);
        }
        for (std::size_t k = 0; k < t; ++k) {
            double y = 0.0;
            for (std::size_t j = 0; j < n; ++j) y += pow[j] * b[j] * c[j];
            residual[k] = y - target[k];
            stats.loss += residual[k] * residual[k];
            stats.abs_err_l1 += std::abs(residual[k]);
            for (std::size_t j = 0; j < n; ++j) pow[j] *= a[j];
        }
        if (!with_sums) return;
        std::fill(pow.begin(), pow.end(), 1.0);
        std::vector<double> prev(n, 0.0);
        for (std::size_t k = 0; k < t; ++k) {
            const double r = residual[k];
            for (std::size_t j = 0; j < n; ++j) {
                sum_r[j] += r * pow[j];
                // d a^(k)/d a = k a^(k-1): accumulate against the previous power
                if (k > 0) sum_kr[j] += static_cast<double>(k) * r * prev[j];
                prev[j] = pow[j];
                pow[j] *= a[j];
            }
        }
    };

    auto record = [&](std::size_t step, const EvalStats& stats) {
        double max_a = 0.0, max_b = 0.0, max_c = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            max_a = std::max(max_a, std::abs(a[j]));
            max_b = std::max(max_b, std::abs(b[j]));
            max_c = std::max(max_c, std::abs(c[j]));
        }
        const double norm_err =
            target_l1 > 0.0 ? stats.abs_err_l1 / target_l1 : stats.abs_err_l1;
        trace.rows.push_back(
            TraceRow{step, stats.loss, norm_err, max_b, max_c, max_a});
    };

    EvalStats stats;
    for (std::size_t step = 0; step < config.steps; ++step) {
        evaluate(stats, true);
        if (!std::isfinite(stats.loss)) {
            throw NumericError("train_raw_gd: non-finite loss at step " +
                               std::to_string(step));
        }
        if (step % config.record_every == 0) record(step, stats);
        for (std::size_t j = 0; j < n; ++j) {
            const double ga = 2.0 * b[j] * c[j] * sum_kr[j];
            const double gb = 2.0 * c[j] * sum_r[j];
            const double gc = 2.0 * b[j] * sum_r[j];
            a[j] -= config.learning_rate * ga;
            b[j] -= config.learning_rate * gb;
            c[j] -= config.learning_rate * gc;
        }
    }
    evaluate(stats, false);
    if (!std::isfinite(stats.loss)) {
        throw NumericError("train_raw_gd: non-finite loss at final evaluation");
    }
    record(config.steps, stats);

    return RawGdResult{DiagonalSsm::real(std::move(a), std::move(b), std::move(c)),
                       std::move(trace)};
}

GrowthReport growth_check(const TrainTrace& trace, double c1, std::size_t t) {
    if (trace.rows.empty()) {
        throw std::invalid_argument("growth_check: trace must have at least one row");
    }
    if (!(c1 > 0.0) || !std::isfinite(c1)) {
        throw std::invalid_argument("growth_check: c1 must be positive");
    }
    if (t == 0) throw std::invalid_argument("growth_check: t must be >= 1");

    const double loss0 = trace.rows.front().loss;
    double c2 = 1.0;
    if (loss0 > 0.0) {
        for (const TraceRow& row : trace.rows) c2 = std::max(c2, row.loss / loss0);
    }
    const double intercept =
        std::max(trace.rows.front().max_abs_b, trace.rows.front().max_abs_c);
    const double slope = std::sqrt(4.0 * c1 * c2 * static_cast<double>(t) * loss0);

    GrowthReport report;
    report.c2 = c2;
    report.all_within = true;
    report.hypotheses_met = trace.raw_parameters && trace.optimizer == "gd";
    for (const TraceRow& row : trace.rows) {
        const double observed = std::max(row.max_abs_b, row.max_abs_c);
        const double ceiling = intercept + static_cast<double>(row.step) * slope;
        const bool within = observed <= ceiling;
        report.all_within = report.all_within && within;
        report.rows.push_back(GrowthRow{row.step, observed, ceiling, within});
    }
    return report;
}

std::string to_string(OptimizerKind kind) {
    switch (kind) {
        case OptimizerKind::Adam: return "adam";
        case OptimizerKind::AdamW: return "adamw";
        case OptimizerKind::RAdam: return "radam";
    }
    return "unknown";
}

OptimizerKind optimizer_from_string(const std::string& name) {
    if (name == "adam") return OptimizerKind::Adam;
    if (name == "adamw") return OptimizerKind::AdamW;
    if (name == "radam") return OptimizerKind::RAdam;
    throw std::invalid_argument("unknown optimizer: " + name);
}

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::Constant ? "constant" : "cosine";
}

ScheduleKind schedule_from_string(const std::string& name) {
    if (name == "constant") return ScheduleKind::Constant;
    if (name == "cosine") return ScheduleKind::Cosine;
    throw std::invalid_argument("unknown schedule: " + name);
}

std::string to_string(InitKind kind) {
    return kind == InitKind::UniformFull ? "uniform_full" : "uniform_ring";
}

InitKind init_from_string(const std::string& name) {
    if (name == "uniform_full") return InitKind::UniformFull;
    if (name == "uniform_ring") return InitKind::UniformRing;
    throw std::invalid_argument("unknown init: " + name);
}

}  // namespace ssmlab
