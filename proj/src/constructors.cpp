#include "ssmlab/constructors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ssmlab {

namespace {

double residual_l1(const DiagonalSsm& ssm, const ScalarSeries& target) {
    return approximation_error(impulse_response(ssm, target.length()), target);
}

double norm2(const std::vector<cdouble>& v) {
    double sum = 0.0;
    for (const cdouble& z : v) sum += std::norm(z);
    return std::sqrt(sum);
}

// Dense Gaussian elimination with partial pivoting; solves M x = rhs in place.
std::vector<double> solve_dense(std::vector<std::vector<double>> m,
                                std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (m[pivot][col] == 0.0) {
            throw std::runtime_error("construct_real_vandermonde: singular system");
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        const double inv = 1.0 / m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = m[row][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double acc = rhs[row];
        for (std::size_t k = row + 1; k < n; ++k) acc -= m[row][k] * x[k];
        x[row] = acc / m[row][row];
    }
    return x;
}

}  // namespace

ConstructionResult construct_real_vandermonde(
    const ScalarSeries& target, const std::optional<std::vector<double>>& nodes_opt) {
    const std::size_t t = target.length();
    if (t == 0) {
        throw std::invalid_argument("construct_real_vandermonde: empty target");
    }

    std::vector<double> nodes;
    if (nodes_opt) {
        nodes = *nodes_opt;
        if (nodes.size() != t) {
            throw std::invalid_argument(
                "construct_real_vandermonde: node count must equal target length");
        }
        for (std::size_t i = 0; i < t; ++i) {
            if (!std::isfinite(nodes[i]) || std::abs(nodes[i]) >= 1.0) {
                throw std::invalid_argument(
                    "construct_real_vandermonde: nodes must lie in (-1, 1)");
            }
            for (std::size_t j = i + 1; j < t; ++j) {
                if (nodes[i] == nodes[j]) {
                    throw std::invalid_argument(
                        "construct_real_vandermonde: duplicate node " +
                        std::to_string(nodes[i]));
                }
            }
        }
    } else {
        nodes.resize(t);
        if (t == 1) {
            nodes[0] = 0.0;
        } else {
            for (std::size_t j = 0; j < t; ++j) {
                nodes[j] = -0.95 + 1.9 * static_cast<double>(j) /
                                       static_cast<double>(t - 1);
            }
        }
    }

    // Row k of the system is sum_j nodes_j^(k-1) b_j = target_k.
    std::vector<std::vector<double>> v(t, std::vector<double>(t, 0.0));
    for (std::size_t j = 0; j < t; ++j) {
        double p = 1.0;
        for (std::size_t k = 0; k < t; ++k) {
            v[k][j] = p;
            p *= nodes[j];
        }
    }
    std::vector<double> b = solve_dense(std::move(v), target.values());
    for (double x : b) {
        if (!std::isfinite(x)) {
            throw std::runtime_error(
                "construct_real_vandermonde: solve produced non-finite coefficients");
        }
    }

    ConstructionResult result{
        DiagonalSsm::real(nodes, std::move(b), std::vector<double>(t, 1.0)), 0.0, 0.0,
        0.0};
    result.b_norm2 = norm2(result.ssm.b);
    result.c_norm2 = norm2(result.ssm.c);
    result.residual_l1 = residual_l1(result.ssm, target);
    return result;
}

ConstructionResult construct_complex_dft(const ScalarSeries& target) {
    const std::size_t t = target.length();
    if (t == 0) {
        throw std::invalid_argument("construct_complex_dft: empty target");
    }

    // Modes sit on the ring of radius alpha at the t-th roots of unity; the
    // descaled target phi_k = target_k / alpha^(k-1) is then matched exactly
    // by taking b as its (unitary, negative-exponent) Fourier transform.
    const double alpha =
        (t == 1) ? 0.5 : std::pow(0.5, 1.0 / static_cast<double>(t - 1));
    const double inv_sqrt_t = 1.0 / std::sqrt(static_cast<double>(t));

    std::vector<double> descaled(t);
    double p = 1.0;
    for (std::size_t k = 0; k < t; ++k) {
        descaled[k] = target[k] / p;
        p *= alpha;
    }

    std::vector<cdouble> a(t), b(t), c(t);
    const double base = 2.0 * std::numbers::pi / static_cast<double>(t);
    for (std::size_t j = 0; j < t; ++j) {
        const double angle = base * static_cast<double>(j);
        a[j] = alpha * cdouble{std::cos(angle), std::sin(angle)};
        c[j] = cdouble{inv_sqrt_t, 0.0};
        double re = 0.0, im = 0.0;
        for (std::size_t m = 0; m < t; ++m) {
            // e^(-2 pi i j m / t) has period t in j*m; reduce before scaling
            // so large t keeps full trig accuracy.
            const double w = base * static_cast<double>((j * m) % t);
            re += descaled[m] * std::cos(w);
            im -= descaled[m] * std::sin(w);
        }
        b[j] = inv_sqrt_t * cdouble{re, im};
    }

    ConstructionResult result{DiagonalSsm::complex(std::move(a), std::move(b), std::move(c)),
                              0.0, 0.0, 0.0};
    result.b_norm2 = norm2(result.ssm.b);
    result.c_norm2 = norm2(result.ssm.c);
    result.residual_l1 = residual_l1(result.ssm, target);
    return result;
}

}  // namespace ssmlab
