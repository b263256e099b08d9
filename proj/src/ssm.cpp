#include "ssmlab/ssm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssmlab {

namespace {

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void validate_triple(const std::vector<cdouble>& a, const std::vector<cdouble>& b,
                     const std::vector<cdouble>& c, Mode mode) {
    if (a.empty()) throw std::invalid_argument("DiagonalSsm: dimension must be >= 1");
    if (a.size() != b.size() || a.size() != c.size()) {
        throw std::invalid_argument("DiagonalSsm: a, b, c must have equal length");
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!finite(a[j]) || !finite(b[j]) || !finite(c[j])) {
            throw std::invalid_argument("DiagonalSsm: non-finite parameter at index " +
                                        std::to_string(j));
        }
        if (mode == Mode::Real &&
            (a[j].imag() != 0.0 || b[j].imag() != 0.0 || c[j].imag() != 0.0)) {
            throw std::invalid_argument(
                "DiagonalSsm: Real mode requires zero imaginary parts");
        }
    }
}

std::vector<cdouble> widen(std::vector<double> v) {
    std::vector<cdouble> out;
    out.reserve(v.size());
    for (double x : v) out.emplace_back(x, 0.0);
    return out;
}

}  // namespace

DiagonalSsm DiagonalSsm::real(std::vector<double> a, std::vector<double> b,
                              std::vector<double> c) {
    DiagonalSsm ssm;
    ssm.mode = Mode::Real;
    ssm.a = widen(std::move(a));
    ssm.b = widen(std::move(b));
    ssm.c = widen(std::move(c));
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);
    return ssm;
}

DiagonalSsm DiagonalSsm::complex(std::vector<cdouble> a, std::vector<cdouble> b,
                                 std::vector<cdouble> c) {
    DiagonalSsm ssm;
    ssm.mode = Mode::Complex;
    ssm.a = std::move(a);
    ssm.b = std::move(b);
    ssm.c = std::move(c);
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);
    return ssm;
}

ScalarSeries impulse_response(const DiagonalSsm& ssm, std::size_t t) {
    if (t == 0) throw std::invalid_argument("impulse_response: horizon must be >= 1");
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);

    const std::size_t n = ssm.dim();
    std::vector<double> out(t, 0.0);
    // Running powers: entry k accumulates Re(c_j a_j^(k-1) b_j).  Manual
    // real/imag arithmetic keeps the loop tight.
    for (std::size_t j = 0; j < n; ++j) {
        const double are = ssm.a[j].real(), aim = ssm.a[j].imag();
        const cdouble g = ssm.c[j] * ssm.b[j];
        const double gre = g.real(), gim = g.imag();
        double pre = 1.0, pim = 0.0;
        for (std::size_t k = 0; k < t; ++k) {
            out[k] += pre * gre - pim * gim;
            const double npre = pre * are - pim * aim;
            pim = pre * aim + pim * are;
            pre = npre;
        }
    }
    return ScalarSeries(std::move(out));
}

ApplyResult apply(const DiagonalSsm& ssm, const ScalarSeries& input) {
    if (input.empty()) throw std::invalid_argument("apply: input must be non-empty");
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);

    const std::size_t n = ssm.dim();
    const std::size_t t = input.length();

    StateTrace trace;
    trace.mode = ssm.mode;
    trace.states.reserve(t + 1);
    trace.states.emplace_back(n, cdouble{0.0, 0.0});

    std::vector<cdouble> x(n, cdouble{0.0, 0.0});
    std::vector<double> out(t, 0.0);
    for (std::size_t k = 0; k < t; ++k) {
        const double u = input[k];
        double y = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = ssm.a[j] * x[j] + ssm.b[j] * u;
            y += (ssm.c[j] * x[j]).real();
        }
        out[k] = y;
        trace.states.push_back(x);
    }
    return ApplyResult{ScalarSeries(std::move(out)), std::move(trace)};
}

bool is_stable(const DiagonalSsm& ssm) {
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);
    for (const cdouble& a : ssm.a) {
        if (std::abs(a) >= 1.0) return false;
    }
    return true;
}

double approximation_error(const ScalarSeries& candidate, const ScalarSeries& target) {
    if (candidate.length() != target.length()) {
        throw std::invalid_argument("approximation_error: length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < candidate.length(); ++i) {
        sum += std::abs(candidate[i] - target[i]);
    }
    return sum;
}

DiagonalSsm bilinear_discretize(const std::vector<cdouble>& a_cont,
                                const std::vector<cdouble>& b_cont,
                                const std::vector<cdouble>& c_cont, double delta) {
    validate_triple(a_cont, b_cont, c_cont, Mode::Complex);
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("bilinear_discretize: delta must be positive");
    }
    bool all_real = true;
    for (std::size_t j = 0; j < a_cont.size(); ++j) {
        if (!(a_cont[j].real() < 0.0)) {
            throw std::invalid_argument(
                "bilinear_discretize: continuous poles must have Re(a) < 0");
        }
        if (a_cont[j].imag() != 0.0 || b_cont[j].imag() != 0.0 || c_cont[j].imag() != 0.0) {
            all_real = false;
        }
    }

    const std::size_t n = a_cont.size();
    std::vector<cdouble> a(n), b(n), c(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cdouble half = 0.5 * delta * a_cont[j];
        const cdouble denom = 1.0 - half;
        a[j] = (1.0 + half) / denom;
        b[j] = delta * b_cont[j] / denom;
        c[j] = c_cont[j];
    }

    DiagonalSsm ssm;
    ssm.mode = all_real ? Mode::Real : Mode::Complex;
    ssm.a = std::move(a);
    ssm.b = std::move(b);
    ssm.c = std::move(c);
    validate_triple(ssm.a, ssm.b, ssm.c, ssm.mode);
    return ssm;
}

}  // namespace ssmlab
