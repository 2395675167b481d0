#include "sos/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sos/errors.hpp"

namespace sos {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw domain_error(std::string(what) + " must be finite");
}

void require_theta(double theta) {
    if (!std::isfinite(theta) || theta <= 0.0)
        throw domain_error("theta must be a positive finite real");
}

// log(e^a + e^b), overflow-safe.
double log_add(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (!std::isfinite(hi)) return hi;
    return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(const double* v, int n) {
    double hi = v[0];
    for (int i = 1; i < n; ++i) hi = std::max(hi, v[i]);
    if (!std::isfinite(hi)) return hi;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::exp(v[i] - hi);
    return hi + std::log(s);
}

// log of numerator e^x + 2 theta and denominator theta e^x + (theta^2 + 1).
struct KernelLogs {
    double num;
    double den;
};

KernelLogs kernel_logs(double x, double theta) {
    const double lt = std::log(theta);
    return {log_add(x, std::numbers::ln2 + lt),
            log_add(x + lt, std::log1p(theta * theta))};
}

} // namespace

ModelParams::ModelParams(double theta_, int k_, int m_) : theta(theta_), k(k_), m(m_) {
    require_theta(theta);
    if (k < 1) throw domain_error("tree order k must be >= 1");
    if (m < 1) throw domain_error("field dimension m must be >= 1");
}

ModelParams ModelParams::from_coupling(double J, double beta, int k, int m) {
    require_finite(J, "coupling J");
    require_finite(beta, "inverse temperature beta");
    return ModelParams(std::exp(J * beta), k, m);
}

bool BranchPattern::consistent_with(const ModelParams& params) const {
    return a >= 0 && b >= 0 && c >= 0 && d >= 0 && a + b == params.k && c + d == params.k;
}

void BranchPattern::require_consistent(const ModelParams& params) const {
    if (!consistent_with(params))
        throw contract_error("branch pattern (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + "," + std::to_string(d) +
                             ") is not a nonnegative split of k = " + std::to_string(params.k));
}

double kernel_f(double x, double theta) {
    require_finite(x, "x");
    require_theta(theta);
    if (theta == 1.0) return 0.0;
    const auto [num, den] = kernel_logs(x, theta);
    return num - den;
}

double kernel_f_derivative(double x, double theta) {
    require_finite(x, "x");
    require_theta(theta);
    if (theta == 1.0) return 0.0;
    const auto [num, den] = kernel_logs(x, theta);
    // (theta - 1)(theta + 1) keeps precision near theta = 1.
    return -(theta - 1.0) * (theta + 1.0) * std::exp(x - num - den);
}

double kernel_f_second(double x, double theta) {
    require_finite(x, "x");
    require_theta(theta);
    if (theta == 1.0) return 0.0;
    const double cut = 2.0 * theta * theta + 2.0;  // e^{2x} at the inflection
    const double lcut = std::log(cut);
    double diff_log;
    double diff_sign;
    if (2.0 * x > lcut) {
        diff_log = 2.0 * x + std::log1p(-std::exp(lcut - 2.0 * x));
        diff_sign = 1.0;
    } else if (2.0 * x < lcut) {
        diff_log = lcut + std::log1p(-std::exp(2.0 * x - lcut));
        diff_sign = -1.0;
    } else {
        return 0.0;
    }
    const auto [num, den] = kernel_logs(x, theta);
    const double mag = std::exp(std::log(theta) + std::log(std::abs((theta - 1.0) * (theta + 1.0))) +
                                diff_log + x - 2.0 * num - 2.0 * den);
    const double sign = (theta > 1.0 ? 1.0 : -1.0) * diff_sign;
    return sign * mag;
}

double inflection_point(double theta) {
    require_theta(theta);
    return 0.5 * std::log(2.0 * theta * theta + 2.0);
}

std::pair<double, double> kernel_f_bounds(double theta) {
    require_theta(theta);
    const double at_plus_inf = -std::log(theta);
    const double at_minus_inf = std::numbers::ln2 + std::log(theta) - std::log1p(theta * theta);
    return std::minmax(at_minus_inf, at_plus_inf);
}

std::vector<double> map_F(const std::vector<double>& h, const ModelParams& params) {
    if (static_cast<int>(h.size()) != params.m)
        throw contract_error("map_F expects a field vector of length m = " + std::to_string(params.m));
    for (double v : h) require_finite(v, "field component");

    const int m = params.m;
    const double lt = std::log(params.theta);
    std::vector<double> terms(static_cast<std::size_t>(m) + 1);
    std::vector<double> out(static_cast<std::size_t>(m));

    // Denominator is shared across components.
    for (int j = 0; j < m; ++j) terms[static_cast<std::size_t>(j)] = (m - j) * lt + h[static_cast<std::size_t>(j)];
    terms[static_cast<std::size_t>(m)] = 0.0;
    const double den = log_sum_exp(terms.data(), m + 1);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j)
            terms[static_cast<std::size_t>(j)] = std::abs(i - j) * lt + h[static_cast<std::size_t>(j)];
        terms[static_cast<std::size_t>(m)] = (m - i) * lt;
        out[static_cast<std::size_t>(i)] = log_sum_exp(terms.data(), m + 1) - den;
    }
    return out;
}

FieldVector operator_W(const FieldVector& v, const BranchPattern& pattern,
                       const ModelParams& params) {
    if (params.m != 2) throw contract_error("operator_W is defined for m = 2 only");
    pattern.require_consistent(params);
    const auto Fh = map_F({v.h1, v.h2}, params);
    const auto Fl = map_F({v.l1, v.l2}, params);
    return {pattern.a * Fh[0] + pattern.b * Fl[0],
            pattern.a * Fh[1] + pattern.b * Fl[1],
            pattern.c * Fh[0] + pattern.d * Fl[0],
            pattern.c * Fh[1] + pattern.d * Fl[1]};
}

ReducedField reduced_rhs(const ReducedField& r, const BranchPattern& pattern,
                         const ModelParams& params) {
    if (params.m != 2) throw contract_error("reduced_rhs is defined for m = 2 only");
    pattern.require_consistent(params);
    const double fh = kernel_f(r.h2, params.theta);
    const double fl = kernel_f(r.l2, params.theta);
    return {pattern.a * fh + pattern.b * fl, pattern.c * fh + pattern.d * fl};
}

} // namespace sos
