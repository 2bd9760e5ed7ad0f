#include "core/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtele {

namespace {

constexpr double kLimitTol = 1e-12;
constexpr double kUnityGainTol = 1e-9;
constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

double transfer_coefficient(const FieldState& input, const FieldState& output, double theta) {
    const double s_in = variance(input, theta, DensityKind::signal);
    if (s_in <= 0.0) {
        throw std::domain_error("transfer coefficient undefined: input carries no signal");
    }
    const double n_in = variance(input, theta, DensityKind::noise);
    const double n_out = variance(output, theta, DensityKind::noise);
    if (n_in <= 0.0 || n_out <= 0.0) {
        throw std::domain_error("transfer coefficient undefined: zero noise floor");
    }
    const double s_out = variance(output, theta, DensityKind::signal);
    return (s_out / n_out) / (s_in / n_in);
}

double conditional_variance(const FieldState& input, const FieldState& output, double theta) {
    const double v_in = variance(input, theta, DensityKind::noise);
    if (v_in <= 0.0) throw std::domain_error("conditional variance undefined: zero input noise");
    const double v_out = variance(output, theta, DensityKind::noise);
    const double cov =
        covariance(homodyne(input, theta), homodyne(output, theta), DensityKind::noise);
    return v_out - cov * cov / v_in;
}

double mean_gain(const FieldState& input, const FieldState& output, double theta) {
    const double v_in = variance(input, theta, DensityKind::noise);
    if (v_in <= 0.0) throw std::domain_error("mean gain undefined: zero input noise");
    return covariance(homodyne(input, theta), homodyne(output, theta), DensityKind::noise) / v_in;
}

TVPoint tv_point(const FieldState& input, const FieldState& output, double gain_plus,
                 double gain_minus) {
    TVPoint p;
    p.gain_plus = gain_plus;
    p.gain_minus = gain_minus;
    p.t_plus = transfer_coefficient(input, output, 0.0);
    p.t_minus = transfer_coefficient(input, output, kHalfPi);
    p.t_q = p.t_plus + p.t_minus;
    p.vcv_plus = conditional_variance(input, output, 0.0);
    p.vcv_minus = conditional_variance(input, output, kHalfPi);
    p.v_q = 0.5 * (p.vcv_plus + p.vcv_minus);
    p.vout_plus = variance(output, 0.0, DensityKind::noise);
    p.vout_minus = variance(output, kHalfPi, DensityKind::noise);

    const double y_plus = mean_gain(input, output, 0.0);
    const double y_minus = mean_gain(input, output, kHalfPi);
    if (std::fabs(y_plus - 1.0) <= kUnityGainTol && std::fabs(y_minus - 1.0) <= kUnityGainTol) {
        p.fidelity = coherent_fidelity(p.vout_plus, p.vout_minus, 1.0, 0.0, 0.0);
    }
    return p;
}

ClassicalLimitFlags classical_limit_flags(const TVPoint& point, bool input_min_uncertainty) {
    ClassicalLimitFlags flags;
    flags.breaks_tq = input_min_uncertainty && point.t_q > 1.0 + kLimitTol;
    flags.breaks_vq = point.v_q < 1.0 - kLimitTol;
    flags.quantum_quadrant = flags.breaks_tq && flags.breaks_vq;
    return flags;
}

double coherent_fidelity(double vout_plus, double vout_minus, double mean_gain,
                         double alpha_plus, double alpha_minus) {
    if (!(vout_plus > 0.0) || !(vout_minus > 0.0)) {
        throw std::invalid_argument("fidelity variances must be positive");
    }
    const double sp = 1.0 + vout_plus;
    const double sm = 1.0 + vout_minus;
    const double d_plus = (1.0 - mean_gain) * 2.0 * alpha_plus / std::numbers::sqrt2;
    const double d_minus = (1.0 - mean_gain) * 2.0 * alpha_minus / std::numbers::sqrt2;
    return 2.0 / std::sqrt(sp * sm) *
           std::exp(-d_plus * d_plus / sp - d_minus * d_minus / sm);
}

}  // namespace qtele
