#pragma once

#include <optional>

#include "core/quadcore.hpp"

namespace qtele {

// Two-quadrature transfer and correlation figures for a teleportation-style
// channel. The classical benchmark region is T_q <= 1 and V_q >= 1; beating
// both simultaneously is the quantum quadrant.

struct TVPoint {
    double gain_plus = 0.0;
    double gain_minus = 0.0;
    double t_plus = 0.0;
    double t_minus = 0.0;
    double t_q = 0.0;
    double vcv_plus = 0.0;
    double vcv_minus = 0.0;
    double v_q = 0.0;
    double vout_plus = 0.0;
    double vout_minus = 0.0;
    // Populated only when the signed mean gain is unity in both quadratures.
    std::optional<double> fidelity;
};

struct ClassicalLimitFlags {
    bool breaks_tq = false;
    bool breaks_vq = false;
    bool quantum_quadrant = false;
};

// SNR_out / SNR_in at quadrature angle theta, on noise and signal densities.
// The input must carry nonzero signal power at theta.
double transfer_coefficient(const FieldState& input, const FieldState& output, double theta);

// V(out|in) = V_out - |cov(in, out)|^2 / V_in on noise densities.
double conditional_variance(const FieldState& input, const FieldState& output, double theta);

// Signed linear coefficient of the input quadrature in the output,
// cov(in, out) / V_in on noise densities.
double mean_gain(const FieldState& input, const FieldState& output, double theta);

TVPoint tv_point(const FieldState& input, const FieldState& output, double gain_plus,
                 double gain_minus);

// Strict comparisons with a 1e-12 guard band; boundary points count as
// classical. breaks_tq is only meaningful (and only raised) for minimum
// uncertainty inputs.
ClassicalLimitFlags classical_limit_flags(const TVPoint& point, bool input_min_uncertainty);

// Overlap of a coherent state (quadrature means 2*alpha+-) with the Gaussian
// channel output of variances vout+- and displacement transfer mean_gain.
// At unity mean gain this is 2 / sqrt((1+V+)(1+V-)) independent of alpha.
double coherent_fidelity(double vout_plus, double vout_minus, double mean_gain,
                         double alpha_plus, double alpha_minus);

}  // namespace qtele
