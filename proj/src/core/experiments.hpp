#pragma once

#include <variant>
#include <vector>

#include "core/circuits.hpp"
#include "core/metrics.hpp"

namespace qtele {

enum class SweptParameter { gain, v_sqz, eta_c, eta_d, eta_e };

// Uniform grid over one parameter. A "gain" sweep scales the configured
// (lambda_plus, lambda_minus) pair by the grid value, treating it as a ray
// direction; other parameters are set directly and require a quantum
// circuit.
struct SweepSpec {
    std::variant<ClassicalTeleporterParams, QuantumTeleporterParams> base;
    SweptParameter parameter = SweptParameter::gain;
    double lo = 0.0;
    double hi = 3.0;
    std::size_t points = 61;
};

struct SweepRow {
    double swept_value = 0.0;
    TVPoint point;
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Evaluate one circuit configuration.
TVPoint eval_classical(const ClassicalTeleporterParams& params);
TVPoint eval_quantum(const QuantumTeleporterParams& params);

enum class EquivalenceModel { amplifier, attenuator, unity_channel };

// Max over both quadratures of |V_out - model(V_in)| for the lossless
// entangled scheme driven at (lambda, -lambda):
//   amplifier     V_out = l^2 V_in + (l^2 - 1)
//   attenuator    V_out = l^2 V_in + (1 - l^2)
//   unity_channel V_out = V_in + 2 v_sqz
double equivalence_residual(const QuantumTeleporterParams& params, double lambda,
                            EquivalenceModel model);

struct OperatingPoints {
    // Gain formulas of the lossless scheme; with Va- = 1/v_sqz,
    // lambda_g = (Va- + 1)/(Va- - 1) and lambda_eta = 1/lambda_g.
    double lambda_g_formula = 0.0;
    double lambda_eta_formula = 0.0;
    bool formulas_bounded = true;  // false at v_sqz == 1 (divergent gain)
    // Numeric extremizers of T_q and V_q over the search interval.
    double lambda_tq_max = 0.0;
    double lambda_vq_min = 0.0;
    double tq_max = 0.0;
    double vq_min = 0.0;
    bool tq_unimodal = false;
    bool vq_unimodal = false;
    bool tq_interior = false;
    bool vq_interior = false;
    // Model residuals at the three named gains (max over quadratures).
    double amplifier_residual = 0.0;
    double attenuator_residual = 0.0;
    double unity_residual = 0.0;
};

// Requires a lossless configuration; the search interval is [lo, hi].
OperatingPoints find_operating_points(const QuantumTeleporterParams& params, double lo, double hi);

struct ThresholdCell {
    double v_sqz = 0.0;
    double eta_e = 0.0;
    bool quantum_quadrant = false;  // some lambda beats both limits
    double best_lambda = 0.0;       // witness gain when the quadrant is reached
};

// Scans the ideal-transmission scheme (eta_c = eta_d = 1) over squeezing and
// detection efficiency; the quadrant flags use the strict classical-limit
// comparisons on a coherent input.
std::vector<ThresholdCell> loss_threshold_scan(const std::vector<double>& v_sqz_grid,
                                               const std::vector<double>& eta_e_grid,
                                               const std::vector<double>& lambda_grid);

// 21-point log-spaced squeezing grid on [0.01, 1], the default scan range.
std::vector<double> default_squeezing_grid();
std::vector<double> default_lambda_grid();

}  // namespace qtele
