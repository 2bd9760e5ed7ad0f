#pragma once

#include <memory>
#include <optional>

#include "core/quadcore.hpp"

namespace qtele {

// Measure-and-reconstruct teleporter: the input is split on an eta
// beamsplitter against vacuum, the amplitude quadrature is detected on the
// transmitted arm and the phase quadrature on the reflected arm, and both
// photocurrents drive modulators on an independent receiver beam.
struct ClassicalTeleporterParams {
    double eta = 0.5;
    double lambda_plus = 1.0;
    double lambda_minus = -1.0;
    double receiver_vplus = 1.0;   // receiver noise densities, product >= 1
    double receiver_vminus = 1.0;
    double input_noise_plus = 1.0;
    double input_noise_minus = 1.0;
    double input_signal_plus = 4.0;
    double input_signal_minus = 4.0;
};

// Entanglement-assisted teleporter: two amplitude-squeezed beams (squeezed
// variance v_sqz) are mixed on a 50:50 splitter with a pi/2 offset into the
// EPR pair (c, d); c travels to the sender (transmission eta_c), is mixed
// 50:50 with the input and detected (efficiency eta_e), d travels to the
// receiver (transmission eta_d) and is displaced by the scaled photocurrents.
//
// Conventions fixed by the builder: c = (a + i b)/sqrt(2), d = (a - i b)/sqrt(2);
// amplitude arm (c + in)/sqrt(2), phase arm (c - in)/sqrt(2); modulator gains
// sqrt(2) * lambda so the input-signal coefficient in the output is
// lambda * sqrt(eta_e). Detection efficiency enters the photocurrent as
// I = sqrt(eta_e) * J_arm + sqrt((1 - eta_e)/2) * J_vacuum.
struct QuantumTeleporterParams {
    double v_sqz = 0.5;  // squeezed quadrature variance, in (0, 1]
    double lambda_plus = 1.0;
    double lambda_minus = -1.0;
    double eta_c = 1.0;
    double eta_d = 1.0;
    double eta_e = 1.0;
    double input_noise_plus = 1.0;
    double input_noise_minus = 1.0;
    double input_signal_plus = 4.0;
    double input_signal_minus = 4.0;
    // When set, beams a and b are taken directly as sources with these noise
    // pairs instead of pumping OPAs at v_sqz; lets the ancillae be
    // non-minimum-uncertainty.
    std::optional<std::pair<double, double>> ancilla_a_noise;
    std::optional<std::pair<double, double>> ancilla_b_noise;
};

enum class CircuitKind { classical, quantum };

struct TeleporterInstance {
    CircuitKind kind = CircuitKind::classical;
    std::shared_ptr<SourceSpace> space;
    FieldState input;
    FieldState output;
    FieldState arm_plus;    // field reaching the amplitude detector
    FieldState arm_minus;   // field reaching the phase detector
    FieldState epr_c;       // quantum only
    FieldState epr_d;       // quantum only
    PhotocurrentForm current_plus;
    PhotocurrentForm current_minus;
};

struct ClassicalClosedForm {
    double vout_plus = 0.0;
    double vout_minus = 0.0;
    double t_plus = 0.0;
    double t_minus = 0.0;
    double vcv_plus = 0.0;
    double vcv_minus = 0.0;
};

TeleporterInstance build_classical(const ClassicalTeleporterParams& params);
TeleporterInstance build_quantum(const QuantumTeleporterParams& params);

// Arithmetic-only references, independent of the field engine.
ClassicalClosedForm closed_form_classical(const ClassicalTeleporterParams& params);

// Output noise variances (V_out+, V_out-) of the entangled scheme:
//   V_out+ = 1/2 |sqrt(eta_d) + l+ k|^2 Va+ + 1/2 |sqrt(eta_d) - l+ k|^2 Vb-
//            + l+^2 eta_e Vin+ + (1 - eta_d) + l+^2 (1 - eta_c eta_e)
// with k = sqrt(eta_c eta_e), and the mirrored expression for V_out-.
std::pair<double, double> closed_form_quantum(double va_plus, double va_minus, double vb_plus,
                                              double vb_minus, double eta_c, double eta_d,
                                              double eta_e, double lambda_plus,
                                              double lambda_minus, double vin_plus,
                                              double vin_minus);

// Engine noise variance of the instance output at an arbitrary quadrature
// angle theta.
double quadrature_variance_theta(const TeleporterInstance& instance, double theta);

// Squeezed variance of an OPA at gain h, (sqrt(h) - sqrt(h-1))^2.
double opa_squeezed_variance(double h);
// Inverse map; v in (0, 1].
double opa_gain_for_variance(double v_sqz);

}  // namespace qtele
