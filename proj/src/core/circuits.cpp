#include "core/circuits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qtele {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kProductSlack = 1e-12;

void require_range(double x, double lo, double hi, const char* name) {
    if (!std::isfinite(x) || x < lo || x > hi) {
        throw std::invalid_argument(std::string(name) + " must lie in [" + std::to_string(lo) +
                                    ", " + std::to_string(hi) + "]");
    }
}

void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be finite");
}

void require_noise_pair(double vp, double vm, const char* name) {
    if (!std::isfinite(vp) || !std::isfinite(vm) || vp <= 0.0 || vm <= 0.0) {
        throw std::invalid_argument(std::string(name) + " noise densities must be positive");
    }
    if (vp * vm < 1.0 - kProductSlack) {
        throw std::invalid_argument(std::string(name) + " noise product must satisfy V+ * V- >= 1");
    }
}

void require_signal_pair(double sp, double sm, const char* name) {
    if (!std::isfinite(sp) || !std::isfinite(sm) || sp < 0.0 || sm < 0.0) {
        throw std::invalid_argument(std::string(name) + " signal powers must be non-negative");
    }
}

SourceKind input_kind() { return SourceKind::signal_carrier; }

}  // namespace

double opa_squeezed_variance(double h) {
    if (!std::isfinite(h) || h < 1.0) throw std::invalid_argument("opa gain H must be >= 1");
    const double d = std::sqrt(h) - std::sqrt(h - 1.0);
    return d * d;
}

double opa_gain_for_variance(double v_sqz) {
    if (!std::isfinite(v_sqz) || v_sqz <= 0.0 || v_sqz > 1.0) {
        throw std::invalid_argument("v_sqz must lie in (0, 1]");
    }
    const double s = std::sqrt(v_sqz);
    const double cosh_g = 0.5 * (s + 1.0 / s);
    return cosh_g * cosh_g;
}

TeleporterInstance build_classical(const ClassicalTeleporterParams& p) {
    require_range(p.eta, 0.0, 1.0, "eta");
    require_finite(p.lambda_plus, "lambda_plus");
    require_finite(p.lambda_minus, "lambda_minus");
    require_noise_pair(p.receiver_vplus, p.receiver_vminus, "receiver");
    require_noise_pair(p.input_noise_plus, p.input_noise_minus, "input");
    require_signal_pair(p.input_signal_plus, p.input_signal_minus, "input");

    auto space = std::make_shared<SourceSpace>();
    const SourceId input_id = space->make_source(input_kind(), p.input_noise_plus,
                                                 p.input_noise_minus, p.input_signal_plus,
                                                 p.input_signal_minus);
    const SourceId port_id = space->make_vacuum();
    const bool coherent_receiver = p.receiver_vplus == 1.0 && p.receiver_vminus == 1.0;
    const SourceId receiver_id = space->make_source(
        coherent_receiver ? SourceKind::coherent_seed : SourceKind::squeezed_ancilla,
        p.receiver_vplus, p.receiver_vminus, 0.0, 0.0);

    TeleporterInstance inst;
    inst.kind = CircuitKind::classical;
    inst.space = space;
    inst.input = field_of(space, input_id, 1.0);

    auto [arm_plus, arm_minus] = beamsplitter(inst.input, field_of(space, port_id), p.eta);
    inst.arm_plus = arm_plus;
    inst.arm_minus = arm_minus;
    inst.current_plus = homodyne(arm_plus, 0.0);
    // The minus-arm local oscillator is phased so that the symmetric
    // unity-gain ray is lambda_plus = -lambda_minus, as in the entangled
    // scheme; variances are unaffected.
    inst.current_minus = homodyne(arm_minus, kHalfPi + std::numbers::pi);

    FieldState receiver = field_of(space, receiver_id, inst.input.carrier);
    FieldState out = modulate(receiver, inst.current_plus, p.lambda_plus, Quadrature::amplitude);
    inst.output = modulate(out, inst.current_minus, p.lambda_minus, Quadrature::phase);
    return inst;
}

TeleporterInstance build_quantum(const QuantumTeleporterParams& p) {
    require_range(p.eta_c, 0.0, 1.0, "eta_c");
    require_range(p.eta_d, 0.0, 1.0, "eta_d");
    require_range(p.eta_e, 0.0, 1.0, "eta_e");
    require_finite(p.lambda_plus, "lambda_plus");
    require_finite(p.lambda_minus, "lambda_minus");
    require_noise_pair(p.input_noise_plus, p.input_noise_minus, "input");
    require_signal_pair(p.input_signal_plus, p.input_signal_minus, "input");
    if (!p.ancilla_a_noise) {
        if (!std::isfinite(p.v_sqz) || p.v_sqz <= 0.0 || p.v_sqz > 1.0) {
            throw std::invalid_argument("v_sqz must lie in (0, 1]");
        }
    }
    if (p.ancilla_a_noise) {
        require_noise_pair(p.ancilla_a_noise->first, p.ancilla_a_noise->second, "ancilla_a");
    }
    if (p.ancilla_b_noise) {
        require_noise_pair(p.ancilla_b_noise->first, p.ancilla_b_noise->second, "ancilla_b");
    }

    auto space = std::make_shared<SourceSpace>();
    const SourceId input_id = space->make_source(input_kind(), p.input_noise_plus,
                                                 p.input_noise_minus, p.input_signal_plus,
                                                 p.input_signal_minus);

    FieldState beam_a, beam_b;
    if (p.ancilla_a_noise) {
        const auto [ap, am] = *p.ancilla_a_noise;
        const auto [bp, bm] = p.ancilla_b_noise.value_or(*p.ancilla_a_noise);
        beam_a = field_of(space, space->make_source(SourceKind::squeezed_ancilla, ap, am, 0, 0));
        beam_b = field_of(space, space->make_source(SourceKind::squeezed_ancilla, bp, bm, 0, 0));
    } else {
        const double h = opa_gain_for_variance(p.v_sqz);
        beam_a = squeeze_opa(field_of(space, space->make_source(SourceKind::coherent_seed, 1.0,
                                                                1.0, 0.0, 0.0), 1.0), h);
        beam_b = squeeze_opa(field_of(space, space->make_source(SourceKind::coherent_seed, 1.0,
                                                                1.0, 0.0, 0.0), 1.0), h);
    }

    TeleporterInstance inst;
    inst.kind = CircuitKind::quantum;
    inst.space = space;
    inst.input = field_of(space, input_id, 1.0);

    auto [epr_c, epr_d] = beamsplitter(beam_a, phase_shift(beam_b, kHalfPi), 0.5);
    inst.epr_c = epr_c;
    inst.epr_d = epr_d;

    const FieldState c_sent = attenuate(epr_c, p.eta_c, space->make_vacuum());
    auto [arm_plus, arm_minus] = beamsplitter(c_sent, inst.input, 0.5);
    inst.arm_plus = arm_plus;
    inst.arm_minus = arm_minus;

    PhotocurrentForm i_plus = homodyne(arm_plus, 0.0);
    PhotocurrentForm i_minus = homodyne(arm_minus, kHalfPi);
    if (p.eta_e < 1.0) {
        const double leak = std::sqrt((1.0 - p.eta_e) / 2.0);
        const double pass = std::sqrt(p.eta_e);
        i_plus = pass * i_plus + leak * homodyne(field_of(space, space->make_vacuum()), 0.0);
        i_minus = pass * i_minus + leak * homodyne(field_of(space, space->make_vacuum()), kHalfPi);
    }
    inst.current_plus = i_plus;
    inst.current_minus = i_minus;

    const FieldState d_received = attenuate(epr_d, p.eta_d, space->make_vacuum());
    FieldState out = modulate(d_received, i_plus, std::numbers::sqrt2 * p.lambda_plus,
                              Quadrature::amplitude);
    inst.output = modulate(out, i_minus, std::numbers::sqrt2 * p.lambda_minus, Quadrature::phase);
    return inst;
}

ClassicalClosedForm closed_form_classical(const ClassicalTeleporterParams& p) {
    require_range(p.eta, 0.0, 1.0, "eta");
    const double arm_plus = p.eta * p.input_noise_plus + (1.0 - p.eta);
    const double arm_minus = (1.0 - p.eta) * p.input_noise_minus + p.eta;
    const double lp2 = p.lambda_plus * p.lambda_plus;
    const double lm2 = p.lambda_minus * p.lambda_minus;

    ClassicalClosedForm cf;
    cf.vout_plus = p.receiver_vplus + lp2 * arm_plus;
    cf.vout_minus = p.receiver_vminus + lm2 * arm_minus;
    cf.t_plus = lp2 * p.eta * p.input_noise_plus / cf.vout_plus;
    cf.t_minus = lm2 * (1.0 - p.eta) * p.input_noise_minus / cf.vout_minus;
    cf.vcv_plus = cf.vout_plus - lp2 * p.eta * p.input_noise_plus;
    cf.vcv_minus = cf.vout_minus - lm2 * (1.0 - p.eta) * p.input_noise_minus;
    return cf;
}

std::pair<double, double> closed_form_quantum(double va_plus, double va_minus, double vb_plus,
                                              double vb_minus, double eta_c, double eta_d,
                                              double eta_e, double lambda_plus,
                                              double lambda_minus, double vin_plus,
                                              double vin_minus) {
    const double root_d = std::sqrt(eta_d);
    const double k = std::sqrt(eta_c * eta_e);
    const double lost = 1.0 - eta_c * eta_e;

    const double sum_p = root_d + lambda_plus * k;
    const double dif_p = root_d - lambda_plus * k;
    const double vout_plus = 0.5 * sum_p * sum_p * va_plus + 0.5 * dif_p * dif_p * vb_minus +
                             lambda_plus * lambda_plus * eta_e * vin_plus + (1.0 - eta_d) +
                             lambda_plus * lambda_plus * lost;

    const double sum_m = root_d + lambda_minus * k;
    const double dif_m = root_d - lambda_minus * k;
    const double vout_minus = 0.5 * sum_m * sum_m * va_minus + 0.5 * dif_m * dif_m * vb_plus +
                              lambda_minus * lambda_minus * eta_e * vin_minus + (1.0 - eta_d) +
                              lambda_minus * lambda_minus * lost;
    return {vout_plus, vout_minus};
}

double quadrature_variance_theta(const TeleporterInstance& instance, double theta) {
    return variance(instance.output, theta, DensityKind::noise);
}

}  // namespace qtele
