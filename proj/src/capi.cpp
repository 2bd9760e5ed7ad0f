#include "qtele/qtele.h"

#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/experiments.hpp"
#include "core/metrics.hpp"
#include "core/verify.hpp"

struct qtele_tv_table {
    std::vector<qtele::SweepRow> rows;
};

struct qtele_verify_report {
    std::vector<qtele::SuiteResult> suites;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
qtele_status guarded(Fn&& fn) {
    g_last_error.clear();
    try {
        fn();
        return QTELE_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return QTELE_ERR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return QTELE_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QTELE_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QTELE_ERR_INTERNAL;
    }
}

void require(bool condition, const char* message) {
    if (!condition) throw std::invalid_argument(message);
}

qtele::ClassicalTeleporterParams to_core(const qtele_classical_params& p) {
    qtele::ClassicalTeleporterParams out;
    out.eta = p.eta;
    out.lambda_plus = p.lambda_plus;
    out.lambda_minus = p.lambda_minus;
    out.receiver_vplus = p.receiver_vplus;
    out.receiver_vminus = p.receiver_vminus;
    out.input_noise_plus = p.input_noise_plus;
    out.input_noise_minus = p.input_noise_minus;
    out.input_signal_plus = p.input_signal_plus;
    out.input_signal_minus = p.input_signal_minus;
    return out;
}

qtele::QuantumTeleporterParams to_core(const qtele_quantum_params& p) {
    qtele::QuantumTeleporterParams out;
    out.v_sqz = p.v_sqz;
    out.lambda_plus = p.lambda_plus;
    out.lambda_minus = p.lambda_minus;
    out.eta_c = p.eta_c;
    out.eta_d = p.eta_d;
    out.eta_e = p.eta_e;
    out.input_noise_plus = p.input_noise_plus;
    out.input_noise_minus = p.input_noise_minus;
    out.input_signal_plus = p.input_signal_plus;
    out.input_signal_minus = p.input_signal_minus;
    if (p.use_ancilla_noise) {
        out.ancilla_a_noise = std::make_pair(p.ancilla_a_plus, p.ancilla_a_minus);
        out.ancilla_b_noise = std::make_pair(p.ancilla_b_plus, p.ancilla_b_minus);
    }
    return out;
}

qtele_tv_point to_c(const qtele::TVPoint& tv) {
    qtele_tv_point out{};
    out.gain_plus = tv.gain_plus;
    out.gain_minus = tv.gain_minus;
    out.t_plus = tv.t_plus;
    out.t_minus = tv.t_minus;
    out.t_q = tv.t_q;
    out.vcv_plus = tv.vcv_plus;
    out.vcv_minus = tv.vcv_minus;
    out.v_q = tv.v_q;
    out.vout_plus = tv.vout_plus;
    out.vout_minus = tv.vout_minus;
    out.fidelity = tv.fidelity.value_or(0.0);
    out.has_fidelity = tv.fidelity.has_value() ? 1 : 0;
    return out;
}

qtele::SweepSpec to_core_spec(const qtele_sweep_spec& spec) {
    require(spec.parameter >= QTELE_SWEEP_GAIN && spec.parameter <= QTELE_SWEEP_ETA_E,
            "unknown sweep parameter");
    qtele::SweepSpec out;
    out.parameter = static_cast<qtele::SweptParameter>(spec.parameter);
    out.lo = spec.lo;
    out.hi = spec.hi;
    out.points = spec.points;
    return out;
}

}  // namespace

extern "C" {

const char* qtele_version(void) { return "0.1.0"; }

const char* qtele_last_error(void) { return g_last_error.c_str(); }

void qtele_classical_params_init(qtele_classical_params* params) {
    if (!params) return;
    const qtele::ClassicalTeleporterParams d;
    *params = qtele_classical_params{d.eta,
                                     d.lambda_plus,
                                     d.lambda_minus,
                                     d.receiver_vplus,
                                     d.receiver_vminus,
                                     d.input_noise_plus,
                                     d.input_noise_minus,
                                     d.input_signal_plus,
                                     d.input_signal_minus};
}

void qtele_quantum_params_init(qtele_quantum_params* params) {
    if (!params) return;
    const qtele::QuantumTeleporterParams d;
    *params = qtele_quantum_params{};
    params->v_sqz = d.v_sqz;
    params->lambda_plus = d.lambda_plus;
    params->lambda_minus = d.lambda_minus;
    params->eta_c = d.eta_c;
    params->eta_d = d.eta_d;
    params->eta_e = d.eta_e;
    params->input_noise_plus = d.input_noise_plus;
    params->input_noise_minus = d.input_noise_minus;
    params->input_signal_plus = d.input_signal_plus;
    params->input_signal_minus = d.input_signal_minus;
    params->use_ancilla_noise = 0;
    params->ancilla_a_plus = 1.0;
    params->ancilla_a_minus = 1.0;
    params->ancilla_b_plus = 1.0;
    params->ancilla_b_minus = 1.0;
}

void qtele_sweep_spec_init(qtele_sweep_spec* spec) {
    if (!spec) return;
    const qtele::SweepSpec d;
    spec->parameter = QTELE_SWEEP_GAIN;
    spec->lo = d.lo;
    spec->hi = d.hi;
    spec->points = d.points;
}

qtele_status qtele_eval_classical(const qtele_classical_params* params, qtele_tv_point* out) {
    return guarded([&] {
        require(params && out, "null pointer argument");
        *out = to_c(qtele::eval_classical(to_core(*params)));
    });
}

qtele_status qtele_eval_quantum(const qtele_quantum_params* params, qtele_tv_point* out) {
    return guarded([&] {
        require(params && out, "null pointer argument");
        *out = to_c(qtele::eval_quantum(to_core(*params)));
    });
}

qtele_status qtele_sweep_classical(const qtele_classical_params* base,
                                   const qtele_sweep_spec* spec, qtele_tv_table** out) {
    return guarded([&] {
        require(base && spec && out, "null pointer argument");
        qtele::SweepSpec core_spec = to_core_spec(*spec);
        core_spec.base = to_core(*base);
        auto table = new qtele_tv_table{qtele::run_sweep(core_spec)};
        *out = table;
    });
}

qtele_status qtele_sweep_quantum(const qtele_quantum_params* base, const qtele_sweep_spec* spec,
                                 qtele_tv_table** out) {
    return guarded([&] {
        require(base && spec && out, "null pointer argument");
        qtele::SweepSpec core_spec = to_core_spec(*spec);
        core_spec.base = to_core(*base);
        auto table = new qtele_tv_table{qtele::run_sweep(core_spec)};
        *out = table;
    });
}

size_t qtele_tv_table_size(const qtele_tv_table* table) {
    return table ? table->rows.size() : 0;
}

qtele_status qtele_tv_table_row(const qtele_tv_table* table, size_t index, double* swept_value,
                                qtele_tv_point* out) {
    return guarded([&] {
        require(table && out, "null pointer argument");
        require(index < table->rows.size(), "row index out of range");
        const qtele::SweepRow& row = table->rows[index];
        if (swept_value) *swept_value = row.swept_value;
        *out = to_c(row.point);
    });
}

void qtele_tv_table_free(qtele_tv_table* table) { delete table; }

qtele_status qtele_find_operating_points(const qtele_quantum_params* params, double lo,
                                         double hi, qtele_operating_points* out) {
    return guarded([&] {
        require(params && out, "null pointer argument");
        const qtele::OperatingPoints op =
            qtele::find_operating_points(to_core(*params), lo, hi);
        *out = qtele_operating_points{op.lambda_g_formula,
                                      op.lambda_eta_formula,
                                      op.formulas_bounded ? 1 : 0,
                                      op.lambda_tq_max,
                                      op.lambda_vq_min,
                                      op.tq_max,
                                      op.vq_min,
                                      op.tq_unimodal ? 1 : 0,
                                      op.vq_unimodal ? 1 : 0,
                                      op.tq_interior ? 1 : 0,
                                      op.vq_interior ? 1 : 0,
                                      op.amplifier_residual,
                                      op.attenuator_residual,
                                      op.unity_residual};
    });
}

qtele_status qtele_coherent_fidelity(double vout_plus, double vout_minus, double mean_gain,
                                     double alpha_plus, double alpha_minus, double* out) {
    return guarded([&] {
        require(out, "null pointer argument");
        *out = qtele::coherent_fidelity(vout_plus, vout_minus, mean_gain, alpha_plus,
                                        alpha_minus);
    });
}

void qtele_verify_options_init(qtele_verify_options* options) {
    if (!options) return;
    const qtele::VerifyOptions d;
    options->tol_oracle = d.tolerances.oracle;
    options->tol_identity = d.tolerances.identity;
    options->tol_commutator = d.tolerances.commutator;
    options->tol_classical_limit = d.tolerances.classical_limit;
    options->tol_quadrature = d.tolerances.quadrature;
    options->tol_operating_points = d.tolerances.operating_points;
    options->seed = d.seed;
    options->sequences = d.sequences;
}

qtele_status qtele_verify_run(const qtele_verify_options* options, qtele_verify_report** out) {
    return guarded([&] {
        require(out, "null pointer argument");
        qtele::VerifyOptions core;
        if (options) {
            core.tolerances.oracle = options->tol_oracle;
            core.tolerances.identity = options->tol_identity;
            core.tolerances.commutator = options->tol_commutator;
            core.tolerances.classical_limit = options->tol_classical_limit;
            core.tolerances.quadrature = options->tol_quadrature;
            core.tolerances.operating_points = options->tol_operating_points;
            core.seed = options->seed;
            core.sequences = options->sequences;
        }
        auto report = new qtele_verify_report{qtele::run_verification(core)};
        *out = report;
    });
}

size_t qtele_verify_report_size(const qtele_verify_report* report) {
    return report ? report->suites.size() : 0;
}

qtele_status qtele_verify_report_suite(const qtele_verify_report* report, size_t index,
                                       const char** name, int* passed, const char** detail) {
    return guarded([&] {
        require(report, "null pointer argument");
        require(index < report->suites.size(), "suite index out of range");
        const qtele::SuiteResult& suite = report->suites[index];
        if (name) *name = suite.name.c_str();
        if (passed) *passed = suite.passed ? 1 : 0;
        if (detail) *detail = suite.detail.c_str();
    });
}

int qtele_verify_report_all_passed(const qtele_verify_report* report) {
    return report && qtele::all_passed(report->suites) ? 1 : 0;
}

void qtele_verify_report_free(qtele_verify_report* report) { delete report; }

}  // extern "C"
