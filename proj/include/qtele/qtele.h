#pragma once

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Teleportation benchmark library. Builds measure-and-reconstruct and
 * entanglement-assisted channels in a linearized sideband model and reports
 * two-quadrature transfer (T) and conditional-variance (V) figures.
 *
 * All functions returning qtele_status set the thread-local message read by
 * qtele_last_error() on failure. Out-parameters are written only on
 * QTELE_OK. */

typedef enum qtele_status {
    QTELE_OK = 0,
    QTELE_ERR_INVALID_ARGUMENT = 1,
    QTELE_ERR_DOMAIN = 2,
    QTELE_ERR_INTERNAL = 3
} qtele_status;

const char* qtele_version(void);

/* Message for the most recent failing call on this thread; empty string when
 * the last call succeeded. */
const char* qtele_last_error(void);

/* Splitter-and-feedforward channel: the input meets vacuum on an eta
 * beamsplitter, one arm is detected in amplitude and the other in phase, and
 * both currents displace an independent receiver beam. */
typedef struct qtele_classical_params {
    double eta;
    double lambda_plus;
    double lambda_minus;
    double receiver_vplus; /* receiver noise pair, product >= 1 */
    double receiver_vminus;
    double input_noise_plus;
    double input_noise_minus;
    double input_signal_plus;
    double input_signal_minus;
} qtele_classical_params;

void qtele_classical_params_init(qtele_classical_params* params);

/* Entanglement-assisted channel: two amplitude-squeezed ancillae form an
 * EPR pair; one half is measured jointly with the input (detection
 * efficiency eta_e), the other is displaced by the scaled currents.
 * Transmission of the two halves is eta_c (sender side) and eta_d
 * (receiver side). When use_ancilla_noise is nonzero the ancilla noise
 * pairs below replace the v_sqz minimum-uncertainty pair. */
typedef struct qtele_quantum_params {
    double v_sqz; /* squeezed quadrature variance, in (0, 1] */
    double lambda_plus;
    double lambda_minus;
    double eta_c;
    double eta_d;
    double eta_e;
    double input_noise_plus;
    double input_noise_minus;
    double input_signal_plus;
    double input_signal_minus;
    int use_ancilla_noise;
    double ancilla_a_plus;
    double ancilla_a_minus;
    double ancilla_b_plus;
    double ancilla_b_minus;
} qtele_quantum_params;

void qtele_quantum_params_init(qtele_quantum_params* params);

/* One point of the T-V diagram. fidelity is meaningful only when
 * has_fidelity is nonzero (signed mean gain unity in both quadratures). */
typedef struct qtele_tv_point {
    double gain_plus;
    double gain_minus;
    double t_plus;
    double t_minus;
    double t_q;
    double vcv_plus;
    double vcv_minus;
    double v_q;
    double vout_plus;
    double vout_minus;
    double fidelity;
    int has_fidelity;
} qtele_tv_point;

qtele_status qtele_eval_classical(const qtele_classical_params* params, qtele_tv_point* out);
qtele_status qtele_eval_quantum(const qtele_quantum_params* params, qtele_tv_point* out);

typedef enum qtele_sweep_parameter {
    QTELE_SWEEP_GAIN = 0, /* scales the configured (lambda+, lambda-) pair */
    QTELE_SWEEP_V_SQZ = 1,
    QTELE_SWEEP_ETA_C = 2,
    QTELE_SWEEP_ETA_D = 3,
    QTELE_SWEEP_ETA_E = 4
} qtele_sweep_parameter;

typedef struct qtele_sweep_spec {
    qtele_sweep_parameter parameter;
    double lo;
    double hi;
    size_t points;
} qtele_sweep_spec;

void qtele_sweep_spec_init(qtele_sweep_spec* spec);

/* Uniform-grid sweep results; row i holds the swept value and its T-V
 * point. Classical bases only support the gain parameter. */
typedef struct qtele_tv_table qtele_tv_table;

qtele_status qtele_sweep_classical(const qtele_classical_params* base,
                                   const qtele_sweep_spec* spec, qtele_tv_table** out);
qtele_status qtele_sweep_quantum(const qtele_quantum_params* base, const qtele_sweep_spec* spec,
                                 qtele_tv_table** out);
size_t qtele_tv_table_size(const qtele_tv_table* table);
qtele_status qtele_tv_table_row(const qtele_tv_table* table, size_t index, double* swept_value,
                                qtele_tv_point* out);
void qtele_tv_table_free(qtele_tv_table* table);

/* Special gains of the lossless entangled scheme: the closed-form pair
 * lambda_g (noiseless-amplifier equivalent) and lambda_eta (attenuator
 * equivalent), and the numeric extremizers of T_q and V_q over a gain
 * interval. Residuals report how far the output variances sit from the
 * matching equivalent-channel model. */
typedef struct qtele_operating_points {
    double lambda_g_formula;
    double lambda_eta_formula;
    int formulas_bounded; /* zero when v_sqz == 1 makes lambda_g diverge */
    double lambda_tq_max;
    double lambda_vq_min;
    double tq_max;
    double vq_min;
    int tq_unimodal;
    int vq_unimodal;
    int tq_interior;
    int vq_interior;
    double amplifier_residual;
    double attenuator_residual;
    double unity_residual;
} qtele_operating_points;

qtele_status qtele_find_operating_points(const qtele_quantum_params* params, double lo,
                                         double hi, qtele_operating_points* out);

/* Coherent-state overlap fidelity for a Gaussian channel with the given
 * output noise pair, displacement gain, and input amplitudes. */
qtele_status qtele_coherent_fidelity(double vout_plus, double vout_minus, double mean_gain,
                                     double alpha_plus, double alpha_minus, double* out);

typedef struct qtele_verify_options {
    double tol_oracle;
    double tol_identity;
    double tol_commutator;
    double tol_classical_limit;
    double tol_quadrature;
    double tol_operating_points;
    uint64_t seed;
    size_t sequences;
} qtele_verify_options;

void qtele_verify_options_init(qtele_verify_options* options);

/* Self-check suites comparing the field engine against closed forms and
 * structural invariants. Suite name and detail pointers stay valid until
 * the report is freed. */
typedef struct qtele_verify_report qtele_verify_report;

qtele_status qtele_verify_run(const qtele_verify_options* options, qtele_verify_report** out);
size_t qtele_verify_report_size(const qtele_verify_report* report);
qtele_status qtele_verify_report_suite(const qtele_verify_report* report, size_t index,
                                       const char** name, int* passed, const char** detail);
int qtele_verify_report_all_passed(const qtele_verify_report* report);
void qtele_verify_report_free(qtele_verify_report* report);

#ifdef __cplusplus
}
#endif
