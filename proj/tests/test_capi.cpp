#include "doctest.h"

#include <cstring>
#include <string>

#include "qtele/qtele.h"

TEST_CASE("version_and_error_strings_are_always_available") {
    CHECK(qtele_version() != nullptr);
    CHECK(std::strlen(qtele_version()) > 0);
    CHECK(qtele_last_error() != nullptr);
}

TEST_CASE("classical_defaults_evaluate_to_the_symmetric_benchmark") {
    qtele_classical_params params;
    qtele_classical_params_init(&params);
    CHECK(params.eta == doctest::Approx(0.5));
    CHECK(params.lambda_minus == doctest::Approx(-1.0));

    qtele_tv_point tv;
    REQUIRE(qtele_eval_classical(&params, &tv) == QTELE_OK);
    CHECK(tv.vout_plus == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tv.t_q == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tv.v_q == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(tv.has_fidelity == 0);
}

TEST_CASE("quantum_defaults_evaluate_to_the_unity_gain_point") {
    qtele_quantum_params params;
    qtele_quantum_params_init(&params);
    CHECK(params.v_sqz == doctest::Approx(0.5));

    qtele_tv_point tv;
    REQUIRE(qtele_eval_quantum(&params, &tv) == QTELE_OK);
    CHECK(tv.t_q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tv.v_q == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(tv.has_fidelity == 1);
    CHECK(tv.fidelity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("invalid_parameters_set_the_error_message") {
    qtele_quantum_params params;
    qtele_quantum_params_init(&params);
    params.v_sqz = 1.5;
    qtele_tv_point tv;
    CHECK(qtele_eval_quantum(&params, &tv) == QTELE_ERR_INVALID_ARGUMENT);
    CHECK(std::string(qtele_last_error()).find("v_sqz") != std::string::npos);

    params.v_sqz = 0.5;
    REQUIRE(qtele_eval_quantum(&params, &tv) == QTELE_OK);
    CHECK(std::strlen(qtele_last_error()) == 0);
}

TEST_CASE("null_pointers_are_rejected") {
    CHECK(qtele_eval_classical(nullptr, nullptr) == QTELE_ERR_INVALID_ARGUMENT);
    qtele_classical_params params;
    qtele_classical_params_init(&params);
    CHECK(qtele_eval_classical(&params, nullptr) == QTELE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sweep_tables_expose_rows_by_index") {
    qtele_quantum_params base;
    qtele_quantum_params_init(&base);
    qtele_sweep_spec spec;
    qtele_sweep_spec_init(&spec);
    spec.lo = 0.0;
    spec.hi = 2.0;
    spec.points = 5;

    qtele_tv_table* table = nullptr;
    REQUIRE(qtele_sweep_quantum(&base, &spec, &table) == QTELE_OK);
    REQUIRE(table != nullptr);
    CHECK(qtele_tv_table_size(table) == 5);

    double swept = -1.0;
    qtele_tv_point tv;
    REQUIRE(qtele_tv_table_row(table, 2, &swept, &tv) == QTELE_OK);
    CHECK(swept == doctest::Approx(1.0));
    CHECK(tv.t_q == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(qtele_tv_table_row(table, 5, &swept, &tv) == QTELE_ERR_INVALID_ARGUMENT);
    qtele_tv_table_free(table);
}

TEST_CASE("ancilla_noise_pairs_flow_through_the_c_layer") {
    qtele_quantum_params params;
    qtele_quantum_params_init(&params);
    params.use_ancilla_noise = 1;
    params.ancilla_a_plus = 0.3;
    params.ancilla_a_minus = 4.0;
    params.ancilla_b_plus = 0.6;
    params.ancilla_b_minus = 2.0;
    qtele_tv_point tv;
    REQUIRE(qtele_eval_quantum(&params, &tv) == QTELE_OK);
    CHECK(tv.vout_plus == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(tv.vout_minus == doctest::Approx(2.2).epsilon(1e-12));
}

TEST_CASE("operating_points_report_the_closed_form_gains") {
    qtele_quantum_params params;
    qtele_quantum_params_init(&params);
    params.v_sqz = 0.25;
    qtele_operating_points op;
    REQUIRE(qtele_find_operating_points(&params, 0.05, 3.0, &op) == QTELE_OK);
    CHECK(op.formulas_bounded == 1);
    CHECK(op.lambda_g_formula == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(op.lambda_eta_formula == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(op.amplifier_residual <= 1e-10);

    params.eta_e = 0.9;
    CHECK(qtele_find_operating_points(&params, 0.05, 3.0, &op) ==
          QTELE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fidelity_helper_matches_the_known_values") {
    double f = 0.0;
    REQUIRE(qtele_coherent_fidelity(1.0, 1.0, 1.0, 0.0, 0.0, &f) == QTELE_OK);
    CHECK(f == doctest::Approx(1.0).epsilon(1e-13));
    REQUIRE(qtele_coherent_fidelity(3.0, 3.0, 1.0, 1.0, 1.0, &f) == QTELE_OK);
    CHECK(f == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(qtele_coherent_fidelity(-1.0, 1.0, 1.0, 0.0, 0.0, &f) ==
          QTELE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("verification_report_lists_seven_passing_suites") {
    qtele_verify_options options;
    qtele_verify_options_init(&options);
    options.sequences = 25;

    qtele_verify_report* report = nullptr;
    REQUIRE(qtele_verify_run(&options, &report) == QTELE_OK);
    REQUIRE(report != nullptr);
    CHECK(qtele_verify_report_size(report) == 7);
    CHECK(qtele_verify_report_all_passed(report) == 1);

    for (size_t i = 0; i < qtele_verify_report_size(report); ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        REQUIRE(qtele_verify_report_suite(report, i, &name, &passed, &detail) == QTELE_OK);
        CHECK(name != nullptr);
        CHECK(std::strlen(name) > 0);
        CHECK(passed == 1);
        CHECK(detail != nullptr);
    }
    const char* name = nullptr;
    int passed = 0;
    CHECK(qtele_verify_report_suite(report, 7, &name, &passed, nullptr) ==
          QTELE_ERR_INVALID_ARGUMENT);
    qtele_verify_report_free(report);
}

TEST_CASE("impossible_tolerances_make_the_verification_fail") {
    qtele_verify_options options;
    qtele_verify_options_init(&options);
    options.sequences = 5;
    options.tol_oracle = 1e-30;

    qtele_verify_report* report = nullptr;
    REQUIRE(qtele_verify_run(&options, &report) == QTELE_OK);
    CHECK(qtele_verify_report_all_passed(report) == 0);
    qtele_verify_report_free(report);
}
