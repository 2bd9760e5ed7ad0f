#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "core/experiments.hpp"

using namespace qtele;

TEST_CASE("sweep_grid_is_uniform_and_inclusive") {
    SweepSpec spec;
    spec.base = QuantumTeleporterParams{};
    spec.lo = 0.0;
    spec.hi = 1.0;
    spec.points = 5;
    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].swept_value == doctest::Approx(0.25 * static_cast<double>(i)));
    }

    spec.points = 1;
    spec.lo = 0.7;
    const std::vector<SweepRow> single = run_sweep(spec);
    REQUIRE(single.size() == 1);
    CHECK(single[0].swept_value == doctest::Approx(0.7));
}

TEST_CASE("sweep_validation_rejects_bad_grids") {
    SweepSpec spec;
    spec.base = QuantumTeleporterParams{};
    spec.points = 0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.points = 5;
    spec.lo = 2.0;
    spec.hi = 1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("classical_bases_only_sweep_gain") {
    SweepSpec spec;
    spec.base = ClassicalTeleporterParams{};
    spec.parameter = SweptParameter::eta_e;
    spec.points = 3;
    spec.lo = 0.5;
    spec.hi = 1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::runtime_error);
}

TEST_CASE("gain_sweep_scales_the_configured_gain_pair") {
    QuantumTeleporterParams base;
    base.lambda_plus = 2.0;
    base.lambda_minus = -1.0;
    SweepSpec spec;
    spec.base = base;
    spec.lo = 0.5;
    spec.hi = 0.5;
    spec.points = 1;
    const std::vector<SweepRow> rows = run_sweep(spec);
    CHECK(rows[0].point.gain_plus == doctest::Approx(1.0));
    CHECK(rows[0].point.gain_minus == doctest::Approx(-0.5));
}

TEST_CASE("sweep_results_do_not_depend_on_worker_count") {
    SweepSpec spec;
    spec.base = QuantumTeleporterParams{};
    spec.points = 41;
    setenv("QTELE_THREADS", "1", 1);
    const std::vector<SweepRow> serial = run_sweep(spec);
    setenv("QTELE_THREADS", "4", 1);
    const std::vector<SweepRow> parallel = run_sweep(spec);
    unsetenv("QTELE_THREADS");
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].swept_value == parallel[i].swept_value);
        CHECK(serial[i].point.t_q == parallel[i].point.t_q);
        CHECK(serial[i].point.v_q == parallel[i].point.v_q);
    }
}

TEST_CASE("failed_grid_points_report_the_swept_value") {
    SweepSpec spec;
    spec.base = QuantumTeleporterParams{};
    spec.parameter = SweptParameter::v_sqz;
    spec.lo = 0.5;
    spec.hi = 1.5;  // the upper half of the grid is out of range
    spec.points = 3;
    CHECK_THROWS_WITH_AS(run_sweep(spec), doctest::Contains("1.5"), std::runtime_error);
}

TEST_CASE("equivalent_channel_models_hold_at_their_gains") {
    QuantumTeleporterParams p;
    p.v_sqz = 0.25;
    const double va_minus = 4.0;
    const double lambda_g = (va_minus + 1.0) / (va_minus - 1.0);
    CHECK(equivalence_residual(p, lambda_g, EquivalenceModel::amplifier) <= 1e-12);
    CHECK(equivalence_residual(p, 1.0 / lambda_g, EquivalenceModel::attenuator) <= 1e-12);
    CHECK(equivalence_residual(p, 1.0, EquivalenceModel::unity_channel) <= 1e-12);
    // Off the special gains the models are genuinely violated.
    CHECK(equivalence_residual(p, 1.0, EquivalenceModel::amplifier) > 0.1);

    p.eta_e = 0.9;
    CHECK_THROWS_AS(equivalence_residual(p, 1.0, EquivalenceModel::amplifier),
                    std::invalid_argument);
}

TEST_CASE("operating_points_match_the_closed_form_gains") {
    QuantumTeleporterParams p;
    p.v_sqz = 0.5;
    const OperatingPoints op = find_operating_points(p, 0.05, 3.0);
    CHECK(op.formulas_bounded);
    CHECK(op.lambda_g_formula == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(op.lambda_eta_formula == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(op.lambda_tq_max == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
    CHECK(op.lambda_vq_min == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(op.tq_unimodal);
    CHECK(op.vq_unimodal);
    CHECK(op.tq_interior);
    CHECK(op.vq_interior);
    CHECK(op.amplifier_residual <= 1e-10);
    CHECK(op.attenuator_residual <= 1e-10);
    CHECK(op.unity_residual <= 1e-10);
}

TEST_CASE("no_squeezing_pushes_the_special_gains_out_of_reach") {
    QuantumTeleporterParams p;
    p.v_sqz = 1.0;
    const OperatingPoints op = find_operating_points(p, 0.05, 3.0);
    CHECK_FALSE(op.formulas_bounded);
    CHECK_FALSE(op.tq_interior);
    CHECK_FALSE(op.vq_interior);
    CHECK(op.unity_residual <= 1e-10);
}

TEST_CASE("operating_points_require_a_lossless_scheme") {
    QuantumTeleporterParams p;
    p.eta_d = 0.9;
    CHECK_THROWS_AS(find_operating_points(p, 0.05, 3.0), std::invalid_argument);
    p.eta_d = 1.0;
    CHECK_THROWS_AS(find_operating_points(p, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("threshold_scan_flags_the_quadrant_only_below_half_squeezing") {
    const auto cells =
        loss_threshold_scan({0.4, 0.6}, {1.0}, default_lambda_grid());
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].v_sqz == doctest::Approx(0.4));
    CHECK(cells[0].quantum_quadrant);
    CHECK(cells[0].best_lambda > 0.0);
    CHECK_FALSE(cells[1].quantum_quadrant);

    const auto lossy = loss_threshold_scan({0.1}, {0.5, 0.6}, default_lambda_grid());
    REQUIRE(lossy.size() == 2);
    CHECK_FALSE(lossy[0].quantum_quadrant);
    CHECK(lossy[1].quantum_quadrant);

    CHECK_THROWS_AS(loss_threshold_scan({}, {1.0}, default_lambda_grid()),
                    std::invalid_argument);
}

TEST_CASE("default_grids_cover_the_documented_ranges") {
    const std::vector<double> v = default_squeezing_grid();
    REQUIRE(v.size() == 21);
    CHECK(v.front() == doctest::Approx(0.01));
    CHECK(v.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);

    const std::vector<double> l = default_lambda_grid();
    REQUIRE(l.size() == 61);
    CHECK(l.front() == doctest::Approx(0.0));
    CHECK(l.back() == doctest::Approx(3.0));
}
