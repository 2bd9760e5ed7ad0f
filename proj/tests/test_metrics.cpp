#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "core/metrics.hpp"

using namespace qtele;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct SplitChannel {
    FieldState input;
    FieldState output;
};

// Input with signal meets vacuum on an eta splitter; the transmitted arm is
// the channel output.
SplitChannel make_split_channel(double eta) {
    auto space = std::make_shared<SourceSpace>();
    SplitChannel ch;
    ch.input = field_of(
        space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 4.0, 4.0));
    const FieldState vac = field_of(space, space->make_vacuum());
    ch.output = beamsplitter(ch.input, vac, eta).first;
    return ch;
}

}  // namespace

TEST_CASE("transfer_coefficient_needs_input_signal") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState quiet = field_of(space, space->make_vacuum());
    CHECK_THROWS_AS(transfer_coefficient(quiet, quiet, 0.0), std::domain_error);
}

TEST_CASE("split_channel_transfer_matches_transmission") {
    const double eta = 0.36;
    const SplitChannel ch = make_split_channel(eta);
    // SNR_out / SNR_in = (eta s / 1) / (s / 1) = eta for a coherent input.
    CHECK(transfer_coefficient(ch.input, ch.output, 0.0) ==
          doctest::Approx(eta).epsilon(1e-12));
    CHECK(mean_gain(ch.input, ch.output, 0.0) ==
          doctest::Approx(std::sqrt(eta)).epsilon(1e-12));
    CHECK(conditional_variance(ch.input, ch.output, 0.0) ==
          doctest::Approx(1.0 - eta).epsilon(1e-12));
}

TEST_CASE("conditional_variance_of_an_uncorrelated_output_is_its_variance") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState input = field_of(
        space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 4.0, 4.0));
    const FieldState other = squeeze_opa(field_of(space, space->make_vacuum()), 2.0);
    CHECK(conditional_variance(input, other, 0.0) ==
          doctest::Approx(variance(other, 0.0, DensityKind::noise)).epsilon(1e-12));
    CHECK(mean_gain(input, other, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("identity_channel_scores_perfect_transfer_and_fidelity") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState input = field_of(
        space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 4.0, 4.0));
    const TVPoint tv = tv_point(input, input, 1.0, -1.0);
    CHECK(tv.t_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tv.t_minus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tv.t_q == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tv.vcv_plus == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tv.v_q == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(tv.fidelity.has_value());
    CHECK(*tv.fidelity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity_is_withheld_away_from_unity_mean_gain") {
    const SplitChannel ch = make_split_channel(0.36);
    const TVPoint tv = tv_point(ch.input, ch.output, 0.6, -0.6);
    CHECK_FALSE(tv.fidelity.has_value());
    CHECK(tv.vout_plus == doctest::Approx(1.0).epsilon(1e-12));
    // Vcv = (1 - T) Vout holds for every channel the engine can build.
    CHECK(tv.vcv_plus == doctest::Approx((1.0 - tv.t_plus) * tv.vout_plus).epsilon(1e-12));
    CHECK(tv.vcv_minus == doctest::Approx((1.0 - tv.t_minus) * tv.vout_minus).epsilon(1e-12));
}

TEST_CASE("limit_flags_use_strict_guarded_comparisons") {
    TVPoint tv;
    tv.t_q = 1.0 + 1e-13;
    tv.v_q = 1.0 - 1e-13;
    ClassicalLimitFlags flags = classical_limit_flags(tv, true);
    CHECK_FALSE(flags.breaks_tq);
    CHECK_FALSE(flags.breaks_vq);
    CHECK_FALSE(flags.quantum_quadrant);

    tv.t_q = 1.0 + 1e-9;
    tv.v_q = 1.0 - 1e-9;
    flags = classical_limit_flags(tv, true);
    CHECK(flags.breaks_tq);
    CHECK(flags.breaks_vq);
    CHECK(flags.quantum_quadrant);

    // Without a minimum-uncertainty input the transfer bound is unusable.
    flags = classical_limit_flags(tv, false);
    CHECK_FALSE(flags.breaks_tq);
    CHECK(flags.breaks_vq);
    CHECK_FALSE(flags.quantum_quadrant);
}

TEST_CASE("coherent_fidelity_reference_values") {
    CHECK(coherent_fidelity(1.0, 1.0, 1.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(coherent_fidelity(3.0, 3.0, 1.0, 2.0, -1.0) ==
          doctest::Approx(0.5).epsilon(1e-13));
    // Displacement error: gain g shifts the output mean to g * 2 alpha.
    const double g = 0.5;
    const double alpha = 1.5;
    const double delta = (1.0 - g) * 2.0 * alpha / std::numbers::sqrt2;
    const double want = 1.0 * std::exp(-delta * delta / 2.0);
    CHECK(coherent_fidelity(1.0, 1.0, g, alpha, 0.0) ==
          doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(coherent_fidelity(-1.0, 1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("tv_point_records_the_requested_gains") {
    const SplitChannel ch = make_split_channel(0.5);
    const TVPoint tv = tv_point(ch.input, ch.output, 1.25, -0.75);
    CHECK(tv.gain_plus == doctest::Approx(1.25));
    CHECK(tv.gain_minus == doctest::Approx(-0.75));
}

TEST_CASE("quadrature_angles_are_treated_independently") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState input = field_of(
        space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 4.0, 16.0));
    const FieldState vac = field_of(space, space->make_vacuum());
    const FieldState output = beamsplitter(input, vac, 0.49).first;
    const double t_plus = transfer_coefficient(input, output, 0.0);
    const double t_minus = transfer_coefficient(input, output, kHalfPi);
    CHECK(t_plus == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(t_minus == doctest::Approx(0.49).epsilon(1e-12));
}
