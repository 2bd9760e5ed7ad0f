#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "core/quadcore.hpp"

using namespace qtele;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

TEST_CASE("vacuum_has_unit_noise_in_every_quadrature") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState f = field_of(space, space->make_vacuum());
    for (double theta : {0.0, 0.3, kHalfPi, 2.1}) {
        CHECK(variance(f, theta, DensityKind::noise) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(commutator_norm(f) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(variance(f, 0.0, DensityKind::signal) == doctest::Approx(0.0));
}

TEST_CASE("source_validation_rejects_unphysical_densities") {
    SourceSpace space;
    CHECK_THROWS_AS(space.make_source(SourceKind::coherent_seed, 0.5, 0.5, 0.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(space.make_source(SourceKind::coherent_seed, -1.0, 1.0, 0.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(space.make_source(SourceKind::coherent_seed, 1.0, 1.0, -0.5, 0.0),
                    std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(space.make_source(SourceKind::coherent_seed, nan, 1.0, 0.0, 0.0),
                    std::invalid_argument);
    CHECK(space.size() == 0);
}

TEST_CASE("beamsplitter_preserves_commutators_and_total_noise") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState a = field_of(space, space->make_vacuum());
    const FieldState b = squeeze_opa(field_of(space, space->make_vacuum()), 2.0);
    const auto [out1, out2] = beamsplitter(a, b, 0.3);

    CHECK(commutator_norm(out1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(commutator_norm(out2) == doctest::Approx(1.0).epsilon(1e-14));
    for (double theta : {0.0, 0.7, kHalfPi}) {
        const double total_in =
            variance(a, theta, DensityKind::noise) + variance(b, theta, DensityKind::noise);
        const double total_out = variance(out1, theta, DensityKind::noise) +
                                 variance(out2, theta, DensityKind::noise);
        CHECK(total_out == doctest::Approx(total_in).epsilon(1e-13));
    }
    CHECK_THROWS_AS(beamsplitter(a, b, 1.5), std::invalid_argument);
}

TEST_CASE("beamsplitter_outputs_carry_no_cross_correlation_for_balanced_vacua") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState a = field_of(space, space->make_vacuum());
    const FieldState b = field_of(space, space->make_vacuum());
    const auto [out1, out2] = beamsplitter(a, b, 0.5);
    const double cov =
        covariance(homodyne(out1, 0.0), homodyne(out2, 0.0), DensityKind::noise);
    CHECK(cov == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("phase_shift_rotates_the_variance_profile") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState sq = squeeze_opa(field_of(space, space->make_vacuum()), 3.0);
    const double phi = 0.8;
    const FieldState rot = phase_shift(sq, phi);
    for (double theta : {0.0, 0.4, 1.1, kHalfPi, 2.9}) {
        CHECK(variance(rot, theta, DensityKind::noise) ==
              doctest::Approx(variance(sq, theta - phi, DensityKind::noise)).epsilon(1e-12));
    }
    const FieldState quarter = phase_shift(sq, kHalfPi);
    CHECK(variance(quarter, 0.0, DensityKind::noise) ==
          doctest::Approx(variance(sq, kHalfPi, DensityKind::noise)).epsilon(1e-12));
}

TEST_CASE("opa_squeezes_one_quadrature_and_antisqueezes_the_other") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState sq = squeeze_opa(field_of(space, space->make_vacuum()), 2.0);
    const double s = std::numbers::sqrt2 - 1.0;
    const double t = std::numbers::sqrt2 + 1.0;
    CHECK(variance(sq, 0.0, DensityKind::noise) == doctest::Approx(s * s).epsilon(1e-13));
    CHECK(variance(sq, kHalfPi, DensityKind::noise) == doctest::Approx(t * t).epsilon(1e-13));
    CHECK(variance(sq, std::numbers::pi / 4.0, DensityKind::noise) ==
          doctest::Approx(3.0).epsilon(1e-13));
    CHECK(commutator_norm(sq) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(squeeze_opa(sq, 0.5), std::invalid_argument);
}

TEST_CASE("attenuator_mixes_in_fresh_vacuum") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState sq = squeeze_opa(field_of(space, space->make_vacuum()), 2.0);
    const double eta = 0.6;
    const FieldState out = attenuate(sq, eta, space->make_vacuum());
    const double v_in = variance(sq, 0.0, DensityKind::noise);
    CHECK(variance(out, 0.0, DensityKind::noise) ==
          doctest::Approx(eta * v_in + (1.0 - eta)).epsilon(1e-13));
    CHECK(commutator_norm(out) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("attenuator_rejects_improper_vacuum_slots") {
    auto space = std::make_shared<SourceSpace>();
    const SourceId vac = space->make_vacuum();
    const FieldState f = field_of(space, vac);

    CHECK_THROWS_AS(attenuate(f, 0.5, vac), std::invalid_argument);

    const SourceId seed =
        space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(attenuate(f, 0.5, seed), std::invalid_argument);

    const SourceId fresh = space->make_vacuum();
    const FieldState once = attenuate(f, 0.5, fresh);
    CHECK_THROWS_AS(attenuate(once, 0.5, fresh), std::invalid_argument);
}

TEST_CASE("homodyne_form_variance_matches_field_variance") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState sq = squeeze_opa(field_of(space, space->make_vacuum()), 1.7);
    for (double theta : {0.0, 0.5, kHalfPi, 1.9}) {
        const PhotocurrentForm form = homodyne(sq, theta);
        CHECK(variance(form, DensityKind::noise) ==
              doctest::Approx(variance(sq, theta, DensityKind::noise)).epsilon(1e-12));
    }
}

TEST_CASE("photocurrent_forms_combine_linearly") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState a = field_of(space, space->make_vacuum());
    const FieldState b = field_of(space, space->make_vacuum());
    const PhotocurrentForm combined = 2.0 * homodyne(a, 0.0) + homodyne(b, 0.0);
    CHECK(variance(combined, DensityKind::noise) == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("modulation_displaces_the_chosen_quadrature") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState probe = field_of(space, space->make_vacuum());
    const FieldState receiver = field_of(space, space->make_vacuum());
    const PhotocurrentForm current = homodyne(probe, 0.0);
    const double g = 1.3;

    const FieldState amp = modulate(receiver, current, g, Quadrature::amplitude);
    CHECK(variance(amp, 0.0, DensityKind::noise) ==
          doctest::Approx(1.0 + g * g).epsilon(1e-13));
    CHECK(variance(amp, kHalfPi, DensityKind::noise) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(commutator_norm(amp) == doctest::Approx(1.0).epsilon(1e-13));

    const FieldState ph = modulate(receiver, current, g, Quadrature::phase);
    CHECK(variance(ph, 0.0, DensityKind::noise) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(variance(ph, kHalfPi, DensityKind::noise) ==
          doctest::Approx(1.0 + g * g).epsilon(1e-13));
}

TEST_CASE("signal_and_noise_densities_stay_separate") {
    auto space = std::make_shared<SourceSpace>();
    const FieldState f = field_of(
        space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 4.0, 9.0));
    CHECK(variance(f, 0.0, DensityKind::signal) == doctest::Approx(4.0));
    CHECK(variance(f, kHalfPi, DensityKind::signal) == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(variance(f, 0.0, DensityKind::total) == doctest::Approx(5.0));

    const QuadratureReport report = quadrature_report(f, 0.0);
    CHECK(report.noise_variance == doctest::Approx(1.0));
    CHECK(report.signal_power == doctest::Approx(4.0));
    CHECK(report.total_variance == doctest::Approx(5.0));
    CHECK(report.snr == doctest::Approx(4.0));
}

TEST_CASE("uncertainty_product_never_dips_below_unity") {
    auto space = std::make_shared<SourceSpace>();
    FieldState f = squeeze_opa(field_of(space, space->make_vacuum()), 2.2);
    f = phase_shift(f, 0.4);
    f = attenuate(f, 0.7, space->make_vacuum());
    for (double theta : {0.0, 0.3, 0.9, 1.4}) {
        const double product = variance(f, theta, DensityKind::noise) *
                               variance(f, theta + kHalfPi, DensityKind::noise);
        CHECK(product >= 1.0 - 1e-12);
    }
}
