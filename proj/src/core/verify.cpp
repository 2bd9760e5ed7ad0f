#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "core/circuits.hpp"
#include "core/experiments.hpp"
#include "core/metrics.hpp"

namespace qtele {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

struct WorstTracker {
    double worst = 0.0;
    std::string where;

    void update(double err, const std::string& label) {
        if (err > worst) {
            worst = err;
            where = label;
        }
    }
};

SuiteResult make_result(const std::string& name, const WorstTracker& tracker, double tol,
                        std::size_t cases) {
    SuiteResult r;
    r.name = name;
    r.passed = tracker.worst <= tol;
    std::ostringstream os;
    os << "worst deviation " << fmt(tracker.worst) << " (tolerance " << fmt(tol) << ", " << cases
       << " cases";
    if (!r.passed) os << ", at " << tracker.where;
    os << ")";
    r.detail = os.str();
    return r;
}

SuiteResult closed_form_oracle(const VerifyTolerances& tol) {
    WorstTracker t;
    std::size_t cases = 0;

    const double scales[] = {0.0, 0.5, 1.0, std::numbers::sqrt2, 2.0};
    const std::pair<double, double> inputs[] = {{1.0, 1.0}, {0.1, 10.0}};
    const std::pair<double, double> receivers[] = {{1.0, 1.0}, {2.0, 0.6}};
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double scale : scales)
            for (auto input : inputs)
                for (auto recv : receivers) {
                    ClassicalTeleporterParams p;
                    p.eta = eta;
                    p.lambda_plus = scale;
                    p.lambda_minus = -scale;
                    p.input_noise_plus = input.first;
                    p.input_noise_minus = input.second;
                    p.receiver_vplus = recv.first;
                    p.receiver_vminus = recv.second;
                    const TVPoint tv = eval_classical(p);
                    const ClassicalClosedForm cf = closed_form_classical(p);
                    std::ostringstream label;
                    label << "classical eta=" << eta << " scale=" << scale;
                    t.update(std::fabs(tv.vout_plus - cf.vout_plus), label.str());
                    t.update(std::fabs(tv.vout_minus - cf.vout_minus), label.str());
                    t.update(std::fabs(tv.t_plus - cf.t_plus), label.str());
                    t.update(std::fabs(tv.t_minus - cf.t_minus), label.str());
                    t.update(std::fabs(tv.vcv_plus - cf.vcv_plus), label.str());
                    t.update(std::fabs(tv.vcv_minus - cf.vcv_minus), label.str());
                    ++cases;
                }

    for (double v : {1.0, 0.5, 0.25, 0.1})
        for (double ec : {1.0, 0.8, 0.5})
            for (double ed : {1.0, 0.8, 0.5})
                for (double ee : {1.0, 0.8, 0.5})
                    for (int i = 0; i <= 60; ++i) {
                        const double lam = 0.05 * i;
                        QuantumTeleporterParams p;
                        p.v_sqz = v;
                        p.lambda_plus = lam;
                        p.lambda_minus = -lam;
                        p.eta_c = ec;
                        p.eta_d = ed;
                        p.eta_e = ee;
                        const TeleporterInstance inst = build_quantum(p);
                        const auto want = closed_form_quantum(v, 1.0 / v, v, 1.0 / v, ec, ed, ee,
                                                              lam, -lam, 1.0, 1.0);
                        const double gp = variance(inst.output, 0.0, DensityKind::noise);
                        const double gm = variance(inst.output, kHalfPi, DensityKind::noise);
                        std::ostringstream label;
                        label << "quantum v=" << v << " lam=" << lam << " etas=" << ec << ","
                              << ed << "," << ee;
                        t.update(std::fabs(gp - want.first) / std::max(1.0, want.first),
                                 label.str());
                        t.update(std::fabs(gm - want.second) / std::max(1.0, want.second),
                                 label.str());
                        ++cases;
                    }

    const std::pair<double, double> gain_pairs[] = {{0.7, -1.3}, {1.2, -0.4}};
    for (double v : {0.5, 0.1})
        for (double ec : {1.0, 0.8})
            for (double ee : {1.0, 0.7})
                for (auto gains : gain_pairs) {
                    QuantumTeleporterParams p;
                    p.v_sqz = v;
                    p.eta_c = ec;
                    p.eta_d = 0.9;
                    p.eta_e = ee;
                    p.lambda_plus = gains.first;
                    p.lambda_minus = gains.second;
                    p.input_noise_plus = 0.5;
                    p.input_noise_minus = 2.0;
                    const TeleporterInstance inst = build_quantum(p);
                    const auto want =
                        closed_form_quantum(v, 1.0 / v, v, 1.0 / v, ec, 0.9, ee, gains.first,
                                            gains.second, 0.5, 2.0);
                    std::ostringstream label;
                    label << "quantum asymmetric v=" << v << " gains=" << gains.first << ","
                          << gains.second;
                    t.update(std::fabs(variance(inst.output, 0.0, DensityKind::noise) -
                                       want.first),
                             label.str());
                    t.update(std::fabs(variance(inst.output, kHalfPi, DensityKind::noise) -
                                       want.second),
                             label.str());
                    ++cases;
                }

    return make_result("closed-form-oracle", t, tol.oracle, cases);
}

SuiteResult commutator_preservation(const VerifyTolerances& tol, std::uint64_t seed,
                                    std::size_t sequences) {
    WorstTracker t;
    std::size_t cases = 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> gain(-2.0, 2.0);

    for (std::size_t s = 0; s < sequences; ++s) {
        auto space = std::make_shared<SourceSpace>();
        std::vector<FieldState> pool;
        pool.push_back(field_of(space, space->make_vacuum()));
        pool.push_back(field_of(space, space->make_vacuum()));
        pool.push_back(squeeze_opa(field_of(space, space->make_vacuum()), 2.5));
        pool.push_back(field_of(
            space, space->make_source(SourceKind::coherent_seed, 1.5, 1.2, 2.0, 0.0)));
        pool.push_back(field_of(
            space, space->make_source(SourceKind::squeezed_ancilla, 0.25, 4.0, 0.0, 0.0)));
        pool.push_back(field_of(
            space, space->make_source(SourceKind::coherent_seed, 1.0, 1.0, 3.0, 1.0)));

        for (int op = 0; op < 12; ++op) {
            const double pick = unit(rng);
            const auto index = [&](std::size_t exclude = SIZE_MAX) {
                std::size_t i;
                do {
                    i = static_cast<std::size_t>(unit(rng) * static_cast<double>(pool.size()));
                    i = std::min(i, pool.size() - 1);
                } while (i == exclude);
                return i;
            };
            if (pick < 0.30 && pool.size() >= 2) {
                const std::size_t i = index();
                const std::size_t j = index(i);
                auto split = beamsplitter(pool[i], pool[j], unit(rng));
                pool[i] = split.first;
                pool[j] = split.second;
            } else if (pick < 0.50) {
                const std::size_t i = index();
                pool[i] = phase_shift(pool[i], angle(rng));
            } else if (pick < 0.65) {
                const std::size_t i = index();
                pool[i] = squeeze_opa(pool[i], 1.0 + 2.0 * unit(rng));
            } else if (pick < 0.80) {
                const std::size_t i = index();
                pool[i] = attenuate(pool[i], 0.05 + 0.95 * unit(rng), space->make_vacuum());
            } else if (pool.size() >= 3) {
                const std::size_t i = index();
                const std::size_t j = index(i);
                const PhotocurrentForm current = homodyne(pool[i], angle(rng));
                const Quadrature q =
                    unit(rng) < 0.5 ? Quadrature::amplitude : Quadrature::phase;
                pool[j] = modulate(pool[j], current, gain(rng), q);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                const std::size_t i = index();
                pool[i] = phase_shift(pool[i], angle(rng));
            }
        }

        for (const FieldState& f : pool) {
            std::ostringstream label;
            label << "sequence " << s;
            t.update(std::fabs(commutator_norm(f) - 1.0), label.str());
            const double theta = angle(rng);
            const double product = variance(f, theta, DensityKind::noise) *
                                   variance(f, theta + kHalfPi, DensityKind::noise);
            t.update(std::max(0.0, 1.0 - product), label.str() + " uncertainty");
            ++cases;
        }
    }

    return make_result("commutator-preservation", t, tol.commutator, cases);
}

SuiteResult classical_limits(const VerifyTolerances& tol) {
    WorstTracker t;
    std::size_t cases = 0;
    std::string violation;

    const std::pair<double, double> inputs[] = {{1.0, 1.0}, {0.1, 10.0}};
    for (auto input : inputs)
        for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (int i = 0; i <= 20; ++i) {
                const double scale = 0.1 * i;
                ClassicalTeleporterParams p;
                p.eta = eta;
                p.lambda_plus = scale;
                p.lambda_minus = -scale;
                p.input_noise_plus = input.first;
                p.input_noise_minus = input.second;
                const TVPoint tv = eval_classical(p);
                const bool min_unc =
                    std::fabs(input.first * input.second - 1.0) <= 1e-9;
                const ClassicalLimitFlags flags = classical_limit_flags(tv, min_unc);
                if (flags.breaks_tq || flags.breaks_vq) {
                    std::ostringstream os;
                    os << "limit broken at eta=" << eta << " scale=" << scale
                       << " input=" << input.first << "," << input.second
                       << " t_q=" << tv.t_q << " v_q=" << tv.v_q;
                    violation = os.str();
                }
                // Unit-vacuum receiver gives Vcv+ = 1 + l+^2 (1 - eta) and
                // Vcv- = 1 + l-^2 eta on a coherent input.
                if (input.first == 1.0 && input.second == 1.0) {
                    std::ostringstream label;
                    label << "conditional variance eta=" << eta << " scale=" << scale;
                    t.update(std::fabs(tv.vcv_plus - (1.0 + scale * scale * (1.0 - eta))),
                             label.str());
                    t.update(std::fabs(tv.vcv_minus - (1.0 + scale * scale * eta)),
                             label.str());
                    t.update(std::fabs(tv.v_q - (1.0 + 0.5 * scale * scale)), label.str());
                }
                ++cases;
            }

    // Detecting only the amplitude quadrature leaves V_q pinned at the
    // vacuum floor for every gain.
    for (int i = 0; i <= 20; ++i) {
        const double lam = 0.2 * i;
        ClassicalTeleporterParams p;
        p.eta = 1.0;
        p.lambda_plus = lam;
        p.lambda_minus = 0.0;
        const TVPoint tv = eval_classical(p);
        std::ostringstream label;
        label << "asymmetric v_q lam=" << lam;
        t.update(std::fabs(tv.v_q - 1.0), label.str());
        ++cases;
    }

    SuiteResult r = make_result("classical-limits", t, tol.classical_limit, cases);
    if (!violation.empty()) {
        r.passed = false;
        r.detail += "; " + violation;
    }
    return r;
}

SuiteResult transfer_variance_identity(const VerifyTolerances& tol) {
    WorstTracker t;
    std::size_t cases = 0;

    const auto check = [&](const TVPoint& tv, const std::string& label) {
        t.update(std::fabs(tv.vcv_plus - (1.0 - tv.t_plus) * tv.vout_plus), label);
        t.update(std::fabs(tv.vcv_minus - (1.0 - tv.t_minus) * tv.vout_minus), label);
        ++cases;
    };

    for (double eta : {0.25, 0.5, 0.75})
        for (int i = 0; i <= 10; ++i) {
            const double scale = 0.2 * i;
            ClassicalTeleporterParams p;
            p.eta = eta;
            p.lambda_plus = scale;
            p.lambda_minus = -scale;
            p.input_noise_plus = 0.5;
            p.input_noise_minus = 2.5;
            std::ostringstream label;
            label << "classical eta=" << eta << " scale=" << scale;
            check(eval_classical(p), label.str());
        }

    for (double v : {1.0, 0.5, 0.1})
        for (double ee : {1.0, 0.7})
            for (int i = 0; i <= 8; ++i) {
                const double scale = 0.25 * i;
                QuantumTeleporterParams p;
                p.v_sqz = v;
                p.eta_e = ee;
                p.lambda_plus = scale;
                p.lambda_minus = -scale;
                std::ostringstream label;
                label << "quantum v=" << v << " eta_e=" << ee << " scale=" << scale;
                check(eval_quantum(p), label.str());
            }

    return make_result("transfer-variance-identity", t, tol.identity, cases);
}

SuiteResult quadrature_angle_noise(const VerifyTolerances& tol) {
    WorstTracker t;
    std::size_t cases = 0;

    for (double v : {0.5, 0.1}) {
        QuantumTeleporterParams p;
        p.v_sqz = v;
        const TeleporterInstance inst = build_quantum(p);
        for (int k = 0; k < 32; ++k) {
            const double theta = static_cast<double>(k) * std::numbers::pi / 32.0;
            const double want = variance(inst.input, theta, DensityKind::noise) + 2.0 * v;
            std::ostringstream label;
            label << "opa v=" << v << " theta=" << theta;
            t.update(std::fabs(quadrature_variance_theta(inst, theta) - want), label.str());
            ++cases;
        }
    }

    {
        QuantumTeleporterParams p;
        p.ancilla_a_noise = std::make_pair(0.3, 4.0);
        p.ancilla_b_noise = std::make_pair(0.6, 2.0);
        p.input_noise_plus = 0.5;
        p.input_noise_minus = 2.0;
        const TeleporterInstance inst = build_quantum(p);
        for (int k = 0; k < 32; ++k) {
            const double theta = static_cast<double>(k) * std::numbers::pi / 32.0;
            const double c = std::cos(theta), s = std::sin(theta);
            const double want = variance(inst.input, theta, DensityKind::noise) +
                                2.0 * c * c * 0.3 + 2.0 * s * s * 0.6;
            std::ostringstream label;
            label << "ancilla theta=" << theta;
            t.update(std::fabs(quadrature_variance_theta(inst, theta) - want), label.str());
            ++cases;
        }
    }

    return make_result("quadrature-angle-noise", t, tol.quadrature, cases);
}

SuiteResult operating_point_checks(const VerifyTolerances& tol) {
    SuiteResult r;
    r.name = "operating-points";
    r.passed = true;
    WorstTracker t;
    std::size_t cases = 0;
    std::string failure;

    const auto expect = [&](bool condition, const std::string& what) {
        if (!condition && failure.empty()) failure = what;
    };

    for (double v : {0.5, 0.25, 0.1}) {
        QuantumTeleporterParams p;
        p.v_sqz = v;
        const OperatingPoints op = find_operating_points(p, 0.05, 3.0);
        std::ostringstream label;
        label << "v=" << v;

        expect(op.formulas_bounded, label.str() + " formulas unbounded");
        const double va_minus = 1.0 / v;
        t.update(std::fabs(op.lambda_g_formula - (va_minus + 1.0) / (va_minus - 1.0)),
                 label.str() + " gain formula");
        t.update(std::fabs(op.lambda_g_formula * op.lambda_eta_formula - 1.0),
                 label.str() + " reciprocal gains");
        t.update(op.amplifier_residual, label.str() + " amplifier residual");
        t.update(op.attenuator_residual, label.str() + " attenuator residual");
        t.update(op.unity_residual, label.str() + " unity residual");

        const double tq_arg = (1.0 + v * v) / (1.0 - v * v);
        expect(std::fabs(op.lambda_tq_max - tq_arg) <= 1e-6,
               label.str() + " transfer argmax off formula");
        expect(std::fabs(op.lambda_vq_min - 1.0 / tq_arg) <= 1e-6,
               label.str() + " correlation argmin off formula");
        expect(op.tq_unimodal && op.vq_unimodal, label.str() + " not unimodal");
        expect(op.tq_interior && op.vq_interior, label.str() + " extremum on boundary");
        cases += 8;
    }

    {
        QuantumTeleporterParams p;
        p.v_sqz = 1.0;
        const OperatingPoints op = find_operating_points(p, 0.05, 3.0);
        expect(!op.formulas_bounded, "v=1 formulas should be unbounded");
        expect(!op.tq_interior, "v=1 transfer max should sit on the boundary");
        expect(!op.vq_interior, "v=1 correlation min should sit on the boundary");
        t.update(op.unity_residual, "v=1 unity residual");
        cases += 4;
    }

    r = make_result("operating-points", t, tol.operating_points, cases);
    if (!failure.empty()) {
        r.passed = false;
        r.detail += "; " + failure;
    }
    return r;
}

SuiteResult loss_threshold_checks() {
    SuiteResult r;
    r.name = "loss-threshold";
    r.passed = true;
    std::string failure;
    const auto expect = [&](bool condition, const std::string& what) {
        if (!condition && failure.empty()) failure = what;
    };
    const std::vector<double> lambdas = default_lambda_grid();

    const auto cells = loss_threshold_scan({0.4, 0.45, 0.55, 0.6}, {1.0}, lambdas);
    expect(cells[0].quantum_quadrant, "v=0.40 ideal should reach the quadrant");
    expect(cells[1].quantum_quadrant, "v=0.45 ideal should reach the quadrant");
    expect(!cells[2].quantum_quadrant, "v=0.55 ideal should stay classical");
    expect(!cells[3].quantum_quadrant, "v=0.60 ideal should stay classical");

    const auto lossy = loss_threshold_scan({0.1, 0.25}, {0.3, 0.5}, lambdas);
    for (const ThresholdCell& cell : lossy) {
        std::ostringstream os;
        os << "eta_e=" << cell.eta_e << " v=" << cell.v_sqz
           << " should stay classical at half detection";
        expect(!cell.quantum_quadrant, os.str());
    }

    const auto recover = loss_threshold_scan({0.1}, {0.6}, lambdas);
    expect(recover[0].quantum_quadrant, "v=0.1 eta_e=0.6 should reach the quadrant");

    r.passed = failure.empty();
    r.detail = r.passed ? "9 threshold cells match expectations" : failure;
    return r;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
    std::vector<SuiteResult> results;
    results.push_back(closed_form_oracle(options.tolerances));
    results.push_back(commutator_preservation(options.tolerances, options.seed,
                                              options.sequences));
    results.push_back(classical_limits(options.tolerances));
    results.push_back(transfer_variance_identity(options.tolerances));
    results.push_back(quadrature_angle_noise(options.tolerances));
    results.push_back(operating_point_checks(options.tolerances));
    results.push_back(loss_threshold_checks());
    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.passed; });
}

}  // namespace qtele
