#include "core/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "core/parallel.hpp"

namespace qtele {

namespace {

double grid_value(const SweepSpec& spec, std::size_t i) {
    if (spec.points == 1) return spec.lo;
    return spec.lo + static_cast<double>(i) * (spec.hi - spec.lo) /
                         static_cast<double>(spec.points - 1);
}

TVPoint eval_at(const SweepSpec& spec, double value) {
    if (std::holds_alternative<ClassicalTeleporterParams>(spec.base)) {
        if (spec.parameter != SweptParameter::gain) {
            throw std::invalid_argument("classical circuits only sweep the gain parameter");
        }
        ClassicalTeleporterParams p = std::get<ClassicalTeleporterParams>(spec.base);
        p.lambda_plus *= value;
        p.lambda_minus *= value;
        return eval_classical(p);
    }
    QuantumTeleporterParams p = std::get<QuantumTeleporterParams>(spec.base);
    switch (spec.parameter) {
        case SweptParameter::gain:
            p.lambda_plus *= value;
            p.lambda_minus *= value;
            break;
        case SweptParameter::v_sqz:
            p.v_sqz = value;
            break;
        case SweptParameter::eta_c:
            p.eta_c = value;
            break;
        case SweptParameter::eta_d:
            p.eta_d = value;
            break;
        case SweptParameter::eta_e:
            p.eta_e = value;
            break;
    }
    return eval_quantum(p);
}

// Golden-section refinement of a maximum of f inside [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

struct ExtremumScan {
    double arg = 0.0;
    double value = 0.0;
    bool unimodal = false;
    bool interior = false;
};

// Coarse 0.01-step scan followed by golden-section refinement to 1e-8.
// Unimodality is judged by the sign changes of the discrete differences.
template <typename F>
ExtremumScan scan_maximum(F&& f, double lo, double hi) {
    constexpr double step = 0.01;
    const std::size_t n = static_cast<std::size_t>(std::floor((hi - lo) / step)) + 1;
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = f(lo + static_cast<double>(i) * step);

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (values[i] > values[best]) best = i;

    int transitions = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = values[i] - values[i - 1];
        const int sign = d > 1e-14 ? 1 : (d < -1e-14 ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++transitions;
        last_sign = sign;
    }

    ExtremumScan out;
    out.unimodal = transitions <= 1;
    out.interior = best > 0 && best + 1 < n;
    if (out.interior) {
        const double a = lo + static_cast<double>(best - 1) * step;
        const double b = lo + static_cast<double>(best + 1) * step;
        out.arg = golden_max(f, a, b, 1e-8);
    } else {
        out.arg = lo + static_cast<double>(best) * step;
    }
    out.value = f(out.arg);
    return out;
}

}  // namespace

TVPoint eval_classical(const ClassicalTeleporterParams& params) {
    const TeleporterInstance inst = build_classical(params);
    return tv_point(inst.input, inst.output, params.lambda_plus, params.lambda_minus);
}

TVPoint eval_quantum(const QuantumTeleporterParams& params) {
    const TeleporterInstance inst = build_quantum(params);
    return tv_point(inst.input, inst.output, params.lambda_plus, params.lambda_minus);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.points == 0) throw std::invalid_argument("sweep needs at least one grid point");
    if (!(spec.lo <= spec.hi)) throw std::invalid_argument("sweep range must satisfy lo <= hi");

    std::vector<SweepRow> rows(spec.points);
    parallel_for(spec.points, [&](std::size_t i) {
        const double value = grid_value(spec, i);
        try {
            rows[i].swept_value = value;
            rows[i].point = eval_at(spec, value);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep point " + std::to_string(value) + ": " + e.what());
        }
    });
    return rows;
}

double equivalence_residual(const QuantumTeleporterParams& params, double lambda,
                            EquivalenceModel model) {
    if (params.eta_c != 1.0 || params.eta_d != 1.0 || params.eta_e != 1.0) {
        throw std::invalid_argument("equivalence models apply to the lossless scheme only");
    }
    QuantumTeleporterParams p = params;
    p.lambda_plus = lambda;
    p.lambda_minus = -lambda;
    const TeleporterInstance inst = build_quantum(p);
    const double vout_p = variance(inst.output, 0.0, DensityKind::noise);
    const double vout_m = variance(inst.output, std::numbers::pi / 2.0, DensityKind::noise);

    const double l2 = lambda * lambda;
    double model_p = 0.0, model_m = 0.0;
    switch (model) {
        case EquivalenceModel::amplifier:
            model_p = l2 * p.input_noise_plus + (l2 - 1.0);
            model_m = l2 * p.input_noise_minus + (l2 - 1.0);
            break;
        case EquivalenceModel::attenuator:
            model_p = l2 * p.input_noise_plus + (1.0 - l2);
            model_m = l2 * p.input_noise_minus + (1.0 - l2);
            break;
        case EquivalenceModel::unity_channel:
            model_p = p.input_noise_plus + 2.0 * p.v_sqz;
            model_m = p.input_noise_minus + 2.0 * p.v_sqz;
            break;
    }
    return std::max(std::fabs(vout_p - model_p), std::fabs(vout_m - model_m));
}

OperatingPoints find_operating_points(const QuantumTeleporterParams& params, double lo,
                                      double hi) {
    if (params.eta_c != 1.0 || params.eta_d != 1.0 || params.eta_e != 1.0) {
        throw std::invalid_argument("operating points are defined for the lossless scheme");
    }
    if (!(lo >= 0.0) || !(hi > lo)) {
        throw std::invalid_argument("operating point search interval must satisfy 0 <= lo < hi");
    }

    OperatingPoints op;
    const double va_minus = 1.0 / params.v_sqz;
    if (va_minus > 1.0) {
        op.lambda_g_formula = (va_minus + 1.0) / (va_minus - 1.0);
        op.lambda_eta_formula = (va_minus - 1.0) / (va_minus + 1.0);
        op.formulas_bounded = true;
    } else {
        op.lambda_g_formula = std::numeric_limits<double>::infinity();
        op.lambda_eta_formula = 0.0;
        op.formulas_bounded = false;
    }

    const auto tq_of = [&](double lambda) {
        QuantumTeleporterParams p = params;
        p.lambda_plus = lambda;
        p.lambda_minus = -lambda;
        return eval_quantum(p).t_q;
    };
    const auto neg_vq_of = [&](double lambda) {
        QuantumTeleporterParams p = params;
        p.lambda_plus = lambda;
        p.lambda_minus = -lambda;
        return -eval_quantum(p).v_q;
    };

    const ExtremumScan tq = scan_maximum(tq_of, lo, hi);
    op.lambda_tq_max = tq.arg;
    op.tq_max = tq.value;
    op.tq_unimodal = tq.unimodal;
    op.tq_interior = tq.interior;

    const ExtremumScan vq = scan_maximum(neg_vq_of, lo, hi);
    op.lambda_vq_min = vq.arg;
    op.vq_min = -vq.value;
    op.vq_unimodal = vq.unimodal;
    op.vq_interior = vq.interior;

    if (op.formulas_bounded) {
        op.amplifier_residual =
            equivalence_residual(params, op.lambda_g_formula, EquivalenceModel::amplifier);
        op.attenuator_residual =
            equivalence_residual(params, op.lambda_eta_formula, EquivalenceModel::attenuator);
    } else {
        op.amplifier_residual = std::numeric_limits<double>::quiet_NaN();
        op.attenuator_residual = std::numeric_limits<double>::quiet_NaN();
    }
    op.unity_residual = equivalence_residual(params, 1.0, EquivalenceModel::unity_channel);
    return op;
}

std::vector<ThresholdCell> loss_threshold_scan(const std::vector<double>& v_sqz_grid,
                                               const std::vector<double>& eta_e_grid,
                                               const std::vector<double>& lambda_grid) {
    if (v_sqz_grid.empty() || eta_e_grid.empty() || lambda_grid.empty()) {
        throw std::invalid_argument("threshold scan grids must be non-empty");
    }
    std::vector<ThresholdCell> cells(v_sqz_grid.size() * eta_e_grid.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        ThresholdCell& cell = cells[i];
        cell.v_sqz = v_sqz_grid[i / eta_e_grid.size()];
        cell.eta_e = eta_e_grid[i % eta_e_grid.size()];
        for (double lambda : lambda_grid) {
            QuantumTeleporterParams p;
            p.v_sqz = cell.v_sqz;
            p.eta_e = cell.eta_e;
            p.lambda_plus = lambda;
            p.lambda_minus = -lambda;
            const TVPoint tv = eval_quantum(p);
            const ClassicalLimitFlags flags = classical_limit_flags(tv, true);
            if (flags.quantum_quadrant) {
                cell.quantum_quadrant = true;
                cell.best_lambda = lambda;
                break;
            }
        }
    });
    return cells;
}

std::vector<double> default_squeezing_grid() {
    std::vector<double> grid(21);
    for (int i = 0; i <= 20; ++i) {
        grid[i] = std::pow(10.0, -2.0 + 2.0 * static_cast<double>(i) / 20.0);
    }
    grid.back() = 1.0;
    return grid;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid(61);
    for (int i = 0; i <= 60; ++i) grid[i] = 0.05 * static_cast<double>(i);
    return grid;
}

}  // namespace qtele
