#include "core/quadcore.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qtele {

namespace {

constexpr double kProductSlack = 1e-12;

bool finite(double x) { return std::isfinite(x); }

void require_same_space(const std::shared_ptr<SourceSpace>& a,
                        const std::shared_ptr<SourceSpace>& b) {
    if (!a || !b || a != b) {
        throw std::invalid_argument("operands belong to different source spaces");
    }
}

void require_unit_range(double eta, const char* name) {
    if (!finite(eta) || eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

bool negligible(const ModeCoeff& c) {
    return c.u == std::complex<double>{} && c.w == std::complex<double>{};
}

void add_coeff(std::map<SourceId, ModeCoeff>& dst, SourceId id, std::complex<double> u,
               std::complex<double> w) {
    auto& slot = dst[id];
    slot.u += u;
    slot.w += w;
    if (negligible(slot)) dst.erase(id);
}

std::pair<double, double> densities(const NoiseSource& s, DensityKind kind) {
    switch (kind) {
        case DensityKind::noise:
            return {s.noise_plus, s.noise_minus};
        case DensityKind::signal:
            return {s.signal_plus, s.signal_minus};
        case DensityKind::total:
            return {s.noise_plus + s.signal_plus, s.noise_minus + s.signal_minus};
    }
    return {0.0, 0.0};
}

}  // namespace

SourceId SourceSpace::make_source(SourceKind kind, double noise_plus, double noise_minus,
                                  double signal_plus, double signal_minus) {
    if (!finite(noise_plus) || !finite(noise_minus) || noise_plus <= 0.0 || noise_minus <= 0.0) {
        throw std::invalid_argument("source noise densities must be positive and finite");
    }
    if (noise_plus * noise_minus < 1.0 - kProductSlack) {
        throw std::invalid_argument("source noise product must satisfy V+ * V- >= 1");
    }
    if (!finite(signal_plus) || !finite(signal_minus) || signal_plus < 0.0 || signal_minus < 0.0) {
        throw std::invalid_argument("source signal powers must be non-negative and finite");
    }
    sources_.push_back(NoiseSource{kind, noise_plus, noise_minus, signal_plus, signal_minus});
    attenuation_taken_.push_back(false);
    return static_cast<SourceId>(sources_.size() - 1);
}

SourceId SourceSpace::make_vacuum() {
    return make_source(SourceKind::vacuum, 1.0, 1.0, 0.0, 0.0);
}

const NoiseSource& SourceSpace::source(SourceId id) const {
    if (id >= sources_.size()) throw std::out_of_range("unknown source id");
    return sources_[id];
}

bool SourceSpace::attenuation_slot_taken(SourceId id) const {
    if (id >= attenuation_taken_.size()) throw std::out_of_range("unknown source id");
    return attenuation_taken_[id];
}

void SourceSpace::take_attenuation_slot(SourceId id) {
    if (id >= attenuation_taken_.size()) throw std::out_of_range("unknown source id");
    attenuation_taken_[id] = true;
}

FieldState field_of(std::shared_ptr<SourceSpace> space, SourceId id, double carrier) {
    if (!space) throw std::invalid_argument("null source space");
    space->source(id);  // bounds check
    FieldState f;
    f.space = std::move(space);
    f.coeffs[id] = ModeCoeff{{1.0, 0.0}, {0.0, 0.0}};
    f.carrier = std::fabs(carrier);
    return f;
}

std::pair<FieldState, FieldState> beamsplitter(const FieldState& f1, const FieldState& f2,
                                               double eta) {
    require_same_space(f1.space, f2.space);
    require_unit_range(eta, "eta");
    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);

    FieldState out1, out2;
    out1.space = f1.space;
    out2.space = f1.space;
    for (const auto& [id, c] : f1.coeffs) {
        add_coeff(out1.coeffs, id, t * c.u, t * c.w);
        add_coeff(out2.coeffs, id, r * c.u, r * c.w);
    }
    for (const auto& [id, c] : f2.coeffs) {
        add_coeff(out1.coeffs, id, r * c.u, r * c.w);
        add_coeff(out2.coeffs, id, -t * c.u, -t * c.w);
    }
    out1.carrier = std::fabs(t * f1.carrier + r * f2.carrier);
    out2.carrier = std::fabs(r * f1.carrier - t * f2.carrier);
    return {out1, out2};
}

FieldState phase_shift(const FieldState& f, double phi) {
    if (!f.space) throw std::invalid_argument("field has no source space");
    const std::complex<double> rot = std::polar(1.0, phi);
    FieldState out;
    out.space = f.space;
    out.carrier = f.carrier;
    for (const auto& [id, c] : f.coeffs) {
        out.coeffs[id] = ModeCoeff{rot * c.u, rot * c.w};
    }
    return out;
}

FieldState squeeze_opa(const FieldState& f, double h) {
    if (!f.space) throw std::invalid_argument("field has no source space");
    if (!finite(h) || h < 1.0) throw std::invalid_argument("opa gain H must be >= 1");
    const double cosh_g = std::sqrt(h);
    const double sinh_g = std::sqrt(h - 1.0);
    FieldState out;
    out.space = f.space;
    out.carrier = (cosh_g - sinh_g) * f.carrier;
    for (const auto& [id, c] : f.coeffs) {
        ModeCoeff n;
        n.u = cosh_g * c.u - sinh_g * std::conj(c.w);
        n.w = cosh_g * c.w - sinh_g * std::conj(c.u);
        if (!negligible(n)) out.coeffs[id] = n;
    }
    return out;
}

FieldState attenuate(const FieldState& f, double eta, SourceId fresh_vacuum) {
    if (!f.space) throw std::invalid_argument("field has no source space");
    require_unit_range(eta, "eta");
    const NoiseSource& vac = f.space->source(fresh_vacuum);
    if (vac.kind != SourceKind::vacuum) {
        throw std::invalid_argument("attenuation replacement source must be a vacuum");
    }
    if (f.space->attenuation_slot_taken(fresh_vacuum)) {
        throw std::invalid_argument("attenuation vacuum source already used");
    }
    if (f.coeffs.count(fresh_vacuum) != 0) {
        throw std::invalid_argument("attenuation vacuum source already present in field");
    }
    f.space->take_attenuation_slot(fresh_vacuum);

    const double t = std::sqrt(eta);
    const double r = std::sqrt(1.0 - eta);
    FieldState out;
    out.space = f.space;
    out.carrier = t * f.carrier;
    for (const auto& [id, c] : f.coeffs) {
        ModeCoeff n{t * c.u, t * c.w};
        if (!negligible(n)) out.coeffs[id] = n;
    }
    if (r != 0.0) add_coeff(out.coeffs, fresh_vacuum, {r, 0.0}, {0.0, 0.0});
    return out;
}

PhotocurrentForm homodyne(const FieldState& f, double theta) {
    if (!f.space) throw std::invalid_argument("field has no source space");
    const std::complex<double> e_m = std::polar(1.0, -theta);
    const std::complex<double> e_p = std::polar(1.0, theta);
    PhotocurrentForm form;
    form.space = f.space;
    for (const auto& [id, c] : f.coeffs) {
        const std::complex<double> g = e_m * c.u + e_p * std::conj(c.w);
        FormCoeff fc{g.real(), -g.imag()};
        if (fc.c_plus != 0.0 || fc.c_minus != 0.0) form.coeffs[id] = fc;
    }
    return form;
}

FieldState modulate(const FieldState& f, const PhotocurrentForm& current, double gain,
                    Quadrature quadrature) {
    require_same_space(f.space, current.space);
    if (!finite(gain)) throw std::invalid_argument("modulation gain must be finite");
    FieldState out = f;
    const std::complex<double> front =
        quadrature == Quadrature::amplitude ? std::complex<double>{gain / 2.0, 0.0}
                                            : std::complex<double>{0.0, gain / 2.0};
    for (const auto& [id, fc] : current.coeffs) {
        // I in mode operators: (c+ - i c-) da + (c+ + i c-) da^dagger.
        const std::complex<double> p{fc.c_plus, -fc.c_minus};
        add_coeff(out.coeffs, id, front * p, front * std::conj(p));
    }
    return out;
}

PhotocurrentForm operator*(double scale, const PhotocurrentForm& form) {
    PhotocurrentForm out;
    out.space = form.space;
    if (scale == 0.0) return out;
    for (const auto& [id, fc] : form.coeffs) {
        out.coeffs[id] = FormCoeff{scale * fc.c_plus, scale * fc.c_minus};
    }
    return out;
}

PhotocurrentForm operator+(const PhotocurrentForm& a, const PhotocurrentForm& b) {
    require_same_space(a.space, b.space);
    PhotocurrentForm out = a;
    for (const auto& [id, fc] : b.coeffs) {
        auto& slot = out.coeffs[id];
        slot.c_plus += fc.c_plus;
        slot.c_minus += fc.c_minus;
        if (slot.c_plus == 0.0 && slot.c_minus == 0.0) out.coeffs.erase(id);
    }
    return out;
}

double variance(const FieldState& f, double theta, DensityKind kind) {
    if (!f.space) throw std::invalid_argument("field has no source space");
    const std::complex<double> e_m = std::polar(1.0, -theta);
    const std::complex<double> e_p = std::polar(1.0, theta);
    double sum = 0.0;
    for (const auto& [id, c] : f.coeffs) {
        const std::complex<double> g = e_m * c.u + e_p * std::conj(c.w);
        const auto [d_plus, d_minus] = densities(f.space->source(id), kind);
        sum += g.real() * g.real() * d_plus + g.imag() * g.imag() * d_minus;
    }
    return sum;
}

double variance(const PhotocurrentForm& form, DensityKind kind) {
    return covariance(form, form, kind);
}

double covariance(const PhotocurrentForm& a, const PhotocurrentForm& b, DensityKind kind) {
    require_same_space(a.space, b.space);
    double sum = 0.0;
    for (const auto& [id, fa] : a.coeffs) {
        auto it = b.coeffs.find(id);
        if (it == b.coeffs.end()) continue;
        const auto [d_plus, d_minus] = densities(a.space->source(id), kind);
        sum += fa.c_plus * it->second.c_plus * d_plus + fa.c_minus * it->second.c_minus * d_minus;
    }
    return sum;
}

double commutator_norm(const FieldState& f) {
    double sum = 0.0;
    for (const auto& [id, c] : f.coeffs) {
        sum += std::norm(c.u) - std::norm(c.w);
    }
    return sum;
}

QuadratureReport quadrature_report(const FieldState& f, double theta) {
    QuadratureReport r;
    r.theta = theta;
    r.noise_variance = variance(f, theta, DensityKind::noise);
    r.signal_power = variance(f, theta, DensityKind::signal);
    r.total_variance = r.noise_variance + r.signal_power;
    r.snr = r.noise_variance > 0.0 ? r.signal_power / r.noise_variance
                                   : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace qtele
