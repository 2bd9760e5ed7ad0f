#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace qtele {

// Linearized sideband model. Every optical field is a linear combination of
// a fixed set of independent underlying modes ("sources"):
//
//     dA = sum_i ( u_i da_i + w_i da_i^dagger )
//
// with complex coefficients u_i, w_i. All spectral densities are vacuum
// normalized: an ideal vacuum mode has unit noise variance in both
// quadratures at the detection sideband, so V+ * V- >= 1 for any physical
// field and a proper mode keeps sum_i (|u_i|^2 - |w_i|^2) == 1.

using SourceId = std::uint32_t;

enum class SourceKind { vacuum, coherent_seed, squeezed_ancilla, signal_carrier };

enum class DensityKind { noise, signal, total };

enum class Quadrature { amplitude, phase };

struct NoiseSource {
    SourceKind kind = SourceKind::vacuum;
    // Noise densities must be positive with noise_plus * noise_minus >= 1.
    double noise_plus = 1.0;
    double noise_minus = 1.0;
    // Signal powers are non-negative and ride on top of the noise floor.
    double signal_plus = 0.0;
    double signal_minus = 0.0;
};

// Registry of the independent modes a circuit is built from. Append-only
// while the circuit is assembled, read-only afterwards; concurrent readers
// are safe once building has finished.
class SourceSpace {
  public:
    SourceId make_source(SourceKind kind, double noise_plus, double noise_minus,
                         double signal_plus, double signal_minus);
    SourceId make_vacuum();

    const NoiseSource& source(SourceId id) const;
    std::size_t size() const { return sources_.size(); }

    // Fresh-vacuum bookkeeping for attenuators; each vacuum may back at most
    // one attenuation stage.
    bool attenuation_slot_taken(SourceId id) const;
    void take_attenuation_slot(SourceId id);

  private:
    std::vector<NoiseSource> sources_;
    std::vector<bool> attenuation_taken_;
};

struct ModeCoeff {
    std::complex<double> u{0.0, 0.0};
    std::complex<double> w{0.0, 0.0};
};

struct FieldState {
    std::shared_ptr<SourceSpace> space;
    std::map<SourceId, ModeCoeff> coeffs;
    // Classical carrier amplitude, bookkeeping only; no variance or transfer
    // computation reads it.
    double carrier = 0.0;
};

// Real linear functional over source quadratures, the output of a homodyne
// detector: I = sum_i ( c_plus_i dX+_i + c_minus_i dX-_i ).
struct FormCoeff {
    double c_plus = 0.0;
    double c_minus = 0.0;
};

struct PhotocurrentForm {
    std::shared_ptr<SourceSpace> space;
    std::map<SourceId, FormCoeff> coeffs;
};

struct QuadratureReport {
    double theta = 0.0;
    double noise_variance = 0.0;
    double signal_power = 0.0;
    double total_variance = 0.0;
    double snr = 0.0;  // signal_power / noise_variance, NaN when noise is zero
};

FieldState field_of(std::shared_ptr<SourceSpace> space, SourceId id, double carrier = 0.0);

// out1 = sqrt(eta) f1 + sqrt(1-eta) f2, out2 = sqrt(1-eta) f1 - sqrt(eta) f2.
std::pair<FieldState, FieldState> beamsplitter(const FieldState& f1, const FieldState& f2,
                                               double eta);

// dA -> e^{i phi} dA; variance at angle theta of the output equals the
// variance at theta - phi of the input.
FieldState phase_shift(const FieldState& f, double phi);

// Phase-sensitive amplifier, dA -> sqrt(H) dA - sqrt(H-1) dA^dagger with
// H >= 1. Vacuum in gives V+- = (sqrt(H) -+ sqrt(H-1))^2.
FieldState squeeze_opa(const FieldState& f, double h);

// out = sqrt(eta) f + sqrt(1-eta) vacuum. fresh_vacuum must be a vacuum
// source not referenced by f and not already backing another attenuator.
FieldState attenuate(const FieldState& f, double eta, SourceId fresh_vacuum);

// Quadrature form measured at angle theta: coefficients derive from
// g_i = e^{-i theta} u_i + e^{i theta} conj(w_i) as (Re g_i, -Im g_i).
PhotocurrentForm homodyne(const FieldState& f, double theta);

// Classical feedforward: adds (gain/2) * I to dA (amplitude) or
// i * (gain/2) * I (phase), shifting dX+ respectively dX- by gain * I.
// Preconditions (receiver orthogonal to the measured mode) are not checked
// here; violations surface through the commutator-norm invariant.
FieldState modulate(const FieldState& f, const PhotocurrentForm& current, double gain,
                    Quadrature quadrature);

PhotocurrentForm operator*(double scale, const PhotocurrentForm& form);
PhotocurrentForm operator+(const PhotocurrentForm& a, const PhotocurrentForm& b);

double variance(const FieldState& f, double theta, DensityKind kind);
double variance(const PhotocurrentForm& form, DensityKind kind);

double covariance(const PhotocurrentForm& a, const PhotocurrentForm& b, DensityKind kind);

// sum_i (|u_i|^2 - |w_i|^2); exactly 1 for any properly constructed field.
double commutator_norm(const FieldState& f);

QuadratureReport quadrature_report(const FieldState& f, double theta);

}  // namespace qtele
