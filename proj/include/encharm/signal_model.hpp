#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "encharm/angles.hpp"

namespace encharm {

/// One disturbance term of order n superimposed on both encoder channels:
///
///   a += A sin(n phi + theta),   b += B cos(n phi + psi)
///
/// Order 0 encodes DC offsets. Its canonical form is theta = pi/2, psi = 0 with
/// signed amplitudes, so that A and B read directly as the channel offsets.
struct HarmonicComponent {
    int n = 0;
    double A = 0.0;
    double theta = 0.0;
    double B = 0.0;
    double psi = 0.0;

    /// Phase difference between the cosine and sine channel terms.
    [[nodiscard]] double delta() const { return psi - theta; }

    [[nodiscard]] double sine_term(double phi) const;
    [[nodiscard]] double cosine_term(double phi) const;

    friend bool operator==(const HarmonicComponent&, const HarmonicComponent&) = default;
};

/// Folds negative amplitudes into a pi phase shift and wraps phases into
/// [-pi, pi). Order-0 terms are rewritten to the (pi/2, 0) offset encoding.
/// The synthesized signal is unchanged.
[[nodiscard]] HarmonicComponent canonicalize(const HarmonicComponent& c);

/// Order-0 component carrying the offsets (a0, b0).
[[nodiscard]] HarmonicComponent offset_component(double a0, double b0);

/// Parameters of the order-p harmonic that carries the angle, plus raw DC
/// offsets.
struct MainHarmonicParams {
    int p = 1;
    double Ap = 1.0;
    double Bp = 1.0;
    double theta_p = 0.0;
    double psi_p = 0.0;
    double A0 = 0.0;
    double B0 = 0.0;

    /// Phase lead of the sine channel over the cosine reference, i.e. the
    /// angle d in a = Ap sin(p phi + d) once the cosine channel is taken as
    /// the phase reference.
    [[nodiscard]] double delta_p() const { return theta_p - psi_p; }

    [[nodiscard]] bool is_ideal() const {
        return Ap == 1.0 && Bp == 1.0 && theta_p == 0.0 && psi_p == 0.0 && A0 == 0.0 &&
               B0 == 0.0;
    }

    [[nodiscard]] static MainHarmonicParams ideal(int p) { return MainHarmonicParams{.p = p}; }

    friend bool operator==(const MainHarmonicParams&, const MainHarmonicParams&) = default;
};

/// Full signal model: main harmonic plus a list of disturbances.
///
/// Construction canonicalizes every disturbance and merges components that share
/// an order by phasor addition, so each order appears at most once. Components
/// whose amplitudes cancel to exactly zero are dropped. The result is sorted by
/// order.
class EncoderSpec {
public:
    EncoderSpec(MainHarmonicParams main, std::vector<HarmonicComponent> disturbances);

    /// Spec with an ideal unit main harmonic of order p.
    [[nodiscard]] static EncoderSpec normalized(int p, std::vector<HarmonicComponent> disturbances);

    [[nodiscard]] const MainHarmonicParams& main() const { return main_; }
    [[nodiscard]] int periodicity() const { return main_.p; }
    [[nodiscard]] std::span<const HarmonicComponent> disturbances() const { return disturbances_; }

    /// True when the main harmonic is exactly sin(p phi), cos(p phi).
    [[nodiscard]] bool is_normalized() const { return main_.is_ideal(); }

    /// Largest harmonic order present, including p.
    [[nodiscard]] int max_order() const;

    [[nodiscard]] double sine_channel(double phi) const;
    [[nodiscard]] double cosine_channel(double phi) const;

private:
    MainHarmonicParams main_;
    std::vector<HarmonicComponent> disturbances_;
};

/// Sampled realization of both channels over one mechanical revolution on the
/// uniform grid phi_k = 2 pi k / N.
struct SignalTrace {
    std::vector<double> phi;
    std::vector<double> a;
    std::vector<double> b;

    [[nodiscard]] std::size_t size() const { return phi.size(); }
};

inline constexpr std::size_t kDefaultSamples = 4096;

/// Sample angle of index k on an N-point grid.
[[nodiscard]] inline double grid_angle(std::size_t k, std::size_t n) {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(n);
}

/// Requires N >= 8 * spec.max_order(); throws AliasingError otherwise.
[[nodiscard]] SignalTrace synthesize(const EncoderSpec& spec, std::size_t samples = kDefaultSamples);

/// z = b + i a at a single angle.
[[nodiscard]] std::complex<double> complex_vector(const EncoderSpec& spec, double phi);

/// z split into offset, main harmonic and per-disturbance contributions.
struct VectorParts {
    std::complex<double> offset;
    std::complex<double> main;
    std::vector<std::complex<double>> disturbances;  // order >= 1, same order as spec

    [[nodiscard]] std::complex<double> total() const;
};

[[nodiscard]] VectorParts complex_vector_parts(const EncoderSpec& spec, double phi);

/// Affine map on (a, b) that turns the raw main harmonic described by params
/// into the ideal sin(p phi), cos(p phi): offset removal, per-channel gain,
/// orthogonalization against the cosine channel and removal of the common
/// phase psi_p.
struct MainHarmonicCorrection {
    double a_offset = 0.0;
    double b_offset = 0.0;
    // [a_out; b_out] = M * [a - a_offset; b - b_offset]
    double m_aa = 1.0;
    double m_ab = 0.0;
    double m_ba = 0.0;
    double m_bb = 1.0;

    /// Throws SingularCorrectionError unless |delta_p| < pi/2 and amplitudes are positive.
    [[nodiscard]] static MainHarmonicCorrection from(const MainHarmonicParams& params);

    [[nodiscard]] std::pair<double, double> apply(double a, double b) const;
};

[[nodiscard]] SignalTrace correct_main_harmonic(const SignalTrace& raw, const MainHarmonicParams& params);

/// Applies the correction for spec.main() to the whole spec. Disturbances go
/// through the same linear map; the result has an ideal main harmonic.
[[nodiscard]] EncoderSpec correct_main_harmonic(const EncoderSpec& raw);

/// Scaling factor and main-harmonic imperfections rewritten as equivalent
/// disturbances of orders 0 and p.
struct Normalization {
    double g = 1.0;
    std::vector<HarmonicComponent> equivalents;
};

/// g = (Ap + Bp) / 2. Up to three equivalents are returned, in this order and
/// with signed amplitudes (not canonicalized):
///   offset    n = 0:  A = A0/g, theta = pi/2;  B = B0/g, psi = 0
///   amplitude n = p:  A = Ap/g - 1, theta = 0; B = Bp/g - 1, psi = 0
///   phase     n = p:  A = (Ap/g) 2 sin(theta_p/2), theta = (theta_p + pi)/2
///                     B = (Bp/g) 2 sin(psi_p/2),   psi   = (psi_p + pi)/2
/// The phase entry uses sin(x + d) = sin x + 2 sin(d/2) sin(x + (d + pi)/2) and
/// the cosine counterpart. Entries with zero magnitude are omitted.
[[nodiscard]] Normalization normalize_and_equivalents(const MainHarmonicParams& params);

/// A spec rewritten with unit main harmonic: disturbances divided by g and the
/// equivalents of normalize_and_equivalents() merged in. Sampling the result
/// reproduces the raw signals divided by g.
struct NormalizedSpec {
    EncoderSpec spec;
    Normalization normalization;
};

[[nodiscard]] NormalizedSpec normalize(const EncoderSpec& raw);

}  // namespace encharm
