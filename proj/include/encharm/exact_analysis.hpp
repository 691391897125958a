#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "encharm/signal_model.hpp"
#include "encharm/spectrum.hpp"

namespace encharm {

/// Electrical angular error sampled over one mechanical revolution.
struct ErrorTrace {
    std::vector<double> phi;
    std::vector<double> delta_phi_p;
    int p = 1;

    [[nodiscard]] std::size_t size() const { return phi.size(); }
    /// Mechanical error, delta_phi_p / p.
    [[nodiscard]] std::vector<double> mechanical() const;
    [[nodiscard]] double max_abs() const;
};

/// Removes 2 pi jumps: result[k] = raw[k] + 2 pi m_k with integer m_k chosen
/// so every successive difference lies in (-pi, pi]. result[0] == raw[0].
[[nodiscard]] std::vector<double> unwrap(std::span<const double> raw);

/// atan2(a, b) per sample, unwrapped. Throws UndefinedAngleError if a = b = 0
/// at any sample.
[[nodiscard]] std::vector<double> atan2_unwrap(const SignalTrace& trace);

/// Error trace from sampled angles (any 2 pi branch) on the uniform grid.
/// The result is shifted by a multiple of 2 pi so its first sample lies in
/// (-pi, pi]; an ideal encoder therefore yields exactly zero.
[[nodiscard]] ErrorTrace error_from_angles(std::span<const double> angles, int p);

/// Exact electrical error atan2(a, b) - p phi of the spec on an N-point grid.
/// Unnormalized specs are sampled as given; the arctangent is invariant to the
/// common scale g.
[[nodiscard]] ErrorTrace exact_error(const EncoderSpec& spec, std::size_t samples = kDefaultSamples);

/// One-sided amplitude/phase spectrum of a sampled periodic signal up to
/// max_order, by direct DFT over the full period (no window):
///   H_n = (2/N) |X_n|, phase_n = arg(i X_n)  for n >= 1
///   H_0 = |X_0| / N with the sign carried as phase 0 / pi.
/// Throws NyquistError unless max_order < N / 2.
[[nodiscard]] HarmonicSpectrum dft_spectrum(std::span<const double> samples, int max_order);

[[nodiscard]] HarmonicSpectrum dft_spectrum(const ErrorTrace& err, int max_order);

}  // namespace encharm
