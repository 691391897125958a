#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace encharm {

struct SpectralLine {
    double amplitude = 0.0;  // rad, >= 0
    double phase = 0.0;      // rad
};

/// Harmonic decomposition of an angular error:
///
///   e(phi) = H_0 cos(phase_0) + sum_{n >= 1} H_n sin(n phi + phase_n)
///
/// Order 0 stores |DC| with phase 0 (non-negative) or pi (negative). Other
/// phases lie in [-pi, pi). Orders that were never set read as zero.
class HarmonicSpectrum {
public:
    void set(int order, double amplitude, double phase);
    /// Stores a signed DC value using the 0 / pi phase convention.
    void set_dc(double value);

    [[nodiscard]] double amplitude(int order) const;
    [[nodiscard]] double phase(int order) const;
    [[nodiscard]] double dc_value() const;
    [[nodiscard]] bool contains(int order) const { return lines_.contains(order); }

    [[nodiscard]] const std::map<int, SpectralLine>& lines() const { return lines_; }
    [[nodiscard]] int max_order() const { return lines_.empty() ? -1 : lines_.rbegin()->first; }

    /// Orders sorted by decreasing amplitude (ties by order), optionally
    /// skipping order 0.
    [[nodiscard]] std::vector<int> dominant_orders(std::size_t count, bool include_dc = false) const;

    /// Largest amplitude among orders >= 1.
    [[nodiscard]] double max_harmonic_amplitude() const;

    /// Copy restricted to orders <= max_order.
    [[nodiscard]] HarmonicSpectrum truncated(int max_order) const;

    [[nodiscard]] double evaluate(double phi) const;

    /// Samples the reconstruction on the grid phi_k = 2 pi k / N.
    [[nodiscard]] std::vector<double> sample(std::size_t samples) const;

private:
    std::map<int, SpectralLine> lines_;
};

}  // namespace encharm
