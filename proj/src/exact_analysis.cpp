#include "encharm/exact_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "encharm/angles.hpp"
#include "encharm/errors.hpp"

namespace encharm {

std::vector<double> ErrorTrace::mechanical() const {
    std::vector<double> out(delta_phi_p);
    for (auto& v : out) v /= static_cast<double>(p);
    return out;
}

double ErrorTrace::max_abs() const {
    double m = 0.0;
    for (double v : delta_phi_p) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> unwrap(std::span<const double> raw) {
    std::vector<double> out(raw.size());
    if (raw.empty()) return out;
    out[0] = raw[0];
    long long turns = 0;
    for (std::size_t k = 1; k < raw.size(); ++k) {
        const double d = raw[k] - raw[k - 1];
        // shift d into (-pi, pi]
        turns += static_cast<long long>(std::floor((kPi - d) / kTwoPi));
        out[k] = raw[k] + kTwoPi * static_cast<double>(turns);
    }
    return out;
}

namespace {

std::vector<double> raw_angles(const SignalTrace& trace) {
    std::vector<double> raw(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
        if (trace.a[k] == 0.0 && trace.b[k] == 0.0) {
            throw UndefinedAngleError("signal vector vanishes at sample " + std::to_string(k) +
                                      "; the angle is undefined");
        }
        raw[k] = std::atan2(trace.a[k], trace.b[k]);
    }
    return raw;
}

}  // namespace

std::vector<double> atan2_unwrap(const SignalTrace& trace) { return unwrap(raw_angles(trace)); }

ErrorTrace error_from_angles(std::span<const double> angles, int p) {
    const auto n = angles.size();
    ErrorTrace err;
    err.p = p;
    err.phi.resize(n);
    err.delta_phi_p = unwrap(angles);
    if (n == 0) return err;

    // first sample lands in (-pi, pi]; phi_0 = 0 so no reference is subtracted there
    double shift = kTwoPi * std::floor((kPi - err.delta_phi_p[0]) / kTwoPi);
    for (std::size_t k = 0; k < n; ++k) {
        err.phi[k] = grid_angle(k, n);
        err.delta_phi_p[k] += shift - static_cast<double>(p) * err.phi[k];
    }
    return err;
}

ErrorTrace exact_error(const EncoderSpec& spec, std::size_t samples) {
    return error_from_angles(raw_angles(synthesize(spec, samples)), spec.periodicity());
}

HarmonicSpectrum dft_spectrum(std::span<const double> samples, int max_order) {
    const auto n = samples.size();
    if (max_order < 0 || 2 * static_cast<std::size_t>(max_order) >= n) {
        throw NyquistError("max order " + std::to_string(max_order) + " must be below N/2 = " +
                           std::to_string(n / 2));
    }
    std::vector<double> sin_table(n), cos_table(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        sin_table[j] = std::sin(x);
        cos_table[j] = std::cos(x);
    }

    HarmonicSpectrum spectrum;
    const double scale = 1.0 / static_cast<double>(n);
    for (int order = 0; order <= max_order; ++order) {
        // X = sum x_k e^{-i 2 pi order k / N}
        double re = 0.0, im = 0.0;
        std::size_t idx = 0;
        const auto step = static_cast<std::size_t>(order) % n;
        for (std::size_t k = 0; k < n; ++k) {
            re += samples[k] * cos_table[idx];
            im -= samples[k] * sin_table[idx];
            idx += step;
            if (idx >= n) idx -= n;
        }
        if (order == 0) {
            spectrum.set_dc(re * scale);
        } else {
            // i X = -im + i re
            spectrum.set(order, 2.0 * scale * std::hypot(re, im), std::atan2(re, -im));
        }
    }
    return spectrum;
}

HarmonicSpectrum dft_spectrum(const ErrorTrace& err, int max_order) { return dft_spectrum(err.delta_phi_p, max_order); }

}  // namespace encharm
