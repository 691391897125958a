#include "encharm/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "encharm/angles.hpp"
#include "encharm/errors.hpp"

namespace encharm {

void HarmonicSpectrum::set(int order, double amplitude, double phase) {
    if (order < 0) throw InvalidInput("spectrum orders must be non-negative");
    if (order == 0) {
        set_dc(amplitude * std::cos(phase));
        return;
    }
    if (amplitude < 0.0) {
        amplitude = -amplitude;
        phase += kPi;
    }
    lines_[order] = {amplitude, wrap_phase(phase)};
}

void HarmonicSpectrum::set_dc(double value) { lines_[0] = {std::abs(value), value < 0.0 ? kPi : 0.0}; }

double HarmonicSpectrum::amplitude(int order) const {
    auto it = lines_.find(order);
    return it == lines_.end() ? 0.0 : it->second.amplitude;
}

double HarmonicSpectrum::phase(int order) const {
    auto it = lines_.find(order);
    return it == lines_.end() ? 0.0 : it->second.phase;
}

double HarmonicSpectrum::dc_value() const {
    auto it = lines_.find(0);
    if (it == lines_.end()) return 0.0;
    return it->second.phase == 0.0 ? it->second.amplitude : -it->second.amplitude;
}

std::vector<int> HarmonicSpectrum::dominant_orders(std::size_t count, bool include_dc) const {
    std::vector<std::pair<int, double>> v;
    for (const auto& [n, line] : lines_)
        if (include_dc || n != 0) v.emplace_back(n, line.amplitude);
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    std::vector<int> out;
    for (std::size_t i = 0; i < std::min(count, v.size()); ++i) out.push_back(v[i].first);
    return out;
}

double HarmonicSpectrum::max_harmonic_amplitude() const {
    double m = 0.0;
    for (const auto& [n, line] : lines_)
        if (n != 0) m = std::max(m, line.amplitude);
    return m;
}

HarmonicSpectrum HarmonicSpectrum::truncated(int max_order) const {
    HarmonicSpectrum out;
    for (const auto& [n, line] : lines_)
        if (n <= max_order) out.lines_[n] = line;
    return out;
}

double HarmonicSpectrum::evaluate(double phi) const {
    double v = 0.0;
    for (const auto& [n, line] : lines_) {
        if (n == 0)
            v += dc_value();
        else
            v += line.amplitude * std::sin(n * phi + line.phase);
    }
    return v;
}

std::vector<double> HarmonicSpectrum::sample(std::size_t samples) const {
    std::vector<double> out(samples, dc_value());
    if (samples == 0) return out;
    // sin(n phi_k + c) = sin(c) cos(2 pi nk/N) + cos(c) sin(2 pi nk/N) with the
    // twiddle index taken modulo N.
    std::vector<double> sin_table(samples), cos_table(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
        sin_table[j] = std::sin(x);
        cos_table[j] = std::cos(x);
    }
    for (const auto& [n, line] : lines_) {
        if (n == 0) continue;
        const double s = line.amplitude * std::sin(line.phase);
        const double c = line.amplitude * std::cos(line.phase);
        const auto step = static_cast<std::size_t>(n) % samples;
        std::size_t idx = 0;
        for (std::size_t k = 0; k < samples; ++k) {
            out[k] += s * cos_table[idx] + c * sin_table[idx];
            idx += step;
            if (idx >= samples) idx -= samples;
        }
    }
    return out;
}

}  // namespace encharm
