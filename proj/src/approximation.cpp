#include "encharm/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "encharm/angles.hpp"
#include "encharm/errors.hpp"

namespace encharm {

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + carry; }
};

constexpr double kCollectThreshold = 1e-15;

// One Maclaurin variable: an amplitude and the unit sinusoid it multiplies.
struct Variable {
    double amplitude;
    SinusoidTerm factor;
    bool cosine_channel;
};

std::vector<Variable> amplitude_variables(const EncoderSpec& spec) {
    std::vector<Variable> vars;
    for (const auto& c : spec.disturbances()) {
        if (c.A != 0.0) vars.push_back({c.A, {c.n, 1.0, c.theta}, false});
        if (c.B != 0.0) vars.push_back({c.B, {c.n, 1.0, c.psi + kPi / 2}, true});
    }
    return vars;
}

double factorial(int q) {
    double f = 1.0;
    for (int i = 2; i <= q; ++i) f *= i;
    return f;
}

// sin-phase (|alpha| + 2|beta|) pi/2 reduced exactly to one of 0, pi/2, -pi, -pi/2
double quarter_turn_phase(int quarters) {
    switch (((quarters % 4) + 4) % 4) {
        case 0: return 0.0;
        case 1: return kPi / 2;
        case 2: return -kPi;
        default: return -kPi / 2;
    }
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

SinusoidTerm normal_form(SinusoidTerm t) {
    if (t.order == 0) {
        const double v = t.amplitude * std::sin(t.phase);
        return {0, std::abs(v), v < 0.0 ? -kPi / 2 : kPi / 2};
    }
    if (t.order < 0) {
        // sin(-w phi + c) = sin(w phi - c + pi)
        t.order = -t.order;
        t.phase = kPi - t.phase;
    }
    if (t.amplitude < 0.0) {
        t.amplitude = -t.amplitude;
        t.phase += kPi;
    }
    t.phase = wrap_phase(t.phase);
    return t;
}

std::vector<SinusoidTerm> geometric_epsilon(const HarmonicComponent& c, int p) {
    return {
        normal_form({c.n - p, 0.5 * c.A, c.theta}),
        normal_form({c.n - p, 0.5 * c.B, c.psi}),
        normal_form({c.n + p, 0.5 * c.A, c.theta}),
        normal_form({c.n + p, -0.5 * c.B, c.psi}),
    };
}

FirstOrderAmplitudes first_order_amplitudes(const HarmonicComponent& c, int /*p*/) {
    const double cross = 2.0 * c.A * c.B * std::cos(c.delta());
    const double sq = c.A * c.A + c.B * c.B;
    // clamp round-off when the two channels cancel
    return {0.5 * std::sqrt(std::max(0.0, sq + cross)), 0.5 * std::sqrt(std::max(0.0, sq - cross))};
}

std::vector<SinusoidTerm> product_to_sum(std::span<const SinusoidTerm> factors, double scalar) {
    std::vector<SinusoidTerm> varying;
    for (const auto& f : factors) {
        if (f.order == 0)
            scalar *= f.amplitude * std::sin(f.phase);
        else
            varying.push_back(f);
    }
    if (varying.empty()) return {normal_form({0, scalar, kPi / 2})};

    std::vector<SinusoidTerm> current{{varying[0].order, scalar * varying[0].amplitude, varying[0].phase}};
    for (std::size_t i = 1; i < varying.size(); ++i) {
        const auto& f = varying[i];
        std::vector<SinusoidTerm> next;
        next.reserve(2 * current.size());
        for (const auto& t : current) {
            const double amp = 0.5 * t.amplitude * f.amplitude;
            next.push_back({t.order - f.order, amp, t.phase - f.phase + kPi / 2});
            next.push_back({t.order + f.order, amp, t.phase + f.phase - kPi / 2});
        }
        current = std::move(next);
    }
    for (auto& t : current) t = normal_form(t);
    return current;
}

double taylor_term_count(const EncoderSpec& spec, int k) {
    const auto v = static_cast<int>(amplitude_variables(spec).size());
    double count = 0.0;
    for (int q = 1; q <= k; ++q) count += binomial(v + q - 1, q) * std::ldexp(1.0, q);
    return count;
}

TaylorExpansion taylor_terms(const EncoderSpec& spec, int k, const TaylorOptions& options) {
    if (!spec.is_normalized()) throw InvalidInput("Taylor expansion requires a spec with a normalized main harmonic");
    if (k < 1) throw InvalidInput("Taylor order must be at least 1, got " + std::to_string(k));

    const double count = taylor_term_count(spec, k);
    if (count > static_cast<double>(options.term_budget)) {
        throw ResourceError("order-" + std::to_string(k) + " expansion needs " + std::to_string(static_cast<long long>(count)) +
                            " terms, budget is " + std::to_string(options.term_budget));
    }

    const auto vars = amplitude_variables(spec);
    const int p = spec.periodicity();

    TaylorExpansion out;
    out.k = k;
    out.p = p;
    for (const auto& c : spec.disturbances()) out.A_tilde += std::abs(c.A) + std::abs(c.B);
    if (vars.empty()) return out;
    out.terms.reserve(static_cast<std::size_t>(count));

    const int v = static_cast<int>(vars.size());
    std::vector<int> picks;
    std::vector<SinusoidTerm> factors;
    for (int q = 1; q <= k; ++q) {
        // non-decreasing index sequences enumerate each multiset once
        picks.assign(q, 0);
        while (true) {
            double coefficient = factorial(q - 1);
            int a_count = 0;
            int b_count = 0;
            factors.clear();
            factors.push_back({});  // leading sinusoid, filled below
            int run = 0;
            for (int i = 0; i < q; ++i) {
                const auto& var = vars[picks[i]];
                coefficient *= var.amplitude;
                run = (i > 0 && picks[i] == picks[i - 1]) ? run + 1 : 1;
                coefficient /= run;  // accumulates 1 / m! per variable
                (var.cosine_channel ? b_count : a_count) += 1;
                factors.push_back(var.factor);
            }
            factors[0] = {q * p, 1.0, quarter_turn_phase(a_count + 2 * b_count)};
            auto expanded = product_to_sum(factors, coefficient);
            out.terms.insert(out.terms.end(), expanded.begin(), expanded.end());

            int pos = q - 1;
            while (pos >= 0 && picks[pos] == v - 1) --pos;
            if (pos < 0) break;
            const int next = picks[pos] + 1;
            for (int i = pos; i < q; ++i) picks[i] = next;
        }
    }
    return out;
}

double maclaurin_derivative(const EncoderSpec& spec, std::span<const int> alpha, std::span<const int> beta, double phi,
                            bool literal_phase) {
    const auto comps = spec.disturbances();
    if (alpha.size() != comps.size() || beta.size() != comps.size())
        throw InvalidInput("multi-index length must match the number of disturbances");

    int a_total = 0;
    int b_total = 0;
    double product = 1.0;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        if (alpha[j] < 0 || beta[j] < 0) throw InvalidInput("multi-index entries must be non-negative");
        a_total += alpha[j];
        b_total += beta[j];
        product *= std::pow(std::sin(comps[j].n * phi + comps[j].theta), alpha[j]);
        product *= std::pow(std::cos(comps[j].n * phi + comps[j].psi), beta[j]);
    }
    const int q = a_total + b_total;
    if (q == 0) return 0.0;
    const double rate = literal_phase ? q : q * spec.periodicity();
    return factorial(q - 1) * std::sin(rate * phi + (a_total + 2 * b_total) * kPi / 2) * product;
}

HarmonicSpectrum collect_spectrum(std::span<const SinusoidTerm> terms) {
    CompensatedSum dc;
    std::map<int, std::pair<CompensatedSum, CompensatedSum>> phasors;
    for (const auto& raw : terms) {
        const auto t = normal_form(raw);
        if (t.order == 0) {
            dc.add(t.amplitude * std::sin(t.phase));
            continue;
        }
        auto& [re, im] = phasors[t.order];
        re.add(t.amplitude * std::cos(t.phase));
        im.add(t.amplitude * std::sin(t.phase));
    }

    HarmonicSpectrum spectrum;
    if (std::abs(dc.value()) >= kCollectThreshold) spectrum.set_dc(dc.value());
    for (const auto& [order, sums] : phasors) {
        const double re = sums.first.value();
        const double im = sums.second.value();
        const double amp = std::hypot(re, im);
        if (amp >= kCollectThreshold) spectrum.set(order, amp, std::atan2(im, re));
    }
    return spectrum;
}

HarmonicSpectrum collect_spectrum(const TaylorExpansion& expansion) { return collect_spectrum(expansion.terms); }

HarmonicSpectrum geometric_spectrum(const EncoderSpec& spec) {
    std::vector<SinusoidTerm> terms;
    for (const auto& c : spec.disturbances()) {
        auto eps = geometric_epsilon(c, spec.periodicity());
        terms.insert(terms.end(), eps.begin(), eps.end());
    }
    return collect_spectrum(terms);
}

double evaluate(std::span<const SinusoidTerm> terms, double phi) {
    CompensatedSum s;
    for (const auto& t : terms) s.add(t(phi));
    return s.value();
}

double evaluate(const TaylorExpansion& expansion, double phi) { return evaluate(expansion.terms, phi); }

}  // namespace encharm
