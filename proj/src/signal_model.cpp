#include "encharm/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "encharm/errors.hpp"

namespace encharm {

namespace {

bool finite(const HarmonicComponent& c) {
    return std::isfinite(c.A) && std::isfinite(c.B) && std::isfinite(c.theta) &&
           std::isfinite(c.psi);
}

void validate(const MainHarmonicParams& m) {
    if (m.p < 1) throw InvalidInput("periodicity must be a positive integer, got " + std::to_string(m.p));
    if (!(m.Ap > 0.0) || !(m.Bp > 0.0))
        throw InvalidInput("main harmonic amplitudes must be positive");
    for (double v : {m.Ap, m.Bp, m.theta_p, m.psi_p, m.A0, m.B0})
        if (!std::isfinite(v)) throw InvalidInput("main harmonic parameters must be finite");
}

// Sine-channel value A sin(n phi + theta) as the phasor A e^{i theta};
// cosine-channel value B cos(n phi + psi) as the phasor B e^{i psi}.
HarmonicComponent from_phasors(int n, std::complex<double> sine, std::complex<double> cosine) {
    return canonicalize({n, std::abs(sine), std::arg(sine), std::abs(cosine), std::arg(cosine)});
}

std::vector<HarmonicComponent> merge_by_order(std::vector<HarmonicComponent> in) {
    std::map<int, std::vector<HarmonicComponent>> groups;
    for (const auto& c : in) {
        if (c.n < 0) throw InvalidInput("harmonic order must be non-negative, got " + std::to_string(c.n));
        if (!finite(c)) throw InvalidInput("harmonic parameters must be finite");
        groups[c.n].push_back(canonicalize(c));
    }

    std::vector<HarmonicComponent> out;
    out.reserve(groups.size());
    for (auto& [n, members] : groups) {
        HarmonicComponent merged;
        if (members.size() == 1) {
            merged = members.front();
        } else if (n == 0) {
            double a = 0.0, b = 0.0;
            for (const auto& c : members) {
                a += c.A;
                b += c.B;
            }
            merged = offset_component(a, b);
        } else {
            std::complex<double> sine{}, cosine{};
            for (const auto& c : members) {
                sine += std::polar(c.A, c.theta);
                cosine += std::polar(c.B, c.psi);
            }
            merged = from_phasors(n, sine, cosine);
        }
        if (merged.A == 0.0 && merged.B == 0.0) continue;
        out.push_back(merged);
    }
    return out;
}

}  // namespace

double HarmonicComponent::sine_term(double phi) const { return A * std::sin(n * phi + theta); }

double HarmonicComponent::cosine_term(double phi) const { return B * std::cos(n * phi + psi); }

HarmonicComponent canonicalize(const HarmonicComponent& c) {
    if (c.n == 0) {
        if (c.theta == kPi / 2 && c.psi == 0.0) return c;
        return offset_component(c.A * std::sin(c.theta), c.B * std::cos(c.psi));
    }
    HarmonicComponent out = c;
    if (out.A < 0.0) {
        out.A = -out.A;
        out.theta += kPi;
    }
    if (out.B < 0.0) {
        out.B = -out.B;
        out.psi += kPi;
    }
    out.theta = wrap_phase(out.theta);
    out.psi = wrap_phase(out.psi);
    return out;
}

HarmonicComponent offset_component(double a0, double b0) { return {0, a0, kPi / 2, b0, 0.0}; }

EncoderSpec::EncoderSpec(MainHarmonicParams main, std::vector<HarmonicComponent> disturbances)
    : main_(main), disturbances_(merge_by_order(std::move(disturbances))) {
    validate(main_);
}

EncoderSpec EncoderSpec::normalized(int p, std::vector<HarmonicComponent> disturbances) {
    return EncoderSpec(MainHarmonicParams::ideal(p), std::move(disturbances));
}

int EncoderSpec::max_order() const {
    int m = main_.p;
    for (const auto& c : disturbances_) m = std::max(m, c.n);
    return m;
}

double EncoderSpec::sine_channel(double phi) const {
    double a = main_.A0 + main_.Ap * std::sin(main_.p * phi + main_.theta_p);
    for (const auto& c : disturbances_) a += c.sine_term(phi);
    return a;
}

double EncoderSpec::cosine_channel(double phi) const {
    double b = main_.B0 + main_.Bp * std::cos(main_.p * phi + main_.psi_p);
    for (const auto& c : disturbances_) b += c.cosine_term(phi);
    return b;
}

SignalTrace synthesize(const EncoderSpec& spec, std::size_t samples) {
    const auto required = 8 * static_cast<std::size_t>(spec.max_order());
    if (samples < required) {
        throw AliasingError("sample count " + std::to_string(samples) + " is below 8x the highest order (" +
                            std::to_string(required) + " required)");
    }
    SignalTrace t;
    t.phi.resize(samples);
    t.a.resize(samples);
    t.b.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double phi = grid_angle(k, samples);
        t.phi[k] = phi;
        t.a[k] = spec.sine_channel(phi);
        t.b[k] = spec.cosine_channel(phi);
    }
    return t;
}

std::complex<double> complex_vector(const EncoderSpec& spec, double phi) {
    return {spec.cosine_channel(phi), spec.sine_channel(phi)};
}

std::complex<double> VectorParts::total() const {
    std::complex<double> z = offset + main;
    for (const auto& d : disturbances) z += d;
    return z;
}

VectorParts complex_vector_parts(const EncoderSpec& spec, double phi) {
    const auto& m = spec.main();
    VectorParts parts;
    parts.offset = {m.B0, m.A0};
    parts.main = {m.Bp * std::cos(m.p * phi + m.psi_p), m.Ap * std::sin(m.p * phi + m.theta_p)};
    for (const auto& c : spec.disturbances()) {
        std::complex<double> z{c.cosine_term(phi), c.sine_term(phi)};
        if (c.n == 0)
            parts.offset += z;
        else
            parts.disturbances.push_back(z);
    }
    return parts;
}

MainHarmonicCorrection MainHarmonicCorrection::from(const MainHarmonicParams& params) {
    validate(params);
    const double delta = wrap_phase(params.delta_p());
    const double cd = std::cos(delta);
    if (std::abs(delta) >= kPi / 2 || cd < 1e-12) {
        throw SingularCorrectionError("phase mismatch " + std::to_string(delta) +
                                      " rad makes the orthogonality correction singular");
    }
    const double td = std::tan(delta);
    const double cp = std::cos(params.psi_p);
    const double sp = std::sin(params.psi_p);

    // a' = (a - A0)/Ap, b' = (b - B0)/Bp, a'' = (a' - b' sin d)/cos d, then
    // rotate (b', a'') by -psi_p.
    MainHarmonicCorrection c;
    c.a_offset = params.A0;
    c.b_offset = params.B0;
    c.m_aa = cp / (cd * params.Ap);
    c.m_ab = (-td * cp - sp) / params.Bp;
    c.m_ba = sp / (cd * params.Ap);
    c.m_bb = (cp - td * sp) / params.Bp;
    return c;
}

std::pair<double, double> MainHarmonicCorrection::apply(double a, double b) const {
    const double da = a - a_offset;
    const double db = b - b_offset;
    return {m_aa * da + m_ab * db, m_ba * da + m_bb * db};
}

SignalTrace correct_main_harmonic(const SignalTrace& raw, const MainHarmonicParams& params) {
    const auto corr = MainHarmonicCorrection::from(params);
    SignalTrace out = raw;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        std::tie(out.a[k], out.b[k]) = corr.apply(raw.a[k], raw.b[k]);
    }
    return out;
}

EncoderSpec correct_main_harmonic(const EncoderSpec& raw) {
    const auto corr = MainHarmonicCorrection::from(raw.main());
    std::vector<HarmonicComponent> mapped;
    mapped.reserve(raw.disturbances().size());
    for (const auto& c : raw.disturbances()) {
        if (c.n == 0) {
            const double a = c.A;  // canonical offset encoding
            const double b = c.B;
            mapped.push_back(offset_component(corr.m_aa * a + corr.m_ab * b, corr.m_ba * a + corr.m_bb * b));
            continue;
        }
        // Both channels as sine phasors so the real matrix acts on them directly.
        const auto pa = std::polar(c.A, c.theta);
        const auto pb = std::polar(c.B, c.psi + kPi / 2);
        const auto qa = corr.m_aa * pa + corr.m_ab * pb;
        const auto qb = corr.m_ba * pa + corr.m_bb * pb;
        mapped.push_back(canonicalize({c.n, std::abs(qa), std::arg(qa), std::abs(qb), std::arg(qb) - kPi / 2}));
    }
    return EncoderSpec::normalized(raw.periodicity(), std::move(mapped));
}

Normalization normalize_and_equivalents(const MainHarmonicParams& params) {
    validate(params);
    Normalization out;
    const double g = (params.Ap + params.Bp) / 2.0;
    out.g = g;

    if (params.A0 != 0.0 || params.B0 != 0.0) out.equivalents.push_back(offset_component(params.A0 / g, params.B0 / g));

    const double da = params.Ap / g - 1.0;
    const double db = params.Bp / g - 1.0;
    if (da != 0.0 || db != 0.0) out.equivalents.push_back({params.p, da, 0.0, db, 0.0});

    const double pa = params.Ap / g * 2.0 * std::sin(params.theta_p / 2.0);
    const double pb = params.Bp / g * 2.0 * std::sin(params.psi_p / 2.0);
    if (pa != 0.0 || pb != 0.0) {
        out.equivalents.push_back({params.p, pa, (params.theta_p + kPi) / 2.0, pb, (params.psi_p + kPi) / 2.0});
    }
    return out;
}

NormalizedSpec normalize(const EncoderSpec& raw) {
    auto norm = normalize_and_equivalents(raw.main());
    std::vector<HarmonicComponent> all;
    all.reserve(raw.disturbances().size() + norm.equivalents.size());
    for (auto c : raw.disturbances()) {
        c.A /= norm.g;
        c.B /= norm.g;
        all.push_back(c);
    }
    all.insert(all.end(), norm.equivalents.begin(), norm.equivalents.end());
    return {EncoderSpec::normalized(raw.periodicity(), std::move(all)), std::move(norm)};
}

}  // namespace encharm
