#include "encharm/mismatch_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "encharm/angles.hpp"
#include "encharm/approximation.hpp"
#include "encharm/errors.hpp"

namespace encharm {

std::string_view to_string(MismatchVariant v) {
    switch (v) {
        case MismatchVariant::Offset: return "offset";
        case MismatchVariant::Amplitude: return "amplitude";
        case MismatchVariant::Phase: return "phase";
        case MismatchVariant::OffsetAmplitude: return "offset-amplitude";
        case MismatchVariant::OffsetPhase: return "offset-phase";
        case MismatchVariant::AmplitudePhase: return "amplitude-phase";
        case MismatchVariant::OffsetAmplitudePhase: return "offset-amplitude-phase";
    }
    return "unknown";
}

std::optional<MismatchVariant> parse_variant(std::string_view name) {
    for (auto v : kAllMismatchVariants)
        if (to_string(v) == name) return v;
    return std::nullopt;
}

bool has_offset(MismatchVariant v) {
    return v == MismatchVariant::Offset || v == MismatchVariant::OffsetAmplitude || v == MismatchVariant::OffsetPhase ||
           v == MismatchVariant::OffsetAmplitudePhase;
}

bool has_amplitude(MismatchVariant v) {
    return v == MismatchVariant::Amplitude || v == MismatchVariant::OffsetAmplitude ||
           v == MismatchVariant::AmplitudePhase || v == MismatchVariant::OffsetAmplitudePhase;
}

bool has_phase(MismatchVariant v) {
    return v == MismatchVariant::Phase || v == MismatchVariant::OffsetPhase || v == MismatchVariant::AmplitudePhase ||
           v == MismatchVariant::OffsetAmplitudePhase;
}

MismatchCase::MismatchCase(MismatchVariant variant, MismatchParams params) : variant_(variant), params_(params) {
    const auto name = std::string(to_string(variant));
    if (!has_offset(variant) && (params.A0 != 0.0 || params.B0 != 0.0))
        throw InvalidInput("variant '" + name + "' takes no offset parameters");
    if (!has_amplitude(variant) && (params.An != 0.0 || params.Bn != 0.0))
        throw InvalidInput("variant '" + name + "' takes no amplitude parameters");
    if (!has_phase(variant) && params.delta_p != 0.0)
        throw InvalidInput("variant '" + name + "' takes no phase parameter");
    if (!(std::abs(params.delta_p) < kPi)) throw InvalidInput("delta_p must lie in (-pi, pi)");
}

std::map<int, double> catalog_spectrum(const MismatchCase& c, int p) {
    if (p < 1) throw InvalidInput("periodicity must be a positive integer");
    const auto& m = c.params();
    const double a0 = m.A0, b0 = m.B0, an = m.An, bn = m.Bn, d = m.delta_p;
    const double sd = std::sin(d), cd = std::cos(d), s2d = std::sin(2 * d), c2d = std::cos(2 * d);
    const double off2 = a0 * a0 + b0 * b0;
    auto sq = [](double x) { return x * x; };

    double h0 = 0, h1 = 0, h2 = 0, h3 = 0, h4 = 0;
    switch (c.variant()) {
        case MismatchVariant::Offset:
            h1 = std::sqrt(off2);
            h2 = std::sqrt(std::pow(a0, 4) / 4 + a0 * a0 * b0 * b0 / 2 + std::pow(b0, 4) / 4);
            break;
        case MismatchVariant::Amplitude:
            h2 = 0.5 * (an - bn) + 0.25 * (bn * bn - an * an);
            h4 = sq(an - bn) / 8;
            break;
        case MismatchVariant::Phase:
            h0 = 0.75 * sd - s2d / 8;
            h2 = std::sqrt(0.25 * sd * sd + sq(cd - 1));
            h4 = 0.25 * (1 - cd);
            break;
        case MismatchVariant::OffsetAmplitude:
            h1 = 0.5 * (bn + an - 2) * std::sqrt(off2);
            h2 = std::sqrt(b0 * b0 * a0 * a0 + sq(2 * b0 * b0 + bn * bn - 2 * bn - 2 * a0 * a0 - an * an - 2 * an) / 16);
            h3 = 0.5 * (an - bn) * std::sqrt(off2);
            h4 = sq(an - bn) / 8;
            break;
        case MismatchVariant::OffsetPhase:
            h0 = 0.75 * sd - s2d / 8;
            h1 = std::sqrt(2.0) / 2 * std::sqrt((5 - 3 * cd) * off2);
            h2 = 0.5 * std::sqrt(sq(sd - 2 * a0 * b0) + sq(2 * cd - a0 * a0 + b0 * b0 - 2));
            h3 = std::sqrt(2.0) / 2 * std::sqrt((1 - cd) * off2);
            h4 = 0.25 * (1 - cd);
            break;
        case MismatchVariant::AmplitudePhase: {
            const double e = an - bn;
            h0 = 0.25 * (3 - an - bn) * sd - s2d / 8;
            h2 = 0.25 * std::sqrt(sq(an * an - bn * bn - 4 * an + 2 * bn + 2 * an * cd - 4 * cd + 4) +
                                  4 * sd * sd * sq(bn - 1));
            h4 = 0.125 * std::sqrt(sq(s2d + 2 * sd * (e - 1)) + sq(e * e - 2 * e + 2 * cd * (e - 1) + c2d + 1));
            break;
        }
        case MismatchVariant::OffsetAmplitudePhase: {
            const double e = an - bn;
            const double s = an + bn;
            h0 = 0.25 * (3 - an + bn) * sd - s2d / 8;
            h1 = 0.5 * std::sqrt(off2 * (s * s - 6 * s + 2 * cd * s - 6 * cd + 10));
            h2 = 0.5 * std::sqrt(sq(sd * (bn - 1) + 2 * a0 * b0) +
                                 sq(0.5 * (an * an - bn * bn) + a0 * a0 - b0 * b0 - 2 * an + bn + cd * (an - 2) + 2));
            h3 = 0.5 * std::sqrt(off2 * (e * e - 2 * e + 2 * cd * (e - 1) + 2));
            h4 = 0.125 * std::sqrt(sq(s2d + 2 * sd * (e - 1)) + sq(e * e - 2 * e + 2 * cd * (e - 1) + c2d + 1));
            break;
        }
    }
    return {{0, std::abs(h0)}, {p, std::abs(h1)}, {2 * p, std::abs(h2)}, {3 * p, std::abs(h3)}, {4 * p, std::abs(h4)}};
}

CatalogOrders catalog_orders(MismatchVariant v) {
    switch (v) {
        case MismatchVariant::Offset: return {{1}, {2}};
        case MismatchVariant::Amplitude: return {{2}, {4}};
        case MismatchVariant::Phase: return {{0, 2}, {0, 2, 4}};
        case MismatchVariant::OffsetAmplitude: return {{1, 2}, {1, 2, 3, 4}};
        case MismatchVariant::OffsetPhase: return {{0, 1, 2}, {0, 1, 2, 3, 4}};
        case MismatchVariant::AmplitudePhase: return {{0, 2}, {0, 2, 4}};
        case MismatchVariant::OffsetAmplitudePhase: return {{0, 1, 2}, {0, 1, 2, 3, 4}};
    }
    return {};
}

EncoderSpec equivalent_spec(const MismatchCase& c, int p) {
    const auto& m = c.params();
    std::vector<HarmonicComponent> comps;
    if (m.A0 != 0.0 || m.B0 != 0.0) comps.push_back(offset_component(m.A0, m.B0));
    if (m.An != 0.0 || m.Bn != 0.0) comps.push_back({p, m.An, 0.0, m.Bn, 0.0});
    if (m.delta_p != 0.0) comps.push_back({p, 2.0 * std::sin(m.delta_p / 2), (m.delta_p + kPi) / 2, 0.0, 0.0});
    return EncoderSpec::normalized(p, std::move(comps));
}

std::vector<int> ConsistencyReport::flagged_orders() const {
    std::vector<int> out;
    for (const auto& e : entries)
        if (e.deviation > tolerance) out.push_back(e.order);
    return out;
}

ConsistencyReport catalog_consistency(const MismatchCase& c, int p, double tolerance) {
    const auto catalog = catalog_spectrum(c, p);
    const auto engine = collect_spectrum(taylor_terms(equivalent_spec(c, p), 2));
    const auto orders = catalog_orders(c.variant());

    ConsistencyReport r;
    r.variant = c.variant();
    r.p = p;
    r.tolerance = tolerance;
    std::vector<int> tabulated = orders.first;
    tabulated.insert(tabulated.end(), orders.second.begin(), orders.second.end());
    std::sort(tabulated.begin(), tabulated.end());
    tabulated.erase(std::unique(tabulated.begin(), tabulated.end()), tabulated.end());
    for (int multiple : tabulated) {
        const int order = multiple * p;
        ConsistencyEntry e{order, catalog.at(order), engine.amplitude(order), 0.0};
        e.deviation = std::abs(e.catalog - e.engine);
        r.max_deviation = std::max(r.max_deviation, e.deviation);
        r.entries.push_back(e);
    }
    return r;
}

}  // namespace encharm
