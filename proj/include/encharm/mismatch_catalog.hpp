#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "encharm/signal_model.hpp"

namespace encharm {

enum class MismatchVariant {
    Offset,
    Amplitude,
    Phase,
    OffsetAmplitude,
    OffsetPhase,
    AmplitudePhase,
    OffsetAmplitudePhase,
};

inline constexpr MismatchVariant kAllMismatchVariants[] = {
    MismatchVariant::Offset,          MismatchVariant::Amplitude,      MismatchVariant::Phase,
    MismatchVariant::OffsetAmplitude, MismatchVariant::OffsetPhase,    MismatchVariant::AmplitudePhase,
    MismatchVariant::OffsetAmplitudePhase,
};

/// Lower-case, dash-separated name, e.g. "offset-amplitude".
[[nodiscard]] std::string_view to_string(MismatchVariant v);
[[nodiscard]] std::optional<MismatchVariant> parse_variant(std::string_view name);

[[nodiscard]] bool has_offset(MismatchVariant v);
[[nodiscard]] bool has_amplitude(MismatchVariant v);
[[nodiscard]] bool has_phase(MismatchVariant v);

/// Normalized main-harmonic mismatch: offsets A0, B0, amplitude deviations
/// An = Ap/g - 1, Bn = Bp/g - 1 and sine-channel phase lead delta_p.
struct MismatchParams {
    double A0 = 0.0;
    double B0 = 0.0;
    double An = 0.0;
    double Bn = 0.0;
    double delta_p = 0.0;
};

class MismatchCase {
public:
    /// Throws InvalidInput if a parameter not used by the variant is non-zero
    /// or delta_p is outside (-pi, pi).
    MismatchCase(MismatchVariant variant, MismatchParams params);

    [[nodiscard]] MismatchVariant variant() const { return variant_; }
    [[nodiscard]] const MismatchParams& params() const { return params_; }

private:
    MismatchVariant variant_;
    MismatchParams params_;
};

/// Closed-form second-order amplitudes of the tabulated mismatch rows, keyed
/// by order in {0, p, 2p, 3p, 4p}. Orders absent from a row read 0; all values
/// are absolute.
[[nodiscard]] std::map<int, double> catalog_spectrum(const MismatchCase& c, int p);

/// Tabulated error orders, as multiples of p, of the first- and second-order
/// Taylor terms.
struct CatalogOrders {
    std::vector<int> first;
    std::vector<int> second;
};

[[nodiscard]] CatalogOrders catalog_orders(MismatchVariant v);

/// Normalized spec whose disturbances are the equivalent harmonics of the case:
/// offset (n = 0), amplitude (n = p) and 2 sin(d/2) sin(p phi + (d + pi)/2) on
/// the sine channel for the phase mismatch.
[[nodiscard]] EncoderSpec equivalent_spec(const MismatchCase& c, int p);

struct ConsistencyEntry {
    int order = 0;
    double catalog = 0.0;
    double engine = 0.0;
    double deviation = 0.0;
};

struct ConsistencyReport {
    MismatchVariant variant{};
    int p = 1;
    double tolerance = 1e-6;
    std::vector<ConsistencyEntry> entries;
    double max_deviation = 0.0;

    [[nodiscard]] bool consistent() const { return max_deviation <= tolerance; }
    /// Orders whose deviation exceeds the tolerance.
    [[nodiscard]] std::vector<int> flagged_orders() const;
};

/// Compares catalog_spectrum() against the collected order-2 Taylor spectrum of
/// equivalent_spec() at every tabulated order.
[[nodiscard]] ConsistencyReport catalog_consistency(const MismatchCase& c, int p, double tolerance = 1e-6);

}  // namespace encharm
