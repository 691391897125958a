#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "encharm/signal_model.hpp"

namespace encharm {

struct AmplitudeSums {
    double geometric = 0.0;  // sum over disturbances of sqrt(A^2 + B^2)
    double l1 = 0.0;         // sum over disturbances of |A| + |B|
};

/// Requires a normalized spec (main harmonic already rewritten as equivalent
/// disturbances); throws InvalidInput otherwise.
[[nodiscard]] AmplitudeSums amplitude_sums(const EncoderSpec& spec);

/// Worst-case |delta_phi_p| when the disturbances sum to at most `sum` in
/// magnitude: the angle of the tangent from the origin to a circle of that
/// radius around 1, atan(A sqrt(1 - A^2) / (1 - A^2)). Equal to asin(A).
/// Throws DomainError unless 0 <= sum < 1.
[[nodiscard]] double geometric_bound(double sum);

/// pi * sum / 3, an upper estimate of geometric_bound() for sum <= 1/2.
/// Throws DomainError above 1/2.
[[nodiscard]] double rule_of_thumb(double sum);

/// Bound on the remainder of the order-k Maclaurin series,
/// -ln(1 - l1) - sum_{q=1..k} l1^q / q. Throws DomainError unless 0 <= l1 < 1.
[[nodiscard]] double taylor_residual_bound(double l1, int k);

struct BoundReport {
    double A_cal = 0.0;
    double A_tilde = 0.0;
    std::optional<double> geometric_bound;  // empty when A_cal >= 1
    std::optional<double> rule_of_thumb;    // empty when A_cal > 1/2
    std::map<int, double> residual_bounds;  // k = 0..max_k, empty when A_tilde >= 1
    std::vector<std::string> domain_violations;

    [[nodiscard]] bool diverges() const { return !domain_violations.empty(); }
};

/// All bounds for a normalized spec. Out-of-domain bounds are left empty and
/// the reason is recorded instead of throwing.
[[nodiscard]] BoundReport bound_report(const EncoderSpec& spec, int max_k);

}  // namespace encharm
