#include "encharm/bounds.hpp"

#include <cmath>
#include <string>

#include "encharm/angles.hpp"
#include "encharm/errors.hpp"

namespace encharm {

AmplitudeSums amplitude_sums(const EncoderSpec& spec) {
    if (!spec.is_normalized()) {
        throw InvalidInput("bounds need a normalized spec; rewrite main-harmonic mismatches as equivalent harmonics first");
    }
    AmplitudeSums s;
    for (const auto& c : spec.disturbances()) {
        s.geometric += std::hypot(c.A, c.B);
        s.l1 += std::abs(c.A) + std::abs(c.B);
    }
    return s;
}

double geometric_bound(double sum) {
    if (!(sum >= 0.0) || sum >= 1.0) {
        throw DomainError("geometric bound needs 0 <= A < 1 (got " + std::to_string(sum) +
                          "); the Lissajous curve may encircle the origin");
    }
    const double c2 = 1.0 - sum * sum;
    return std::atan(sum * std::sqrt(c2) / c2);
}

double rule_of_thumb(double sum) {
    if (!(sum >= 0.0) || sum > 0.5) {
        throw DomainError("rule-of-thumb bound needs 0 <= A <= 1/2 (got " + std::to_string(sum) + ")");
    }
    return kPi * sum / 3.0;
}

double taylor_residual_bound(double l1, int k) {
    if (!(l1 >= 0.0) || l1 >= 1.0) {
        throw DomainError("Taylor residual bound diverges for l1 amplitude sum " + std::to_string(l1) + " >= 1");
    }
    if (k < 0) throw InvalidInput("Taylor order must be non-negative");
    if (l1 == 0.0) return 0.0;
    if (l1 > 0.5) {
        double partial = 0.0;
        for (int q = 1; q <= k; ++q) partial += std::pow(l1, q) / q;
        return -std::log1p(-l1) - partial;
    }
    // Same quantity summed as the tail sum_{q>k} l1^q / q, which avoids the
    // cancellation of the closed form for small l1.
    double tail = 0.0;
    double power = std::pow(l1, k + 1);
    for (int q = k + 1; q < k + 200; ++q) {
        const double term = power / q;
        tail += term;
        if (term < tail * 1e-18) break;
        power *= l1;
    }
    return tail;
}

BoundReport bound_report(const EncoderSpec& spec, int max_k) {
    const auto sums = amplitude_sums(spec);
    BoundReport r;
    r.A_cal = sums.geometric;
    r.A_tilde = sums.l1;
    if (r.A_cal < 1.0)
        r.geometric_bound = geometric_bound(r.A_cal);
    else
        r.domain_violations.push_back("geometric bound undefined: A = " + std::to_string(r.A_cal) + " >= 1");
    if (r.A_cal <= 0.5) r.rule_of_thumb = rule_of_thumb(r.A_cal);
    if (r.A_tilde < 1.0) {
        for (int k = 0; k <= max_k; ++k) r.residual_bounds[k] = taylor_residual_bound(r.A_tilde, k);
    } else {
        r.domain_violations.push_back("Taylor residual bound diverges: A_tilde = " + std::to_string(r.A_tilde) + " >= 1");
    }
    return r;
}

}  // namespace encharm
