#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "encharm/signal_model.hpp"
#include "encharm/spectrum.hpp"

namespace encharm {

/// amplitude * sin(order * phi + phase)
struct SinusoidTerm {
    int order = 0;
    double amplitude = 0.0;
    double phase = 0.0;

    [[nodiscard]] double operator()(double phi) const { return amplitude * std::sin(order * phi + phase); }
};

/// Normal form: order >= 0, amplitude >= 0, phase in [-pi, pi). Order-0 terms
/// are constants amplitude * sin(phase) and normalize to phase +-pi/2.
[[nodiscard]] SinusoidTerm normal_form(SinusoidTerm t);

/// First-order (tangent projection) error terms of one disturbance, in normal
/// form:
///   1/2 A sin((n-p)phi + theta),  1/2 B sin((n-p)phi + psi),
///   1/2 A sin((n+p)phi + theta), -1/2 B sin((n+p)phi + psi)
[[nodiscard]] std::vector<SinusoidTerm> geometric_epsilon(const HarmonicComponent& component, int p);

struct FirstOrderAmplitudes {
    double lower = 0.0;  // H_{n-p}
    double upper = 0.0;  // H_{n+p}
};

/// H_{n-p} = 1/2 sqrt(A^2 + 2AB cos d + B^2), H_{n+p} = 1/2 sqrt(A^2 - 2AB cos d + B^2)
/// with d = psi - theta. For n = p the lower value is the magnitude of the
/// order-0 phasor, not the DC level; for n = 0 both land on order p.
[[nodiscard]] FirstOrderAmplitudes first_order_amplitudes(const HarmonicComponent& component, int p);

/// Expands scalar * prod(factors) into a sum of sinusoids by repeated
/// product-to-sum, sin x sin y = 1/2 sin(x - y + pi/2) + 1/2 sin(x + y - pi/2).
/// Constant factors (order 0) are folded into the scalar. Returned terms are in
/// normal form; an empty factor list yields the constant scalar.
[[nodiscard]] std::vector<SinusoidTerm> product_to_sum(std::span<const SinusoidTerm> factors, double scalar);

/// Maclaurin partial sum of the angular error in the disturbance amplitudes,
/// orders 1..k, as a flat list of sinusoids.
struct TaylorExpansion {
    int k = 0;
    int p = 1;
    std::vector<SinusoidTerm> terms;
    double A_tilde = 0.0;  // sum |A_n| + |B_n|
};

struct TaylorOptions {
    std::size_t term_budget = 1'000'000;
};

inline constexpr int kDefaultTaylorOrder = 2;

/// Number of sinusoid terms taylor_terms() would generate before collection.
[[nodiscard]] double taylor_term_count(const EncoderSpec& spec, int k);

/// Enumerates every multi-index (alpha, beta) over the non-zero amplitude
/// variables with 1 <= |alpha| + |beta| = q <= k. Each contributes
///
///   (q-1)!/(alpha! beta!) A^alpha B^beta sin(q p phi + (|alpha| + 2|beta|) pi/2)
///       * prod sin^alpha_j(n_j phi + theta_j) * prod cos^beta_j(n_j phi + psi_j)
///
/// expanded with product_to_sum(). The spec must be normalized. Throws
/// ResourceError if the term count exceeds options.term_budget.
[[nodiscard]] TaylorExpansion taylor_terms(const EncoderSpec& spec, int k, const TaylorOptions& options = {});

/// Mixed partial derivative of the angular error with respect to the amplitudes
/// at A = B = 0:
///
///   (q-1)! sin(q p phi + (|alpha| + 2|beta|) pi/2) prod sin^alpha_j(.) prod cos^beta_j(.)
///
/// alpha[j], beta[j] index spec.disturbances(). With literal_phase the leading
/// sinusoid uses q phi instead of q p phi.
[[nodiscard]] double maclaurin_derivative(const EncoderSpec& spec, std::span<const int> alpha,
                                          std::span<const int> beta, double phi, bool literal_phase = false);

/// Phasor sum per order with compensated accumulation. Order-0 terms add as
/// signed constants. Lines below 1e-15 are dropped.
[[nodiscard]] HarmonicSpectrum collect_spectrum(std::span<const SinusoidTerm> terms);
[[nodiscard]] HarmonicSpectrum collect_spectrum(const TaylorExpansion& expansion);

/// Collected first-order spectrum from geometric_epsilon() over all disturbances.
[[nodiscard]] HarmonicSpectrum geometric_spectrum(const EncoderSpec& spec);

[[nodiscard]] double evaluate(std::span<const SinusoidTerm> terms, double phi);
[[nodiscard]] double evaluate(const TaylorExpansion& expansion, double phi);

}  // namespace encharm
