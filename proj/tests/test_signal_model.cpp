#include <doctest.h>

#include <cmath>

#include "encharm/errors.hpp"
#include "encharm/exact_analysis.hpp"
#include "encharm/signal_model.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace encharm;

namespace {

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    REQUIRE(x.size() == y.size());
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

MainHarmonicParams random_mismatch(gen::Rng& rng, int p) {
    MainHarmonicParams m;
    m.p = p;
    m.Ap = rng.uniform(0.8, 1.2);
    m.Bp = rng.uniform(0.8, 1.2);
    m.theta_p = rng.uniform(-0.3, 0.3);
    m.psi_p = rng.uniform(-0.3, 0.3);
    m.A0 = rng.uniform(-0.2, 0.2);
    m.B0 = rng.uniform(-0.2, 0.2);
    return m;
}

}  // namespace

TEST_CASE("ideal encoder starts at a = 0, b = 1") {
    const auto t = synthesize(EncoderSpec::normalized(1, {}), 64);
    CHECK(t.a[0] == 0.0);
    CHECK(t.b[0] == 1.0);
}

TEST_CASE("worked example channels at phi = 0") {
    const auto t = synthesize(fixtures::worked_example(), 4096);
    CHECK(t.a[0] == doctest::Approx(0.05 * std::sin(kPi / 8)).epsilon(1e-15));
    CHECK(t.b[0] == doctest::Approx(1 + 0.02 * std::cos(kPi / 7) + 0.09 * std::cos(kPi / 4)).epsilon(1e-15));
    CHECK(t.a[0] == doctest::Approx(0.019134).epsilon(1e-4));
    CHECK(t.b[0] == doctest::Approx(1.081659).epsilon(1e-6));

    const auto z = complex_vector(fixtures::worked_example(), 0.0);
    CHECK(z.real() == doctest::Approx(1.081659).epsilon(1e-6));
    CHECK(z.imag() == doctest::Approx(0.019134).epsilon(1e-4));
}

TEST_CASE("grid is uniform and strictly increasing") {
    const auto t = synthesize(fixtures::worked_example(), 512);
    REQUIRE(t.size() == 512);
    for (std::size_t k = 1; k < t.size(); ++k) CHECK(t.phi[k] - t.phi[k - 1] == doctest::Approx(kTwoPi / 512));
}

TEST_CASE("synthesize rejects undersampled grids") {
    const auto spec = fixtures::worked_example();  // max order 9
    CHECK_THROWS_AS((void)synthesize(spec, 71), AliasingError);
    CHECK_NOTHROW((void)synthesize(spec, 72));
}

TEST_CASE("complex vector of the ideal encoder lies on the unit circle") {
    const auto spec = EncoderSpec::normalized(1, {});
    const auto z = complex_vector(spec, kPi / 2);
    CHECK(z.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(z.imag() == doctest::Approx(1.0));
    for (double phi = 0.0; phi < kTwoPi; phi += 0.1) CHECK(std::abs(std::abs(complex_vector(spec, phi)) - 1.0) < 1e-15);
}

TEST_CASE("vector parts add up to the complex vector") {
    gen::Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto spec = gen::random_spec(rng, {.allow_offset = true});
        const double phi = rng.uniform(0.0, kTwoPi);
        const auto parts = complex_vector_parts(spec, phi);
        CHECK(std::abs(parts.total() - complex_vector(spec, phi)) < 1e-14);
    }
}

TEST_CASE("canonicalize folds a negative amplitude into a phase shift") {
    const HarmonicComponent raw{3, -0.1, 0.4, 0.2, 0.1};
    const auto c = canonicalize(raw);
    CHECK(c.A == doctest::Approx(0.1));
    CHECK(c.theta == doctest::Approx(wrap_phase(0.4 + kPi)));
    const auto t1 = synthesize(EncoderSpec(MainHarmonicParams::ideal(1), {raw}), 256);
    const auto t2 = synthesize(EncoderSpec(MainHarmonicParams::ideal(1), {c}), 256);
    CHECK(max_abs_diff(t1.a, t2.a) < 1e-12);
    CHECK(max_abs_diff(t1.b, t2.b) < 1e-12);
}

TEST_CASE("property: canonicalize is idempotent and preserves the signal") {
    gen::Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const HarmonicComponent c{rng.integer(0, 12), rng.uniform(-1, 1), rng.uniform(-10, 10), rng.uniform(-1, 1),
                                  rng.uniform(-10, 10)};
        const auto once = canonicalize(c);
        const auto twice = canonicalize(once);
        CHECK(once == twice);
        if (c.n != 0) {
            CHECK(once.A >= 0.0);
            CHECK(once.B >= 0.0);
        }
        CHECK(once.theta >= -kPi);
        CHECK(once.theta < kPi);
        for (int s = 0; s < 5; ++s) {
            const double phi = rng.uniform(0.0, kTwoPi);
            CHECK(std::abs(once.sine_term(phi) - c.sine_term(phi)) < 1e-12);
            CHECK(std::abs(once.cosine_term(phi) - c.cosine_term(phi)) < 1e-12);
        }
    }
}

TEST_CASE("order-0 terms use the offset encoding") {
    const auto c = canonicalize({0, 0.3, 0.0, 0.2, 1.0});
    CHECK(c.theta == doctest::Approx(kPi / 2));
    CHECK(c.psi == 0.0);
    CHECK(c.A == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.B == doctest::Approx(0.2 * std::cos(1.0)));
    const auto o = offset_component(-0.1, 0.05);
    CHECK(o.sine_term(1.3) == doctest::Approx(-0.1));
    CHECK(o.cosine_term(1.3) == doctest::Approx(0.05));
}

TEST_CASE("duplicate orders merge by phasor addition") {
    const EncoderSpec spec(MainHarmonicParams::ideal(1), {{3, 0.1, 0.0, 0.0, 0.0}, {3, 0.1, kPi / 2, 0.2, 0.0}});
    REQUIRE(spec.disturbances().size() == 1);
    CHECK(spec.disturbances()[0].A == doctest::Approx(std::sqrt(0.02)));
    CHECK(spec.disturbances()[0].theta == doctest::Approx(kPi / 4));
    CHECK(spec.disturbances()[0].B == doctest::Approx(0.2));

    const EncoderSpec cancel(MainHarmonicParams::ideal(1), {{3, 0.1, 0.0, 0.0, 0.0}, {3, -0.1, 0.0, 0.0, 0.0}});
    CHECK(cancel.disturbances().size() <= 1);
    for (const auto& c : cancel.disturbances()) CHECK(c.A < 1e-15);
}

TEST_CASE("spec construction validates the main harmonic") {
    CHECK_THROWS_AS(EncoderSpec(MainHarmonicParams{.p = 0}, {}), InvalidInput);
    CHECK_THROWS_AS(EncoderSpec(MainHarmonicParams{.p = 1, .Ap = 0.0}, {}), InvalidInput);
    CHECK_THROWS_AS(EncoderSpec(MainHarmonicParams{.p = 1, .Bp = -1.0}, {}), InvalidInput);
    CHECK_THROWS_AS(EncoderSpec(MainHarmonicParams::ideal(1), {{-1, 0.1, 0, 0, 0}}), InvalidInput);
    CHECK_THROWS_AS(EncoderSpec(MainHarmonicParams::ideal(1), {{2, NAN, 0, 0, 0}}), InvalidInput);
    CHECK(fixtures::worked_example().is_normalized());
    CHECK(fixtures::worked_example().max_order() == 9);
    CHECK_FALSE(EncoderSpec(MainHarmonicParams{.p = 1, .A0 = 0.1}, {}).is_normalized());
}

TEST_CASE("property: sampled trace equals per-sample evaluation of the model") {
    gen::Rng rng(13);
    for (int i = 0; i < 30; ++i) {
        const auto spec = gen::random_spec(rng, {.allow_offset = true});
        const auto t = synthesize(spec, 512);
        for (std::size_t k = 0; k < t.size(); k += 7) {
            double a = std::sin(spec.periodicity() * t.phi[k]);
            double b = std::cos(spec.periodicity() * t.phi[k]);
            for (const auto& c : spec.disturbances()) {
                a += c.A * std::sin(c.n * t.phi[k] + c.theta);
                b += c.B * std::cos(c.n * t.phi[k] + c.psi);
            }
            CHECK(std::abs(t.a[k] - a) < 1e-12);
            CHECK(std::abs(t.b[k] - b) < 1e-12);
        }
    }
}

TEST_CASE("correction of an ideal main harmonic is the identity") {
    const auto c = MainHarmonicCorrection::from(MainHarmonicParams::ideal(3));
    const auto [a, b] = c.apply(0.3, -0.7);
    CHECK(a == doctest::Approx(0.3));
    CHECK(b == doctest::Approx(-0.7));
}

TEST_CASE("gain and offset correction recovers the unit circle") {
    const MainHarmonicParams params{.p = 1, .Ap = 2.0, .Bp = 2.0, .A0 = 0.5};
    const auto raw = synthesize(EncoderSpec(params, {}), 1024);
    const auto fixed = correct_main_harmonic(raw, params);
    for (std::size_t k = 0; k < raw.size(); ++k) {
        CHECK(std::abs(fixed.a[k] - std::sin(raw.phi[k])) < 1e-12);
        CHECK(std::abs(fixed.b[k] - std::cos(raw.phi[k])) < 1e-12);
    }
    CHECK(exact_error(correct_main_harmonic(EncoderSpec(params, {})), 1024).max_abs() < 1e-12);
}

TEST_CASE("phase correction removes the error of a 0.2 rad quadrature mismatch") {
    const MainHarmonicParams params{.p = 1, .theta_p = 0.2};
    const auto raw = synthesize(EncoderSpec(params, {}), 1024);
    const auto fixed = correct_main_harmonic(raw, params);
    const auto err = error_from_angles(atan2_unwrap(fixed), 1);
    CHECK(err.max_abs() < 1e-10);
    CHECK(exact_error(EncoderSpec(params, {}), 1024).max_abs() > 0.05);
}

TEST_CASE("property: correcting a distorted main harmonic gives zero exact error") {
    gen::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const auto params = random_mismatch(rng, rng.integer(1, 6));
        const auto raw = synthesize(EncoderSpec(params, {}), 1024);
        const auto err = error_from_angles(atan2_unwrap(correct_main_harmonic(raw, params)), params.p);
        CHECK(err.max_abs() < 1e-10);
    }
}

TEST_CASE("spec-level correction matches trace-level correction") {
    gen::Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const auto base = gen::random_spec(rng);
        const auto params = random_mismatch(rng, base.periodicity());
        const EncoderSpec raw(params, {base.disturbances().begin(), base.disturbances().end()});
        const auto fixed = correct_main_harmonic(raw);
        CHECK(fixed.is_normalized());
        const auto via_trace = correct_main_harmonic(synthesize(raw, 1024), params);
        const auto via_spec = synthesize(fixed, 1024);
        CHECK(max_abs_diff(via_trace.a, via_spec.a) < 1e-12);
        CHECK(max_abs_diff(via_trace.b, via_spec.b) < 1e-12);
    }
}

TEST_CASE("singular correction is rejected") {
    CHECK_THROWS_AS((void)MainHarmonicCorrection::from({.p = 1, .theta_p = kPi / 2}), SingularCorrectionError);
    CHECK_THROWS_AS((void)MainHarmonicCorrection::from({.p = 1, .theta_p = 2.0}), SingularCorrectionError);
}

TEST_CASE("amplitude mismatch equivalents") {
    const auto n = normalize_and_equivalents({.p = 1, .Ap = 2.0, .Bp = 2.5});
    CHECK(n.g == doctest::Approx(2.25));
    REQUIRE(n.equivalents.size() == 1);
    CHECK(n.equivalents[0].n == 1);
    CHECK(n.equivalents[0].A == doctest::Approx(-1.0 / 9));
    CHECK(n.equivalents[0].B == doctest::Approx(1.0 / 9));
}

TEST_CASE("phase mismatch equivalent") {
    const auto n = normalize_and_equivalents({.p = 2, .theta_p = kPi / 6});
    CHECK(n.g == 1.0);
    REQUIRE(n.equivalents.size() == 1);
    CHECK(n.equivalents[0].n == 2);
    CHECK(n.equivalents[0].A == doctest::Approx(0.517638).epsilon(1e-6));
    CHECK(n.equivalents[0].theta == doctest::Approx(7 * kPi / 12));
    CHECK(n.equivalents[0].B == 0.0);
}

TEST_CASE("ideal params have no equivalents") {
    const auto n = normalize_and_equivalents(MainHarmonicParams::ideal(4));
    CHECK(n.g == 1.0);
    CHECK(n.equivalents.empty());
}

TEST_CASE("phase identity behind the phase equivalent") {
    gen::Rng rng(16);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.uniform(-10, 10);
        const double d = rng.uniform(-3, 3);
        const double lhs = std::sin(x + d);
        const double rhs = std::sin(x) + 2 * std::sin(d / 2) * std::sin(x + (d + kPi) / 2);
        CHECK(std::abs(lhs - rhs) < 1e-14);
        const double lhs_c = std::cos(x + d);
        const double rhs_c = std::cos(x) + 2 * std::sin(d / 2) * std::cos(x + (d + kPi) / 2);
        CHECK(std::abs(lhs_c - rhs_c) < 1e-14);
    }
}

TEST_CASE("property: normalized spec reproduces the raw signals divided by g") {
    gen::Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const auto base = gen::random_spec(rng);
        const auto params = random_mismatch(rng, base.periodicity());
        const EncoderSpec raw(params, {base.disturbances().begin(), base.disturbances().end()});
        const auto norm = normalize(raw);
        CHECK(norm.spec.is_normalized());
        const auto t_raw = synthesize(raw, 256);
        const auto t_norm = synthesize(norm.spec, 256);
        const double g = norm.normalization.g;
        for (std::size_t k = 0; k < t_raw.size(); ++k) {
            CHECK(std::abs(t_raw.a[k] / g - t_norm.a[k]) < 1e-9);
            CHECK(std::abs(t_raw.b[k] / g - t_norm.b[k]) < 1e-9);
        }
    }
}
