// Tests for the random-phase model: amplitude bounds, the h moments, the two
// expected level-count forms, Bessel identities, and the crossing counter.
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "primelab/config.hpp"
#include "primelab/errors.hpp"
#include "primelab/explicit_formula.hpp"
#include "primelab/kac.hpp"
#include "primelab/philox.hpp"
#include "primelab/specfun.hpp"
#include "primelab/zeros.hpp"

using namespace primelab;

namespace {

constexpr double PI = 3.141592653589793238462643383279502884;

ExperimentConfig raw_cfg(double sigma, double theta, double a, double b) {
    ExperimentConfig cfg;
    cfg.sigma = sigma;
    cfg.theta = theta;
    cfg.a = a;
    cfg.b = b;
    return cfg;
}

ZeroTable synthetic_table(std::vector<double> heights) {
    ZeroTable t;
    t.heights = std::move(heights);
    t.max_height = t.heights.empty() ? 0.0 : t.heights.back();
    t.source = "synthetic";
    return t;
}

ZeroTable real_table(double max_height) {
    const char* path = std::getenv("PRIMELAB_ZEROS_FILE");
    REQUIRE(path != nullptr);
    return load_zeros(path, max_height);
}

}  // namespace

// ---------------------------------------------------------------- amplitude -

TEST_CASE("amplitude: matches the closed expression and peaks inside (0, log b)") {
    ExperimentConfig cfg = ExperimentConfig::create(1e5);
    double g1 = 14.134725141734694;
    double t = 10.0;
    double d = cfg.sigma * g1 * std::exp(-t);
    CHECK(amplitude(t, g1, cfg) ==
          doctest::Approx(std::exp(-0.5 * d * d - 0.5 * t)).epsilon(1e-15));
    // The supremum over t sits at t* = log(sqrt(2) sigma gamma) with value
    // (2e)^(-1/4) / sqrt(sigma gamma); check we actually attain it there.
    double tstar = std::log(std::sqrt(2.0) * cfg.sigma * g1);
    CHECK(tstar > 0.0);
    CHECK(tstar < std::log(cfg.b));
    double bound = 0.65489078668153013 / std::sqrt(cfg.sigma * g1);
    CHECK(amplitude(tstar, g1, cfg) == doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("amplitude: stated bounds hold on 1e4 random (j, t) probes") {
    ExperimentConfig cfg = ExperimentConfig::create(1e5);
    std::vector<double> gs = {14.134725141734694, 21.022039638771555, 99.7, 316.0};
    double logb = std::log(cfg.b);
    double global_bound = std::pow(cfg.b * logb, -0.25);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        double t = philox_uniform(7, 0, i, 0.0, logb);
        double g = gs[philox_u64(7, 1, i) % gs.size()];
        double a = amplitude(t, g, cfg);
        double per_j = 0.65489078668153013 / std::sqrt(cfg.sigma * g);
        CHECK(a <= per_j * (1.0 + 1e-12));
        CHECK(a < global_bound);
    }
}

// ------------------------------------------------------------------ h_exact -

TEST_CASE("h_exact: empty table gives (0, 0)") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({});
    HPair h = h_exact(4.0, cfg, t);
    CHECK(h.h1 == 0.0);
    CHECK(h.h2 == 0.0);
}

TEST_CASE("h_exact: single zero has h2/h1 = gamma^2 and h1 = amplitude^2") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);
    double g1 = 14.134725141734694;
    ZeroTable t = synthetic_table({g1});
    for (double tt : {4.0, 4.7, 5.2}) {
        HPair h = h_exact(tt, cfg, t);
        double a = amplitude(tt, g1, cfg);
        CHECK(h.h2 / h.h1 == doctest::Approx(g1 * g1).epsilon(1e-15));
        CHECK(h.h1 == doctest::Approx(a * a).epsilon(1e-14));
    }
}

TEST_CASE("h_exact: ordinates beyond b*theta/sigma do not enter the model") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);  // cutoff = 20
    ZeroTable below = synthetic_table({14.0});
    ZeroTable with_above = synthetic_table({14.0, 21.0, 30.0});
    for (double tt : {4.0, 5.0}) {
        HPair ha = h_exact(tt, cfg, below);
        HPair hb = h_exact(tt, cfg, with_above);
        CHECK(ha.h1 == hb.h1);
        CHECK(ha.h2 == hb.h2);
    }
}

TEST_CASE("h_exact vs h_asymptotic: within 10% at study scale") {
    ExperimentConfig cfg = ExperimentConfig::create(1e7);
    ZeroTable t = real_table(3300.0);
    for (double targ : {cfg.a, 7.5e6, cfg.b * (1.0 - 1e-6)}) {
        HPair e = h_exact(std::log(targ), cfg, t);
        HPair s = h_asymptotic(targ, cfg);
        CHECK(std::fabs(e.h1 - s.h1) / s.h1 < 0.10);
        CHECK(std::fabs(e.h2 - s.h2) / s.h2 < 0.10);
    }
}

// ------------------------------------------------------------- h_asymptotic -

TEST_CASE("h_asymptotic: frozen values at b=1e9") {
    ExperimentConfig cfg = ExperimentConfig::create(1e9);
    HPair h = h_asymptotic(1e9, cfg);
    CHECK(cfg.sigma == doctest::Approx(253460.30082546236).epsilon(1e-14));
    CHECK(h.h1 == doctest::Approx(3.0387932950603995e-6).epsilon(1e-13));
    CHECK(h.h2 == doctest::Approx(27.982266135756025).epsilon(1e-13));
}

TEST_CASE("h_asymptotic: ratio tends to t/(sqrt(2) sigma) as L grows") {
    ExperimentConfig cfg = ExperimentConfig::create(1e9);
    for (double targ : {6e8, 1e9}) {
        HPair h = h_asymptotic(targ, cfg);
        double L = std::log(targ / (4.0 * PI * cfg.sigma));
        double expected = targ / (std::sqrt(2.0) * cfg.sigma) *
                          std::sqrt((L + (2.0 - euler_gamma) / 2.0) / (L - euler_gamma / 2.0));
        CHECK(std::sqrt(h.h2 / h.h1) == doctest::Approx(expected).epsilon(1e-12));
        // The correction factor exceeds 1 and shrinks as t_arg grows.
        CHECK(std::sqrt(h.h2 / h.h1) > targ / (std::sqrt(2.0) * cfg.sigma));
    }
}

TEST_CASE("h_asymptotic: domain error at and below 4 pi sigma") {
    // At b=1e4 the left endpoint a=5000 sits below 4*pi*sigma ~ 6714, so the
    // asymptotic is not valid there; the guard must fire.
    ExperimentConfig cfg = ExperimentConfig::create(1e4);
    try {
        h_asymptotic(cfg.a, cfg);
        FAIL("expected domain error");
    } catch (const error& e) {
        CHECK(e.kind() == errc::domain);
    }
    CHECK_NOTHROW(h_asymptotic(7000.0, cfg));
}

// ------------------------------------------- expected_level_count_closed ----

TEST_CASE("closed form: lambda=1 reduces to (b-a)/(sqrt(2) pi sigma)") {
    ExperimentConfig c5 = ExperimentConfig::create(1e5);
    CHECK(expected_level_count_closed(1.0, c5) ==
          doctest::Approx((c5.b - c5.a) / (std::sqrt(2.0) * PI * c5.sigma)).epsilon(1e-15));
    ExperimentConfig c7 = ExperimentConfig::create(1e7);
    CHECK(expected_level_count_closed(1.0, c7) ==
          doctest::Approx(50.346284142382023).epsilon(1e-12));
}

TEST_CASE("closed form: exact symmetry and decay away from lambda=1") {
    ExperimentConfig cfg = ExperimentConfig::create(1e7);
    double sd = cfg.sd();
    // dyadic offsets near the sd scale keep 1 +- d exactly representable, so
    // the arguments really are mirror images and the results must match bitwise
    for (double d : {0.001953125, 0.00390625, 0.0078125}) {
        CHECK(expected_level_count_closed(1.0 + d, cfg) ==
              expected_level_count_closed(1.0 - d, cfg));
    }
    double e0 = expected_level_count_closed(1.0, cfg);
    double e1 = expected_level_count_closed(1.0 + sd, cfg);
    double e2 = expected_level_count_closed(1.0 + 2.0 * sd, cfg);
    CHECK(e0 > e1);
    CHECK(e1 > e2);
    CHECK(e2 > 0.0);
}

TEST_CASE("closed form: domain error when a <= 4 pi sigma and lambda != 1") {
    ExperimentConfig cfg = ExperimentConfig::create(1e4);
    CHECK_NOTHROW(expected_level_count_closed(1.0, cfg));  // exact reduction, no quadrature
    try {
        expected_level_count_closed(1.001, cfg);
        FAIL("expected domain error");
    } catch (const error& e) {
        CHECK(e.kind() == errc::domain);
    }
}

// ------------------------------------------ expected_level_count_midform ----

TEST_CASE("midform: empty table gives zero") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({});
    CHECK(expected_level_count_midform(1.0, cfg, t) == 0.0);
    CHECK(expected_level_count_midform(0.9, cfg, t) == 0.0);
}

TEST_CASE("midform: single-zero model reduces to a one-term integrand") {
    // With one ordinate, sqrt(h2/h1) = gamma_1 and h1 = a_1(t)^2, so the
    // expected count is (gamma_1/pi) Int exp(-c^2/a_1(t)^2) dt; compare with a
    // fixed-grid Simpson evaluation independent of the library quadrature.
    ExperimentConfig cfg = raw_cfg(10.0, 2.0, 50.0, 200.0);
    double g1 = 14.134725141734694;
    ZeroTable t = synthetic_table({g1});
    double lambda = 0.9;
    double c = (1.0 - lambda) / 2.0;
    double A = std::log(cfg.a), B = std::log(cfg.b);
    int n = 4000;  // even
    double h = (B - A) / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double tt = A + i * h;
        double a1 = amplitude(tt, g1, cfg);
        double f = g1 * std::exp(-c * c / (a1 * a1));
        acc += (i == 0 || i == n) ? f : (i % 2 ? 4.0 * f : 2.0 * f);
    }
    double simpson = acc * h / 3.0 / PI;
    CHECK(expected_level_count_midform(lambda, cfg, t) ==
          doctest::Approx(simpson).epsilon(1e-8));
}

TEST_CASE("midform: exact symmetry about lambda = 1") {
    ExperimentConfig cfg = raw_cfg(10.0, 2.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({14.134725141734694, 21.022039638771555});
    // dyadic offset: 1 +- 1/16 are exact, so c = (1 - lambda)/2 only flips sign
    CHECK(expected_level_count_midform(0.9375, cfg, t) ==
          expected_level_count_midform(1.0625, cfg, t));
}

TEST_CASE("midform vs closed: within 15% at b=1e7 across the central band") {
    ExperimentConfig cfg = ExperimentConfig::create(1e7);
    ZeroTable t = real_table(3300.0);
    double sd = cfg.sd();
    for (double lambda : {1.0, 1.002, 1.0 - 2.0 * sd, 1.0 + 2.0 * sd}) {
        double mid = expected_level_count_midform(lambda, cfg, t);
        double cl = expected_level_count_closed(lambda, cfg);
        CHECK(std::fabs(cl - mid) / mid < 0.15);
    }
}

// ------------------------------------------------------- Bessel identities --

TEST_CASE("bessel_j0: phase-average identity on a grid in [0,2]^2") {
    // (1/2pi) Int exp{i(x cos(psi) - y sin(psi))} dpsi over a period equals
    // J0(sqrt(x^2+y^2)) regardless of any fixed phase offset; the periodic
    // trapezoid rule converges spectrally, so 4096 nodes is far beyond 1e-8.
    const int n = 4096;
    for (double offset : {0.0, 1.7}) {
        for (double x : {0.0, 0.5, 1.0, 2.0}) {
            for (double y : {0.0, 0.5, 1.0, 2.0}) {
                double re = 0.0, im = 0.0;
                for (int i = 0; i < n; ++i) {
                    double psi = offset - PI + 2.0 * PI * i / n;
                    double arg = x * std::cos(psi) - y * std::sin(psi);
                    re += std::cos(arg);
                    im += std::sin(arg);
                }
                re /= n;
                im /= n;
                double expected = bessel_j0(std::sqrt(x * x + y * y));
                CHECK(std::fabs(re - expected) < 1e-10);
                CHECK(std::fabs(im) < 1e-10);
            }
        }
    }
}

TEST_CASE("bessel_j0: Gaussian product approximation bound") {
    // |Prod J0(a_j xi) - exp(-xi^2 h1 / 4)| <= exp(-xi^2 h1/4) (xi^4 sum a_j^4)/2
    // whenever xi^2 max a_j^2 <= 1e-2.
    ExperimentConfig cfg = raw_cfg(10.0, 3.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({14.134725141734694, 21.022039638771555, 25.010857580145688});
    for (double tt : {4.2, 4.8}) {
        std::vector<double> amps;
        double max_a = 0.0, sum4 = 0.0;
        for (double g : t.heights) {
            double a = amplitude(tt, g, cfg);
            amps.push_back(a);
            max_a = std::max(max_a, a);
            sum4 += a * a * a * a;
        }
        HPair h = h_exact(tt, cfg, t);
        for (double xi : {0.05, 0.2, 0.5}) {
            if (xi * xi * max_a * max_a > 1e-2) continue;
            double prod = 1.0;
            for (double a : amps) prod *= bessel_j0(a * xi);
            double gauss = std::exp(-xi * xi * h.h1 / 4.0);
            CHECK(std::fabs(prod - gauss) <= gauss * (std::pow(xi, 4.0) * sum4) / 2.0);
        }
    }
}

// ------------------------------------------------------------ level mapping -

TEST_CASE("level mapping: 1 - 2 f(log x) equals s_hat(x) to 1e-12") {
    // f evaluated with zero phases over the ordinates below x*theta/sigma is
    // the model-side path; s_hat is the series-side path.  The two expression
    // trees differ (exp(-t/2) vs 1/sqrt(x), shared exponent vs split), so the
    // agreement is a genuine numerical identity, not a tautology.
    ExperimentConfig cfg = ExperimentConfig::create(1e5);
    ZeroTable t = real_table(400.0);
    for (int i = 0; i < 64; ++i) {
        double x = cfg.a + (cfg.b - cfg.a) * (i + 0.5) / 64.0;
        double tt = std::log(x);
        double cutoff = x * cfg.theta / cfg.sigma;
        double f = 0.0;
        for (double g : t.heights) {
            if (g > cutoff) break;
            f += amplitude(tt, g, cfg) * std::cos(g * tt);
        }
        CHECK(std::fabs((1.0 - 2.0 * f) - s_hat(x, cfg, t)) <= 1e-12);
    }
}

// -------------------------------------------------------- crossing counting -

TEST_CASE("crossings with zero phases match a direct s_hat level scan") {
    ExperimentConfig cfg = ExperimentConfig::create(1e5);
    ZeroTable t = real_table(400.0);
    double cutoff = cfg.required_zero_height();
    double gmax = 0.0;
    std::size_t k = 0;
    for (double g : t.heights) {
        if (g > cutoff) break;
        gmax = g;
        ++k;
    }
    REQUIRE(k > 0);
    double A = std::log(cfg.a), B = std::log(cfg.b);
    std::uint64_t segments = (std::uint64_t)std::ceil((B - A) * 20.0 * gmax);
    double step = (B - A) / (double)segments;
    for (double lambda : {0.98, 1.01}) {
        std::uint64_t scan = 0;
        int prev = 0;
        for (std::uint64_t i = 0; i <= segments; ++i) {
            double tt = (i == segments) ? B : A + step * (double)i;
            double x = std::min(std::max(std::exp(tt), cfg.a), cfg.b);
            double v = s_hat(x, cfg, t) - lambda;
            int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
            if (s == 0) {
                ++scan;
                prev = 0;
                continue;
            }
            if (prev != 0 && s != prev) ++scan;
            prev = s;
        }
        std::vector<double> phases(k, 0.0);
        CHECK(count_crossings_with_phases(cfg, t, lambda, phases) == scan);
    }
}

TEST_CASE("crossings: phase count mismatch is rejected") {
    ExperimentConfig cfg = raw_cfg(10.0, 2.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({14.134725141734694, 21.022039638771555});
    std::vector<double> wrong(3, 0.0);
    try {
        count_crossings_with_phases(cfg, t, 1.0, wrong);
        FAIL("expected validation error");
    } catch (const error& e) {
        CHECK(e.kind() == errc::validation);
    }
}

TEST_CASE("crossings: oversized grid is a resource error") {
    // Cutoff 8e6 with the window (2.5e13, 5e13) forces ~1.1e8 grid nodes.
    ExperimentConfig cfg = raw_cfg(6.25e6, 1.0, 2.5e13, 5e13);
    ZeroTable t = synthetic_table({14.0, 7.9e6});
    std::vector<double> phases(2, 0.0);
    try {
        count_crossings_with_phases(cfg, t, 1.0, phases);
        FAIL("expected resource error");
    } catch (const error& e) {
        CHECK(e.kind() == errc::resource);
    }
}

// ------------------------------------------------------- simulate_crossings -

TEST_CASE("simulate_crossings: degenerate empty model") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({});
    CrossingStats st = simulate_crossings(cfg, t, 0.9, 10, 123);
    CHECK(st.mean == 0.0);
    CHECK(st.std_error == 0.0);
    CHECK(st.trials == 10);
}

TEST_CASE("simulate_crossings: trials < 2 rejected") {
    ExperimentConfig cfg = raw_cfg(10.0, 1.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({14.0});
    CHECK_THROWS_AS(simulate_crossings(cfg, t, 1.0, 1, 1), error);
}

TEST_CASE("simulate_crossings: deterministic in the seed") {
    ExperimentConfig cfg = raw_cfg(10.0, 3.0, 50.0, 200.0);
    ZeroTable t = synthetic_table({14.134725141734694, 21.022039638771555, 25.010857580145688});
    CrossingStats s1 = simulate_crossings(cfg, t, 0.95, 50, 777);
    CrossingStats s2 = simulate_crossings(cfg, t, 0.95, 50, 777);
    CHECK(s1.mean == s2.mean);
    CHECK(s1.std_error == s2.std_error);
    CrossingStats s3 = simulate_crossings(cfg, t, 0.95, 50, 778);
    CHECK((s3.mean != s1.mean || s3.std_error != s1.std_error));
}

TEST_CASE("simulate_crossings: agrees with the midform count at b=1e5") {
    ExperimentConfig cfg = ExperimentConfig::create(1e5);
    ZeroTable t = real_table(400.0);
    double mid = expected_level_count_midform(1.0, cfg, t);
    CrossingStats st = simulate_crossings(cfg, t, 1.0, 200, 42);
    CHECK(std::fabs(st.mean - mid) <= std::max(3.0 * st.std_error, 0.10 * mid));
}
