#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "relayq/fixed_rate.hpp"

using namespace relayq;

namespace {
const RateConfig kR22{2.0, 2.0};
}

TEST_SUITE("fixed_rate.optimal") {

TEST_CASE("case classification") {
    CHECK(classify_case({0.5, 0.5}, kR22) == PolicyCase::Case1);
    CHECK(classify_case({0.1, 0.8}, kR22) == PolicyCase::Case2);
    CHECK(classify_case({0.8, 0.1}, kR22) == PolicyCase::Case3);
}

TEST_CASE("exactly one case on a dense grid") {
    for (int i = 0; i < 60; ++i) {
        for (int j = 0; j < 60; ++j) {
            const OutageProfile prof{i / 60.0, j / 60.0};
            const double s0 = kR22.s0, r0 = kR22.r0;
            const bool c2 = prof.p_r > r0 / (r0 + s0 * (1 - prof.p_s));
            const bool c3 = prof.p_s > s0 / (s0 + r0 * (1 - prof.p_r));
            CHECK_FALSE((c2 && c3));
            const PolicyCase c = classify_case(prof, kR22);
            if (c2) CHECK(c == PolicyCase::Case2);
            else if (c3) CHECK(c == PolicyCase::Case3);
            else CHECK(c == PolicyCase::Case1);
        }
    }
}

TEST_CASE("coin probabilities") {
    CHECK(coin_probability(PolicyCase::Case1, {0.3, 0.3}, kR22) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(coin_probability(PolicyCase::Case2, {0.1, 0.8}, kR22) ==
          doctest::Approx(0.722222222222).epsilon(1e-9));
    CHECK(coin_probability(PolicyCase::Case3, {0.8, 0.1}, kR22) ==
          doctest::Approx(0.277777777778).epsilon(1e-9));
    CHECK_THROWS_AS(coin_probability(PolicyCase::Case2, {0.5, 0.5}, kR22),
                    std::domain_error);
}

TEST_CASE("selection tables") {
    const FixedRatePolicy c1{PolicyCase::Case1, 0.5};
    CHECK(select_link_optimal(c1, {1.0, 0.0, 1, 0}, 0) == 0);
    CHECK(select_link_optimal(c1, {1.0, 0.0, 1, 0}, 1) == 0);
    CHECK(select_link_optimal(c1, {0.0, 1.0, 0, 1}, 0) == 1);
    CHECK(select_link_optimal(c1, {1.0, 1.0, 1, 1}, 1) == 1);
    CHECK(select_link_optimal(c1, {1.0, 1.0, 1, 1}, 0) == 0);
    CHECK(select_link_optimal(c1, {0.0, 0.0, 0, 0}, 1) == 0); // pinned epsilon

    const FixedRatePolicy c2{PolicyCase::Case2, 0.7};
    CHECK(select_link_optimal(c2, {1.0, 0.0, 1, 0}, 1) == 1); // idle slot
    CHECK(select_link_optimal(c2, {1.0, 0.0, 1, 0}, 0) == 0);
    CHECK(select_link_optimal(c2, {0.0, 1.0, 0, 1}, 0) == 1);
    CHECK(select_link_optimal(c2, {1.0, 1.0, 1, 1}, 0) == 1);

    const FixedRatePolicy c3{PolicyCase::Case3, 0.3};
    CHECK(select_link_optimal(c3, {1.0, 0.0, 1, 0}, 1) == 0); // d = 1 - O_S
    CHECK(select_link_optimal(c3, {0.0, 1.0, 0, 1}, 0) == 1);
}

TEST_CASE("throughput closed forms") {
    CHECK(throughput_optimal({0.5, 0.5}, kR22) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(throughput_optimal({0.1, 0.8}, kR22) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(throughput_optimal({0.0, 0.0}, kR22) ==
          doctest::Approx(throughput_no_outage(kR22)).epsilon(1e-12));
    CHECK(throughput_no_outage({3.0, 6.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("outage closed forms and the 1 - tau/tau0 identity") {
    CHECK(outage_optimal({0.5, 0.5}, kR22) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(outage_optimal({0.1, 0.8}, kR22) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(outage_optimal({0.0, 0.0}, kR22) == doctest::Approx(0.0));
    for (int i = 0; i < 25; ++i) {
        for (int j = 0; j < 25; ++j) {
            const OutageProfile prof{i / 25.0, j / 25.0};
            const double f = outage_optimal(prof, kR22);
            const double tau = throughput_optimal(prof, kR22);
            CHECK(f == doctest::Approx(1.0 - tau / throughput_no_outage(kR22)).epsilon(1e-12));
        }
    }
}

TEST_CASE("throughput is monotone non-increasing in each outage probability") {
    const int n = 40;
    for (int i = 0; i < n; ++i) {
        double prev_s = 1e9, prev_r = 1e9;
        for (int j = 0; j < n; ++j) {
            const double tau_s = throughput_optimal({j / double(n), i / double(n)}, kR22);
            const double tau_r = throughput_optimal({i / double(n), j / double(n)}, kR22);
            CHECK(tau_s <= prev_s + 1e-12);
            CHECK(tau_r <= prev_r + 1e-12);
            prev_s = tau_s;
            prev_r = tau_r;
        }
    }
}

TEST_CASE("high snr asymptote and diversity-multiplexing tradeoff") {
    ChannelParams ch{1.0, 1.0, 100.0, 100.0};
    const HighSnrFixed h = high_snr_fixed(ch, kR22);
    CHECK(h.fout_asymptote == doctest::Approx(9e-4).epsilon(1e-12));
    const OutageProfile prof = rayleigh_outage_probs(ch, kR22);
    const double exact = prof.p_s * prof.p_r;
    CHECK(std::fabs(h.fout_asymptote - exact) / exact < 0.05);
    CHECK(h.tau_limit == doctest::Approx(1.0));

    CHECK(diversity_multiplexing(0.25) == doctest::Approx(1.0));
    CHECK(diversity_multiplexing(1e-9) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(diversity_multiplexing(0.5), std::domain_error);
}

TEST_CASE("rate choice minimizing the high-snr outage") {
    CHECK(optimal_rates(1.0).s0 == doctest::Approx(2.0));
    CHECK(optimal_rates(1.0).r0 == doctest::Approx(2.0));
    CHECK(optimal_rates(0.5).s0 == doctest::Approx(1.0));

    // grid-search oracle at gamma = 40 dB with unequal average gains: scan
    // S0 with R0 pinned by the throughput constraint and locate the minimum
    const double tau0 = 1.0;
    const double gamma = 1e4;
    const double obar_s = 3.0, obar_r = 0.5;
    double best_s0 = 0.0, best_f = 1e300;
    for (double s0 = 1.2; s0 <= 4.0; s0 += 0.002) {
        const double r0 = s0 * tau0 / (s0 - tau0);
        const double f = (std::exp2(s0) - 1.0) / obar_s * (std::exp2(r0) - 1.0) / obar_r /
                         (gamma * gamma);
        if (f < best_f) {
            best_f = f;
            best_s0 = s0;
        }
    }
    CHECK(std::fabs(best_s0 - 2.0 * tau0) < 0.005);
}

} // TEST_SUITE
