#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdwifi/capacity.hpp"

using namespace fdwifi;
using Catch::Approx;

namespace {

// Truncate to 2 decimals in Mbps, the precision of the reference curves.
double trunc2_mbps(double bps) { return std::floor(bps / 1e6 * 100.0) / 100.0; }

// Independent closed-form break-even oracle:
// g* = (B/N) * (1 - X/Xg), X and Xg the two log2 factors.
double breakeven_closed_form(double b_hz, int n, double snr_db, double gain_db) {
    const double x = std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
    const double xg = std::log2(1.0 + std::pow(10.0, (snr_db + gain_db) / 10.0));
    return b_hz / n * (1.0 - x / xg);
}

ChannelPlan fig4_plan() {
    ChannelPlan p;
    p.total_bandwidth_hz = 20e6;
    p.n_channels = 2;
    p.guard_per_channel_hz = 100e3;
    p.gain_mode = SnrGainMode::FixedDb;
    p.fixed_gain_db = 3.0;
    return p;
}

}  // namespace

TEST_CASE("half-duplex capacity reference points") {
    CHECK(shannon_capacity_hd(20e6, {0.0}).bits_per_second == Approx(20e6).epsilon(1e-12));
    CHECK(trunc2_mbps(shannon_capacity_hd(20e6, {25.0}).bits_per_second) == Approx(166.18));
    CHECK(trunc2_mbps(shannon_capacity_hd(20e6, {10.0}).bits_per_second) == Approx(69.18));
    // linear SNR underflows to zero -> zero capacity
    CHECK(shannon_capacity_hd(20e6, {-4000.0}).bits_per_second == 0.0);
    CHECK(shannon_capacity_hd(5e6, {3.0}).arrangement == Arrangement::HalfDuplex);
}

TEST_CASE("half-duplex capacity rejects non-positive bandwidth") {
    CHECK_THROWS_AS(shannon_capacity_hd(0.0, {5.0}), std::domain_error);
    CHECK_THROWS_AS(shannon_capacity_hd(-20e6, {5.0}), std::domain_error);
}

TEST_CASE("1:1 full-duplex doubles half-duplex exactly") {
    CHECK(shannon_capacity_fd_1to1(20e6, {0.0}).bits_per_second == Approx(40e6).epsilon(1e-12));
    CHECK(trunc2_mbps(shannon_capacity_fd_1to1(20e6, {10.0}).bits_per_second) == Approx(138.37));
    CHECK(trunc2_mbps(shannon_capacity_fd_1to1(20e6, {25.0}).bits_per_second) == Approx(332.37));

    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> b_dist(1e3, 1e9), snr_dist(-40.0, 60.0);
    for (int i = 0; i < 2000; ++i) {
        const double b = b_dist(rng);
        const SnrPoint snr{snr_dist(rng)};
        CHECK(shannon_capacity_fd_1to1(b, snr).bits_per_second ==
              2.0 * shannon_capacity_hd(b, snr).bits_per_second);
    }
}

TEST_CASE("narrowing SNR gain") {
    ChannelPlan p = fig4_plan();
    CHECK(narrowing_snr_gain_db(p) == 3.0);

    p.n_channels = 1;
    CHECK(narrowing_snr_gain_db(p) == 0.0);
    p.gain_mode = SnrGainMode::BandwidthRatio;
    CHECK(narrowing_snr_gain_db(p) == 0.0);

    p.n_channels = 2;
    CHECK(narrowing_snr_gain_db(p) == Approx(3.0102999566398120).epsilon(1e-14));
    p.n_channels = 4;
    CHECK(narrowing_snr_gain_db(p) == Approx(6.0205999132796239).epsilon(1e-14));
}

TEST_CASE("1:N full-duplex capacity reference points") {
    const ChannelPlan p = fig4_plan();
    CHECK(trunc2_mbps(shannon_capacity_fd_1toN(p, {-20.0}).bits_per_second) == Approx(1.12));
    CHECK(trunc2_mbps(shannon_capacity_fd_1toN(p, {0.0}).bits_per_second) == Approx(62.67));
    CHECK(trunc2_mbps(shannon_capacity_fd_1toN(p, {25.0}).bits_per_second) == Approx(368.42));
    CHECK(shannon_capacity_fd_1toN(p, {0.0}).arrangement == Arrangement::Fd1toN);
}

TEST_CASE("1:N collapses to 1:1 for a single channel") {
    ChannelPlan p;
    p.total_bandwidth_hz = 20e6;
    p.n_channels = 1;
    p.guard_per_channel_hz = 0.0;
    for (double snr : {-20.0, 0.0, 10.0, 25.0})
        CHECK(shannon_capacity_fd_1toN(p, {snr}).bits_per_second ==
              shannon_capacity_fd_1to1(20e6, {snr}).bits_per_second);
    // N=1 never pays guard overhead
    p.guard_per_channel_hz = 5e6;
    CHECK(shannon_capacity_fd_1toN(p, {10.0}).bits_per_second ==
          shannon_capacity_fd_1to1(20e6, {10.0}).bits_per_second);
}

TEST_CASE("guard accounting modes") {
    ChannelPlan p = fig4_plan();
    const double per_channel = shannon_capacity_fd_1toN(p, {0.0}).bits_per_second;
    p.guard_accounting = GuardAccounting::TotalGuard;
    const double total = shannon_capacity_fd_1toN(p, {0.0}).bits_per_second;
    // literal reading subtracts g once: 2*(B-g)*X
    const double x = std::log2(1.0 + std::pow(10.0, 3.0 / 10.0));
    CHECK(total == Approx(2.0 * (20e6 - 100e3) * x).epsilon(1e-12));
    CHECK(total > per_channel);  // smaller guard charge
}

TEST_CASE("1:N domain errors") {
    ChannelPlan p = fig4_plan();
    p.guard_per_channel_hz = 10e6;  // N*g = B
    CHECK_THROWS_AS(shannon_capacity_fd_1toN(p, {10.0}), std::domain_error);
    p.guard_per_channel_hz = 11e6;
    CHECK_THROWS_AS(shannon_capacity_fd_1toN(p, {10.0}), std::domain_error);
    p.guard_per_channel_hz = -1.0;
    CHECK_THROWS_AS(shannon_capacity_fd_1toN(p, {10.0}), std::domain_error);
    p = fig4_plan();
    p.n_channels = 0;
    CHECK_THROWS_AS(shannon_capacity_fd_1toN(p, {10.0}), std::domain_error);
}

TEST_CASE("capacity is strictly monotone in SNR and bandwidth") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> b_dist(1e5, 1e8), snr_dist(-30.0, 40.0);
    std::uniform_real_distribution<double> d_snr(0.01, 5.0), f_b(1.001, 2.0);
    const ChannelPlan base = fig4_plan();
    for (int i = 0; i < 500; ++i) {
        const double b = b_dist(rng);
        const double snr = snr_dist(rng);
        const double snr2 = snr + d_snr(rng);
        const double b2 = b * f_b(rng);

        CHECK(shannon_capacity_hd(b, {snr2}).bits_per_second >
              shannon_capacity_hd(b, {snr}).bits_per_second);
        CHECK(shannon_capacity_hd(b2, {snr}).bits_per_second >
              shannon_capacity_hd(b, {snr}).bits_per_second);
        CHECK(shannon_capacity_fd_1to1(b, {snr2}).bits_per_second >
              shannon_capacity_fd_1to1(b, {snr}).bits_per_second);

        ChannelPlan p = base;
        p.total_bandwidth_hz = b;
        ChannelPlan p2 = p;
        p2.total_bandwidth_hz = b2;
        CHECK(shannon_capacity_fd_1toN(p, {snr2}).bits_per_second >
              shannon_capacity_fd_1toN(p, {snr}).bits_per_second);
        CHECK(shannon_capacity_fd_1toN(p2, {snr}).bits_per_second >
              shannon_capacity_fd_1toN(p, {snr}).bits_per_second);
    }
}

TEST_CASE("1:N with zero guard beats 1:1 at every finite SNR") {
    ChannelPlan p = fig4_plan();
    p.guard_per_channel_hz = 0.0;
    for (double snr = -40.0; snr <= 60.0; snr += 0.5)
        CHECK(shannon_capacity_fd_1toN(p, {snr}).bits_per_second >
              shannon_capacity_fd_1to1(20e6, {snr}).bits_per_second);
}

TEST_CASE("1:N capacity strictly decreases with guard width") {
    ChannelPlan p = fig4_plan();
    p.guard_per_channel_hz = 0.0;
    double prev = shannon_capacity_fd_1toN(p, {25.0}).bits_per_second;
    for (double g = 100e3; g < 9e6; g += 250e3) {
        p.guard_per_channel_hz = g;
        const double c = shannon_capacity_fd_1toN(p, {25.0}).bits_per_second;
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("guard-band break-even matches the closed form") {
    ChannelPlan p = fig4_plan();
    for (double snr : {-30.0, -10.0, 0.0, 10.0, 25.0, 40.0}) {
        const double g_bis = guard_band_breakeven(p, {snr});
        const double g_cf = breakeven_closed_form(20e6, 2, snr, 3.0);
        CHECK(g_bis == Approx(g_cf).margin(1.0));  // 1 Hz resolution
        // capacities agree to a fraction of a bit/s at g*
        ChannelPlan at = p;
        at.guard_per_channel_hz = g_bis;
        CHECK(std::abs(shannon_capacity_fd_1toN(at, {snr}).bits_per_second -
                       shannon_capacity_fd_1to1(20e6, {snr}).bits_per_second) <= 1.0);
    }
}

TEST_CASE("break-even reference value at 25 dB") {
    const double g = guard_band_breakeven(fig4_plan(), {25.0});
    CHECK(g == Approx(1068725.247953).margin(1.0));
    CHECK(g >= 1.0e6);
    CHECK(g <= 1.1e6);
}

TEST_CASE("break-even degenerates to zero without SNR gain") {
    ChannelPlan p = fig4_plan();
    p.fixed_gain_db = 0.0;
    CHECK(guard_band_breakeven(p, {25.0}) == 0.0);
}

TEST_CASE("break-even decreases with SNR") {
    const ChannelPlan p = fig4_plan();
    double prev = guard_band_breakeven(p, {-30.0});
    for (double snr = -25.0; snr <= 40.0; snr += 5.0) {
        const double g = guard_band_breakeven(p, {snr});
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("break-even requires at least two channels") {
    ChannelPlan p = fig4_plan();
    p.n_channels = 1;
    CHECK_THROWS_AS(guard_band_breakeven(p, {25.0}), std::domain_error);
}

TEST_CASE("capacity sweep covers plans x snr points") {
    const ChannelPlan p = fig4_plan();
    std::vector<ArrangedPlan> plans = {
        {Arrangement::HalfDuplex, p}, {Arrangement::Fd1to1, p}, {Arrangement::Fd1toN, p}};
    std::vector<SnrPoint> snrs;
    for (int s = -20; s <= 25; s += 5) snrs.push_back({static_cast<double>(s)});

    const auto rows = sweep_capacity(plans, snrs);
    REQUIRE(rows.size() == 30);
    for (const auto& row : rows) CHECK(row.ok);

    // plan-major ordering; spot-check the 0 dB column of each curve
    CHECK(rows[4].result.bits_per_second == Approx(20e6).epsilon(1e-12));
    CHECK(rows[14].result.bits_per_second == Approx(40e6).epsilon(1e-12));
    CHECK(trunc2_mbps(rows[24].result.bits_per_second) == Approx(62.67));
}

TEST_CASE("capacity sweep edge cases") {
    const ChannelPlan p = fig4_plan();
    CHECK(sweep_capacity({{Arrangement::HalfDuplex, p}}, {}).empty());

    const auto one = sweep_capacity({{Arrangement::Fd1toN, p}}, {{25.0}});
    REQUIRE(one.size() == 1);
    CHECK(one[0].result.bits_per_second ==
          shannon_capacity_fd_1toN(p, {25.0}).bits_per_second);

    // a broken plan yields a flagged row, not an abort
    ChannelPlan broken = p;
    broken.guard_per_channel_hz = 10.1e6;
    const auto mixed =
        sweep_capacity({{Arrangement::Fd1toN, broken}, {Arrangement::HalfDuplex, p}}, {{5.0}});
    REQUIRE(mixed.size() == 2);
    CHECK_FALSE(mixed[0].ok);
    CHECK_FALSE(mixed[0].error.empty());
    CHECK(mixed[1].ok);
}
