#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fdwifi/config.hpp"

using namespace fdwifi;
using Catch::Approx;

TEST_CASE("profile round-trips through the key-value format") {
    const PhyProfile original = builtin_profile(ChannelWidth::W10MHz);
    std::stringstream buf;
    save_profile(buf, original);
    const PhyProfile loaded = load_profile(buf);
    CHECK(loaded.channel_width_hz == original.channel_width_hz);
    CHECK(loaded.slot_us == original.slot_us);
    CHECK(loaded.sifs_us == original.sifs_us);
    CHECK(loaded.difs_us == original.difs_us);
    CHECK(loaded.preamble_sig_us == original.preamble_sig_us);
    CHECK(loaded.ofdm_symbol_us == original.ofdm_symbol_us);
    REQUIRE(loaded.rates.size() == original.rates.size());
    for (std::size_t i = 0; i < loaded.rates.size(); ++i)
        CHECK(loaded.rates[i].bits_per_second == original.rates[i].bits_per_second);
}

TEST_CASE("profile files tolerate comments and whitespace") {
    std::stringstream buf(
        "# half-clocked profile\n"
        "width_hz = 10e6\n"
        "\n"
        "slot_us=13\n"
        "sifs_us =  32   # note\n"
        "difs_us = 58\n"
        "preamble_us = 40\n"
        "symbol_us = 8\n"
        "rates_bps = 3e6 6e6 12e6\n");
    const PhyProfile p = load_profile(buf);
    CHECK(p.slot_us == 13.0);
    CHECK(p.sifs_us == 32.0);
    CHECK(p.rates.size() == 3);
    CHECK(p.rates[2].bits_per_second == Approx(12e6));
}

TEST_CASE("profile loader rejects malformed input") {
    auto load = [](const char* text) {
        std::stringstream buf(text);
        return load_profile(buf);
    };
    CHECK_THROWS_AS(load("width_hz 20e6\n"), std::runtime_error);        // no '='
    CHECK_THROWS_AS(load("width_hz = 20e6\nwidth_hz = 10e6\n"), std::runtime_error);
    CHECK_THROWS_AS(load("width_hz = abc\n"), std::runtime_error);
    CHECK_THROWS_AS(load("width_hz = 20e6\n"), std::runtime_error);      // missing keys
    std::stringstream extra(
        "width_hz = 20e6\nslot_us = 9\nsifs_us = 16\ndifs_us = 34\n"
        "preamble_us = 20\nsymbol_us = 4\nrates_bps = 6e6\nbogus = 1\n");
    CHECK_THROWS_AS(load_profile(extra), std::runtime_error);
    // difs inconsistent with sifs + 2*slot
    std::stringstream bad(
        "width_hz = 20e6\nslot_us = 9\nsifs_us = 16\ndifs_us = 30\n"
        "preamble_us = 20\nsymbol_us = 4\nrates_bps = 6e6\n");
    CHECK_THROWS_AS(load_profile(bad), std::domain_error);
}

TEST_CASE("scenario round-trips through the key-value format") {
    const DcfScenario original = fig6_scenario(AccessMode::Fd1toN);
    std::stringstream buf;
    save_scenario(buf, original);
    const DcfScenario loaded = load_scenario(buf, original.profile);
    CHECK(loaded.n_stations == original.n_stations);
    CHECK(loaded.cw_min == original.cw_min);
    CHECK(loaded.max_backoff_stage == original.max_backoff_stage);
    CHECK(loaded.access_mode == original.access_mode);
    CHECK(loaded.n_channels == original.n_channels);
    CHECK(loaded.pc_variant == original.pc_variant);
    CHECK(loaded.fd_turnaround_us == original.fd_turnaround_us);
    CHECK(loaded.frame_plan.payload_bytes == original.frame_plan.payload_bytes);
    CHECK(loaded.frame_plan.mac_header_bytes == original.frame_plan.mac_header_bytes);
    CHECK(loaded.frame_plan.ack_bytes == original.frame_plan.ack_bytes);
    CHECK(loaded.frame_plan.rts_bytes == original.frame_plan.rts_bytes);
    CHECK(loaded.frame_plan.cts_bytes == original.frame_plan.cts_bytes);
    CHECK(loaded.frame_plan.data_rate_bps == original.frame_plan.data_rate_bps);
    CHECK(loaded.frame_plan.control_rate_bps == original.frame_plan.control_rate_bps);
    CHECK(loaded.frame_plan.propagation_delay_us ==
          original.frame_plan.propagation_delay_us);
    CHECK(loaded.airtime_mode == original.airtime_mode);
}

TEST_CASE("scenario loader applies defaults and rejects bad values") {
    const char* minimal =
        "n = 10\ncw_min = 15\nstages = 6\nmode = hd2way\npayload_bytes = 788\n"
        "data_rate_bps = 48e6\ncontrol_rate_bps = 18e6\ndelta_us = 1\n"
        "fd_turnaround_us = 11\nn_channels = 1\npc_variant = paper\n";
    std::stringstream ok(minimal);
    const DcfScenario sc = load_scenario(ok, builtin_profile(ChannelWidth::W20MHz));
    CHECK(sc.frame_plan.mac_header_bytes == 28);  // defaults kept
    CHECK(sc.frame_plan.ack_bytes == 14);
    CHECK(sc.pc_variant == PcVariant::ProductComplement);
    CHECK(sc.airtime_mode == AirtimeMode::SimpleRatio);

    std::string text(minimal);
    text.replace(text.find("hd2way"), 6, "bogus6");
    std::stringstream bm(text);
    CHECK_THROWS_AS(load_scenario(bm, builtin_profile(ChannelWidth::W20MHz)),
                    std::runtime_error);

    std::stringstream frac("n = 1.5\n");
    CHECK_THROWS_AS(load_scenario(frac, builtin_profile(ChannelWidth::W20MHz)),
                    std::runtime_error);
}

TEST_CASE("mode and variant names round-trip") {
    for (AccessMode m : {AccessMode::HdBasic2Way, AccessMode::HdRtsCts4Way,
                         AccessMode::Fd1to1, AccessMode::Fd1toN})
        CHECK(access_mode_from_name(access_mode_name(m)) == m);
    for (PcVariant v : {PcVariant::ProductComplement, PcVariant::BianchiStandard})
        CHECK(pc_variant_from_name(pc_variant_name(v)) == v);
    CHECK_THROWS_AS(access_mode_from_name("half"), std::runtime_error);
    CHECK_THROWS_AS(pc_variant_from_name("classic"), std::runtime_error);
}
