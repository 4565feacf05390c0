#pragma once

// 802.11a-style PHY timing profiles (full, half and quarter clocked) and
// frame airtime computation. All durations in microseconds, rates in
// bits per second.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdwifi {

struct RateEntry {
    std::string id;
    double bits_per_second = 0.0;
};

struct PhyProfile {
    double channel_width_hz = 20e6;
    double slot_us = 9.0;
    double sifs_us = 16.0;
    double difs_us = 34.0;
    double preamble_sig_us = 20.0;  // PLCP preamble + SIGNAL
    double ofdm_symbol_us = 4.0;
    std::vector<RateEntry> rates;   // ascending

    void validate() const {
        if (!(channel_width_hz > 0.0) || !(slot_us > 0.0) || !(sifs_us > 0.0) ||
            !(difs_us > 0.0) || !(preamble_sig_us > 0.0) || !(ofdm_symbol_us > 0.0))
            throw std::domain_error("PhyProfile: durations and width must be > 0");
        if (std::abs(difs_us - (sifs_us + 2.0 * slot_us)) > 1e-9)
            throw std::domain_error("PhyProfile: difs must equal sifs + 2*slot");
        double prev = 0.0;
        for (const auto& r : rates) {
            if (!(r.bits_per_second > prev))
                throw std::domain_error("PhyProfile: rates must be positive and ascending");
            prev = r.bits_per_second;
        }
    }

    bool has_rate(double bps) const {
        for (const auto& r : rates)
            if (r.bits_per_second == bps) return true;
        return false;
    }
};

enum class ChannelWidth { W20MHz, W10MHz, W5MHz };

// Timing constants per the OFDM PHY: half/quarter clocking doubles and
// quadruples the preamble, symbol and SIFS; slot times are 9/13/21 us.
inline PhyProfile builtin_profile(ChannelWidth width) {
    PhyProfile p;
    auto fill_rates = [&p](double scale) {
        static const struct { const char* id; double mbps; } base[] = {
            {"bpsk-1/2", 6.0},  {"bpsk-3/4", 9.0},   {"qpsk-1/2", 12.0},
            {"qpsk-3/4", 18.0}, {"16qam-1/2", 24.0}, {"16qam-3/4", 36.0},
            {"64qam-2/3", 48.0}, {"64qam-3/4", 54.0},
        };
        for (const auto& b : base) p.rates.push_back({b.id, b.mbps * 1e6 / scale});
    };
    switch (width) {
        case ChannelWidth::W20MHz:
            p = {20e6, 9.0, 16.0, 34.0, 20.0, 4.0, {}};
            fill_rates(1.0);
            break;
        case ChannelWidth::W10MHz:
            p = {10e6, 13.0, 32.0, 58.0, 40.0, 8.0, {}};
            fill_rates(2.0);
            break;
        case ChannelWidth::W5MHz:
            p = {5e6, 21.0, 64.0, 106.0, 80.0, 16.0, {}};
            fill_rates(4.0);
            break;
    }
    return p;
}

inline PhyProfile builtin_profile_for_width_hz(double width_hz) {
    if (width_hz == 20e6) return builtin_profile(ChannelWidth::W20MHz);
    if (width_hz == 10e6) return builtin_profile(ChannelWidth::W10MHz);
    if (width_hz == 5e6) return builtin_profile(ChannelWidth::W5MHz);
    throw std::domain_error("no builtin profile for width " + std::to_string(width_hz));
}

enum class AirtimeMode {
    SimpleRatio,    // time = 8*bytes/rate
    OfdmQuantized,  // rounded up to whole OFDM symbols
};

// Pure payload transmit time, excluding any preamble.
inline double frame_airtime_us(long long bytes, double rate_bps, const PhyProfile& profile,
                               AirtimeMode mode = AirtimeMode::SimpleRatio) {
    if (!(rate_bps > 0.0)) throw std::domain_error("frame_airtime: rate must be > 0");
    if (bytes < 0) throw std::domain_error("frame_airtime: negative size");
    const double t = static_cast<double>(bytes) * 8.0 / rate_bps * 1e6;
    if (mode == AirtimeMode::SimpleRatio) return t;
    return std::ceil(t / profile.ofdm_symbol_us) * profile.ofdm_symbol_us;
}

struct FramePlan {
    int mac_header_bytes = 28;  // H1/H2
    int payload_bytes = 0;      // L1
    int ack_bytes = 14;
    int rts_bytes = 20;
    int cts_bytes = 14;
    double data_rate_bps = 6e6;
    double control_rate_bps = 6e6;
    double propagation_delay_us = 0.0;  // delta

    void validate() const {
        if (mac_header_bytes < 0 || payload_bytes < 0 || ack_bytes < 0 ||
            rts_bytes < 0 || cts_bytes < 0)
            throw std::domain_error("FramePlan: sizes must be >= 0");
        if (!(data_rate_bps > 0.0) || !(control_rate_bps > 0.0))
            throw std::domain_error("FramePlan: rates must be > 0");
        if (propagation_delay_us < 0.0)
            throw std::domain_error("FramePlan: propagation delay must be >= 0");
    }
};

// T_H: preamble plus the MAC header at the control rate.
inline double header_airtime_us(const FramePlan& plan, const PhyProfile& profile,
                                AirtimeMode mode = AirtimeMode::SimpleRatio) {
    plan.validate();
    return profile.preamble_sig_us +
           frame_airtime_us(plan.mac_header_bytes, plan.control_rate_bps, profile, mode);
}

inline double ack_airtime_us(const FramePlan& plan, const PhyProfile& profile,
                             AirtimeMode mode = AirtimeMode::SimpleRatio) {
    plan.validate();
    return profile.preamble_sig_us +
           frame_airtime_us(plan.ack_bytes, plan.control_rate_bps, profile, mode);
}

inline double rts_airtime_us(const FramePlan& plan, const PhyProfile& profile,
                             AirtimeMode mode = AirtimeMode::SimpleRatio) {
    plan.validate();
    return profile.preamble_sig_us +
           frame_airtime_us(plan.rts_bytes, plan.control_rate_bps, profile, mode);
}

inline double cts_airtime_us(const FramePlan& plan, const PhyProfile& profile,
                             AirtimeMode mode = AirtimeMode::SimpleRatio) {
    plan.validate();
    return profile.preamble_sig_us +
           frame_airtime_us(plan.cts_bytes, plan.control_rate_bps, profile, mode);
}

// T_L: payload at the data rate.
inline double payload_airtime_us(const FramePlan& plan, const PhyProfile& profile,
                                 AirtimeMode mode = AirtimeMode::SimpleRatio) {
    plan.validate();
    return frame_airtime_us(plan.payload_bytes, plan.data_rate_bps, profile, mode);
}

}  // namespace fdwifi
