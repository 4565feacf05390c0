#pragma once

// Closed-form capacity limits below the MAC layer: half-duplex, 1:1
// full-duplex and 1:N narrow-channel full-duplex arrangements, the
// channel-narrowing SNR gain and the guard-band break-even point.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdwifi {

struct SnrPoint {
    double snr_db = 0.0;

    double linear() const { return std::pow(10.0, snr_db / 10.0); }
};

enum class Arrangement { HalfDuplex, Fd1to1, Fd1toN };

struct CapacityResult {
    double bits_per_second = 0.0;
    Arrangement arrangement = Arrangement::HalfDuplex;
};

enum class SnrGainMode { FixedDb, BandwidthRatio };

// The 1:N arrangement charges guard spectrum either once per sub-channel
// or once in total. PerChannel is the default everywhere.
enum class GuardAccounting { PerChannel, TotalGuard };

struct ChannelPlan {
    double total_bandwidth_hz = 20e6;   // B
    int n_channels = 1;                 // N
    double guard_per_channel_hz = 0.0;  // g
    SnrGainMode gain_mode = SnrGainMode::FixedDb;
    double fixed_gain_db = 3.0;
    GuardAccounting guard_accounting = GuardAccounting::PerChannel;

    // Spectrum left after guard bands. N=1 never pays a guard.
    double usable_bandwidth_hz() const {
        if (n_channels <= 1) return total_bandwidth_hz;
        const double guard = guard_accounting == GuardAccounting::PerChannel
                                 ? n_channels * guard_per_channel_hz
                                 : guard_per_channel_hz;
        return total_bandwidth_hz - guard;
    }

    void validate() const {
        if (!(total_bandwidth_hz > 0.0))
            throw std::domain_error("ChannelPlan: total_bandwidth_hz must be > 0");
        if (n_channels < 1)
            throw std::domain_error("ChannelPlan: n_channels must be >= 1");
        if (guard_per_channel_hz < 0.0)
            throw std::domain_error("ChannelPlan: guard_per_channel_hz must be >= 0");
        if (n_channels > 1 && usable_bandwidth_hz() <= 0.0)
            throw std::domain_error("ChannelPlan: guard bands leave no usable spectrum");
    }
};

namespace detail {

// log2(1 + x) without cancellation for small x.
inline double log2_1p(double x) { return std::log1p(x) / 0.69314718055994530942; }

}  // namespace detail

inline CapacityResult shannon_capacity_hd(double bandwidth_hz, SnrPoint snr) {
    if (!(bandwidth_hz > 0.0))
        throw std::domain_error("shannon_capacity_hd: bandwidth must be > 0");
    return {bandwidth_hz * detail::log2_1p(snr.linear()), Arrangement::HalfDuplex};
}

// Exactly twice the half-duplex value, by construction.
inline CapacityResult shannon_capacity_fd_1to1(double bandwidth_hz, SnrPoint snr) {
    return {2.0 * shannon_capacity_hd(bandwidth_hz, snr).bits_per_second,
            Arrangement::Fd1to1};
}

// SNR gain from splitting the band into N narrower channels. Zero for
// N=1; a configured constant (3 dB measured for halving) or the
// bandwidth ratio 10*log10(N) otherwise.
inline double narrowing_snr_gain_db(const ChannelPlan& plan) {
    plan.validate();
    if (plan.n_channels == 1) return 0.0;
    if (plan.gain_mode == SnrGainMode::FixedDb) return plan.fixed_gain_db;
    return 10.0 * std::log10(static_cast<double>(plan.n_channels));
}

inline CapacityResult shannon_capacity_fd_1toN(const ChannelPlan& plan, SnrPoint snr) {
    plan.validate();
    if (plan.n_channels == 1)  // collapses to the 1:1 arrangement
        return {shannon_capacity_fd_1to1(plan.total_bandwidth_hz, snr).bits_per_second,
                Arrangement::Fd1toN};
    const double usable = plan.usable_bandwidth_hz();
    if (usable <= 0.0)
        throw std::domain_error("shannon_capacity_fd_1toN: no usable spectrum");
    const SnrPoint boosted{snr.snr_db + narrowing_snr_gain_db(plan)};
    // 2N channels of width usable/N each
    return {2.0 * usable * detail::log2_1p(boosted.linear()), Arrangement::Fd1toN};
}

// Largest per-channel guard band such that the 1:N arrangement still
// meets or beats 1:1 at the given SNR. Bisection on g; resolution well
// below 1 Hz so the capacities at g* match within a fraction of a bit/s.
inline double guard_band_breakeven(ChannelPlan plan, SnrPoint snr) {
    if (plan.n_channels < 2)
        throw std::domain_error("guard_band_breakeven: needs n_channels >= 2");
    const double c_fd1 =
        shannon_capacity_fd_1to1(plan.total_bandwidth_hz, snr).bits_per_second;
    auto surplus = [&](double g) {
        plan.guard_per_channel_hz = g;
        return shannon_capacity_fd_1toN(plan, snr).bits_per_second - c_fd1;
    };
    if (surplus(0.0) <= 0.0) return 0.0;  // no gain, any guard loses
    double lo = 0.0;
    double hi = plan.guard_accounting == GuardAccounting::PerChannel
                    ? plan.total_bandwidth_hz / plan.n_channels
                    : plan.total_bandwidth_hz;
    for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (surplus(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// One capacity curve: an arrangement evaluated on a channel plan.
struct ArrangedPlan {
    Arrangement arrangement = Arrangement::HalfDuplex;
    ChannelPlan plan;
};

struct CapacitySweepRow {
    ArrangedPlan input;
    SnrPoint snr;
    bool ok = false;
    std::string error;
    CapacityResult result;
};

// One row per (plan, snr) pair, plan-major order. Bad points become
// flagged rows instead of aborting the sweep.
inline std::vector<CapacitySweepRow> sweep_capacity(const std::vector<ArrangedPlan>& plans,
                                                    const std::vector<SnrPoint>& snr_range) {
    std::vector<CapacitySweepRow> rows;
    rows.reserve(plans.size() * snr_range.size());
    for (const auto& ap : plans) {
        for (const auto& snr : snr_range) {
            CapacitySweepRow row;
            row.input = ap;
            row.snr = snr;
            try {
                switch (ap.arrangement) {
                    case Arrangement::HalfDuplex:
                        row.result = shannon_capacity_hd(ap.plan.total_bandwidth_hz, snr);
                        break;
                    case Arrangement::Fd1to1:
                        row.result = shannon_capacity_fd_1to1(ap.plan.total_bandwidth_hz, snr);
                        break;
                    case Arrangement::Fd1toN:
                        row.result = shannon_capacity_fd_1toN(ap.plan, snr);
                        break;
                }
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace fdwifi
