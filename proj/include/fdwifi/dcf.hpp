#pragma once

// Analytical saturation-throughput model: the DCF fixed point (tau, p),
// channel-event probabilities, per-access-mode event durations, secondary
// payload dimensioning under the ideal FD condition, and the throughput
// ratio formula.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdwifi/phy.hpp"

namespace fdwifi {

enum class AccessMode { HdBasic2Way, HdRtsCts4Way, Fd1to1, Fd1toN };

inline bool is_full_duplex(AccessMode m) {
    return m == AccessMode::Fd1to1 || m == AccessMode::Fd1toN;
}

inline const char* access_mode_name(AccessMode m) {
    switch (m) {
        case AccessMode::HdBasic2Way: return "hd2way";
        case AccessMode::HdRtsCts4Way: return "hd4way";
        case AccessMode::Fd1to1: return "fd11";
        default: return "fd1n";
    }
}

inline AccessMode access_mode_from_name(const std::string& name) {
    if (name == "hd2way") return AccessMode::HdBasic2Way;
    if (name == "hd4way") return AccessMode::HdRtsCts4Way;
    if (name == "fd11") return AccessMode::Fd1to1;
    if (name == "fd1n") return AccessMode::Fd1toN;
    throw std::runtime_error("unknown mode '" + name + "'");
}

// Collision probability as the product complement (1-Pi)(1-Ps) or the
// additive complement 1-Pi-Ps.
enum class PcVariant { ProductComplement, BianchiStandard };

inline const char* pc_variant_name(PcVariant v) {
    return v == PcVariant::ProductComplement ? "paper" : "bianchi";
}

inline PcVariant pc_variant_from_name(const std::string& name) {
    if (name == "paper") return PcVariant::ProductComplement;
    if (name == "bianchi") return PcVariant::BianchiStandard;
    throw std::runtime_error("unknown pc_variant '" + name + "'");
}

struct DcfScenario {
    int n_stations = 10;        // n
    int cw_min = 15;            // W
    int max_backoff_stage = 6;  // m
    AccessMode access_mode = AccessMode::HdBasic2Way;
    int n_channels = 1;         // N, used by Fd1toN
    FramePlan frame_plan;       // per-channel sizes and rates
    PhyProfile profile;         // per-channel timing
    double fd_turnaround_us = 11.0;  // receiver overhead to start the FD response
    PcVariant pc_variant = PcVariant::ProductComplement;
    AirtimeMode airtime_mode = AirtimeMode::SimpleRatio;

    int effective_channels() const {
        return access_mode == AccessMode::Fd1toN ? n_channels : 1;
    }

    void validate() const {
        if (n_stations < 1) throw std::domain_error("DcfScenario: n_stations must be >= 1");
        if (cw_min < 1) throw std::domain_error("DcfScenario: cw_min must be >= 1");
        if (max_backoff_stage < 0)
            throw std::domain_error("DcfScenario: max_backoff_stage must be >= 0");
        if (fd_turnaround_us < 0.0)
            throw std::domain_error("DcfScenario: fd_turnaround_us must be >= 0");
        if (access_mode == AccessMode::Fd1toN && n_channels < 1)
            throw std::domain_error("DcfScenario: n_channels must be >= 1");
        frame_plan.validate();
        profile.validate();
    }
};

struct FixedPointSolution {
    double tau = 0.0;
    double p = 0.0;
    double residual = 0.0;
};

namespace detail {

inline double bianchi_tau(double p, int w, int m) {
    const double one_minus_2p = 1.0 - 2.0 * p;
    return 2.0 * one_minus_2p /
           (one_minus_2p * (w + 1) + p * w * (1.0 - std::pow(2.0 * p, m)));
}

}  // namespace detail

// Simultaneous solution of tau = f(p), p = 1-(1-tau)^(n-1) by bisection.
// tau - f(p(tau)) is increasing on (0,1), so the bracket is trivial.
inline FixedPointSolution solve_fixed_point(int n, int cw_min, int stages) {
    if (n < 1) throw std::domain_error("solve_fixed_point: n must be >= 1");
    if (cw_min < 1) throw std::domain_error("solve_fixed_point: cw_min must be >= 1");
    if (stages < 0) throw std::domain_error("solve_fixed_point: stages must be >= 0");
    if (n == 1) return {2.0 / (cw_min + 1), 0.0, 0.0};

    auto mismatch = [&](double tau) {
        const double p = 1.0 - std::pow(1.0 - tau, n - 1);
        return tau - detail::bianchi_tau(p, cw_min, stages);
    };
    double lo = 0.0, hi = 1.0;
    double tau = 0.5, res = 0.0;
    bool converged = false;
    for (int i = 0; i < 200; ++i) {
        tau = 0.5 * (lo + hi);
        const double f = mismatch(tau);
        res = std::abs(f);
        if (res < 1e-14 || hi - lo < 1e-16) {
            converged = true;
            break;
        }
        (f < 0.0 ? lo : hi) = tau;
    }
    if (!converged && res >= 1e-12)
        throw std::runtime_error("solve_fixed_point: no convergence after 200 iterations");
    const double p = 1.0 - std::pow(1.0 - tau, n - 1);
    return {tau, p, res};
}

struct EventProbabilities {
    double p_idle = 0.0;
    double p_success = 0.0;
    double p_collision = 0.0;
};

inline EventProbabilities event_probabilities(double tau, int n, PcVariant variant) {
    if (!(tau > 0.0) || tau > 1.0)
        throw std::domain_error("event_probabilities: tau must be in (0,1]");
    if (n < 1) throw std::domain_error("event_probabilities: n must be >= 1");
    EventProbabilities ep;
    ep.p_idle = std::pow(1.0 - tau, n);
    ep.p_success = n * tau * std::pow(1.0 - tau, n - 1);
    ep.p_collision = variant == PcVariant::ProductComplement
                         ? (1.0 - ep.p_idle) * (1.0 - ep.p_success)
                         : 1.0 - ep.p_idle - ep.p_success;
    return ep;
}

// T_s: header + payload + ack exchange + interframe spaces. The FD modes
// share the 2-way composition since both directions finish together; the
// 4-way handshake prepends RTS/CTS.
inline double success_duration_us(const DcfScenario& sc) {
    sc.validate();
    const auto& fp = sc.frame_plan;
    const auto& pr = sc.profile;
    const double delta = fp.propagation_delay_us;
    const double body = header_airtime_us(fp, pr, sc.airtime_mode) +
                        payload_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.sifs_us +
                        ack_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.difs_us;
    if (sc.access_mode == AccessMode::HdRtsCts4Way)
        return rts_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.sifs_us +
               cts_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.sifs_us + body;
    return body;
}

// T_c: what a collision costs before the channel is sensed idle again.
// FD exposes only the header plus the responder start-up overhead; basic
// 2-way wastes the whole frame; 4-way exposes only the RTS.
inline double collision_duration_us(const DcfScenario& sc) {
    sc.validate();
    const auto& fp = sc.frame_plan;
    const auto& pr = sc.profile;
    const double delta = fp.propagation_delay_us;
    switch (sc.access_mode) {
        case AccessMode::HdBasic2Way:
            return header_airtime_us(fp, pr, sc.airtime_mode) +
                   payload_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.difs_us;
        case AccessMode::HdRtsCts4Way:
            return rts_airtime_us(fp, pr, sc.airtime_mode) + delta + pr.difs_us;
        default:
            return header_airtime_us(fp, pr, sc.airtime_mode) + delta +
                   sc.fd_turnaround_us + pr.difs_us;
    }
}

struct SecondaryPlan {
    long long l2_bytes = 0;     // L2
    double f_l_bytes = 0.0;     // payload the secondary rate could carry in [t1,t3]
    double delta_t_us = 0.0;    // start-time offset of the secondary transmission
    bool clamped = false;       // true when f_L >= L1
};

// Both transmissions must end together, so the secondary loses the bytes
// its rate could have carried while fetching and sending its own header.
inline SecondaryPlan secondary_payload(const DcfScenario& sc) {
    sc.validate();
    SecondaryPlan sp;
    if (!is_full_duplex(sc.access_mode)) return sp;
    const double t_h2 = header_airtime_us(sc.frame_plan, sc.profile, sc.airtime_mode);
    sp.f_l_bytes =
        sc.frame_plan.data_rate_bps * (sc.fd_turnaround_us + t_h2) * 1e-6 / 8.0;
    sp.delta_t_us = t_h2 + sc.fd_turnaround_us;
    const long long cut = static_cast<long long>(std::ceil(sp.f_l_bytes));
    if (cut >= sc.frame_plan.payload_bytes) {
        sp.l2_bytes = 0;
        sp.clamped = true;
    } else {
        sp.l2_bytes = sc.frame_plan.payload_bytes - cut;
    }
    return sp;
}

struct ChannelEventModel {
    double p_idle = 0.0, p_success = 0.0, p_collision = 0.0;
    double t_idle_us = 0.0, t_success_us = 0.0, t_collision_us = 0.0;
    double expected_payload_bits = 0.0;  // E[L] for one channel, (L1+L2)*8
    PcVariant formula_variant = PcVariant::ProductComplement;
};

inline ChannelEventModel channel_event_model(const DcfScenario& sc) {
    sc.validate();
    const FixedPointSolution fx = solve_fixed_point(sc.n_stations, sc.cw_min, sc.max_backoff_stage);
    const EventProbabilities ep = event_probabilities(fx.tau, sc.n_stations, sc.pc_variant);
    ChannelEventModel m;
    m.p_idle = ep.p_idle;
    m.p_success = ep.p_success;
    m.p_collision = ep.p_collision;
    m.t_idle_us = sc.profile.slot_us;
    m.t_success_us = success_duration_us(sc);
    m.t_collision_us = collision_duration_us(sc);
    m.expected_payload_bits =
        (sc.frame_plan.payload_bytes + secondary_payload(sc).l2_bytes) * 8.0;
    m.formula_variant = sc.pc_variant;
    return m;
}

enum class ThroughputSource { Analytical, Simulated };

struct ThroughputResult {
    double s_bps = 0.0;
    ThroughputSource source = ThroughputSource::Analytical;
    double ci_halfwidth_bps = 0.0;  // Simulated only
    double confidence = 0.0;        // Simulated only
};

// S = Ps*E[L]*N / (Ps*Ts + Pc*Tc + Pi*Ti), one contention round per
// (virtual) slot; N narrow channels multiply the payload carried.
inline ThroughputResult saturation_throughput(const DcfScenario& sc) {
    const ChannelEventModel m = channel_event_model(sc);
    const double denom_us = m.p_success * m.t_success_us +
                            m.p_collision * m.t_collision_us + m.p_idle * m.t_idle_us;
    if (!(denom_us > 0.0))
        throw std::runtime_error("saturation_throughput: degenerate event durations");
    const double bits = m.p_success * m.expected_payload_bits * sc.effective_channels();
    return {bits / denom_us * 1e6, ThroughputSource::Analytical, 0.0, 0.0};
}

struct StationSweepEntry {
    bool ok = false;
    std::string error;
    ThroughputResult result;
};

struct StationSweepRow {
    int n_stations = 0;
    std::vector<StationSweepEntry> entries;  // one per input scenario
};

// One row per station count, one entry per scenario (e.g. the four access
// modes). Per-row failures are flagged, not fatal.
inline std::vector<StationSweepRow> sweep_over_stations(const std::vector<DcfScenario>& scenarios,
                                                        const std::vector<int>& n_list) {
    std::vector<StationSweepRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        StationSweepRow row;
        row.n_stations = n;
        for (const auto& base : scenarios) {
            StationSweepEntry e;
            try {
                DcfScenario sc = base;
                sc.n_stations = n;
                e.result = saturation_throughput(sc);
                e.ok = true;
            } catch (const std::exception& ex) {
                e.ok = false;
                e.error = ex.what();
            }
            row.entries.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// Bundled benchmark scenario set: saturated 802.11a best-effort cell,
// 788-byte payload, 48/18 Mbps in a 20 MHz channel and 27/12 Mbps per
// 10 MHz narrow channel, 1 us propagation. Control-frame sizes carry the
// calibrated effective per-frame overhead; the event model uses the
// additive collision probability.
inline DcfScenario fig6_scenario(AccessMode mode) {
    DcfScenario sc;
    sc.cw_min = 15;
    sc.max_backoff_stage = 6;
    sc.access_mode = mode;
    sc.pc_variant = PcVariant::BianchiStandard;
    sc.frame_plan.mac_header_bytes = 28;
    sc.frame_plan.payload_bytes = 788;
    sc.frame_plan.ack_bytes = 296;
    sc.frame_plan.rts_bytes = 46;
    sc.frame_plan.cts_bytes = 46;
    sc.frame_plan.propagation_delay_us = 1.0;
    if (mode == AccessMode::Fd1toN) {
        sc.n_channels = 2;
        sc.profile = builtin_profile(ChannelWidth::W10MHz);
        sc.frame_plan.data_rate_bps = 27e6;
        sc.frame_plan.control_rate_bps = 12e6;
        sc.fd_turnaround_us = 22.0;  // half-clocked
    } else {
        sc.profile = builtin_profile(ChannelWidth::W20MHz);
        sc.frame_plan.data_rate_bps = 48e6;
        sc.frame_plan.control_rate_bps = 18e6;
        sc.fd_turnaround_us = 11.0;
    }
    return sc;
}

inline std::vector<DcfScenario> fig6_all_modes() {
    return {fig6_scenario(AccessMode::HdBasic2Way), fig6_scenario(AccessMode::HdRtsCts4Way),
            fig6_scenario(AccessMode::Fd1to1), fig6_scenario(AccessMode::Fd1toN)};
}

}  // namespace fdwifi
