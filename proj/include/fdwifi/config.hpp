#pragma once

// Plain-text key-value config files ("key = value", '#' comments) for
// PhyProfile and DcfScenario.

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdwifi/dcf.hpp"
#include "fdwifi/phy.hpp"

namespace fdwifi {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline double to_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + value);
    }
}

inline int to_int(const std::string& key, const std::string& value) {
    const double v = to_number(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error("config: '" + key + "' must be an integer");
    return i;
}

}  // namespace detail

inline std::map<std::string, std::string> parse_kv(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(lineno));
        if (!kv.emplace(key, value).second)
            throw std::runtime_error("config: duplicate key '" + key + "'");
    }
    return kv;
}

// ---- PhyProfile ----
// keys: width_hz, slot_us, sifs_us, difs_us, preamble_us, symbol_us, rates_bps

inline PhyProfile load_profile(std::istream& in) {
    auto kv = parse_kv(in);
    PhyProfile p;
    p.rates.clear();
    auto take = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error(std::string("profile: missing key ") + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    p.channel_width_hz = detail::to_number("width_hz", take("width_hz"));
    p.slot_us = detail::to_number("slot_us", take("slot_us"));
    p.sifs_us = detail::to_number("sifs_us", take("sifs_us"));
    p.difs_us = detail::to_number("difs_us", take("difs_us"));
    p.preamble_sig_us = detail::to_number("preamble_us", take("preamble_us"));
    p.ofdm_symbol_us = detail::to_number("symbol_us", take("symbol_us"));
    std::istringstream rates(take("rates_bps"));
    std::string tok;
    int idx = 0;
    while (rates >> tok)
        p.rates.push_back({"rate" + std::to_string(idx++), detail::to_number("rates_bps", tok)});
    if (!kv.empty()) throw std::runtime_error("profile: unknown key '" + kv.begin()->first + "'");
    p.validate();
    return p;
}

inline void save_profile(std::ostream& out, const PhyProfile& p) {
    out << "width_hz = " << p.channel_width_hz << "\n"
        << "slot_us = " << p.slot_us << "\n"
        << "sifs_us = " << p.sifs_us << "\n"
        << "difs_us = " << p.difs_us << "\n"
        << "preamble_us = " << p.preamble_sig_us << "\n"
        << "symbol_us = " << p.ofdm_symbol_us << "\n";
    out << "rates_bps =";
    for (const auto& r : p.rates) out << ' ' << r.bits_per_second;
    out << "\n";
}

// ---- DcfScenario ----
// keys: n, cw_min, stages, mode, payload_bytes, data_rate_bps,
// control_rate_bps, delta_us, fd_turnaround_us, n_channels, pc_variant;
// optional: mac_header_bytes, ack_bytes, rts_bytes, cts_bytes, airtime_mode.
// The PHY profile is supplied separately (builtin by width, or a profile
// file); the scenario file holds contention and frame parameters only.

inline DcfScenario load_scenario(std::istream& in, const PhyProfile& profile) {
    auto kv = parse_kv(in);
    DcfScenario sc;
    sc.profile = profile;
    auto take = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error(std::string("scenario: missing key ") + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_opt = [&kv](const char* key, std::string* out) {
        auto it = kv.find(key);
        if (it == kv.end()) return false;
        *out = it->second;
        kv.erase(it);
        return true;
    };
    sc.n_stations = detail::to_int("n", take("n"));
    sc.cw_min = detail::to_int("cw_min", take("cw_min"));
    sc.max_backoff_stage = detail::to_int("stages", take("stages"));
    sc.access_mode = access_mode_from_name(take("mode"));
    sc.frame_plan.payload_bytes = detail::to_int("payload_bytes", take("payload_bytes"));
    sc.frame_plan.data_rate_bps = detail::to_number("data_rate_bps", take("data_rate_bps"));
    sc.frame_plan.control_rate_bps =
        detail::to_number("control_rate_bps", take("control_rate_bps"));
    sc.frame_plan.propagation_delay_us = detail::to_number("delta_us", take("delta_us"));
    sc.fd_turnaround_us = detail::to_number("fd_turnaround_us", take("fd_turnaround_us"));
    sc.n_channels = detail::to_int("n_channels", take("n_channels"));
    sc.pc_variant = pc_variant_from_name(take("pc_variant"));

    std::string v;
    if (take_opt("mac_header_bytes", &v)) sc.frame_plan.mac_header_bytes = detail::to_int("mac_header_bytes", v);
    if (take_opt("ack_bytes", &v)) sc.frame_plan.ack_bytes = detail::to_int("ack_bytes", v);
    if (take_opt("rts_bytes", &v)) sc.frame_plan.rts_bytes = detail::to_int("rts_bytes", v);
    if (take_opt("cts_bytes", &v)) sc.frame_plan.cts_bytes = detail::to_int("cts_bytes", v);
    if (take_opt("airtime_mode", &v)) {
        if (v == "simple") sc.airtime_mode = AirtimeMode::SimpleRatio;
        else if (v == "ofdm") sc.airtime_mode = AirtimeMode::OfdmQuantized;
        else throw std::runtime_error("scenario: unknown airtime_mode '" + v + "'");
    }
    if (!kv.empty()) throw std::runtime_error("scenario: unknown key '" + kv.begin()->first + "'");
    sc.validate();
    return sc;
}

inline void save_scenario(std::ostream& out, const DcfScenario& sc) {
    out << "n = " << sc.n_stations << "\n"
        << "cw_min = " << sc.cw_min << "\n"
        << "stages = " << sc.max_backoff_stage << "\n"
        << "mode = " << access_mode_name(sc.access_mode) << "\n"
        << "payload_bytes = " << sc.frame_plan.payload_bytes << "\n"
        << "data_rate_bps = " << sc.frame_plan.data_rate_bps << "\n"
        << "control_rate_bps = " << sc.frame_plan.control_rate_bps << "\n"
        << "delta_us = " << sc.frame_plan.propagation_delay_us << "\n"
        << "fd_turnaround_us = " << sc.fd_turnaround_us << "\n"
        << "n_channels = " << sc.n_channels << "\n"
        << "pc_variant = " << pc_variant_name(sc.pc_variant) << "\n"
        << "mac_header_bytes = " << sc.frame_plan.mac_header_bytes << "\n"
        << "ack_bytes = " << sc.frame_plan.ack_bytes << "\n"
        << "rts_bytes = " << sc.frame_plan.rts_bytes << "\n"
        << "cts_bytes = " << sc.frame_plan.cts_bytes << "\n"
        << "airtime_mode = "
        << (sc.airtime_mode == AirtimeMode::SimpleRatio ? "simple" : "ofdm") << "\n";
}

}  // namespace fdwifi
