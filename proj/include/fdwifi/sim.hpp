#pragma once

// Slotted discrete-event simulator of saturated CSMA/CA with FD
// dual-links. Independent oracle for the analytical model: every virtual
// slot, stations with a zero backoff counter transmit; the slot resolves
// to idle/success/collision with the scenario's event durations; batch
// means drive the confidence-interval stopping rule.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "fdwifi/dcf.hpp"

namespace fdwifi {

struct StationState {
    int backoff_stage = 0;
    long long backoff_counter = 0;
};

struct SimConfig {
    DcfScenario scenario;
    std::uint64_t seed = 1;
    double confidence = 0.95;
    double max_rel_error = 0.05;
    int min_batches = 30;
    long long slots_per_batch = 20000;
    long long max_slots = 200'000'000;  // hard cap against non-termination

    void validate() const {
        scenario.validate();
        if (!(confidence > 0.0 && confidence < 1.0))
            throw std::domain_error("SimConfig: confidence must be in (0,1)");
        if (!(max_rel_error > 0.0))
            throw std::domain_error("SimConfig: max_rel_error must be > 0");
        if (min_batches < 2) throw std::domain_error("SimConfig: min_batches must be >= 2");
        if (slots_per_batch < 1 || max_slots < slots_per_batch)
            throw std::domain_error("SimConfig: bad slot limits");
    }
};

struct SimResult {
    double s_bps = 0.0;
    double ci_halfwidth_bps = 0.0;
    double confidence = 0.0;
    long long slots_simulated = 0;
    long long idle_events = 0;
    long long success_events = 0;
    long long collision_events = 0;
    long long batches = 0;
    std::uint64_t seed = 0;
    std::vector<long long> per_station_successes;

    bool operator==(const SimResult&) const = default;
};

// PRNG identifier recorded with every result; draws use the multiply-shift
// bounded mapping so runs reproduce across standard libraries.
inline const char* sim_rng_id() { return "mt19937_64"; }

namespace detail {

class BoundedRng {
  public:
    explicit BoundedRng(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(rng_()) * bound) >> 64);
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace detail

inline SimResult run_saturation_sim(const SimConfig& config) {
    config.validate();
    const DcfScenario& sc = config.scenario;
    const int n = sc.n_stations;
    const int max_stage = sc.max_backoff_stage;
    const std::uint64_t w0 = static_cast<std::uint64_t>(sc.cw_min) + 1;

    const double t_success = success_duration_us(sc);
    const double t_collision = collision_duration_us(sc);
    const double t_idle = sc.profile.slot_us;
    const double bits_per_success =
        (sc.frame_plan.payload_bytes + secondary_payload(sc).l2_bytes) * 8.0 *
        sc.effective_channels();

    detail::BoundedRng rng(config.seed);
    std::vector<StationState> stations(n);
    for (auto& st : stations) st.backoff_counter = static_cast<long long>(rng.below(w0));

    SimResult res;
    res.seed = config.seed;
    res.confidence = config.confidence;
    res.per_station_successes.assign(n, 0);

    std::vector<int> transmitters;
    transmitters.reserve(n);
    std::vector<double> batch_throughput;
    double total_bits = 0.0, total_time_us = 0.0;

    for (;;) {
        double batch_bits = 0.0, batch_time_us = 0.0;
        for (long long s = 0; s < config.slots_per_batch; ++s) {
            transmitters.clear();
            for (int i = 0; i < n; ++i)
                if (stations[i].backoff_counter == 0) transmitters.push_back(i);

            // everyone who did not transmit counts this virtual slot down;
            // decrement before the transmitters redraw so a fresh draw
            // waits its full count
            for (int i = 0; i < n; ++i)
                if (stations[i].backoff_counter > 0) --stations[i].backoff_counter;

            if (transmitters.empty()) {
                batch_time_us += t_idle;
                ++res.idle_events;
            } else if (transmitters.size() == 1) {
                batch_time_us += t_success;
                batch_bits += bits_per_success;
                ++res.success_events;
                auto& st = stations[transmitters.front()];
                ++res.per_station_successes[transmitters.front()];
                st.backoff_stage = 0;
                st.backoff_counter = static_cast<long long>(rng.below(w0));
            } else {
                batch_time_us += t_collision;
                ++res.collision_events;
                for (int i : transmitters) {
                    auto& st = stations[i];
                    st.backoff_stage = std::min(st.backoff_stage + 1, max_stage);
                    st.backoff_counter = static_cast<long long>(
                        rng.below(w0 << st.backoff_stage));
                }
            }
        }
        res.slots_simulated += config.slots_per_batch;
        total_bits += batch_bits;
        total_time_us += batch_time_us;
        batch_throughput.push_back(batch_bits / batch_time_us * 1e6);

        const auto nb = static_cast<long long>(batch_throughput.size());
        if (nb >= config.min_batches) {
            double mean = 0.0;
            for (double b : batch_throughput) mean += b;
            mean /= static_cast<double>(nb);
            double var = 0.0;
            for (double b : batch_throughput) var += (b - mean) * (b - mean);
            var /= static_cast<double>(nb - 1);
            const boost::math::students_t_distribution<double> dist(
                static_cast<double>(nb - 1));
            const double tq =
                boost::math::quantile(dist, 1.0 - (1.0 - config.confidence) / 2.0);
            const double half = tq * std::sqrt(var / static_cast<double>(nb));
            if (mean > 0.0 && half / mean <= config.max_rel_error) {
                res.ci_halfwidth_bps = half;
                break;
            }
        }
        if (res.slots_simulated >= config.max_slots)
            throw std::runtime_error("run_saturation_sim: slot cap reached before CI target");
    }

    res.batches = static_cast<long long>(batch_throughput.size());
    res.s_bps = total_bits / total_time_us * 1e6;
    return res;
}

// One JSON-lines record per run: config echo plus the measured result.
inline std::string sim_record_json(const SimConfig& cfg, const SimResult& res) {
    nlohmann::json j;
    j["config"] = {
        {"n", cfg.scenario.n_stations},
        {"cw_min", cfg.scenario.cw_min},
        {"stages", cfg.scenario.max_backoff_stage},
        {"mode", access_mode_name(cfg.scenario.access_mode)},
        {"n_channels", cfg.scenario.effective_channels()},
        {"payload_bytes", cfg.scenario.frame_plan.payload_bytes},
        {"data_rate_bps", cfg.scenario.frame_plan.data_rate_bps},
        {"control_rate_bps", cfg.scenario.frame_plan.control_rate_bps},
        {"confidence", cfg.confidence},
        {"max_rel_error", cfg.max_rel_error},
        {"seed", cfg.seed},
        {"rng", sim_rng_id()},
    };
    j["s_bps"] = res.s_bps;
    j["ci_halfwidth_bps"] = res.ci_halfwidth_bps;
    j["slots"] = res.slots_simulated;
    j["event_counts"] = {{"idle", res.idle_events},
                         {"success", res.success_events},
                         {"collision", res.collision_events}};
    return j.dump();
}

struct ValidationRow {
    int n_stations = 0;
    AccessMode mode = AccessMode::HdBasic2Way;
    double analytical_bps = 0.0;
    double simulated_bps = 0.0;
    double ci_halfwidth_bps = 0.0;
    double rel_diff = 0.0;
    bool pass = false;
    SimResult sim_result;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool all_pass = true;
};

// Sim vs analytical model per station count. The analytical side always
// uses the additive collision probability: the slotted process realizes
// mutually exclusive events, which is that variant by construction.
inline ValidationReport validate_against_model(const DcfScenario& base,
                                               const std::vector<int>& n_list,
                                               double tolerance,
                                               std::uint64_t seed = 1,
                                               double confidence = 0.95,
                                               double max_rel_error = 0.05) {
    if (!(tolerance > 0.0))
        throw std::domain_error("validate_against_model: tolerance must be > 0");
    ValidationReport report;
    std::uint64_t run_seed = seed;
    for (int n : n_list) {
        DcfScenario sc = base;
        sc.n_stations = n;
        sc.pc_variant = PcVariant::BianchiStandard;

        SimConfig cfg;
        cfg.scenario = sc;
        cfg.seed = run_seed++;
        cfg.confidence = confidence;
        cfg.max_rel_error = max_rel_error;

        ValidationRow row;
        row.n_stations = n;
        row.mode = sc.access_mode;
        row.analytical_bps = saturation_throughput(sc).s_bps;
        row.sim_result = run_saturation_sim(cfg);
        const SimResult& sim = row.sim_result;
        row.simulated_bps = sim.s_bps;
        row.ci_halfwidth_bps = sim.ci_halfwidth_bps;
        row.rel_diff = (sim.s_bps - row.analytical_bps) / row.analytical_bps;
        row.pass = std::abs(row.rel_diff) <= tolerance;
        if (!row.pass) report.all_pass = false;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace fdwifi
