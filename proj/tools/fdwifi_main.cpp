// fdwifi: capacity curves, saturation-throughput sweeps, guard-band
// break-even and simulator-vs-model validation as CSV/SVG reports.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fdwifi/capacity.hpp"
#include "fdwifi/config.hpp"
#include "fdwifi/dcf.hpp"
#include "fdwifi/report.hpp"
#include "fdwifi/sim.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

using namespace fdwifi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// start:stop:step, inclusive of stop when aligned; a bare number is a
// single-element range.
std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad range token '" + tok + "' in '" + spec + "'");
        }
    }
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3) throw UsageError("range must be start:stop:step, got '" + spec + "'");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0)) throw UsageError("range step must be > 0 in '" + spec + "'");
    if (stop < start) throw UsageError("range stop < start in '" + spec + "'");
    std::vector<double> values;
    for (double v = start; v <= stop + step * 1e-9; v += step) values.push_back(v);
    return values;
}

std::vector<int> parse_int_list(const std::string& spec) {
    // comma list or start:stop:step
    std::vector<int> values;
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                values.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw UsageError("bad integer '" + tok + "' in '" + spec + "'");
            }
        }
        return values;
    }
    for (double v : parse_range(spec)) {
        const int i = static_cast<int>(v + 0.5);
        values.push_back(i);
    }
    return values;
}

std::filesystem::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("FDWIFI_OUTDIR"); env && *env) return env;
    return ".";
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct OutputSet {
    std::filesystem::path dir;
    std::string name;
    std::vector<std::string> files;

    std::filesystem::path add(const std::string& ext) {
        auto p = dir / (name + ext);
        files.push_back(p.string());
        return p;
    }
};

void emit_table(OutputSet& out, const Table& table, bool svg, bool dat,
                const std::string& title) {
    {
        std::ofstream f(out.add(".csv"), std::ios::binary);
        write_csv(f, table);
    }
    if (dat || svg) {
        std::ofstream f(out.add(".dat"), std::ios::binary);
        write_dat(f, table);
    }
    if (svg) {
        std::ofstream f(out.add(".svg"), std::ios::binary);
        f << render_svg_chart(table, title);
    }
}

void finish_manifest(OutputSet& out, const std::string& cmdline,
                     const std::vector<std::string>& configs,
                     const std::vector<std::uint64_t>& seeds) {
    RunManifest m;
    m.tool = "fdwifi";
    m.version = kVersion;
    m.command_line = cmdline;
    m.config_files = configs;
    m.seeds = seeds;
    m.outputs = out.files;
    m.timestamp_utc = utc_timestamp_now();
    write_manifest((out.dir / (out.name + ".manifest.json")).string(), m);
}

// ---- phy-sweep ----

struct PhySweepArgs {
    double bandwidth_hz = 20e6;
    int n_channels = 2;
    double guard_hz = 100e3;
    std::string gain_mode = "fixed";
    double gain_db = 3.0;
    std::string guard_accounting = "per-channel";
    std::string snr;
    std::string out;
    std::string name = "phy_sweep";
    bool svg = false;
    bool dat = false;
};

ChannelPlan plan_from(const PhySweepArgs& a) {
    ChannelPlan p;
    p.total_bandwidth_hz = a.bandwidth_hz;
    p.n_channels = a.n_channels;
    p.guard_per_channel_hz = a.guard_hz;
    if (a.gain_mode == "fixed")
        p.gain_mode = SnrGainMode::FixedDb;
    else if (a.gain_mode == "ratio")
        p.gain_mode = SnrGainMode::BandwidthRatio;
    else
        throw UsageError("unknown --gain-mode '" + a.gain_mode + "' (fixed|ratio)");
    p.fixed_gain_db = a.gain_db;
    if (a.guard_accounting == "per-channel")
        p.guard_accounting = GuardAccounting::PerChannel;
    else if (a.guard_accounting == "total")
        p.guard_accounting = GuardAccounting::TotalGuard;
    else
        throw UsageError("unknown --guard-accounting '" + a.guard_accounting +
                         "' (per-channel|total)");
    return p;
}

int run_phy_sweep(const PhySweepArgs& a, const std::string& cmdline) {
    const ChannelPlan plan = plan_from(a);
    std::vector<SnrPoint> snrs;
    for (double v : parse_range(a.snr)) snrs.push_back({v});
    if (snrs.empty()) throw UsageError("--snr produced no points");

    const std::vector<ArrangedPlan> plans = {{Arrangement::HalfDuplex, plan},
                                             {Arrangement::Fd1to1, plan},
                                             {Arrangement::Fd1toN, plan}};
    const auto rows = sweep_capacity(plans, snrs);

    Table t;
    t.columns = {"snr_db", "c_hd_bps", "c_fd1_bps", "c_fdN_bps"};
    const std::size_t n = snrs.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto cell = [&](std::size_t plan_idx) {
            const auto& r = rows[plan_idx * n + i];
            return r.ok ? r.result.bits_per_second : std::nan("");
        };
        t.rows.push_back({snrs[i].snr_db, cell(0), cell(1), cell(2)});
    }

    OutputSet out{output_dir(a.out), a.name, {}};
    emit_table(out, t, a.svg, a.dat, "Capacity vs SNR");
    finish_manifest(out, cmdline, {}, {});
    std::cout << "wrote " << out.files.front() << " (" << t.rows.size() << " rows)\n";
    return kExitOk;
}

// ---- mac-sweep ----

struct MacSweepArgs {
    std::string preset = "fig6";
    std::vector<std::string> scenario_files;
    std::string profile_file;
    std::string n_range;
    std::string out;
    std::string name = "mac_sweep";
    bool svg = false;
    bool dat = false;
};

PhyProfile resolve_profile(const std::string& profile_file, AccessMode mode, int n_channels) {
    if (!profile_file.empty()) {
        std::ifstream f(profile_file);
        if (!f) throw UsageError("cannot open profile file " + profile_file);
        return load_profile(f);
    }
    if (mode == AccessMode::Fd1toN) {
        const double width = 20e6 / n_channels;
        return builtin_profile_for_width_hz(width);
    }
    return builtin_profile(ChannelWidth::W20MHz);
}

int run_mac_sweep(const MacSweepArgs& a, const std::string& cmdline) {
    std::vector<DcfScenario> scenarios;
    std::vector<std::string> columns = {"n"};
    std::vector<std::string> configs;

    if (!a.scenario_files.empty()) {
        for (const auto& file : a.scenario_files) {
            // load once with a placeholder profile to learn mode and channel
            // count, then again with the profile that fits
            std::ifstream f1(file);
            if (!f1) throw UsageError("cannot open scenario file " + file);
            DcfScenario probe = load_scenario(f1, builtin_profile(ChannelWidth::W20MHz));
            std::ifstream f2(file);
            DcfScenario sc = load_scenario(
                f2, resolve_profile(a.profile_file, probe.access_mode, probe.n_channels));
            scenarios.push_back(sc);
            columns.push_back(std::string("s_") + access_mode_name(sc.access_mode));
            configs.push_back(file);
        }
    } else if (a.preset == "fig6") {
        scenarios = fig6_all_modes();
        columns = {"n", "s_hd2way", "s_hd4way", "s_fd11", "s_fd1N"};
    } else {
        throw UsageError("unknown preset '" + a.preset + "' (available: fig6)");
    }

    const std::vector<int> n_list = parse_int_list(a.n_range);
    if (n_list.empty()) throw UsageError("--n produced no points");
    const auto rows = sweep_over_stations(scenarios, n_list);

    Table t;
    t.columns = columns;
    for (const auto& row : rows) {
        std::vector<double> cells = {static_cast<double>(row.n_stations)};
        for (const auto& e : row.entries)
            cells.push_back(e.ok ? e.result.s_bps : std::nan(""));
        t.rows.push_back(std::move(cells));
    }

    OutputSet out{output_dir(a.out), a.name, {}};
    emit_table(out, t, a.svg, a.dat, "Saturation throughput vs stations");
    finish_manifest(out, cmdline, configs, {});
    std::cout << "wrote " << out.files.front() << " (" << t.rows.size() << " rows)\n";
    return kExitOk;
}

// ---- breakeven ----

struct BreakevenArgs {
    double bandwidth_hz = 20e6;
    int n_channels = 2;
    std::string gain_mode = "fixed";
    double gain_db = 3.0;
    std::string snr;
    std::string out;
    std::string name = "breakeven";
};

int run_breakeven(const BreakevenArgs& a, const std::string& cmdline) {
    PhySweepArgs plan_args;
    plan_args.bandwidth_hz = a.bandwidth_hz;
    plan_args.n_channels = a.n_channels;
    plan_args.gain_mode = a.gain_mode;
    plan_args.gain_db = a.gain_db;
    plan_args.guard_hz = 0.0;
    const ChannelPlan base = plan_from(plan_args);

    const std::vector<double> snrs = parse_range(a.snr);
    Table t;
    t.columns = {"snr_db", "g_star_hz", "c_fdN_at_gstar_bps", "c_fd1_bps"};
    for (double snr : snrs) {
        const double g = guard_band_breakeven(base, {snr});
        ChannelPlan at = base;
        at.guard_per_channel_hz = g;
        const double c_fdn = shannon_capacity_fd_1toN(at, {snr}).bits_per_second;
        const double c_fd1 =
            shannon_capacity_fd_1to1(base.total_bandwidth_hz, {snr}).bits_per_second;
        t.rows.push_back({snr, g, c_fdn, c_fd1});
        std::cout << "snr_db=" << format_number(snr) << " g_star_hz=" << format_number(g)
                  << " c_fdN_bps=" << format_number(c_fdn)
                  << " c_fd1_bps=" << format_number(c_fd1) << "\n";
    }

    OutputSet out{output_dir(a.out), a.name, {}};
    emit_table(out, t, false, false, "");
    finish_manifest(out, cmdline, {}, {});
    return kExitOk;
}

// ---- validate ----

struct ValidateArgs {
    std::string preset = "fig6";
    std::string n_list = "5,10,20";
    std::string modes = "hd2way,hd4way,fd11";
    double tolerance = 0.02;
    std::uint64_t seed = 42;
    double confidence = 0.95;
    double max_rel_error = 0.05;
    std::string out;
    std::string name = "validate";
};

int run_validate(const ValidateArgs& a, const std::string& cmdline) {
    if (a.preset != "fig6") throw UsageError("unknown preset '" + a.preset + "'");
    const std::vector<int> n_list = parse_int_list(a.n_list);

    std::vector<AccessMode> modes;
    {
        std::stringstream ss(a.modes);
        std::string tok;
        while (std::getline(ss, tok, ',')) modes.push_back(access_mode_from_name(tok));
    }
    if (modes.empty()) throw UsageError("--modes produced no modes");

    OutputSet out{output_dir(a.out), a.name, {}};
    std::ofstream jsonl(out.add(".jsonl"), std::ios::binary);

    Table t;
    t.columns = {"n", "mode", "analytical_bps", "simulated_bps", "ci_halfwidth_bps",
                 "rel_diff", "pass"};
    bool all_pass = true;
    std::vector<std::uint64_t> seeds;
    std::uint64_t seed = a.seed;
    std::cout << "mode    n    analytical      simulated       rel_diff  verdict\n";
    for (const auto mode : modes) {
        DcfScenario base = fig6_scenario(mode);
        for (int n : n_list) {
            const auto report =
                validate_against_model(base, {n}, a.tolerance, seed, a.confidence,
                                       a.max_rel_error);
            const auto& row = report.rows.front();
            // per-run record for tabulation by other tools
            DcfScenario sc = base;
            sc.n_stations = n;
            sc.pc_variant = PcVariant::BianchiStandard;
            SimConfig cfg;
            cfg.scenario = sc;
            cfg.seed = seed;
            cfg.confidence = a.confidence;
            cfg.max_rel_error = a.max_rel_error;
            jsonl << sim_record_json(cfg, row.sim_result) << "\n";
            seeds.push_back(seed);
            ++seed;

            t.rows.push_back({static_cast<double>(n), static_cast<double>(mode),
                              row.analytical_bps, row.simulated_bps, row.ci_halfwidth_bps,
                              row.rel_diff, row.pass ? 1.0 : 0.0});
            all_pass = all_pass && row.pass;
            std::printf("%-7s %-4d %-15.6g %-15.6g %+9.4f%%  %s\n", access_mode_name(mode), n,
                        row.analytical_bps, row.simulated_bps, row.rel_diff * 100.0,
                        row.pass ? "pass" : "FAIL");
        }
    }
    jsonl.close();
    {
        std::ofstream f(out.add(".csv"), std::ios::binary);
        write_csv(f, t);
    }
    finish_manifest(out, cmdline, {}, seeds);
    std::cout << (all_pass ? "all rows pass\n" : "validation FAILED\n");
    return all_pass ? kExitOk : kExitValidationFailure;
}

// CLI11 stops at option values that look like options; glue negative
// numbers (e.g. --snr -20:25:5) onto their flag.
std::vector<std::string> normalize_args(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string cur = argv[i];
        if (cur.rfind("--", 0) == 0 && cur.find('=') == std::string::npos && i + 1 < argc) {
            const std::string next = argv[i + 1];
            if (next.size() > 1 && next[0] == '-' &&
                (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
                args.push_back(cur + "=" + next);
                ++i;
                continue;
            }
        }
        args.push_back(std::move(cur));
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"full-duplex Wi-Fi capacity and saturation-throughput toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    PhySweepArgs pa;
    auto* phy = app.add_subcommand("phy-sweep", "capacity vs SNR for the three arrangements");
    phy->add_option("--b", pa.bandwidth_hz, "total bandwidth B in Hz");
    phy->add_option("--n", pa.n_channels, "number of narrow channels N");
    phy->add_option("--g", pa.guard_hz, "guard band per channel in Hz");
    phy->add_option("--gain-mode", pa.gain_mode, "narrowing SNR gain: fixed|ratio");
    phy->add_option("--gain-db", pa.gain_db, "gain value for fixed mode (dB)");
    phy->add_option("--guard-accounting", pa.guard_accounting, "per-channel|total");
    phy->add_option("--snr", pa.snr, "SNR sweep start:stop:step in dB")->required();
    phy->add_option("--out", pa.out, "output directory (default $FDWIFI_OUTDIR or .)");
    phy->add_option("--name", pa.name, "output file basename");
    phy->add_flag("--svg", pa.svg, "render an SVG chart (also emits .dat)");
    phy->add_flag("--dat", pa.dat, "emit a gnuplot .dat file");

    MacSweepArgs ma;
    auto* mac = app.add_subcommand("mac-sweep", "saturation throughput vs station count");
    mac->add_option("--preset", ma.preset, "built-in scenario set (fig6)");
    mac->add_option("--scenario", ma.scenario_files, "scenario config file (repeatable)");
    mac->add_option("--profile", ma.profile_file, "PHY profile config file");
    mac->add_option("--n", ma.n_range, "stations start:stop:step or comma list")->required();
    mac->add_option("--out", ma.out, "output directory");
    mac->add_option("--name", ma.name, "output file basename");
    mac->add_flag("--svg", ma.svg, "render an SVG chart (also emits .dat)");
    mac->add_flag("--dat", ma.dat, "emit a gnuplot .dat file");

    BreakevenArgs ba;
    auto* brk = app.add_subcommand("breakeven", "largest guard band that preserves the 1:N win");
    brk->add_option("--b", ba.bandwidth_hz, "total bandwidth B in Hz");
    brk->add_option("--n", ba.n_channels, "number of narrow channels N");
    brk->add_option("--gain-mode", ba.gain_mode, "fixed|ratio");
    brk->add_option("--gain-db", ba.gain_db, "gain value for fixed mode (dB)");
    brk->add_option("--snr", ba.snr, "SNR in dB, scalar or start:stop:step")->required();
    brk->add_option("--out", ba.out, "output directory");
    brk->add_option("--name", ba.name, "output file basename");

    ValidateArgs va;
    auto* val = app.add_subcommand("validate", "simulator vs analytical model");
    val->add_option("--preset", va.preset, "scenario preset (fig6)");
    val->add_option("--n-list", va.n_list, "station counts, comma list or range");
    val->add_option("--modes", va.modes, "comma list of hd2way,hd4way,fd11,fd1n");
    val->add_option("--tolerance", va.tolerance, "max |sim-model|/model");
    val->add_option("--seed", va.seed, "base RNG seed");
    val->add_option("--confidence", va.confidence, "CI confidence level");
    val->add_option("--max-rel-error", va.max_rel_error, "CI stopping half-width");
    val->add_option("--out", va.out, "output directory");
    val->add_option("--name", va.name, "output file basename");

    auto args = normalize_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 vector parse takes reversed args
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    const std::string cmdline = join_args(argc, argv);
    try {
        if (phy->parsed()) return run_phy_sweep(pa, cmdline);
        if (mac->parsed()) return run_mac_sweep(ma, cmdline);
        if (brk->parsed()) return run_breakeven(ba, cmdline);
        if (val->parsed()) return run_validate(va, cmdline);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
