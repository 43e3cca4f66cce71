#include "chaostrack/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "chaostrack/kicked_rotor.hpp"
#include "chaostrack/trimer.hpp"
#include "chaostrack/wannier.hpp"

namespace chaostrack {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::vector<std::string> command_names() {
    return {"fig1a", "fig1b", "fig2",       "fig3",    "fig4",
            "sweep-bec", "sweep-kr", "mle", "critical-g", "wannier"};
}

bool is_command(const std::string& name) {
    const auto names = command_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

void apply_command_preset(const std::string& name, RunConfig& cfg) {
    if (name == "fig1a" || name == "sweep-kr") {
        cfg.kr_mode = "classical";
        cfg.sweep_min = 0.1;
        cfg.sweep_max = 1.2;
        cfg.sweep_count = 111;
        cfg.spectral_threshold = 1.0 / 500.0;
        cfg.dense_count = 40;
        cfg.dense_band_hi = std::numbers::pi;
    } else if (name == "fig1b") {
        cfg.kr_mode = "quantum";
        cfg.sweep_min = 0.1;
        cfg.sweep_max = 10.0;
        cfg.sweep_count = 50;
        cfg.spectral_threshold = 1.0 / 500.0;
        cfg.dense_count = 40;
        cfg.dense_band_hi = std::numbers::pi;
    } else if (name == "fig3" || name == "mle") {
        cfg.sweep_min = 0.15;
        cfg.sweep_max = 0.28;
        cfg.sweep_count = 66;
    }
    // fig2/sweep-bec, fig4/critical-g and wannier run on the base defaults.
}

std::vector<double> sweep_values(double lo, double hi, int count) {
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
        v.push_back(lo);
        return v;
    }
    for (int i = 0; i < count; ++i)
        v.push_back(lo + (hi - lo) * i / (count - 1));
    return v;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

TimeSeries bec_mean_position_series(const RunConfig& cfg, double g) {
    LatticeParams p = cfg.lattice();
    p.g = g;
    const double t_end = (cfg.spectral_samples - 1) * cfg.spectral_dt_sample;
    const Trajectory traj = integrate(cfg.initial_state(), p, t_end, cfg.integrator_dt,
                                      cfg.spectral_dt_sample);
    TimeSeries s;
    s.t0 = traj.t0;
    s.dt = traj.dt_sample;
    s.values.reserve(traj.size());
    for (const auto& state : traj.states) s.values.push_back(mean_position(state, p));
    return s;
}

FrequencyMap bec_frequency_map(const RunConfig& cfg, const std::vector<double>& gs) {
    std::vector<std::pair<double, TimeSeries>> sweep(gs.size());
    parallel_for(static_cast<int>(gs.size()), cfg.jobs, [&](int i) {
        try {
            sweep[i] = {gs[i], bec_mean_position_series(cfg, gs[i])};
        } catch (const SimulationError& e) {
            throw SimulationError("g = " + fmt(gs[i]) + ": " + e.what());
        }
    });
    return frequency_map("g", sweep, cfg.spectral_threshold, cfg.window());
}

FrequencyMap kr_frequency_map(const RunConfig& cfg, const std::vector<double>& ks) {
    const bool quantum = cfg.kr_mode == "quantum";
    std::vector<std::pair<double, TimeSeries>> sweep(ks.size());
    parallel_for(static_cast<int>(ks.size()), cfg.jobs, [&](int i) {
        try {
            sweep[i] = {ks[i],
                        quantum ? qkr_p2_series(ks[i], cfg.kr_kbar, cfg.kr_p0,
                                                cfg.kr_fwhm_kbar * cfg.kr_kbar,
                                                cfg.kr_kicks, cfg.kr_ladder_half_width)
                                : classical_p2_series(cfg.kr_x0, cfg.kr_p0, ks[i],
                                                      cfg.kr_kicks)};
        } catch (const SimulationError& e) {
            throw SimulationError("K = " + fmt(ks[i]) + ": " + e.what());
        }
    });
    return frequency_map("K", sweep, cfg.spectral_threshold, cfg.window());
}

std::vector<std::pair<double, MleResult>> bec_mle_sweep(const RunConfig& cfg,
                                                        const std::vector<double>& gs) {
    const ModeState ic = cfg.initial_state();
    const MleSettings settings{cfg.mle_t_total_tb, cfg.mle_transient_tb,
                               cfg.mle_renorm_tb, cfg.integrator_dt};
    std::vector<std::pair<double, MleResult>> out(gs.size());
    parallel_for(static_cast<int>(gs.size()), cfg.jobs, [&](int i) {
        LatticeParams p = cfg.lattice();
        p.g = gs[i];
        try {
            out[i] = {gs[i], mle(ic, p, settings)};
        } catch (const SimulationError& e) {
            throw SimulationError("g = " + fmt(gs[i]) + ": " + e.what());
        }
    });
    return out;
}

CriticalGRow critical_g_row(const RunConfig& cfg, double i1) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CriticalGRow row{i1, nan, nan, nan};

    const DimerPoint ic{i1, cfg.criticalg_phi};
    try {
        row.g_star = critical_g(ic, cfg.lattice(), cfg.criticalg_g_min,
                                cfg.criticalg_g_max, cfg.criticalg_n_scan)
                         .g_star;
    } catch (const NoBracketError&) {
    } catch (const NoSaddleError&) {
    }

    // Trimer chaotic-region bracket: the same initial condition with well -1
    // empty, swept over g with the MLE above the floor.
    const ModeState state0 = ModeState::from_polar({0.0, 1.0 - i1, i1},
                                                   {0.0, 0.0, cfg.criticalg_phi});
    const MleSettings settings{cfg.mle_t_total_tb, cfg.mle_transient_tb,
                               cfg.mle_renorm_tb, cfg.integrator_dt};
    const int n = static_cast<int>(std::floor((cfg.criticalg_mle_g_max -
                                               cfg.criticalg_mle_g_min) /
                                                  cfg.criticalg_mle_g_step +
                                              1e-9)) +
                  1;
    std::vector<double> lambdas(n);
    parallel_for(n, cfg.jobs, [&](int i) {
        LatticeParams p = cfg.lattice();
        p.g = cfg.criticalg_mle_g_min + i * cfg.criticalg_mle_g_step;
        lambdas[i] = mle(state0, p, settings).lambda_tb;
    });
    for (int i = 0; i < n; ++i) {
        if (lambdas[i] > cfg.criticalg_lambda_floor) {
            const double g = cfg.criticalg_mle_g_min + i * cfg.criticalg_mle_g_step;
            if (std::isnan(row.g_chaos_lo)) row.g_chaos_lo = g;
            row.g_chaos_hi = g;
        }
    }
    return row;
}

namespace {

struct OutputTable {
    std::vector<std::string> columns;
    std::vector<bool> numeric;                // per column
    std::vector<std::vector<std::string>> rows;  // pre-formatted cells
    std::vector<ParamInterval> dense;
};

void write_csv(const std::string& path, const std::string& command,
               const RunConfig& cfg, const OutputTable& table) {
    std::ofstream out(path);
    if (!out) throw SimulationError("cannot open output file " + path);
    out << "# chaostrack " << command << "\n";
    for (const auto& [k, v] : cfg.resolved_entries()) out << "# " << k << " = " << v << "\n";
    for (const auto& w : table.dense)
        out << "# dense_window = " << fmt(w.lo) << "," << fmt(w.hi) << "\n";
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        out << (j ? "," : "") << table.columns[j];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << "\n";
    }
}

void write_json(const std::string& path, const std::string& command,
                const RunConfig& cfg, const OutputTable& table) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    nlohmann::ordered_json conf;
    for (const auto& [k, v] : cfg.resolved_entries()) conf[k] = v;
    doc["config"] = conf;
    auto windows = nlohmann::ordered_json::array();
    for (const auto& w : table.dense) windows.push_back({w.lo, w.hi});
    doc["dense_windows"] = windows;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!table.numeric[j]) {
                r.push_back(row[j]);
            } else {
                const double v = std::strtod(row[j].c_str(), nullptr);
                if (std::isfinite(v))
                    r.push_back(v);
                else
                    r.push_back(nullptr);
            }
        }
        rows.push_back(r);
    }
    doc["rows"] = rows;
    std::ofstream out(path);
    if (!out) throw SimulationError("cannot open output file " + path);
    out << doc.dump(2) << "\n";
}

OutputTable map_table(const FrequencyMap& map, const RunConfig& cfg) {
    OutputTable t;
    t.columns = {"param", "omega", "rel_amplitude"};
    t.numeric = {true, true, true};
    for (const auto& [value, peaks] : map.points)
        for (const auto& pk : peaks.peaks)
            t.rows.push_back({fmt(value), fmt(pk.omega), fmt(pk.rel_amplitude)});
    t.dense = dense_windows(map, cfg.dense_count, cfg.dense_band_lo, cfg.dense_band_hi);
    return t;
}

}  // namespace

std::string run_command(const std::string& name, const RunConfig& cfg) {
    if (!is_command(name)) throw ValidationError("command", "unknown command " + name);
    const std::string path = cfg.out.empty() ? name + "." + cfg.format : cfg.out;

    OutputTable table;
    if (name == "fig2" || name == "sweep-bec") {
        const auto gs = sweep_values(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count);
        table = map_table(bec_frequency_map(cfg, gs), cfg);
    } else if (name == "fig1a" || name == "fig1b" || name == "sweep-kr") {
        const auto ks = sweep_values(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count);
        table = map_table(kr_frequency_map(cfg, ks), cfg);
    } else if (name == "fig3" || name == "mle") {
        const auto gs = sweep_values(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count);
        table.columns = {"g", "lambda_tb", "lambda_raw"};
        table.numeric = {true, true, true};
        for (const auto& [g, res] : bec_mle_sweep(cfg, gs))
            table.rows.push_back({fmt(g), fmt(res.lambda_tb), fmt(res.lambda_raw)});
    } else if (name == "fig4" || name == "critical-g") {
        const auto i1s = sweep_values(cfg.criticalg_i1_min, cfg.criticalg_i1_max,
                                      cfg.criticalg_i1_count);
        table.columns = {"i1_initial", "g_star", "g_chaos_lo", "g_chaos_hi"};
        table.numeric = {true, true, true, true};
        std::vector<CriticalGRow> rows(i1s.size());
        for (std::size_t i = 0; i < i1s.size(); ++i) rows[i] = critical_g_row(cfg, i1s[i]);
        for (const auto& r : rows)
            table.rows.push_back(
                {fmt(r.i1), fmt(r.g_star), fmt(r.g_chaos_lo), fmt(r.g_chaos_hi)});
    } else if (name == "wannier") {
        const WannierFunction w =
            wannier_ground(cfg.v0, cfg.wannier_n_basis, cfg.wannier_n_k, cfg.wannier_pps);
        table.columns = {"quantity", "index", "value"};
        table.numeric = {false, true, true};
        for (int i = 0; i <= 2; ++i)
            table.rows.push_back({"chi", std::to_string(i), fmt(chi_overlap(w, i))});
        for (int i = 0; i <= 2; ++i)
            table.rows.push_back({"dipole", std::to_string(i), fmt(dipole_element(w, i))});
    }

    if (cfg.format == "json")
        write_json(path, name, cfg, table);
    else
        write_csv(path, name, cfg, table);
    return path;
}

}  // namespace chaostrack
