#ifndef CHAOSTRACK_COMMANDS_HPP
#define CHAOSTRACK_COMMANDS_HPP

#include <functional>
#include <string>
#include <vector>

#include "chaostrack/config.hpp"
#include "chaostrack/lyapunov.hpp"
#include "chaostrack/separatrix.hpp"
#include "chaostrack/spectral.hpp"

namespace chaostrack {

// Command names: fig1a fig1b fig2 fig3 fig4, sweep-bec sweep-kr mle
// critical-g wannier. The fig* commands are presets over the generic ones.
std::vector<std::string> command_names();
bool is_command(const std::string& name);

// Baked-in parameters of the preset commands, applied between the base
// defaults and the config file.
void apply_command_preset(const std::string& name, RunConfig& cfg);

// Runs a command with a finalized config and writes its output file.
// Returns the output path. Throws SimulationError subclasses on failure.
std::string run_command(const std::string& name, const RunConfig& cfg);

// Building blocks shared with the test suites.

// <x(t)> of the trimer for one nonlinearity value under the configured
// initial condition and sampling.
TimeSeries bec_mean_position_series(const RunConfig& cfg, double g);

// Frequency-map sweeps behind fig2 / fig1a / fig1b.
FrequencyMap bec_frequency_map(const RunConfig& cfg, const std::vector<double>& gs);
FrequencyMap kr_frequency_map(const RunConfig& cfg, const std::vector<double>& ks);

// MLE sweep over g with the configured initial condition and settings.
std::vector<std::pair<double, MleResult>> bec_mle_sweep(const RunConfig& cfg,
                                                        const std::vector<double>& gs);

// One row of the fig4 / critical-g output.
struct CriticalGRow {
    double i1;
    double g_star;      // dimer separatrix estimate (NaN if no bracket)
    double g_chaos_lo;  // trimer MLE chaotic-region bracket (NaN if none)
    double g_chaos_hi;
};

CriticalGRow critical_g_row(const RunConfig& cfg, double i1);

std::vector<double> sweep_values(double lo, double hi, int count);

// Runs fn(i) for i in [0, n) on up to `jobs` threads; any exception is
// rethrown on the caller thread. Results must be written by index so the
// merge order is deterministic.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace chaostrack

#endif
