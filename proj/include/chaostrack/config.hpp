#ifndef CHAOSTRACK_CONFIG_HPP
#define CHAOSTRACK_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "chaostrack/lattice.hpp"
#include "chaostrack/spectral.hpp"

namespace chaostrack {

// Fully resolved run configuration. Values are applied in the order
// base defaults -> command preset -> config file -> command-line flags,
// then finalize() validates everything and computes chi01 from the Wannier
// function when it was left on 'auto'.
struct RunConfig {
    // model parameters
    double v0 = 5.0;
    double omega_b = 0.25;
    double g = 0.0;
    double chi00 = 2.0;
    double chi01 = 0.0;      // resolved value; see chi01_auto
    bool chi01_auto = true;  // compute |chi01| from the Wannier function at v0
    double x1 = 0.1;
    double x2 = 0.01;

    // trimer initial condition (defaults: the Fig. 2 state)
    double ic_i_m1 = 0.10;
    double ic_i_0 = 0.65;
    double ic_i_1 = 0.25;
    double ic_theta_m1 = 0.0;
    double ic_theta_0 = 0.0;
    double ic_theta_1 = 3.14159265358979323846;

    // sweep specification (g for BEC commands, K for kicked-rotor commands)
    double sweep_min = 0.0;
    double sweep_max = 0.3;
    int sweep_count = 151;

    // spectral analysis
    double spectral_threshold = 0.01;
    std::string spectral_window = "hann";
    int spectral_samples = 8192;
    double spectral_dt_sample = 0.4;
    int dense_count = 25;
    double dense_band_lo = 0.0;
    double dense_band_hi = 1.0;

    // integrator / MLE
    double integrator_dt = 0.005;
    double mle_t_total_tb = 500.0;
    double mle_transient_tb = 50.0;
    double mle_renorm_tb = 1.0;

    // kicked rotor
    double kr_kbar = 2.89;
    double kr_p0 = 0.56;
    double kr_x0 = 0.0;
    double kr_fwhm_kbar = 5.0;  // initial Gaussian FWHM in units of kbar
    int kr_kicks = 2000;
    int kr_ladder_half_width = 1024;
    std::string kr_mode = "classical";

    // critical-g / fig4
    double criticalg_phi = -1.57079632679489661923;
    double criticalg_i1_min = 0.05;
    double criticalg_i1_max = 0.95;
    int criticalg_i1_count = 19;
    double criticalg_g_min = 0.02;
    double criticalg_g_max = 0.50;
    int criticalg_n_scan = 200;
    double criticalg_orbit_t_tb = 100.0;
    double criticalg_mle_g_min = 0.10;
    double criticalg_mle_g_max = 0.40;
    double criticalg_mle_g_step = 0.01;
    double criticalg_lambda_floor = 0.01;

    // wannier computation
    int wannier_n_basis = 31;
    int wannier_n_k = 32;
    int wannier_pps = 64;

    // execution / output
    int jobs = 1;
    std::string out;  // empty = "<command>.<format>"
    std::string format = "csv";

    // Validates every field and resolves chi01_auto. Throws ValidationError.
    void finalize();

    LatticeParams lattice() const;
    ModeState initial_state() const;
    Window window() const { return window_from_name(spectral_window); }

    // Every key with its resolved value, for output headers.
    std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

// Sets one key from its textual value. `where` names the source for error
// messages ("line 3", "flag --g"). Unknown keys and malformed values throw
// ParseError / ValidationError.
void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value,
                    int line_no);

// Applies a line-oriented `key = value` document ('#' comments, blank lines
// allowed), then flag overrides given as alternating (key, value) pairs.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides);

void apply_config_text(RunConfig& cfg, const std::string& text);

// The computed |chi01| for a given depth, cached per (v0, basis settings).
double resolved_chi01(double v0, int n_basis, int n_k, int pps);

}  // namespace chaostrack

#endif
