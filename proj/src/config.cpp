#include "chaostrack/config.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "chaostrack/wannier.hpp"

namespace chaostrack {

namespace {

double parse_double(const std::string& key, const std::string& value, int line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, key + ": expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value, int line_no) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, key + ": expected an integer, got '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void set_config_key(RunConfig& c, const std::string& key, const std::string& value,
                    int line_no) {
    auto d = [&] { return parse_double(key, value, line_no); };
    auto i = [&] { return parse_int(key, value, line_no); };

    if (key == "v0") c.v0 = d();
    else if (key == "omega_b") c.omega_b = d();
    else if (key == "g") c.g = d();
    else if (key == "chi00") c.chi00 = d();
    else if (key == "chi01") {
        if (value == "auto") {
            c.chi01_auto = true;
        } else {
            c.chi01 = d();
            c.chi01_auto = false;
        }
    }
    else if (key == "x1") c.x1 = d();
    else if (key == "x2") c.x2 = d();
    else if (key == "ic.i_m1") c.ic_i_m1 = d();
    else if (key == "ic.i_0") c.ic_i_0 = d();
    else if (key == "ic.i_1") c.ic_i_1 = d();
    else if (key == "ic.theta_m1") c.ic_theta_m1 = d();
    else if (key == "ic.theta_0") c.ic_theta_0 = d();
    else if (key == "ic.theta_1") c.ic_theta_1 = d();
    else if (key == "sweep.min") c.sweep_min = d();
    else if (key == "sweep.max") c.sweep_max = d();
    else if (key == "sweep.count") c.sweep_count = i();
    else if (key == "spectral.threshold") c.spectral_threshold = d();
    else if (key == "spectral.window") c.spectral_window = value;
    else if (key == "spectral.samples") c.spectral_samples = i();
    else if (key == "spectral.dt_sample") c.spectral_dt_sample = d();
    else if (key == "spectral.dense_count") c.dense_count = i();
    else if (key == "spectral.dense_band_lo") c.dense_band_lo = d();
    else if (key == "spectral.dense_band_hi") c.dense_band_hi = d();
    else if (key == "integrator.dt") c.integrator_dt = d();
    else if (key == "mle.t_total_tb") c.mle_t_total_tb = d();
    else if (key == "mle.transient_tb") c.mle_transient_tb = d();
    else if (key == "mle.renorm_tb") c.mle_renorm_tb = d();
    else if (key == "kr.kbar") c.kr_kbar = d();
    else if (key == "kr.p0") c.kr_p0 = d();
    else if (key == "kr.x0") c.kr_x0 = d();
    else if (key == "kr.fwhm_kbar") c.kr_fwhm_kbar = d();
    else if (key == "kr.kicks") c.kr_kicks = i();
    else if (key == "kr.ladder_half_width") c.kr_ladder_half_width = i();
    else if (key == "kr.mode") c.kr_mode = value;
    else if (key == "criticalg.phi") c.criticalg_phi = d();
    else if (key == "criticalg.i1_min") c.criticalg_i1_min = d();
    else if (key == "criticalg.i1_max") c.criticalg_i1_max = d();
    else if (key == "criticalg.i1_count") c.criticalg_i1_count = i();
    else if (key == "criticalg.g_min") c.criticalg_g_min = d();
    else if (key == "criticalg.g_max") c.criticalg_g_max = d();
    else if (key == "criticalg.n_scan") c.criticalg_n_scan = i();
    else if (key == "criticalg.orbit_t_tb") c.criticalg_orbit_t_tb = d();
    else if (key == "criticalg.mle_g_min") c.criticalg_mle_g_min = d();
    else if (key == "criticalg.mle_g_max") c.criticalg_mle_g_max = d();
    else if (key == "criticalg.mle_g_step") c.criticalg_mle_g_step = d();
    else if (key == "criticalg.lambda_floor") c.criticalg_lambda_floor = d();
    else if (key == "wannier.n_basis") c.wannier_n_basis = i();
    else if (key == "wannier.n_k") c.wannier_n_k = i();
    else if (key == "wannier.pps") c.wannier_pps = i();
    else if (key == "jobs") c.jobs = i();
    else if (key == "out") c.out = value;
    else if (key == "format") c.format = value;
    else throw ParseError(line_no, "unknown key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (value.empty()) throw ParseError(line_no, key + ": empty value");
        set_config_key(cfg, key, value, line_no);
    }
}

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
    RunConfig cfg;
    apply_config_text(cfg, text);
    for (const auto& [key, value] : overrides) set_config_key(cfg, key, value, 0);
    cfg.finalize();
    return cfg;
}

double resolved_chi01(double v0, int n_basis, int n_k, int pps) {
    static std::mutex mutex;
    static std::map<std::tuple<double, int, int, int>, double> cache;
    const auto key = std::make_tuple(v0, n_basis, n_k, pps);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const WannierFunction w = wannier_ground(v0, n_basis, n_k, pps);
    const double chi01 = std::abs(chi_overlap(w, 1));
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, chi01);
    return chi01;
}

void RunConfig::finalize() {
    if (chi01_auto)
        chi01 = resolved_chi01(v0, wannier_n_basis, wannier_n_k, wannier_pps);
    lattice().validate();

    auto positive = [](const char* name, double v) {
        if (!(v > 0.0)) throw ValidationError(name, "must be > 0");
    };
    auto at_least = [](const char* name, int v, int lo) {
        if (v < lo)
            throw ValidationError(name, "must be >= " + std::to_string(lo));
    };

    const double ic_sum = ic_i_m1 + ic_i_0 + ic_i_1;
    if (ic_i_m1 < 0 || ic_i_0 < 0 || ic_i_1 < 0 || std::abs(ic_sum - 1.0) > 1e-6)
        throw ValidationError("ic.i_*", "populations must be >= 0 and sum to 1");
    if (!(sweep_min <= sweep_max))
        throw ValidationError("sweep.min", "must be <= sweep.max");
    at_least("sweep.count", sweep_count, 1);
    if (!(spectral_threshold > 0.0 && spectral_threshold < 1.0))
        throw ValidationError("spectral.threshold", "must be in (0, 1)");
    window_from_name(spectral_window);
    at_least("spectral.samples", spectral_samples, 64);
    positive("spectral.dt_sample", spectral_dt_sample);
    at_least("spectral.dense_count", dense_count, 1);
    if (!(dense_band_hi > dense_band_lo))
        throw ValidationError("spectral.dense_band_hi", "must be > dense_band_lo");
    positive("integrator.dt", integrator_dt);
    if (integrator_dt > spectral_dt_sample)
        throw ValidationError("integrator.dt", "must be <= spectral.dt_sample");
    positive("mle.t_total_tb", mle_t_total_tb);
    if (!(mle_transient_tb >= 0.0 && mle_transient_tb < mle_t_total_tb))
        throw ValidationError("mle.transient_tb", "must be in [0, mle.t_total_tb)");
    positive("mle.renorm_tb", mle_renorm_tb);
    positive("kr.kbar", kr_kbar);
    if (kr_fwhm_kbar < 0.0)
        throw ValidationError("kr.fwhm_kbar", "must be >= 0");
    at_least("kr.kicks", kr_kicks, 1);
    at_least("kr.ladder_half_width", kr_ladder_half_width, 1);
    if (kr_mode != "classical" && kr_mode != "quantum")
        throw ValidationError("kr.mode", "expected 'classical' or 'quantum'");
    if (!(criticalg_i1_min > 0.0 && criticalg_i1_max < 1.0 &&
          criticalg_i1_min <= criticalg_i1_max))
        throw ValidationError("criticalg.i1_min", "need 0 < i1_min <= i1_max < 1");
    at_least("criticalg.i1_count", criticalg_i1_count, 1);
    if (!(criticalg_g_min > 0.0 && criticalg_g_max > criticalg_g_min))
        throw ValidationError("criticalg.g_min", "need 0 < g_min < g_max");
    at_least("criticalg.n_scan", criticalg_n_scan, 50);
    positive("criticalg.orbit_t_tb", criticalg_orbit_t_tb);
    if (!(criticalg_mle_g_min > 0.0 && criticalg_mle_g_max > criticalg_mle_g_min))
        throw ValidationError("criticalg.mle_g_min", "need 0 < mle_g_min < mle_g_max");
    positive("criticalg.mle_g_step", criticalg_mle_g_step);
    positive("criticalg.lambda_floor", criticalg_lambda_floor);
    if (wannier_n_basis < 11 || wannier_n_basis % 2 == 0)
        throw ValidationError("wannier.n_basis", "must be odd and >= 11");
    at_least("wannier.n_k", wannier_n_k, 16);
    at_least("wannier.pps", wannier_pps, 64);
    at_least("jobs", jobs, 1);
    if (format != "csv" && format != "json")
        throw ValidationError("format", "expected 'csv' or 'json'");
}

LatticeParams RunConfig::lattice() const {
    return LatticeParams{v0, omega_b, g, chi00, chi01, x1, x2};
}

ModeState RunConfig::initial_state() const {
    return ModeState::from_polar({ic_i_m1, ic_i_0, ic_i_1},
                                 {ic_theta_m1, ic_theta_0, ic_theta_1});
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("v0", fmt(v0));
    e.emplace_back("omega_b", fmt(omega_b));
    e.emplace_back("g", fmt(g));
    e.emplace_back("chi00", fmt(chi00));
    e.emplace_back("chi01", fmt(chi01));
    e.emplace_back("chi01.source", chi01_auto ? "auto" : "explicit");
    e.emplace_back("x1", fmt(x1));
    e.emplace_back("x2", fmt(x2));
    e.emplace_back("ic.i_m1", fmt(ic_i_m1));
    e.emplace_back("ic.i_0", fmt(ic_i_0));
    e.emplace_back("ic.i_1", fmt(ic_i_1));
    e.emplace_back("ic.theta_m1", fmt(ic_theta_m1));
    e.emplace_back("ic.theta_0", fmt(ic_theta_0));
    e.emplace_back("ic.theta_1", fmt(ic_theta_1));
    e.emplace_back("sweep.min", fmt(sweep_min));
    e.emplace_back("sweep.max", fmt(sweep_max));
    e.emplace_back("sweep.count", std::to_string(sweep_count));
    e.emplace_back("spectral.threshold", fmt(spectral_threshold));
    e.emplace_back("spectral.window", spectral_window);
    e.emplace_back("spectral.samples", std::to_string(spectral_samples));
    e.emplace_back("spectral.dt_sample", fmt(spectral_dt_sample));
    e.emplace_back("spectral.dense_count", std::to_string(dense_count));
    e.emplace_back("spectral.dense_band_lo", fmt(dense_band_lo));
    e.emplace_back("spectral.dense_band_hi", fmt(dense_band_hi));
    e.emplace_back("integrator.dt", fmt(integrator_dt));
    e.emplace_back("mle.t_total_tb", fmt(mle_t_total_tb));
    e.emplace_back("mle.transient_tb", fmt(mle_transient_tb));
    e.emplace_back("mle.renorm_tb", fmt(mle_renorm_tb));
    e.emplace_back("kr.kbar", fmt(kr_kbar));
    e.emplace_back("kr.p0", fmt(kr_p0));
    e.emplace_back("kr.x0", fmt(kr_x0));
    e.emplace_back("kr.fwhm_kbar", fmt(kr_fwhm_kbar));
    e.emplace_back("kr.kicks", std::to_string(kr_kicks));
    e.emplace_back("kr.ladder_half_width", std::to_string(kr_ladder_half_width));
    e.emplace_back("kr.mode", kr_mode);
    e.emplace_back("criticalg.phi", fmt(criticalg_phi));
    e.emplace_back("criticalg.i1_min", fmt(criticalg_i1_min));
    e.emplace_back("criticalg.i1_max", fmt(criticalg_i1_max));
    e.emplace_back("criticalg.i1_count", std::to_string(criticalg_i1_count));
    e.emplace_back("criticalg.g_min", fmt(criticalg_g_min));
    e.emplace_back("criticalg.g_max", fmt(criticalg_g_max));
    e.emplace_back("criticalg.n_scan", std::to_string(criticalg_n_scan));
    e.emplace_back("criticalg.orbit_t_tb", fmt(criticalg_orbit_t_tb));
    e.emplace_back("criticalg.mle_g_min", fmt(criticalg_mle_g_min));
    e.emplace_back("criticalg.mle_g_max", fmt(criticalg_mle_g_max));
    e.emplace_back("criticalg.mle_g_step", fmt(criticalg_mle_g_step));
    e.emplace_back("criticalg.lambda_floor", fmt(criticalg_lambda_floor));
    e.emplace_back("wannier.n_basis", std::to_string(wannier_n_basis));
    e.emplace_back("wannier.n_k", std::to_string(wannier_n_k));
    e.emplace_back("wannier.pps", std::to_string(wannier_pps));
    e.emplace_back("jobs", std::to_string(jobs));
    e.emplace_back("format", format);
    return e;
}

}  // namespace chaostrack
