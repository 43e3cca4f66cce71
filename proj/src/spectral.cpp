#include "chaostrack/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace chaostrack {

namespace {

// FFTW planning is not thread-safe; plans are cached per transform size
// and executed on caller-owned buffers via the new-array interface.
class RealFft {
  public:
    static RealFft& instance() {
        static RealFft fft;
        return fft;
    }

    // in: n reals, out: n/2+1 complex values (interleaved in `out`).
    void forward(std::size_t n, double* in, fftw_complex* out) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = plans_.find(n);
            if (it == plans_.end()) {
                // Plan on scratch buffers so `in` is not clobbered by planning.
                double* tin = fftw_alloc_real(n);
                fftw_complex* tout = fftw_alloc_complex(n / 2 + 1);
                plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), tin, tout,
                                            FFTW_ESTIMATE);
                fftw_free(tin);
                fftw_free(tout);
                plans_.emplace(n, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft_r2c(plan, in, out);
    }

  private:
    RealFft() = default;
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

Window window_from_name(const std::string& name) {
    if (name == "none") return Window::none;
    if (name == "hann") return Window::hann;
    throw ValidationError("window", "expected 'none' or 'hann', got '" + name + "'");
}

std::string window_name(Window w) {
    return w == Window::hann ? "hann" : "none";
}

Spectrum amplitude_spectrum(const TimeSeries& series, Window window) {
    const std::size_t n = series.size();
    if (n < 64)
        throw TooShortError("series has " + std::to_string(n) +
                            " samples, need at least 64");

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t np = next_pow2(n);
    std::vector<double> buf(np, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double v = series.values[k] - mean;
        if (window == Window::hann)
            v *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n));
        buf[k] = v;
    }

    double* in = fftw_alloc_real(np);
    fftw_complex* o = fftw_alloc_complex(np / 2 + 1);
    std::copy(buf.begin(), buf.end(), in);
    RealFft::instance().forward(np, in, o);

    Spectrum s;
    s.omega.resize(np / 2 + 1);
    s.amplitude.resize(np / 2 + 1);
    const double domega =
        2.0 * std::numbers::pi / (static_cast<double>(np) * series.dt);
    for (std::size_t k = 0; k <= np / 2; ++k) {
        s.omega[k] = domega * static_cast<double>(k);
        s.amplitude[k] = std::hypot(o[k][0], o[k][1]);
    }
    fftw_free(in);
    fftw_free(o);
    return s;
}

PeakSet detect_peaks(const Spectrum& spectrum, double rel_threshold) {
    if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
        throw ValidationError("rel_threshold", "must be in (0, 1)");
    const auto& a = spectrum.amplitude;
    const std::size_t n = a.size();

    double amax = 0.0;
    for (std::size_t k = 1; k < n; ++k) amax = std::max(amax, a[k]);
    if (amax == 0.0) throw EmptySpectrumError("spectrum is identically zero");

    PeakSet out;
    out.threshold = rel_threshold;
    const double floor = rel_threshold * amax;
    const double dw = spectrum.bin_width();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!(a[k] > a[k - 1] && a[k] > a[k + 1] && a[k] >= floor)) continue;
        // Quadratic refinement over the three bins around the maximum.
        const double al = a[k - 1], ac = a[k], ar = a[k + 1];
        const double denom = al - 2.0 * ac + ar;
        double shift = 0.0, amp = ac;
        if (denom != 0.0) {
            shift = 0.5 * (al - ar) / denom;
            amp = ac - 0.25 * (al - ar) * shift;
        }
        const double w = spectrum.omega[k] + shift * dw;
        if (!out.peaks.empty() && !(w > out.peaks.back().omega)) continue;  // keep lower omega
        out.peaks.push_back(Peak{w, amp / amax});
    }
    return out;
}

FrequencyMap frequency_map(const std::string& param_name,
                           const std::vector<std::pair<double, TimeSeries>>& sweep,
                           double rel_threshold, Window window) {
    if (sweep.empty()) throw ValidationError("sweep", "must be nonempty");
    FrequencyMap map;
    map.param_name = param_name;
    map.points.reserve(sweep.size());
    for (const auto& [value, series] : sweep) {
        try {
            map.points.emplace_back(value,
                                    detect_peaks(amplitude_spectrum(series, window),
                                                 rel_threshold));
        } catch (const SimulationError& e) {
            throw SimulationError(param_name + " = " + std::to_string(value) + ": " +
                                  e.what());
        }
    }
    return map;
}

std::vector<ParamInterval> dense_windows(const FrequencyMap& map, int count_threshold,
                                         double band_lo, double band_hi) {
    if (count_threshold < 1)
        throw ValidationError("count_threshold", "must be >= 1");
    std::vector<ParamInterval> windows;
    bool open = false;
    double lo = 0.0, hi = 0.0;
    for (const auto& [value, peaks] : map.points) {
        int count = 0;
        for (const auto& pk : peaks.peaks)
            if (pk.omega > band_lo && pk.omega <= band_hi) ++count;
        if (count >= count_threshold) {
            if (!open) {
                open = true;
                lo = value;
            }
            hi = value;
        } else if (open) {
            windows.push_back(ParamInterval{lo, hi});
            open = false;
        }
    }
    if (open) windows.push_back(ParamInterval{lo, hi});
    return windows;
}

}  // namespace chaostrack
