#ifndef CHAOSTRACK_SPECTRAL_HPP
#define CHAOSTRACK_SPECTRAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "chaostrack/errors.hpp"

namespace chaostrack {

// Uniformly sampled scalar observable; sample k is at t0 + k*dt.
struct TimeSeries {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

enum class Window { none, hann };

Window window_from_name(const std::string& name);  // throws ValidationError
std::string window_name(Window w);

// One-sided magnitude spectrum on the uniform angular-frequency grid
// omega_k = 2 pi k / (N dt), k = 0 .. N/2, N the zero-padded length.
struct Spectrum {
    std::vector<double> omega;
    std::vector<double> amplitude;

    double bin_width() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }
};

// Mean-subtracted, optionally windowed, zero-padded to the next power of
// two. Throws TooShortError below 64 samples.
Spectrum amplitude_spectrum(const TimeSeries& series, Window window);

struct Peak {
    double omega;
    double rel_amplitude;  // refined amplitude / global maximum amplitude
};

// Local maxima above rel_threshold * max amplitude, positions refined by
// quadratic interpolation. The DC bin never counts as a peak.
struct PeakSet {
    std::vector<Peak> peaks;  // strictly increasing omega
    double threshold = 0.0;
};

PeakSet detect_peaks(const Spectrum& spectrum, double rel_threshold);

// Peak sets stacked over a parameter sweep, in increasing parameter order.
struct FrequencyMap {
    std::string param_name;
    std::vector<std::pair<double, PeakSet>> points;
};

FrequencyMap frequency_map(const std::string& param_name,
                           const std::vector<std::pair<double, TimeSeries>>& sweep,
                           double rel_threshold, Window window);

struct ParamInterval {
    double lo;
    double hi;
};

// Maximal contiguous parameter intervals on which the number of peaks
// inside (band_lo, band_hi] reaches count_threshold.
std::vector<ParamInterval> dense_windows(const FrequencyMap& map, int count_threshold,
                                         double band_lo, double band_hi);

}  // namespace chaostrack

#endif
