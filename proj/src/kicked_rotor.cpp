#include "chaostrack/kicked_rotor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chaostrack/errors.hpp"

namespace chaostrack {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ClassicalKRState standard_map_step(const ClassicalKRState& s, double k_param) {
    ClassicalKRState out;
    out.p = s.p + k_param * std::sin(s.x);
    out.x = s.x + out.p;
    return out;
}

ClassicalKRState standard_map_inverse_step(const ClassicalKRState& s, double k_param) {
    ClassicalKRState out;
    out.x = s.x - s.p;
    out.p = s.p - k_param * std::sin(out.x);
    return out;
}

TimeSeries classical_p2_series(double x0, double p0, double k_param, int n_kicks) {
    if (n_kicks < 1) throw ValidationError("n_kicks", "must be >= 1");
    TimeSeries out;
    out.dt = 1.0;
    out.values.reserve(n_kicks + 1);
    ClassicalKRState s{x0, p0};
    out.values.push_back(s.p * s.p);
    for (int t = 0; t < n_kicks; ++t) {
        s = standard_map_step(s, k_param);
        out.values.push_back(s.p * s.p);
    }
    return out;
}

double QKRState::norm_sq() const {
    double n = 0.0;
    for (const auto& a : amplitudes) n += std::norm(a);
    return n;
}

double QKRState::p2_expectation() const {
    const int m_half = half_width();
    double v = 0.0;
    for (int m = -m_half; m <= m_half; ++m) {
        const double p = momentum(m);
        v += std::norm(amplitudes[m + m_half]) * p * p;
    }
    return v;
}

double QKRState::boundary_fraction() const {
    double peak = 0.0;
    for (const auto& a : amplitudes) peak = std::max(peak, std::abs(a));
    if (peak == 0.0) return 0.0;
    return std::max(std::abs(amplitudes.front()), std::abs(amplitudes.back())) / peak;
}

QKRState QKRState::gaussian(double kbar, double p_center, double fwhm,
                            int ladder_half_width) {
    if (!(kbar > 0.0)) throw ValidationError("kbar", "must be > 0");
    if (ladder_half_width < 1) throw ValidationError("ladder_half_width", "must be >= 1");
    QKRState s;
    s.kbar = kbar;
    s.beta = p_center / kbar - std::floor(p_center / kbar);
    s.amplitudes.assign(2 * ladder_half_width + 1, 0.0);
    if (fwhm <= 0.0) {
        // Point limit: the single ladder state nearest p_center.
        int best = 0;
        double dist = std::abs(s.momentum(-ladder_half_width) - p_center);
        for (int m = -ladder_half_width; m <= ladder_half_width; ++m) {
            const double d = std::abs(s.momentum(m) - p_center);
            if (d < dist) {
                dist = d;
                best = m;
            }
        }
        s.amplitudes[best + ladder_half_width] = 1.0;
        return s;
    }
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    for (int m = -ladder_half_width; m <= ladder_half_width; ++m) {
        const double d = s.momentum(m) - p_center;
        s.amplitudes[m + ladder_half_width] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    const double inv = 1.0 / std::sqrt(s.norm_sq());
    for (auto& a : s.amplitudes) a *= inv;
    return s;
}

namespace {

// One kick period on a fixed-size ladder; owns the FFT plans and buffers.
class KickEngine {
  public:
    explicit KickEngine(int n) : n_(n) {
        buf_ = fftw_alloc_complex(n);
        to_angle_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
        to_mom_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~KickEngine() {
        fftw_destroy_plan(to_angle_);
        fftw_destroy_plan(to_mom_);
        fftw_free(buf_);
    }
    KickEngine(const KickEngine&) = delete;
    KickEngine& operator=(const KickEngine&) = delete;

    void apply(QKRState& s, double k_param) const {
        const int m_half = (n_ - 1) / 2;
        // Load ladder index m into DFT bin (m mod n) so exp(i m x) matches
        // the backward-transform convention on the angle grid x_j = 2 pi j/n.
        for (int m = -m_half; m <= m_half; ++m) {
            const int bin = (m + n_) % n_;
            buf_[bin][0] = s.amplitudes[m + m_half].real();
            buf_[bin][1] = s.amplitudes[m + m_half].imag();
        }
        fftw_execute(to_angle_);
        const double eps = k_param / s.kbar;
        for (int j = 0; j < n_; ++j) {
            const double x = kTwoPi * j / n_;
            const double ph = -eps * std::cos(x);
            const double cr = std::cos(ph), ci = std::sin(ph);
            const double re = buf_[j][0], im = buf_[j][1];
            buf_[j][0] = re * cr - im * ci;
            buf_[j][1] = re * ci + im * cr;
        }
        fftw_execute(to_mom_);
        const double inv = 1.0 / n_;
        for (int m = -m_half; m <= m_half; ++m) {
            const int bin = (m + n_) % n_;
            const double p = s.momentum(m);
            const double ph = -0.5 * p * p / s.kbar;
            const double cr = std::cos(ph), ci = std::sin(ph);
            const double re = buf_[bin][0] * inv, im = buf_[bin][1] * inv;
            s.amplitudes[m + m_half] = {re * cr - im * ci, re * ci + im * cr};
        }
    }

  private:
    int n_;
    fftw_complex* buf_;
    fftw_plan to_angle_;
    fftw_plan to_mom_;
};

void check_truncation(const QKRState& s, int kick) {
    if (s.boundary_fraction() >= 1e-8)
        throw TruncationOverflowError(
            "momentum ladder too small: boundary amplitude reached " +
            std::to_string(s.boundary_fraction()) + " of the maximum after kick " +
            std::to_string(kick));
}

}  // namespace

QKRState qkr_kick_then_free(const QKRState& s, double k_param) {
    QKRState out = s;
    KickEngine engine(static_cast<int>(s.amplitudes.size()));
    engine.apply(out, k_param);
    check_truncation(out, 1);
    return out;
}

TimeSeries qkr_p2_series(double k_param, double kbar, double p_center, double fwhm,
                         int n_kicks, int ladder_half_width) {
    if (n_kicks < 1) throw ValidationError("n_kicks", "must be >= 1");
    QKRState s = QKRState::gaussian(kbar, p_center, fwhm, ladder_half_width);
    check_truncation(s, 0);
    KickEngine engine(static_cast<int>(s.amplitudes.size()));
    TimeSeries out;
    out.dt = 1.0;
    out.values.reserve(n_kicks + 1);
    out.values.push_back(s.p2_expectation());
    for (int t = 1; t <= n_kicks; ++t) {
        engine.apply(s, k_param);
        check_truncation(s, t);
        out.values.push_back(s.p2_expectation());
    }
    return out;
}

}  // namespace chaostrack
