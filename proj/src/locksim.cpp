#include "chi2/locksim.hpp"

#include "chi2/errors.hpp"
#include "chi2/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace chi2 {

namespace {

using cd = std::complex<double>;

struct Biquad {
    double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;

    static Biquad pzt(const std::optional<PztResonance>& p, double fs) {
        Biquad q;
        if (!p) return q;
        double w0 = 2 * pi * p->f0_hz, k = 2 * fs;
        double a0 = k * k + k * w0 / p->q + w0 * w0;
        q.b0 = w0 * w0 / a0;
        q.b1 = 2 * w0 * w0 / a0;
        q.b2 = w0 * w0 / a0;
        q.a1 = (2 * w0 * w0 - 2 * k * k) / a0;
        q.a2 = (k * k - k * w0 / p->q + w0 * w0) / a0;
        return q;
    }
    double step(double x) {
        double y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
        x2 = x1;
        x1 = x;
        y2 = y1;
        y1 = y;
        return y;
    }
    void preset(double v) {  // steady state at input v (dc gain is 1)
        x1 = x2 = y1 = y2 = v;
    }
    cd response(cd zi) const {
        return (b0 + b1 * zi + b2 * zi * zi) / (1.0 + a1 * zi + a2 * zi * zi);
    }
};

cd loop_unit(const CavityLockPlant& plant, double kp, double ki, double fs, double f) {
    cd z = std::polar(1.0, 2 * pi * f / fs);
    cd zi = 1.0 / z;
    cd c = kp + ki * z / (z - 1.0);
    cd a = Biquad::pzt(plant.pzt, fs).response(zi);
    return plant.error_slope() * plant.rad_per_volt() * c * a * zi;
}

// arg L(f) unwrapped continuously from a low frequency, where the integrator gives -90 deg
double unwrapped_phase(const CavityLockPlant& plant, double kp, double ki, double fs, double f) {
    double f0 = std::min(f, 1e-6 * fs);
    double ph = std::arg(loop_unit(plant, kp, ki, fs, f0));
    double prev = ph;
    const int n = 4000;
    for (int i = 1; i <= n; ++i) {
        double fi = f0 * std::pow(f / f0, double(i) / n);
        double a = std::arg(loop_unit(plant, kp, ki, fs, fi));
        ph += std::remainder(a - prev, 2 * pi);
        prev = a;
    }
    return ph;
}

} // namespace

void CavityLockPlant::validate() const {
    if (!(r > 0 && r < 1)) throw ConfigInvalid("plant r must lie in (0, 1)");
    if (!(fsr_hz > 0)) throw ConfigInvalid("plant fsr must be > 0");
    if (!(pzt_gain_hz_per_v != 0 && std::isfinite(pzt_gain_hz_per_v)))
        throw ConfigInvalid("pzt gain must be nonzero");
    if (pzt && !(pzt->f0_hz > 0 && pzt->q > 0)) throw ConfigInvalid("pzt resonance needs f0 > 0, Q > 0");
}

double CavityLockPlant::rad_per_volt() const { return 2 * pi * pzt_gain_hz_per_v / fsr_hz; }
double CavityLockPlant::volts_per_fsr() const { return fsr_hz / pzt_gain_hz_per_v; }
double CavityLockPlant::fwhm_rad() const { return 4 * std::asin((1 - r) / (2 * std::sqrt(r))); }
double CavityLockPlant::error_slope() const { return (1 + r) / (1 - r); }

CavityLockPlant make_lock_plant(double t1, double l_passive, double fsr_hz, double pzt_gain,
                                std::optional<PztResonance> pzt) {
    if (!(t1 > 0 && t1 < 1 && l_passive >= 0 && l_passive < 1))
        throw ConfigInvalid("T1 in (0, 1) and L in [0, 1) required");
    CavityLockPlant p;
    p.r = std::sqrt((1 - t1) * (1 - l_passive));
    p.fsr_hz = fsr_hz;
    p.pzt_gain_hz_per_v = pzt_gain;
    p.pzt = pzt;
    p.validate();
    return p;
}

namespace {
// 1 + r^2 - 2 r cos(delta) without the cancellation near resonance
double airy_den(double r, double delta) {
    double s = std::sin(0.5 * delta);
    return (1 - r) * (1 - r) + 4 * r * s * s;
}
} // namespace

double hc_error_signal(double delta, const CavityLockPlant& plant) {
    double r = plant.r;
    return (1 - r) * (1 + r) * std::sin(delta) / airy_den(r, delta);
}

double hc_peak_detuning(double r) { return std::acos(2 * r / (1 + r * r)); }

double cavity_transmission(double delta, const CavityLockPlant& plant) {
    double r = plant.r;
    return (1 - r) * (1 - r) / airy_den(r, delta);
}

void ServoConfig::validate() const {
    if (!(target_bandwidth_hz > 0)) throw ConfigInvalid("target bandwidth must be > 0");
    if (!(sample_rate_hz >= 20 * target_bandwidth_hz))
        throw ConfigInvalid("sample rate must be at least 20x the target bandwidth");
    if (!(output_max_v > output_min_v)) throw ConfigInvalid("output limits are empty");
    if (!std::isfinite(kp) || !std::isfinite(ki)) throw ConfigInvalid("servo gains must be finite");
}

std::complex<double> loop_gain(const CavityLockPlant& plant, const ServoConfig& s, double f) {
    return loop_unit(plant, s.kp, s.ki, s.sample_rate_hz, f);
}

double rejection_magnitude(const CavityLockPlant& plant, const ServoConfig& s, double f) {
    return std::abs(1.0 / (1.0 + loop_gain(plant, s, f)));
}

double crossover_hz(const CavityLockPlant& plant, const ServoConfig& s) {
    // first downward crossing of |L| = 1 on a log grid, refined by bisection
    double nyq = 0.5 * s.sample_rate_hz;
    int n = 2000;
    double lo = nyq * 1e-6;
    double prev_f = lo;
    for (int i = 1; i <= n; ++i) {
        double f = lo * std::pow(nyq * 0.999 / lo, double(i) / n);
        if (std::abs(loop_gain(plant, s, f)) < 1 && std::abs(loop_gain(plant, s, prev_f)) >= 1) {
            double a = prev_f, b = f;
            for (int k = 0; k < 100; ++k) {
                double m = std::sqrt(a * b);
                (std::abs(loop_gain(plant, s, m)) >= 1 ? a : b) = m;
            }
            return std::sqrt(a * b);
        }
        prev_f = f;
    }
    throw NoRoot("loop gain has no unity crossing below Nyquist");
}

double phase_margin_deg(const CavityLockPlant& plant, const ServoConfig& s) {
    double fc = crossover_hz(plant, s);
    // L = -(open-loop) in the negative-feedback convention delta = d - L delta
    return 180.0 + rad2deg(unwrapped_phase(plant, s.kp, s.ki, s.sample_rate_hz, fc));
}

ServoConfig tune_gains(const CavityLockPlant& plant, double target, double fs, double vmin,
                       double vmax) {
    plant.validate();
    ServoConfig s;
    s.target_bandwidth_hz = target;
    s.sample_rate_hz = fs;
    s.output_min_v = vmin;
    s.output_max_v = vmax;
    if (!(target > 0)) throw InvalidParam("target bandwidth must be > 0");
    s.validate();

    double wc = 2 * pi * target, wz = 3 * wc, T = 1 / fs;
    double kp1 = 1 / wz, ki1 = T;
    double g = std::abs(loop_unit(plant, kp1, ki1, fs, target));
    double sign = plant.pzt_gain_hz_per_v > 0 ? 1.0 : -1.0;
    s.kp = kp1 / g * sign;
    s.ki = ki1 / g * sign;

    double pm = 180.0 + rad2deg(unwrapped_phase(plant, s.kp, s.ki, fs, target));
    char buf[160];
    if (!(pm >= 45)) {
        std::snprintf(buf, sizeof buf, "phase margin %.1f deg at %.3g Hz is below 45 deg", pm, target);
        throw Unachievable(buf);
    }
    double nyq = 0.5 * fs;
    for (int i = 0; i <= 2000; ++i) {
        double f = 1.05 * target * std::pow(0.999 * nyq / (1.05 * target), i / 2000.0);
        double m = std::abs(loop_gain(plant, s, f));
        if (m >= 1) {
            std::snprintf(buf, sizeof buf, "loop gain %.3g at %.4g Hz above crossover", m, f);
            throw Unachievable(buf);
        }
    }
    return s;
}

std::string to_string(LockState s) {
    switch (s) {
    case LockState::Locked: return "Locked";
    case LockState::Unlocked: return "Unlocked";
    case LockState::Scanning: return "Scanning";
    case LockState::Settling: return "Settling";
    }
    return "?";
}

void LockAutomaton::validate() const {
    if (!(scan_duration_s > 0)) throw ConfigInvalid("scan duration must be > 0");
    if (!(unlock_threshold > 0 && unlock_threshold < lock_threshold && lock_threshold <= 1))
        throw ConfigInvalid("need 0 < unlock threshold < lock threshold <= 1");
    if (!(peak_threshold > 0 && peak_threshold <= 1)) throw ConfigInvalid("peak threshold must lie in (0, 1]");
    if (unlock_samples < 1 || lock_samples < 1) throw ConfigInvalid("sample counts must be >= 1");
}

std::vector<double> Disturbance::sample(double fs, std::size_t n) const {
    std::vector<double> d(n, offset_rad);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double t = double(i) / fs;
        if (sine_amplitude_rad != 0) d[i] += sine_amplitude_rad * std::sin(2 * pi * sine_frequency_hz * t);
        if (step_time_s >= 0 && t >= step_time_s) d[i] += step_rad;
        if (noise_rms_rad > 0) d[i] += noise_rms_rad * gauss(rng);
    }
    return d;
}

LockTrace simulate_lock(const CavityLockPlant& plant, const ServoConfig& servo,
                        const LockAutomaton& aut, const std::vector<double>& dist, double duration) {
    plant.validate();
    servo.validate();
    aut.validate();
    const double fs = servo.sample_rate_hz;
    if (!(duration > 0)) throw ConfigInvalid("duration must be > 0");
    const std::size_t n = std::size_t(std::llround(duration * fs));
    if (dist.size() < n) throw ConfigInvalid("disturbance shorter than the run");

    LockTrace tr;
    for (auto* v : {&tr.t, &tr.delta, &tr.error, &tr.control, &tr.transmission}) v->reserve(n);
    tr.state.reserve(n);

    Biquad act = Biquad::pzt(plant.pzt, fs);
    const double g = plant.rad_per_volt();
    const double v_fsr = std::abs(plant.volts_per_fsr());
    const std::size_t scan_n = std::max<std::size_t>(2, std::size_t(std::llround(aut.scan_duration_s * fs)));

    LockState st = aut.initial;
    double integ = 0, bias = 0, u_prev = 0;
    int below = 0, above = 0;
    std::size_t scan_k = 0;
    double best_t = -1, best_v = 0;
    auto clamp = [&](double u) { return std::clamp(u, servo.output_min_v, servo.output_max_v); };
    auto go = [&](std::size_t i, LockState to) {
        tr.events.push_back({i, double(i) / fs, st, to, integ});
        st = to;
    };

    for (std::size_t i = 0; i < n; ++i) {
        double y = act.step(u_prev);
        double delta = dist[i] - g * y;
        double e = hc_error_signal(delta, plant);
        double tx = cavity_transmission(delta, plant);
        double u = u_prev;
        LockState recorded = st;

        switch (st) {
        case LockState::Locked:
        case LockState::Settling: {
            double trial = bias + servo.kp * e + servo.ki * (integ + e);
            // conditional integration against windup
            if (trial == clamp(trial)) integ += e;
            u = clamp(bias + servo.kp * e + servo.ki * integ);
            if (st == LockState::Locked) {
                below = tx < aut.unlock_threshold ? below + 1 : 0;
                if (below >= aut.unlock_samples) {
                    below = 0;
                    go(i, LockState::Unlocked);
                }
            } else {
                above = tx >= aut.lock_threshold ? above + 1 : 0;
                if (above >= aut.lock_samples) {
                    above = 0;
                    go(i, LockState::Locked);
                }
            }
            break;
        }
        case LockState::Unlocked:
            integ = 0;
            bias = 0;
            scan_k = 0;
            best_t = -1;
            go(i, LockState::Scanning);
            u = clamp(0.0);
            break;
        case LockState::Scanning: {
            // tx reflects the command issued one sample earlier
            if (scan_k > 0 && tx >= aut.peak_threshold && tx > best_t) {
                best_t = tx;
                best_v = u_prev;
            }
            ++scan_k;
            if (scan_k >= scan_n) {
                if (best_t >= 0) {
                    bias = best_v;
                    integ = 0;
                    above = 0;
                    go(i, LockState::Settling);
                    u = clamp(bias);
                } else {
                    scan_k = 0;
                    u = clamp(0.0);
                }
            } else {
                u = clamp(v_fsr * double(scan_k) / double(scan_n - 1));
            }
            break;
        }
        }

        tr.t.push_back(double(i) / fs);
        tr.delta.push_back(delta);
        tr.error.push_back(e);
        tr.control.push_back(u);
        tr.transmission.push_back(tx);
        tr.state.push_back(recorded);
        u_prev = u;
    }
    return tr;
}

std::optional<std::size_t> settle_index(const LockTrace& tr, double bound) {
    std::size_t n = tr.delta.size();
    std::size_t k = n;
    while (k > 0 && std::abs(tr.delta[k - 1]) < bound) --k;
    if (k == n) return std::nullopt;
    return k;
}

double tone_amplitude(const std::vector<double>& x, std::size_t b, std::size_t e, double f, double fs) {
    double c = 0, s = 0;
    for (std::size_t i = b; i < e; ++i) {
        double ph = 2 * pi * f * double(i) / fs;
        c += x[i] * std::cos(ph);
        s += x[i] * std::sin(ph);
    }
    double m = double(e - b);
    return 2 * std::hypot(c, s) / m;
}

} // namespace chi2
