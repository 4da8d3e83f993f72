#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chi2 {

struct PztResonance {
    double f0_hz = 0;
    double q = 1;
};

struct CavityLockPlant {
    double r = 0.98;           // round-trip amplitude reflectivity
    double fsr_hz = 850e6;
    double pzt_gain_hz_per_v = 1e7;
    std::optional<PztResonance> pzt;

    void validate() const;
    // round-trip phase per volt of actuator output
    double rad_per_volt() const;
    double volts_per_fsr() const;
    double fwhm_rad() const;
    // slope of the normalized error signal at resonance
    double error_slope() const;
};

CavityLockPlant make_lock_plant(double t1, double l_passive, double fsr_hz,
                                double pzt_gain_hz_per_v,
                                std::optional<PztResonance> pzt = std::nullopt);

// normalized so that the extrema are +-1
double hc_error_signal(double delta, const CavityLockPlant& plant);
double hc_peak_detuning(double r);
// normalized Airy transmission, 1 on resonance
double cavity_transmission(double delta, const CavityLockPlant& plant);

struct ServoConfig {
    double kp = 0;
    double ki = 0;  // per sample: u = kp e + ki sum(e)
    double sample_rate_hz = 1e6;
    double output_min_v = -150;
    double output_max_v = 150;
    double target_bandwidth_hz = 50e3;

    void validate() const;
};

ServoConfig tune_gains(const CavityLockPlant& plant, double target_bandwidth_hz,
                       double sample_rate_hz = 1e6, double output_min_v = -150,
                       double output_max_v = 150);

// open loop L(f) = K G C(z) A(z) / z for the linearized plant
std::complex<double> loop_gain(const CavityLockPlant& plant, const ServoConfig& servo, double f_hz);
// disturbance-to-detuning transfer 1/(1+L)
double rejection_magnitude(const CavityLockPlant& plant, const ServoConfig& servo, double f_hz);
double crossover_hz(const CavityLockPlant& plant, const ServoConfig& servo);
double phase_margin_deg(const CavityLockPlant& plant, const ServoConfig& servo);

enum class LockState { Locked, Unlocked, Scanning, Settling };
std::string to_string(LockState s);

struct LockAutomaton {
    LockState initial = LockState::Locked;
    double scan_duration_s = 5e-3;      // one FSR ramp
    double peak_threshold = 0.5;        // transmission accepted as a peak
    double unlock_threshold = 0.2;
    int unlock_samples = 20;
    double lock_threshold = 0.8;
    int lock_samples = 50;

    void validate() const;
};

struct Disturbance {
    double offset_rad = 0;          // constant detuning from t = 0
    double sine_amplitude_rad = 0;
    double sine_frequency_hz = 0;
    double step_time_s = -1;        // negative disables
    double step_rad = 0;
    double noise_rms_rad = 0;
    std::uint64_t seed = 1;

    std::vector<double> sample(double sample_rate_hz, std::size_t n) const;
};

struct LockEvent {
    std::size_t index = 0;
    double t = 0;
    LockState from = LockState::Locked;
    LockState to = LockState::Locked;
    double integrator = 0;  // value after the transition
};

struct LockTrace {
    std::vector<double> t, delta, error, control, transmission;
    std::vector<LockState> state;
    std::vector<LockEvent> events;
};

LockTrace simulate_lock(const CavityLockPlant& plant, const ServoConfig& servo,
                        const LockAutomaton& automaton, const std::vector<double>& disturbance,
                        double duration_s);

// first index after which |delta| stays below bound
std::optional<std::size_t> settle_index(const LockTrace& trace, double bound);

// amplitude of the f_hz component of x over samples [begin, end)
double tone_amplitude(const std::vector<double>& x, std::size_t begin, std::size_t end,
                      double f_hz, double sample_rate_hz);

} // namespace chi2
