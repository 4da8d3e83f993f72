#include "commands.hpp"

#include "chi2/buildup.hpp"
#include "chi2/cavity.hpp"
#include "chi2/csv.hpp"
#include "chi2/dispersion.hpp"
#include "chi2/errors.hpp"
#include "chi2/focusing.hpp"
#include "chi2/locksim.hpp"
#include "chi2/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace chi2::cli {

namespace {

void kv(const Context& c, const std::string& key, double v) { *c.out << key << " = " << fmt9(v) << '\n'; }
void kv(const Context& c, const std::string& key, const std::string& v) { *c.out << key << " = " << v << '\n'; }

BowtieLayout layout_from(const IniDoc& ini) {
    std::string preset = ini.text_or("layout", "preset", "a");
    BowtieLayout l;
    if (preset == "a") l = layout_a();
    else if (preset == "b") l = layout_b();
    else throw ConfigInvalid("layout.preset must be a or b");
    l.d_mc = ini.number_or("layout", "d_mc_mm", l.d_mc * 1e3) * 1e-3;
    l.l_long = ini.number_or("layout", "l_long_mm", l.l_long * 1e3) * 1e-3;
    l.alpha_full = deg2rad(ini.number_or("layout", "alpha_full_deg", rad2deg(l.alpha_full)));
    l.r_mirror = ini.number_or("layout", "r_mirror_mm", l.r_mirror * 1e3) * 1e-3;
    l.crystal.length = ini.number_or("layout", "crystal_length_mm", l.crystal.length * 1e3) * 1e-3;
    l.crystal.temperature_c = ini.number_or("layout", "temperature_c", l.crystal.temperature_c);
    l.crystal.cut = AngleCut{deg2rad(ini.number_or("layout", "theta_deg", 0.0)), 0.0, true};
    l.fundamental = SpectralLine::from_nm(ini.number_or("layout", "fundamental_nm", l.fundamental.wavelength_nm()));
    validate(l);
    return l;
}

void report_mode(const Context& c, const EigenmodeSolution& m) {
    kv(c, "crystal_waist_x_um", m.crystal_waists.w0_x * 1e6);
    kv(c, "crystal_waist_y_um", m.crystal_waists.w0_y * 1e6);
    kv(c, "crystal_ellipticity", m.crystal_waists.ellipticity);
    kv(c, "secondary_waist_x_um", m.secondary_waists.w0_x * 1e6);
    kv(c, "secondary_waist_y_um", m.secondary_waists.w0_y * 1e6);
    kv(c, "secondary_ellipticity", m.secondary_waists.ellipticity);
    kv(c, "stability_x", m.stability_x);
    kv(c, "stability_y", m.stability_y);
    kv(c, "zeta_x", m.zeta_x);
    kv(c, "zeta_y", m.zeta_y);
    kv(c, "B", m.B);
}

LayoutParam param_from(const std::string& s) {
    if (s == "d_mc") return LayoutParam::DMc;
    if (s == "l_long") return LayoutParam::LLong;
    if (s == "alpha_full") return LayoutParam::AlphaFull;
    throw ConfigInvalid("sweep.param must be d_mc, l_long or alpha_full");
}

// config units: mm for lengths, degrees for the angle
double param_scale(LayoutParam p) { return p == LayoutParam::AlphaFull ? deg2rad(1.0) : 1e-3; }

} // namespace

const IniDoc& Context::require_config(const char* command) const {
    if (!config) throw ConfigInvalid(std::string(command) + " needs --config");
    return *config;
}

void Context::write_csv(const std::string& file, const std::string& command,
                        const std::vector<std::string>& extra, const CsvTable& t) const {
    auto lines = provenance_lines(command, constants, timestamp);
    lines.insert(lines.end(), extra.begin(), extra.end());
    std::filesystem::create_directories(out_dir);
    auto path = out_dir / file;
    write_atomic(path, render_csv(lines, t));
    *out << "wrote " << path.string() << '\n';
}

void cmd_index(const Context& c, const IndexArgs& a) {
    const Material& m = c.constants.material(material_from_string(a.material));
    RaySpec ray{a.ray == "e" ? Polarization::Extraordinary : Polarization::Ordinary, deg2rad(a.theta_deg)};
    double n = refractive_index(m, ray, SpectralLine::from_nm(a.wavelength_nm), a.temperature_c);
    *c.out << fmt9(n) << '\n';
}

void cmd_phasematch(const Context& c) {
    const IniDoc& ini = c.require_config("phasematch");
    MaterialId id = material_from_string(ini.text("crystal", "material"));
    const Material& m = c.constants.material(id);
    double t_c = ini.number_or("crystal", "temperature_c", 20.0);
    if (id == MaterialId::BBO) {
        auto fund = SpectralLine::from_nm(ini.number("beam", "fundamental_nm"));
        double length = ini.number("crystal", "length_mm") * 1e-3;
        double theta = type1_phasematch_angle(m, fund, t_c);
        double n_o = principal_index(m, Polarization::Ordinary, fund, t_c);
        double rho = walkoff_angle(m, theta, second_harmonic(fund), t_c);
        double k1 = 2 * pi * n_o / fund.wavelength_m();
        double B = walkoff_parameter_B(rho, k1, length);
        kv(c, "theta_pm_deg", rad2deg(theta));
        kv(c, "brewster_deg", rad2deg(brewster_angle(n_o)));
        kv(c, "walkoff_mrad", rho * 1e3);
        kv(c, "B", B);
        CsvTable t{{"theta_pm_deg", "brewster_deg", "walkoff_mrad", "B"}, {}};
        t.add_row({rad2deg(theta), rad2deg(brewster_angle(n_o)), rho * 1e3, B});
        c.write_csv("phasematch.csv", "phasematch", {}, t);
        return;
    }
    auto pump = SpectralLine::from_nm(ini.number("beams", "pump_nm"));
    auto signal = SpectralLine::from_nm(ini.number("beams", "signal_nm"));
    double period = ini.number("crystal", "poling_period_um") * 1e-6;
    double length = ini.number("crystal", "length_mm") * 1e-3;
    double t_pm = qpm_phasematch_temperature(m, pump, signal, period);
    auto curve = temperature_acceptance(m, pump, signal, period, length);
    kv(c, "sfg_nm", sum_wavelength(pump, signal).wavelength_nm());
    kv(c, "phasematch_temperature_c", t_pm);
    kv(c, "fwhm_c", curve.fwhm_c);
    CsvTable t{{"temperature_c", "relative_efficiency"}, {}};
    for (const auto& s : curve.samples) t.add_row({s.temperature_c, s.efficiency});
    c.write_csv("phasematch_qpm.csv", "phasematch", {}, t);
}

void cmd_sfg_curve(const Context& c) {
    const IniDoc& ini = c.require_config("sfg-curve");
    SfgInputs in;
    in.pump = SpectralLine::from_nm(ini.number("beams", "pump_nm"));
    in.signal = SpectralLine::from_nm(ini.number("beams", "signal_nm"));
    double loss = ini.number_or("beams", "input_loss_fraction", 0.0);
    if (!(loss >= 0 && loss < 1)) throw ConfigInvalid("beams.input_loss_fraction must lie in [0, 1)");
    in.p_pump_w = ini.number("beams", "p_pump_w") * (1 - loss);
    in.p_signal_w = ini.number("beams", "p_signal_w") * (1 - loss);
    in.w_pump = ini.number("beams", "w_pump_um") * 1e-6;
    in.w_signal = ini.number("beams", "w_signal_um") * 1e-6;
    double length = ini.number("crystal", "length_mm") * 1e-3;
    double period = ini.number("crystal", "poling_period_um") * 1e-6;
    in.crystal = CrystalSpec{MaterialId::CongruentLiNbO3, length, PolingCut{period, 0.0}, 20.0};
    const Material& ln = c.constants.material(MaterialId::CongruentLiNbO3);
    in.crystal.temperature_c = ini.has("crystal", "temperature_c")
                                   ? ini.number("crystal", "temperature_c")
                                   : qpm_phasematch_temperature(ln, in.pump, in.signal, period);

    std::string mode = ini.text_or("curve", "mode", "measured");
    if (mode != "measured" && mode != "predicted") throw ConfigInvalid("curve.mode must be measured or predicted");
    int points = int(ini.number_or("curve", "points", 11));
    if (points < 2) throw ConfigInvalid("curve.points must be >= 2");

    auto pred = sfg_predict(in, c.constants);
    double slope_pred = pred.eta_per_w_m * length;
    std::optional<double> slope_meas;
    if (ini.has("curve", "eta_pct_per_w_cm"))
        slope_meas = sfg_output_from_eta(ini.number("curve", "eta_pct_per_w_cm"), length, 1.0, 1.0);
    if (mode == "measured" && !slope_meas) throw ConfigInvalid("missing key curve.eta_pct_per_w_cm");
    double slope = mode == "measured" ? *slope_meas : slope_pred;

    kv(c, "temperature_c", in.crystal.temperature_c);
    kv(c, "xi_pump", pred.xi_pump);
    kv(c, "xi_signal", pred.xi_signal);
    kv(c, "h", pred.h);
    kv(c, "eta_predicted_pct_per_w_cm", pred.eta_pct_per_w_cm);
    kv(c, "slope_per_w", slope);
    double p1p2 = in.p_pump_w * in.p_signal_w;
    double p3 = slope * p1p2;
    kv(c, "p_sfg_w", p3);
    kv(c, "conversion", p3 / (in.p_pump_w + in.p_signal_w));
    if (slope_meas) kv(c, "predicted_over_measured", slope_pred / *slope_meas);
    if (p3 / (in.p_pump_w + in.p_signal_w) > 0.30) *c.out << "warning: depletion exceeds 30 %\n";

    CsvTable t{{"p1_p2_w2", "p_sfg_w"}, {}};
    for (int i = 0; i < points; ++i) {
        double f = double(i) / (points - 1);
        double prod = f * f * p1p2;
        t.add_row({prod, slope * prod});
    }
    c.write_csv("sfg_curve.csv", "sfg-curve", {"mode: " + mode}, t);
}

void cmd_cavity(const Context& c, const std::string& action) {
    const IniDoc& ini = c.require_config("cavity");
    BowtieLayout layout = layout_from(ini);
    const Constants& k = c.constants;

    if (action == "sweep") {
        LayoutParam p = param_from(ini.text("sweep", "param"));
        double lo = ini.number("sweep", "from"), hi = ini.number("sweep", "to");
        int n = int(ini.number_or("sweep", "points", 201));
        if (!(hi > lo) || n < 2) throw ConfigInvalid("sweep needs from < to and points >= 2");
        std::vector<double> values(n);
        for (int i = 0; i < n; ++i) values[i] = (lo + (hi - lo) * i / (n - 1)) * param_scale(p);
        auto rows = stability_scan_omp(layout, p, values, k);
        CsvTable t{{"value", "stability_x", "stability_y", "stable_x", "stable_y"}, {}};
        for (const auto& r : rows)
            t.add_row({fmt9(r.value / param_scale(p)), fmt9(r.stability_x), fmt9(r.stability_y),
                       r.stable_x ? "1" : "0", r.stable_y ? "1" : "0"});
        auto w = overlap_window(layout, p, lo * param_scale(p), hi * param_scale(p), 2000, k);
        if (w) {
            kv(c, "overlap_lo", w->lo / param_scale(p));
            kv(c, "overlap_hi", w->hi / param_scale(p));
        } else {
            kv(c, "overlap", "none");
        }
        c.write_csv("cavity_sweep.csv", "cavity sweep", {"param: " + ini.text("sweep", "param")}, t);
        return;
    }

    EigenmodeSolution mode;
    if (action == "design") {
        auto opt = optimize_layout(layout, {}, k);
        layout = opt.layout;
        mode = opt.mode;
        kv(c, "d_mc_mm", layout.d_mc * 1e3);
        kv(c, "l_long_mm", layout.l_long * 1e3);
        kv(c, "alpha_full_deg", rad2deg(layout.alpha_full));
        kv(c, "cycles", double(opt.cycles));
    } else {
        mode = solve_eigenmode(layout, k);
    }
    report_mode(c, mode);
    auto focus = optimize_sigma({mode.B, mode.zeta_x, mode.zeta_y, 0.0});
    kv(c, "h", focus.h);
    kv(c, "sigma", focus.config.sigma);
    double n_sh = crystal_index(layout, k);
    double r_sh = brewster_sh_reflectance(n_sh, std::atan(1.0 / n_sh));
    kv(c, "brewster_sh_reflectance", r_sh);
    try {
        auto oc = output_correction(layout, mode, {}, k);
        if (oc.f) {
            kv(c, "correction_f_mm", *oc.f * 1e3);
            kv(c, "correction_axis", oc.axis == Axis::X ? "x" : "y");
            kv(c, "correction_distance_mm", oc.distance_from_m1 * 1e3);
        } else {
            kv(c, "correction", "none needed");
        }
    } catch (const Unreachable& e) {
        kv(c, "correction", std::string("unreachable (") + e.what() + ")");
    }
    CsvTable t{{"d_mc_mm", "l_long_mm", "alpha_full_deg", "w_x_um", "w_y_um", "w2_x_um", "w2_y_um",
                "stability_x", "stability_y", "zeta_x", "zeta_y", "B", "h"},
               {}};
    t.add_row({layout.d_mc * 1e3, layout.l_long * 1e3, rad2deg(layout.alpha_full),
               mode.crystal_waists.w0_x * 1e6, mode.crystal_waists.w0_y * 1e6,
               mode.secondary_waists.w0_x * 1e6, mode.secondary_waists.w0_y * 1e6, mode.stability_x,
               mode.stability_y, mode.zeta_x, mode.zeta_y, mode.B, focus.h});
    c.write_csv("cavity_" + action + ".csv", "cavity " + action, {}, t);
}

void cmd_shg_curve(const Context& c) {
    const IniDoc& ini = c.require_config("shg-curve");
    BuildupParams p;
    p.t1 = ini.number_or("cavity", "t1", p.t1);
    p.r_brewster = ini.number_or("cavity", "r_brewster", p.r_brewster);
    if (ini.has("cavity", "l_passive") != ini.has("cavity", "gamma_per_w"))
        throw ConfigInvalid("give both cavity.l_passive and cavity.gamma_per_w, or neither");
    BuildupObservations obs;
    obs.t1 = p.t1;
    obs.r_brewster = p.r_brewster;
    obs.conversion_main = ini.number_or("calibration", "conversion_main", obs.conversion_main);
    obs.p_in_match = ini.number_or("calibration", "p_in_match_w", obs.p_in_match);
    obs.p_in_ref = ini.number_or("calibration", "p_in_ref_w", obs.p_in_ref);
    if (ini.has("cavity", "l_passive")) {
        p.l_passive = ini.number("cavity", "l_passive");
        p.gamma = ini.number("cavity", "gamma_per_w");
    } else {
        auto cal = calibrate_buildup(obs);
        p.l_passive = cal.l_passive;
        p.gamma = cal.gamma;
    }
    double pmax = ini.number_or("curve", "p_in_max_w", 2.0);
    int points = int(ini.number_or("curve", "points", 41));
    if (!(pmax > 0) || points < 2) throw ConfigInvalid("curve needs p_in_max_w > 0 and points >= 2");

    auto ref = buildup_solve(obs.p_in_ref, p);
    kv(c, "l_passive", p.l_passive);
    kv(c, "gamma_per_w", p.gamma);
    kv(c, "t1_impedance_match", impedance_match_T1(p.l_passive, p.gamma, obs.p_in_match));
    kv(c, "p_sh_main_at_ref_w", ref.p_sh_main);
    kv(c, "conversion_main_at_ref", ref.conversion_main);
    kv(c, "conversion_total_at_ref", ref.conversion_total);
    kv(c, "slope_low_power", buildup_log_slope(1e-4, p));
    kv(c, "slope_at_ref", buildup_log_slope(obs.p_in_ref, p));

    CsvTable t{{"p_in_w", "p_circ_w", "p_sh_main_w", "conversion_main"}, {}};
    for (int i = 0; i < points; ++i) {
        double pin = pmax * i / (points - 1);
        auto s = buildup_solve(pin, p);
        t.add_row({pin, s.p_circ, s.p_sh_main, s.conversion_main});
    }
    c.write_csv("shg_curve.csv", "shg-curve", {}, t);
}

void cmd_tune(const Context& c, const TuneArgs& a) {
    if (a.pump_nm.has_value() != a.signal_nm.has_value())
        throw InvalidParam("give --pump-nm and --signal-nm together");
    if (!a.pump_nm && a.sfg_nm.empty()) throw InvalidParam("give --pump-nm/--signal-nm or --sfg-nm");
    auto ref = d1_reference();
    CsvTable t{{"pump_nm", "signal_nm", "sfg_nm", "uv_nm", "detuning_ghz"}, {}};
    std::vector<double> uv_ghz;
    auto row = [&](std::string p, std::string s, const SpectralLine& sfg) {
        auto uv = second_harmonic(sfg);
        double det = uv_detuning_ghz(uv, ref);
        uv_ghz.push_back(det);
        t.add_row({std::move(p), std::move(s), fmt9(sfg.wavelength_nm()), fmt9(uv.wavelength_nm()), fmt9(det)});
        *c.out << fmt9(sfg.wavelength_nm()) << " nm -> " << fmt9(uv.wavelength_nm()) << " nm, "
               << fmt9(det) << " GHz\n";
    };
    if (a.pump_nm) {
        auto sfg = sum_wavelength(SpectralLine::from_nm(*a.pump_nm), SpectralLine::from_nm(*a.signal_nm));
        row(fmt9(*a.pump_nm), fmt9(*a.signal_nm), sfg);
    }
    for (double nm : a.sfg_nm) row("", "", SpectralLine::from_nm(nm));
    if (uv_ghz.size() >= 2) {
        auto [lo, hi] = std::minmax_element(uv_ghz.begin(), uv_ghz.end());
        kv(c, "uv_span_ghz", *hi - *lo);
    }
    c.write_csv("tune.csv", "tune", {}, t);
}

void cmd_locksim(const Context& c) {
    const IniDoc& ini = c.require_config("locksim");
    std::optional<PztResonance> res;
    if (ini.has("plant", "pzt_f0_khz"))
        res = PztResonance{ini.number("plant", "pzt_f0_khz") * 1e3, ini.number_or("plant", "pzt_q", 10.0)};
    auto plant = make_lock_plant(ini.number_or("plant", "t1", 0.016), ini.number_or("plant", "l_passive", 0.0096),
                                 ini.number_or("plant", "fsr_mhz", 850.0) * 1e6,
                                 ini.number_or("plant", "pzt_gain_mhz_per_v", 10.0) * 1e6, res);

    double bw = ini.number_or("servo", "target_bandwidth_khz", 50.0) * 1e3;
    double fs = ini.number_or("servo", "sample_rate_mhz", 1.0) * 1e6;
    double vmin = ini.number_or("servo", "output_min_v", -150), vmax = ini.number_or("servo", "output_max_v", 150);
    ServoConfig servo;
    if (ini.has("servo", "kp") || ini.has("servo", "ki")) {
        servo = ServoConfig{ini.number("servo", "kp"), ini.number("servo", "ki"), fs, vmin, vmax, bw};
        servo.validate();
    } else {
        servo = tune_gains(plant, bw, fs, vmin, vmax);
    }

    LockAutomaton aut;
    aut.scan_duration_s = ini.number_or("automaton", "scan_duration_ms", aut.scan_duration_s * 1e3) * 1e-3;
    aut.peak_threshold = ini.number_or("automaton", "peak_threshold", aut.peak_threshold);
    aut.unlock_threshold = ini.number_or("automaton", "unlock_threshold", aut.unlock_threshold);
    aut.unlock_samples = int(ini.number_or("automaton", "unlock_samples", aut.unlock_samples));
    aut.lock_threshold = ini.number_or("automaton", "lock_threshold", aut.lock_threshold);
    aut.lock_samples = int(ini.number_or("automaton", "lock_samples", aut.lock_samples));

    double fw = plant.fwhm_rad();
    double duration = ini.number("run", "duration_ms") * 1e-3;
    Disturbance d;
    d.offset_rad = ini.number_or("run", "offset_fwhm", 0.0) * fw;
    d.sine_amplitude_rad = ini.number_or("run", "sine_amplitude_fwhm", 0.0) * fw;
    d.sine_frequency_hz = ini.number_or("run", "sine_frequency_khz", 0.0) * 1e3;
    d.step_time_s = ini.number_or("run", "step_time_ms", -1.0) * 1e-3;
    d.step_rad = ini.number_or("run", "step_rad", 0.0);
    d.noise_rms_rad = ini.number_or("run", "noise_rms_fwhm", 0.0) * fw;
    d.seed = c.seed;
    if (!(duration > 0)) throw ConfigInvalid("run.duration_ms must be > 0");
    auto n = std::size_t(std::llround(duration * fs));
    auto tr = simulate_lock(plant, servo, aut, d.sample(fs, n), duration);

    kv(c, "kp", servo.kp);
    kv(c, "ki", servo.ki);
    kv(c, "crossover_hz", crossover_hz(plant, servo));
    kv(c, "phase_margin_deg", phase_margin_deg(plant, servo));
    kv(c, "fwhm_rad", fw);
    kv(c, "final_delta_fwhm", tr.delta.back() / fw);
    if (d.sine_frequency_hz > 0 && d.sine_amplitude_rad > 0) {
        double meas = tone_amplitude(tr.delta, n / 2, n, d.sine_frequency_hz, fs) / d.sine_amplitude_rad;
        kv(c, "rejection_measured", meas);
        kv(c, "rejection_analytic", rejection_magnitude(plant, servo, d.sine_frequency_hz));
    }

    CsvTable t{{"t_s", "delta_rad", "error", "control_v", "state"}, {}};
    for (std::size_t i = 0; i < n; ++i)
        t.add_row({fmt9(tr.t[i]), fmt9(tr.delta[i]), fmt9(tr.error[i]), fmt9(tr.control[i]), to_string(tr.state[i])});
    c.write_csv("locksim.csv", "locksim", {"seed: " + std::to_string(c.seed)}, t);

    std::string log;
    for (const auto& e : tr.events)
        log += fmt9(e.t) + " " + to_string(e.from) + " -> " + to_string(e.to) + " integrator=" + fmt9(e.integrator) + "\n";
    std::filesystem::create_directories(c.out_dir);
    write_atomic(c.out_dir / "locksim_events.txt", log);
    *c.out << "events = " << tr.events.size() << '\n';
}

} // namespace chi2::cli
