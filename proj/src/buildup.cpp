#include "chi2/buildup.hpp"

#include "chi2/errors.hpp"

#include <cmath>
#include <cstdio>

namespace chi2 {

namespace {

double round_trip_amp(const BuildupParams& p, double pc) {
    double conv = std::max(0.0, 1.0 - p.gamma * pc);
    return std::sqrt((1 - p.t1) * (1 - p.l_passive) * conv);
}

double rhs(double p_in, const BuildupParams& p, double pc) {
    double den = 1.0 - round_trip_amp(p, pc);
    return p.t1 * p_in / (den * den);
}

double residual_w(double p_in, const BuildupParams& p, double pc) {
    double den = 1.0 - round_trip_amp(p, pc);
    return pc * den * den - p.t1 * p_in;
}

template <class F>
double bisect(F f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 300; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        double fm = f(m);
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

BuildupSolution buildup_solve(double p_in, const BuildupParams& p) {
    if (!(p.t1 > 0 && p.t1 < 1)) throw InvalidParam("T1 must lie in (0, 1)");
    if (!(p.l_passive >= 0 && p.l_passive < 1)) throw InvalidParam("L_passive must lie in [0, 1)");
    if (!(p.gamma >= 0)) throw InvalidParam("gamma must be >= 0");
    if (!(p_in >= 0)) throw InvalidParam("P_in must be >= 0");

    BuildupSolution s;
    s.p_in = p_in;
    const double tol = 1e-9 * std::max(p_in, 1e-300);
    // damped fixed point
    double pc = rhs(p_in, p, 0.0);
    int it = 0;
    for (; it < 100000; ++it) {
        double next = 0.5 * pc + 0.5 * rhs(p_in, p, pc);
        if (p.gamma > 0) next = std::min(next, 1.0 / p.gamma);
        bool done = std::abs(next - pc) <= 1e-15 * std::max(next, 1e-300);
        pc = next;
        if (done) break;
    }
    s.iterations = it;
    if (!(std::abs(residual_w(p_in, p, pc)) <= tol) && p_in > 0) {
        // bracketed fallback: residual is negative at 0 and positive at P_max
        double hi = p.gamma > 0 ? 1.0 / p.gamma : rhs(p_in, p, 0.0) * 2;
        pc = bisect([&](double x) { return residual_w(p_in, p, x); }, 0.0, hi);
    }
    s.fixed_point_residual = std::abs(residual_w(p_in, p, pc));
    if (p_in > 0 && !(s.fixed_point_residual <= tol)) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "buildup residual %.3g W exceeds %.3g W",
                      s.fixed_point_residual, tol);
        throw NoConvergence(buf);
    }
    s.p_circ = pc;
    s.p_sh_internal = p.gamma * pc * pc;
    s.p_sh_main = (1 - p.r_brewster) * s.p_sh_internal;
    s.conversion_total = p_in > 0 ? s.p_sh_internal / p_in : 0.0;
    s.conversion_main = (1 - p.r_brewster) * s.conversion_total;
    s.impedance_residual = p.t1 - (p.l_passive + p.gamma * pc);
    return s;
}

double impedance_match_T1(double l_passive, double gamma, double p_in_design) {
    if (!(l_passive >= 0 && l_passive < 1 && gamma >= 0 && p_in_design > 0))
        throw InvalidParam("impedance match needs 0 <= L < 1, gamma >= 0, P > 0");
    if (gamma == 0) return l_passive;
    auto g = [&](double t1) {
        BuildupParams p{t1, l_passive, gamma};
        return t1 - (l_passive + gamma * buildup_solve(p_in_design, p).p_circ);
    };
    double lo = std::max(l_passive, 1e-12), hi = 1 - 1e-12;
    if (!(g(lo) < 0 && g(hi) > 0)) throw NoConvergence("impedance-match root not bracketed");
    double t1 = bisect(g, lo, hi);
    if (!(std::abs(g(t1)) < 1e-9)) throw NoConvergence("impedance-match residual above 1e-9");
    return t1;
}

BuildupCalibration calibrate_buildup(const BuildupObservations& o) {
    if (!(o.r_brewster >= 0 && o.r_brewster < 1)) throw Inconsistent("R_brewster outside [0, 1)");
    double total = o.conversion_main / (1 - o.r_brewster);
    if (!(total > 0 && total < 1)) throw Inconsistent("implied total conversion outside (0, 1)");
    if (!(o.t1 > 0 && o.t1 < 1)) throw Inconsistent("T1 outside (0, 1)");

    // passive loss that impedance-matches at p_in_match for a given gamma
    auto loss_for = [&](double gamma) {
        auto g = [&](double l) {
            BuildupParams p{o.t1, l, gamma};
            return o.t1 - (l + gamma * buildup_solve(o.p_in_match, p).p_circ);
        };
        if (!(g(0.0) > 0)) return -1.0;  // conversion alone exceeds T1
        return bisect(g, 0.0, o.t1);
    };
    auto conv_at_ref = [&](double gamma) {
        double l = loss_for(gamma);
        if (l < 0) return 1.0;
        BuildupParams p{o.t1, l, gamma};
        return buildup_solve(o.p_in_ref, p).conversion_total;
    };
    double lo = 1e-9, hi = 1e-9;
    while (conv_at_ref(hi) < total) {
        lo = hi;
        hi *= 2;
        if (hi > 1e3) throw Inconsistent("no gamma reaches the requested conversion");
    }
    double gamma = bisect([&](double g) { return conv_at_ref(g) - total; }, lo, hi);
    double l = loss_for(gamma);
    if (l < 0) throw Inconsistent("calibration left no room for passive loss");
    // the bracket can close on the jump where the passive loss reaches zero
    if (std::abs(conv_at_ref(gamma) - total) > 1e-6)
        throw Inconsistent("requested conversion exceeds the lossless limit");
    return {l, gamma, total};
}

double buildup_log_slope(double p_in, const BuildupParams& p) {
    double a = buildup_solve(p_in * 0.99, p).p_sh_internal;
    double b = buildup_solve(p_in * 1.01, p).p_sh_internal;
    return std::log(b / a) / std::log(1.01 / 0.99);
}

} // namespace chi2
