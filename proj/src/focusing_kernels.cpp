#include "chi2/focusing_kernels.hpp"

#include "chi2/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdio>

namespace chi2 {

namespace {

using cd = std::complex<double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

void check_args(double zx, double zy, double B) {
    if (!(zx >= 1e-3 && zx <= 1e2 && zy >= 1e-3 && zy <= 1e2))
        throw InvalidParam("focusing parameters must lie in [1e-3, 1e2]");
    if (!(B >= 0)) throw InvalidParam("B must be non-negative");
}

} // namespace

MixingProfile::MixingProfile(double zeta_x, double zeta_y, double B, QuadOptions opt)
    : zx_(zeta_x), zy_(zeta_y), b_(B), opt_(opt) {
    check_args(zx_, zy_, b_);
}

MixingProfile MixingProfile::circular(double xi, double B, QuadOptions opt) {
    MixingProfile p(xi, xi, B, opt);
    p.circular_ = true;
    return p;
}

cd MixingProfile::g(double s) const {
    if (circular_) return 1.0 / cd(1.0, zx_ * s);
    return 1.0 / std::sqrt(cd(1.0, zx_ * s) * cd(1.0, zy_ * s));
}

cd MixingProfile::inner(double u) const {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    double half = 2.0 - u;
    cd val(0.0, 0.0);
    if (half > 0) {
        // integrand is even in v
        auto f = [&](double v) { return g(0.5 * (v + u)) * std::conj(g(0.5 * (v - u))); };
        double err = 0, l1 = 0;
        double tol = opt_.rel_tol * 1e-2;
        val = 2.0 * GK::integrate(f, 0.0, half, opt_.max_depth, tol * 0.1, &err, &l1);
        if (err > tol * l1 && err > 1e-15) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "inner integral at u = %.6g: error %.3g > tol", u, err);
            throw QuadratureFailure(buf);
        }
    }
    cache_.emplace(u, val);
    return val;
}

double MixingProfile::h(double sigma) const {
    if (!(std::abs(sigma) <= 1e2)) throw InvalidParam("|sigma| must be <= 1e2");
    double z = std::sqrt(zx_ * zy_);
    double k = b_ * b_ * zx_;
    auto f = [&](double u) {
        cd ph = std::polar(std::exp(-k * u * u), sigma * z * u);
        return (ph * inner(u)).real();
    };
    double err = 0, l1 = 0;
    // ask for 10x margin, fail only when the requested tolerance is missed
    double val = GK::integrate(f, 0.0, 2.0, opt_.max_depth, opt_.rel_tol * 0.1, &err, &l1);
    double tol = opt_.rel_tol;
    if (err > tol * l1 && err > 1e-15) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "outer integral (zeta %.6g/%.6g, B %.6g, sigma %.6g): error %.3g > tol %.3g",
                      zx_, zy_, b_, sigma, err, tol * l1);
        throw QuadratureFailure(buf);
    }
    return 0.25 * z * val;
}

PeakH peak_h(const MixingProfile& p) {
    const double lo = -2.0, hi = 6.0, step = 0.25;
    double best_s = lo, best_h = p.h(lo);
    for (double s = lo + step; s <= hi + 1e-12; s += step) {
        double v = p.h(s);
        if (v > best_h) {
            best_h = v;
            best_s = s;
        }
    }
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima([&](double s) { return -p.h(s); },
                                                   best_s - step, best_s + step, 40, iters);
    if (-r.second >= best_h) return {-r.second, r.first};
    return {best_h, best_s};
}

std::vector<PeakH> peak_h_grid_serial(const std::vector<std::pair<double, double>>& zetas,
                                      double B, QuadOptions opt) {
    std::vector<PeakH> out(zetas.size());
    for (std::size_t i = 0; i < zetas.size(); ++i)
        out[i] = peak_h(MixingProfile(zetas[i].first, zetas[i].second, B, opt));
    return out;
}

std::vector<PeakH> peak_h_grid_omp(const std::vector<std::pair<double, double>>& zetas,
                                   double B, QuadOptions opt) {
    std::vector<PeakH> out(zetas.size());
    for (const auto& z : zetas) check_args(z.first, z.second, B);
    const long n = static_cast<long>(zetas.size());
    bool failed = false;
    std::string what;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = peak_h(MixingProfile(zetas[i].first, zetas[i].second, B, opt));
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                what = e.what();
            }
        }
    }
    if (failed) throw QuadratureFailure("h grid: " + what);
    return out;
}

double riemann_h(double zx, double zy, double sigma, double B, int n) {
    std::vector<cd> g(n);
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
        s[i] = -1.0 + (2.0 * i + 1.0) / n;
        g[i] = 1.0 / std::sqrt(cd(1.0, zx * s[i]) * cd(1.0, zy * s[i]));
    }
    double z = std::sqrt(zx * zy), k = B * B * zx, ds = 2.0 / n;
    double acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double u = s[i] - s[j];
            acc += (std::polar(std::exp(-k * u * u), sigma * z * u) * g[i] * std::conj(g[j])).real();
        }
    return 0.25 * z * acc * ds * ds;
}

} // namespace chi2
