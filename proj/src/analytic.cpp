#include "lzsim/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace lzsim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

using complexd = std::complex<double>;

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

struct Vec2 {
    complexd g;  // adiabatic ground amplitude
    complexd e;
};

// Crossing matrix in the adiabatic basis.
Vec2 apply_crossing(double p, double stokes, const Vec2& v) {
    double sp = std::sqrt(p);
    double sq = std::sqrt(1.0 - p);
    complexd phase = std::polar(1.0, stokes);
    return {sq * std::conj(phase) * v.g - sp * v.e,
            sp * v.g + sq * phase * v.e};
}

// Relative phase u between ground and excited components.
Vec2 apply_phase(double u, const Vec2& v) {
    complexd half = std::polar(1.0, 0.5 * u);
    return {half * v.g, std::conj(half) * v.e};
}

}  // namespace

LzCrossingParams::LzCrossingParams(double gap_, double rate_)
    : gap(gap_), rate(rate_) {
    if (!(gap >= 0.0)) throw std::invalid_argument("gap must be >= 0");
    if (!(rate > 0.0)) throw std::invalid_argument("sweep rate must be > 0");
}

LzCrossingParams LzCrossingParams::from_sweep(double gap, double omega_hi,
                                              double omega_lo, double tau_p) {
    if (!(tau_p > 0.0)) throw std::invalid_argument("tau_p must be > 0");
    if (!(omega_hi > omega_lo))
        throw std::invalid_argument("omega_hi must exceed omega_lo");
    return LzCrossingParams(gap, (omega_hi - omega_lo) / tau_p);
}

double lz_probability(const LzCrossingParams& params) {
    return std::exp(-kPi * params.gap * params.gap / (2.0 * params.rate));
}

double glzi_population(double p, double theta) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    double s = std::sin(theta);
    return 1.0 - 4.0 * p * (1.0 - p) * s * s;
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    complexd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    complexd t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double stokes_phase(double delta_s) {
    if (!(delta_s >= 0.0)) throw std::invalid_argument("delta_s must be >= 0");
    if (delta_s == 0.0) return kPi / 4.0;  // sudden-limit value, by continuity
    complexd lg = log_gamma(complexd{1.0, -delta_s});
    return kPi / 4.0 + delta_s * (std::log(delta_s) - 1.0) + lg.imag();
}

double adiabatic_impulse_p1(const ImpulseModelInputs& in) {
    if (!(in.p >= 0.0 && in.p <= 1.0))
        throw std::invalid_argument("p must lie in [0, 1]");
    Vec2 v{1.0, 0.0};
    v = apply_crossing(in.p, in.stokes, v);
    if (in.echo) {
        // The symmetric echo placement equalises the adiabatic phases on the
        // two sides; their mean enters each propagator and cancels through
        // the flip, while the geometric halves add.
        double zbar = 0.5 * (in.zeta1 + in.zeta2);
        v = apply_phase(zbar - in.theta, v);
        v = Vec2{v.e, v.g};  // instantaneous sigma_x in the adiabatic basis
        v = apply_phase(zbar + in.theta, v);
    } else {
        v = apply_phase(in.zeta1 - in.theta, v);
        v = apply_phase(in.zeta2 + in.theta, v);
    }
    v = apply_crossing(in.p, in.stokes, v);
    double p1 = std::norm(v.e);
    return std::min(std::max(p1, 0.0), 1.0);
}

double contrast(const std::vector<double>& series) {
    if (series.empty()) throw EmptySeries("contrast of an empty series");
    auto [mn, mx] = std::minmax_element(series.begin(), series.end());
    return *mx - *mn;
}

}  // namespace lzsim
