#include "lzsim/qubit_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lzsim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;

// SI constants (2019 exact values).
constexpr double kElementaryCharge = 1.602176634e-19;  // C
constexpr double kPlanck = 6.62607015e-34;             // J s
constexpr double kHbar = kPlanck / kTwoPi;
constexpr double kFluxQuantum = kPlanck / (2.0 * kElementaryCharge);

constexpr double kResidualFactor = 1e-10;    // |dU| <= 1e-10 E_J at a root
constexpr double kDegenerateFactor = 1e-9;   // |d2U| < 1e-9 E_J -> inflection
constexpr double kCalibrationTol = kTwoPi * 1e3;  // 1 kHz

// Bracketed bisection on the stationarity condition, polished with Newton
// steps; assumes a sign change on [lo, hi].
double refine_root(const PhaseQubitParams& p, double lo, double hi) {
    double flo = potential_gradient(lo, p);
    if (flo == 0.0) return lo;
    if (potential_gradient(hi, p) == 0.0) return hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = potential_gradient(mid, p);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * (1.0 + std::abs(lo))) break;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double f = potential_gradient(x, p);
        double d = potential_curvature(x, p);
        if (d == 0.0) break;
        double step = f / d;
        double xn = x - step;
        if (xn < lo || xn > hi) break;
        x = xn;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    return x;
}

struct Root {
    double phi;
    double curvature;  // d2U/dphi2
};

std::vector<Root> scan_roots(const PhaseQubitParams& p, double lo, double hi,
                             int subdivisions = 4096) {
    std::vector<Root> roots;
    double prev_x = lo;
    double prev_f = potential_gradient(lo, p);
    for (int i = 1; i <= subdivisions; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / subdivisions;
        double f = potential_gradient(x, p);
        if (prev_f == 0.0) {
            roots.push_back({prev_x, potential_curvature(prev_x, p)});
        } else if ((f > 0) != (prev_f > 0) || f == 0.0) {
            double r = refine_root(p, prev_x, x);
            roots.push_back({r, potential_curvature(r, p)});
        }
        prev_x = x;
        prev_f = f;
    }
    return roots;
}

}  // namespace

PhaseQubitParams::PhaseQubitParams(double ec, double ej, double el, double pex)
    : e_c(ec), e_j(ej), e_l(el), phi_ex(pex) {
    if (!(e_c > 0.0) || !(e_j > 0.0) || !(e_l > 0.0))
        throw std::invalid_argument("E_C, E_J, E_L must all be positive");
}

PhaseQubitParams PhaseQubitParams::from_raw(double capacitance, double inductance,
                                            double critical_current,
                                            double phi_ex) {
    if (!(capacitance > 0.0) || !(inductance > 0.0) || !(critical_current > 0.0))
        throw std::invalid_argument("raw circuit parameters must be positive");
    double ec = 2.0 * kElementaryCharge * kElementaryCharge / (capacitance * kHbar);
    double ej = critical_current * kFluxQuantum / (kTwoPi * kHbar);
    double red = kFluxQuantum / kTwoPi;
    double el = red * red / (2.0 * inductance * kHbar);
    return PhaseQubitParams(ec, ej, el, phi_ex);
}

PhaseQubitParams PhaseQubitParams::default_params(double phi_ex) {
    // C = 0.80 pF, L = 720 pH, I_c = 1.75 uA
    return from_raw(0.80e-12, 720e-12, 1.75e-6, phi_ex);
}

double potential_energy(double phi, const PhaseQubitParams& p) {
    double d = phi - p.phi_ex;
    return -p.e_j * std::cos(phi) + p.e_l * d * d;
}

double potential_gradient(double phi, const PhaseQubitParams& p) {
    return p.e_j * std::sin(phi) + 2.0 * p.e_l * (phi - p.phi_ex);
}

double potential_curvature(double phi, const PhaseQubitParams& p) {
    return p.e_j * std::cos(phi) + 2.0 * p.e_l;
}

WellGeometry stationary_phase_points(const PhaseQubitParams& p, double lo,
                                     double hi) {
    if (!(hi > lo)) throw std::invalid_argument("empty bracket");
    std::vector<Root> roots = scan_roots(p, lo, hi);
    const Root* best_min = nullptr;
    const Root* best_max = nullptr;
    for (const Root& r : roots) {
        if (std::abs(r.curvature) < kDegenerateFactor * p.e_j)
            throw DegenerateWell("near-inflection stationary point at phi = " +
                                 std::to_string(r.phi));
        if (std::abs(potential_gradient(r.phi, p)) > kResidualFactor * p.e_j)
            throw NoRootInBracket("stationary point residual too large");
        if (r.curvature > 0.0) {
            if (!best_min ||
                potential_energy(r.phi, p) < potential_energy(best_min->phi, p))
                best_min = &r;
        } else {
            if (!best_max ||
                potential_energy(r.phi, p) > potential_energy(best_max->phi, p))
                best_max = &r;
        }
    }
    if (!best_min) throw NoRootInBracket("no potential minimum in bracket");
    if (!best_max) throw NoRootInBracket("no potential maximum in bracket");
    WellGeometry w;
    w.phi_min = best_min->phi;
    w.phi_max = best_max->phi;
    w.curvature_at_min = 2.0 * p.e_c * best_min->curvature;
    return w;
}

double well_minimum(const PhaseQubitParams& p) {
    double lo = p.phi_ex - kPi;
    double hi = p.phi_ex + kPi / 2.0;
    std::vector<Root> roots = scan_roots(p, lo, hi);
    const Root* best = nullptr;
    for (const Root& r : roots) {
        if (r.curvature <= 0.0) continue;
        if (std::abs(r.curvature) < kDegenerateFactor * p.e_j)
            throw DegenerateWell("well curvature vanishes (qubit regime lost)");
        if (!best || potential_energy(r.phi, p) < potential_energy(best->phi, p))
            best = &r;
    }
    if (!best) throw NoRootInBracket("no potential minimum near phi_ex");
    return best->phi;
}

double level_spacing(const PhaseQubitParams& p) {
    double phi_min = well_minimum(p);
    double radicand = 2.0 * p.e_c * (p.e_j * std::cos(phi_min) + 2.0 * p.e_l);
    if (!(radicand > 0.0))
        throw ImaginaryFrequency("well curvature non-positive at the minimum");
    return std::sqrt(radicand);
}

double calibrate_bias(const PhaseQubitParams& base, double target_omega,
                      double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("empty search interval");
    auto spacing = [&](double pex) {
        return level_spacing(PhaseQubitParams(base.e_c, base.e_j, base.e_l, pex));
    };
    constexpr int kScan = 64;
    double prev = spacing(lo);
    double w_lo = prev;
    int direction = 0;
    for (int i = 1; i <= kScan; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / kScan;
        double w = spacing(x);
        int d = (w > prev) ? 1 : (w < prev ? -1 : 0);
        if (d != 0) {
            if (direction == 0) direction = d;
            else if (d != direction)
                throw NotMonotonic("level spacing is not monotonic over the interval");
        }
        prev = w;
    }
    double w_hi = prev;
    double wmin = std::min(w_lo, w_hi), wmax = std::max(w_lo, w_hi);
    if (target_omega < wmin - kCalibrationTol || target_omega > wmax + kCalibrationTol)
        throw TargetOutOfRange("target spacing not bracketed by the interval");

    bool decreasing = w_hi < w_lo;
    double a = lo, b = hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (a + b);
        double w = spacing(mid);
        bool go_right = decreasing ? (w > target_omega) : (w < target_omega);
        if (go_right) a = mid;
        else b = mid;
        if (b - a < 1e-14 * (1.0 + std::abs(a))) break;
    }
    double result = 0.5 * (a + b);
    if (std::abs(spacing(result) - target_omega) > kCalibrationTol) {
        // clamp to the nearer endpoint when the target sits on the edge
        double da = std::abs(spacing(lo) - target_omega);
        double db = std::abs(spacing(hi) - target_omega);
        double edge = da < db ? lo : hi;
        if (std::min(da, db) <= kCalibrationTol) return edge;
        throw TargetOutOfRange("bisection failed to reach the 1 kHz tolerance");
    }
    return result;
}

std::vector<std::pair<double, double>> spectroscopy_curve(
    const PhaseQubitParams& base, const std::vector<double>& biases) {
    std::vector<std::pair<double, double>> out;
    out.reserve(biases.size());
    for (double pex : biases) {
        try {
            PhaseQubitParams p(base.e_c, base.e_j, base.e_l, pex);
            out.emplace_back(pex, level_spacing(p));
        } catch (const std::exception& e) {
            throw NoRootInBracket("spectroscopy failed at phi_ex = " +
                                  std::to_string(pex) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace lzsim
