#include "lzsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lzsim/csv_io.hpp"
#include "lzsim/schedule.hpp"

namespace lzsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPlateauStdTol = 0.02;

double field_magnitude(const EffectiveField& f) {
    return std::sqrt(f.delta * f.delta + f.omega_x * f.omega_x +
                     f.omega_y * f.omega_y);
}

// Adiabatic dynamical phase between the crossings, Simpson's rule.
double dynamical_phase(const Schedule& s, double t_lo, double t_hi) {
    constexpr int kIntervals = 2000;  // even
    double h = (t_hi - t_lo) / kIntervals;
    double acc = field_magnitude(s.field_clamped(t_lo)) +
                 field_magnitude(s.field_clamped(t_hi));
    for (int i = 1; i < kIntervals; ++i) {
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * field_magnitude(s.field_clamped(t_lo + i * h));
    }
    return acc * h / 3.0;
}

double final_p1(const Schedule& sched, Method method,
                const std::optional<DecoherenceParams>& dec, double dt) {
    if (method == Method::Schrodinger) {
        Trajectory t = evolve_schrodinger(sched, QubitState::ground(), dt,
                                          1 << 30);
        return t.p1.back();
    }
    Trajectory t = evolve_master(sched, DensityMatrix::ground(), *dec, dt,
                                 1 << 30);
    return t.p1.back();
}

// Relaxation grids include zero delay, realised as a 1 ps stand-in segment;
// the step is clipped so those points integrate rather than erroring out.
double clip_dt(const Schedule& s, double dt) {
    double shortest = dt;
    for (const Segment& seg : s.segments) shortest = std::min(shortest, seg.duration);
    return shortest;
}

void require_method_inputs(Method method,
                           const std::optional<DecoherenceParams>& dec) {
    if (method == Method::Master && !dec)
        throw std::invalid_argument("master method requires decoherence parameters");
    if (method != Method::Master && dec)
        throw std::invalid_argument(
            "decoherence parameters only apply to the master method");
}

std::string fmt(double v) { return format_g12(v); }

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::Schrodinger: return "schrodinger";
        case Method::Master: return "master";
        case Method::Impulse: return "impulse";
    }
    return "?";
}

GlziParams GlziParams::reference_defaults() {
    return {kTwoPi * 100e6, kTwoPi * 20e6, 25e-9, 100e-9};
}

SweepResult run_glzi_theta_sweep(const std::vector<double>& thetas,
                                 const GlziParams& gp, Method method,
                                 std::optional<DecoherenceParams> dec, double dt,
                                 std::optional<double> p_override) {
    require_method_inputs(method, dec);
    SweepResult res;
    res.axis_name = "theta_rad";
    res.axis = thetas;
    res.method = method;
    res.params = {{"delta0_rad_s", fmt(gp.delta0)}, {"omega_rad_s", fmt(gp.omega)},
                  {"tau_p_s", fmt(gp.tau_p)},       {"tau_c_s", fmt(gp.tau_c)},
                  {"method", method_name(method)},  {"dt_s", fmt(dt)}};
    if (dec) {
        res.params.emplace_back("t1_s", fmt(dec->T1));
        res.params.emplace_back("t2_s", fmt(dec->T2));
    }

    double p = 0.0, zeta = 0.0, phi_s = 0.0;
    if (method == Method::Impulse) {
        LzCrossingParams cross(gp.omega, 2.0 * gp.delta0 / gp.tau_p);
        p = p_override.value_or(lz_probability(cross));
        phi_s = stokes_phase(cross.adiabaticity());
        Schedule ref = build_glzi(gp.delta0, gp.omega, 0.0, gp.tau_p, gp.tau_c);
        zeta = 0.5 * dynamical_phase(ref, *ref.tau_1, *ref.tau_2);
        res.params.emplace_back("impulse_p", fmt(p));
    }

    res.p1.reserve(thetas.size());
    for (double theta : thetas) {
        if (method == Method::Impulse) {
            res.p1.push_back(
                adiabatic_impulse_p1({p, theta, zeta, zeta, phi_s, true}));
            continue;
        }
        Schedule sched = build_glzi(gp.delta0, gp.omega, theta, gp.tau_p, gp.tau_c);
        try {
            res.p1.push_back(final_p1(sched, method, dec, dt));
        } catch (const std::exception& e) {
            throw std::runtime_error("glzi sweep failed at theta = " +
                                     fmt(theta) + ": " + e.what());
        }
    }
    return res;
}

SweepResult run_glzi_map(const std::vector<double>& thetas,
                         const std::vector<double>& tau_ps, double delta0,
                         double omega, double tau_c, Method method,
                         std::optional<DecoherenceParams> dec, double dt) {
    SweepResult map;
    map.axis_name = "theta_rad";
    map.axis = thetas;
    map.axis2_name = "tau_p_s";
    map.axis2 = tau_ps;
    map.method = method;
    map.p1.reserve(thetas.size() * tau_ps.size());
    for (double tp : tau_ps) {
        GlziParams gp{delta0, omega, tp, tau_c};
        SweepResult row = run_glzi_theta_sweep(thetas, gp, method, dec, dt);
        map.p1.insert(map.p1.end(), row.p1.begin(), row.p1.end());
        if (map.params.empty()) {
            map.params = row.params;
            map.params.erase(
                std::remove_if(map.params.begin(), map.params.end(),
                               [](const auto& kv) { return kv.first == "tau_p_s"; }),
                map.params.end());
        }
    }
    return map;
}

SweepResult run_dlzi_sweep(const std::vector<double>& tau_cs, double theta_const,
                           double delta0, double omega, double tau_p,
                           Method method, std::optional<DecoherenceParams> dec,
                           double dt, std::optional<double> p_override) {
    require_method_inputs(method, dec);
    SweepResult res;
    res.axis_name = "tau_c_s";
    res.axis = tau_cs;
    res.method = method;
    res.params = {{"delta0_rad_s", fmt(delta0)}, {"omega_rad_s", fmt(omega)},
                  {"tau_p_s", fmt(tau_p)},       {"theta_const_rad", fmt(theta_const)},
                  {"method", method_name(method)}, {"dt_s", fmt(dt)}};
    if (dec) {
        res.params.emplace_back("t1_s", fmt(dec->T1));
        res.params.emplace_back("t2_s", fmt(dec->T2));
    }

    double p = 0.0, phi_s = 0.0;
    if (method == Method::Impulse) {
        LzCrossingParams cross(omega, 2.0 * delta0 / tau_p);
        p = p_override.value_or(lz_probability(cross));
        phi_s = stokes_phase(cross.adiabaticity());
        res.params.emplace_back("impulse_p", fmt(p));
    }

    res.p1.reserve(tau_cs.size());
    for (double tc : tau_cs) {
        Schedule sched = build_dlzi(delta0, omega, theta_const, tau_p, tc);
        try {
            if (method == Method::Impulse) {
                double zeta = 0.5 * dynamical_phase(sched, *sched.tau_1, *sched.tau_2);
                res.p1.push_back(
                    adiabatic_impulse_p1({p, 0.0, zeta, zeta, phi_s, false}));
            } else {
                res.p1.push_back(final_p1(sched, method, dec, dt));
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("dlzi sweep failed at tau_c = " + fmt(tc) +
                                     ": " + e.what());
        }
    }
    return res;
}

TimeTrace run_time_trace(double theta, const GlziParams& gp, Method method,
                         std::optional<DecoherenceParams> dec, double dt,
                         int sample_stride) {
    require_method_inputs(method, dec);
    if (method == Method::Impulse)
        throw std::invalid_argument("time traces need a time-domain method");
    Schedule sched = build_glzi(gp.delta0, gp.omega, theta, gp.tau_p, gp.tau_c);

    TimeTrace out;
    out.trajectory =
        (method == Method::Schrodinger)
            ? evolve_schrodinger(sched, QubitState::ground(), dt, sample_stride)
            : evolve_master(sched, DensityMatrix::ground(), *dec, dt, sample_stride);

    double tau_1 = *sched.tau_1;
    double tau_s = *sched.tau_s;
    double inset = 0.2 * (tau_s - tau_1);
    // The plateau begins when the sweep leg ends and the drive gates off.
    out.window_lo = std::max(tau_1 + inset, gp.tau_p);
    out.window_hi = tau_s - inset;

    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
    for (std::size_t i = 0; i < out.trajectory.times.size(); ++i) {
        double t = out.trajectory.times[i];
        if (t < out.window_lo || t > out.window_hi) continue;
        double v = out.trajectory.p1[i];
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    if (count < 2)
        throw PlateauNotFlat("too few samples inside the plateau window");
    double mean = sum / count;
    double var = std::max(sum_sq / count - mean * mean, 0.0);
    out.plateau_std = std::sqrt(var);
    out.plz_prime = 1.0 - mean;  // diabatic survival through the first crossing
    if (out.plateau_std > kPlateauStdTol)
        throw PlateauNotFlat("plateau standard deviation exceeds 0.02");
    return out;
}

std::pair<SweepResult, DecayFit> run_t1(const std::vector<double>& delays,
                                        const DecoherenceParams& dec, double dt) {
    SweepResult res;
    res.axis_name = "delay_s";
    res.axis = delays;
    res.method = Method::Master;
    res.params = {{"t1_s", fmt(dec.T1)}, {"t2_s", fmt(dec.T2)}, {"dt_s", fmt(dt)},
                  {"protocol", "t1_pump_probe"}};
    res.p1.reserve(delays.size());
    for (double d : delays) {
        Schedule sched = build_t1(d);
        Trajectory t = evolve_master(sched, DensityMatrix::ground(), dec,
                                     clip_dt(sched, dt), 1 << 30);
        res.p1.push_back(t.p1.back());
    }
    DecayFit fit = fit_exponential(res.axis, res.p1);
    return {res, fit};
}

std::pair<SweepResult, DecayFit> run_t2_echo(const std::vector<double>& taus,
                                             const DecoherenceParams& dec,
                                             double dt) {
    SweepResult res;
    res.axis_name = "total_time_s";
    res.axis.reserve(taus.size());
    res.method = Method::Master;
    res.params = {{"t1_s", fmt(dec.T1)}, {"t2_s", fmt(dec.T2)}, {"dt_s", fmt(dt)},
                  {"protocol", "t2_spin_echo"}};
    res.p1.reserve(taus.size());
    for (double tau : taus) {
        Schedule sched = build_t2_echo(tau);
        Trajectory t = evolve_master(sched, DensityMatrix::ground(), dec,
                                     clip_dt(sched, dt), 1 << 30);
        res.axis.push_back(2.0 * tau);
        res.p1.push_back(t.p1.back());
    }
    DecayFit fit = fit_exponential(res.axis, res.p1);
    return {res, fit};
}

DecayFit fit_exponential(const std::vector<double>& times,
                         const std::vector<double>& values) {
    std::size_t n = times.size();
    if (n < 4 || values.size() != n)
        throw std::invalid_argument("need >= 4 (time, value) pairs");
    for (std::size_t i = 1; i < n; ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("times must be strictly increasing");

    auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
    if (*vmax - *vmin == 0.0)
        throw SingularFit("constant data cannot determine a decay time");

    double A = values.front() - values.back();
    double B = values.back();
    double T = 0.5 * (times.back() - times.front());
    if (A == 0.0) A = *vmax - *vmin;

    double lambda = 1e-3;
    auto residual_norm2 = [&](double a, double tc, double b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = values[i] - (a * std::exp(-times[i] / tc) + b);
            s += r * r;
        }
        return s;
    };
    double chi2 = residual_norm2(A, T, B);
    int iter = 0;
    bool converged = false;
    for (; iter < 200 && !converged; ++iter) {
        // J columns: dA = e, dT = A t e / T^2, dB = 1
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double jtr[3] = {0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
            double e = std::exp(-times[i] / T);
            double j0 = e;
            double j1 = A * times[i] * e / (T * T);
            double j2 = 1.0;
            double r = values[i] - (A * e + B);
            double J[3] = {j0, j1, j2};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += J[a] * r;
                for (int b = 0; b < 3; ++b) jtj[a][b] += J[a] * J[b];
            }
        }
        bool accepted = false;
        for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
            double m[3][4];
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) m[a][b] = jtj[a][b];
                m[a][a] *= (1.0 + lambda);
                m[a][3] = jtr[a];
            }
            // Gaussian elimination, partial pivoting
            bool singular = false;
            for (int col = 0; col < 3; ++col) {
                int piv = col;
                for (int r2 = col + 1; r2 < 3; ++r2)
                    if (std::abs(m[r2][col]) > std::abs(m[piv][col])) piv = r2;
                if (std::abs(m[piv][col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap(m[piv], m[col]);
                for (int r2 = 0; r2 < 3; ++r2) {
                    if (r2 == col) continue;
                    double fct = m[r2][col] / m[col][col];
                    for (int c2 = col; c2 < 4; ++c2) m[r2][c2] -= fct * m[col][c2];
                }
            }
            if (singular) throw SingularFit("normal equations are singular");
            double dA = m[0][3] / m[0][0];
            double dT = m[1][3] / m[1][1];
            double dB = m[2][3] / m[2][2];
            double Tn = T + dT;
            if (!(Tn > 0.0)) Tn = T * 0.5;
            double An = A + dA, Bn = B + dB;
            double chi2n = residual_norm2(An, Tn, Bn);
            if (chi2n <= chi2 || !std::isfinite(chi2)) {
                double step = std::max({std::abs(dA) / (std::abs(A) + 1e-300),
                                        std::abs(Tn - T) / (std::abs(T) + 1e-300),
                                        std::abs(dB) / (std::abs(B) + 1e-30)});
                A = An;
                T = Tn;
                B = Bn;
                chi2 = chi2n;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                if (step < 1e-10) converged = true;
            } else {
                lambda *= 10.0;
                if (lambda > 1e12) {
                    converged = true;  // stuck at a flat minimum
                    accepted = true;
                }
            }
        }
        if (!accepted) break;
    }
    if (!converged) throw NoConvergence("fit did not converge in 200 iterations");

    // standard error of T from the residual covariance
    double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
        double e = std::exp(-times[i] / T);
        double J[3] = {e, A * times[i] * e / (T * T), 1.0};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) jtj[a][b] += J[a] * J[b];
    }
    // invert 3x3 by adjugate
    double det = jtj[0][0] * (jtj[1][1] * jtj[2][2] - jtj[1][2] * jtj[2][1]) -
                 jtj[0][1] * (jtj[1][0] * jtj[2][2] - jtj[1][2] * jtj[2][0]) +
                 jtj[0][2] * (jtj[1][0] * jtj[2][1] - jtj[1][1] * jtj[2][0]);
    double stderr_t = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(det) > 1e-300 && n > 3) {
        double inv11 = (jtj[0][0] * jtj[2][2] - jtj[0][2] * jtj[2][0]) / det;
        double sigma2 = residual_norm2(A, T, B) / static_cast<double>(n - 3);
        if (inv11 > 0) stderr_t = std::sqrt(sigma2 * inv11);
    }
    DecayFit fit;
    fit.amplitude = A;
    fit.time_constant = T;
    fit.offset = B;
    fit.residual_norm = std::sqrt(residual_norm2(A, T, B));
    fit.stderr_time_constant = stderr_t;
    fit.iterations = iter;
    return fit;
}

std::vector<double> simulate_shots(const std::vector<double>& p1, int n_shots,
                                   std::uint64_t seed) {
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
    for (double p : p1)
        if (!(p >= -1e-9 && p <= 1.0 + 1e-9))
            throw std::invalid_argument("P1 values must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(p1.size());
    for (double p : p1) {
        double pc = std::min(std::max(p, 0.0), 1.0);
        long hits = 0;
        for (int i = 0; i < n_shots; ++i) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < pc) ++hits;
        }
        out.push_back(static_cast<double>(hits) / n_shots);
    }
    return out;
}

}  // namespace lzsim
