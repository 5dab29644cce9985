#include "lzsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lzsim {

namespace {

constexpr double kNormTol = 1e-6;
constexpr double kPositivityTol = 1e-6;

struct SegmentView {
    const Segment* seg;
    double start;

    EffectiveField at(double t) const {
        double u = (t - start) / seg->duration;
        u = std::min(std::max(u, 0.0), 1.0);
        double delta = seg->delta_start + (seg->delta_end - seg->delta_start) * u;
        double phase = seg->phase_start + (seg->phase_end - seg->phase_start) * u;
        return {seg->omega * std::cos(phase), seg->omega * std::sin(phase), delta};
    }
};

SegmentView locate(const Schedule& s, double t) {
    double start = 0.0;
    for (std::size_t i = 0; i < s.segments.size(); ++i) {
        double end = start + s.segments[i].duration;
        if (t < end || i + 1 == s.segments.size())
            return {&s.segments[i], start};
        start = end;
    }
    throw OutOfRange("empty schedule");
}

std::vector<double> event_times(const Schedule& s) {
    std::vector<double> ev;
    ev.push_back(0.0);
    double acc = 0.0;
    for (const Segment& seg : s.segments) {
        acc += seg.duration;
        ev.push_back(acc);
    }
    for (const InstantGate& g : s.gates) ev.push_back(g.time);
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
    return ev;
}

void check_step(const Schedule& s, double dt) {
    if (!(dt > 0.0)) throw StepTooLarge("dt must be > 0");
    for (const Segment& seg : s.segments)
        if (dt > seg.duration)
            throw StepTooLarge("dt exceeds the shortest segment duration");
}

Mat2c rotation_unitary(Axis axis, double angle) {
    double c = std::cos(angle / 2.0);
    double sn = std::sin(angle / 2.0);
    if (axis == Axis::X) {
        // cos I - i sin sigma_x
        return {{complexd{c, 0}, complexd{0, -sn}, complexd{0, -sn},
                 complexd{c, 0}}};
    }
    // sigma_y = [[0, i], [-i, 0]] in the (|0>, |1>) ordering used here.
    return {{complexd{c, 0}, complexd{sn, 0}, complexd{-sn, 0}, complexd{c, 0}}};
}

}  // namespace

double QubitState::norm() const {
    return std::sqrt(std::norm(amplitude_g) + std::norm(amplitude_e));
}

double DensityMatrix::min_eigenvalue() const {
    double half_tr = 0.5 * (rho00 + rho11);
    double d = 0.5 * (rho00 - rho11);
    return half_tr - std::sqrt(d * d + std::norm(rho10));
}

DensityMatrix DensityMatrix::from_pure(const QubitState& psi) {
    DensityMatrix rho;
    rho.rho00 = std::norm(psi.amplitude_g);
    rho.rho11 = std::norm(psi.amplitude_e);
    rho.rho10 = psi.amplitude_e * std::conj(psi.amplitude_g);
    return rho;
}

DecoherenceParams::DecoherenceParams(double t1, double t2) : T1(t1), T2(t2) {
    if (!(T1 > 0.0) || !(T2 > 0.0))
        throw std::invalid_argument("T1 and T2 must be positive");
    if (T2 > 2.0 * T1)
        throw std::invalid_argument("T2 must not exceed 2*T1");
}

DecoherenceParams DecoherenceParams::none() {
    return DecoherenceParams(std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity());
}

Mat2c hamiltonian_of(const EffectiveField& f) {
    complexd h01{0.5 * f.omega_x, 0.5 * f.omega_y};
    return {{complexd{-0.5 * f.delta, 0.0}, h01, std::conj(h01),
             complexd{0.5 * f.delta, 0.0}}};
}

InstantaneousLevels instantaneous_levels(const EffectiveField& f) {
    double b = std::sqrt(f.delta * f.delta + f.omega_x * f.omega_x +
                         f.omega_y * f.omega_y);
    InstantaneousLevels lv;
    lv.e_ground = -0.5 * b;
    lv.e_excited = 0.5 * b;
    lv.degenerate = (b == 0.0);
    if (lv.degenerate) {
        lv.vec_ground = QubitState{1.0, 0.0};
        lv.vec_excited = QubitState{0.0, 1.0};
        return lv;
    }
    complexd h01{0.5 * f.omega_x, 0.5 * f.omega_y};
    complexd v0, v1;
    if (f.delta >= 0.0) {
        v0 = h01;
        v1 = complexd{0.5 * (b + f.delta), 0.0};
    } else {
        v0 = complexd{0.5 * (b - f.delta), 0.0};
        v1 = std::conj(h01);
    }
    double n = std::sqrt(std::norm(v0) + std::norm(v1));
    lv.vec_excited = QubitState{v0 / n, v1 / n};
    lv.vec_ground =
        QubitState{-std::conj(lv.vec_excited.amplitude_e),
                   std::conj(lv.vec_excited.amplitude_g)};
    return lv;
}

QubitState apply_instant_rotation(const QubitState& psi, Axis axis, double angle) {
    Mat2c u = rotation_unitary(axis, angle);
    return {u(0, 0) * psi.amplitude_g + u(0, 1) * psi.amplitude_e,
            u(1, 0) * psi.amplitude_g + u(1, 1) * psi.amplitude_e};
}

DensityMatrix apply_instant_rotation(const DensityMatrix& rho, Axis axis,
                                     double angle) {
    Mat2c u = rotation_unitary(axis, angle);
    complexd r00{rho.rho00, 0.0};
    complexd r11{rho.rho11, 0.0};
    complexd r01 = rho.rho01();
    complexd r10 = rho.rho10;
    // rho' = U rho U^dagger
    complexd a0 = u(0, 0) * r00 + u(0, 1) * r10;  // (U rho) row 0
    complexd a1 = u(0, 0) * r01 + u(0, 1) * r11;
    complexd b0 = u(1, 0) * r00 + u(1, 1) * r10;  // row 1
    complexd b1 = u(1, 0) * r01 + u(1, 1) * r11;
    DensityMatrix out;
    out.rho00 = std::real(a0 * std::conj(u(0, 0)) + a1 * std::conj(u(0, 1)));
    out.rho11 = std::real(b0 * std::conj(u(1, 0)) + b1 * std::conj(u(1, 1)));
    out.rho10 = b0 * std::conj(u(0, 0)) + b1 * std::conj(u(0, 1));
    return out;
}

double excited_population(const QubitState& psi) {
    return std::norm(psi.amplitude_e);
}

double excited_population(const DensityMatrix& rho) { return rho.rho11; }

Trajectory evolve_schrodinger(const Schedule& schedule, const QubitState& initial,
                              double dt, int sample_stride) {
    schedule.validate();
    check_step(schedule, dt);
    if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");

    Trajectory traj;
    QubitState psi = initial;
    auto record = [&](double t) {
        double nrm = psi.norm();
        if (std::abs(nrm - 1.0) > kNormTol)
            throw NormDrift("state norm drifted beyond 1e-6");
        traj.times.push_back(t);
        traj.p1.push_back(excited_population(psi));
        traj.states.push_back(psi);
    };
    record(0.0);

    std::vector<double> events = event_times(schedule);
    std::size_t gi = 0;
    long steps = 0;
    auto fire_gates_at = [&](double t) {
        while (gi < schedule.gates.size() && schedule.gates[gi].time == t) {
            psi = apply_instant_rotation(psi, schedule.gates[gi].axis,
                                         schedule.gates[gi].angle);
            ++gi;
        }
    };

    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
        double a = events[e];
        double b = events[e + 1];
        fire_gates_at(a);
        SegmentView view = locate(schedule, 0.5 * (a + b));
        long n = std::lround(std::ceil((b - a) / dt - 1e-9));
        if (n < 1) n = 1;
        double h = (b - a) / static_cast<double>(n);
        for (long i = 0; i < n; ++i) {
            double t = a + static_cast<double>(i) * h;
            EffectiveField f0 = view.at(t);
            EffectiveField fm = view.at(t + 0.5 * h);
            EffectiveField f1 = view.at(t + h);
            auto deriv = [](const EffectiveField& f, const complexd& g,
                            const complexd& ex, complexd& dg, complexd& de) {
                complexd h01{0.5 * f.omega_x, 0.5 * f.omega_y};
                complexd i_unit{0.0, 1.0};
                dg = -i_unit * (complexd{-0.5 * f.delta, 0.0} * g + h01 * ex);
                de = -i_unit * (std::conj(h01) * g + complexd{0.5 * f.delta, 0.0} * ex);
            };
            complexd g = psi.amplitude_g, ex = psi.amplitude_e;
            complexd k1g, k1e, k2g, k2e, k3g, k3e, k4g, k4e;
            deriv(f0, g, ex, k1g, k1e);
            deriv(fm, g + 0.5 * h * k1g, ex + 0.5 * h * k1e, k2g, k2e);
            deriv(fm, g + 0.5 * h * k2g, ex + 0.5 * h * k2e, k3g, k3e);
            deriv(f1, g + h * k3g, ex + h * k3e, k4g, k4e);
            psi.amplitude_g = g + (h / 6.0) * (k1g + 2.0 * (k2g + k3g) + k4g);
            psi.amplitude_e = ex + (h / 6.0) * (k1e + 2.0 * (k2e + k3e) + k4e);
            ++steps;
            if (steps % sample_stride == 0) record(a + (i + 1) * h);
        }
    }
    fire_gates_at(events.back());
    if (traj.times.back() != events.back()) record(events.back());
    else {
        // gates at the final instant change the state after the last record
        traj.p1.back() = excited_population(psi);
        traj.states.back() = psi;
    }
    return traj;
}

Trajectory evolve_master(const Schedule& schedule, const DensityMatrix& initial,
                         const DecoherenceParams& dec, double dt,
                         int sample_stride) {
    schedule.validate();
    check_step(schedule, dt);
    if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
    double g1 = dec.gamma1();
    double g2 = dec.gamma2();

    Trajectory traj;
    double r00 = initial.rho00, r11 = initial.rho11;
    double re = initial.rho10.real(), im = initial.rho10.imag();
    auto current = [&]() {
        DensityMatrix rho;
        rho.rho00 = r00;
        rho.rho11 = r11;
        rho.rho10 = complexd{re, im};
        return rho;
    };
    auto record = [&](double t) {
        DensityMatrix rho = current();
        if (rho.min_eigenvalue() < -kPositivityTol)
            throw PositivityLoss("density matrix lost positivity");
        traj.times.push_back(t);
        traj.p1.push_back(rho.rho11);
        traj.matrices.push_back(rho);
    };
    record(0.0);

    std::vector<double> events = event_times(schedule);
    std::size_t gi = 0;
    long steps = 0;
    auto fire_gates_at = [&](double t) {
        while (gi < schedule.gates.size() && schedule.gates[gi].time == t) {
            DensityMatrix rho = apply_instant_rotation(
                current(), schedule.gates[gi].axis, schedule.gates[gi].angle);
            r00 = rho.rho00;
            r11 = rho.rho11;
            re = rho.rho10.real();
            im = rho.rho10.imag();
            ++gi;
        }
    };

    struct D4 {
        double d00, d11, dre, dim;
    };
    auto deriv = [&](const EffectiveField& f, double y00, double y11, double yre,
                     double yim) -> D4 {
        double drive = f.omega_x * yim + f.omega_y * yre;
        double pop = y00 - y11;
        return {drive + g1 * y11, -drive - g1 * y11,
                f.delta * yim - 0.5 * f.omega_y * pop - g2 * yre,
                -f.delta * yre - 0.5 * f.omega_x * pop - g2 * yim};
    };

    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
        double a = events[e];
        double b = events[e + 1];
        fire_gates_at(a);
        SegmentView view = locate(schedule, 0.5 * (a + b));
        long n = std::lround(std::ceil((b - a) / dt - 1e-9));
        if (n < 1) n = 1;
        double h = (b - a) / static_cast<double>(n);
        for (long i = 0; i < n; ++i) {
            double t = a + static_cast<double>(i) * h;
            EffectiveField f0 = view.at(t);
            EffectiveField fm = view.at(t + 0.5 * h);
            EffectiveField f1 = view.at(t + h);
            D4 k1 = deriv(f0, r00, r11, re, im);
            D4 k2 = deriv(fm, r00 + 0.5 * h * k1.d00, r11 + 0.5 * h * k1.d11,
                          re + 0.5 * h * k1.dre, im + 0.5 * h * k1.dim);
            D4 k3 = deriv(fm, r00 + 0.5 * h * k2.d00, r11 + 0.5 * h * k2.d11,
                          re + 0.5 * h * k2.dre, im + 0.5 * h * k2.dim);
            D4 k4 = deriv(f1, r00 + h * k3.d00, r11 + h * k3.d11,
                          re + h * k3.dre, im + h * k3.dim);
            r00 += (h / 6.0) * (k1.d00 + 2.0 * (k2.d00 + k3.d00) + k4.d00);
            r11 += (h / 6.0) * (k1.d11 + 2.0 * (k2.d11 + k3.d11) + k4.d11);
            re += (h / 6.0) * (k1.dre + 2.0 * (k2.dre + k3.dre) + k4.dre);
            im += (h / 6.0) * (k1.dim + 2.0 * (k2.dim + k3.dim) + k4.dim);
            ++steps;
            if (steps % sample_stride == 0) record(a + (i + 1) * h);
        }
    }
    fire_gates_at(events.back());
    if (traj.times.back() != events.back()) record(events.back());
    else {
        DensityMatrix rho = current();
        traj.p1.back() = rho.rho11;
        traj.matrices.back() = rho;
    }
    return traj;
}

}  // namespace lzsim
