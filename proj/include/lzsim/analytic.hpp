#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace lzsim {

struct EmptySeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One avoided crossing: gap (rad/s) and angular sweep rate (rad/s^2).
struct LzCrossingParams {
    double gap;   // Delta >= 0
    double rate;  // alpha > 0

    LzCrossingParams(double gap_, double rate_);
    static LzCrossingParams from_sweep(double gap, double omega_hi,
                                       double omega_lo, double tau_p);

    double adiabaticity() const { return gap * gap / (4.0 * rate); }
};

// P = exp(-pi Delta^2 / (2 alpha))
double lz_probability(const LzCrossingParams& params);

// P1 = 1 - 4 p (1-p) sin^2(theta)
double glzi_population(double p, double theta);

// phi_S = pi/4 + d (ln d - 1) + arg Gamma(1 - i d); the d -> 0 limit is pi/4.
double stokes_phase(double delta_s);

// Principal-branch complex log-gamma (Lanczos, g = 7).
std::complex<double> log_gamma(std::complex<double> z);

struct ImpulseModelInputs {
    double p;       // crossing probability in [0, 1]
    double theta;   // geometric phase
    double zeta1;   // adiabatic dynamical phase before the echo
    double zeta2;   // after the echo
    double stokes;  // phi_S
    bool echo;
};

// Transfer-matrix composition in the adiabatic basis, from the ground state:
// crossing N(p, phi_S), inter-crossing propagation, optional sigma_x echo,
// propagation, crossing N(p, phi_S).  The geometric phase enters with
// opposite signs on the two sides of the flip so the halves add through the
// echo while the dynamical phases (applied as the mean of zeta1, zeta2, the
// refocusing condition the echo placement enforces) cancel identically.
// With echo this equals glzi_population(p, theta) for all zeta1, zeta2,
// phi_S; without it, 4 p (1-p) cos^2((zeta1+zeta2)/2 - phi_S).
double adiabatic_impulse_p1(const ImpulseModelInputs& inputs);

// max - min of a fringe series.
double contrast(const std::vector<double>& series);

}  // namespace lzsim
