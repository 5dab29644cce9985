#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace lzsim {

// All energies are divided by hbar and carried as angular frequencies (rad/s).
struct PhaseQubitParams {
    double e_c;     // charging energy (2e)^2/(2C) / hbar
    double e_j;     // Josephson energy I_c Phi0 / (2 pi hbar)
    double e_l;     // inductance energy (Phi0/2pi)^2 / (2 L hbar)
    double phi_ex;  // external flux bias, radians

    PhaseQubitParams(double ec, double ej, double el, double pex);

    // Derives the energies from junction capacitance C (F), loop
    // inductance L (H) and critical current I_c (A).
    static PhaseQubitParams from_raw(double capacitance, double inductance,
                                     double critical_current, double phi_ex);

    // Documented default set used by the CLI; spans ~14.57 GHz down to
    // ~12.8 GHz over phi_ex in [0, 3.5] with the 14.2-14.4 GHz operating
    // window inside the monotone interval below.
    static PhaseQubitParams default_params(double phi_ex = 0.0);
    static constexpr double kDefaultBiasLo = 0.5;  // operating interval, rad
    static constexpr double kDefaultBiasHi = 2.5;
};

struct WellGeometry {
    double phi_min;           // radians
    double phi_max;           // radians
    double curvature_at_min;  // 2 E_C d2U/dphi2 at phi_min, rad^2/s^2
};

struct NoRootInBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateWell : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ImaginaryFrequency : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TargetOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMonotonic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// U(phi) = -E_J cos(phi) + E_L (phi - phi_ex)^2
double potential_energy(double phi, const PhaseQubitParams& params);
double potential_gradient(double phi, const PhaseQubitParams& params);
double potential_curvature(double phi, const PhaseQubitParams& params);

// Roots of E_J sin(phi) + 2 E_L (phi - phi_ex) = 0 inside [lo, hi],
// classified by the curvature sign.  Throws NoRootInBracket when either a
// minimum or a maximum is missing, DegenerateWell near an inflection.
WellGeometry stationary_phase_points(const PhaseQubitParams& params, double lo,
                                     double hi);

// Minimum only (the qubit well), searched in [phi_ex - pi, phi_ex + pi/2].
double well_minimum(const PhaseQubitParams& params);

// omega = sqrt(2 E_C (E_J cos(phi_min) + 2 E_L)) at the computed minimum.
double level_spacing(const PhaseQubitParams& params);

// Finds phi_ex in [lo, hi] with |level_spacing - target| <= 2*pi*1e3 rad/s.
// The spacing must be monotone over the interval.
double calibrate_bias(const PhaseQubitParams& params_without_flux,
                      double target_omega, double lo, double hi);

// (phi_ex, omega) for every grid point; per-point failures are rethrown
// with the offending bias value in the message.
std::vector<std::pair<double, double>> spectroscopy_curve(
    const PhaseQubitParams& params_without_flux, const std::vector<double>& biases);

}  // namespace lzsim
