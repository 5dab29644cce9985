#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lzsim/schedule.hpp"

namespace lzsim {

using complexd = std::complex<double>;

// Basis ordering is (|0>, |1>) with sigma_z assigning +1 to |1>, so the
// excited state carries +delta/2.  In this ordering
//   sigma_x = [[0,1],[1,0]],  sigma_y = [[0,i],[-i,0]],  sigma_z = [[-1,0],[0,1]].
struct QubitState {
    complexd amplitude_g{1.0, 0.0};
    complexd amplitude_e{0.0, 0.0};

    double norm() const;
    static QubitState ground() { return {}; }
};

struct DensityMatrix {
    double rho00 = 1.0;
    double rho11 = 0.0;
    complexd rho10{0.0, 0.0};

    complexd rho01() const { return std::conj(rho10); }
    double min_eigenvalue() const;
    static DensityMatrix ground() { return {}; }
    static DensityMatrix from_pure(const QubitState& psi);
};

// T1/T2 in seconds; rates Gamma1 = 1/T1 and gamma = 1/T2 enter the master
// equation.  Infinity is accepted as "no decoherence".
struct DecoherenceParams {
    double T1;
    double T2;

    DecoherenceParams(double t1, double t2);
    static DecoherenceParams none();

    double gamma1() const { return 1.0 / T1; }
    double gamma2() const { return 1.0 / T2; }
};

struct Mat2c {
    // row-major 2x2 complex
    std::array<complexd, 4> m;
    complexd operator()(int r, int c) const { return m[2 * r + c]; }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> p1;
    std::vector<QubitState> states;       // filled by the Schrodinger solver
    std::vector<DensityMatrix> matrices;  // filled by the master solver
};

struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NormDrift : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PositivityLoss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// H = (delta sigma_z + Omega_x sigma_x + Omega_y sigma_y)/2 in the basis
// convention above; eigenvalues are +-|B|/2.
Mat2c hamiltonian_of(const EffectiveField& field);

struct InstantaneousLevels {
    double e_ground;  // -|B|/2
    double e_excited;
    QubitState vec_ground;
    QubitState vec_excited;
    bool degenerate;  // |B| == 0, eigenvector choice arbitrary
};

InstantaneousLevels instantaneous_levels(const EffectiveField& field);

QubitState apply_instant_rotation(const QubitState& psi, Axis axis, double angle);
DensityMatrix apply_instant_rotation(const DensityMatrix& rho, Axis axis, double angle);

double excited_population(const QubitState& psi);
double excited_population(const DensityMatrix& rho);

constexpr double kDefaultDt = 1e-12;
constexpr int kDefaultSampleStride = 100;

// Fixed-step RK4 on i dpsi/dt = H(t) psi.  Steps never straddle a segment
// boundary or a gate; gates are applied exactly at their times.
Trajectory evolve_schrodinger(const Schedule& schedule, const QubitState& initial,
                              double dt = kDefaultDt,
                              int sample_stride = kDefaultSampleStride);

// Master equation with relaxation Gamma1 and dephasing gamma:
//   drho11/dt = -(Omega_x Im rho10 + Omega_y Re rho10) - Gamma1 rho11
//   drho10/dt = -i[delta rho10 + (Omega_x - i Omega_y)(rho00 - rho11)/2] - gamma rho10
//   drho00/dt = -drho11/dt,  rho01 = conj(rho10)
Trajectory evolve_master(const Schedule& schedule, const DensityMatrix& initial,
                         const DecoherenceParams& dec, double dt = kDefaultDt,
                         int sample_stride = kDefaultSampleStride);

}  // namespace lzsim
