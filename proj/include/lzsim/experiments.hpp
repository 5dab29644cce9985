#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lzsim/analytic.hpp"
#include "lzsim/dynamics.hpp"

namespace lzsim {

enum class Method { Schrodinger, Master, Impulse };

std::string method_name(Method m);

struct SweepResult {
    std::string axis_name;
    std::vector<double> axis;
    std::string axis2_name;       // empty unless a 2-D map
    std::vector<double> axis2;    // slow axis; values are row-major in axis2
    std::vector<double> p1;
    Method method = Method::Schrodinger;
    std::vector<std::pair<std::string, std::string>> params;  // reproducibility record
};

struct DecayFit {
    double amplitude;      // A in A exp(-t/T) + B
    double time_constant;  // T, seconds
    double offset;         // B
    double residual_norm;
    double stderr_time_constant;
    int iterations;
};

struct PlateauNotFlat : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlziParams {
    double delta0;
    double omega;
    double tau_p;
    double tau_c;

    static GlziParams reference_defaults();
};

SweepResult run_glzi_theta_sweep(const std::vector<double>& thetas,
                                 const GlziParams& gp, Method method,
                                 std::optional<DecoherenceParams> dec = {},
                                 double dt = kDefaultDt,
                                 std::optional<double> p_override = {});

SweepResult run_glzi_map(const std::vector<double>& thetas,
                         const std::vector<double>& tau_ps, double delta0,
                         double omega, double tau_c, Method method,
                         std::optional<DecoherenceParams> dec = {},
                         double dt = kDefaultDt);

SweepResult run_dlzi_sweep(const std::vector<double>& tau_cs, double theta_const,
                           double delta0, double omega, double tau_p,
                           Method method,
                           std::optional<DecoherenceParams> dec = {},
                           double dt = kDefaultDt,
                           std::optional<double> p_override = {});

struct TimeTrace {
    Trajectory trajectory;
    double plz_prime;     // mean diabatic survival (1 - P1) over the plateau window
    double plateau_std;   // flatness of P1 over the window
    double window_lo;     // seconds
    double window_hi;
};

// Runs the GLZI schedule and extracts the post-sweep plateau.  The window is
// [tau_1 + 0.2 (tau_s - tau_1), tau_s - 0.2 (tau_s - tau_1)] clipped to start
// no earlier than the end of the sweep leg (the plateau begins there).
// Throws PlateauNotFlat if the P1 standard deviation over the window
// exceeds 0.02.
TimeTrace run_time_trace(double theta, const GlziParams& gp, Method method,
                         std::optional<DecoherenceParams> dec = {},
                         double dt = kDefaultDt,
                         int sample_stride = kDefaultSampleStride);

std::pair<SweepResult, DecayFit> run_t1(const std::vector<double>& delays,
                                        const DecoherenceParams& dec,
                                        double dt = kDefaultDt);

// Records final P1 against the total time 2*tau.  Under constant rates the
// exact envelope is P1(2 tau) = (1 - exp(-2 tau / T2)) / 2.
std::pair<SweepResult, DecayFit> run_t2_echo(const std::vector<double>& taus,
                                             const DecoherenceParams& dec,
                                             double dt = kDefaultDt);

// Nonlinear least squares for A exp(-t/T) + B.  Converged when the largest
// relative parameter step drops below 1e-10; at most 200 iterations.
DecayFit fit_exponential(const std::vector<double>& times,
                         const std::vector<double>& values);

// Per point, n_shots Bernoulli draws from a seeded generator; returns the
// success frequencies.  Identical seed, identical output.
std::vector<double> simulate_shots(const std::vector<double>& p1, int n_shots,
                                   std::uint64_t seed);

}  // namespace lzsim
