#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "lzsim/dynamics.hpp"
#include "lzsim/schedule.hpp"
#include "oracles.hpp"

using namespace lzsim;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = kTwoPi / 2.0;

Schedule single_segment(double dur, double delta, double omega, double phase) {
    Schedule s;
    s.segments = {{dur, delta, delta, omega, phase, phase}};
    return s;
}
}  // namespace

TEST_CASE("hamiltonian_of matrix elements and eigenstructure") {
    double d = kTwoPi * 5e7;
    Mat2c h = hamiltonian_of({0.0, 0.0, d});
    CHECK(h(0, 0).real() == -d / 2);
    CHECK(h(1, 1).real() == d / 2);
    CHECK(std::abs(h(0, 1)) == 0.0);

    double om = kTwoPi * 2e7;
    InstantaneousLevels lv = instantaneous_levels({om, 0.0, 0.0});
    CHECK(lv.e_excited == doctest::Approx(om / 2).epsilon(1e-15));
    CHECK(lv.e_ground == doctest::Approx(-om / 2).epsilon(1e-15));
    // eigenvectors (|0> +- |1>)/sqrt(2)
    double overlap =
        std::abs(lv.vec_excited.amplitude_g + lv.vec_excited.amplitude_e) /
        std::sqrt(2.0);
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));

    double ox = kTwoPi * 1e7, oy = kTwoPi * 2e7, dd = kTwoPi * 3e7;
    double b = std::sqrt(ox * ox + oy * oy + dd * dd);
    InstantaneousLevels lv2 = instantaneous_levels({ox, oy, dd});
    CHECK(lv2.e_excited - lv2.e_ground == doctest::Approx(b).epsilon(1e-14));
    // orthonormality
    complexd ip = std::conj(lv2.vec_ground.amplitude_g) * lv2.vec_excited.amplitude_g +
                  std::conj(lv2.vec_ground.amplitude_e) * lv2.vec_excited.amplitude_e;
    CHECK(std::abs(ip) < 1e-14);
    CHECK(lv2.vec_ground.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("instantaneous_levels asymptotics and degeneracy") {
    double om = kTwoPi * 1e6, d = kTwoPi * 1e8;  // |delta| >> Omega
    InstantaneousLevels lv = instantaneous_levels({om, 0.0, d});
    double gap = lv.e_excited - lv.e_ground;
    double approx = std::abs(d) * (1.0 + om * om / (2.0 * d * d));
    CHECK(gap == doctest::Approx(approx).epsilon(1e-8));

    InstantaneousLevels z = instantaneous_levels({0.0, 0.0, 0.0});
    CHECK(z.degenerate);
}

TEST_CASE("resonant drive gives a full Rabi flop") {
    // half Rabi period at Omega = 2*pi*20 MHz is 25 ns
    Schedule s = single_segment(25e-9, 0.0, kTwoPi * 2e7, 0.0);
    Trajectory t = evolve_schrodinger(s, QubitState::ground(), 1e-12, 1000);
    CHECK(t.p1.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero field leaves the state unchanged") {
    Schedule s = single_segment(40e-9, 0.0, 0.0, 0.0);
    QubitState init{complexd(0.6, 0.0), complexd(0.0, 0.8)};
    Trajectory t = evolve_schrodinger(s, init, 1e-12, 10000);
    CHECK(std::abs(t.states.back().amplitude_g - init.amplitude_g) < 1e-9);
    CHECK(std::abs(t.states.back().amplitude_e - init.amplitude_e) < 1e-9);
}

TEST_CASE("glzi plateau saturates flat after the first crossing") {
    Schedule s = build_glzi(kTwoPi * 1e8, kTwoPi * 2e7, kPi / 2, 25e-9, 100e-9);
    Trajectory t = evolve_schrodinger(s, QubitState::ground(), 1e-12, 100);
    double sum = 0, sum2 = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        if (t.times[i] < 25.5e-9 || t.times[i] > 37e-9) continue;
        sum += t.p1[i];
        sum2 += t.p1[i] * t.p1[i];
        ++n;
    }
    double mean = sum / n;
    double stddev = std::sqrt(std::max(sum2 / n - mean * mean, 0.0));
    CHECK(stddev < 1e-6);  // free plateau, population frozen
    CHECK(1.0 - mean == doctest::Approx(0.60668).epsilon(0.005));
}

TEST_CASE("norm is conserved along the trajectory") {
    Schedule s = build_glzi(kTwoPi * 1e8, kTwoPi * 2e7, 1.0, 25e-9, 100e-9);
    Trajectory t = evolve_schrodinger(s, QubitState::ground(), 1e-12, 100);
    for (const QubitState& psi : t.states)
        CHECK(std::abs(psi.norm() - 1.0) <= 1e-8);
}

TEST_CASE("master equation reproduces pure T1 decay") {
    Schedule s = single_segment(118e-9, 0.0, 0.0, 0.0);
    DensityMatrix init;
    init.rho00 = 0.0;
    init.rho11 = 1.0;
    DecoherenceParams dec(118e-9, 157e-9);
    Trajectory t = evolve_master(s, init, dec, 1e-11, 1000);
    CHECK(t.p1.back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("master equation reproduces pure dephasing of a superposition") {
    Schedule s = single_segment(100e-9, 0.0, 0.0, 0.0);
    QubitState plus{complexd(1 / std::sqrt(2.0), 0), complexd(1 / std::sqrt(2.0), 0)};
    DecoherenceParams dec(1e-3, 157e-9);  // relaxation negligible
    Trajectory t = evolve_master(s, DensityMatrix::from_pure(plus), dec, 1e-11, 100);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        double expect = 0.5 * std::exp(-t.times[i] / 157e-9);
        CHECK(std::abs(t.matrices[i].rho10) ==
              doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("zero-decoherence master equals the Schrodinger solver") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 20; ++k) {
        Schedule s = oracles::random_schedule(rng);
        Trajectory a = evolve_schrodinger(s, QubitState::ground(), 1e-12, 1 << 30);
        Trajectory b = evolve_master(s, DensityMatrix::ground(),
                                     DecoherenceParams::none(), 1e-12, 1 << 30);
        CHECK(std::abs(a.p1.back() - b.p1.back()) <= 1e-6);
    }
}

TEST_CASE("master samples keep trace, hermiticity and positivity") {
    std::mt19937_64 rng(99);
    DecoherenceParams dec(50e-9, 70e-9);
    for (int k = 0; k < 10; ++k) {
        Schedule s = oracles::random_schedule(rng);
        Trajectory t = evolve_master(s, DensityMatrix::ground(), dec, 1e-12, 200);
        for (const DensityMatrix& r : t.matrices) {
            CHECK(std::abs(r.rho00 + r.rho11 - 1.0) <= 1e-8);
            CHECK(std::abs(r.rho01() - std::conj(r.rho10)) <= 1e-10);
            CHECK(r.min_eigenvalue() >= -1e-8);
        }
    }
}

TEST_CASE("instant rotations") {
    QubitState flipped = apply_instant_rotation(QubitState::ground(), Axis::X, kPi);
    CHECK(std::abs(flipped.amplitude_e - complexd(0, -1)) < 1e-15);
    CHECK(excited_population(flipped) == doctest::Approx(1.0).epsilon(1e-15));

    QubitState same = apply_instant_rotation(QubitState::ground(), Axis::Y, 0.0);
    CHECK(std::abs(same.amplitude_g - 1.0) < 1e-15);

    DensityMatrix rho;
    rho.rho00 = 0.3;
    rho.rho11 = 0.7;
    DensityMatrix swapped = apply_instant_rotation(rho, Axis::X, kPi);
    CHECK(swapped.rho00 == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(swapped.rho11 == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("a pi rotation applied twice is the identity up to phase") {
    QubitState psi{complexd(0.28, 0.45), complexd(-0.5, 0.69)};
    double n = psi.norm();
    psi.amplitude_g /= n;
    psi.amplitude_e /= n;
    QubitState twice = apply_instant_rotation(
        apply_instant_rotation(psi, Axis::X, kPi), Axis::X, kPi);
    complexd ip = std::conj(twice.amplitude_g) * psi.amplitude_g +
                  std::conj(twice.amplitude_e) * psi.amplitude_e;
    CHECK(std::abs(std::abs(ip) - 1.0) < 1e-12);

    DensityMatrix rho = DensityMatrix::from_pure(psi);
    DensityMatrix back = apply_instant_rotation(
        apply_instant_rotation(rho, Axis::X, kPi), Axis::X, kPi);
    CHECK(std::abs(back.rho00 - rho.rho00) < 1e-12);
    CHECK(std::abs(back.rho10 - rho.rho10) < 1e-12);
}

TEST_CASE("excited_population basics") {
    CHECK(excited_population(QubitState{0.0, 1.0}) == 1.0);
    QubitState plus{complexd(1 / std::sqrt(2.0), 0), complexd(1 / std::sqrt(2.0), 0)};
    CHECK(excited_population(plus) == doctest::Approx(0.5).epsilon(1e-15));
    DensityMatrix rho;
    rho.rho00 = 0.3;
    rho.rho11 = 0.7;
    CHECK(excited_population(rho) == 0.7);
}

TEST_CASE("halving the step changes the final population below 1e-6") {
    Schedule s = build_glzi(kTwoPi * 1e8, kTwoPi * 2e7, kPi / 2, 25e-9, 100e-9);
    Trajectory a = evolve_schrodinger(s, QubitState::ground(), 1e-12, 1 << 30);
    Trajectory b = evolve_schrodinger(s, QubitState::ground(), 0.5e-12, 1 << 30);
    CHECK(std::abs(a.p1.back() - b.p1.back()) <= 1e-6);
}

TEST_CASE("dt larger than the shortest segment is rejected") {
    Schedule s = build_t1(0.0);  // 1 ps minimal segment
    CHECK_THROWS_AS(evolve_schrodinger(s, QubitState::ground(), 2e-12, 100),
                    StepTooLarge);
}

TEST_CASE("decoherence parameter validation and sentinel") {
    CHECK_THROWS_AS(DecoherenceParams(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DecoherenceParams(100e-9, 300e-9), std::invalid_argument);
    DecoherenceParams none = DecoherenceParams::none();
    CHECK(none.gamma1() == 0.0);
    CHECK(none.gamma2() == 0.0);
}
