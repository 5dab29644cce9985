#include "doctest.h"

#include <cmath>

#include "lzsim/experiments.hpp"
#include "lzsim/schedule.hpp"

using namespace lzsim;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = kTwoPi / 2.0;

std::vector<double> theta_grid(int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(kTwoPi * i / n);
    return v;
}
}  // namespace

TEST_CASE("impulse sweep reproduces the closed form exactly") {
    GlziParams gp = GlziParams::reference_defaults();
    SweepResult res = run_glzi_theta_sweep(theta_grid(16), gp, Method::Impulse,
                                           {}, kDefaultDt, 0.71);
    for (std::size_t i = 0; i < res.axis.size(); ++i)
        CHECK(res.p1[i] ==
              doctest::Approx(glzi_population(0.71, res.axis[i])).epsilon(1e-12));
}

TEST_CASE("schrodinger sweep at theta = 0 returns the ground cycle to excited") {
    GlziParams gp = GlziParams::reference_defaults();
    SweepResult res =
        run_glzi_theta_sweep({0.0}, gp, Method::Schrodinger, {}, 1e-12);
    CHECK(res.p1[0] >= 0.98);
}

TEST_CASE("map rows equal independent sweeps and the shape is rectangular") {
    std::vector<double> thetas = theta_grid(5);
    std::vector<double> taups = {15e-9, 20e-9, 25e-9, 30e-9};
    SweepResult map =
        run_glzi_map(thetas, taups, kTwoPi * 1e8, kTwoPi * 2e7, 100e-9,
                     Method::Impulse);
    CHECK(map.p1.size() == 20);
    GlziParams gp{kTwoPi * 1e8, kTwoPi * 2e7, 25e-9, 100e-9};
    SweepResult row = run_glzi_theta_sweep(thetas, gp, Method::Impulse);
    for (std::size_t i = 0; i < thetas.size(); ++i)
        CHECK(map.p1[2 * thetas.size() + i] == row.p1[i]);
}

TEST_CASE("dlzi oscillates with cycle time") {
    std::vector<double> taucs;
    for (int i = 0; i < 26; ++i) taucs.push_back(60e-9 + 4e-9 * i);
    SweepResult res = run_dlzi_sweep(taucs, 0.0, kTwoPi * 1e8, kTwoPi * 2e7,
                                     25e-9, Method::Schrodinger, {}, 2e-12);
    CHECK(contrast(res.p1) > 0.1);
}

TEST_CASE("impulse dlzi with p = 1/2 sweeps the full fringe") {
    std::vector<double> taucs;
    for (int i = 0; i <= 2000; ++i) taucs.push_back(60e-9 + 40e-9 * i / 2000.0);
    SweepResult res = run_dlzi_sweep(taucs, 0.0, kTwoPi * 1e8, kTwoPi * 2e7,
                                     25e-9, Method::Impulse, {}, kDefaultDt, 0.5);
    CHECK(contrast(res.p1) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("run_time_trace extracts a flat plateau") {
    GlziParams gp = GlziParams::reference_defaults();
    TimeTrace tt = run_time_trace(kPi / 2, gp, Method::Schrodinger, {}, 1e-12);
    CHECK(tt.plateau_std <= 0.02);
    CHECK(tt.window_lo == 25e-9);  // clipped to the end of the sweep leg
    CHECK(tt.window_hi == 32.5e-9);
    CHECK(tt.plz_prime == doctest::Approx(0.60668).epsilon(0.005));
    // survival approaches the asymptotic crossing probability here
    LzCrossingParams cross(gp.omega, 2.0 * gp.delta0 / gp.tau_p);
    CHECK(std::abs(tt.plz_prime - lz_probability(cross)) < 0.01);
}

TEST_CASE("wider sweep ranges approach the asymptotic crossing formula") {
    // the finite-sweep deviation oscillates with the range; at eight times
    // the reference range it has collapsed onto the closed form
    GlziParams gp = GlziParams::reference_defaults();
    gp.delta0 *= 8.0;
    TimeTrace tt = run_time_trace(kPi / 2, gp, Method::Schrodinger, {}, 1e-12);
    LzCrossingParams cross(gp.omega, 2.0 * gp.delta0 / gp.tau_p);
    CHECK(std::abs(tt.plz_prime - lz_probability(cross)) < 0.01);

    GlziParams gp2 = GlziParams::reference_defaults();
    gp2.delta0 *= 2.0;
    TimeTrace t2 = run_time_trace(kPi / 2, gp2, Method::Schrodinger, {}, 1e-12);
    CHECK(t2.plz_prime == doctest::Approx(0.7137).epsilon(0.01));
}

TEST_CASE("a sweep-dominated cycle leaves no plateau to read") {
    GlziParams gp{kTwoPi * 1e8, kTwoPi * 2e7, 45e-9, 100e-9};
    CHECK_THROWS_AS(run_time_trace(kPi / 2, gp, Method::Schrodinger, {}, 1e-12),
                    PlateauNotFlat);
}

TEST_CASE("t1 runner recovers the relaxation time") {
    DecoherenceParams dec(118e-9, 157e-9);
    std::vector<double> delays;
    for (int i = 0; i <= 20; ++i) delays.push_back(400e-9 * i / 20.0);
    auto [res, fit] = run_t1(delays, dec, 1e-11);
    CHECK(res.p1.front() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fit.time_constant == doctest::Approx(118e-9).epsilon(0.02));
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(fit.offset) < 1e-3);
}

TEST_CASE("t1 with no decoherence is constant and the fit degenerates") {
    std::vector<double> delays;
    for (int i = 0; i <= 10; ++i) delays.push_back(100e-9 * i / 10.0);
    CHECK_THROWS_AS(run_t1(delays, DecoherenceParams::none(), 1e-11),
                    SingularFit);
}

TEST_CASE("t2 echo matches the closed-form envelope") {
    DecoherenceParams dec(118e-9, 157e-9);
    std::vector<double> taus;
    for (int i = 0; i <= 20; ++i) taus.push_back(200e-9 * i / 20.0);
    auto [res, fit] = run_t2_echo(taus, dec, 1e-11);
    // envelope P1(2 tau) = (1 - exp(-2 tau / T2)) / 2, exactly
    for (std::size_t i = 0; i < res.axis.size(); ++i) {
        double expect = 0.5 * (1.0 - std::exp(-res.axis[i] / 157e-9));
        CHECK(res.p1[i] == doctest::Approx(expect).epsilon(1e-6));
    }
    CHECK(fit.time_constant == doctest::Approx(157e-9).epsilon(0.05));
    CHECK(res.p1.front() == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("vanishing coherence collapses the echo to the mixed value") {
    DecoherenceParams dec(1e-6, 1e-9);
    auto [res, fit_ignored] = [&] {
        std::vector<double> taus = {1e-9, 2e-9, 3e-9, 5e-9, 8e-9};
        SweepResult r;
        DecayFit f{};
        try {
            auto pair = run_t2_echo(taus, dec, 1e-13);
            r = pair.first;
            f = pair.second;
        } catch (const NoConvergence&) {
            // fit quality is not the point here; recompute the series alone
            for (double tau : taus) {
                Schedule s = build_t2_echo(tau);
                Trajectory t = evolve_master(s, DensityMatrix::ground(), dec,
                                             1e-13, 1 << 30);
                r.axis.push_back(2 * tau);
                r.p1.push_back(t.p1.back());
            }
        }
        return std::make_pair(r, f);
    }();
    CHECK(res.p1.back() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("fit recovers noiseless synthetic decays") {
    std::vector<double> ts, ys;
    for (int i = 0; i <= 30; ++i) {
        double t = 400e-9 * i / 30.0;
        ts.push_back(t);
        ys.push_back(std::exp(-t / 118e-9));
    }
    DecayFit f = fit_exponential(ts, ys);
    CHECK(f.amplitude == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.time_constant == doctest::Approx(118e-9).epsilon(1e-9));
    CHECK(std::abs(f.offset) < 1e-9);

    std::vector<double> ys2;
    for (double t : ts) ys2.push_back(0.5 * std::exp(-t / 157e-9) + 0.5);
    DecayFit g = fit_exponential(ts, ys2);
    CHECK(g.amplitude == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(g.time_constant == doctest::Approx(157e-9).epsilon(1e-6));
    CHECK(g.offset == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(g.stderr_time_constant < 1e-9);

    CHECK_THROWS_AS(fit_exponential({0, 1e-9, 2e-9, 3e-9}, {1, 1, 1, 1}),
                    SingularFit);
    CHECK_THROWS_AS(fit_exponential({0, 1e-9}, {1, 0}), std::invalid_argument);
}

TEST_CASE("shot sampling is deterministic and unbiased") {
    CHECK(simulate_shots({0.0}, 1000, 42)[0] == 0.0);
    CHECK(simulate_shots({1.0}, 1000, 42)[0] == 1.0);
    std::vector<double> a = simulate_shots({0.5, 0.2}, 100000, 7);
    std::vector<double> b = simulate_shots({0.5, 0.2}, 100000, 7);
    CHECK(a == b);
    CHECK(std::abs(a[0] - 0.5) < 0.01);
    CHECK(std::abs(a[1] - 0.2) < 0.01);
    CHECK(simulate_shots({0.3}, 1000, 1) != simulate_shots({0.3}, 1000, 2));
}

TEST_CASE("runners are bit-deterministic") {
    GlziParams gp = GlziParams::reference_defaults();
    std::vector<double> thetas = theta_grid(8);
    SweepResult a =
        run_glzi_theta_sweep(thetas, gp, Method::Schrodinger, {}, 1e-11);
    SweepResult b =
        run_glzi_theta_sweep(thetas, gp, Method::Schrodinger, {}, 1e-11);
    CHECK(a.p1 == b.p1);
}

TEST_CASE("fringe position is stable against the sweep duration") {
    std::vector<double> thetas = theta_grid(32);
    std::vector<int> argmins;
    for (double tp : {20e-9, 25e-9, 30e-9}) {
        GlziParams gp{kTwoPi * 1e8, kTwoPi * 2e7, tp, 100e-9};
        SweepResult res =
            run_glzi_theta_sweep(thetas, gp, Method::Schrodinger, {}, 1e-11);
        int arg = 0;
        for (std::size_t i = 1; i < res.p1.size(); ++i)
            if (res.p1[i] < res.p1[arg]) arg = static_cast<int>(i);
        argmins.push_back(arg % 16);  // fringe period is pi = 16 grid steps
    }
    for (int a : argmins) CHECK(std::abs(a - argmins[0]) <= 1);
}

TEST_CASE("decoherence reduces the interference contrast monotonically") {
    std::vector<double> thetas = theta_grid(16);
    GlziParams gp = GlziParams::reference_defaults();
    double prev = 2.0;
    for (double scale : {1.0, 0.5, 0.25}) {
        DecoherenceParams dec(118e-9 * scale, 157e-9 * scale);
        SweepResult res =
            run_glzi_theta_sweep(thetas, gp, Method::Master, dec, 1e-11);
        double c = contrast(res.p1);
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("method preconditions") {
    GlziParams gp = GlziParams::reference_defaults();
    CHECK_THROWS_AS(
        run_glzi_theta_sweep({0.1}, gp, Method::Master, {}, 1e-11),
        std::invalid_argument);
    CHECK_THROWS_AS(run_glzi_theta_sweep({0.1}, gp, Method::Schrodinger,
                                         DecoherenceParams(1e-7, 1e-7), 1e-11),
                    std::invalid_argument);
}
