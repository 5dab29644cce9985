#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lzsim {

// Rotating-frame control vector (Omega_x, Omega_y, delta), all rad/s.
struct EffectiveField {
    double omega_x = 0.0;
    double omega_y = 0.0;
    double delta = 0.0;
};

// One piecewise-linear control segment.  delta and phase ramp linearly
// over the duration, the drive magnitude omega is constant.
struct Segment {
    double duration = 0.0;     // seconds, > 0
    double delta_start = 0.0;  // rad/s
    double delta_end = 0.0;    // rad/s
    double omega = 0.0;        // rad/s, >= 0
    double phase_start = 0.0;  // radians
    double phase_end = 0.0;    // radians
};

enum class Axis { X, Y };

struct InstantGate {
    double time = 0.0;  // seconds from schedule start
    Axis axis = Axis::X;
    double angle = 0.0;  // radians
};

struct ParseError : std::runtime_error {
    enum class Kind { Syntax, UnknownKey, Unit, NegativeDuration };
    Kind kind;
    int line;    // 1-based
    int column;  // 1-based
    ParseError(Kind k, const std::string& msg, int ln, int col)
        : std::runtime_error(msg), kind(k), line(ln), column(col) {}
};

struct InvalidTiming : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time-domain control program: ordered segments plus instantaneous gates.
// Segment intervals are half-open [start, end); a gate that coincides with
// a boundary fires before the later segment is sampled.
class Schedule {
  public:
    std::vector<Segment> segments;
    std::vector<InstantGate> gates;  // sorted by time, stable

    // Annotations populated by the protocol builders (absent on parsed files).
    std::optional<double> tau_p;  // LZ sweep duration
    std::optional<double> tau_s;  // echo time
    std::optional<double> tau_1;  // first crossing (delta = 0)
    std::optional<double> tau_2;  // second crossing

    double total_duration() const;
    double omega_c() const;  // 2*pi / total_duration

    // Field at time t; requires 0 <= t < total_duration, else OutOfRange.
    EffectiveField sample_field(double t) const;

    // Internal sampling that additionally allows t == total_duration
    // (integrator stage evaluations at the right edge).
    EffectiveField field_clamped(double t) const;

    void validate() const;  // throws on violated segment/gate invariants

    bool operator==(const Schedule& other) const;
};

// Line-oriented schedule DSL.
//
//   line      := statement? comment?          comment := '#' rest-of-line
//   statement := "segment" pair+ | "gate" pair+
//   pair      := key '=' value
//   segment keys: dur, delta0, delta1 (default delta0), omega (default 0),
//                 phase0 (default 0), phase1 (default phase0)
//   gate keys:    at, axis (x|y), angle
//   units: time ns|us; frequency MHz|GHz (cyclic, converted to angular);
//          angle deg|rad|<number>pi
Schedule parse_schedule(std::string_view text);
std::string serialize_schedule(const Schedule& s);

// GLZI cycle: sweep down at drive phase 0, in-plane rotation by pi + 2*theta
// across the far plateau with an x-axis pi echo at its midpoint, sweep back
// at the rotated phase, then unwind to 2*pi.  The drive is gated onto the
// sweep legs so the inter-sweep evolution is a bare-detuning rotation the
// echo refocuses exactly; theta is the geometric interference phase.
Schedule build_glzi(double delta0, double omega, double theta, double tau_p,
                    double tau_c);

// Same cycle with no echo pulse and the drive phase held at theta_const.
Schedule build_dlzi(double delta0, double omega, double theta_const,
                    double tau_p, double tau_c);

// Pump-probe: x-axis pi gate at t = 0, then free evolution for `delay`.
Schedule build_t1(double delay);

// Spin echo: pi/2 - tau - pi - tau - pi/2, all about x, zero drive between.
Schedule build_t2_echo(double tau);

}  // namespace lzsim
