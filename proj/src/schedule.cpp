#include "lzsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lzsim/quantity.hpp"

namespace lzsim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMinSegment = 1e-12;  // stand-in duration for zero-delay programs

double wrap_2pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

[[noreturn]] void fail(ParseError::Kind kind, const std::string& msg, int line,
                       int col) {
    throw ParseError(kind, msg, line, col);
}

double parse_valued(const Token& tok, std::size_t eq, QuantityKind want,
                    int line) {
    std::string value = tok.text.substr(eq + 1);
    int vcol = tok.column + static_cast<int>(eq) + 1;
    if (value.empty()) fail(ParseError::Kind::Unit, "missing value", line, vcol);
    try {
        Quantity q = parse_quantity(value);
        if (q.kind != want) {
            const char* names[] = {"time (ns|us)", "frequency (MHz|GHz)",
                                   "angle (deg|rad|pi)"};
            fail(ParseError::Kind::Unit,
                 std::string("expected ") + names[static_cast<int>(want)], line,
                 vcol);
        }
        return q.value;
    } catch (const UnitError& e) {
        fail(ParseError::Kind::Unit, e.what(), line,
             vcol + static_cast<int>(e.position));
    }
}

}  // namespace

double Schedule::total_duration() const {
    double t = 0.0;
    for (const Segment& s : segments) t += s.duration;
    return t;
}

double Schedule::omega_c() const { return kTwoPi / total_duration(); }

EffectiveField Schedule::field_clamped(double t) const {
    double start = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        double end = start + s.duration;
        bool last = (i + 1 == segments.size());
        if (t < end || (last && t <= end)) {
            double u = (t - start) / s.duration;
            u = std::min(std::max(u, 0.0), 1.0);
            double delta = s.delta_start + (s.delta_end - s.delta_start) * u;
            double phase = s.phase_start + (s.phase_end - s.phase_start) * u;
            return {s.omega * std::cos(phase), s.omega * std::sin(phase), delta};
        }
        start = end;
    }
    throw OutOfRange("sample time outside schedule");
}

EffectiveField Schedule::sample_field(double t) const {
    if (!(t >= 0.0) || t >= total_duration())
        throw OutOfRange("sample time outside [0, total_duration)");
    return field_clamped(t);
}

void Schedule::validate() const {
    for (const Segment& s : segments) {
        if (!(s.duration > 0.0)) throw InvalidTiming("segment duration must be > 0");
        if (!(s.omega >= 0.0)) throw InvalidTiming("segment omega must be >= 0");
    }
    double total = total_duration();
    double prev = 0.0;
    for (const InstantGate& g : gates) {
        if (!(g.time >= 0.0) || g.time > total)
            throw InvalidTiming("gate time outside [0, total_duration]");
        if (g.time < prev) throw InvalidTiming("gates must be sorted by time");
        prev = g.time;
    }
}

bool Schedule::operator==(const Schedule& other) const {
    if (segments.size() != other.segments.size() ||
        gates.size() != other.gates.size())
        return false;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& a = segments[i];
        const Segment& b = other.segments[i];
        if (a.duration != b.duration || a.delta_start != b.delta_start ||
            a.delta_end != b.delta_end || a.omega != b.omega ||
            a.phase_start != b.phase_start || a.phase_end != b.phase_end)
            return false;
    }
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const InstantGate& a = gates[i];
        const InstantGate& b = other.gates[i];
        if (a.time != b.time || a.axis != b.axis || a.angle != b.angle)
            return false;
    }
    return true;
}

Schedule parse_schedule(std::string_view text) {
    Schedule sched;
    std::vector<int> gate_lines;

    std::string body(text);
    std::istringstream in(body);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) continue;

        const std::string& head = toks[0].text;
        bool is_segment = (head == "segment");
        bool is_gate = (head == "gate");
        if (!is_segment && !is_gate)
            fail(ParseError::Kind::Syntax, "expected 'segment' or 'gate'", lineno,
                 toks[0].column);
        if (toks.size() == 1)
            fail(ParseError::Kind::Syntax, "statement has no key=value pairs",
                 lineno, toks[0].column);

        Segment seg;
        InstantGate gate;
        bool have_dur = false, have_delta1 = false, have_phase1 = false;
        bool have_at = false, have_axis = false, have_angle = false;

        for (std::size_t ti = 1; ti < toks.size(); ++ti) {
            const Token& tok = toks[ti];
            std::size_t eq = tok.text.find('=');
            if (eq == std::string::npos || eq == 0)
                fail(ParseError::Kind::Syntax, "expected key=value", lineno,
                     tok.column);
            std::string key = tok.text.substr(0, eq);

            if (is_segment) {
                if (key == "dur") {
                    if (have_dur)
                        fail(ParseError::Kind::Syntax, "duplicate key 'dur'",
                             lineno, tok.column);
                    seg.duration = parse_valued(tok, eq, QuantityKind::Time, lineno);
                    have_dur = true;
                } else if (key == "delta0") {
                    seg.delta_start =
                        parse_valued(tok, eq, QuantityKind::Frequency, lineno);
                } else if (key == "delta1") {
                    seg.delta_end =
                        parse_valued(tok, eq, QuantityKind::Frequency, lineno);
                    have_delta1 = true;
                } else if (key == "omega") {
                    seg.omega =
                        parse_valued(tok, eq, QuantityKind::Frequency, lineno);
                } else if (key == "phase0") {
                    seg.phase_start =
                        parse_valued(tok, eq, QuantityKind::Angle, lineno);
                } else if (key == "phase1") {
                    seg.phase_end =
                        parse_valued(tok, eq, QuantityKind::Angle, lineno);
                    have_phase1 = true;
                } else {
                    fail(ParseError::Kind::UnknownKey,
                         "unknown segment key '" + key + "'", lineno, tok.column);
                }
            } else {
                if (key == "at") {
                    gate.time = parse_valued(tok, eq, QuantityKind::Time, lineno);
                    have_at = true;
                } else if (key == "axis") {
                    std::string v = tok.text.substr(eq + 1);
                    if (v == "x")
                        gate.axis = Axis::X;
                    else if (v == "y")
                        gate.axis = Axis::Y;
                    else
                        fail(ParseError::Kind::Syntax, "axis must be x or y",
                             lineno, tok.column + static_cast<int>(eq) + 1);
                    have_axis = true;
                } else if (key == "angle") {
                    gate.angle = parse_valued(tok, eq, QuantityKind::Angle, lineno);
                    have_angle = true;
                } else {
                    fail(ParseError::Kind::UnknownKey,
                         "unknown gate key '" + key + "'", lineno, tok.column);
                }
            }
        }

        if (is_segment) {
            if (!have_dur)
                fail(ParseError::Kind::Syntax, "segment requires dur=", lineno,
                     toks[0].column);
            if (!(seg.duration > 0.0))
                fail(ParseError::Kind::NegativeDuration,
                     "segment duration must be > 0", lineno, toks[0].column);
            if (seg.omega < 0.0)
                fail(ParseError::Kind::Syntax, "omega must be >= 0", lineno,
                     toks[0].column);
            if (!have_delta1) seg.delta_end = seg.delta_start;
            if (!have_phase1) seg.phase_end = seg.phase_start;
            sched.segments.push_back(seg);
        } else {
            if (!have_at || !have_axis || !have_angle)
                fail(ParseError::Kind::Syntax, "gate requires at=, axis=, angle=",
                     lineno, toks[0].column);
            sched.gates.push_back(gate);
            gate_lines.push_back(lineno);
        }
    }

    double total = sched.total_duration();
    for (std::size_t i = 0; i < sched.gates.size(); ++i) {
        if (sched.gates[i].time < 0.0 || sched.gates[i].time > total)
            fail(ParseError::Kind::Syntax, "gate time outside schedule",
                 gate_lines[i], 1);
    }
    std::stable_sort(sched.gates.begin(), sched.gates.end(),
                     [](const InstantGate& a, const InstantGate& b) {
                         return a.time < b.time;
                     });
    return sched;
}

std::string serialize_schedule(const Schedule& s) {
    std::ostringstream out;
    for (const Segment& seg : s.segments) {
        out << "segment dur=" << encode_time(seg.duration)
            << " delta0=" << encode_frequency(seg.delta_start)
            << " delta1=" << encode_frequency(seg.delta_end)
            << " omega=" << encode_frequency(seg.omega)
            << " phase0=" << encode_angle(seg.phase_start)
            << " phase1=" << encode_angle(seg.phase_end) << "\n";
    }
    for (const InstantGate& g : s.gates) {
        out << "gate at=" << encode_time(g.time)
            << " axis=" << (g.axis == Axis::X ? 'x' : 'y')
            << " angle=" << encode_angle(g.angle) << "\n";
    }
    return out.str();
}

Schedule build_glzi(double delta0, double omega, double theta, double tau_p,
                    double tau_c) {
    if (!(delta0 > 0.0)) throw InvalidTiming("delta0 must be > 0");
    if (!(omega >= 0.0)) throw InvalidTiming("omega must be >= 0");
    if (!(tau_p > 0.0)) throw InvalidTiming("tau_p must be > 0");
    if (!(tau_c > 2.0 * tau_p)) throw InvalidTiming("tau_c must exceed 2*tau_p");

    double plat = (tau_c - 2.0 * tau_p) / 2.0;
    double rot = kPi + 2.0 * theta;  // total in-plane rotation between sweeps
    Schedule s;
    s.segments = {
        {tau_p, +delta0, -delta0, omega, 0.0, 0.0},
        {plat, -delta0, -delta0, 0.0, 0.0, rot},
        {tau_p, -delta0, +delta0, omega, rot, rot},
        {plat, +delta0, +delta0, 0.0, rot, kTwoPi},
    };
    double tau_s = tau_p + plat / 2.0;
    s.gates = {{tau_s, Axis::X, kPi}};
    s.tau_p = tau_p;
    s.tau_s = tau_s;
    s.tau_1 = tau_p / 2.0;
    s.tau_2 = tau_p + plat + tau_p / 2.0;
    return s;
}

Schedule build_dlzi(double delta0, double omega, double theta_const,
                    double tau_p, double tau_c) {
    if (!(delta0 > 0.0)) throw InvalidTiming("delta0 must be > 0");
    if (!(omega >= 0.0)) throw InvalidTiming("omega must be >= 0");
    if (!(tau_p > 0.0)) throw InvalidTiming("tau_p must be > 0");
    if (!(tau_c > 2.0 * tau_p)) throw InvalidTiming("tau_c must exceed 2*tau_p");

    double plat = (tau_c - 2.0 * tau_p) / 2.0;
    double th = wrap_2pi(theta_const);
    Schedule s;
    s.segments = {
        {tau_p, +delta0, -delta0, omega, th, th},
        {plat, -delta0, -delta0, 0.0, th, th},
        {tau_p, -delta0, +delta0, omega, th, th},
        {plat, +delta0, +delta0, 0.0, th, th},
    };
    s.tau_p = tau_p;
    s.tau_1 = tau_p / 2.0;
    s.tau_2 = tau_p + plat + tau_p / 2.0;
    return s;
}

Schedule build_t1(double delay) {
    if (delay < 0.0) throw InvalidTiming("delay must be >= 0");
    Schedule s;
    s.segments = {{std::max(delay, kMinSegment), 0.0, 0.0, 0.0, 0.0, 0.0}};
    s.gates = {{0.0, Axis::X, kPi}};
    return s;
}

Schedule build_t2_echo(double tau) {
    if (tau < 0.0) throw InvalidTiming("tau must be >= 0");
    Schedule s;
    if (tau == 0.0) {
        s.segments = {{kMinSegment, 0.0, 0.0, 0.0, 0.0, 0.0}};
        s.gates = {{0.0, Axis::X, kPi / 2.0},
                   {0.0, Axis::X, kPi},
                   {0.0, Axis::X, kPi / 2.0}};
    } else {
        s.segments = {{tau, 0.0, 0.0, 0.0, 0.0, 0.0},
                      {tau, 0.0, 0.0, 0.0, 0.0, 0.0}};
        s.gates = {{0.0, Axis::X, kPi / 2.0},
                   {tau, Axis::X, kPi},
                   {2.0 * tau, Axis::X, kPi / 2.0}};
    }
    return s;
}

}  // namespace lzsim
