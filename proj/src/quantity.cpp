#include "lzsim/quantity.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace lzsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = kTwoPi / 2.0;

struct NumberSplit {
    std::string number;  // the numeric text
    std::string suffix;
    std::size_t suffix_pos;
};

NumberSplit split_number(std::string_view text, std::size_t base_pos) {
    std::string buf(text);
    const char* begin = buf.c_str();
    char* end = nullptr;
    (void)std::strtod(begin, &end);
    if (end == begin) throw UnitError("expected a number", base_pos);
    std::size_t n = static_cast<std::size_t>(end - begin);
    std::string num = buf.substr(0, n);
    if (num.find('x') != std::string::npos || num.find('X') != std::string::npos)
        throw UnitError("hexadecimal literals are not accepted", base_pos);
    return {num, buf.substr(n), base_pos + n};
}

// Shifts the decimal exponent of a number in text form, so the subsequent
// strtod performs a single correctly-rounded decimal-to-binary conversion.
std::string shift_exponent_text(const std::string& number, int shift) {
    if (shift == 0) return number;
    std::size_t e = number.find_first_of("eE");
    if (e == std::string::npos)
        return number + "e" + std::to_string(shift);
    long exp = std::strtol(number.c_str() + e + 1, nullptr, 10);
    return number.substr(0, e) + "e" + std::to_string(exp + shift);
}

double parse_decimal_scaled(const std::string& number, int pow10) {
    std::string merged = shift_exponent_text(number, pow10);
    return std::strtod(merged.c_str(), nullptr);
}

}  // namespace

Quantity parse_quantity(std::string_view text) {
    if (text.empty()) throw UnitError("empty quantity", 0);
    NumberSplit s = split_number(text, 0);
    const std::string& u = s.suffix;
    if (u == "ns") return {QuantityKind::Time, parse_decimal_scaled(s.number, -9)};
    if (u == "us") return {QuantityKind::Time, parse_decimal_scaled(s.number, -6)};
    if (u == "MHz")
        return {QuantityKind::Frequency, parse_decimal_scaled(s.number, 6) * kTwoPi};
    if (u == "GHz")
        return {QuantityKind::Frequency, parse_decimal_scaled(s.number, 9) * kTwoPi};
    if (u == "deg")
        return {QuantityKind::Angle,
                std::strtod(s.number.c_str(), nullptr) * (kTwoPi / 360.0)};
    if (u == "rad")
        return {QuantityKind::Angle, std::strtod(s.number.c_str(), nullptr)};
    if (u == "pi")
        return {QuantityKind::Angle, std::strtod(s.number.c_str(), nullptr) * kPi};
    if (u.empty()) throw UnitError("missing unit suffix", s.suffix_pos);
    throw UnitError("unknown unit suffix '" + u + "'", s.suffix_pos);
}

double parse_time(std::string_view text) {
    Quantity q = parse_quantity(text);
    if (q.kind != QuantityKind::Time)
        throw UnitError("expected a time (ns|us)", 0);
    return q.value;
}

double parse_frequency(std::string_view text) {
    Quantity q = parse_quantity(text);
    if (q.kind != QuantityKind::Frequency)
        throw UnitError("expected a frequency (MHz|GHz)", 0);
    return q.value;
}

double parse_angle(std::string_view text) {
    Quantity q = parse_quantity(text);
    if (q.kind != QuantityKind::Angle)
        throw UnitError("expected an angle (deg|rad|pi)", 0);
    return q.value;
}

std::string format_exact(double v) {
    char buf[64];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string encode_time(double seconds) {
    // a pure decimal-exponent shift: reparsing is the identical correctly
    // rounded conversion, so the round trip is bit-exact for any double
    return shift_exponent_text(format_exact(seconds), 9) + "ns";
}

std::string encode_frequency(double angular) {
    // invert the trailing multiplication by 2*pi; an exact preimage exists
    // for every value produced by parsing, and is hunted within a few ulp
    double d = angular / kTwoPi;
    if (d * kTwoPi != angular) {
        double lo = d, hi = d;
        bool found = false;
        for (int k = 0; k < 8 && !found; ++k) {
            lo = std::nextafter(lo, -HUGE_VAL);
            hi = std::nextafter(hi, HUGE_VAL);
            if (lo * kTwoPi == angular) {
                d = lo;
                found = true;
            } else if (hi * kTwoPi == angular) {
                d = hi;
                found = true;
            }
        }
    }
    return shift_exponent_text(format_exact(d), -6) + "MHz";
}

std::string encode_angle(double radians) {
    return format_exact(radians) + "rad";  // rad carries no conversion
}

}  // namespace lzsim
