#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lzsim {

// Thrown on a malformed or missing unit suffix.  `position` is the byte
// offset of the offending token within the parsed text (0-based).
struct UnitError : std::runtime_error {
    std::size_t position;
    UnitError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

enum class QuantityKind { Time, Frequency, Angle };

struct Quantity {
    QuantityKind kind;
    double value;  // seconds, rad/s (angular), or radians
};

// Parses a unit-suffixed literal:
//   time       "25ns" "0.1us"            -> seconds
//   frequency  "20MHz" "14.3GHz"         -> rad/s (cyclic input, multiplied by 2*pi)
//   angle      "90deg" "1.5rad" "0.5pi"  -> radians
Quantity parse_quantity(std::string_view text);

// Same, but requires a particular dimension.
double parse_time(std::string_view text);
double parse_frequency(std::string_view text);  // angular rad/s
double parse_angle(std::string_view text);

// Inverse conversions used by the schedule serializer.  Times and angles
// round-trip bit-exactly for every double (the conversion is a decimal
// exponent shift); frequencies round-trip bit-exactly for any value that
// itself came out of parse_quantity.
std::string encode_time(double seconds);        // "...ns"
std::string encode_frequency(double angular);   // "...MHz"
std::string encode_angle(double radians);       // "...rad"

// Shortest decimal form that strtod parses back to exactly v.
std::string format_exact(double v);

}  // namespace lzsim
