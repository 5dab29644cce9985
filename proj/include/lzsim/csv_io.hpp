#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lzsim/dynamics.hpp"
#include "lzsim/experiments.hpp"

namespace lzsim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12-significant-digit decimal text ("%.12g"), locale-independent.
std::string format_g12(double v);

void write_csv(const SweepResult& result, std::ostream& out);
void write_csv(const Trajectory& traj, std::ostream& out,
               const std::vector<std::pair<std::string, std::string>>& params = {});
void write_csv(const DecayFit& fit, std::ostream& out,
               const std::vector<std::pair<std::string, std::string>>& params = {});

template <class T>
void write_csv_file(const T& value, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    write_csv(value, f);
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace lzsim
