#include "lzsim/csv_io.hpp"

#include <cstdio>

namespace lzsim {

std::string format_g12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void write_params(const std::vector<std::pair<std::string, std::string>>& params,
                  std::ostream& out) {
    for (const auto& [k, v] : params) out << "# " << k << " = " << v << "\n";
}

}  // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
    write_params(result.params, out);
    if (result.axis2_name.empty()) {
        out << result.axis_name << ",p1\n";
        for (std::size_t i = 0; i < result.axis.size(); ++i)
            out << format_g12(result.axis[i]) << ',' << format_g12(result.p1[i])
                << '\n';
        return;
    }
    out << result.axis2_name << ',' << result.axis_name << ",p1\n";
    std::size_t n1 = result.axis.size();
    for (std::size_t j = 0; j < result.axis2.size(); ++j)
        for (std::size_t i = 0; i < n1; ++i)
            out << format_g12(result.axis2[j]) << ',' << format_g12(result.axis[i])
                << ',' << format_g12(result.p1[j * n1 + i]) << '\n';
}

void write_csv(const Trajectory& traj, std::ostream& out,
               const std::vector<std::pair<std::string, std::string>>& params) {
    write_params(params, out);
    out << "time_s,p1\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        out << format_g12(traj.times[i]) << ',' << format_g12(traj.p1[i]) << '\n';
}

void write_csv(const DecayFit& fit, std::ostream& out,
               const std::vector<std::pair<std::string, std::string>>& params) {
    write_params(params, out);
    out << "amplitude,time_constant_s,offset,residual_norm,stderr_time_constant_s\n";
    out << format_g12(fit.amplitude) << ',' << format_g12(fit.time_constant) << ','
        << format_g12(fit.offset) << ',' << format_g12(fit.residual_norm) << ','
        << format_g12(fit.stderr_time_constant) << '\n';
}

}  // namespace lzsim
