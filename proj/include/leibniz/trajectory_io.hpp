#ifndef LEIBNIZ_TRAJECTORY_IO_HPP
#define LEIBNIZ_TRAJECTORY_IO_HPP

#include <iosfwd>
#include <string>

#include "leibniz/dynamics.hpp"

namespace leibniz {

/// CSV with header `t,<coordinate names>`; values printed with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);

/// JSON document with times, states, step counts and the observation report.
std::string trajectory_to_json(const Trajectory& traj, const ObservationReport* report = nullptr,
                               const std::vector<std::string>& observable_exprs = {});
Trajectory trajectory_from_json(const std::string& text);

} // namespace leibniz

#endif
