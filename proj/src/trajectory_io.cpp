#include "leibniz/trajectory_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace leibniz {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t";
  for (const auto& n : traj.names) os << ',' << n;
  os << '\n';
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << fmt17(traj.times[k]);
    for (double v : traj.states[k]) os << ',' << fmt17(v);
    os << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  Trajectory traj;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty trajectory CSV");
  {
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    if (cell != "t") throw ParseError("trajectory CSV header must start with 't'");
    while (std::getline(ss, cell, ',')) traj.names.push_back(cell);
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("bad number on CSV line " + std::to_string(lineno));
      }
    }
    if (row.size() != traj.names.size() + 1) throw ParseError("wrong column count on CSV line " + std::to_string(lineno));
    if (!traj.times.empty() && row[0] <= traj.times.back())
      throw ParseError("times must be strictly increasing (CSV line " + std::to_string(lineno) + ")");
    traj.times.push_back(row[0]);
    traj.states.emplace_back(row.begin() + 1, row.end());
  }
  if (traj.times.empty()) throw ParseError("trajectory CSV has no rows");
  traj.accepted_steps = traj.times.size() - 1;
  return traj;
}

std::string trajectory_to_json(const Trajectory& traj, const ObservationReport* report,
                               const std::vector<std::string>& observable_exprs) {
  nlohmann::json j;
  j["names"] = traj.names;
  j["times"] = traj.times;
  j["states"] = traj.states;
  j["accepted_steps"] = traj.accepted_steps;
  j["rejected_steps"] = traj.rejected_steps;
  if (report) {
    nlohmann::json obs = nlohmann::json::array();
    for (std::size_t k = 0; k < report->series.size(); ++k) {
      const auto& s = report->series[k];
      obs.push_back({{"expr", k < observable_exprs.size() ? observable_exprs[k] : s.label},
                     {"values", s.values},
                     {"max_drift", s.max_drift},
                     {"nonincreasing", s.nonincreasing},
                     {"nondecreasing", s.nondecreasing},
                     {"verdict", s.verdict()}});
    }
    j["observables"] = std::move(obs);
  }
  return j.dump(1) + "\n";
}

Trajectory trajectory_from_json(const std::string& text) {
  Trajectory traj;
  try {
    const auto j = nlohmann::json::parse(text);
    traj.names = j.at("names").get<std::vector<std::string>>();
    traj.times = j.at("times").get<std::vector<double>>();
    traj.states = j.at("states").get<std::vector<std::vector<double>>>();
    traj.accepted_steps = j.value("accepted_steps", std::size_t{0});
    traj.rejected_steps = j.value("rejected_steps", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid trajectory JSON: ") + e.what());
  }
  if (traj.times.empty() || traj.times.size() != traj.states.size())
    throw ParseError("trajectory JSON: times and states differ in length");
  for (const auto& s : traj.states)
    if (s.size() != traj.names.size()) throw ParseError("trajectory JSON: state dimension mismatch");
  return traj;
}

} // namespace leibniz
