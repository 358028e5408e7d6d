#include "leibniz/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace leibniz {

namespace {

struct Info {
  Projection p;
  const char* name;
  bool fiber;
  int dims; // 2 or 3
  std::array<int, 3> axes;
};

constexpr std::array<Info, 8> kInfo = {{
    {Projection::x12, "x12", false, 2, {0, 1, 0}},
    {Projection::x13, "x13", false, 2, {0, 2, 0}},
    {Projection::x23, "x23", false, 2, {1, 2, 0}},
    {Projection::xi12, "xi12", true, 2, {0, 1, 0}},
    {Projection::xi13, "xi13", true, 2, {0, 2, 0}},
    {Projection::xi23, "xi23", true, 2, {1, 2, 0}},
    {Projection::oblique3d_x, "oblique3d_x", false, 3, {0, 1, 2}},
    {Projection::oblique3d_xi, "oblique3d_xi", true, 3, {0, 1, 2}},
}};

const Info& info(Projection p) {
  for (const auto& i : kInfo)
    if (i.p == p) return i;
  return kInfo[0];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0, hi = 0;
  void widen() {
    if (!(hi > lo)) {
      double pad = std::max(1e-9, std::abs(lo) * 1e-3);
      lo -= pad;
      hi += pad;
    }
  }
};

Range range_of(const std::vector<std::array<double, 3>>& pts, int k) {
  Range r{pts[0][k], pts[0][k]};
  for (const auto& p : pts) {
    r.lo = std::min(r.lo, p[k]);
    r.hi = std::max(r.hi, p[k]);
  }
  r.widen();
  return r;
}

} // namespace

const char* to_string(Projection p) { return info(p).name; }

Projection projection_from_string(const std::string& s) {
  for (const auto& i : kInfo)
    if (s == i.name) return i.p;
  throw ParameterError("unknown projection '" + s + "' (expected x12, x13, x23, xi12, xi13, xi23, oblique3d_x, oblique3d_xi)");
}

bool is_fiber_projection(Projection p) { return info(p).fiber; }

std::string render_svg(const Trajectory& traj, std::size_t base_dim, const PlotSpec& spec) {
  const Info& in = info(spec.projection);
  const std::size_t total = traj.names.size();
  if (base_dim > total) throw DimensionMismatch("base dimension exceeds trajectory width");
  const std::size_t fiber_dim = total - base_dim;
  const std::size_t offset = in.fiber ? base_dim : 0;
  const std::size_t avail = in.fiber ? fiber_dim : base_dim;
  const std::size_t needed = static_cast<std::size_t>(*std::max_element(in.axes.begin(), in.axes.end()) + 1);
  if (in.fiber && fiber_dim == 0)
    throw ParameterError(std::string("projection ") + in.name + " needs fiber coordinates, but the system has none");
  if (avail < needed)
    throw ParameterError(std::string("projection ") + in.name + " needs " + std::to_string(needed) +
                         " coordinates, the system has " + std::to_string(avail));
  if (traj.size() == 0) throw ParameterError("empty trajectory");
  if (spec.width < 120 || spec.height < 120) throw ParameterError("plot must be at least 120 x 120 pixels");

  std::size_t stride = 1;
  if (spec.max_points > 1 && traj.size() > spec.max_points) stride = (traj.size() + spec.max_points - 2) / (spec.max_points - 1);
  std::vector<std::array<double, 3>> pts;
  for (std::size_t k = 0; k < traj.size(); k += stride) {
    const auto& s = traj.states[k];
    pts.push_back({s[offset + in.axes[0]], s[offset + in.axes[1]], in.dims == 3 ? s[offset + in.axes[2]] : 0.0});
  }
  if ((traj.size() - 1) % stride != 0) {
    const auto& s = traj.states.back();
    pts.push_back({s[offset + in.axes[0]], s[offset + in.axes[1]], in.dims == 3 ? s[offset + in.axes[2]] : 0.0});
  }
  for (const auto& p : pts)
    for (double v : p)
      if (!std::isfinite(v)) throw ParameterError("trajectory contains non-finite values");

  auto axis_name = [&](int k) { return traj.names[offset + in.axes[k]]; };
  const double left = 84, right = 30, top = 50, bottom = 60;
  const double pw = spec.width - left - right, ph = spec.height - top - bottom;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"white\"/>\n";
  std::string title = spec.title.empty() ? std::string("orbit, projection ") + in.name : spec.title;
  os << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"16\">" << escape(title) << "</text>\n";

  std::vector<std::pair<double, double>> screen;
  if (in.dims == 2) {
    Range rx = range_of(pts, 0), ry = range_of(pts, 1);
    auto sx = [&](double v) { return left + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double v) { return top + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };
    for (const auto& p : pts) screen.emplace_back(sx(p[0]), sy(p[1]));
    os << "<g stroke=\"" << spec.axis_color << "\" stroke-width=\"1\" fill=\"none\">\n"
       << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
       << "\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      double fx = left + pw * t / 4.0, fy = top + ph - ph * t / 4.0;
      os << "<line x1=\"" << num(fx) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(fx) << "\" y2=\""
         << num(top + ph + 5) << "\"/>\n";
      os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(fy) << "\" x2=\"" << num(left) << "\" y2=\"" << num(fy)
         << "\"/>\n";
    }
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"" << spec.axis_color << "\">\n";
    for (int t = 0; t <= 4; ++t) {
      double vx = rx.lo + (rx.hi - rx.lo) * t / 4.0, vy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
      // ticks carry four digits relative to the span, so a near-zero midpoint prints as 0
      auto snap = [](double v, double span) {
        const double unit = span * 1e-4;
        return unit > 0 ? std::round(v / unit) * unit + 0.0 : v;
      };
      vx = snap(vx, rx.hi - rx.lo);
      vy = snap(vy, ry.hi - ry.lo);
      os << "<text x=\"" << num(left + pw * t / 4.0) << "\" y=\"" << num(top + ph + 18)
         << "\" text-anchor=\"middle\">" << label_num(vx) << "</text>\n";
      os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(top + ph - ph * t / 4.0 + 4)
         << "\" text-anchor=\"end\">" << label_num(vy) << "</text>\n";
    }
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 14)
       << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(axis_name(0)) << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 "
       << num(top + ph / 2) << ")\">" << escape(axis_name(1)) << "</text>\n</g>\n";
  } else {
    // cabinet projection: depth axis (second coordinate) drawn at 30 degrees, half length
    const double c = 0.5 * std::cos(std::numbers::pi / 6), s = 0.5 * std::sin(std::numbers::pi / 6);
    Range r0 = range_of(pts, 0), r1 = range_of(pts, 1), r2 = range_of(pts, 2);
    auto norm = [](double v, const Range& r) { return (v - r.lo) / (r.hi - r.lo); };
    auto project = [&](double a, double b, double z) {
      return std::pair<double, double>{norm(a, r0) + c * norm(b, r1), norm(z, r2) + s * norm(b, r1)};
    };
    const double uw = 1 + c, vh = 1 + s;
    const double scale = std::min(pw / uw, ph / vh);
    auto to_screen = [&](std::pair<double, double> uv) {
      return std::pair<double, double>{left + uv.first * scale, top + ph - uv.second * scale};
    };
    for (const auto& p : pts) screen.push_back(to_screen(project(p[0], p[1], p[2])));
    auto o = to_screen(project(r0.lo, r1.lo, r2.lo));
    std::array<std::pair<double, double>, 3> ends = {to_screen(project(r0.hi, r1.lo, r2.lo)),
                                                     to_screen(project(r0.lo, r1.hi, r2.lo)),
                                                     to_screen(project(r0.lo, r1.lo, r2.hi))};
    std::array<Range, 3> ranges = {r0, r1, r2};
    os << "<g stroke=\"" << spec.axis_color << "\" stroke-width=\"1\">\n";
    for (const auto& e : ends)
      os << "<line x1=\"" << num(o.first) << "\" y1=\"" << num(o.second) << "\" x2=\"" << num(e.first) << "\" y2=\""
         << num(e.second) << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"" << spec.axis_color << "\">\n";
    os << "<text x=\"" << num(o.first) << "\" y=\"" << num(o.second + 16) << "\" text-anchor=\"start\">("
       << label_num(r0.lo) << ", " << label_num(r1.lo) << ", " << label_num(r2.lo) << ")</text>\n";
    for (int k = 0; k < 3; ++k)
      os << "<text x=\"" << num(ends[k].first + 6) << "\" y=\"" << num(ends[k].second - 6) << "\">"
         << escape(axis_name(k)) << " = " << label_num(ranges[k].hi) << "</text>\n";
    os << "</g>\n";
  }

  os << "<polyline fill=\"none\" stroke=\"" << spec.stroke << "\" stroke-width=\"" << num(spec.stroke_width)
     << "\" stroke-linejoin=\"round\" points=\"";
  for (std::size_t k = 0; k < screen.size(); ++k)
    os << (k ? " " : "") << num(screen[k].first) << "," << num(screen[k].second);
  os << "\"/>\n";
  os << "<circle cx=\"" << num(screen.front().first) << "\" cy=\"" << num(screen.front().second)
     << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  os << "</svg>\n";
  return os.str();
}

} // namespace leibniz
