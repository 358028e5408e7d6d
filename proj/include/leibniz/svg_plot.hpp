#ifndef LEIBNIZ_SVG_PLOT_HPP
#define LEIBNIZ_SVG_PLOT_HPP

#include <cstddef>
#include <string>

#include "leibniz/dynamics.hpp"

namespace leibniz {

enum class Projection { x12, x13, x23, xi12, xi13, xi23, oblique3d_x, oblique3d_xi };

const char* to_string(Projection p);
/// Throws ParameterError on an unknown projection name.
Projection projection_from_string(const std::string& s);
bool is_fiber_projection(Projection p);

struct PlotSpec {
  Projection projection = Projection::x12;
  int width = 640;
  int height = 520;
  std::string stroke = "#1f4e9c";
  double stroke_width = 1.2;
  std::string axis_color = "#333333";
  std::string title;
  /// Polylines are thinned by a fixed stride down to at most this many points.
  std::size_t max_points = 6000;
};

/// Standalone SVG 1.1 document with the projected orbit, axes and title.
/// The first `base_dim` trajectory columns are base coordinates, the rest
/// fiber coordinates. Oblique views use a cabinet projection: first
/// coordinate to the right, third up, second receding at 30 degrees with
/// ratio 1/2. Throws ParameterError when the projection needs coordinates
/// the trajectory does not have.
std::string render_svg(const Trajectory& traj, std::size_t base_dim, const PlotSpec& spec);

} // namespace leibniz

#endif
