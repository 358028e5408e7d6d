#ifndef LEIBNIZ_CHART_HPP
#define LEIBNIZ_CHART_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace leibniz {

/// A single global coordinate chart.
///
/// Variables are laid out as base coordinates, then fiber coordinates, then
/// parameter symbols. Base and fiber names are the coordinates of the chart
/// (they carry dynamics and gradients); parameters are symbolic constants
/// that let one structure stand for a whole parameter family.
///
/// A chart with no fiber names models functions on the base M; a chart with
/// fiber names models functions on the dual bundle E*. Charts are immutable
/// and cheap to copy.
class Chart {
public:
  static constexpr int kDefaultDegreeCap = 16;

  Chart(std::vector<std::string> base_names, std::vector<std::string> fiber_names = {},
        std::vector<std::string> param_names = {}, int degree_cap = kDefaultDegreeCap);

  /// Base chart x1..xn, optionally with fiber xi1..xim.
  static Chart standard(std::size_t n, std::size_t m = 0,
                        std::vector<std::string> param_names = {});

  const std::vector<std::string>& base_names() const { return data_->base; }
  const std::vector<std::string>& fiber_names() const { return data_->fiber; }
  const std::vector<std::string>& param_names() const { return data_->params; }

  std::size_t base_dim() const { return data_->base.size(); }
  std::size_t fiber_dim() const { return data_->fiber.size(); }
  /// Number of coordinates (base + fiber); parameters excluded.
  std::size_t dim() const { return data_->base.size() + data_->fiber.size(); }
  /// Number of polynomial variables (coordinates + parameters).
  std::size_t num_vars() const { return dim() + data_->params.size(); }

  int degree_cap() const { return data_->degree_cap; }

  /// Name of variable i in layout order.
  const std::string& var_name(std::size_t i) const;
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool is_coordinate(std::size_t i) const { return i < dim(); }
  bool is_fiber(std::size_t i) const { return i >= base_dim() && i < dim(); }

  /// Same base and parameters, fiber dropped.
  Chart base_chart() const;
  /// Same chart with a different set of parameter symbols.
  Chart with_params(std::vector<std::string> param_names) const;

  friend bool operator==(const Chart& a, const Chart& b);
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

  std::string describe() const;

private:
  struct Data {
    std::vector<std::string> base;
    std::vector<std::string> fiber;
    std::vector<std::string> params;
    int degree_cap;
  };
  std::shared_ptr<const Data> data_;
};

} // namespace leibniz

#endif
