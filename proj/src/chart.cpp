#include "leibniz/chart.hpp"

#include <set>

#include "leibniz/errors.hpp"

namespace leibniz {

Chart::Chart(std::vector<std::string> base_names, std::vector<std::string> fiber_names,
             std::vector<std::string> param_names, int degree_cap) {
  std::set<std::string> seen;
  for (const auto* list : {&base_names, &fiber_names, &param_names})
    for (const auto& n : *list) {
      if (n.empty()) throw Error("chart variable names must be nonempty");
      if (!seen.insert(n).second) throw Error("duplicate chart variable '" + n + "'");
    }
  if (degree_cap <= 0) throw Error("degree cap must be positive");
  data_ = std::make_shared<const Data>(
      Data{std::move(base_names), std::move(fiber_names), std::move(param_names), degree_cap});
}

Chart Chart::standard(std::size_t n, std::size_t m, std::vector<std::string> param_names) {
  std::vector<std::string> base, fiber;
  for (std::size_t i = 1; i <= n; ++i) base.push_back("x" + std::to_string(i));
  for (std::size_t a = 1; a <= m; ++a) fiber.push_back("xi" + std::to_string(a));
  return Chart(std::move(base), std::move(fiber), std::move(param_names));
}

const std::string& Chart::var_name(std::size_t i) const {
  const auto nb = data_->base.size(), nf = data_->fiber.size();
  if (i < nb) return data_->base[i];
  if (i < nb + nf) return data_->fiber[i - nb];
  if (i < num_vars()) return data_->params[i - nb - nf];
  throw UnknownVariable("variable index " + std::to_string(i) + " out of range");
}

std::optional<std::size_t> Chart::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < num_vars(); ++i)
    if (var_name(i) == name) return i;
  return std::nullopt;
}

Chart Chart::base_chart() const { return Chart(data_->base, {}, data_->params, data_->degree_cap); }

Chart Chart::with_params(std::vector<std::string> param_names) const {
  return Chart(data_->base, data_->fiber, std::move(param_names), data_->degree_cap);
}

bool operator==(const Chart& a, const Chart& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->base == b.data_->base && a.data_->fiber == b.data_->fiber &&
         a.data_->params == b.data_->params;
}

std::string Chart::describe() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dim(); ++i) s += (i ? "," : "") + var_name(i);
  s += ")";
  if (!data_->params.empty()) {
    s += " params(";
    for (std::size_t i = 0; i < data_->params.size(); ++i) s += (i ? "," : "") + data_->params[i];
    s += ")";
  }
  return s;
}

} // namespace leibniz
