#include "leibniz/structure_io.hpp"

#include <fstream>
#include <sstream>

namespace leibniz {

using nlohmann::json;

namespace {

std::vector<std::vector<std::string>> string_rows(const json& j, std::size_t rows, std::size_t cols,
                                                  const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError(what + " must be an array of " + std::to_string(rows) + " rows");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw ParseError(what + " rows must have " + std::to_string(cols) + " entries");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(std::to_string(e.get<long long>()));
      else
        throw ParseError(what + " entries must be polynomial strings");
    }
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace

json structure_to_json(const AlgebroidStructure& a) {
  const std::size_t n = a.n(), m = a.m();
  json c = json::array();
  for (std::size_t p = 0; p < m; ++p) {
    json plane = json::array();
    for (std::size_t q = 0; q < m; ++q) {
      json row = json::array();
      for (std::size_t d = 0; d < m; ++d) row.push_back(a.c(p, q, d).to_string());
      plane.push_back(std::move(row));
    }
    c.push_back(std::move(plane));
  }
  auto anchor = [&](bool left) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t p = 0; p < m; ++p) row.push_back((left ? a.rho1(i, p) : a.rho2(i, p)).to_string());
      rows.push_back(std::move(row));
    }
    return rows;
  };
  json j = {{"n", n}, {"m", m}, {"C", c}, {"rho1", anchor(true)}, {"rho2", anchor(false)}};
  if (!a.base_chart().param_names().empty()) j["params"] = a.base_chart().param_names();
  return j;
}

AlgebroidStructure structure_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("structure file must be a JSON object");
  for (const char* key : {"n", "m", "C", "rho1", "rho2"})
    if (!j.contains(key)) throw ParseError(std::string("structure file is missing '") + key + "'");
  const auto n = j.at("n").get<std::size_t>(), m = j.at("m").get<std::size_t>();
  if (n == 0 || m == 0) throw ParseError("structure dimensions must be positive");
  std::vector<std::string> params;
  if (j.contains("params")) params = j.at("params").get<std::vector<std::string>>();
  const Chart base = Chart::standard(n, 0, params);
  AlgebroidStructure a(base, m);
  const json& c = j.at("C");
  if (!c.is_array() || c.size() != m) throw ParseError("C must be an m x m x m array");
  for (std::size_t p = 0; p < m; ++p) {
    const auto rows = string_rows(c[p], m, m, "C[" + std::to_string(p) + "]");
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t d = 0; d < m; ++d) a.set_c(p, q, d, parse_poly(base, rows[q][d]));
  }
  a.parse_rho1(string_rows(j.at("rho1"), n, m, "rho1"));
  a.parse_rho2(string_rows(j.at("rho2"), n, m, "rho2"));
  return a;
}

json tensor_to_json(const TensorField2& t) { return t.to_strings(); }

TensorField2 tensor_from_json(const Chart& chart, const json& j) {
  return TensorField2::parse(chart, string_rows(j, chart.dim(), chart.dim(), "tensor"));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

} // namespace leibniz
