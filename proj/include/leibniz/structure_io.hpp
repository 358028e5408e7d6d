#ifndef LEIBNIZ_STRUCTURE_IO_HPP
#define LEIBNIZ_STRUCTURE_IO_HPP

#include <string>

#include <json.hpp>

#include "leibniz/algebroid.hpp"

namespace leibniz {

/// Structure file layout:
///   { "n": 3, "m": 3,
///     "C":    m x m x m array, C[a][b][d] = C_{ab}^d as polynomial strings,
///     "rho1": n x m array, entry [i][a] = rho1^i_a,
///     "rho2": n x m array,
///     "params": [names]   (optional) }
/// Base coordinates are x1..xn and fiber coordinates xi1..xim.
nlohmann::json structure_to_json(const AlgebroidStructure& a);
AlgebroidStructure structure_from_json(const nlohmann::json& j);

nlohmann::json tensor_to_json(const TensorField2& t);
TensorField2 tensor_from_json(const Chart& chart, const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace leibniz

#endif
