#ifndef LEIBNIZ_CATALOG_HPP
#define LEIBNIZ_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leibniz/algebroid.hpp"
#include "leibniz/certificate.hpp"
#include "leibniz/dynamics.hpp"

namespace leibniz {

enum class EntryKind { leibniz_bracket, metriplectic_pair, almost_leibniz, algebroid, metriplectic_algebroid };
const char* to_string(EntryKind k);
EntryKind entry_kind_from_string(const std::string& s);

using ParamValues = std::map<std::string, Rational>;

struct ParamSpec {
  std::string name;
  Rational default_value;
  std::string constraint;
};

struct EntrySummary {
  std::string name;
  EntryKind kind;
  std::string description;
  std::string chart;
  std::vector<ParamSpec> params;
};

/// A transcribed reference value next to the value the library derived for it.
struct StructureReference {
  std::string label;
  Poly derived;
  Poly printed;
};

struct Observable {
  std::string label;
  Poly expr;
};

/// Fully built catalog system. Structures, hamiltonians and the transcribed
/// reference right-hand side share one chart. The reference right-hand side
/// is kept exactly as published, misprints included.
struct CatalogEntry {
  std::string name;
  EntryKind kind;
  std::string description;
  ParamValues params;   // bound values
  Chart chart;          // system chart (base, or dual bundle for algebroid kinds)

  std::optional<TensorField2> tensor;           // leibniz_bracket
  std::optional<MetriplecticPair> pair;         // metriplectic_pair, almost_leibniz
  std::vector<AlgebroidStructure> algebroids;   // 1 for algebroid, 2 for metriplectic_algebroid
  std::vector<Poly> hamiltonians;               // 1 or 2

  std::vector<Poly> printed_rhs;
  std::vector<StructureReference> structure_refs;
  /// Catalog entry whose derived system must equal this entry's base-coordinate part.
  std::optional<std::string> base_part_matches;

  std::vector<double> x0;
  double t_end = 20.0;
  std::vector<Observable> observables;
  std::vector<std::string> notes;

  /// Right-hand side derived from the structure and hamiltonians.
  OdeSystem derive() const;
};

std::vector<EntrySummary> catalog_list();

/// Builds an entry. Missing parameters take their defaults unless
/// `keep_unbound_symbolic` is set, in which case they stay symbolic and the
/// entry can only be verified, not integrated. Throws ParameterError on an
/// unknown name, unknown parameter or violated constraint.
CatalogEntry catalog_build(const std::string& name, const ParamValues& values = {},
                           bool keep_unbound_symbolic = false);

struct ComponentDiff {
  std::string component;
  Poly derived;
  Poly printed;
  Poly residual; // derived - printed
  bool match() const { return residual.is_zero(); }
};

struct CheckOutcome {
  Certificate certificate;
  bool required = true; // informational outcomes never fail verification
};

struct VerifyReport {
  std::string name;
  std::vector<ComponentDiff> components;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> notes;

  bool components_match() const;
  std::size_t mismatch_count() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Derives the system and diffs it against the transcribed reference, and
/// runs every structure certification that applies to the entry's kind.
VerifyReport catalog_verify(const CatalogEntry& entry);
/// Verifies with all parameters left symbolic.
VerifyReport catalog_verify(const std::string& name);

/// Entry as a self-contained JSON document (structures in the algebroid
/// structure-file format) and back.
nlohmann::json entry_to_json(const CatalogEntry& entry);
CatalogEntry entry_from_json(const nlohmann::json& j);

} // namespace leibniz

#endif
