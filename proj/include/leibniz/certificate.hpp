#ifndef LEIBNIZ_CERTIFICATE_HPP
#define LEIBNIZ_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "leibniz/poly.hpp"

namespace leibniz {

/// Outcome of one exact identity: LHS - RHS and whether it is the zero polynomial.
struct IdentityCheck {
  std::string identity;
  bool pass = false;
  std::optional<Poly> residual; // set on failure
};

/// Collection of exact checks plus free-form notes. A certificate whose
/// precondition failed carries the reason and no checks.
struct Certificate {
  std::string subject;
  std::vector<IdentityCheck> checks;
  std::vector<std::string> notes;
  std::optional<std::string> precondition_failure;

  bool pass() const;
  void add(std::string identity, const Poly& lhs_minus_rhs);
  void merge(const Certificate& other);
  std::string report() const;
};

} // namespace leibniz

#endif
