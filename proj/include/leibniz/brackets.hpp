#ifndef LEIBNIZ_BRACKETS_HPP
#define LEIBNIZ_BRACKETS_HPP

#include "leibniz/certificate.hpp"
#include "leibniz/tensor.hpp"

namespace leibniz {

/// [f, h] = (grad f)^T B (grad h), exact.
Poly bracket_apply(const TensorField2& b, const Poly& f, const Poly& h);

/// X_h with components B^{mu nu} d_nu h, so that X_h(f) = [f, h].
VectorFieldPoly hamiltonian_vf(const TensorField2& b, const Poly& h);

/// Two-Hamiltonian bracket [f, (h1, h2)] = first(df, dh1) + second(df, dh2).
/// Covers both the almost Leibniz bracket (P, g) and the almost
/// metriplectic algebroid bracket (Lambda1, Lambda2).
Poly two_hamiltonian_bracket(const TensorField2& first, const TensorField2& second, const Poly& f,
                             const Poly& h1, const Poly& h2);

/// Vector field X_{h1 h2} with component i = P-row-i . grad h1 + g-row-i . grad h2.
VectorFieldPoly two_hamiltonian_vf(const TensorField2& first, const TensorField2& second, const Poly& h1,
                                   const Poly& h2);
VectorFieldPoly almost_leibniz_vf(const MetriplecticPair& pair, const Poly& h1, const Poly& h2);

enum class BracketIdentity {
  derivation_first_slot,  // [fg, h] = [f, h] g + f [g, h]
  derivation_second_slot, // [f, gh] = g [f, h] + [f, g] h
  two_ham_derivation,     // [f1 f, (h1,h2)] = f1 [f,(h1,h2)] + f [f1,(h1,h2)]
  two_ham_scaling,        // [f, (l h1, l h2)] = l [f,(h1,h2)] + h1 first(df,dl) + h2 second(df,dl)
};

struct IdentityInputs {
  Poly f, f1, g, h, h1, h2, l;
};

/// Single-tensor identities (derivation_first_slot / derivation_second_slot).
Certificate derivation_identity_check(BracketIdentity id, const TensorField2& b, const IdentityInputs& in);
/// Two-tensor identities (two_ham_derivation / two_ham_scaling).
Certificate derivation_identity_check(BracketIdentity id, const TensorField2& first, const TensorField2& second,
                                      const IdentityInputs& in);

enum class Slot { first, second };

/// Which functions the free slot ranges over when testing annihilation.
enum class AnnihilatorScope {
  all_coordinates,  // every chart coordinate: certifies "for all f on the chart"
  base_coordinates, // base coordinates only: "for all f pulled back from the base"
};

/// Bracket values B(dh, dx^mu) (slot first) or B(dx^mu, dh) (slot second),
/// one per coordinate in scope.
std::vector<Poly> annihilator_residuals(const TensorField2& b, const Poly& h, Slot slot,
                                        AnnihilatorScope scope = AnnihilatorScope::all_coordinates);
bool annihilator_check(const TensorField2& b, const Poly& h, Slot slot,
                       AnnihilatorScope scope = AnnihilatorScope::all_coordinates);

/// Certifies first(dh2, .) = 0 and second(dh1, .) = 0, then
/// X_{h1 h2} = X_{h,h} for h = h1 + h2, exactly. Precondition failures name
/// the broken hypothesis.
Certificate prop2_equivalence_check(const TensorField2& first, const TensorField2& second, const Poly& h1,
                                    const Poly& h2);
Certificate prop2_equivalence_check(const MetriplecticPair& pair, const Poly& h1, const Poly& h2);

} // namespace leibniz

#endif
