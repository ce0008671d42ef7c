#pragma once

// Left Garside structures synthesised from a germ: Delta per object, the
// functor Phi and the complements tilde(f) with f * tilde(f) = Delta.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "garside/category.hpp"
#include "garside/germ.hpp"

namespace garside {

class GarsideError : public std::runtime_error {
 public:
  enum class Kind { no_global_lcm, phi_not_bijective, not_a_simple };

  GarsideError(Kind kind, std::string const& what,
               std::optional<ObjectId> object = std::nullopt)
      : std::runtime_error(what), kind_(kind), object_(object) {}
  Kind                    kind() const noexcept { return kind_; }
  std::optional<ObjectId> object() const noexcept { return object_; }

 private:
  Kind                    kind_;
  std::optional<ObjectId> object_;
};

struct GarsideStructure {
  // Indexed by object.
  std::vector<ElementId> delta;
  std::vector<ObjectId>  phi_obj;
  // Indexed by germ element; every element of the germ is a simple here.
  std::vector<ElementId> phi_elem;
  std::vector<ElementId> tilde;
};

struct CheckResult {
  bool                    ok = true;
  std::string             detail;
  std::vector<Morphism>   witness;
};

// Delta_A is the right lcm of all germ elements with source A.  Throws
// GarsideError(no_global_lcm) when they have no common right multiple.
GarsideStructure build_left_garside(GermTable const& germ);

// Builds the structure from given Delta elements; tilde and Phi follow.
GarsideStructure garside_from_deltas(GermTable const&           germ,
                                     std::span<ElementId const> deltas);

Morphism delta_morphism(GermTable const& germ, GarsideStructure const& gs,
                        ObjectId object);
// Delta_A Delta_{Phi(A)} ... with n factors.
Morphism delta_power(GermTable const& germ, GarsideStructure const& gs,
                     ObjectId object, std::size_t n);
// Phi applied factorwise, then normalised.
Morphism apply_phi(GermTable const& germ, GarsideStructure const& gs,
                   Morphism const& m);

// f * Delta_{target f} = Delta_{source f} * Phi(f) for each sample morphism.
CheckResult check_naturality(GermTable const& germ, GarsideStructure const& gs,
                             std::span<Morphism const> sample);

// Least n <= length(m) with m a left divisor of Delta^n.
std::size_t divides_delta_power(GermTable const& germ,
                                GarsideStructure const& gs, Morphism const& m);

// Throws GarsideError(phi_not_bijective) unless Phi is a bijection on
// objects and elements.
void require_phi_bijective(GermTable const& germ, GarsideStructure const& gs);

// Right cancellation, right lcms and right gcds on all morphisms of length
// at most bound, plus the complement transport on simples.
CheckResult check_garside_bilatere(GermTable const&        germ,
                                   GarsideStructure const& gs,
                                   std::size_t             bound);

// Least set of germ elements containing the atoms and stable by left and
// right factors and right lcms; products are those of the germ that stay
// inside the set.
Subgerm minimal_simples(GermTable const& germ);

}  // namespace garside
