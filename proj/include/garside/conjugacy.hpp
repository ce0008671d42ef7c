#pragma once

// The simultaneous conjugacy category of C(P).  Objects are families of
// endomorphisms of one object; x : F -> F^x is a morphism when x <= w x for
// every w in F, and then w x = x w^x.

#include <stdexcept>
#include <vector>

#include "garside/category.hpp"

namespace garside {

class ConjugacyError : public std::runtime_error {
 public:
  enum class Kind { invalid_family, not_conjugating };

  ConjugacyError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

using Family = std::vector<Morphism>;

// Throws ConjugacyError(invalid_family) unless the family is nonempty and
// made of endomorphisms of one object.
void validate_family(Family const& family);

bool is_conjugating(GermTable const& germ, Family const& family, Morphism const& x);

// The w' with w x = x w'.
Morphism conj_apply(GermTable const& germ, Morphism const& w, Morphism const& x);
Family   conj_apply(GermTable const& germ, Family const& family, Morphism const& x);

struct ConjSimple {
  ElementId simple;
  Family    target;
};
// Germ elements p with p <= w p for every w in the family.
std::vector<ConjSimple> conj_simples(GermTable const& germ, Family const& family);

struct ConjMorphism {
  Family   source;
  Morphism x;
  Family   target;
};
ConjMorphism conj_morphism(GermTable const& germ, Family const& family,
                           Morphism const& x);

// Greedy normal form built from conjugating simples only: each term is the
// greatest conjugating simple dividing what is left.
Morphism conj_normal_form(GermTable const& germ, Family const& family,
                          Morphism const& x);

// Conjugating morphisms out of the family with at most max_length normal
// form terms.
std::vector<ConjMorphism> enumerate_conj_morphisms(GermTable const& germ,
                                                   Family const&    family,
                                                   std::size_t      max_length);

}  // namespace garside
