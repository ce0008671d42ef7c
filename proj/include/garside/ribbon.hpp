#pragma once

// The ribbon category of a generator subset I0: objects are the conjugates of
// I0 inside S, and (I, w, J) is a morphism I -> J when w J w^-1 = I and no s
// in I shortens w from the left.

#include <map>
#include <vector>

#include "garside/coxeter.hpp"
#include "garside/garside_structure.hpp"

namespace garside {

struct RibbonElement {
  GeneratorSet source;
  WElement     w;
  GeneratorSet target;

  friend auto operator<=>(RibbonElement const&, RibbonElement const&) = default;
};

struct RibbonGerm {
  CoxeterSystem               cox;
  GermTable                   germ;
  std::vector<GeneratorSet>   objects;   // by object index
  std::vector<RibbonElement>  elements;  // by element index
  std::map<GeneratorSet, ObjectId>       object_index;
  std::map<RibbonElement, ElementId>     element_index;

  ObjectId  object(GeneratorSet I) const { return object_index.at(I); }
  ElementId element(RibbonElement const& e) const { return element_index.at(e); }
};

// Closure of {I0} under the moves I -> J of the elementary conjugators
// v(alpha, I), sorted.
std::vector<GeneratorSet> ribbon_orbit(CoxeterSystem const& cox, GeneratorSet I0);

// Requires W finite.  (I, w, J)(J, w', K) = (I, ww', K) when lengths add.
RibbonGerm build_ribbon_germ(CoxeterSystem const& cox, GeneratorSet I0);

// "(" I "," w "," J ")", e.g. "({s1},s2s1,{s2})".
std::string ribbon_label(CoxeterSystem const& cox, RibbonElement const& e);

// Axiom report with G4 recorded as inherited from the embedding into the
// Artin monoid, which is injective and compatible with products.
AxiomReport check_ribbon_germ(RibbonGerm const& rg);

// The (J, v(alpha, I), I) that are not proper right multiples of another one.
std::vector<ElementId> ribbon_atoms(RibbonGerm const& rg);

// The Artin monoid morphism underlying a ribbon morphism.
Morphism to_ambient(RibbonGerm const& rg, LiftGerm const& ambient,
                    Morphism const& m);

// Walks the normal form of b in the Artin monoid from I and checks that each
// term (I_i, w_i, I_{i+1}) is an element of the ribbon germ.
CheckResult ribbon_nf_stays_ribbon(RibbonGerm const& rg, LiftGerm const& ambient,
                                   GeneratorSet I, Morphism const& b);

// Delta_J = (J, w_J w_S, w_S J w_S).  Throws CoxeterError(not_spherical) for
// infinite W.
GarsideStructure spherical_garside(RibbonGerm const& rg);

}  // namespace garside
