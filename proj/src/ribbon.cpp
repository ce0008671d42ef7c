#include "garside/ribbon.hpp"

#include <algorithm>
#include <set>

namespace garside {

std::vector<GeneratorSet> ribbon_orbit(CoxeterSystem const& cox, GeneratorSet I0) {
  std::set<GeneratorSet>    seen{I0};
  std::vector<GeneratorSet> todo{I0};
  while (!todo.empty()) {
    auto I = todo.back();
    todo.pop_back();
    for (std::size_t a = 0; a < cox.rank(); ++a) {
      if (I.contains(a) || !cox.is_spherical(I.with(a))) {
        continue;
      }
      auto J = v_alpha_I(cox, a, I).J;
      if (seen.insert(J).second) {
        todo.push_back(J);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::string ribbon_label(CoxeterSystem const& cox, RibbonElement const& e) {
  return "(" + cox.format(e.source) + "," + cox.format(e.w) + ","
         + cox.format(e.target) + ")";
}

RibbonGerm build_ribbon_germ(CoxeterSystem const& cox, GeneratorSet I0) {
  if (!cox.is_finite()) {
    throw CoxeterError(CoxeterError::Kind::infinite_without_bound,
                       "the ribbon germ needs a finite W");
  }
  auto const lift  = lift_germ(cox);
  auto const orbit = ribbon_orbit(cox, I0);
  RibbonGerm rg{cox, {}, orbit, {}, {}, {}};

  GermTable::Builder b;
  for (auto I : orbit) {
    rg.object_index.emplace(I, b.add_object(cox.format(I)));
  }
  for (auto I : orbit) {
    for (auto const& w : lift.elements) {
      if (!is_I_reduced(cox, I, w)) {
        continue;
      }
      auto J = cox.conjugate(cox.inverse(w), I);
      if (!J) {
        continue;
      }
      RibbonElement e{I, w, *J};
      auto id = b.add_element(ribbon_label(cox, e), rg.object(I), rg.object(*J),
                              w.word.empty());
      rg.elements.push_back(e);
      rg.element_index.emplace(e, id);
    }
  }
  for (auto const& x : rg.elements) {
    if (x.w.word.empty()) {
      continue;
    }
    for (auto const& y : rg.elements) {
      if (y.source != x.target || y.w.word.empty() || !cox.lengths_add(x.w, y.w)) {
        continue;
      }
      // Length additivity keeps the product reduced on the left by x.source.
      RibbonElement z{x.source, cox.multiply(x.w, y.w), y.target};
      b.add_product(rg.element(x), rg.element(y), rg.element(z));
    }
  }
  rg.germ = b.finish();
  return rg;
}

AxiomReport check_ribbon_germ(RibbonGerm const& rg) {
  return check_locally_garside(
      rg.germ, G4Strategy::assume("inherited from the injective, product-compatible "
                                  "embedding into the Artin monoid"));
}

std::vector<ElementId> ribbon_atoms(RibbonGerm const& rg) {
  auto const& cox = rg.cox;
  std::set<ElementId> candidates;
  for (auto I : rg.objects) {
    for (std::size_t a = 0; a < cox.rank(); ++a) {
      if (I.contains(a) || !cox.is_spherical(I.with(a))) {
        continue;
      }
      auto v = v_alpha_I(cox, a, I);
      candidates.insert(rg.element(RibbonElement{v.J, v.v, I}));
    }
  }
  std::vector<ElementId> out;
  for (auto c : candidates) {
    bool multiple = std::any_of(candidates.begin(), candidates.end(), [&](ElementId d) {
      return d != c && rg.germ.left_divides(d, c);
    });
    if (!multiple) {
      out.push_back(c);
    }
  }
  return out;
}

Morphism to_ambient(RibbonGerm const& rg, LiftGerm const& ambient,
                    Morphism const& m) {
  RawPath p{ObjectId{0}, {}};
  for (auto f : m.factors) {
    p.letters.push_back(ambient.element(rg.elements[f.index].w));
  }
  return normal_form(ambient.germ, p);
}

CheckResult ribbon_nf_stays_ribbon(RibbonGerm const& rg, LiftGerm const& ambient,
                                   GeneratorSet I, Morphism const& b) {
  auto const& cox = rg.cox;
  auto        cur = I;
  if (!rg.object_index.contains(cur)) {
    return {false, cox.format(I) + " is not in the orbit", {b}};
  }
  for (std::size_t i = 0; i < b.factors.size(); ++i) {
    auto const& w = ambient.elements[b.factors[i].index];
    auto next     = cox.conjugate(cox.inverse(w), cur);
    if (!next || !is_I_reduced(cox, cur, w)
        || !rg.element_index.contains(RibbonElement{cur, w, *next})) {
      return {false,
              "normal form term " + std::to_string(i + 1) + " (" + cox.format(w)
                  + " from " + cox.format(cur) + ") is not a ribbon element",
              {b}};
    }
    cur = *next;
  }
  return {true, "all " + std::to_string(b.factors.size()) + " terms are ribbon", {}};
}

GarsideStructure spherical_garside(RibbonGerm const& rg) {
  auto const& cox = rg.cox;
  if (!cox.is_finite()) {
    throw CoxeterError(CoxeterError::Kind::not_spherical, "W is infinite");
  }
  auto const w_S = w_parabolic_longest(cox, cox.all());
  std::vector<ElementId> deltas;
  for (auto J : rg.objects) {
    auto bar = cox.conjugate(w_S, J);
    RibbonElement delta{J, cox.multiply(w_parabolic_longest(cox, J), w_S), *bar};
    deltas.push_back(rg.element(delta));
  }
  return garside_from_deltas(rg.germ, deltas);
}

}  // namespace garside
