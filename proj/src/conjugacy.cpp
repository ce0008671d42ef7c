#include "garside/conjugacy.hpp"

#include <algorithm>

namespace garside {

void validate_family(Family const& family) {
  if (family.empty()) {
    throw ConjugacyError(ConjugacyError::Kind::invalid_family, "empty family");
  }
  for (auto const& w : family) {
    if (w.source != w.target || w.source != family.front().source) {
      throw ConjugacyError(ConjugacyError::Kind::invalid_family,
                           "family members must be endomorphisms of one object");
    }
  }
}

bool is_conjugating(GermTable const& germ, Family const& family, Morphism const& x) {
  validate_family(family);
  if (x.source != family.front().source) {
    return false;
  }
  return std::all_of(family.begin(), family.end(), [&](Morphism const& w) {
    return divides_left(germ, x, multiply(germ, w, x));
  });
}

Morphism conj_apply(GermTable const& germ, Morphism const& w, Morphism const& x) {
  if (w.source != w.target || x.source != w.target) {
    throw ConjugacyError(ConjugacyError::Kind::not_conjugating,
                         "w must be an endomorphism of the source of x");
  }
  auto q = try_left_quotient(germ, x, multiply(germ, w, x));
  if (!q) {
    throw ConjugacyError(ConjugacyError::Kind::not_conjugating,
                         format(germ, x) + " does not left-divide "
                             + format(germ, w) + " * " + format(germ, x));
  }
  return *q;
}

Family conj_apply(GermTable const& germ, Family const& family, Morphism const& x) {
  validate_family(family);
  Family out;
  for (auto const& w : family) {
    out.push_back(conj_apply(germ, w, x));
  }
  return out;
}

std::vector<ConjSimple> conj_simples(GermTable const& germ, Family const& family) {
  validate_family(family);
  std::vector<ConjSimple> out;
  for (auto e : germ.elements_from(family.front().source)) {
    auto x = from_element(germ, e);
    if (is_conjugating(germ, family, x)) {
      out.push_back({e, conj_apply(germ, family, x)});
    }
  }
  return out;
}

ConjMorphism conj_morphism(GermTable const& germ, Family const& family,
                           Morphism const& x) {
  return {family, x, conj_apply(germ, family, x)};
}

Morphism conj_normal_form(GermTable const& germ, Family const& family,
                          Morphism const& x) {
  if (!is_conjugating(germ, family, x)) {
    throw ConjugacyError(ConjugacyError::Kind::not_conjugating,
                         format(germ, x) + " is not a conjugating morphism");
  }
  std::vector<ElementId> terms;
  Family                 current = family;
  Morphism               rest    = x;
  while (!rest.is_identity()) {
    auto const head = alpha(germ, rest);
    std::vector<ElementId> candidates;
    for (auto const& [p, target] : conj_simples(germ, current)) {
      if (germ.left_divides(p, head)) {
        candidates.push_back(p);
      }
    }
    auto best = *std::max_element(candidates.begin(), candidates.end(),
                                  [&](ElementId a, ElementId b) {
                                    return germ.divisor_count(a) < germ.divisor_count(b);
                                  });
    for (auto p : candidates) {
      if (!germ.left_divides(p, best)) {
        throw GermError(GermError::Kind::not_locally_garside,
                        "conjugating simples have no greatest element", {p, best});
      }
    }
    if (germ.is_identity(best)) {
      throw ConjugacyError(ConjugacyError::Kind::not_conjugating,
                           "no conjugating simple divides " + format(germ, rest));
    }
    auto step = from_element(germ, best);
    terms.push_back(best);
    current = conj_apply(germ, current, step);
    rest    = left_quotient(germ, step, rest);
  }
  return Morphism{x.source, x.target, std::move(terms)};
}

std::vector<ConjMorphism> enumerate_conj_morphisms(GermTable const& germ,
                                                   Family const&    family,
                                                   std::size_t      max_length) {
  validate_family(family);
  std::vector<ConjMorphism> out;
  for (auto const& x : enumerate_morphisms(germ, family.front().source, max_length)) {
    if (is_conjugating(germ, family, x)) {
      out.push_back(conj_morphism(germ, family, x));
    }
  }
  return out;
}

}  // namespace garside
