#include "garside/garside_structure.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace garside {

namespace {

  std::string name_of(GermTable const& germ, ObjectId o) {
    return std::string(germ.object_name(o));
  }

}  // namespace

GarsideStructure garside_from_deltas(GermTable const&           germ,
                                     std::span<ElementId const> deltas) {
  GarsideStructure gs;
  gs.delta.assign(deltas.begin(), deltas.end());
  if (gs.delta.size() != germ.object_count()) {
    throw GarsideError(GarsideError::Kind::not_a_simple,
                       "one Delta per object is required");
  }
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    gs.phi_obj.push_back(germ.target(gs.delta[o]));
  }
  auto const n = germ.element_count();
  gs.tilde.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    ElementId f{i};
    auto t = germ.right_complement(f, gs.delta[germ.source(f).index]);
    if (!t) {
      throw GarsideError(GarsideError::Kind::not_a_simple,
                         "'" + std::string(germ.label(f))
                             + "' does not left-divide Delta",
                         germ.source(f));
    }
    gs.tilde[i] = *t;
  }
  gs.phi_elem.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    gs.phi_elem[i] = gs.tilde[gs.tilde[i].index];
  }
  return gs;
}

GarsideStructure build_left_garside(GermTable const& germ) {
  std::vector<ElementId> deltas;
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    ObjectId                 obj{o};
    std::optional<ElementId> acc = germ.identity(obj);
    for (auto e : germ.elements_from(obj)) {
      acc = germ_lcm(germ, *acc, e);
      if (!acc) {
        throw GarsideError(GarsideError::Kind::no_global_lcm,
                           "germ elements from " + name_of(germ, obj)
                               + " have no common right multiple",
                           obj);
      }
    }
    deltas.push_back(*acc);
  }
  return garside_from_deltas(germ, deltas);
}

Morphism delta_morphism(GermTable const& germ, GarsideStructure const& gs,
                        ObjectId object) {
  return from_element(germ, gs.delta.at(object.index));
}

Morphism delta_power(GermTable const& germ, GarsideStructure const& gs,
                     ObjectId object, std::size_t n) {
  Morphism acc = identity_morphism(germ, object);
  for (std::size_t i = 0; i < n; ++i) {
    acc = multiply(germ, acc, delta_morphism(germ, gs, acc.target));
  }
  return acc;
}

Morphism apply_phi(GermTable const& germ, GarsideStructure const& gs,
                   Morphism const& m) {
  RawPath p{gs.phi_obj.at(m.source.index), {}};
  for (auto f : m.factors) {
    p.letters.push_back(gs.phi_elem.at(f.index));
  }
  return normal_form(germ, p);
}

CheckResult check_naturality(GermTable const& germ, GarsideStructure const& gs,
                             std::span<Morphism const> sample) {
  for (auto const& f : sample) {
    auto lhs = multiply(germ, f, delta_morphism(germ, gs, f.target));
    auto rhs = multiply(germ, delta_morphism(germ, gs, f.source),
                        apply_phi(germ, gs, f));
    if (lhs != rhs) {
      return {false, "f*Delta != Delta*Phi(f) for " + format(germ, f), {f}};
    }
  }
  return {};
}

std::size_t divides_delta_power(GermTable const&        germ,
                                GarsideStructure const& gs,
                                Morphism const&         m) {
  for (std::size_t n = 0; n <= m.length(); ++n) {
    if (divides_left(germ, m, delta_power(germ, gs, m.source, n))) {
      return n;
    }
  }
  throw GarsideError(GarsideError::Kind::not_a_simple,
                     format(germ, m) + " divides no Delta^n with n <= its length");
}

void require_phi_bijective(GermTable const& germ, GarsideStructure const& gs) {
  std::set<ObjectId> objects(gs.phi_obj.begin(), gs.phi_obj.end());
  if (objects.size() != germ.object_count()) {
    throw GarsideError(GarsideError::Kind::phi_not_bijective,
                       "Phi is not a bijection on objects");
  }
  std::set<ElementId> elements(gs.phi_elem.begin(), gs.phi_elem.end());
  if (elements.size() != germ.element_count()) {
    throw GarsideError(GarsideError::Kind::phi_not_bijective,
                       "Phi is not a bijection on simples");
  }
}

namespace {

  // rdiv[s][m]: the small morphism s right-divides the window morphism m.
  struct RightDivisibility {
    std::vector<Morphism>           small;
    std::vector<Morphism>           window;
    std::vector<std::vector<bool>>  rdiv;
    std::map<Morphism, std::size_t> window_index;
  };

  RightDivisibility right_divisibility(GermTable const& germ, std::size_t bound) {
    RightDivisibility r;
    for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
      for (auto& m : enumerate_morphisms(germ, ObjectId{o}, 2 * bound)) {
        if (m.length() <= bound) {
          r.small.push_back(m);
        }
        r.window.push_back(std::move(m));
      }
    }
    for (std::size_t i = 0; i < r.window.size(); ++i) {
      r.window_index.emplace(r.window[i], i);
    }
    r.rdiv.assign(r.small.size(), std::vector<bool>(r.window.size(), false));
    for (std::size_t s = 0; s < r.small.size(); ++s) {
      for (auto const& u : r.window) {
        if (u.target != r.small[s].source) {
          continue;
        }
        auto m = multiply(germ, u, r.small[s]);
        if (auto it = r.window_index.find(m); it != r.window_index.end()) {
          r.rdiv[s][it->second] = true;
        }
      }
    }
    return r;
  }

  bool right_divides_germ(GermTable const& germ, ElementId t, ElementId e) {
    return std::any_of(germ.factorizations(e).begin(),
                       germ.factorizations(e).end(),
                       [&](Factorization const& f) { return f.right == t; });
  }

}  // namespace

CheckResult check_garside_bilatere(GermTable const&        germ,
                                   GarsideStructure const& gs,
                                   std::size_t             bound) {
  require_phi_bijective(germ, gs);
  auto const n = germ.element_count();

  // Left divisors of Delta are right divisors of Delta.
  for (std::uint32_t i = 0; i < n; ++i) {
    ElementId f{i};
    bool      right = false;
    for (std::uint32_t o = 0; o < germ.object_count() && !right; ++o) {
      right = right_divides_germ(germ, f, gs.delta[o]);
    }
    if (!right) {
      return {false,
              "'" + std::string(germ.label(f)) + "' is not a right divisor of Delta",
              {from_element(germ, f)}};
    }
  }

  // g <= f iff tilde(g) is a right multiple of tilde(f).
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      ElementId f{i}, g{j};
      if (germ.source(f) != germ.source(g)) {
        continue;
      }
      bool left  = germ.left_divides(g, f);
      bool right = right_divides_germ(germ, gs.tilde[i], gs.tilde[j]);
      if (left != right) {
        return {false, "complement transport fails",
                {from_element(germ, g), from_element(germ, f)}};
      }
    }
  }

  auto r = right_divisibility(germ, bound);
  auto const& small = r.small;

  // Right cancellation: x*s = y*s implies x = y, for simples s.
  for (std::size_t x = 0; x < small.size(); ++x) {
    for (std::size_t y = x + 1; y < small.size(); ++y) {
      if (small[x].source != small[y].source
          || small[x].target != small[y].target) {
        continue;
      }
      for (auto s : germ.elements_from(small[x].target)) {
        auto sm = from_element(germ, s);
        if (multiply(germ, small[x], sm) == multiply(germ, small[y], sm)) {
          return {false, "right cancellation fails", {small[x], small[y], sm}};
        }
      }
    }
  }

  std::map<Morphism, std::size_t> small_index;
  for (std::size_t i = 0; i < small.size(); ++i) {
    small_index.emplace(small[i], i);
  }
  auto in_window = [&](std::size_t s) {
    return r.window_index.at(small[s]);
  };
  for (std::size_t x = 0; x < small.size(); ++x) {
    for (std::size_t y = x + 1; y < small.size(); ++y) {
      if (small[x].target != small[y].target) {
        continue;
      }
      // Left lcm: a common left multiple right-dividing all others.
      std::vector<std::size_t> common;
      for (std::size_t m = 0; m < r.window.size(); ++m) {
        if (r.rdiv[x][m] && r.rdiv[y][m]) {
          common.push_back(m);
        }
      }
      bool has_lcm = false;
      for (auto m : common) {
        auto it = small_index.find(r.window[m]);
        if (it == small_index.end()) {
          continue;
        }
        if (std::all_of(common.begin(), common.end(),
                        [&](std::size_t k) { return r.rdiv[it->second][k]; })) {
          has_lcm = true;
          break;
        }
      }
      if (common.empty()) {
        return {false, "no common left multiple", {small[x], small[y]}};
      }
      if (!has_lcm) {
        return {false, "no left lcm", {small[x], small[y]}};
      }
      // Right gcd: a common right divisor right-divisible by all others.
      std::vector<std::size_t> divisors;
      for (std::size_t d = 0; d < small.size(); ++d) {
        if (r.rdiv[d][in_window(x)] && r.rdiv[d][in_window(y)]) {
          divisors.push_back(d);
        }
      }
      bool has_gcd = std::any_of(divisors.begin(), divisors.end(), [&](auto d) {
        return std::all_of(divisors.begin(), divisors.end(), [&](auto k) {
          return r.rdiv[k][in_window(d)];
        });
      });
      if (!has_gcd) {
        return {false, "no right gcd", {small[x], small[y]}};
      }
    }
  }
  return {true, "checked " + std::to_string(small.size()) + " morphisms", {}};
}

Subgerm minimal_simples(GermTable const& germ) {
  std::vector<bool> in(germ.element_count(), false);
  std::vector<ElementId> set;
  auto add = [&](ElementId e) {
    if (!in[e.index]) {
      in[e.index] = true;
      set.push_back(e);
      return true;
    }
    return false;
  };
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    add(germ.identity(ObjectId{o}));
  }
  for (auto a : germ_atoms(germ)) {
    add(a);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      auto e = set[i];
      for (auto const& f : germ.factorizations(e)) {
        changed |= add(f.left);
        changed |= add(f.right);
      }
    }
    auto const snapshot = set;
    for (auto x : snapshot) {
      for (auto y : snapshot) {
        if (y <= x || germ.source(x) != germ.source(y)) {
          continue;
        }
        if (auto l = germ_lcm(germ, x, y)) {
          changed |= add(*l);
        }
      }
    }
  }
  std::vector<ObjectId> objects;
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    objects.push_back(ObjectId{o});
  }
  std::sort(set.begin(), set.end());
  return restricted_subgerm(germ, objects, set);
}

}  // namespace garside
