#include <algorithm>
#include <unordered_map>

#include "garside/category.hpp"
#include "garside/germ.hpp"

namespace garside {

std::optional<ElementId> Subgerm::from_parent(ElementId e) const {
  auto it = std::find(to_parent.begin(), to_parent.end(), e);
  if (it == to_parent.end()) {
    return std::nullopt;
  }
  return ElementId{static_cast<std::uint32_t>(it - to_parent.begin())};
}

namespace {

  bool stable_by_complement(GermTable const& parent,
                            std::vector<bool> const& member) {
    for (std::uint32_t i = 0; i < parent.element_count(); ++i) {
      if (!member[i]) {
        continue;
      }
      for (auto const& f : parent.factorizations(ElementId{i})) {
        if (member[f.left.index] && !member[f.right.index]) {
          return false;
        }
      }
    }
    return true;
  }

  bool has_common_multiple_in(GermTable const& parent,
                              std::vector<bool> const& member, ElementId x,
                              ElementId y) {
    for (auto const& rp : parent.right_products(x)) {
      if (member[rp.right.index] && member[rp.result.index]) {
        for (auto const& f : parent.factorizations(rp.result)) {
          if (f.left == y && member[f.right.index]) {
            return true;
          }
        }
      }
    }
    return false;
  }

  bool stable_by_lcm(GermTable const& parent, std::vector<bool> const& member,
                     std::vector<ElementId> const& elements) {
    for (auto x : elements) {
      for (auto y : elements) {
        if (y <= x || parent.source(x) != parent.source(y)
            || !has_common_multiple_in(parent, member, x, y)) {
          continue;
        }
        auto l = germ_lcm(parent, x, y);
        if (!l || !member[l->index]) {
          return false;
        }
      }
    }
    return true;
  }

  bool stable_by_alpha2(GermTable const& parent, std::vector<bool> const& member,
                        std::vector<ElementId> const& elements) {
    for (auto x : elements) {
      for (auto y : elements) {
        if (parent.target(x) == parent.source(y)
            && !member[alpha2(parent, x, y).index]) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

namespace {

Subgerm make_subgerm(GermTable const& germ, std::span<ObjectId const> objects,
                     std::span<ElementId const> elements, bool require_closed) {
  std::vector<bool> object_member(germ.object_count(), false);
  for (auto o : objects) {
    object_member.at(o.index) = true;
  }
  std::vector<bool>      member(germ.element_count(), false);
  std::vector<ElementId> chosen(elements.begin(), elements.end());
  for (auto o : objects) {
    chosen.push_back(germ.identity(o));
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (auto e : chosen) {
    if (!object_member[germ.source(e).index]
        || !object_member[germ.target(e).index]) {
      throw GermError(GermError::Kind::not_closed,
                      "'" + std::string(germ.label(e))
                          + "' leaves the chosen objects",
                      {e});
    }
    member[e.index] = true;
  }
  for (auto a : chosen) {
    for (auto const& rp : germ.right_products(a)) {
      if (require_closed && member[rp.right.index]
          && !member[rp.result.index]) {
        throw GermError(GermError::Kind::not_closed,
                        "product " + std::string(germ.label(a)) + "*"
                            + std::string(germ.label(rp.right))
                            + " escapes the subgerm",
                        {a, rp.right, rp.result});
      }
    }
  }

  Subgerm out;
  GermTable::Builder b;
  std::unordered_map<ObjectId, ObjectId> object_map;
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    if (object_member[o]) {
      object_map[ObjectId{o}] = b.add_object(std::string(germ.object_name(ObjectId{o})));
      out.object_to_parent.push_back(ObjectId{o});
    }
  }
  std::unordered_map<ElementId, ElementId> element_map;
  for (auto e : chosen) {
    auto const& el = germ.element(e);
    element_map[e] = b.add_element(std::string(germ.label(e)),
                                   object_map.at(el.source),
                                   object_map.at(el.target), el.is_identity);
    out.to_parent.push_back(e);
  }
  for (auto const& [x, y, z] : germ.explicit_products()) {
    if (member[x.index] && member[y.index] && member[z.index]) {
      b.add_product(element_map.at(x), element_map.at(y), element_map.at(z));
    }
  }
  for (auto const& note : germ.notes()) {
    b.add_note(note);
  }
  out.germ                 = b.finish(!require_closed);
  out.stable_by_complement = stable_by_complement(germ, member);
  out.stable_by_lcm        = stable_by_lcm(germ, member, chosen);
  out.stable_by_alpha2     = stable_by_alpha2(germ, member, chosen);
  return out;
}

}  // namespace

Subgerm subgerm(GermTable const& germ, std::span<ObjectId const> objects,
                std::span<ElementId const> elements) {
  return make_subgerm(germ, objects, elements, true);
}

Subgerm restricted_subgerm(GermTable const&           germ,
                           std::span<ObjectId const>  objects,
                           std::span<ElementId const> elements) {
  return make_subgerm(germ, objects, elements, false);
}

GermAutomorphism automorphism_from_atoms(
    GermTable const&                                  germ,
    std::span<std::pair<ElementId, ElementId> const> atom_images) {
  auto const n = germ.element_count();
  constexpr std::uint32_t unset = ~std::uint32_t{0};
  GermAutomorphism sigma;
  sigma.on_elements.assign(n, ElementId{unset});
  sigma.on_objects.assign(germ.object_count(), ObjectId{unset});

  auto bind_object = [&](ObjectId from, ObjectId to) {
    auto& slot = sigma.on_objects[from.index];
    if (slot.index != unset && slot != to) {
      throw GermError(GermError::Kind::not_an_automorphism,
                      "objects are not mapped consistently");
    }
    slot = to;
  };
  for (auto const& [a, image] : atom_images) {
    sigma.on_elements.at(a.index) = image;
    bind_object(germ.source(a), germ.source(image));
    bind_object(germ.target(a), germ.target(image));
  }
  for (auto a : germ_atoms(germ)) {
    if (sigma.on_elements[a.index].index == unset) {
      throw GermError(GermError::Kind::not_an_automorphism,
                      "no image given for atom '" + std::string(germ.label(a))
                          + "'",
                      {a});
    }
  }
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    if (sigma.on_objects[o].index == unset) {
      sigma.on_objects[o] = ObjectId{o};
    }
  }
  std::vector<ElementId> order;
  for (std::uint32_t i = 0; i < n; ++i) {
    order.push_back(ElementId{i});
  }
  germ.sort_for_display(order);
  for (auto e : order) {
    if (sigma.on_elements[e.index].index != unset) {
      continue;
    }
    if (germ.is_identity(e)) {
      sigma.on_elements[e.index] =
          germ.identity(sigma.on_objects[germ.source(e).index]);
      continue;
    }
    // e = a * rest with a an atom and rest of smaller rank.
    std::optional<ElementId> image;
    for (auto const& f : germ.factorizations(e)) {
      if (germ.is_identity(f.left) || f.left == e
          || germ.display_rank(f.right) >= germ.display_rank(e)
          || sigma.on_elements[f.right.index].index == unset
          || sigma.on_elements[f.left.index].index == unset) {
        continue;
      }
      image = germ.product(sigma.on_elements[f.left.index],
                           sigma.on_elements[f.right.index]);
      if (!image) {
        throw GermError(GermError::Kind::not_an_automorphism,
                        "image of '" + std::string(germ.label(e))
                            + "' is not a germ element",
                        {e});
      }
      break;
    }
    if (!image) {
      throw GermError(GermError::Kind::not_an_automorphism,
                      "'" + std::string(germ.label(e))
                          + "' is not generated by atoms",
                      {e});
    }
    sigma.on_elements[e.index] = *image;
  }
  validate_automorphism(germ, sigma);
  return sigma;
}

void validate_automorphism(GermTable const& germ, GermAutomorphism const& sigma) {
  auto const n = germ.element_count();
  auto fail    = [&](std::string const& what, std::vector<ElementId> w = {}) {
    throw GermError(GermError::Kind::not_an_automorphism, what, std::move(w));
  };
  if (sigma.on_elements.size() != n
      || sigma.on_objects.size() != germ.object_count()) {
    fail("automorphism has the wrong size");
  }
  std::vector<bool> hit(n, false), hit_object(germ.object_count(), false);
  for (auto o : sigma.on_objects) {
    if (o.index >= germ.object_count() || hit_object[o.index]) {
      fail("object map is not a bijection");
    }
    hit_object[o.index] = true;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    ElementId e{i};
    auto      s = sigma.on_elements[i];
    if (s.index >= n || hit[s.index]) {
      fail("element map is not a bijection", {e});
    }
    hit[s.index] = true;
    if (germ.source(s) != sigma.on_objects[germ.source(e).index]
        || germ.target(s) != sigma.on_objects[germ.target(e).index]
        || germ.is_identity(s) != germ.is_identity(e)) {
      fail("'" + std::string(germ.label(e))
               + "' is not mapped compatibly with objects",
           {e});
    }
  }
  // On a finite table a product-preserving bijection also reflects products.
  for (std::uint32_t i = 0; i < n; ++i) {
    for (auto const& rp : germ.right_products(ElementId{i})) {
      auto p = germ.product(sigma.on_elements[i],
                            sigma.on_elements[rp.right.index]);
      if (!p || *p != sigma.on_elements[rp.result.index]) {
        fail("product is not preserved", {ElementId{i}, rp.right, rp.result});
      }
    }
  }
}

Subgerm fixed_subgerm(GermTable const& germ, GermAutomorphism const& sigma) {
  validate_automorphism(germ, sigma);
  std::vector<ObjectId>  objects;
  std::vector<ElementId> elements;
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    if (sigma.on_objects[o] == ObjectId{o}) {
      objects.push_back(ObjectId{o});
    }
  }
  for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
    if (sigma.on_elements[i] == ElementId{i}) {
      elements.push_back(ElementId{i});
    }
  }
  return subgerm(germ, objects, elements);
}

}  // namespace garside
