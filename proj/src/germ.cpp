#include "garside/germ.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "detail.hpp"

namespace garside {

GermError::GermError(Kind kind, std::string const& what,
                     std::vector<ElementId> witness)
    : std::runtime_error(what), kind_(kind), witness_(std::move(witness)) {}

struct GermTable::Data {
  std::vector<std::string> object_names;
  std::vector<GermElement> elements;
  std::vector<std::string> labels;
  std::vector<ElementId>   identity_of;

  std::unordered_map<std::uint64_t, ElementId> product;
  std::unordered_map<std::uint64_t, ElementId> complement;

  std::vector<std::vector<RightProduct>>  right_products;
  std::vector<std::vector<LeftProduct>>   left_products;
  std::vector<std::vector<Factorization>> factorizations;
  std::vector<std::vector<ElementId>>     from_object;
  std::vector<std::vector<ElementId>>     to_object;
  std::vector<std::size_t>                divisor_count;
  std::vector<std::uint32_t>              rank;

  std::unordered_map<std::string, ElementId> by_label;
  std::unordered_map<std::string, ObjectId>  by_name;

  std::vector<std::array<ElementId, 3>> explicit_products;
  std::vector<std::string>              notes;
};

namespace {

  constexpr std::uint32_t kUnranked = std::numeric_limits<std::uint32_t>::max();

}  // namespace

GermTable::GermTable() : GermTable(GermTable::Builder().finish()) {}

GermTable::GermTable(std::shared_ptr<Data const> data)
    : data_(std::move(data)) {}

std::size_t GermTable::object_count() const noexcept {
  return data_->object_names.size();
}

std::size_t GermTable::element_count() const noexcept {
  return data_->elements.size();
}

std::string_view GermTable::object_name(ObjectId o) const {
  return data_->object_names.at(o.index);
}

std::string_view GermTable::label(ElementId e) const {
  return data_->labels.at(e.index);
}

std::optional<ObjectId> GermTable::find_object(std::string_view name) const {
  auto it = data_->by_name.find(std::string(name));
  if (it == data_->by_name.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<ElementId> GermTable::find(std::string_view label) const {
  auto it = data_->by_label.find(std::string(label));
  if (it == data_->by_label.end()) {
    return std::nullopt;
  }
  return it->second;
}

GermElement const& GermTable::element(ElementId e) const {
  return data_->elements.at(e.index);
}

ElementId GermTable::identity(ObjectId o) const {
  return data_->identity_of.at(o.index);
}

std::optional<ElementId> GermTable::product(ElementId a, ElementId b) const {
  auto it = data_->product.find(detail::pair_key(a, b));
  if (it == data_->product.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<ElementId> GermTable::right_complement(ElementId f,
                                                     ElementId e) const {
  auto it = data_->complement.find(detail::pair_key(f, e));
  if (it == data_->complement.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::span<RightProduct const> GermTable::right_products(ElementId a) const {
  return data_->right_products.at(a.index);
}

std::span<LeftProduct const> GermTable::left_products(ElementId b) const {
  return data_->left_products.at(b.index);
}

std::span<Factorization const> GermTable::factorizations(ElementId e) const {
  return data_->factorizations.at(e.index);
}

std::span<ElementId const> GermTable::elements_from(ObjectId o) const {
  return data_->from_object.at(o.index);
}

std::span<ElementId const> GermTable::elements_to(ObjectId o) const {
  return data_->to_object.at(o.index);
}

std::span<std::array<ElementId, 3> const> GermTable::explicit_products() const {
  return data_->explicit_products;
}

std::size_t GermTable::divisor_count(ElementId e) const {
  return data_->divisor_count.at(e.index);
}

std::uint32_t GermTable::display_rank(ElementId e) const {
  return data_->rank.at(e.index);
}

void GermTable::sort_for_display(std::vector<ElementId>& elements) const {
  std::sort(elements.begin(), elements.end(), [this](ElementId x, ElementId y) {
    auto rx = display_rank(x), ry = display_rank(y);
    return rx != ry ? rx < ry : x < y;
  });
}

std::span<std::string const> GermTable::notes() const {
  return data_->notes;
}

GermSpec GermTable::to_spec() const {
  GermSpec spec;
  spec.objects = data_->object_names;
  for (auto const& el : data_->elements) {
    spec.elements.push_back({data_->labels[el.id.index],
                             data_->object_names[el.source.index],
                             data_->object_names[el.target.index],
                             el.is_identity});
  }
  for (auto const& [a, b, c] : data_->explicit_products) {
    spec.products.push_back({data_->labels[a.index], data_->labels[b.index],
                             data_->labels[c.index]});
  }
  return spec;
}

// Builder ------------------------------------------------------------------

GermTable::Builder::Builder() : data_(std::make_unique<Data>()) {}
GermTable::Builder::~Builder()                              = default;
GermTable::Builder::Builder(Builder&&) noexcept            = default;
GermTable::Builder& GermTable::Builder::operator=(Builder&&) noexcept = default;

ObjectId GermTable::Builder::add_object(std::string name) {
  ObjectId id{static_cast<std::uint32_t>(data_->object_names.size())};
  if (!data_->by_name.emplace(name, id).second) {
    throw GermError(GermError::Kind::malformed_spec,
                    "duplicate object name '" + name + "'");
  }
  data_->object_names.push_back(std::move(name));
  return id;
}

ElementId GermTable::Builder::add_element(std::string label, ObjectId source,
                                          ObjectId target, bool is_identity) {
  if (source.index >= data_->object_names.size()
      || target.index >= data_->object_names.size()) {
    throw GermError(GermError::Kind::malformed_spec,
                    "element '" + label + "' has a dangling object");
  }
  if (is_identity && source != target) {
    throw GermError(GermError::Kind::malformed_spec,
                    "identity '" + label + "' must be an endomorphism");
  }
  ElementId id{static_cast<std::uint32_t>(data_->elements.size())};
  if (!data_->by_label.emplace(label, id).second) {
    throw GermError(GermError::Kind::malformed_spec,
                    "duplicate element name '" + label + "'");
  }
  data_->elements.push_back({id, source, target, is_identity});
  data_->labels.push_back(std::move(label));
  return id;
}

std::pair<ObjectId, ElementId> GermTable::Builder::add_object_with_identity(
    std::string name, std::string identity) {
  auto o = add_object(std::move(name));
  return {o, add_element(std::move(identity), o, o, true)};
}

void GermTable::Builder::add_product(ElementId a, ElementId b, ElementId c) {
  auto const n = data_->elements.size();
  if (a.index >= n || b.index >= n || c.index >= n) {
    throw GermError(GermError::Kind::malformed_spec,
                    "product refers to an unknown element");
  }
  auto const& ea = data_->elements[a.index];
  auto const& eb = data_->elements[b.index];
  auto const& ec = data_->elements[c.index];
  auto name = [&](ElementId e) { return data_->labels[e.index]; };
  if (ea.target != eb.source) {
    throw GermError(GermError::Kind::malformed_spec,
                    "product " + name(a) + "*" + name(b)
                        + ": target of the left factor is not the source of "
                          "the right factor",
                    {a, b, c});
  }
  if (ec.source != ea.source || ec.target != eb.target) {
    throw GermError(GermError::Kind::malformed_spec,
                    "product " + name(a) + "*" + name(b) + "=" + name(c)
                        + " has the wrong source or target",
                    {a, b, c});
  }
  auto [it, inserted] = data_->product.emplace(detail::pair_key(a, b), c);
  if (!inserted) {
    if (it->second != c) {
      throw GermError(GermError::Kind::malformed_spec,
                      "product " + name(a) + "*" + name(b)
                          + " is defined twice with different values",
                      {a, b, c});
    }
    return;
  }
  if (!ea.is_identity && !eb.is_identity) {
    data_->explicit_products.push_back({a, b, c});
  }
}

void GermTable::Builder::add_note(std::string note) {
  data_->notes.push_back(std::move(note));
}

std::size_t GermTable::Builder::element_count() const noexcept {
  return data_->elements.size();
}

namespace {

  void check_identities(GermTable::Data& d) {
    d.identity_of.assign(d.object_names.size(), ElementId{kUnranked});
    for (auto const& el : d.elements) {
      if (!el.is_identity) {
        continue;
      }
      auto& slot = d.identity_of[el.source.index];
      if (slot.index != kUnranked) {
        throw GermError(GermError::Kind::malformed_spec,
                        "object '" + d.object_names[el.source.index]
                            + "' has two identities");
      }
      slot = el.id;
    }
    for (std::size_t o = 0; o < d.object_names.size(); ++o) {
      if (d.identity_of[o].index == kUnranked) {
        throw GermError(GermError::Kind::malformed_spec,
                        "object '" + d.object_names[o] + "' has no identity");
      }
    }
  }

  // Adds a*1 = a and 1*a = a, rejecting contradicting explicit entries.
  void add_identity_laws(GermTable::Data& d) {
    for (auto const& el : d.elements) {
      auto const left  = d.identity_of[el.source.index];
      auto const right = d.identity_of[el.target.index];
      for (auto key : {detail::pair_key(el.id, right),
                       detail::pair_key(left, el.id)}) {
        auto [it, inserted] = d.product.emplace(key, el.id);
        if (!inserted && it->second != el.id) {
          throw GermError(GermError::Kind::axiom_violation,
                          "identity law fails for '" + d.labels[el.id.index]
                              + "'",
                          {el.id});
        }
      }
    }
  }

  void index_products(GermTable::Data& d) {
    auto const n = d.elements.size();
    d.right_products.assign(n, {});
    d.left_products.assign(n, {});
    d.factorizations.assign(n, {});
    d.from_object.assign(d.object_names.size(), {});
    d.to_object.assign(d.object_names.size(), {});
    for (auto const& el : d.elements) {
      d.from_object[el.source.index].push_back(el.id);
      d.to_object[el.target.index].push_back(el.id);
    }
    std::vector<std::pair<std::uint64_t, ElementId>> sorted(d.product.begin(),
                                                            d.product.end());
    std::sort(sorted.begin(), sorted.end(),
              [](auto const& x, auto const& y) { return x.first < y.first; });
    for (auto const& [key, c] : sorted) {
      auto [a, b] = detail::unpack_key(key);
      d.right_products[a.index].push_back({b, c});
      d.left_products[b.index].push_back({a, c});
      d.factorizations[c.index].push_back({a, b});
      d.complement.emplace(detail::pair_key(a, c), b);
    }
    d.divisor_count.assign(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
      std::unordered_set<std::uint32_t> seen;
      for (auto const& f : d.factorizations[e]) {
        seen.insert(f.left.index);
      }
      d.divisor_count[e] = seen.size();
    }
  }

  void check_associativity(GermTable::Data const& d) {
    auto lookup = [&](ElementId a, ElementId b) -> std::optional<ElementId> {
      auto it = d.product.find(detail::pair_key(a, b));
      if (it == d.product.end()) {
        return std::nullopt;
      }
      return it->second;
    };
    auto fail = [&](ElementId a, ElementId b, ElementId c) {
      throw GermError(GermError::Kind::axiom_violation,
                      "germ associativity fails for (" + d.labels[a.index]
                          + ", " + d.labels[b.index] + ", " + d.labels[c.index]
                          + ")",
                      {a, b, c});
    };
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
      ElementId a{static_cast<std::uint32_t>(i)};
      // ab, (ab)c defined => bc, a(bc) defined and equal.
      for (auto const& [b, ab] : d.right_products[i]) {
        for (auto const& [c, abc] : d.right_products[ab.index]) {
          auto bc = lookup(b, c);
          if (!bc) {
            fail(a, b, c);
          }
          auto a_bc = lookup(a, *bc);
          if (!a_bc || *a_bc != abc) {
            fail(a, b, c);
          }
        }
      }
    }
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
      ElementId b{static_cast<std::uint32_t>(i)};
      // bc, a(bc) defined => ab, (ab)c defined.
      for (auto const& [c, bc] : d.right_products[i]) {
        for (auto const& [a, a_bc] : d.left_products[bc.index]) {
          auto ab = lookup(a, b);
          if (!ab) {
            fail(a, b, c);
          }
          auto ab_c = lookup(*ab, c);
          if (!ab_c || *ab_c != a_bc) {
            fail(a, b, c);
          }
        }
      }
    }
  }

  void compute_ranks(GermTable::Data& d) {
    auto const n = d.elements.size();
    d.rank.assign(n, kUnranked);
    std::vector<bool> atom(n, false);
    for (std::size_t e = 0; e < n; ++e) {
      if (d.elements[e].is_identity) {
        d.rank[e] = 0;
        continue;
      }
      bool proper = false;
      for (auto const& f : d.factorizations[e]) {
        if (!d.elements[f.left.index].is_identity && f.left.index != e) {
          proper = true;
          break;
        }
      }
      atom[e] = !proper;
    }
    // Relax rank(e) = 1 + rank(g) over e = a * g with a an atom.
    bool changed = true;
    for (std::size_t round = 0; changed && round <= n; ++round) {
      changed = false;
      for (std::size_t e = 0; e < n; ++e) {
        if (d.elements[e].is_identity) {
          continue;
        }
        for (auto const& f : d.factorizations[e]) {
          if (!atom[f.left.index]) {
            continue;
          }
          auto const rg = d.rank[f.right.index];
          if (rg != kUnranked && f.right.index != e && rg + 1 < d.rank[e]) {
            d.rank[e] = rg + 1;
            changed   = true;
          }
        }
      }
    }
  }

}  // namespace

GermTable GermTable::Builder::finish(bool validate) {
  auto d = std::move(data_);
  data_  = std::make_unique<Data>();
  check_identities(*d);
  add_identity_laws(*d);
  index_products(*d);
  if (validate) {
    check_associativity(*d);
  }
  compute_ranks(*d);
  return GermTable(std::shared_ptr<Data const>(std::move(d)));
}

GermTable GermTable::build(GermSpec const& spec) {
  Builder b;
  for (auto const& name : spec.objects) {
    b.add_object(name);
  }
  auto object = [&](std::string const& name, std::string const& owner) {
    auto it = b.data_->by_name.find(name);
    if (it == b.data_->by_name.end()) {
      throw GermError(GermError::Kind::malformed_spec,
                      "element '" + owner + "' refers to unknown object '"
                          + name + "'");
    }
    return it->second;
  };
  for (auto const& el : spec.elements) {
    b.add_element(el.name, object(el.source, el.name),
                  object(el.target, el.name), el.identity);
  }
  auto element = [&](std::string const& name) {
    auto it = b.data_->by_label.find(name);
    if (it == b.data_->by_label.end()) {
      throw GermError(GermError::Kind::malformed_spec,
                      "product refers to unknown element '" + name + "'");
    }
    return it->second;
  };
  for (auto const& [x, y, z] : spec.products) {
    b.add_product(element(x), element(y), element(z));
  }
  return b.finish();
}

}  // namespace garside
