#pragma once

// Finite germs: a set of objects and elements with a partially defined,
// germ-associative product.  Everything else in the library is computed
// from a GermTable.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace garside {

struct ObjectId {
  std::uint32_t index = 0;
  friend auto operator<=>(ObjectId, ObjectId) = default;
};

struct ElementId {
  std::uint32_t index = 0;
  friend auto operator<=>(ElementId, ElementId) = default;
};

struct GermElement {
  ElementId id;
  ObjectId  source;
  ObjectId  target;
  bool      is_identity = false;
};

// left * right = the element the entry is stored under.
struct Factorization {
  ElementId left;
  ElementId right;
};

// owner * right = result.
struct RightProduct {
  ElementId right;
  ElementId result;
};

// owner = left * ... seen from the right factor: left * owner = result.
struct LeftProduct {
  ElementId left;
  ElementId result;
};

class GermError : public std::runtime_error {
 public:
  enum class Kind {
    malformed_spec,
    axiom_violation,
    not_closed,
    not_an_automorphism,
    not_locally_garside,
  };

  GermError(Kind kind, std::string const& what,
            std::vector<ElementId> witness = {});

  Kind kind() const noexcept { return kind_; }
  std::vector<ElementId> const& witness() const noexcept { return witness_; }

 private:
  Kind                   kind_;
  std::vector<ElementId> witness_;
};

// Textual description of a germ, as read from a germ file.
struct GermSpec {
  struct Element {
    std::string name;
    std::string source;
    std::string target;
    bool        identity = false;
  };
  std::vector<std::string>                objects;
  std::vector<Element>                    elements;
  std::vector<std::array<std::string, 3>> products;
};

class GermTable {
 public:
  class Builder;

  // Validates the description: typing of every product, one identity per object,
  // identity laws and germ associativity.  Throws GermError.
  static GermTable build(GermSpec const& spec);

  GermTable();

  std::size_t object_count() const noexcept;
  std::size_t element_count() const noexcept;

  std::string_view object_name(ObjectId o) const;
  std::string_view label(ElementId e) const;
  std::optional<ObjectId>  find_object(std::string_view name) const;
  std::optional<ElementId> find(std::string_view label) const;

  GermElement const& element(ElementId e) const;
  ObjectId source(ElementId e) const { return element(e).source; }
  ObjectId target(ElementId e) const { return element(e).target; }
  bool     is_identity(ElementId e) const { return element(e).is_identity; }
  ElementId identity(ObjectId o) const;

  std::optional<ElementId> product(ElementId a, ElementId b) const;

  // The g with f * g = e, if f left-divides e inside the germ.
  std::optional<ElementId> right_complement(ElementId f, ElementId e) const;
  bool left_divides(ElementId f, ElementId e) const {
    return right_complement(f, e).has_value();
  }

  std::span<RightProduct const>  right_products(ElementId a) const;
  std::span<LeftProduct const>   left_products(ElementId b) const;
  std::span<Factorization const> factorizations(ElementId e) const;
  std::span<ElementId const>     elements_from(ObjectId o) const;
  std::span<ElementId const>     elements_to(ObjectId o) const;

  // Product triples not involving an identity, in insertion order.
  std::span<std::array<ElementId, 3> const> explicit_products() const;

  // Number of distinct left divisors of e inside the germ.
  std::size_t divisor_count(ElementId e) const;

  // Minimal number of atoms in a factorization of e inside the germ; used
  // for display ordering only.  Elements that cannot be factored get a
  // large sentinel rank.
  std::uint32_t display_rank(ElementId e) const;
  void sort_for_display(std::vector<ElementId>& elements) const;

  // Free-form notes attached at construction (e.g. truncation warnings).
  std::span<std::string const> notes() const;

  GermSpec to_spec() const;

  // Opaque storage; defined in the implementation only.
  struct Data;

 private:
  explicit GermTable(std::shared_ptr<Data const> data);
  std::shared_ptr<Data const> data_;
};

class GermTable::Builder {
 public:
  Builder();
  ~Builder();
  Builder(Builder&&) noexcept;
  Builder& operator=(Builder&&) noexcept;

  ObjectId  add_object(std::string name);
  ElementId add_element(std::string label, ObjectId source, ObjectId target,
                        bool is_identity = false);
  // Adds an object together with its identity element.
  std::pair<ObjectId, ElementId> add_object_with_identity(std::string name,
                                                          std::string identity);
  void add_product(ElementId a, ElementId b, ElementId c);
  void add_note(std::string note);

  std::size_t element_count() const noexcept;

  // validate = false skips the cubic associativity scan; only used for
  // germs whose construction already guarantees the axioms.
  GermTable finish(bool validate = true);

 private:
  friend class GermTable;
  std::unique_ptr<Data> data_;
};

// Germ axioms --------------------------------------------------------------

enum class Verdict { pass, fail, unchecked };

struct AxiomResult {
  Verdict                verdict = Verdict::unchecked;
  std::vector<ElementId> witness;
  std::string            detail;
};

struct G4Strategy {
  enum class Kind { assume, bounded_search };
  Kind        kind                = Kind::assume;
  std::size_t max_length          = 0;
  std::size_t path_budget         = 4'000'000;
  std::string assumption_reason = "assumed";

  static G4Strategy assume(std::string reason = "assumed") {
    return G4Strategy{Kind::assume, 0, 0, std::move(reason)};
  }
  static G4Strategy bounded_search(std::size_t length) {
    return G4Strategy{Kind::bounded_search, length, 4'000'000, {}};
  }
};

struct AxiomReport {
  AxiomResult g1, g2, g3, g4, g2_atoms, g3_atoms;
  G4Strategy  g4_strategy;
  std::vector<std::string> warnings;

  // G1, G2, G3 pass and G4 is not refuted.
  bool locally_garside() const;
  // G1, G2', G3' pass and G4 is not refuted.
  bool locally_garside_by_atoms() const;
};

AxiomReport check_locally_garside(GermTable const& germ,
                                  G4Strategy const& g4 = G4Strategy::assume());

// The germ with every product reversed: right divisibility becomes left
// divisibility.  Objects keep their names; labels keep their names.
GermTable opposite_germ(GermTable const& germ);

// Left divisors of e inside the germ, in display order.
std::vector<ElementId> germ_left_divisors(GermTable const& germ, ElementId e);

// Right lcm inside the germ; nullopt when e and f have no common right
// multiple in the germ.  Throws GermError(not_locally_garside) when common
// multiples exist without a least one.
std::optional<ElementId> germ_lcm(GermTable const& germ, ElementId e,
                                  ElementId f);

// Left gcd of a nonempty family sharing a source.
ElementId germ_gcd(GermTable const& germ, std::span<ElementId const> family);

std::vector<ElementId> germ_atoms(GermTable const& germ);

// Subgerms -----------------------------------------------------------------

struct Subgerm {
  GermTable germ;
  // Element and object of the subgerm -> parent ids.
  std::vector<ElementId> to_parent;
  std::vector<ObjectId>  object_to_parent;
  bool stable_by_complement = false;
  bool stable_by_lcm        = false;
  bool stable_by_alpha2     = false;

  std::optional<ElementId> from_parent(ElementId e) const;
};

Subgerm subgerm(GermTable const& germ, std::span<ObjectId const> objects,
                std::span<ElementId const> elements);

// The chosen elements with only those products that land inside the set;
// no closure is required.  Germ associativity is revalidated.
Subgerm restricted_subgerm(GermTable const& germ,
                           std::span<ObjectId const>  objects,
                           std::span<ElementId const> elements);

struct GermAutomorphism {
  std::vector<ObjectId>  on_objects;
  std::vector<ElementId> on_elements;
};

// Extends an atom map multiplicatively to the whole germ; the object map is
// read off the images of atoms.  Throws GermError(not_an_automorphism) when
// the extension is not well defined.
GermAutomorphism automorphism_from_atoms(
    GermTable const&                                  germ,
    std::span<std::pair<ElementId, ElementId> const> atom_images);

void validate_automorphism(GermTable const& germ, GermAutomorphism const& sigma);

Subgerm fixed_subgerm(GermTable const& germ, GermAutomorphism const& sigma);

}  // namespace garside

template <>
struct std::hash<garside::ElementId> {
  std::size_t operator()(garside::ElementId e) const noexcept {
    return std::hash<std::uint32_t>{}(e.index);
  }
};

template <>
struct std::hash<garside::ObjectId> {
  std::size_t operator()(garside::ObjectId o) const noexcept {
    return std::hash<std::uint32_t>{}(o.index);
  }
};
