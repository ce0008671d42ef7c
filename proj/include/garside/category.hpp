#pragma once

// The category C(P) generated by a germ.  A morphism is stored as its greedy
// normal form, so equality of morphisms is equality of values.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "garside/germ.hpp"

namespace garside {

struct Morphism {
  ObjectId source;
  ObjectId target;
  // Non-identity germ elements; every adjacent pair is normal.
  std::vector<ElementId> factors;

  std::size_t length() const noexcept { return factors.size(); }
  bool        is_identity() const noexcept { return factors.empty(); }

  friend auto operator<=>(Morphism const&, Morphism const&) = default;
};

// A composable sequence of germ elements, not necessarily normal.
struct RawPath {
  ObjectId               source;
  std::vector<ElementId> letters;
};

class CategoryError : public std::runtime_error {
 public:
  enum class Kind { source_target_mismatch, not_a_divisor, not_a_path,
                    not_normal, unknown_element };

  CategoryError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

Morphism identity_morphism(GermTable const& germ, ObjectId object);
Morphism from_element(GermTable const& germ, ElementId e);

// Accepts a factor sequence as a morphism iff every adjacent pair is normal.
bool     is_normal_sequence(GermTable const& germ, std::span<ElementId const> factors);
Morphism accept_normal(GermTable const& germ, ObjectId source,
                       std::vector<ElementId> factors);

// alpha2(x, y) = x*z for the maximal left divisor z of y with x*z in the germ;
// y = z * omega2(x, y).
struct Alpha2 {
  ElementId head;  // x*z
  ElementId tail;  // omega2
};
Alpha2    alpha_omega2(GermTable const& germ, ElementId x, ElementId y);
ElementId alpha2(GermTable const& germ, ElementId x, ElementId y);
ElementId omega2(GermTable const& germ, ElementId x, ElementId y);
bool      is_normal_pair(GermTable const& germ, ElementId x, ElementId y);

Morphism normal_form(GermTable const& germ, RawPath const& path);
// g * m, by one pass of the left-multiplication staircase.
Morphism left_multiply(GermTable const& germ, ElementId g, Morphism const& m);
Morphism multiply(GermTable const& germ, Morphism const& x, Morphism const& y);

ElementId alpha(GermTable const& germ, Morphism const& m);
Morphism  omega(GermTable const& germ, Morphism const& m);

// The z with x*z = y, if any.
std::optional<Morphism> try_left_quotient(GermTable const& germ,
                                          Morphism const& x, Morphism const& y);
Morphism left_quotient(GermTable const& germ, Morphism const& x,
                       Morphism const& y);
bool     divides_left(GermTable const& germ, Morphism const& x,
                      Morphism const& y);

// Right lcm; nullopt when the family has no common right multiple.
std::optional<Morphism> lcm(GermTable const& germ,
                            std::span<Morphism const> family);
std::optional<Morphism> lcm(GermTable const& germ, Morphism const& x,
                            Morphism const& y);
// Left gcd; always exists in a locally Garside category.
Morphism gcd(GermTable const& germ, std::span<Morphism const> family);
Morphism gcd(GermTable const& germ, Morphism const& x, Morphism const& y);

// All morphisms from source with at most max_length normal-form factors,
// ordered by (length, factors).
std::vector<Morphism> enumerate_morphisms(GermTable const& germ, ObjectId source,
                                          std::size_t max_length);

std::vector<ElementId> category_atoms(GermTable const& germ, ObjectId source);
std::vector<ElementId> atom_factorization(GermTable const& germ,
                                          Morphism const& m);

// Atoms of the fixed category C(P)^sigma: right lcms of sigma-orbits of atoms
// that are not right multiples of another such lcm.  Parent-germ elements.
std::vector<ElementId> orbit_lcm_atoms(GermTable const&        germ,
                                       GermAutomorphism const& sigma);

// Common right multiples of x and y among morphisms of length at most
// max_length, optionally restricted to a target object.
struct MultipleProbe {
  std::vector<Morphism>   minimal;   // minimal for left divisibility
  std::vector<Morphism>   shortest;  // of least normal-form length
  std::optional<Morphism> least;
  bool                    found_any = false;
};
MultipleProbe probe_common_multiples(GermTable const& germ, Morphism const& x,
                                     Morphism const& y,
                                     std::optional<ObjectId> target,
                                     std::size_t max_length);

// Whitespace-separated element labels; an empty word needs an explicit
// source object.
RawPath parse_path(GermTable const& germ, std::string_view word,
                   std::optional<ObjectId> source = std::nullopt);
Morphism parse_morphism(GermTable const& germ, std::string_view word,
                        std::optional<ObjectId> source = std::nullopt);

// "[a, ab]"; the identity prints as "[]".
std::string format(GermTable const& germ, Morphism const& m);
std::string format_elements(GermTable const&           germ,
                            std::span<ElementId const> elements);

}  // namespace garside
