#pragma once

// Coxeter systems with exact word arithmetic, the germ of reduced lifts of W
// and the parabolic tools used by the ribbon category.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "garside/category.hpp"
#include "garside/germ.hpp"

namespace garside {

class CoxeterError : public std::runtime_error {
 public:
  enum class Kind { bad_matrix, unknown_type, not_spherical, infinite_without_bound,
                    infinite_difference };

  CoxeterError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Subset of the generators, bit i for generator i.
struct GeneratorSet {
  std::uint64_t bits = 0;

  static GeneratorSet single(std::size_t s) { return {std::uint64_t{1} << s}; }
  bool contains(std::size_t s) const { return (bits >> s) & 1u; }
  bool empty() const { return bits == 0; }
  std::size_t size() const;
  GeneratorSet with(std::size_t s) const { return {bits | (std::uint64_t{1} << s)}; }
  std::vector<std::size_t> members() const;

  friend GeneratorSet operator&(GeneratorSet a, GeneratorSet b) { return {a.bits & b.bits}; }
  friend GeneratorSet operator|(GeneratorSet a, GeneratorSet b) { return {a.bits | b.bits}; }
  friend auto operator<=>(GeneratorSet, GeneratorSet) = default;
};

// Canonical representative: the shortlex-least reduced word.
struct WElement {
  std::vector<std::uint8_t> word;

  std::size_t length() const noexcept { return word.size(); }
  friend auto operator<=>(WElement const&, WElement const&) = default;
};

class CoxeterSystem {
 public:
  // m(s, t) = 0 encodes infinity.
  static CoxeterSystem from_matrix(std::vector<std::vector<unsigned>> matrix,
                                   std::vector<std::string> labels = {});
  // A<n>, B<n>, D<n>, E6-E8, F4, H3, H4, I2(<m>), A~<n> (also "Ã1").
  static CoxeterSystem preset(std::string_view name);

  std::size_t rank() const noexcept { return matrix_.size(); }
  unsigned    m(std::size_t s, std::size_t t) const { return matrix_.at(s).at(t); }
  std::string_view label(std::size_t s) const { return labels_.at(s); }
  std::optional<std::size_t> find_generator(std::string_view label) const;
  GeneratorSet all() const;

  // By the classification of finite Coxeter groups.
  bool is_spherical(GeneratorSet I) const;
  bool is_finite() const { return is_spherical(all()); }

  WElement identity() const { return {}; }
  WElement generator(std::size_t s) const;
  WElement from_word(std::vector<std::uint8_t> const& word) const;
  WElement multiply_generator(WElement const& w, std::size_t s) const;
  WElement generator_multiply(std::size_t s, WElement const& w) const;
  WElement multiply(WElement const& x, WElement const& y) const;
  WElement inverse(WElement const& w) const;
  bool     lengths_add(WElement const& x, WElement const& y) const;

  GeneratorSet right_descents(WElement const& w) const;
  GeneratorSet left_descents(WElement const& w) const;
  GeneratorSet support(WElement const& w) const;

  // w s w^-1 for each s in I, when all of them are generators.
  std::optional<GeneratorSet> conjugate(WElement const& w, GeneratorSet I) const;

  // "s1s2"; the identity is "1".
  std::string format(WElement const& w) const;
  std::string format(GeneratorSet I) const;
  // Generator labels concatenated or separated by spaces.
  WElement parse(std::string_view text) const;
  GeneratorSet parse_set(std::string_view text) const;

 private:
  struct Cache;
  struct ClassInfo {
    WElement                  canonical;
    GeneratorSet              right_descents;
    GeneratorSet              left_descents;
    // A reduced word ending with s, for each right descent s.
    std::vector<std::vector<std::uint8_t>> ending_with;
  };
  CoxeterSystem(std::vector<std::vector<unsigned>> matrix,
                std::vector<std::string> labels);
  ClassInfo const& info(std::vector<std::uint8_t> const& reduced_word) const;

  std::vector<std::vector<unsigned>> matrix_;
  std::vector<std::string>           labels_;
  std::shared_ptr<Cache>             cache_;
};

struct LiftGerm {
  CoxeterSystem          cox;
  GermTable              germ;
  std::vector<WElement>  elements;  // by element index
  std::map<WElement, ElementId> index;
  bool                   truncated = false;

  ElementId element(WElement const& w) const { return index.at(w); }
  // The Artin monoid element with the given canonical reduced word.
  Morphism  lift(WElement const& w) const;
};

// Germ of the canonical lift of W; the product is defined iff lengths add and
// the result stays in the carrier.  Without a bound W must be finite.
LiftGerm lift_germ(CoxeterSystem const& cox,
                   std::optional<std::size_t> max_length = std::nullopt);

WElement w_parabolic_longest(CoxeterSystem const& cox, GeneratorSet I);

// Maximal left divisor of b in the submonoid generated by I, and its
// complement.
struct ParabolicSplit {
  Morphism head;
  Morphism tail;
};
ParabolicSplit alpha_I(LiftGerm const& lift, GeneratorSet I, Morphism const& b);

// No s in I shortens w from the left.
bool is_I_reduced(CoxeterSystem const& cox, GeneratorSet I, WElement const& w);

// v(alpha, I) = w_{I+alpha} w_I and J = v I v^-1.
struct ElementaryConjugator {
  GeneratorSet J;
  WElement     v;
};
ElementaryConjugator v_alpha_I(CoxeterSystem const& cox, std::size_t alpha,
                               GeneratorSet I);

}  // namespace garside
