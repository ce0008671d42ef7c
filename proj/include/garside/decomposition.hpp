#pragma once

// Germs of length-n paths with grid morphisms, the padding category over
// P_n(Id), and the posets E(g) of decompositions of g into germ elements.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "garside/category.hpp"
#include "garside/germ.hpp"

namespace garside {

class DecompositionError : public std::runtime_error {
 public:
  enum class Kind { not_a_path, f_not_product_preserving, f_not_lcm_preserving,
                    base_not_two_sided, no_morphism, too_large };

  DecompositionError(Kind kind, std::string const& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A composable sequence (a_1, ..., a_n) of germ elements; identities allowed.
struct PathObject {
  std::vector<ElementId> entries;

  std::size_t size() const noexcept { return entries.size(); }
  friend auto operator<=>(PathObject const&, PathObject const&) = default;
};

// Columns f_1..f_{n+1} with f_i <= a_i and b_i = f'_i f_{i+1} where a_i = f_i f'_i.
struct GridMorphism {
  PathObject             source;
  std::vector<ElementId> columns;
  PathObject             target;

  friend auto operator<=>(GridMorphism const&, GridMorphism const&) = default;
};

// A functor of C(P) given on objects and germ elements.
struct GermEndomap {
  std::vector<ObjectId>  on_objects;
  std::vector<ElementId> on_elements;
};

// Throws DecompositionError(f_not_product_preserving) unless F is compatible
// with sources, targets, identities and germ products, and
// (f_not_lcm_preserving) unless it sends germ lcms to germ lcms.
void validate_endomap(GermTable const& base, GermEndomap const& F);

enum class PnVariant { full, id, functor };

// Germ elements of P_n (or of a variant) with the given source.  Throws
// DecompositionError(not_a_path) when a is not a path.
std::vector<GridMorphism> grid_elements_from(GermTable const& base, PathObject const& a,
                                             PnVariant variant,
                                             GermEndomap const* F = nullptr);

struct PnGerm {
  GermTable                 base;
  std::size_t               n = 0;
  PnVariant                 variant = PnVariant::full;
  std::optional<GermEndomap> F;
  bool                      two_sided = false;  // base is also right locally Garside
  GermTable                 germ;
  std::vector<PathObject>   objects;   // by object index
  std::vector<GridMorphism> elements;  // by element index
  std::map<PathObject, ObjectId>                               object_index;
  std::map<std::pair<ObjectId, std::vector<ElementId>>, ElementId> element_index;

  ObjectId object(PathObject const& a) const { return object_index.at(a); }
  std::optional<ElementId> element(PathObject const& a,
                                   std::vector<ElementId> const& columns) const;
};

// (fg)_i = f_i g_i, defined when f_i g_i <= a_i for i <= n and f_{n+1} g_{n+1}
// is in P.  The functor variant requires F.
PnGerm build_Pn_germ(GermTable const& base, std::size_t n, PnVariant variant,
                     std::optional<GermEndomap> F = std::nullopt);

std::string format_path(GermTable const& base, PathObject const& a);

// Column products of a morphism of C(P_n), as morphisms of C(P).
std::vector<Morphism> grid_columns(PnGerm const& pn, Morphism const& m);

// f_i <= g_i for every column; both must share the source.
bool grid_divides(GermTable const& base, GridMorphism const& f, GridMorphism const& g);
bool grid_divides(GermTable const& base, std::vector<Morphism> const& f,
                  std::vector<Morphism> const& g);

// alpha(m) by its columns gcd(m_i, s_i) for i <= n and alpha(m_{n+1}) (F(first
// column) for the functor variant).  Throws DecompositionError(base_not_two_sided).
GridMorphism grid_alpha(PnGerm const& pn, Morphism const& m);

// The normal form of a_1...a_n, padded with identities to length n.
PathObject nf_object(GermTable const& base, PathObject const& a);
// Iterates Delta of C(P_n(Id)) from a; every step is a germ element of
// P_n(Id) and the last target is nf_object(a).
std::vector<GridMorphism> unique_morphism_to_nf(GermTable const& base,
                                                PathObject const& a);

// a^[k]: a followed by k identities.
PathObject padded(GermTable const& base, PathObject const& a, std::size_t k);

// A morphism of P.(Id): the padding a -> a^[k] then a degree-preserving
// morphism of C(P_m(Id)) given by germ steps.
struct PBulletMorphism {
  PathObject                source;
  std::size_t               padding = 0;
  std::vector<GridMorphism> steps;
  PathObject                target;
};

// The unique morphism a -> b, or DecompositionError(no_morphism).
PBulletMorphism pbullet_unique_morphism(GermTable const& base, PathObject const& a,
                                        PathObject const& b);
// Pushes the padding of the second factor to the left via f i = i f^[k].
PBulletMorphism compose(GermTable const& base, PBulletMorphism const& x,
                        PBulletMorphism const& y);
// Column products of the degree-preserving part (padded source to target).
std::vector<Morphism> pbullet_columns(GermTable const& base, PBulletMorphism const& m);

// Vertices are the decompositions of g into non-identity germ elements;
// (.., g_i, ..) covers (.., a, b, ..) when a b = g_i in P.
struct DecompositionPoset {
  std::vector<std::vector<ElementId>>          vertices;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (greater, smaller)
};

// Throws DecompositionError(too_large) beyond vertex_budget vertices.
DecompositionPoset build_Eg(GermTable const& base, Morphism const& g,
                            std::size_t vertex_budget = 20'000);

struct SimplyConnectedOptions {
  // A poset with a least or greatest element is simply connected.
  bool        cone_shortcut = true;
  // Bounded Tietze reduction of the edge-path presentation.
  bool        pi1_attempt = false;
  std::size_t pi1_budget  = 100'000;
  // Removes beat points first; homology and pi_1 are computed on the core.
  bool        beat_reduction = true;
};

struct SimplyConnectedReport {
  bool                      connected = false;
  bool                      cone      = false;
  bool                      homology_computed = false;
  std::size_t               h1_rank   = 0;
  std::vector<long long>    h1_torsion;    // invariant factors > 1
  std::optional<bool>       pi1_trivial;   // true when certified; unset otherwise
  std::size_t               core_size        = 0;  // vertices left after beat reduction
  std::size_t               comparable_pairs = 0;
  std::size_t               chains3          = 0;

  bool h1_trivial() const { return h1_rank == 0 && h1_torsion.empty(); }
};

// Connectivity of the comparability graph and H_1 of the order complex.  A
// core of one vertex certifies contractibility.
SimplyConnectedReport check_simply_connected(DecompositionPoset const& poset,
                                             SimplyConnectedOptions const& options = {});

// "V n", one vertex label per line, "E m", one "i j" covering pair per line.
std::string export_poset(GermTable const& base, DecompositionPoset const& poset);

}  // namespace garside
