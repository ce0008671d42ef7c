#include "garside/category.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace garside {

namespace {

  ObjectId path_target(GermTable const& germ, ObjectId source,
                       std::span<ElementId const> letters) {
    auto at = source;
    for (auto x : letters) {
      if (germ.source(x) != at) {
        throw CategoryError(CategoryError::Kind::not_a_path,
                            "'" + std::string(germ.label(x))
                                + "' does not start where the path ends");
      }
      at = germ.target(x);
    }
    return at;
  }

  void require_same_source(std::span<Morphism const> family) {
    if (family.empty()) {
      throw CategoryError(CategoryError::Kind::source_target_mismatch,
                          "empty family");
    }
    for (auto const& m : family) {
      if (m.source != family[0].source) {
        throw CategoryError(CategoryError::Kind::source_target_mismatch,
                            "family members have different sources");
      }
    }
  }

}  // namespace

Morphism identity_morphism(GermTable const&, ObjectId object) {
  return {object, object, {}};
}

Morphism from_element(GermTable const& germ, ElementId e) {
  if (germ.is_identity(e)) {
    return identity_morphism(germ, germ.source(e));
  }
  return {germ.source(e), germ.target(e), {e}};
}

Alpha2 alpha_omega2(GermTable const& germ, ElementId x, ElementId y) {
  if (germ.target(x) != germ.source(y)) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "alpha2 of a non-composable pair");
  }
  std::optional<Factorization> best;
  std::size_t                  best_count = 0;
  for (auto const& f : germ.factorizations(y)) {
    if (!germ.product(x, f.left)) {
      continue;
    }
    auto count = germ.divisor_count(f.left);
    if (!best || count > best_count) {
      best       = f;
      best_count = count;
    }
  }
  // z = 1 always qualifies, so best is set.
  for (auto const& f : germ.factorizations(y)) {
    if (germ.product(x, f.left) && !germ.left_divides(f.left, best->left)) {
      throw GermError(GermError::Kind::not_locally_garside,
                      "no maximal z with " + std::string(germ.label(x))
                          + "*z in the germ and z dividing "
                          + std::string(germ.label(y)),
                      {x, y, f.left, best->left});
    }
  }
  return {*germ.product(x, best->left), best->right};
}

ElementId alpha2(GermTable const& germ, ElementId x, ElementId y) {
  return alpha_omega2(germ, x, y).head;
}

ElementId omega2(GermTable const& germ, ElementId x, ElementId y) {
  return alpha_omega2(germ, x, y).tail;
}

bool is_normal_pair(GermTable const& germ, ElementId x, ElementId y) {
  return alpha_omega2(germ, x, y).head == x;
}

bool is_normal_sequence(GermTable const&           germ,
                        std::span<ElementId const> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (germ.is_identity(factors[i])) {
      return false;
    }
    if (i + 1 < factors.size()
        && (germ.target(factors[i]) != germ.source(factors[i + 1])
            || !is_normal_pair(germ, factors[i], factors[i + 1]))) {
      return false;
    }
  }
  return true;
}

Morphism accept_normal(GermTable const& germ, ObjectId source,
                       std::vector<ElementId> factors) {
  auto target = path_target(germ, source, factors);
  if (!is_normal_sequence(germ, factors)) {
    throw CategoryError(CategoryError::Kind::not_normal,
                        "factor sequence is not in normal form");
  }
  return {source, target, std::move(factors)};
}

Morphism left_multiply(GermTable const& germ, ElementId g, Morphism const& m) {
  if (germ.target(g) != m.source) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "left multiplication by a non-composable element");
  }
  Morphism out{germ.source(g), m.target, {}};
  out.factors.reserve(m.factors.size() + 1);
  auto carry = g;
  std::size_t i = 0;
  for (; i < m.factors.size() && !germ.is_identity(carry); ++i) {
    auto [head, tail] = alpha_omega2(germ, carry, m.factors[i]);
    out.factors.push_back(head);
    carry = tail;
  }
  if (!germ.is_identity(carry)) {
    out.factors.push_back(carry);
  }
  out.factors.insert(out.factors.end(),
                     m.factors.begin() + static_cast<std::ptrdiff_t>(i),
                     m.factors.end());
  return out;
}

Morphism normal_form(GermTable const& germ, RawPath const& path) {
  auto target = path_target(germ, path.source, path.letters);
  Morphism m = identity_morphism(germ, target);
  for (auto it = path.letters.rbegin(); it != path.letters.rend(); ++it) {
    m = left_multiply(germ, *it, m);
  }
  m.source = path.source;
  return m;
}

Morphism multiply(GermTable const& germ, Morphism const& x, Morphism const& y) {
  if (x.target != y.source) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "product of non-composable morphisms");
  }
  Morphism m = y;
  for (auto it = x.factors.rbegin(); it != x.factors.rend(); ++it) {
    m = left_multiply(germ, *it, m);
  }
  m.source = x.source;
  return m;
}

ElementId alpha(GermTable const& germ, Morphism const& m) {
  return m.factors.empty() ? germ.identity(m.source) : m.factors.front();
}

Morphism omega(GermTable const& germ, Morphism const& m) {
  if (m.factors.empty()) {
    return m;
  }
  return {germ.target(m.factors.front()), m.target,
          {m.factors.begin() + 1, m.factors.end()}};
}

std::optional<Morphism> try_left_quotient(GermTable const& germ,
                                          Morphism const& x,
                                          Morphism const& y) {
  if (x.source != y.source) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "divisibility test between different sources");
  }
  Morphism rest = y;
  for (auto f : x.factors) {
    // f divides rest iff it divides alpha(rest), the maximal germ prefix.
    auto q = germ.right_complement(f, alpha(germ, rest));
    if (!q) {
      return std::nullopt;
    }
    rest = left_multiply(germ, *q, omega(germ, rest));
  }
  return rest;
}

Morphism left_quotient(GermTable const& germ, Morphism const& x,
                       Morphism const& y) {
  auto q = try_left_quotient(germ, x, y);
  if (!q) {
    throw CategoryError(CategoryError::Kind::not_a_divisor,
                        format(germ, x) + " does not left-divide "
                            + format(germ, y));
  }
  return *q;
}

bool divides_left(GermTable const& germ, Morphism const& x, Morphism const& y) {
  return try_left_quotient(germ, x, y).has_value();
}

namespace {

  // lcm(p, y1 y') = y1 lcm(y1\lcm(p, y1), y').
  std::optional<Morphism> lcm_with_element(GermTable const& germ, ElementId p,
                                           Morphism const& y) {
    std::vector<ElementId> prefix;
    Morphism               rest = y;
    while (!rest.is_identity() && !germ.is_identity(p)) {
      auto y1 = rest.factors.front();
      auto l  = germ_lcm(germ, p, y1);
      if (!l) {
        return std::nullopt;
      }
      prefix.push_back(y1);
      p    = *germ.right_complement(y1, *l);
      rest = omega(germ, rest);
    }
    Morphism tail = germ.is_identity(p) ? rest : from_element(germ, p);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
      tail = left_multiply(germ, *it, tail);
    }
    tail.source = y.source;
    return tail;
  }

}  // namespace

std::optional<Morphism> lcm(GermTable const& germ, Morphism const& x,
                            Morphism const& y) {
  if (x.source != y.source) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "lcm of morphisms with different sources");
  }
  if (x.is_identity()) {
    return y;
  }
  // lcm(x1 x', y) = x1 lcm(x', x1\lcm(x1, y)).
  auto x1 = x.factors.front();
  auto l1 = lcm_with_element(germ, x1, y);
  if (!l1) {
    return std::nullopt;
  }
  auto r    = left_quotient(germ, from_element(germ, x1), *l1);
  auto tail = lcm(germ, omega(germ, x), r);
  if (!tail) {
    return std::nullopt;
  }
  auto out   = left_multiply(germ, x1, *tail);
  out.source = x.source;
  return out;
}

std::optional<Morphism> lcm(GermTable const&          germ,
                            std::span<Morphism const> family) {
  require_same_source(family);
  std::optional<Morphism> acc = family[0];
  for (auto const& m : family.subspan(1)) {
    acc = lcm(germ, *acc, m);
    if (!acc) {
      return std::nullopt;
    }
  }
  return acc;
}

Morphism gcd(GermTable const& germ, Morphism const& x, Morphism const& y) {
  if (x.source != y.source) {
    throw CategoryError(CategoryError::Kind::source_target_mismatch,
                        "gcd of morphisms with different sources");
  }
  // gcd(x, y) = d gcd(d\x, d\y) with d the germ gcd of the heads.
  std::vector<ElementId> prefix;
  Morphism               a = x, b = y;
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 1'000'000) {
      throw GermError(GermError::Kind::not_locally_garside,
                      "gcd peeling does not terminate");
    }
    std::array<ElementId, 2> heads{alpha(germ, a), alpha(germ, b)};
    auto d = germ_gcd(germ, heads);
    if (germ.is_identity(d)) {
      break;
    }
    auto dm = from_element(germ, d);
    a       = left_quotient(germ, dm, a);
    b       = left_quotient(germ, dm, b);
    prefix.push_back(d);
  }
  Morphism out = identity_morphism(germ, a.source);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    out = left_multiply(germ, *it, out);
  }
  out.source = x.source;
  return out;
}

Morphism gcd(GermTable const& germ, std::span<Morphism const> family) {
  require_same_source(family);
  Morphism acc = family[0];
  for (auto const& m : family.subspan(1)) {
    acc = gcd(germ, acc, m);
  }
  return acc;
}

std::vector<Morphism> enumerate_morphisms(GermTable const& germ,
                                          ObjectId source,
                                          std::size_t max_length) {
  std::vector<Morphism> out{identity_morphism(germ, source)};
  std::vector<Morphism> frontier = out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Morphism> next;
    for (auto const& m : frontier) {
      for (auto x : germ.elements_from(m.target)) {
        if (germ.is_identity(x)
            || (!m.is_identity() && !is_normal_pair(germ, m.factors.back(), x))) {
          continue;
        }
        Morphism n = m;
        n.factors.push_back(x);
        n.target = germ.target(x);
        next.push_back(std::move(n));
      }
    }
    std::sort(next.begin(), next.end(), [](auto const& a, auto const& b) {
      return a.factors < b.factors;
    });
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<ElementId> category_atoms(GermTable const& germ, ObjectId source) {
  std::vector<ElementId> out;
  for (auto a : germ_atoms(germ)) {
    if (germ.source(a) == source) {
      out.push_back(a);
    }
  }
  return out;
}

std::vector<ElementId> atom_factorization(GermTable const& germ,
                                          Morphism const& m) {
  auto atoms = germ_atoms(germ);
  std::vector<ElementId> out;
  for (auto e : m.factors) {
    while (!germ.is_identity(e)) {
      auto it = std::find_if(atoms.begin(), atoms.end(), [&](ElementId a) {
        return germ.left_divides(a, e);
      });
      if (it == atoms.end()) {
        throw GermError(GermError::Kind::not_locally_garside,
                        "'" + std::string(germ.label(e))
                            + "' has no atom as left factor",
                        {e});
      }
      out.push_back(*it);
      e = *germ.right_complement(*it, e);
    }
  }
  return out;
}

std::vector<ElementId> orbit_lcm_atoms(GermTable const&        germ,
                                       GermAutomorphism const& sigma) {
  std::vector<ElementId> lcms;
  for (auto s : germ_atoms(germ)) {
    std::optional<ElementId> l = s;
    for (auto t = sigma.on_elements[s.index]; l && t != s;
         t      = sigma.on_elements[t.index]) {
      if (germ.source(t) != germ.source(s)) {
        l.reset();
        break;
      }
      l = germ_lcm(germ, *l, t);
    }
    if (l && std::find(lcms.begin(), lcms.end(), *l) == lcms.end()) {
      lcms.push_back(*l);
    }
  }
  std::vector<ElementId> out;
  for (auto l : lcms) {
    bool minimal = std::none_of(lcms.begin(), lcms.end(), [&](ElementId k) {
      return k != l && germ.left_divides(k, l);
    });
    if (minimal) {
      out.push_back(l);
    }
  }
  germ.sort_for_display(out);
  return out;
}

MultipleProbe probe_common_multiples(GermTable const& germ, Morphism const& x,
                                     Morphism const&         y,
                                     std::optional<ObjectId> target,
                                     std::size_t             max_length) {
  MultipleProbe probe;
  std::vector<Morphism> common;
  for (auto& m : enumerate_morphisms(germ, x.source, max_length)) {
    if ((!target || m.target == *target) && divides_left(germ, x, m)
        && divides_left(germ, y, m)) {
      common.push_back(std::move(m));
    }
  }
  probe.found_any = !common.empty();
  for (auto const& m : common) {
    bool minimal = std::none_of(common.begin(), common.end(), [&](auto const& n) {
      return n != m && divides_left(germ, n, m);
    });
    if (minimal) {
      probe.minimal.push_back(m);
    }
  }
  for (auto const& m : probe.minimal) {
    if (probe.shortest.empty() || m.length() < probe.shortest.front().length()) {
      probe.shortest = {m};
    } else if (m.length() == probe.shortest.front().length()) {
      probe.shortest.push_back(m);
    }
  }
  if (probe.minimal.size() == 1) {
    probe.least = probe.minimal.front();
  }
  return probe;
}

RawPath parse_path(GermTable const& germ, std::string_view word,
                   std::optional<ObjectId> source) {
  RawPath            path;
  std::istringstream in{std::string(word)};
  std::string        token;
  while (in >> token) {
    auto e = germ.find(token);
    if (!e) {
      throw CategoryError(CategoryError::Kind::unknown_element,
                          "unknown element '" + token + "'");
    }
    path.letters.push_back(*e);
  }
  if (path.letters.empty()) {
    if (!source) {
      if (germ.object_count() != 1) {
        throw CategoryError(CategoryError::Kind::not_a_path,
                            "empty word needs a source object");
      }
      source = ObjectId{0};
    }
    path.source = *source;
  } else {
    path.source = germ.source(path.letters.front());
    if (source && *source != path.source) {
      throw CategoryError(CategoryError::Kind::source_target_mismatch,
                          "word does not start at the requested object");
    }
  }
  path_target(germ, path.source, path.letters);
  return path;
}

Morphism parse_morphism(GermTable const& germ, std::string_view word,
                        std::optional<ObjectId> source) {
  return normal_form(germ, parse_path(germ, word, source));
}

std::string format_elements(GermTable const&           germ,
                            std::span<ElementId const> elements) {
  std::string out = "[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) {
      out += ", ";
    }
    out += germ.label(elements[i]);
  }
  return out + "]";
}

std::string format(GermTable const& germ, Morphism const& m) {
  return format_elements(germ, m.factors);
}

}  // namespace garside
