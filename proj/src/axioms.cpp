#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "detail.hpp"
#include "garside/germ.hpp"

namespace garside {

namespace {

  std::string labels(GermTable const& germ, std::vector<ElementId> const& xs) {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) {
        out += ", ";
      }
      out += germ.label(xs[i]);
    }
    return out + ")";
  }

  AxiomResult pass() { return {Verdict::pass, {}, {}}; }

  AxiomResult fail(GermTable const& germ, std::vector<ElementId> witness,
                   std::string what) {
    auto detail = what + " " + labels(germ, witness);
    return {Verdict::fail, std::move(witness), std::move(detail)};
  }

  // Common right multiples of e and f inside the germ.
  std::vector<ElementId> common_multiples(GermTable const& germ, ElementId e,
                                          ElementId f) {
    std::vector<ElementId> out;
    for (auto const& rp : germ.right_products(e)) {
      if (germ.left_divides(f, rp.result)) {
        out.push_back(rp.result);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<ElementId> least_of(GermTable const&              germ,
                                    std::vector<ElementId> const& ms) {
    for (auto m0 : ms) {
      if (std::all_of(ms.begin(), ms.end(),
                      [&](ElementId m) { return germ.left_divides(m0, m); })) {
        return m0;
      }
    }
    return std::nullopt;
  }

  // Minimal elements of a set of common multiples, used as a witness.
  std::vector<ElementId> minimal_of(GermTable const&              germ,
                                    std::vector<ElementId> const& ms) {
    std::vector<ElementId> out;
    for (auto m : ms) {
      bool minimal = std::none_of(ms.begin(), ms.end(), [&](ElementId n) {
        return n != m && germ.left_divides(n, m);
      });
      if (minimal) {
        out.push_back(m);
      }
    }
    return out;
  }

  bool is_atom(GermTable const& germ, ElementId e) {
    if (germ.is_identity(e)) {
      return false;
    }
    return std::all_of(
        germ.factorizations(e).begin(), germ.factorizations(e).end(),
        [&](Factorization const& f) {
          return germ.is_identity(f.left) || f.left == e;
        });
  }

  AxiomResult check_g1(GermTable const& germ) {
    auto const n = germ.element_count();
    // Edge f -> e whenever f is a proper left divisor of e.
    std::vector<std::vector<ElementId>> succ(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      ElementId e{i};
      for (auto const& f : germ.factorizations(e)) {
        if (f.left != e) {
          succ[f.left.index].push_back(e);
        }
      }
    }
    enum : std::uint8_t { white, grey, black };
    std::vector<std::uint8_t> colour(n, white);
    std::vector<std::pair<ElementId, std::size_t>> stack;
    for (std::uint32_t root = 0; root < n; ++root) {
      if (colour[root] != white) {
        continue;
      }
      stack.push_back({ElementId{root}, 0});
      colour[root] = grey;
      while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next == succ[v.index].size()) {
          colour[v.index] = black;
          stack.pop_back();
          continue;
        }
        auto w = succ[v.index][next++];
        if (colour[w.index] == white) {
          colour[w.index] = grey;
          stack.push_back({w, 0});
        } else if (colour[w.index] == grey) {
          std::vector<ElementId> cycle;
          auto it = std::find_if(stack.begin(), stack.end(),
                                 [&](auto const& fr) { return fr.first == w; });
          for (; it != stack.end(); ++it) {
            cycle.push_back(it->first);
          }
          return fail(germ, std::move(cycle),
                      "proper left divisibility has a cycle");
        }
      }
    }
    return pass();
  }

  AxiomResult check_g2(GermTable const& germ, std::vector<ElementId> const& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        auto e = xs[i], f = xs[j];
        if (germ.source(e) != germ.source(f)) {
          continue;
        }
        auto ms = common_multiples(germ, e, f);
        if (!ms.empty() && !least_of(germ, ms)) {
          std::vector<ElementId> w{e, f};
          for (auto m : minimal_of(germ, ms)) {
            w.push_back(m);
          }
          return fail(germ, std::move(w),
                      "common right multiples without a right lcm");
        }
      }
    }
    return pass();
  }

  AxiomResult check_g3(GermTable const& germ, bool atoms_only) {
    for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
      ElementId x{i};
      std::vector<ElementId> rs;
      for (auto const& rp : germ.right_products(x)) {
        if (!atoms_only || is_atom(germ, rp.right)) {
          rs.push_back(rp.right);
        }
      }
      for (std::size_t a = 0; a < rs.size(); ++a) {
        for (std::size_t b = a + 1; b < rs.size(); ++b) {
          auto ms = common_multiples(germ, rs[a], rs[b]);
          if (ms.empty()) {
            continue;
          }
          auto l = least_of(germ, ms);
          if (!l) {
            continue;  // reported by G2
          }
          if (!germ.product(x, *l)) {
            return fail(germ, {x, rs[a], rs[b], *l},
                        "x*u and x*v defined but x*lcm(u,v) is not");
          }
        }
      }
    }
    return pass();
  }

  class UnionFind {
   public:
    std::size_t add() {
      parent_.push_back(parent_.size());
      return parent_.size() - 1;
    }
    std::size_t find(std::size_t x) {
      while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x          = parent_[x];
      }
      return x;
    }
    void unite(std::size_t x, std::size_t y) { parent_[find(x)] = find(y); }

   private:
    std::vector<std::size_t> parent_;
  };

  // Falsification only: equalities found here hold in C(P), because every
  // union is a contraction by a germ product.  Paths are nodes of a trie;
  // nodes 0..objects-1 are the empty paths.
  AxiomResult search_g4(GermTable const& germ, G4Strategy const& strategy) {
    struct Node {
      std::uint32_t parent;
      std::uint32_t letter;
      std::uint32_t length;
      ObjectId      source;
      ObjectId      end;
    };
    auto const max_length = strategy.max_length + 1;
    std::vector<Node>                              nodes;
    std::unordered_map<std::uint64_t, std::uint32_t> child;
    auto key = [](std::uint32_t node, std::uint32_t letter) {
      return (static_cast<std::uint64_t>(node) << 32) | letter;
    };
    for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
      nodes.push_back({o, 0, 0, ObjectId{o}, ObjectId{o}});
    }
    std::vector<std::uint32_t> frontier(nodes.size());
    std::iota(frontier.begin(), frontier.end(), 0u);
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<std::uint32_t> next;
      for (auto pi : frontier) {
        for (auto x : germ.elements_from(nodes[pi].end)) {
          if (germ.is_identity(x)) {
            continue;
          }
          if (nodes.size() >= strategy.path_budget) {
            return {Verdict::unchecked, {},
                    "path budget exhausted at length " + std::to_string(len - 1)};
          }
          auto id = static_cast<std::uint32_t>(nodes.size());
          nodes.push_back({pi, x.index, static_cast<std::uint32_t>(len), nodes[pi].source,
                           germ.target(x)});
          child.emplace(key(pi, x.index), id);
          next.push_back(id);
        }
      }
      frontier = std::move(next);
    }
    auto letters_of = [&](std::uint32_t n, std::vector<std::uint32_t>& out) {
      out.assign(nodes[n].length, 0);
      for (auto k = nodes[n].length; k-- > 0; n = nodes[n].parent) {
        out[k] = nodes[n].letter;
      }
    };
    UnionFind classes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      classes.add();
    }
    std::vector<std::uint32_t> p;
    for (std::uint32_t n = 0; n < nodes.size(); ++n) {
      letters_of(n, p);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        auto c = germ.product(ElementId{p[i]}, ElementId{p[i + 1]});
        if (!c) {
          continue;
        }
        std::uint32_t q = nodes[n].source.index;
        auto walk = [&](std::uint32_t letter) { q = child.at(key(q, letter)); };
        for (std::size_t k = 0; k < i; ++k) {
          walk(p[k]);
        }
        if (!germ.is_identity(*c)) {
          walk(c->index);
        }
        for (std::size_t k = i + 2; k < p.size(); ++k) {
          walk(p[k]);
        }
        classes.unite(n, q);
      }
    }
    for (std::uint32_t z = 0; z < nodes.size(); ++z) {
      if (nodes[z].length > strategy.max_length || nodes[z].length == 0) {
        continue;
      }
      // (target object, class of z*x) -> x
      std::map<std::pair<std::uint32_t, std::size_t>, ElementId> seen;
      for (auto x : germ.elements_from(nodes[z].end)) {
        auto zx  = germ.is_identity(x) ? z : child.at(key(z, x.index));
        auto cls = std::pair{germ.target(x).index, classes.find(zx)};
        auto [it, inserted] = seen.emplace(cls, x);
        if (!inserted) {
          letters_of(z, p);
          std::vector<ElementId> w;
          for (auto l : p) {
            w.push_back(ElementId{l});
          }
          w.push_back(it->second);
          w.push_back(x);
          return fail(germ, std::move(w),
                      "z*x = z*y with x != y; z, then x and y");
        }
      }
    }
    return pass();
  }

}  // namespace

bool AxiomReport::locally_garside() const {
  return g1.verdict == Verdict::pass && g2.verdict == Verdict::pass
         && g3.verdict == Verdict::pass && g4.verdict != Verdict::fail;
}

bool AxiomReport::locally_garside_by_atoms() const {
  return g1.verdict == Verdict::pass && g2_atoms.verdict == Verdict::pass
         && g3_atoms.verdict == Verdict::pass && g4.verdict != Verdict::fail;
}

AxiomReport check_locally_garside(GermTable const& germ,
                                  G4Strategy const& g4) {
  AxiomReport report;
  report.g4_strategy = g4;
  std::vector<ElementId> all;
  for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
    all.push_back(ElementId{i});
  }
  auto atoms = germ_atoms(germ);

  report.g1       = check_g1(germ);
  report.g2       = check_g2(germ, all);
  report.g3       = check_g3(germ, false);
  report.g2_atoms = check_g2(germ, atoms);
  report.g3_atoms = check_g3(germ, true);
  if (g4.kind == G4Strategy::Kind::assume) {
    report.g4 = {Verdict::unchecked, {}, "assumed: " + g4.assumption_reason};
    report.warnings.push_back("G4 not checked (" + g4.assumption_reason + ")");
  } else {
    report.g4 = search_g4(germ, g4);
    if (report.g4.verdict == Verdict::pass) {
      report.g4.detail = "no violation with |z| <= "
                         + std::to_string(g4.max_length);
    } else if (report.g4.verdict == Verdict::unchecked) {
      report.warnings.push_back("G4 search incomplete: " + report.g4.detail);
    }
  }
  for (auto const& note : germ.notes()) {
    report.warnings.push_back(note);
  }
  return report;
}

GermTable opposite_germ(GermTable const& germ) {
  GermTable::Builder b;
  for (std::uint32_t o = 0; o < germ.object_count(); ++o) {
    b.add_object(std::string(germ.object_name(ObjectId{o})));
  }
  for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
    auto const& el = germ.element(ElementId{i});
    b.add_element(std::string(germ.label(el.id)), el.target, el.source,
                  el.is_identity);
  }
  for (auto const& [x, y, z] : germ.explicit_products()) {
    b.add_product(y, x, z);
  }
  for (auto const& note : germ.notes()) {
    b.add_note(note);
  }
  return b.finish(false);
}

std::vector<ElementId> germ_left_divisors(GermTable const& germ, ElementId e) {
  std::vector<ElementId> out;
  for (auto const& f : germ.factorizations(e)) {
    out.push_back(f.left);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  germ.sort_for_display(out);
  return out;
}

std::optional<ElementId> germ_lcm(GermTable const& germ, ElementId e,
                                  ElementId f) {
  if (germ.source(e) != germ.source(f)) {
    throw GermError(GermError::Kind::malformed_spec,
                    "lcm of elements with different sources", {e, f});
  }
  auto ms = common_multiples(germ, e, f);
  if (ms.empty()) {
    return std::nullopt;
  }
  if (auto l = least_of(germ, ms)) {
    return l;
  }
  std::vector<ElementId> w{e, f};
  for (auto m : minimal_of(germ, ms)) {
    w.push_back(m);
  }
  throw GermError(GermError::Kind::not_locally_garside,
                  "common right multiples of '" + std::string(germ.label(e))
                      + "' and '" + std::string(germ.label(f))
                      + "' have no lcm",
                  std::move(w));
}

ElementId germ_gcd(GermTable const& germ, std::span<ElementId const> family) {
  if (family.empty()) {
    throw GermError(GermError::Kind::malformed_spec, "gcd of an empty family");
  }
  auto common = germ_left_divisors(germ, family[0]);
  for (auto x : family.subspan(1)) {
    if (germ.source(x) != germ.source(family[0])) {
      throw GermError(GermError::Kind::malformed_spec,
                      "gcd of elements with different sources",
                      {family[0], x});
    }
    std::erase_if(common,
                  [&](ElementId d) { return !germ.left_divides(d, x); });
  }
  for (auto d : common) {
    if (std::all_of(common.begin(), common.end(),
                    [&](ElementId c) { return germ.left_divides(c, d); })) {
      return d;
    }
  }
  throw GermError(GermError::Kind::not_locally_garside,
                  "family has no greatest common left divisor",
                  {family.begin(), family.end()});
}

std::vector<ElementId> germ_atoms(GermTable const& germ) {
  std::vector<ElementId> out;
  for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
    if (is_atom(germ, ElementId{i})) {
      out.push_back(ElementId{i});
    }
  }
  germ.sort_for_display(out);
  return out;
}

}  // namespace garside
