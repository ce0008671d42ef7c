// One line per acceptance criterion; exit status 1 if any fails.  Every
// check is exact; runtime limits are wall-clock seconds on a single thread.

#include <chrono>
#include <concepts>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "garside/category.hpp"
#include "garside/conjugacy.hpp"
#include "garside/coxeter.hpp"
#include "garside/decomposition.hpp"
#include "garside/garside_structure.hpp"
#include "garside/germ.hpp"
#include "garside/ribbon.hpp"
#include "oracles.hpp"

using namespace garside;

namespace {

class Checks {
 public:
  void require(bool ok, std::string const& what) {
    require(ok, [&] { return what; });
  }
  // The message is only built on failure.
  template <std::invocable F>
  void require(bool ok, F const& what) {
    ++count_;
    if (!ok && failures_ == 0) {
      first_failure_ = what();
    }
    failures_ += !ok;
  }
  bool               ok() const { return failures_ == 0; }
  std::size_t        count() const { return count_; }
  std::size_t        failures() const { return failures_; }
  std::string const& first_failure() const { return first_failure_; }

 private:
  std::size_t count_ = 0, failures_ = 0;
  std::string first_failure_;
};

struct Criterion {
  char const*                  id;
  char const*                  title;
  double                       limit_seconds;
  std::function<void(Checks&)> body;
};

std::vector<Morphism> all_morphisms(GermTable const& g, std::size_t max_length) {
  std::vector<Morphism> out;
  for (std::uint32_t o = 0; o < g.object_count(); ++o) {
    for (auto& m : enumerate_morphisms(g, ObjectId{o}, max_length)) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

ElementId el(GermTable const& g, std::string_view name) { return *g.find(name); }

// C1 ------------------------------------------------------------------------

void counterexample(Checks& c) {
  auto g = fixtures::counterexample();
  auto r = check_locally_garside(g, G4Strategy::bounded_search(8));
  c.require(r.g1.verdict == Verdict::pass, "G1");
  c.require(r.g2.verdict == Verdict::pass, "G2");
  c.require(r.g3.verdict == Verdict::pass, "G3");
  c.require(r.g2_atoms.verdict == Verdict::pass, "G2'");
  c.require(r.g3_atoms.verdict == Verdict::pass, "G3'");
  c.require(r.g4.verdict == Verdict::pass, "G4 by search to length 8: " + r.g4.detail);

  auto a = parse_morphism(g, "a"), b = parse_morphism(g, "b");
  auto probe = probe_common_multiples(g, a, b, g.find_object("X"), 4);
  std::set<std::string> shortest;
  for (auto const& m : probe.shortest) {
    shortest.insert(format(g, m));
  }
  c.require(shortest == std::set<std::string>{"[c, u]", "[c, v]"},
            "the shortest common multiples ending at X are [c, u] and [c, v]");
  c.require(probe.shortest.size() == 2
                && !divides_left(g, probe.shortest[0], probe.shortest[1])
                && !divides_left(g, probe.shortest[1], probe.shortest[0]),
            "[c, u] and [c, v] are incomparable");
  // Both are minimal among all common multiples ending at X in the window.
  for (auto const& m : probe.shortest) {
    c.require(std::find(probe.minimal.begin(), probe.minimal.end(), m) != probe.minimal.end(),
              [&] { return format(g, m) + " is minimal"; });
  }
  c.require(!probe.least.has_value(), "no lcm ending at X");
}

// C2 ------------------------------------------------------------------------

void normal_forms(Checks& c) {
  auto g     = fixtures::a2();
  auto paths = oracle::all_paths(g, 6, true);
  c.require(paths.size() >= 15625, "at least 5^6 raw paths");
  oracle::BraidWords                                         braids;
  oracle::ContractionClasses                                 contractions(g, paths);
  std::map<std::string, Morphism>                            nf_of_class;
  std::map<std::size_t, Morphism>                            nf_of_contraction;
  std::map<std::string, std::vector<std::vector<ElementId>>> normal_in_class;
  std::map<std::string, std::size_t>                         fewest_letters;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto const& p   = paths[i];
    auto        m   = normal_form(g, p);
    auto        cls = braids.canonical(oracle::atom_word(g, p.letters));
    auto [it, fresh] = nf_of_class.emplace(cls, m);
    c.require(fresh || it->second == m,
              [&] { return "normal form not constant on the braid class of " + cls; });
    auto [jt, fresh2] = nf_of_contraction.emplace(contractions.find(i), m);
    c.require(fresh2 || jt->second == m, "normal form not constant on a contraction class");
    std::size_t letters = 0;
    for (auto x : p.letters) {
      letters += !g.is_identity(x);
    }
    auto [kt, fresh3] = fewest_letters.emplace(cls, letters);
    kt->second        = std::min(kt->second, letters);
    if (is_normal_sequence(g, p.letters)) {
      normal_in_class[cls].push_back(p.letters);
    }
  }
  // Distinct classes have distinct normal forms.
  std::set<Morphism> distinct;
  for (auto const& [cls, m] : nf_of_class) {
    distinct.insert(m);
  }
  c.require(distinct.size() == nf_of_class.size(), "normal form separates classes");
  for (auto const& [cls, m] : nf_of_class) {
    auto const& normals = normal_in_class[cls];
    c.require(normals.size() == 1 && normals[0] == m.factors, [&] {
      return "class " + cls + " has " + std::to_string(normals.size())
             + " locally normal sequences";
    });
    c.require(m.length() == fewest_letters.at(cls),
              [&] { return "nu differs from the least letter count on " + cls; });
  }
}

// C3 ------------------------------------------------------------------------

void lattice(Checks& c) {
  auto g      = fixtures::a2();
  auto small  = enumerate_morphisms(g, ObjectId{0}, 3);
  auto window = enumerate_morphisms(g, ObjectId{0}, 6);
  oracle::DivisibilityWindow w(g, window);
  for (auto const& x : small) {
    for (auto const& y : small) {
      auto pair = [&] { return format(g, x) + ", " + format(g, y); };
      auto l    = lcm(g, x, y);
      auto ol   = w.lcm(w.index(x), w.index(y));
      c.require(l.has_value(), [&] { return "NoCommonMultiple for " + pair(); });
      c.require(l && ol && w.at(*ol) == *l, [&] { return "lcm mismatch on " + pair(); });
      auto d  = gcd(g, x, y);
      auto od = w.gcd(w.index(x), w.index(y));
      c.require(od && w.at(*od) == d, [&] { return "gcd mismatch on " + pair(); });
    }
  }
}

// C4 ------------------------------------------------------------------------

void garside_synthesis(Checks& c) {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  c.require(g.label(gs.delta[0]) == "aba", "Delta = aba");
  std::map<std::string, std::string> swap{{"1", "1"},   {"a", "b"},   {"b", "a"},
                                          {"ab", "ba"}, {"ba", "ab"}, {"aba", "aba"}};
  auto delta = from_element(g, gs.delta[0]);
  for (std::uint32_t i = 0; i < g.element_count(); ++i) {
    ElementId f{i};
    auto      label = std::string(g.label(f));
    c.require(gs.phi_elem[i] == el(g, swap.at(label)), "Phi(" + label + ") swaps a and b");
    auto lhs = multiply(g, from_element(g, f), delta);
    auto rhs = multiply(g, delta, from_element(g, gs.phi_elem[i]));
    c.require(lhs == rhs, "f Delta = Delta Phi(f) at " + label);
    c.require(gs.tilde[gs.tilde[i].index] == gs.phi_elem[i], "tilde tilde = Phi at " + label);
    c.require(multiply(g, from_element(g, f), from_element(g, gs.tilde[i])) == delta,
              "f tilde(f) = Delta at " + label);
  }
  auto bi = check_garside_bilatere(g, gs, 3);
  c.require(bi.ok, "bilateral check at bound 3: " + bi.detail);
}

// C5 ------------------------------------------------------------------------

void ribbons(Checks& c) {
  auto a3      = CoxeterSystem::preset("A3");
  auto ambient = lift_germ(a3);
  auto s1      = a3.parse_set("{s1}");
  c.require(ribbon_orbit(a3, s1).size() == 3, "orbit of {s1} has 3 objects");
  auto rg = build_ribbon_germ(a3, s1);
  c.require(rg.objects.size() == 3, "three objects");
  auto r = check_ribbon_germ(rg);
  c.require(r.g1.verdict == Verdict::pass, "G1");
  c.require(r.g2.verdict == Verdict::pass, "G2");
  c.require(r.g3.verdict == Verdict::pass, "G3");
  c.require(r.g2_atoms.verdict == Verdict::pass, "G2'");
  c.require(r.g3_atoms.verdict == Verdict::pass, "G3'");
  auto searched = check_locally_garside(rg.germ, G4Strategy::bounded_search(3));
  c.require(searched.g4.verdict == Verdict::pass, "G4 by search to length 3");
  c.require(ribbon_atoms(rg) == germ_atoms(rg.germ), "ribbon atoms = germ atoms");

  auto        gs = spherical_garside(rg);
  auto const& d  = rg.elements[gs.delta[rg.object(s1).index].index];
  c.require(d.w.length() == 5, "Delta_{s1} has length 5");
  c.require(d.target == a3.parse_set("{s3}"), "Delta_{s1} ends at {s3}");

  auto sample = all_morphisms(rg.germ, 3);
  c.require(sample.size() > 100, "ribbon morphisms with nu <= 3 were enumerated");
  for (auto const& m : sample) {
    auto amb = to_ambient(rg, ambient, m);
    auto res = ribbon_nf_stays_ribbon(rg, ambient, rg.objects[m.source.index], amb);
    c.require(res.ok, [&] { return "normal form leaves the ribbon germ: " + res.detail; });
    bool same = amb.length() == m.length();
    for (std::size_t i = 0; same && i < m.length(); ++i) {
      same = ambient.elements[amb.factors[i].index] == rg.elements[m.factors[i].index].w;
    }
    c.require(same, "ribbon and ambient normal forms differ");
  }
}

// C6 ------------------------------------------------------------------------

void conjugacy(Checks& c) {
  auto g   = fixtures::a2();
  auto all = enumerate_morphisms(g, ObjectId{0}, 3);
  for (auto const* w : {"a", "ab", "aba"}) {
    Family family{parse_morphism(g, w)};
    // Independent filter: x <= w x.
    std::vector<Morphism> expected;
    for (auto const& x : all) {
      if (divides_left(g, x, multiply(g, family[0], x))) {
        expected.push_back(x);
      }
    }
    std::set<Morphism> got;
    for (auto const& cm : enumerate_conj_morphisms(g, family, 3)) {
      got.insert(cm.x);
    }
    c.require(got == std::set<Morphism>(expected.begin(), expected.end()),
              std::string("conjugating morphisms of {") + w + "}");
    for (auto const& x : expected) {
      c.require(conj_normal_form(g, family, x) == x, [&] {
        return std::string("conjugacy normal form differs on ") + format(g, x);
      });
      for (auto const& y : expected) {
        auto l = lcm(g, x, y);
        c.require(l && is_conjugating(g, family, *l), [&] {
          return "lcm of " + format(g, x) + ", " + format(g, y) + " is not conjugating";
        });
      }
    }
  }
}

// C7 ------------------------------------------------------------------------

void decomposition_posets(Checks& c) {
  auto g = fixtures::a2();
  auto e = build_Eg(g, parse_morphism(g, "aba"));
  c.require(e.vertices.size() == 7, "E(Delta) has 7 vertices");
  // The whole order complex, no shortcut.
  SimplyConnectedOptions full;
  full.cone_shortcut  = false;
  full.beat_reduction = false;
  std::size_t posets  = 0;
  for (auto const& m : enumerate_morphisms(g, ObjectId{0}, 3)) {
    std::size_t letters = 0;
    for (auto x : m.factors) {
      letters += g.label(x).size();
    }
    if (m.is_identity() || letters > 5) {
      continue;
    }
    auto r = check_simply_connected(build_Eg(g, m), full);
    c.require(r.connected && r.homology_computed && r.h1_trivial(),
              [&] { return "E(" + format(g, m) + ") is not connected with H1 = 0"; });
    ++posets;
  }
  c.require(posets > 30, "every g with nu <= 3 and at most 5 letters");
}

// C8 ------------------------------------------------------------------------

void pn_suite(Checks& c) {
  auto a2 = fixtures::a2();
  for (std::size_t n : {1u, 2u, 3u}) {
    auto pn  = build_Pn_germ(a2, n, PnVariant::full);
    auto tag = " (n=" + std::to_string(n) + ")";
    // Column homomorphism on every defined product.
    for (auto const& [x, y, z] : pn.germ.explicit_products()) {
      auto const& fx = pn.elements[x.index];
      auto const& fy = pn.elements[y.index];
      auto const& fz = pn.elements[z.index];
      bool        ok = true;
      for (std::size_t k = 0; k <= n; ++k) {
        auto p = a2.product(fx.columns[k], fy.columns[k]);
        ok     = ok && p && *p == fz.columns[k];
      }
      c.require(ok, [&] { return "column homomorphism" + tag; });
    }
    // Grid divisibility is componentwise divisibility.
    for (auto const& o : pn.objects) {
      auto from = pn.germ.elements_from(pn.object(o));
      for (auto x : from) {
        for (auto y : from) {
          bool componentwise = true;
          for (std::size_t k = 0; k <= n; ++k) {
            componentwise = componentwise
                            && a2.left_divides(pn.elements[x.index].columns[k],
                                               pn.elements[y.index].columns[k]);
          }
          c.require(componentwise == pn.germ.left_divides(x, y)
                        && componentwise
                               == grid_divides(a2, pn.elements[x.index], pn.elements[y.index]),
                    [&] { return "grid divisibility" + tag; });
        }
      }
    }
    if (n <= 2) {
      auto sample = all_morphisms(pn.germ, 2);
      for (std::size_t i = 0; i < sample.size(); i += 5) {
        auto cf = grid_columns(pn, sample[i]);
        for (std::size_t j = 0; j < sample.size(); j += 3) {
          if (sample[j].source != sample[i].source) {
            continue;
          }
          c.require(divides_left(pn.germ, sample[i], sample[j])
                        == grid_divides(a2, cf, grid_columns(pn, sample[j])),
                    [&] { return "grid divisibility on length-2 morphisms" + tag; });
        }
      }
    }

    auto id = build_Pn_germ(a2, n, PnVariant::id);
    std::set<std::pair<ObjectId, ObjectId>> pairs;
    for (std::uint32_t i = 0; i < id.germ.element_count(); ++i) {
      c.require(pairs.emplace(id.germ.source(ElementId{i}), id.germ.target(ElementId{i})).second,
                [&] { return "P_n(Id) has two germ morphisms between one pair" + tag; });
    }
  }

  auto p3 = build_Pn_germ(a2, 3, PnVariant::id);
  for (auto const& a : p3.objects) {
    auto steps  = unique_morphism_to_nf(a2, a);
    auto target = steps.empty() ? a : steps.back().target;
    // The independent normal form of a_1 a_2 a_3, padded to length 3.
    auto       m = normal_form(a2, RawPath{a2.source(a.entries[0]), a.entries});
    PathObject expected{m.factors};
    while (expected.size() < 3) {
      expected.entries.push_back(a2.identity(a2.target(a.entries.back())));
    }
    c.require(target == expected,
              [&] { return "the morphism from " + format_path(a2, a) + " misses fn(a)"; });
    bool chained = true;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      chained = chained && p3.element(steps[k].source, steps[k].columns).has_value()
                && steps[k].source == (k ? steps[k - 1].target : a);
    }
    std::size_t count = 0;
    for (auto const& x : enumerate_morphisms(p3.germ, p3.object(a), steps.size() + 1)) {
      count += x.target == p3.object(target);
    }
    c.require(chained && count == 1,
              [&] { return "a -> fn(a) is not unique for " + format_path(a2, a); });
  }

  auto a3   = CoxeterSystem::preset("A3");
  auto lift = lift_germ(a3);
  auto w    = [&](char const* s) { return lift.element(a3.parse(s)); };
  std::vector<std::pair<ElementId, ElementId>> flip{
      {w("s1"), w("s3")}, {w("s2"), w("s2")}, {w("s3"), w("s1")}};
  auto fixed = fixed_subgerm(lift.germ, automorphism_from_atoms(lift.germ, flip));
  std::set<std::string> atoms;
  for (auto x : germ_atoms(fixed.germ)) {
    atoms.insert(std::string(fixed.germ.label(x)));
  }
  c.require(atoms == std::set<std::string>{"s2", "s1s3"}, "fixed atoms of A3 are s2, s1s3");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"C1", "counterexample reproduction", 1.0, counterexample},
      {"C2", "normal-form oracle equivalence", 30.0, normal_forms},
      {"C3", "lattice, lcm and gcd oracle", 60.0, lattice},
      {"C4", "Garside synthesis", 1.0, garside_synthesis},
      {"C5", "ribbon category", 30.0, ribbons},
      {"C6", "conjugacy coincidence", 30.0, conjugacy},
      {"C7", "decomposition posets", 60.0, decomposition_posets},
      {"C8", "P_n suite", 60.0, pn_suite},
  };
  bool all = true;
  for (auto const& cr : criteria) {
    Checks      checks;
    std::string error;
    auto        start = std::chrono::steady_clock::now();
    try {
      cr.body(checks);
    } catch (std::exception const& e) {
      error = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < cr.limit_seconds;
    bool ok      = error.empty() && checks.ok() && in_time;
    all          = all && ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", secs, cr.limit_seconds);
    std::cout << (ok ? "PASS " : "FAIL ") << cr.id << ' ' << cr.title << " (" << timing
              << ", " << checks.count() << " checks)";
    if (!error.empty()) {
      std::cout << ": exception: " << error;
    } else if (!checks.ok()) {
      std::cout << ": " << checks.failures() << " failed, first: " << checks.first_failure();
    } else if (!in_time) {
      std::cout << ": over the time limit";
    }
    std::cout << '\n';
  }
  return all ? 0 : 1;
}
