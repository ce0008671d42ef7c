#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "garside/germ.hpp"

using namespace garside;

namespace {

std::set<std::string> names(GermTable const& g, std::vector<ElementId> const& xs) {
  std::set<std::string> out;
  for (auto x : xs) {
    out.insert(std::string(g.label(x)));
  }
  return out;
}

ElementId el(GermTable const& g, std::string_view name) {
  auto e = g.find(name);
  REQUIRE(e.has_value());
  return *e;
}

// Product lookup straight from the textual description, identities included.
std::map<std::pair<std::string, std::string>, std::string>
spec_table(GermSpec const& spec) {
  std::map<std::pair<std::string, std::string>, std::string> t;
  for (auto const& [a, b, c] : spec.products) {
    t[{a, b}] = c;
  }
  for (auto const& e : spec.elements) {
    for (auto const& i : spec.elements) {
      if (!i.identity) {
        continue;
      }
      if (i.source == e.target) {
        t[{e.name, i.name}] = e.name;
      }
      if (i.source == e.source) {
        t[{i.name, e.name}] = e.name;
      }
    }
  }
  return t;
}

}  // namespace

TEST_CASE("A2 germ matches its description on every pair") {
  auto spec  = fixtures::a2_spec();
  auto germ  = GermTable::build(spec);
  auto table = spec_table(spec);
  CHECK(germ.element_count() == 6);
  CHECK(germ.object_count() == 1);
  for (auto const& x : spec.elements) {
    for (auto const& y : spec.elements) {
      auto p   = germ.product(el(germ, x.name), el(germ, y.name));
      auto it  = table.find({x.name, y.name});
      bool has = it != table.end();
      REQUIRE(p.has_value() == has);
      if (has) {
        CHECK(germ.label(*p) == it->second);
      }
    }
  }
}

TEST_CASE("germ associativity holds on every A2 triple") {
  auto germ = fixtures::a2();
  auto n    = static_cast<std::uint32_t>(germ.element_count());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      for (std::uint32_t k = 0; k < n; ++k) {
        ElementId a{i}, b{j}, c{k};
        auto ab = germ.product(a, b), bc = germ.product(b, c);
        std::optional<ElementId> left, right;
        if (ab) {
          left = germ.product(*ab, c);
        }
        if (bc) {
          right = germ.product(a, *bc);
        }
        CHECK((ab && left) == (bc && right));
        if (ab && left && bc && right) {
          CHECK(*left == *right);
        }
      }
    }
  }
}

TEST_CASE("malformed germ descriptions are rejected") {
  SUBCASE("typing violation") {
    auto s = fixtures::counterexample_spec();
    s.products.push_back({"s", "a", "c"});
    try {
      GermTable::build(s);
      FAIL("expected an error");
    } catch (GermError const& e) {
      CHECK(e.kind() == GermError::Kind::malformed_spec);
    }
  }
  SUBCASE("dangling element") {
    auto s = fixtures::a2_spec();
    s.products.push_back({"a", "zz", "aba"});
    CHECK_THROWS_AS(GermTable::build(s), GermError);
  }
  SUBCASE("missing identity") {
    auto s = fixtures::a2_spec();
    s.elements.erase(s.elements.begin());
    CHECK_THROWS_AS(GermTable::build(s), GermError);
  }
  SUBCASE("associativity violation carries the triple") {
    auto s = fixtures::a2_spec();
    s.products.push_back({"a", "a", "ab"});
    try {
      GermTable::build(s);
      FAIL("expected an error");
    } catch (GermError const& e) {
      CHECK(e.kind() == GermError::Kind::axiom_violation);
      CHECK(e.witness().size() == 3);
    }
  }
}

TEST_CASE("axiom checks on the A2 germ") {
  auto germ = fixtures::a2();
  auto r    = check_locally_garside(germ, G4Strategy::bounded_search(4));
  CHECK(r.g1.verdict == Verdict::pass);
  CHECK(r.g2.verdict == Verdict::pass);
  CHECK(r.g3.verdict == Verdict::pass);
  CHECK(r.g4.verdict == Verdict::pass);
  CHECK(r.g2_atoms.verdict == Verdict::pass);
  CHECK(r.g3_atoms.verdict == Verdict::pass);
  CHECK(r.locally_garside());
  CHECK(r.locally_garside_by_atoms());
}

TEST_CASE("assumed G4 is reported as unchecked with a warning") {
  auto r = check_locally_garside(fixtures::a2());
  CHECK(r.g4.verdict == Verdict::unchecked);
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.locally_garside());
}

TEST_CASE("axiom checks on the two-object counterexample") {
  auto germ = fixtures::counterexample();
  auto r    = check_locally_garside(germ, G4Strategy::bounded_search(6));
  CHECK(r.locally_garside());
  CHECK(r.locally_garside_by_atoms());
  CHECK(r.g4.verdict == Verdict::pass);
}

TEST_CASE("G1 fails on a finite group germ with a cycle witness") {
  auto germ = GermTable::build(fixtures::cyclic3_spec());
  auto r    = check_locally_garside(germ);
  REQUIRE(r.g1.verdict == Verdict::fail);
  CHECK(r.g1.witness.size() >= 2);
  // The witness is a cycle of proper left divisibility.
  auto const& w = r.g1.witness;
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(germ.left_divides(w[i], w[(i + 1) % w.size()]));
  }
  CHECK_FALSE(r.locally_garside());
}

TEST_CASE("G4 search refutes x*y = x") {
  auto germ = GermTable::build(fixtures::absorbing_spec());
  auto r    = check_locally_garside(germ, G4Strategy::bounded_search(2));
  CHECK(r.g1.verdict == Verdict::pass);
  REQUIRE(r.g4.verdict == Verdict::fail);
  CHECK(r.g4.witness.size() >= 3);
  CHECK_FALSE(r.locally_garside());
}

TEST_CASE("G4 search respects its path budget") {
  auto s     = G4Strategy::bounded_search(10);
  s.path_budget = 50;
  auto r     = check_locally_garside(fixtures::a2(), s);
  CHECK(r.g4.verdict == Verdict::unchecked);
}

TEST_CASE("G4 search agrees with right simplification") {
  // A germ passing G1 and G4 has no x != 1 with x*y = y.
  for (auto spec : {fixtures::a2_spec(), fixtures::counterexample_spec(),
                    fixtures::free1_spec()}) {
    auto germ = GermTable::build(spec);
    auto r    = check_locally_garside(germ, G4Strategy::bounded_search(3));
    REQUIRE(r.locally_garside());
    for (std::uint32_t i = 0; i < germ.element_count(); ++i) {
      for (auto const& rp : germ.right_products(ElementId{i})) {
        if (rp.result == rp.right) {
          CHECK(germ.is_identity(ElementId{i}));
        }
      }
    }
  }
}

TEST_CASE("atom-level and full axiom checks agree across fixtures") {
  for (auto spec : {fixtures::a2_spec(), fixtures::counterexample_spec(),
                    fixtures::free1_spec(), fixtures::cyclic3_spec(),
                    fixtures::absorbing_spec()}) {
    auto r = check_locally_garside(GermTable::build(spec),
                                   G4Strategy::bounded_search(3));
    CHECK(r.locally_garside() == r.locally_garside_by_atoms());
  }
}

TEST_CASE("left divisors") {
  auto germ = fixtures::a2();
  CHECK(names(germ, germ_left_divisors(germ, el(germ, "aba")))
        == std::set<std::string>{"1", "a", "b", "ab", "ba", "aba"});
  CHECK(names(germ, germ_left_divisors(germ, el(germ, "a")))
        == std::set<std::string>{"1", "a"});
  auto ce = fixtures::counterexample();
  CHECK(names(ce, germ_left_divisors(ce, el(ce, "c")))
        == std::set<std::string>{"1X", "a", "b", "c"});
}

TEST_CASE("germ lcm agrees with a scan of common multiples") {
  auto spec  = fixtures::a2_spec();
  auto germ  = GermTable::build(spec);
  auto table = spec_table(spec);
  auto divides = [&](std::string const& x, std::string const& y) {
    for (auto const& e : spec.elements) {
      auto it = table.find({x, e.name});
      if (it != table.end() && it->second == y) {
        return true;
      }
    }
    return false;
  };
  for (auto const& x : spec.elements) {
    for (auto const& y : spec.elements) {
      std::vector<std::string> common;
      for (auto const& m : spec.elements) {
        if (divides(x.name, m.name) && divides(y.name, m.name)) {
          common.push_back(m.name);
        }
      }
      std::optional<std::string> least;
      for (auto const& m : common) {
        if (std::all_of(common.begin(), common.end(),
                        [&](auto const& k) { return divides(m, k); })) {
          least = m;
        }
      }
      auto l = germ_lcm(germ, el(germ, x.name), el(germ, y.name));
      REQUIRE(l.has_value() == least.has_value());
      if (l) {
        CHECK(germ.label(*l) == *least);
      }
    }
  }
  CHECK(germ.label(*germ_lcm(germ, el(germ, "a"), el(germ, "b"))) == "aba");
  auto ce = fixtures::counterexample();
  CHECK(ce.label(*germ_lcm(ce, el(ce, "a"), el(ce, "b"))) == "c");
  CHECK_FALSE(germ_lcm(ce, el(ce, "s"), el(ce, "t")).has_value());
}

TEST_CASE("germ gcd") {
  auto germ = fixtures::a2();
  std::vector<ElementId> f1{el(germ, "ab"), el(germ, "aba")};
  CHECK(germ.label(germ_gcd(germ, f1)) == "ab");
  std::vector<ElementId> f2{el(germ, "a"), el(germ, "b")};
  CHECK(germ.label(germ_gcd(germ, f2)) == "1");
  std::vector<ElementId> f3{el(germ, "ba")};
  CHECK(germ.label(germ_gcd(germ, f3)) == "ba");
}

TEST_CASE("germ atoms") {
  auto germ = fixtures::a2();
  CHECK(names(germ, germ_atoms(germ)) == std::set<std::string>{"a", "b"});
  auto ce = fixtures::counterexample();
  CHECK(names(ce, germ_atoms(ce))
        == std::set<std::string>{"s", "t", "a", "b", "u", "v"});
  GermSpec trivial;
  trivial.objects  = {"*"};
  trivial.elements = {{"1", "*", "*", true}};
  CHECK(germ_atoms(GermTable::build(trivial)).empty());
}

TEST_CASE("subgerms and their stability flags") {
  auto germ = fixtures::a2();
  std::vector<ObjectId> objs{ObjectId{0}};
  SUBCASE("{1, a}") {
    std::vector<ElementId> xs{el(germ, "a")};
    auto sg = subgerm(germ, objs, xs);
    CHECK(sg.germ.element_count() == 2);
    CHECK(sg.stable_by_complement);
    CHECK(sg.stable_by_lcm);
    CHECK(sg.stable_by_alpha2);
    CHECK(check_locally_garside(sg.germ).locally_garside());
  }
  SUBCASE("{1, ab}: no escaping product, divisibility restricts") {
    std::vector<ElementId> xs{el(germ, "ab")};
    auto sg = subgerm(germ, objs, xs);
    CHECK(sg.germ.element_count() == 2);
    CHECK(sg.stable_by_complement);
  }
  SUBCASE("{1, a, ab, aba} loses a complement") {
    std::vector<ElementId> xs{el(germ, "a"), el(germ, "ab"), el(germ, "aba")};
    auto sg = subgerm(germ, objs, xs);
    CHECK_FALSE(sg.stable_by_complement);
  }
  SUBCASE("not closed") {
    std::vector<ElementId> xs{el(germ, "a"), el(germ, "b")};
    try {
      subgerm(germ, objs, xs);
      FAIL("expected NotClosed");
    } catch (GermError const& e) {
      CHECK(e.kind() == GermError::Kind::not_closed);
      CHECK(e.witness().size() == 3);
    }
  }
}

TEST_CASE("fixed subgerms") {
  auto germ = fixtures::a2();
  SUBCASE("identity automorphism") {
    std::vector<std::pair<ElementId, ElementId>> m{
        {el(germ, "a"), el(germ, "a")}, {el(germ, "b"), el(germ, "b")}};
    auto sigma = automorphism_from_atoms(germ, m);
    auto fixed = fixed_subgerm(germ, sigma);
    CHECK(fixed.germ.element_count() == germ.element_count());
  }
  SUBCASE("flip a <-> b") {
    std::vector<std::pair<ElementId, ElementId>> m{
        {el(germ, "a"), el(germ, "b")}, {el(germ, "b"), el(germ, "a")}};
    auto sigma = automorphism_from_atoms(germ, m);
    CHECK(sigma.on_elements[el(germ, "ab").index] == el(germ, "ba"));
    auto fixed = fixed_subgerm(germ, sigma);
    CHECK(names(fixed.germ, [&] {
            std::vector<ElementId> all;
            for (std::uint32_t i = 0; i < fixed.germ.element_count(); ++i) {
              all.push_back(ElementId{i});
            }
            return all;
          }())
          == std::set<std::string>{"1", "aba"});
    CHECK(fixed.stable_by_complement);
    CHECK(fixed.stable_by_lcm);
    CHECK(fixed.stable_by_alpha2);
  }
  SUBCASE("a map that is not an automorphism") {
    std::vector<std::pair<ElementId, ElementId>> m{
        {el(germ, "a"), el(germ, "a")}, {el(germ, "b"), el(germ, "a")}};
    CHECK_THROWS_AS(automorphism_from_atoms(germ, m), GermError);
  }
}

TEST_CASE("opposite germ reverses products") {
  auto germ = fixtures::counterexample();
  auto op   = opposite_germ(germ);
  CHECK(op.product(el(op, "s"), el(op, "a")) == el(op, "c"));
  CHECK(op.source(el(op, "a")) == *op.find_object("Y"));
  CHECK(check_locally_garside(op, G4Strategy::bounded_search(4)).locally_garside());
}

TEST_CASE("germ descriptions round-trip through the table") {
  auto s    = fixtures::counterexample_spec();
  auto back = GermTable::build(s).to_spec();
  CHECK(back.objects == s.objects);
  CHECK(back.products == s.products);
  REQUIRE(back.elements.size() == s.elements.size());
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    CHECK(back.elements[i].name == s.elements[i].name);
    CHECK(back.elements[i].identity == s.elements[i].identity);
  }
}
