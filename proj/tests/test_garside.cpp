#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "garside/garside_structure.hpp"

using namespace garside;

namespace {

ElementId el(GermTable const& g, std::string_view name) { return *g.find(name); }

std::set<std::string> labels_of(GermTable const& g) {
  std::set<std::string> out;
  for (std::uint32_t i = 0; i < g.element_count(); ++i) {
    out.insert(std::string(g.label(ElementId{i})));
  }
  return out;
}

}  // namespace

TEST_CASE("left Garside structure of A2") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  CHECK(g.label(gs.delta[0]) == "aba");
  CHECK(gs.phi_obj[0] == ObjectId{0});
  CHECK(g.label(gs.phi_elem[el(g, "a").index]) == "b");
  CHECK(g.label(gs.phi_elem[el(g, "b").index]) == "a");
  CHECK(g.label(gs.phi_elem[el(g, "ab").index]) == "ba");
  CHECK(g.label(gs.tilde[el(g, "a").index]) == "ba");
  for (std::uint32_t i = 0; i < g.element_count(); ++i) {
    ElementId f{i};
    CHECK(g.product(f, gs.tilde[i]) == gs.delta[0]);
    CHECK(gs.tilde[gs.tilde[i].index] == gs.phi_elem[i]);
  }
}

TEST_CASE("naturality of Delta") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  auto sample = enumerate_morphisms(g, ObjectId{0}, 3);
  CHECK(check_naturality(g, gs, sample).ok);
  auto a = parse_morphism(g, "a");
  CHECK(multiply(g, a, delta_morphism(g, gs, ObjectId{0}))
        == multiply(g, delta_morphism(g, gs, ObjectId{0}), parse_morphism(g, "b")));
  // A wrong Phi is caught.
  auto bad          = gs;
  bad.phi_elem[el(g, "a").index] = el(g, "a");
  CHECK_FALSE(check_naturality(g, bad, sample).ok);
}

TEST_CASE("no global lcm is reported, not crashed") {
  auto g = fixtures::counterexample();
  try {
    build_left_garside(g);
    FAIL("expected NoGlobalLcm");
  } catch (GarsideError const& e) {
    CHECK(e.kind() == GarsideError::Kind::no_global_lcm);
    CHECK(e.object().has_value());
  }
}

TEST_CASE("divisibility of Delta powers") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  CHECK(divides_delta_power(g, gs, parse_morphism(g, "a ab")) == 2);
  CHECK(divides_delta_power(g, gs, parse_morphism(g, "ab")) == 1);
  CHECK(divides_delta_power(g, gs, identity_morphism(g, ObjectId{0})) == 0);
  for (auto const& m : enumerate_morphisms(g, ObjectId{0}, 4)) {
    CHECK(divides_delta_power(g, gs, m) <= m.length());
  }
}

TEST_CASE("lattice property: pairs never lack an lcm") {
  auto g   = fixtures::a2();
  auto all = enumerate_morphisms(g, ObjectId{0}, 3);
  for (auto const& x : all) {
    for (auto const& y : all) {
      CHECK(lcm(g, x, y).has_value());
    }
  }
}

TEST_CASE("bilateral Garside check") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  auto r  = check_garside_bilatere(g, gs, 3);
  CHECK_MESSAGE(r.ok, r.detail);
  auto bad = gs;
  bad.phi_elem[el(g, "a").index] = el(g, "b");
  bad.phi_elem[el(g, "b").index] = el(g, "b");
  CHECK_THROWS_AS(check_garside_bilatere(g, bad, 1), GarsideError);
}

TEST_CASE("left divisors of Delta are its right divisors") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  for (std::uint32_t i = 0; i < g.element_count(); ++i) {
    bool right = false;
    for (auto const& f : g.factorizations(gs.delta[0])) {
      right |= f.right == ElementId{i};
    }
    CHECK(right);
  }
}

TEST_CASE("minimal simples") {
  auto g = fixtures::a2();
  CHECK(minimal_simples(g).germ.element_count() == 6);
  auto free1 = GermTable::build(fixtures::free1_spec());
  CHECK(labels_of(minimal_simples(free1).germ) == std::set<std::string>{"1", "a"});
  GermSpec trivial;
  trivial.objects  = {"*"};
  trivial.elements = {{"1", "*", "*", true}};
  CHECK(minimal_simples(GermTable::build(trivial)).germ.element_count() == 1);
}

TEST_CASE("closures under left factors and complements are right-factor closed") {
  auto g  = fixtures::a2();
  auto gs = build_left_garside(g);
  for (std::uint32_t seed = 0; seed < g.element_count(); ++seed) {
    std::set<ElementId> s{ElementId{seed}};
    for (bool changed = true; changed;) {
      changed = false;
      for (auto e : std::set<ElementId>(s)) {
        for (auto const& f : g.factorizations(e)) {
          changed |= s.insert(f.left).second;
        }
        changed |= s.insert(gs.tilde[e.index]).second;
      }
    }
    for (auto e : s) {
      for (auto const& f : g.factorizations(e)) {
        CHECK(s.count(f.right) == 1);
      }
    }
  }
}
