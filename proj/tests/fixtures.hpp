#pragma once

#include "garside/germ.hpp"

namespace fixtures {

// The simples of the braid monoid of type A2, written by hand.
inline garside::GermSpec a2_spec() {
  garside::GermSpec s;
  s.objects = {"*"};
  s.elements = {{"1", "*", "*", true}, {"a", "*", "*"},  {"b", "*", "*"},
                {"ab", "*", "*"},      {"ba", "*", "*"}, {"aba", "*", "*"}};
  s.products = {{"a", "b", "ab"},    {"b", "a", "ba"},   {"ab", "a", "aba"},
                {"a", "ba", "aba"},  {"ba", "b", "aba"}, {"b", "ab", "aba"}};
  return s;
}

inline garside::GermTable a2() { return garside::GermTable::build(a2_spec()); }

// Two objects, seven morphisms and the single relation a*s = b*t.
inline garside::GermSpec counterexample_spec() {
  garside::GermSpec s;
  s.objects  = {"X", "Y"};
  s.elements = {{"1X", "X", "X", true}, {"1Y", "Y", "Y", true},
                {"s", "Y", "Y"},       {"t", "Y", "Y"},
                {"a", "X", "Y"},       {"b", "X", "Y"},
                {"u", "Y", "X"},       {"v", "Y", "X"},
                {"c", "X", "Y"}};
  s.products = {{"a", "s", "c"}, {"b", "t", "c"}};
  return s;
}

inline garside::GermTable counterexample() {
  return garside::GermTable::build(counterexample_spec());
}

// One object, {1, x, y} with x*x = y, the cyclic group of order 3.
inline garside::GermSpec cyclic3_spec() {
  garside::GermSpec s;
  s.objects  = {"*"};
  s.elements = {{"1", "*", "*", true}, {"x", "*", "*"}, {"y", "*", "*"}};
  s.products = {{"x", "x", "y"}, {"y", "y", "x"}, {"x", "y", "1"},
                {"y", "x", "1"}};
  return s;
}

// x*y = x with y*y = y: a germ on which left cancellation fails.
inline garside::GermSpec absorbing_spec() {
  garside::GermSpec s;
  s.objects  = {"*"};
  s.elements = {{"1", "*", "*", true}, {"x", "*", "*"}, {"y", "*", "*"}};
  s.products = {{"x", "y", "x"}, {"y", "y", "y"}};
  return s;
}

// {1, a, aa}: the truncated free monoid on one generator.
inline garside::GermSpec free1_spec() {
  garside::GermSpec s;
  s.objects  = {"*"};
  s.elements = {{"1", "*", "*", true}, {"a", "*", "*"}, {"aa", "*", "*"}};
  s.products = {{"a", "a", "aa"}};
  return s;
}

}  // namespace fixtures
