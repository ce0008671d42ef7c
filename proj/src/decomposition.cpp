#include "garside/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "garside/homology.hpp"

namespace garside {

namespace {

  using Kind = DecompositionError::Kind;

  void require_path(GermTable const& base, PathObject const& a) {
    if (a.entries.empty()) {
      throw DecompositionError(Kind::not_a_path, "paths must have length at least 1");
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (base.target(a.entries[i]) != base.source(a.entries[i + 1])) {
        throw DecompositionError(Kind::not_a_path, format_path(base, a) + " is not composable");
      }
    }
  }

  ObjectId end_of(GermTable const& base, PathObject const& a) {
    return base.target(a.entries.back());
  }

  Morphism as_morphism(GermTable const& base, ElementId e) {
    return from_element(base, e);
  }

  ElementId to_element(GermTable const& base, Morphism const& m) {
    if (m.is_identity()) {
      return base.identity(m.source);
    }
    if (m.length() != 1) {
      throw std::logic_error("expected a germ element, got " + format(base, m));
    }
    return m.factors[0];
  }

}  // namespace

std::string format_path(GermTable const& base, PathObject const& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += (i ? "," : "");
    out += base.label(a.entries[i]);
  }
  return out + ")";
}

void validate_endomap(GermTable const& base, GermEndomap const& F) {
  auto fail = [](std::string const& what) {
    throw DecompositionError(Kind::f_not_product_preserving, what);
  };
  if (F.on_objects.size() != base.object_count()
      || F.on_elements.size() != base.element_count()) {
    fail("F must be given on every object and germ element");
  }
  for (std::uint32_t i = 0; i < base.element_count(); ++i) {
    ElementId e{i};
    auto      fe = F.on_elements[i];
    if (fe.index >= base.element_count()
        || base.source(fe) != F.on_objects[base.source(e).index]
        || base.target(fe) != F.on_objects[base.target(e).index]) {
      fail("F is not compatible with source and target at '"
           + std::string(base.label(e)) + "'");
    }
    if (base.is_identity(e) && !base.is_identity(fe)) {
      fail("F does not send identities to identities");
    }
  }
  for (std::uint32_t i = 0; i < base.element_count(); ++i) {
    for (auto const& rp : base.right_products(ElementId{i})) {
      auto p = base.product(F.on_elements[i], F.on_elements[rp.right.index]);
      if (!p || *p != F.on_elements[rp.result.index]) {
        fail("F does not preserve the product " + std::string(base.label(ElementId{i}))
             + " * " + std::string(base.label(rp.right)));
      }
    }
  }
  for (std::uint32_t i = 0; i < base.element_count(); ++i) {
    for (std::uint32_t j = i + 1; j < base.element_count(); ++j) {
      ElementId x{i}, y{j};
      if (base.source(x) != base.source(y)) {
        continue;
      }
      auto l  = germ_lcm(base, x, y);
      auto fl = germ_lcm(base, F.on_elements[i], F.on_elements[j]);
      if (l && (!fl || *fl != F.on_elements[l->index])) {
        throw DecompositionError(Kind::f_not_lcm_preserving,
                                 "F does not preserve the lcm of '"
                                     + std::string(base.label(x)) + "' and '"
                                     + std::string(base.label(y)) + "'");
      }
    }
  }
}

std::vector<GridMorphism> grid_elements_from(GermTable const& base, PathObject const& a,
                                             PnVariant variant, GermEndomap const* F) {
  require_path(base, a);
  auto const n = a.size();
  if (variant == PnVariant::functor) {
    if (F == nullptr) {
      throw DecompositionError(Kind::f_not_product_preserving,
                               "the functor variant needs F");
    }
    if (end_of(base, a) != F->on_objects[base.source(a.entries[0]).index]) {
      throw DecompositionError(Kind::not_a_path,
                               format_path(base, a) + " does not end at F(source)");
    }
  }
  std::vector<GridMorphism> out;
  std::vector<ElementId>    cols, targets;
  // c[i] is chosen once b_{i-1} = f'_{i-1} f_i is known to be in P.
  auto rec = [&](auto&& self, std::size_t i, std::optional<ElementId> prev_rest) -> void {
    auto close = [&](ElementId f) {
      auto b = base.product(*prev_rest, f);
      if (!b) {
        return;
      }
      cols.push_back(f);
      targets.push_back(*b);
      if (i == n) {
        out.push_back(GridMorphism{a, cols, PathObject{targets}});
      } else {
        self(self, i + 1, base.right_complement(f, a.entries[i]));
      }
      cols.pop_back();
      targets.pop_back();
    };
    auto open = [&](ElementId f) {
      cols.push_back(f);
      self(self, i + 1, base.right_complement(f, a.entries[i]));
      cols.pop_back();
    };
    if (i == n) {
      switch (variant) {
        case PnVariant::full:
          for (auto f : base.elements_from(end_of(base, a))) {
            close(f);
          }
          break;
        case PnVariant::id:
          close(base.identity(end_of(base, a)));
          break;
        case PnVariant::functor:
          close(F->on_elements[cols[0].index]);
          break;
      }
      return;
    }
    std::vector<ElementId> choices;
    if (i == 0 && variant == PnVariant::id) {
      choices.push_back(base.identity(base.source(a.entries[0])));
    } else {
      choices = germ_left_divisors(base, a.entries[i]);
    }
    for (auto f : choices) {
      if (i == 0) {
        open(f);
      } else {
        close(f);
      }
    }
  };
  rec(rec, 0, std::nullopt);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ElementId> PnGerm::element(PathObject const& a,
                                         std::vector<ElementId> const& columns) const {
  auto o = object_index.find(a);
  if (o == object_index.end()) {
    return std::nullopt;
  }
  auto it = element_index.find({o->second, columns});
  if (it == element_index.end()) {
    return std::nullopt;
  }
  return it->second;
}

PnGerm build_Pn_germ(GermTable const& base, std::size_t n, PnVariant variant,
                     std::optional<GermEndomap> F) {
  if (n == 0) {
    throw DecompositionError(Kind::not_a_path, "n must be at least 1");
  }
  if (variant == PnVariant::functor) {
    if (!F) {
      throw DecompositionError(Kind::f_not_product_preserving,
                               "the functor variant needs F");
    }
    validate_endomap(base, *F);
  }
  PnGerm pn;
  pn.base    = base;
  pn.n       = n;
  pn.variant = variant;
  pn.F       = F;
  {
    auto r       = check_locally_garside(opposite_germ(base), G4Strategy::assume());
    pn.two_sided = r.g1.verdict == Verdict::pass && r.g2.verdict == Verdict::pass
                   && r.g3.verdict == Verdict::pass;
  }

  // All paths of length n, in lexicographic order of element ids.
  std::vector<PathObject> paths;
  for (std::uint32_t i = 0; i < base.element_count(); ++i) {
    paths.push_back(PathObject{{ElementId{i}}});
  }
  for (std::size_t len = 1; len < n; ++len) {
    std::vector<PathObject> next;
    for (auto const& p : paths) {
      for (auto e : base.elements_from(end_of(base, p))) {
        auto q = p;
        q.entries.push_back(e);
        next.push_back(std::move(q));
      }
    }
    paths = std::move(next);
  }
  std::sort(paths.begin(), paths.end());
  GermEndomap const* fp = F ? &*F : nullptr;
  GermTable::Builder b;
  for (auto const& p : paths) {
    if (variant == PnVariant::functor
        && end_of(base, p) != F->on_objects[base.source(p.entries[0]).index]) {
      continue;
    }
    pn.object_index.emplace(p, b.add_object(format_path(base, p)));
    pn.objects.push_back(p);
  }
  for (auto const& p : pn.objects) {
    auto const src = pn.object(p);
    for (auto& g : grid_elements_from(base, p, variant, fp)) {
      bool identity = std::all_of(g.columns.begin(), g.columns.end(),
                                  [&](ElementId c) { return base.is_identity(c); });
      std::string label = format_path(base, p) + "[";
      for (std::size_t i = 0; i < g.columns.size(); ++i) {
        label += (i ? "," : "");
        label += base.label(g.columns[i]);
      }
      label += "]";
      auto id = b.add_element(label, src, pn.object(g.target), identity);
      pn.element_index.emplace(std::pair{src, g.columns}, id);
      pn.elements.push_back(std::move(g));
    }
  }
  // Elements of one source are contiguous, so products scan the target's block.
  std::map<ObjectId, std::pair<std::size_t, std::size_t>> block;
  for (std::size_t i = 0; i < pn.elements.size(); ++i) {
    auto o = pn.object(pn.elements[i].source);
    auto [it, fresh] = block.try_emplace(o, i, i + 1);
    it->second.second = i + 1;
  }
  std::vector<ElementId> cols(n + 1);
  for (std::size_t i = 0; i < pn.elements.size(); ++i) {
    auto const& f = pn.elements[i];
    auto const& a = f.source;
    auto [lo, hi] = block.at(pn.object(f.target));
    for (std::size_t j = lo; j < hi; ++j) {
      auto const& g = pn.elements[j];
      bool ok = true;
      for (std::size_t c = 0; c <= n && ok; ++c) {
        auto p = base.product(f.columns[c], g.columns[c]);
        ok     = p.has_value() && (c == n || base.left_divides(*p, a.entries[c]));
        if (ok) {
          cols[c] = *p;
        }
      }
      if (!ok) {
        continue;
      }
      auto z = pn.element(a, cols);
      if (!z) {
        throw std::logic_error("grid product escapes the germ");
      }
      // Identity laws are added by the builder.
      bool f_id = std::all_of(f.columns.begin(), f.columns.end(),
                              [&](ElementId e) { return base.is_identity(e); });
      bool g_id = std::all_of(g.columns.begin(), g.columns.end(),
                              [&](ElementId e) { return base.is_identity(e); });
      if (!f_id && !g_id) {
        b.add_product(ElementId{static_cast<std::uint32_t>(i)},
                      ElementId{static_cast<std::uint32_t>(j)}, *z);
      }
    }
  }
  pn.germ = b.finish();
  return pn;
}

std::vector<Morphism> grid_columns(PnGerm const& pn, Morphism const& m) {
  auto const& base = pn.base;
  auto const& a    = pn.objects[m.source.index];
  std::vector<Morphism> cols;
  for (auto e : a.entries) {
    cols.push_back(identity_morphism(base, base.source(e)));
  }
  cols.push_back(identity_morphism(base, end_of(base, a)));
  for (auto f : m.factors) {
    auto const& g = pn.elements[f.index];
    for (std::size_t i = 0; i < cols.size(); ++i) {
      cols[i] = multiply(base, cols[i], as_morphism(base, g.columns[i]));
    }
  }
  return cols;
}

bool grid_divides(GermTable const& base, GridMorphism const& f, GridMorphism const& g) {
  if (f.source != g.source) {
    return false;
  }
  for (std::size_t i = 0; i < f.columns.size(); ++i) {
    if (!base.left_divides(f.columns[i], g.columns[i])) {
      return false;
    }
  }
  return true;
}

bool grid_divides(GermTable const& base, std::vector<Morphism> const& f,
                  std::vector<Morphism> const& g) {
  if (f.size() != g.size()) {
    return false;
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!divides_left(base, f[i], g[i])) {
      return false;
    }
  }
  return true;
}

GridMorphism grid_alpha(PnGerm const& pn, Morphism const& m) {
  if (!pn.two_sided) {
    throw DecompositionError(Kind::base_not_two_sided,
                             "the base germ is not right locally Garside");
  }
  auto const& base = pn.base;
  auto const& s    = pn.objects[m.source.index];
  auto const  cols = grid_columns(pn, m);
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < pn.n; ++i) {
    out.push_back(to_element(base, gcd(base, cols[i], as_morphism(base, s.entries[i]))));
  }
  if (pn.variant == PnVariant::functor) {
    out.push_back(pn.F->on_elements[out[0].index]);
  } else if (cols[pn.n].is_identity()) {
    out.push_back(base.identity(end_of(base, s)));
  } else {
    out.push_back(alpha(base, cols[pn.n]));
  }
  auto id = pn.element(s, out);
  if (!id) {
    throw std::logic_error("the column formula does not give a germ element");
  }
  return pn.elements[id->index];
}

PathObject nf_object(GermTable const& base, PathObject const& a) {
  require_path(base, a);
  auto m = normal_form(base, RawPath{base.source(a.entries[0]), a.entries});
  PathObject out{m.factors};
  while (out.size() < a.size()) {
    out.entries.push_back(base.identity(m.target));
  }
  return out;
}

std::vector<GridMorphism> unique_morphism_to_nf(GermTable const& base,
                                                PathObject const& a) {
  require_path(base, a);
  std::vector<GridMorphism> steps;
  PathObject                cur = a;
  // Each step strictly enlarges the first terms, so the loop is bounded by
  // Noetherianity; the guard only protects against a broken germ.
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100'000) {
      throw std::logic_error("iteration to the normal form does not stop");
    }
    std::vector<ElementId> cols{base.identity(base.source(cur.entries[0]))};
    std::vector<ElementId> target;
    ElementId              rest = cur.entries[0];
    for (std::size_t i = 1; i < cur.size(); ++i) {
      auto ao = alpha_omega2(base, rest, cur.entries[i]);
      cols.push_back(*base.right_complement(rest, ao.head));
      target.push_back(ao.head);
      rest = ao.tail;
    }
    target.push_back(rest);
    cols.push_back(base.identity(end_of(base, cur)));
    if (std::all_of(cols.begin(), cols.end(),
                    [&](ElementId e) { return base.is_identity(e); })) {
      return steps;
    }
    GridMorphism step{cur, cols, PathObject{target}};
    cur = step.target;
    steps.push_back(std::move(step));
  }
}

PathObject padded(GermTable const& base, PathObject const& a, std::size_t k) {
  require_path(base, a);
  auto out = a;
  for (std::size_t i = 0; i < k; ++i) {
    out.entries.push_back(base.identity(end_of(base, a)));
  }
  return out;
}

PBulletMorphism pbullet_unique_morphism(GermTable const& base, PathObject const& a,
                                        PathObject const& b) {
  require_path(base, a);
  require_path(base, b);
  if (b.size() < a.size()) {
    throw DecompositionError(Kind::no_morphism, "the target has smaller degree");
  }
  auto product = [&](PathObject const& p) {
    return normal_form(base, RawPath{base.source(p.entries[0]), p.entries});
  };
  if (product(a) != product(b)) {
    throw DecompositionError(Kind::no_morphism, format_path(base, a) + " and "
                                                    + format_path(base, b)
                                                    + " have different products");
  }
  PBulletMorphism out{a, b.size() - a.size(), {}, b};
  auto const      start = padded(base, a, out.padding);
  auto const      m     = b.size();

  // Columns of the only candidate: a_i r_{i+1} = r_i b_i with r_1 = 1.
  std::vector<Morphism> r{identity_morphism(base, base.source(start.entries[0]))};
  for (std::size_t i = 0; i < m; ++i) {
    auto q = try_left_quotient(base, as_morphism(base, start.entries[i]),
                               multiply(base, r[i], as_morphism(base, b.entries[i])));
    if (!q) {
      throw DecompositionError(Kind::no_morphism, "the columns cannot be solved at "
                                                      + std::to_string(i + 1));
    }
    r.push_back(*q);
  }
  if (!r[m].is_identity()) {
    throw DecompositionError(Kind::no_morphism, "the last column is not an identity");
  }

  // Realise the columns by germ steps, greatest divisor first.
  PathObject cur = start;
  auto done = [&] {
    return std::all_of(r.begin(), r.end(), [](Morphism const& x) { return x.is_identity(); });
  };
  while (!done()) {
    std::vector<GridMorphism> candidates;
    for (auto& g : grid_elements_from(base, cur, PnVariant::id)) {
      bool divides = true;
      for (std::size_t i = 0; i <= m && divides; ++i) {
        divides = divides_left(base, as_morphism(base, g.columns[i]), r[i]);
      }
      if (divides) {
        candidates.push_back(std::move(g));
      }
    }
    auto weight = [&](GridMorphism const& g) {
      std::size_t w = 0;
      for (auto c : g.columns) {
        w += base.divisor_count(c);
      }
      return w;
    };
    auto best = *std::max_element(candidates.begin(), candidates.end(),
                                  [&](auto const& x, auto const& y) {
                                    return weight(x) < weight(y);
                                  });
    for (auto const& c : candidates) {
      if (!grid_divides(base, c, best)) {
        throw std::logic_error("grid divisors of a column family have no maximum");
      }
    }
    if (weight(best) == best.columns.size()) {
      throw DecompositionError(Kind::no_morphism,
                               "no germ step realises the remaining columns");
    }
    for (std::size_t i = 0; i <= m; ++i) {
      r[i] = left_quotient(base, as_morphism(base, best.columns[i]), r[i]);
    }
    cur = best.target;
    out.steps.push_back(std::move(best));
  }
  if (cur != b) {
    throw DecompositionError(Kind::no_morphism, "the columns lead to "
                                                    + format_path(base, cur));
  }
  return out;
}

PBulletMorphism compose(GermTable const& base, PBulletMorphism const& x,
                        PBulletMorphism const& y) {
  if (x.target != y.source) {
    throw DecompositionError(Kind::no_morphism, "morphisms are not composable");
  }
  PBulletMorphism out{x.source, x.padding + y.padding, {}, y.target};
  for (auto const& s : x.steps) {
    GridMorphism p{padded(base, s.source, y.padding), s.columns,
                   padded(base, s.target, y.padding)};
    for (std::size_t k = 0; k < y.padding; ++k) {
      p.columns.push_back(base.identity(end_of(base, s.source)));
    }
    out.steps.push_back(std::move(p));
  }
  out.steps.insert(out.steps.end(), y.steps.begin(), y.steps.end());
  return out;
}

std::vector<Morphism> pbullet_columns(GermTable const& base, PBulletMorphism const& m) {
  auto const start = padded(base, m.source, m.padding);
  std::vector<Morphism> cols;
  for (auto e : start.entries) {
    cols.push_back(identity_morphism(base, base.source(e)));
  }
  cols.push_back(identity_morphism(base, end_of(base, start)));
  for (auto const& s : m.steps) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      cols[i] = multiply(base, cols[i], as_morphism(base, s.columns[i]));
    }
  }
  return cols;
}

DecompositionPoset build_Eg(GermTable const& base, Morphism const& g,
                            std::size_t vertex_budget) {
  if (g.is_identity()) {
    throw DecompositionError(Kind::not_a_path, "E(g) needs a non-identity g");
  }
  std::set<std::vector<ElementId>> found;
  std::vector<ElementId>           prefix;
  auto rec = [&](auto&& self, Morphism const& rest) -> void {
    if (rest.is_identity()) {
      found.insert(prefix);
      if (found.size() > vertex_budget) {
        throw DecompositionError(Kind::too_large, "E(g) exceeds "
                                                      + std::to_string(vertex_budget)
                                                      + " vertices");
      }
      return;
    }
    for (auto d : germ_left_divisors(base, alpha(base, rest))) {
      if (base.is_identity(d)) {
        continue;
      }
      prefix.push_back(d);
      self(self, left_quotient(base, as_morphism(base, d), rest));
      prefix.pop_back();
    }
  };
  rec(rec, g);

  DecompositionPoset poset;
  poset.vertices.assign(found.begin(), found.end());
  std::stable_sort(poset.vertices.begin(), poset.vertices.end(),
                   [](auto const& x, auto const& y) { return x.size() < y.size(); });
  std::map<std::vector<ElementId>, std::size_t> index;
  for (std::size_t i = 0; i < poset.vertices.size(); ++i) {
    index.emplace(poset.vertices[i], i);
  }
  std::set<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t v = 0; v < poset.vertices.size(); ++v) {
    auto const& d = poset.vertices[v];
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (auto const& f : base.factorizations(d[i])) {
        if (base.is_identity(f.left) || base.is_identity(f.right)) {
          continue;
        }
        auto finer = d;
        finer[i]   = f.left;
        finer.insert(finer.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.right);
        covers.emplace(v, index.at(finer));
      }
    }
  }
  poset.covers.assign(covers.begin(), covers.end());
  return poset;
}

namespace {

  // Tietze moves on the edge-path presentation: drop a generator that occurs
  // exactly once in some relator.  Sound but incomplete.
  std::optional<bool> tietze_trivial(std::size_t gens, std::vector<std::vector<int>> rels,
                                     std::size_t budget) {
    auto reduce = [](std::vector<int>& w) {
      std::vector<int> out;
      for (auto x : w) {
        if (!out.empty() && out.back() == -x) {
          out.pop_back();
        } else {
          out.push_back(x);
        }
      }
      std::size_t lo = 0, hi = out.size();
      while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
        ++lo;
        --hi;
      }
      w.assign(out.begin() + static_cast<std::ptrdiff_t>(lo),
               out.begin() + static_cast<std::ptrdiff_t>(hi));
    };
    std::size_t alive = gens;
    std::size_t work  = 0;
    for (auto& r : rels) {
      reduce(r);
    }
    while (alive > 0) {
      std::optional<std::size_t> pick_rel;
      int                        pick_gen = 0;
      std::size_t                best     = SIZE_MAX;
      for (std::size_t k = 0; k < rels.size(); ++k) {
        auto const& r = rels[k];
        if (r.empty() || r.size() >= best) {
          continue;
        }
        std::map<int, int> count;
        for (auto x : r) {
          ++count[std::abs(x)];
        }
        for (auto [g, c] : count) {
          if (c == 1) {
            pick_rel = k;
            pick_gen = g;
            best     = r.size();
            break;
          }
        }
      }
      if (!pick_rel) {
        return std::nullopt;
      }
      // r = u g^e v  =>  g = (v u)^-1 when e = 1, and g = v u when e = -1.
      auto r   = rels[*pick_rel];
      auto pos = static_cast<std::size_t>(
          std::find_if(r.begin(), r.end(), [&](int x) { return std::abs(x) == pick_gen; })
          - r.begin());
      int const        e = r[pos] > 0 ? 1 : -1;
      std::vector<int> vu(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
      vu.insert(vu.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
      std::vector<int> image;  // the word for g
      if (e == 1) {
        for (auto it = vu.rbegin(); it != vu.rend(); ++it) {
          image.push_back(-*it);
        }
      } else {
        image = vu;
      }
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(*pick_rel));
      for (auto& w : rels) {
        std::vector<int> out;
        for (auto x : w) {
          if (std::abs(x) != pick_gen) {
            out.push_back(x);
          } else if (x > 0) {
            out.insert(out.end(), image.begin(), image.end());
          } else {
            for (auto it = image.rbegin(); it != image.rend(); ++it) {
              out.push_back(-*it);
            }
          }
        }
        w = std::move(out);
        reduce(w);
        work += w.size();
      }
      if (work > budget) {
        return std::nullopt;
      }
      --alive;
    }
    return true;
  }

}  // namespace

SimplyConnectedReport check_simply_connected(DecompositionPoset const& poset,
                                             SimplyConnectedOptions const& options) {
  SimplyConnectedReport rep;
  auto const V = poset.vertices.size();
  if (V == 0) {
    return rep;
  }
  // below[v]: strictly finer decompositions.  Covers go to longer vertices and
  // vertices are sorted by length, so a reverse sweep closes transitively.
  std::vector<std::vector<std::size_t>> children(V);
  for (auto [hi, lo] : poset.covers) {
    children[hi].push_back(lo);
  }
  std::vector<std::vector<bool>> below(V, std::vector<bool>(V, false));
  for (std::size_t v = V; v-- > 0;) {
    for (auto c : children[v]) {
      below[v][c] = true;
      for (std::size_t u = 0; u < V; ++u) {
        if (below[c][u]) {
          below[v][u] = true;
        }
      }
    }
  }
  for (std::size_t v = 0; v < V && !rep.cone; ++v) {
    std::size_t down = 0, up = 0;
    for (std::size_t u = 0; u < V; ++u) {
      down += below[v][u];
      up += below[u][v];
    }
    rep.cone = down == V - 1 || up == V - 1;
  }

  // Beat points (strict upper set with a minimum, or strict lower set with a
  // maximum) are removed; the core has the homotopy type of the poset.
  std::vector<bool>        alive(V, true);
  std::vector<std::size_t> ups(V, 0), downs(V, 0);
  for (std::size_t x = 0; x < V; ++x) {
    for (std::size_t y = 0; y < V; ++y) {
      if (below[x][y]) {
        ++downs[x];
        ++ups[y];
      }
    }
  }
  if (options.beat_reduction) {
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t v = 0; v < V; ++v) {
        if (!alive[v]) {
          continue;
        }
        bool beat = false;
        for (std::size_t m = 0; m < V && !beat; ++m) {
          if (!alive[m] || m == v) {
            continue;
          }
          // ups(m) is inside ups(v) \ {m}; equal sizes make m the minimum.
          beat = (below[m][v] && ups[m] + 1 == ups[v])
                 || (below[v][m] && downs[m] + 1 == downs[v]);
        }
        if (!beat) {
          continue;
        }
        alive[v] = false;
        for (std::size_t u = 0; u < V; ++u) {
          downs[u] -= below[u][v];
          ups[u] -= below[v][u];
        }
        progress = true;
      }
    }
  }
  std::vector<std::size_t> core;
  for (std::size_t v = 0; v < V; ++v) {
    if (alive[v]) {
      core.push_back(v);
    }
  }
  rep.core_size = core.size();
  auto const C  = core.size();
  auto lt = [&](std::size_t x, std::size_t y) { return below[core[x]][core[y]]; };

  auto edge_key = [](std::size_t x, std::size_t y) {
    return (static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint64_t>(y);
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::unordered_map<std::uint64_t, std::size_t>   edge_index;
  for (std::size_t x = 0; x < C; ++x) {
    for (std::size_t y = 0; y < C; ++y) {
      if (lt(x, y)) {
        edge_index.emplace(edge_key(x, y),
                           edges.size());
        edges.emplace_back(x, y);
      }
    }
  }
  rep.comparable_pairs = edges.size();

  // Spanning forest of the comparability graph.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(C);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  std::vector<bool> seen(C, false), tree(edges.size(), false);
  std::size_t       components = 0;
  for (std::size_t s = 0; s < C; ++s) {
    if (seen[s]) {
      continue;
    }
    ++components;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto [u, e] : adj[v]) {
        if (!seen[u]) {
          seen[u] = true;
          tree[e] = true;
          q.push(u);
        }
      }
    }
  }
  rep.connected = components == 1;

  if (rep.cone && options.cone_shortcut) {
    rep.pi1_trivial = true;
    return rep;
  }

  std::vector<std::size_t> generator(edges.size(), SIZE_MAX);
  std::size_t              gens = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!tree[e]) {
      generator[e] = gens++;
    }
  }
  auto edge = [&](std::size_t x, std::size_t y) {
    return edge_index.at(edge_key(x, y));
  };
  std::vector<SparseRow>        relations;
  std::vector<std::vector<int>> relators;
  for (std::size_t x = 0; x < C; ++x) {
    for (std::size_t y = 0; y < C; ++y) {
      if (!lt(x, y)) {
        continue;
      }
      for (std::size_t z = 0; z < C; ++z) {
        if (!lt(y, z)) {
          continue;
        }
        ++rep.chains3;
        // The loop x -> y -> z -> x: e(x,y) + e(y,z) - e(x,z).
        SparseRow        row;
        std::vector<int> word;
        auto add = [&](std::size_t e, int sign) {
          if (generator[e] != SIZE_MAX) {
            row.emplace_back(generator[e], sign);
            word.push_back(sign * static_cast<int>(generator[e] + 1));
          }
        };
        add(edge(x, y), 1);
        add(edge(y, z), 1);
        add(edge(x, z), -1);
        if (!row.empty()) {
          relations.push_back(std::move(row));
          relators.push_back(std::move(word));
        }
      }
    }
  }
  auto h1               = cokernel(gens, std::move(relations));
  rep.homology_computed = true;
  rep.h1_rank           = h1.rank;
  rep.h1_torsion        = h1.torsion;
  if (!h1.trivial()) {
    rep.pi1_trivial = false;
  } else if (rep.cone || C == 1) {
    rep.pi1_trivial = true;
  } else if (options.pi1_attempt) {
    rep.pi1_trivial = tietze_trivial(gens, std::move(relators), options.pi1_budget);
  }
  return rep;
}

std::string export_poset(GermTable const& base, DecompositionPoset const& poset) {
  std::string out = "V " + std::to_string(poset.vertices.size()) + "\n";
  for (auto const& v : poset.vertices) {
    out += format_path(base, PathObject{v}) + "\n";
  }
  out += "E " + std::to_string(poset.covers.size()) + "\n";
  for (auto [hi, lo] : poset.covers) {
    out += std::to_string(hi) + " " + std::to_string(lo) + "\n";
  }
  return out;
}

}  // namespace garside
