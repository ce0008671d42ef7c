#include "garside/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <mutex>
#include <queue>
#include <set>

namespace garside {

std::size_t GeneratorSet::size() const {
  return static_cast<std::size_t>(std::popcount(bits));
}

std::vector<std::size_t> GeneratorSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < 64; ++s) {
    if (contains(s)) {
      out.push_back(s);
    }
  }
  return out;
}

struct CoxeterSystem::Cache {
  std::mutex mutex;
  std::map<std::vector<std::uint8_t>, std::shared_ptr<ClassInfo const>> by_word;
};

CoxeterSystem::CoxeterSystem(std::vector<std::vector<unsigned>> matrix,
                             std::vector<std::string>           labels)
    : matrix_(std::move(matrix)),
      labels_(std::move(labels)),
      cache_(std::make_shared<Cache>()) {}

CoxeterSystem CoxeterSystem::from_matrix(std::vector<std::vector<unsigned>> matrix,
                                         std::vector<std::string> labels) {
  auto const n = matrix.size();
  if (n == 0 || n > 32) {
    throw CoxeterError(CoxeterError::Kind::bad_matrix,
                       "rank must be between 1 and 32");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw CoxeterError(CoxeterError::Kind::bad_matrix, "matrix is not square");
    }
    if (matrix[i][i] != 1) {
      throw CoxeterError(CoxeterError::Kind::bad_matrix,
                         "diagonal entries must be 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw CoxeterError(CoxeterError::Kind::bad_matrix,
                           "matrix is not symmetric");
      }
      if (i != j && matrix[i][j] == 1) {
        throw CoxeterError(CoxeterError::Kind::bad_matrix,
                           "off-diagonal entries must be at least 2");
      }
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("s" + std::to_string(i + 1));
    }
  }
  if (labels.size() != n) {
    throw CoxeterError(CoxeterError::Kind::bad_matrix,
                       "one label per generator is required");
  }
  return CoxeterSystem(std::move(matrix), std::move(labels));
}

namespace {

  using Matrix = std::vector<std::vector<unsigned>>;

  Matrix path_matrix(std::size_t n) {
    Matrix m(n, std::vector<unsigned>(n, 2));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = 1;
      if (i + 1 < n) {
        m[i][i + 1] = m[i + 1][i] = 3;
      }
    }
    return m;
  }

  std::optional<std::size_t> parse_rank(std::string_view text) {
    std::size_t n   = 0;
    auto [ptr, ec]  = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || ptr != text.data() + text.size() || n == 0) {
      return std::nullopt;
    }
    return n;
  }

}  // namespace

CoxeterSystem CoxeterSystem::preset(std::string_view name) {
  auto unknown = [&] {
    return CoxeterError(CoxeterError::Kind::unknown_type,
                        "unknown Coxeter type '" + std::string(name) + "'");
  };
  std::string n(name);
  if (n == "\xC3\x83" "1") {  // "Ã1"
    n = "A~1";
  }
  if (n.rfind("A~", 0) == 0) {
    auto r = parse_rank(std::string_view(n).substr(2));
    if (!r) {
      throw unknown();
    }
    if (*r == 1) {
      return from_matrix({{1, 0}, {0, 1}});
    }
    auto m = path_matrix(*r + 1);
    m[0][*r] = m[*r][0] = 3;
    return from_matrix(std::move(m));
  }
  if (n.rfind("I2(", 0) == 0 && n.back() == ')') {
    auto r = parse_rank(std::string_view(n).substr(3, n.size() - 4));
    if (!r || *r < 2) {
      throw unknown();
    }
    return from_matrix({{1, static_cast<unsigned>(*r)},
                        {static_cast<unsigned>(*r), 1}});
  }
  if (n.size() < 2) {
    throw unknown();
  }
  auto r = parse_rank(std::string_view(n).substr(1));
  if (!r) {
    throw unknown();
  }
  auto m = path_matrix(*r);
  switch (n[0]) {
    case 'A':
      return from_matrix(std::move(m));
    case 'B':
      if (*r < 2) {
        throw unknown();
      }
      m[*r - 2][*r - 1] = m[*r - 1][*r - 2] = 4;
      return from_matrix(std::move(m));
    case 'D':
      if (*r < 4) {
        throw unknown();
      }
      // The last generator hangs off the third from last.
      m[*r - 2][*r - 1] = m[*r - 1][*r - 2] = 2;
      m[*r - 3][*r - 1] = m[*r - 1][*r - 3] = 3;
      return from_matrix(std::move(m));
    case 'E': {
      if (*r < 6 || *r > 8) {
        throw unknown();
      }
      // Bourbaki numbering: 1-3-4-5-..., with 2 attached to 4.
      Matrix e(*r, std::vector<unsigned>(*r, 2));
      for (std::size_t i = 0; i < *r; ++i) {
        e[i][i] = 1;
      }
      auto link = [&](std::size_t a, std::size_t b) { e[a][b] = e[b][a] = 3; };
      link(0, 2);
      link(1, 3);
      for (std::size_t i = 2; i + 1 < *r; ++i) {
        link(i, i + 1);
      }
      return from_matrix(std::move(e));
    }
    case 'F':
      if (*r != 4) {
        throw unknown();
      }
      m[1][2] = m[2][1] = 4;
      return from_matrix(std::move(m));
    case 'H':
      if (*r != 3 && *r != 4) {
        throw unknown();
      }
      m[0][1] = m[1][0] = 5;
      return from_matrix(std::move(m));
    default:
      throw unknown();
  }
}

std::optional<std::size_t> CoxeterSystem::find_generator(std::string_view label) const {
  for (std::size_t s = 0; s < labels_.size(); ++s) {
    if (labels_[s] == label) {
      return s;
    }
  }
  return std::nullopt;
}

GeneratorSet CoxeterSystem::all() const {
  return {rank() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank()) - 1};
}

namespace {

  // A connected Coxeter diagram with finite labels is finite iff it is one of
  // A_n, B_n, D_n, E_6-8, F_4, H_3, H_4 or I_2(m).
  bool finite_component(Matrix const& m, std::vector<std::size_t> const& nodes) {
    auto const k = nodes.size();
    if (k <= 1) {
      return true;
    }
    std::vector<std::vector<std::size_t>> adj(k);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        auto l = m[nodes[i]][nodes[j]];
        if (l == 0) {
          return false;
        }
        if (l >= 3) {
          adj[i].push_back(j);
          adj[j].push_back(i);
          ++edges;
        }
      }
    }
    if (edges != k - 1) {
      return false;
    }
    if (k == 2) {
      return true;
    }
    auto label = [&](std::size_t i, std::size_t j) { return m[nodes[i]][nodes[j]]; };
    std::vector<std::size_t> branch;
    for (std::size_t i = 0; i < k; ++i) {
      if (adj[i].size() > 3) {
        return false;
      }
      if (adj[i].size() == 3) {
        branch.push_back(i);
      }
    }
    if (branch.size() > 1) {
      return false;
    }
    if (branch.size() == 1) {
      for (std::size_t i = 0; i < k; ++i) {
        for (auto j : adj[i]) {
          if (label(i, j) != 3) {
            return false;
          }
        }
      }
      std::vector<std::size_t> arms;
      for (auto first : adj[branch[0]]) {
        std::size_t len = 1, prev = branch[0], cur = first;
        while (adj[cur].size() == 2) {
          auto next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
          prev      = cur;
          cur       = next;
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      if (arms[0] == 1 && arms[1] == 1) {
        return true;  // D_n
      }
      return arms[0] == 1 && arms[1] == 2 && arms[2] <= 4;  // E_6, E_7, E_8
    }
    // A path: read the labels from one end.
    std::size_t end = 0;
    while (adj[end].size() != 1) {
      ++end;
    }
    std::vector<unsigned> seq;
    for (std::size_t prev = end, cur = adj[end][0];;) {
      seq.push_back(label(prev, cur));
      if (adj[cur].size() == 1) {
        break;
      }
      auto next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev      = cur;
      cur       = next;
    }
    std::size_t big = 0;
    for (auto l : seq) {
      big += l > 3;
    }
    if (big == 0) {
      return true;
    }
    if (big > 1) {
      return false;
    }
    auto const at_end = seq.front() > 3 || seq.back() > 3;
    auto const top    = *std::max_element(seq.begin(), seq.end());
    if (top == 4) {
      return at_end || (k == 4 && seq[1] == 4);  // B_n or F_4
    }
    if (top == 5) {
      return at_end && k <= 4;  // H_3, H_4
    }
    return false;
  }

}  // namespace

bool CoxeterSystem::is_spherical(GeneratorSet I) const {
  std::vector<bool> seen(rank(), false);
  for (auto s : I.members()) {
    if (s >= rank()) {
      throw CoxeterError(CoxeterError::Kind::bad_matrix, "generator out of range");
    }
    if (seen[s]) {
      continue;
    }
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (auto t : I.members()) {
        if (!seen[t] && m(comp[i], t) != 2) {
          seen[t] = true;
          comp.push_back(t);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    if (!finite_component(matrix_, comp)) {
      return false;
    }
  }
  return true;
}

CoxeterSystem::ClassInfo const& CoxeterSystem::info(
    std::vector<std::uint8_t> const& reduced_word) const {
  std::lock_guard lock(cache_->mutex);
  if (auto it = cache_->by_word.find(reduced_word); it != cache_->by_word.end()) {
    return *it->second;
  }
  // All reduced words of the element, connected by braid moves.
  std::set<std::vector<std::uint8_t>>   words{reduced_word};
  std::queue<std::vector<std::uint8_t>> todo;
  todo.push(reduced_word);
  while (!todo.empty()) {
    auto w = todo.front();
    todo.pop();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      auto s = w[i], t = w[i + 1];
      if (s == t) {
        continue;
      }
      auto const len = m(s, t);
      if (len == 0 || i + len > w.size()) {
        continue;
      }
      bool alternating = true;
      for (std::size_t j = 0; j < len && alternating; ++j) {
        alternating = w[i + j] == (j % 2 == 0 ? s : t);
      }
      if (!alternating) {
        continue;
      }
      auto v = w;
      for (std::size_t j = 0; j < len; ++j) {
        v[i + j] = j % 2 == 0 ? t : s;
      }
      if (words.insert(v).second) {
        todo.push(std::move(v));
      }
    }
  }
  auto ci       = std::make_shared<ClassInfo>();
  ci->canonical = WElement{*words.begin()};
  ci->ending_with.assign(rank(), {});
  for (auto const& w : words) {
    if (w.empty()) {
      continue;
    }
    ci->right_descents = ci->right_descents.with(w.back());
    ci->left_descents  = ci->left_descents.with(w.front());
    if (ci->ending_with[w.back()].empty()) {
      ci->ending_with[w.back()] = w;
    }
  }
  std::shared_ptr<ClassInfo const> shared = std::move(ci);
  for (auto const& w : words) {
    cache_->by_word.emplace(w, shared);
  }
  return *shared;
}

WElement CoxeterSystem::generator(std::size_t s) const {
  if (s >= rank()) {
    throw CoxeterError(CoxeterError::Kind::bad_matrix, "generator out of range");
  }
  return WElement{{static_cast<std::uint8_t>(s)}};
}

WElement CoxeterSystem::multiply_generator(WElement const& w, std::size_t s) const {
  auto const& ci = info(w.word);
  if (ci.right_descents.contains(s)) {
    auto shorter = ci.ending_with[s];
    shorter.pop_back();
    return info(shorter).canonical;
  }
  auto longer = ci.canonical.word;
  longer.push_back(static_cast<std::uint8_t>(s));
  return info(longer).canonical;
}

WElement CoxeterSystem::generator_multiply(std::size_t s, WElement const& w) const {
  return inverse(multiply_generator(inverse(w), s));
}

WElement CoxeterSystem::from_word(std::vector<std::uint8_t> const& word) const {
  WElement w;
  for (auto s : word) {
    w = multiply_generator(w, generator(s).word[0]);
  }
  return w;
}

WElement CoxeterSystem::multiply(WElement const& x, WElement const& y) const {
  WElement w = x;
  for (auto s : y.word) {
    w = multiply_generator(w, s);
  }
  return w;
}

WElement CoxeterSystem::inverse(WElement const& w) const {
  std::vector<std::uint8_t> rev(w.word.rbegin(), w.word.rend());
  return info(rev).canonical;
}

bool CoxeterSystem::lengths_add(WElement const& x, WElement const& y) const {
  WElement w = x;
  for (auto s : y.word) {
    if (right_descents(w).contains(s)) {
      return false;
    }
    w = multiply_generator(w, s);
  }
  return true;
}

GeneratorSet CoxeterSystem::right_descents(WElement const& w) const {
  return info(w.word).right_descents;
}

GeneratorSet CoxeterSystem::left_descents(WElement const& w) const {
  return info(w.word).left_descents;
}

GeneratorSet CoxeterSystem::support(WElement const& w) const {
  GeneratorSet I;
  for (auto s : w.word) {
    I = I.with(s);
  }
  return I;
}

std::optional<GeneratorSet> CoxeterSystem::conjugate(WElement const& w,
                                                     GeneratorSet I) const {
  GeneratorSet out;
  auto const   inv = inverse(w);
  for (auto s : I.members()) {
    auto c = multiply(multiply_generator(w, s), inv);
    if (c.length() != 1) {
      return std::nullopt;
    }
    out = out.with(c.word[0]);
  }
  return out;
}

std::string CoxeterSystem::format(WElement const& w) const {
  if (w.word.empty()) {
    return "1";
  }
  std::string out;
  for (auto s : w.word) {
    out += labels_[s];
  }
  return out;
}

std::string CoxeterSystem::format(GeneratorSet I) const {
  std::string out = "{";
  bool        first = true;
  for (auto s : I.members()) {
    if (!first) {
      out += ",";
    }
    first = false;
    out += labels_.at(s);
  }
  return out + "}";
}

WElement CoxeterSystem::parse(std::string_view text) const {
  std::vector<std::uint8_t> word;
  std::size_t               i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '.' || text[i] == '*') {
      ++i;
      continue;
    }
    if (text[i] == '1' && (i + 1 == text.size() || text[i + 1] == ' ')) {
      ++i;
      continue;
    }
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < rank(); ++s) {
      auto const& l = labels_[s];
      if (text.substr(i, l.size()) == l
          && (!best || l.size() > labels_[*best].size())) {
        best = s;
      }
    }
    if (!best) {
      throw CoxeterError(CoxeterError::Kind::bad_matrix,
                         "cannot parse '" + std::string(text) + "' as a word");
    }
    word.push_back(static_cast<std::uint8_t>(*best));
    i += labels_[*best].size();
  }
  return from_word(word);
}

GeneratorSet CoxeterSystem::parse_set(std::string_view text) const {
  GeneratorSet I;
  std::string  token;
  auto flush = [&] {
    if (token.empty()) {
      return;
    }
    auto s = find_generator(token);
    if (!s) {
      throw CoxeterError(CoxeterError::Kind::bad_matrix,
                         "unknown generator '" + token + "'");
    }
    I = I.with(*s);
    token.clear();
  };
  for (auto c : text) {
    if (c == '{' || c == '}' || c == ',' || c == ' ') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return I;
}

Morphism LiftGerm::lift(WElement const& w) const {
  return from_element(germ, element(w));
}

LiftGerm lift_germ(CoxeterSystem const& cox, std::optional<std::size_t> max_length) {
  if (!max_length && !cox.is_finite()) {
    throw CoxeterError(CoxeterError::Kind::infinite_without_bound,
                       "W is infinite; a length bound is required");
  }
  LiftGerm out{cox, {}, {}, {}, false};
  std::vector<WElement> frontier{cox.identity()};
  std::set<WElement>    seen{cox.identity()};
  out.elements.push_back(cox.identity());
  for (std::size_t len = 1; !frontier.empty(); ++len) {
    if (max_length && len > *max_length) {
      out.truncated = !frontier.empty()
                      && std::any_of(frontier.begin(), frontier.end(),
                                     [&](WElement const& w) {
                                       return cox.right_descents(w) != cox.all();
                                     });
      break;
    }
    std::vector<WElement> next;
    for (auto const& w : frontier) {
      for (std::size_t s = 0; s < cox.rank(); ++s) {
        if (cox.right_descents(w).contains(s)) {
          continue;
        }
        auto ws = cox.multiply_generator(w, s);
        if (seen.insert(ws).second) {
          next.push_back(ws);
        }
      }
    }
    std::sort(next.begin(), next.end());
    out.elements.insert(out.elements.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  GermTable::Builder b;
  auto obj = b.add_object("*");
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    auto const& w  = out.elements[i];
    auto        id = b.add_element(cox.format(w), obj, obj, w.word.empty());
    out.index.emplace(w, id);
  }
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (std::size_t j = 0; j < out.elements.size(); ++j) {
      auto const& x = out.elements[i];
      auto const& y = out.elements[j];
      if (x.word.empty() || y.word.empty()) {
        continue;
      }
      if (max_length && x.length() + y.length() > *max_length) {
        continue;
      }
      if (cox.lengths_add(x, y)) {
        b.add_product(out.index.at(x), out.index.at(y),
                      out.index.at(cox.multiply(x, y)));
      }
    }
  }
  if (out.truncated) {
    b.add_note("carrier truncated at length " + std::to_string(*max_length)
               + "; axiom verdicts hold for the truncated germ only");
  }
  out.germ = b.finish(false);
  return out;
}

WElement w_parabolic_longest(CoxeterSystem const& cox, GeneratorSet I) {
  if (!cox.is_spherical(I)) {
    throw CoxeterError(CoxeterError::Kind::not_spherical,
                       cox.format(I) + " does not generate a finite subgroup");
  }
  WElement w;
  for (bool grew = true; grew;) {
    grew = false;
    for (auto s : I.members()) {
      if (!cox.right_descents(w).contains(s)) {
        w    = cox.multiply_generator(w, s);
        grew = true;
      }
    }
  }
  return w;
}

ParabolicSplit alpha_I(LiftGerm const& lift, GeneratorSet I, Morphism const& b) {
  auto const& germ = lift.germ;
  auto const& cox  = lift.cox;
  std::vector<ElementId> head;
  Morphism               rest = b;
  while (!rest.is_identity()) {
    // The largest divisor of the first factor written with letters of I.
    std::optional<ElementId> best;
    std::vector<ElementId>   candidates;
    for (auto d : germ_left_divisors(germ, alpha(germ, rest))) {
      auto const& w = lift.elements[d.index];
      if ((cox.support(w).bits & ~I.bits) == 0) {
        candidates.push_back(d);
        if (!best || w.length() > lift.elements[best->index].length()) {
          best = d;
        }
      }
    }
    for (auto d : candidates) {
      if (!germ.left_divides(d, *best)) {
        throw GermError(GermError::Kind::not_locally_garside,
                        "parabolic divisors have no maximum", {d, *best});
      }
    }
    if (germ.is_identity(*best)) {
      break;
    }
    head.push_back(*best);
    rest = left_quotient(germ, from_element(germ, *best), rest);
  }
  return {normal_form(germ, RawPath{b.source, head}), rest};
}

bool is_I_reduced(CoxeterSystem const& cox, GeneratorSet I, WElement const& w) {
  return (cox.left_descents(w) & I).empty();
}

ElementaryConjugator v_alpha_I(CoxeterSystem const& cox, std::size_t alpha,
                               GeneratorSet I) {
  if (I.contains(alpha)) {
    throw CoxeterError(CoxeterError::Kind::bad_matrix,
                       "alpha must lie outside I");
  }
  auto K = I.with(alpha);
  if (!cox.is_spherical(K)) {
    throw CoxeterError(CoxeterError::Kind::infinite_difference,
                       cox.format(K) + " is not spherical");
  }
  auto v = cox.multiply(w_parabolic_longest(cox, K), w_parabolic_longest(cox, I));
  auto J = cox.conjugate(v, I);
  if (!J) {
    throw CoxeterError(CoxeterError::Kind::infinite_difference,
                       "v I v^-1 is not a set of generators");
  }
  return {*J, v};
}

}  // namespace garside
