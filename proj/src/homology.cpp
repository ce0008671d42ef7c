#include "garside/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace garside {

namespace {

  long long checked_mul(long long a, long long b) {
    long long r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
      throw std::overflow_error("integer overflow in Smith normal form");
    }
    return r;
  }

  long long checked_sub(long long a, long long b) {
    long long r = 0;
    if (__builtin_sub_overflow(a, b, &r)) {
      throw std::overflow_error("integer overflow in Smith normal form");
    }
    return r;
  }

  using Dense = std::vector<std::vector<long long>>;

  // row_i -= q * row_j
  void row_sub(Dense& m, std::size_t i, std::size_t j, long long q) {
    for (std::size_t c = 0; c < m[i].size(); ++c) {
      m[i][c] = checked_sub(m[i][c], checked_mul(q, m[j][c]));
    }
  }

  void col_sub(Dense& m, std::size_t i, std::size_t j, long long q) {
    for (auto& row : m) {
      row[i] = checked_sub(row[i], checked_mul(q, row[j]));
    }
  }

}  // namespace

std::vector<long long> smith_invariants(Dense m) {
  std::vector<long long> out;
  if (m.empty()) {
    return out;
  }
  auto const rows = m.size();
  auto const cols = m[0].size();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the remaining block moves to (t, t).
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (m[r][c] != 0
              && (pr == rows || std::llabs(m[r][c]) < std::llabs(m[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) {
        std::sort(out.begin(), out.end());
        return out;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) {
        std::swap(row[t], row[pc]);
      }
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        row_sub(m, r, t, m[r][t] / m[t][t]);
        clean = clean && m[r][t] == 0;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        col_sub(m, c, t, m[t][c] / m[t][t]);
        clean = clean && m[t][c] == 0;
      }
      if (!clean) {
        continue;
      }
      // The pivot must divide the rest of the block.
      std::size_t bad = rows;
      for (std::size_t r = t + 1; r < rows && bad == rows; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m[r][c] % m[t][t] != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == rows) {
        break;
      }
      for (std::size_t c = t; c < cols; ++c) {
        m[t][c] = checked_sub(m[t][c], checked_mul(-1, m[bad][c]));
      }
    }
    out.push_back(std::llabs(m[t][t]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbelianGroup cokernel(std::size_t columns, std::vector<SparseRow> input) {
  // Unit pivots are eliminated sparsely; what remains goes to the dense SNF.
  std::vector<std::map<std::size_t, long long>> rows;
  rows.reserve(input.size());
  std::vector<std::set<std::size_t>> occurs(columns);
  for (auto const& in : input) {
    std::map<std::size_t, long long> row;
    for (auto [c, v] : in) {
      if (c >= columns) {
        throw std::out_of_range("relation column out of range");
      }
      row[c] += v;
    }
    std::erase_if(row, [](auto const& e) { return e.second == 0; });
    for (auto const& [c, v] : row) {
      occurs[c].insert(rows.size());
    }
    rows.push_back(std::move(row));
  }
  std::vector<bool> row_alive(rows.size(), true);
  std::vector<bool> col_alive(columns, true);
  std::size_t       alive_cols = columns;

  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t p = 0; p < rows.size(); ++p) {
      if (!row_alive[p]) {
        continue;
      }
      auto it = std::find_if(rows[p].begin(), rows[p].end(),
                             [](auto const& e) { return std::llabs(e.second) == 1; });
      if (it == rows[p].end()) {
        continue;
      }
      auto const j = it->first;
      auto const u = it->second;
      auto const pivot = rows[p];
      for (auto k : std::vector<std::size_t>(occurs[j].begin(), occurs[j].end())) {
        if (k == p) {
          continue;
        }
        auto const q = checked_mul(rows[k].at(j), u);
        for (auto const& [c, v] : pivot) {
          auto& entry = rows[k][c];
          entry       = checked_sub(entry, checked_mul(q, v));
          if (entry == 0) {
            rows[k].erase(c);
            occurs[c].erase(k);
          } else {
            occurs[c].insert(k);
          }
        }
      }
      for (auto const& [c, v] : pivot) {
        occurs[c].erase(p);
      }
      rows[p].clear();
      row_alive[p] = false;
      col_alive[j] = false;
      --alive_cols;
      progress = true;
    }
  }

  std::vector<std::size_t> col_pos(columns, 0);
  std::size_t              next = 0;
  for (std::size_t c = 0; c < columns; ++c) {
    if (col_alive[c]) {
      col_pos[c] = next++;
    }
  }
  Dense rest;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!row_alive[r] || rows[r].empty()) {
      continue;
    }
    std::vector<long long> dense(alive_cols, 0);
    for (auto const& [c, v] : rows[r]) {
      dense[col_pos[c]] = v;
    }
    rest.push_back(std::move(dense));
  }
  auto         inv = smith_invariants(std::move(rest));
  AbelianGroup g;
  g.rank = alive_cols - inv.size();
  for (auto d : inv) {
    if (d > 1) {
      g.torsion.push_back(d);
    }
  }
  return g;
}

}  // namespace garside
