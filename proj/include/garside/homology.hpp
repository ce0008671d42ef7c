#pragma once

// Finitely generated abelian groups given by integer relations.

#include <cstddef>
#include <utility>
#include <vector>

namespace garside {

using SparseRow = std::vector<std::pair<std::size_t, long long>>;

struct AbelianGroup {
  std::size_t            rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1, each dividing the next

  bool trivial() const { return rank == 0 && torsion.empty(); }
};

// Z^columns modulo the span of the rows.  Throws std::overflow_error if an
// entry leaves the 64-bit range.
AbelianGroup cokernel(std::size_t columns, std::vector<SparseRow> rows);

// Nonzero invariant factors of a dense integer matrix, in divisibility order.
std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m);

}  // namespace garside
