#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "equilog/arith.hpp"
#include "equilog/errors.hpp"

namespace equilog {

using ColIdx = int32_t;
using RatRow = std::vector<std::pair<ColIdx, Rat>>;  // sorted by column

enum class ArithMode { Rational, Multimodular };

// Reduced row-echelon basis of a row space. Pivot entries are 1 and implicit;
// each tail holds the remaining entries, supported on non-pivot columns.
struct RrefResult {
    ColIdx ncols = 0;
    std::vector<ColIdx> pivots;     // ascending
    std::vector<ColIdx> nonpivots;  // ascending
    std::vector<RatRow> tails;      // one per pivot, sorted by column
    std::vector<ColIdx> pivot_row_of_col;  // -1 when the column is not a pivot

    int rank() const { return static_cast<int>(pivots.size()); }
    // Entry of reduced row r at column c (c non-pivot), 0 if absent.
    const Rat* tail_entry(int row, ColIdx col) const;
    void build_index();
};

// Direct exact elimination. Deterministic: the RREF of a row space is unique.
RrefResult rref_rational(std::vector<RatRow> rows, ColIdx ncols, size_t entry_cap = 0);

// Echelon over several word-size primes, Chinese-remainder reconstruction,
// then an exact certificate: every input row must reduce to zero against the
// reconstructed basis, and the mod-p rank pins the rational rank.
// With dims_only set, a full-column-rank result skips reconstruction.
RrefResult rref_multimodular(const std::vector<RatRow>& rows, ColIdx ncols,
                             bool dims_only = false, size_t entry_cap = 0, int jobs = 1);

RrefResult rref(std::vector<RatRow> rows, ColIdx ncols, ArithMode mode, bool dims_only = false,
                size_t entry_cap = 0, int jobs = 1);

// Normal form of a vector against the basis: result supported on non-pivot
// columns. Input need not be sorted; output is.
RatRow normal_form(const RrefResult& basis, const RatRow& v);

// Rank over the first word-size prime: a certified lower bound for the
// rational rank, and an exact certificate of full column rank.
int rank_modp(const std::vector<RatRow>& rows, ColIdx ncols, size_t entry_cap = 0);

// Deterministic list of 31-bit primes for the multimodular mode.
const std::vector<unsigned long>& modular_primes();

}  // namespace equilog
