// Exact rank and row echelon forms of sparse matrices.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dwc/exec.hpp"
#include "dwc/sparse_matrix.hpp"

namespace dwc {

/// Rank over Q by fraction-free elimination on integer rows.
///
/// Rows are cleared of denominators and content, then eliminated column by
/// column; within a column the pivot is the candidate row with the fewest
/// nonzeros, ties broken by total bit size. Every combination
/// row ← (p/g)·row − (a/g)·pivot is followed by content removal, so entries
/// stay close to their true size. Exec::Parallel reduces the rows sharing a
/// pivot concurrently; the result does not depend on the schedule.
///
/// Elimination first runs on 64-bit integers with overflow checks and is
/// repeated in GMP integers if any intermediate value does not fit.
std::size_t exact_rank(const SparseMatrix<Rational>& m, Exec exec = Exec::Parallel);

/// The GMP-integer kernel alone.
std::size_t exact_rank_multiprecision(const SparseMatrix<Rational>& m, Exec exec = Exec::Parallel);

/// Rank over Q(t), same pivoting with field division.
std::size_t exact_rank(const SparseMatrix<RationalFunction>& m, Exec exec = Exec::Parallel);

/// Serial textbook elimination (one row at a time against normalized
/// pivots). Kept as the reference the optimized kernels are tested against.
template <ExactField K>
std::size_t rank_reference(const SparseMatrix<K>& m);

/// Incrementally built echelon basis of a row space, with normal forms
/// modulo that space.
template <ExactField K>
class RowEchelon {
public:
    using Row = typename SparseMatrix<K>::Row;

    explicit RowEchelon(std::size_t cols) : cols_(cols) {}

    /// Adds a row; returns false when it was already in the span.
    bool insert(const Row& row);
    /// Remainder of the row after eliminating every pivot column.
    Row reduce(const Row& row) const;
    bool contains(const Row& row) const { return reduce(row).empty(); }

    std::size_t rank() const { return pivots_.size(); }
    std::size_t cols() const { return cols_; }
    bool is_pivot(std::uint32_t col) const { return pivots_.count(col) != 0; }

private:
    std::size_t cols_;
    std::map<std::uint32_t, Row> pivots_;  // leading coefficient 1
};

extern template class RowEchelon<Rational>;
extern template class RowEchelon<RationalFunction>;

}  // namespace dwc
