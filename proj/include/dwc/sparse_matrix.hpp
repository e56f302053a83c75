// Row-major sparse matrices over an exact field.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "dwc/errors.hpp"
#include "dwc/scalar.hpp"

namespace dwc {

template <ExactField K>
class SparseMatrix {
public:
    using Entry = std::pair<std::uint32_t, K>;
    /// Sorted by column, no zeros.
    using Row = std::vector<Entry>;
    using Triplet = std::tuple<std::size_t, std::size_t, K>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    /// Rejects duplicate positions, explicit zeros, and out-of-range indices.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    {
        std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        SparseMatrix m(rows, cols);
        for (std::size_t i = 0; i < triplets.size(); ++i) {
            const auto& [r, c, v] = triplets[i];
            if (r >= rows || c >= cols) throw Error("sparse matrix triplet out of range");
            if (is_zero(v)) throw Error("sparse matrix triplet stores an explicit zero");
            if (i > 0 && std::get<0>(triplets[i - 1]) == r && std::get<1>(triplets[i - 1]) == c) {
                throw Error("sparse matrix has duplicate triplet at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
            }
            m.rows_[r].emplace_back(static_cast<std::uint32_t>(c), v);
        }
        return m;
    }

    static SparseMatrix from_rows(std::size_t cols, std::vector<Row> rows)
    {
        SparseMatrix m;
        m.cols_ = cols;
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (row[k].first >= cols || is_zero(row[k].second) || (k > 0 && row[k - 1].first >= row[k].first)) {
                    throw Error("malformed sparse row");
                }
            }
        }
        m.rows_ = std::move(rows);
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const Row& row(std::size_t i) const { return rows_[i]; }
    const std::vector<Row>& row_data() const { return rows_; }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    bool is_zero_matrix() const
    {
        return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
    }

    std::vector<Triplet> triplets() const
    {
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (const auto& [c, v] : rows_[i]) t.emplace_back(i, c, v);
        }
        return t;
    }

    /// this · other, composing row-vector maps: x ↦ x·this ↦ x·this·other.
    SparseMatrix multiply(const SparseMatrix& other) const
    {
        if (cols_ != other.rows()) throw Error("sparse matrix product dimension mismatch");
        SparseMatrix out(rows(), other.cols());
        std::vector<K> acc(other.cols());
        std::vector<char> touched(other.cols(), 0);
        std::vector<std::uint32_t> cols_hit;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            cols_hit.clear();
            for (const auto& [j, a] : rows_[i]) {
                for (const auto& [k, b] : other.rows_[j]) {
                    if (!touched[k]) {
                        touched[k] = 1;
                        acc[k] = K(0L);
                        cols_hit.push_back(k);
                    }
                    acc[k] = acc[k] + K(a * b);
                }
            }
            std::sort(cols_hit.begin(), cols_hit.end());
            for (auto k : cols_hit) {
                if (!is_zero(acc[k])) out.rows_[i].emplace_back(k, acc[k]);
                touched[k] = 0;
            }
        }
        return out;
    }

    /// Row i of the result is row row_perm[i] of this; column c moves to col_perm[c].
    SparseMatrix permuted(std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) const
    {
        SparseMatrix out(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i) {
            Row r;
            for (const auto& [c, v] : rows_[row_perm[i]]) r.emplace_back(static_cast<std::uint32_t>(col_perm[c]), v);
            std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
            out.rows_[i] = std::move(r);
        }
        return out;
    }

    SparseMatrix transposed() const
    {
        SparseMatrix out(cols(), rows());
        for (std::size_t i = 0; i < rows(); ++i) {
            for (const auto& [c, v] : rows_[i]) out.rows_[c].emplace_back(static_cast<std::uint32_t>(i), v);
        }
        return out;
    }

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<Row> rows_;
};

}  // namespace dwc
