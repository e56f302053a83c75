#include "dwc/rank.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>

#include <omp.h>

namespace dwc {

void configure_threads_from_env()
{
    if (const char* cap = std::getenv("DWC_THREADS")) {
        int n = std::atoi(cap);
        if (n > 0) omp_set_num_threads(n);
    }
}

namespace {

// Below this many rows in a pivot bucket the OpenMP fork costs more than it
// saves.
constexpr std::size_t kParallelBucketMin = 32;

/// Machine-integer rows; every operation reports overflow so the caller can
/// rerun the matrix with IntOps.
struct SmallIntOps {
    using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;

    static std::size_t cost(const Row& r)
    {
        std::size_t s = 0;
        for (const auto& e : r) s += 64 - static_cast<std::size_t>(__builtin_clzll(static_cast<unsigned long long>(e.second < 0 ? -e.second : e.second) | 1));
        return s;
    }

    static void remove_content(Row& r)
    {
        if (r.empty()) return;
        std::int64_t g = 0;
        for (const auto& e : r) {
            g = std::gcd(g, e.second);
            if (g == 1) return;
        }
        for (auto& e : r) e.second /= g;
    }

    static bool convert(const SparseMatrix<Rational>::Row& src, Row& r)
    {
        r.clear();
        r.reserve(src.size());
        bool integral = true;
        for (const auto& [c, v] : src) {
            if (mpz_cmp_ui(v.get_den_mpz_t(), 1) != 0 || !mpz_fits_slong_p(v.get_num_mpz_t())) {
                integral = false;
                break;
            }
            long x = mpz_get_si(v.get_num_mpz_t());
            if (!small(x)) return false;
            r.emplace_back(c, x);
        }
        if (integral) {
            remove_content(r);
            return true;
        }
        r.clear();
        mpz_class l = 1;
        for (const auto& e : src) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
        mpz_class x;
        for (const auto& [c, v] : src) {
            x = l / v.get_den();
            x *= v.get_num();
            if (!x.fits_slong_p() || abs(x) > kLimit) return false;
            r.emplace_back(c, x.get_si());
        }
        remove_content(r);
        return true;
    }

    static bool eliminate(Row& row, const Row& pivot)
    {
        std::int64_t g = std::gcd(row.front().second, pivot.front().second);
        std::int64_t fr = pivot.front().second / g;
        std::int64_t fp = row.front().second / g;
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        std::int64_t a = 0, b = 0, v = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                if (__builtin_mul_overflow(fr, row[i].second, &v) || !small(v)) return false;
                out.emplace_back(row[i].first, v);
                ++i;
            } else if (i >= row.size() || pivot[j].first < row[i].first) {
                if (__builtin_mul_overflow(fp, pivot[j].second, &v) || !small(v)) return false;
                out.emplace_back(pivot[j].first, -v);
                ++j;
            } else {
                if (__builtin_mul_overflow(fr, row[i].second, &a) || __builtin_mul_overflow(fp, pivot[j].second, &b) ||
                    __builtin_sub_overflow(a, b, &v) || !small(v)) {
                    return false;
                }
                if (v != 0) out.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        remove_content(out);
        row = std::move(out);
        return true;
    }

private:
    static constexpr std::int64_t kLimit = std::int64_t{1} << 62;
    static bool small(std::int64_t v) { return v > -kLimit && v < kLimit; }
};

/// Integer rows for the fraction-free kernel.
struct IntOps {
    using Value = mpz_class;
    using Row = std::vector<std::pair<std::uint32_t, mpz_class>>;

    static std::size_t cost(const Row& r)
    {
        std::size_t s = 0;
        for (const auto& e : r) s += mpz_sizeinbase(e.second.get_mpz_t(), 2);
        return s;
    }

    static void remove_content(Row& r)
    {
        if (r.empty()) return;
        mpz_class g = abs(r.front().second);
        for (std::size_t i = 1; i < r.size() && g != 1; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].second.get_mpz_t());
        if (g == 1) return;
        for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }

    static bool convert(const SparseMatrix<Rational>::Row& src, Row& r)
    {
        mpz_class l = 1;
        for (const auto& e : src) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
        r.clear();
        r.reserve(src.size());
        for (const auto& [c, v] : src) {
            mpz_class x = l / v.get_den();
            x *= v.get_num();
            r.emplace_back(c, std::move(x));
        }
        remove_content(r);
        return true;
    }

    /// row ← (p/g)·row − (a/g)·pivot with a, p the leading entries.
    static bool eliminate(Row& row, const Row& pivot)
    {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), pivot.front().second.get_mpz_t());
        mpz_class fr = pivot.front().second / g;
        mpz_class fp = row.front().second / g;
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        mpz_class tmp;
        while (i < row.size() || j < pivot.size()) {
            if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, fr * row[i].second);
                ++i;
            } else if (i >= row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -fp * pivot[j].second);
                ++j;
            } else {
                tmp = fr * row[i].second;
                tmp -= fp * pivot[j].second;
                if (tmp != 0) out.emplace_back(row[i].first, tmp);
                ++i;
                ++j;
            }
        }
        remove_content(out);
        row = std::move(out);
        return true;
    }
};

/// Field rows with normalized pivots.
template <ExactField K>
struct FieldOps {
    using Row = typename SparseMatrix<K>::Row;

    static std::size_t cost(const Row& r)
    {
        std::size_t s = 0;
        for (const auto& e : r) s += bit_cost(e.second);
        return s;
    }

    static bool convert(const Row& src, Row& r)
    {
        r = src;
        return true;
    }

    static bool eliminate(Row& row, const Row& pivot)
    {
        K f = row.front().second / pivot.front().second;
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 1, j = 1;
        while (i < row.size() || j < pivot.size()) {
            if (j >= pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.push_back(std::move(row[i]));
                ++i;
            } else if (i >= row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, K(-(f * pivot[j].second)));
                ++j;
            } else {
                K v = row[i].second - f * pivot[j].second;
                if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        row = std::move(out);
        return true;
    }
};

/// Empty when Ops could not represent an intermediate value.
template <class Ops, class SrcRow>
std::optional<std::size_t> bucket_rank(std::size_t cols, const std::vector<SrcRow>& src, Exec exec)
{
    using Row = typename Ops::Row;
    std::vector<std::vector<Row>> buckets(cols);
    for (const auto& r : src) {
        if (r.empty()) continue;
        Row row;
        if (!Ops::convert(r, row)) return std::nullopt;
        buckets[row.front().first].push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        auto bucket = std::move(buckets[c]);
        buckets[c] = {};
        if (bucket.empty()) continue;
        ++rank;
        std::size_t best = 0;
        auto best_key = std::make_tuple(bucket[0].size(), Ops::cost(bucket[0]));
        for (std::size_t i = 1; i < bucket.size(); ++i) {
            if (bucket[i].size() > std::get<0>(best_key)) continue;
            auto key = std::make_tuple(bucket[i].size(), Ops::cost(bucket[i]));
            if (key < best_key) {
                best_key = key;
                best = i;
            }
        }
        Row pivot = std::move(bucket[best]);
        bucket.erase(bucket.begin() + static_cast<std::ptrdiff_t>(best));
        const auto n = static_cast<std::ptrdiff_t>(bucket.size());
        bool ok = true;
        if (exec == Exec::Parallel && bucket.size() >= kParallelBucketMin) {
#pragma omp parallel for schedule(dynamic, 8) reduction(&& : ok)
            for (std::ptrdiff_t i = 0; i < n; ++i) ok = Ops::eliminate(bucket[static_cast<std::size_t>(i)], pivot) && ok;
        } else {
            for (std::ptrdiff_t i = 0; i < n && ok; ++i) ok = Ops::eliminate(bucket[static_cast<std::size_t>(i)], pivot);
        }
        if (!ok) return std::nullopt;
        for (auto& r : bucket) {
            if (!r.empty()) buckets[r.front().first].push_back(std::move(r));
        }
    }
    return rank;
}

}  // namespace

std::size_t exact_rank(const SparseMatrix<Rational>& m, Exec exec)
{
    if (auto r = bucket_rank<SmallIntOps>(m.cols(), m.row_data(), exec)) return *r;
    return *bucket_rank<IntOps>(m.cols(), m.row_data(), exec);
}

std::size_t exact_rank_multiprecision(const SparseMatrix<Rational>& m, Exec exec)
{
    return *bucket_rank<IntOps>(m.cols(), m.row_data(), exec);
}

std::size_t exact_rank(const SparseMatrix<RationalFunction>& m, Exec exec)
{
    return *bucket_rank<FieldOps<RationalFunction>>(m.cols(), m.row_data(), exec);
}

template <ExactField K>
std::size_t rank_reference(const SparseMatrix<K>& m)
{
    RowEchelon<K> ech(m.cols());
    for (const auto& r : m.row_data()) ech.insert(r);
    return ech.rank();
}

// -------------------------------------------------------------- RowEchelon

template <ExactField K>
typename RowEchelon<K>::Row RowEchelon<K>::reduce(const Row& row) const
{
    std::map<std::uint32_t, K> work;
    for (const auto& [c, v] : row) {
        if (c >= cols_) throw Error("row index beyond echelon width");
        if (!is_zero(v)) work.emplace(c, v);
    }
    Row out;
    while (!work.empty()) {
        auto it = work.begin();
        auto pit = pivots_.find(it->first);
        if (pit == pivots_.end()) {
            out.emplace_back(it->first, it->second);
            work.erase(it);
            continue;
        }
        K f = it->second;
        for (const auto& [c, v] : pit->second) {
            auto [w, inserted] = work.try_emplace(c, K(-(f * v)));
            if (!inserted) {
                w->second = w->second - f * v;
                if (is_zero(w->second)) work.erase(w);
            }
        }
    }
    return out;
}

template <ExactField K>
bool RowEchelon<K>::insert(const Row& row)
{
    Row r = reduce(row);
    if (r.empty()) return false;
    K lead = r.front().second;
    for (auto& e : r) e.second = e.second / lead;
    pivots_.emplace(r.front().first, std::move(r));
    return true;
}

template class RowEchelon<Rational>;
template class RowEchelon<RationalFunction>;
template std::size_t rank_reference(const SparseMatrix<Rational>&);
template std::size_t rank_reference(const SparseMatrix<RationalFunction>&);

}  // namespace dwc
