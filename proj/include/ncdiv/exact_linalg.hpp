// Exact rational scalars, sparse vectors/matrices, and fraction-free
// elimination (rank, right kernel, span dimension).

#ifndef NCDIV_EXACT_LINALG_HPP
#define NCDIV_EXACT_LINALG_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncdiv {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw std::invalid_argument("malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sparse vector with entries kept sorted by index and no stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVector() = default;
    explicit SparseVector(std::size_t dim) : dim_(dim) {}

    SparseVector(std::size_t dim, const std::map<std::size_t, Rational>& entries) : dim_(dim)
    {
        entries_.reserve(entries.size());
        for (const auto& [i, v] : entries) {
            check_index(i);
            if (!ncdiv::is_zero(v))
                entries_.emplace_back(i, v);
        }
    }

    static SparseVector dense(const std::vector<Rational>& values)
    {
        SparseVector v(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!ncdiv::is_zero(values[i]))
                v.entries_.emplace_back(i, values[i]);
        return v;
    }

    std::size_t size() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const& { return entries_; }
    // by value on temporaries, so range-for over f().entries() stays valid
    std::vector<Entry> entries() && { return std::move(entries_); }

    Rational get(std::size_t i) const
    {
        auto it = find(i);
        if (it != entries_.end() && it->first == i)
            return it->second;
        return Rational(0);
    }

    void set(std::size_t i, const Rational& value)
    {
        check_index(i);
        auto it = find(i);
        bool present = it != entries_.end() && it->first == i;
        if (ncdiv::is_zero(value)) {
            if (present)
                entries_.erase(it);
        } else if (present) {
            it->second = value;
        } else {
            entries_.insert(it, Entry{i, value});
        }
    }

    /// Index of the first nonzero entry; size() when the vector is zero.
    std::size_t leading_index() const { return entries_.empty() ? dim_ : entries_.front().first; }

    /// this += factor * other
    void axpy(const Rational& factor, const SparseVector& other)
    {
        if (other.dim_ != dim_)
            throw DimensionMismatch("axpy: dimension mismatch");
        if (ncdiv::is_zero(factor) || other.entries_.empty())
            return;
        std::vector<Entry> out;
        out.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                out.push_back(std::move(*a++));
            } else if (a == entries_.end() || b->first < a->first) {
                out.emplace_back(b->first, factor * b->second);
                ++b;
            } else {
                Rational v = a->second + factor * b->second;
                if (!ncdiv::is_zero(v))
                    out.emplace_back(a->first, std::move(v));
                ++a;
                ++b;
            }
        }
        entries_ = std::move(out);
    }

    SparseVector& operator*=(const Rational& factor)
    {
        if (ncdiv::is_zero(factor)) {
            entries_.clear();
            return *this;
        }
        for (auto& e : entries_)
            e.second *= factor;
        return *this;
    }

    SparseVector& operator+=(const SparseVector& other)
    {
        axpy(Rational(1), other);
        return *this;
    }
    SparseVector& operator-=(const SparseVector& other)
    {
        axpy(Rational(-1), other);
        return *this;
    }

    friend bool operator==(const SparseVector& a, const SparseVector& b)
    {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    std::vector<Entry>::iterator find(std::size_t i)
    {
        return std::lower_bound(entries_.begin(), entries_.end(), i,
                                [](const Entry& e, std::size_t k) { return e.first < k; });
    }
    std::vector<Entry>::const_iterator find(std::size_t i) const
    {
        return std::lower_bound(entries_.begin(), entries_.end(), i,
                                [](const Entry& e, std::size_t k) { return e.first < k; });
    }
    void check_index(std::size_t i) const
    {
        if (i >= dim_)
            throw std::out_of_range("sparse vector index " + std::to_string(i) + " out of range " +
                                    std::to_string(dim_));
    }

    std::size_t dim_ = 0;
    std::vector<Entry> entries_;
};

inline Rational dot(const SparseVector& a, const SparseVector& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot: dimension mismatch");
    Rational s = 0;
    auto x = a.entries().begin();
    auto y = b.entries().begin();
    while (x != a.entries().end() && y != b.entries().end()) {
        if (x->first < y->first)
            ++x;
        else if (y->first < x->first)
            ++y;
        else {
            s += x->second * y->second;
            ++x;
            ++y;
        }
    }
    return s;
}

/// Row-major sparse matrix. Rows are SparseVectors of length cols().
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, SparseVector(cols)) {}

    static SparseMatrix identity(std::size_t n)
    {
        SparseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.set(i, i, Rational(1));
        return m;
    }

    static SparseMatrix from_rows(std::size_t cols, std::vector<SparseVector> rows)
    {
        SparseMatrix m(0, cols);
        for (auto& r : rows)
            m.append_row(std::move(r));
        return m;
    }

    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        SparseMatrix m(0, cols);
        for (const auto& r : rows) {
            if (r.size() != cols)
                throw DimensionMismatch("ragged dense matrix");
            m.append_row(SparseVector::dense(r));
        }
        return m;
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const SparseVector& row(std::size_t r) const { return rows_.at(r); }
    const std::vector<SparseVector>& row_data() const { return rows_; }

    std::size_t nnz() const
    {
        std::size_t total = 0;
        for (const auto& r : rows_)
            total += r.nnz();
        return total;
    }

    Rational at(std::size_t r, std::size_t c) const
    {
        if (c >= cols_)
            throw std::out_of_range("column out of range");
        return rows_.at(r).get(c);
    }

    void set(std::size_t r, std::size_t c, const Rational& v)
    {
        if (c >= cols_)
            throw std::out_of_range("column out of range");
        rows_.at(r).set(c, v);
    }

    void append_row(SparseVector row)
    {
        if (row.size() != cols_)
            throw DimensionMismatch("row length " + std::to_string(row.size()) + " != " +
                                    std::to_string(cols_));
        rows_.push_back(std::move(row));
    }

    SparseVector multiply(const SparseVector& v) const
    {
        if (v.size() != cols_)
            throw DimensionMismatch("matrix-vector dimension mismatch");
        SparseVector out(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Rational s = dot(rows_[r], v);
            if (!is_zero(s))
                out.set(r, s);
        }
        return out;
    }

private:
    std::size_t cols_ = 0;
    std::vector<SparseVector> rows_;
};

namespace detail {

// Integer row used during fraction-free elimination; columns strictly increasing.
struct IntRow {
    std::vector<std::uint32_t> cols;
    std::vector<Integer> vals;

    std::size_t size() const { return cols.size(); }
    bool empty() const { return cols.empty(); }

    const Integer* coefficient(std::uint32_t c) const
    {
        auto it = std::lower_bound(cols.begin(), cols.end(), c);
        if (it == cols.end() || *it != c)
            return nullptr;
        return &vals[static_cast<std::size_t>(it - cols.begin())];
    }
};

inline void normalize_content(IntRow& row)
{
    if (row.empty())
        return;
    Integer g = 0;
    for (const auto& v : row.vals) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1)
            return;
    }
    if (g > 1)
        for (auto& v : row.vals)
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline IntRow to_int_row(const SparseVector& v)
{
    IntRow row;
    Integer l = 1;
    for (const auto& [i, q] : v.entries())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    row.cols.reserve(v.nnz());
    row.vals.reserve(v.nnz());
    for (const auto& [i, q] : v.entries()) {
        if (i > std::numeric_limits<std::uint32_t>::max())
            throw std::length_error("column index too large for elimination");
        row.cols.push_back(static_cast<std::uint32_t>(i));
        Integer x = q.get_num() * (l / q.get_den());
        row.vals.push_back(std::move(x));
    }
    normalize_content(row);
    return row;
}

// target := (p * target - t * pivot) / content, with p, t the coefficients of
// the eliminated column in pivot and target respectively.
inline IntRow combine(const IntRow& target, const Integer& p, const IntRow& pivot, const Integer& t)
{
    IntRow out;
    out.cols.reserve(target.size() + pivot.size());
    out.vals.reserve(target.size() + pivot.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < target.size() && target.cols[a] < pivot.cols[b])) {
            out.cols.push_back(target.cols[a]);
            out.vals.push_back(p * target.vals[a]);
            ++a;
        } else if (a == target.size() || pivot.cols[b] < target.cols[a]) {
            out.cols.push_back(pivot.cols[b]);
            out.vals.push_back(-t * pivot.vals[b]);
            ++b;
        } else {
            Integer v = p * target.vals[a] - t * pivot.vals[b];
            if (v != 0) {
                out.cols.push_back(target.cols[a]);
                out.vals.push_back(std::move(v));
            }
            ++a;
            ++b;
        }
    }
    normalize_content(out);
    return out;
}

/// Result of forward elimination: pivots in the order they were chosen.
/// Pivot row k only involves its own pivot column, columns of later pivots,
/// and free columns.
struct Echelon {
    std::size_t cols = 0;
    std::vector<std::uint32_t> pivot_cols;
    std::vector<IntRow> pivot_rows;

    std::size_t rank() const { return pivot_cols.size(); }
};

/// Fraction-free sparse Gaussian elimination. The pivot column is always a
/// column with the fewest remaining nonzeros; within it the shortest row wins.
/// Ties break on the smallest index, so the result is deterministic.
inline Echelon eliminate(std::vector<IntRow> rows, std::size_t cols)
{
    Echelon ech;
    ech.cols = cols;
    const std::size_t nrows = rows.size();
    std::vector<char> active(nrows, 0);
    std::vector<std::uint32_t> col_count(cols, 0);
    std::vector<std::vector<std::uint32_t>> col_rows(cols);

    for (std::size_t r = 0; r < nrows; ++r) {
        if (rows[r].empty())
            continue;
        active[r] = 1;
        for (auto c : rows[r].cols) {
            ++col_count[c];
            col_rows[c].push_back(static_cast<std::uint32_t>(r));
        }
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> queue;
    for (std::size_t c = 0; c < cols; ++c)
        if (col_count[c] > 0)
            queue.emplace(col_count[c], static_cast<std::uint32_t>(c));

    auto bump = [&](std::uint32_t c, int delta) {
        if (col_count[c] > 0)
            queue.erase({col_count[c], c});
        col_count[c] = static_cast<std::uint32_t>(static_cast<int>(col_count[c]) + delta);
        if (col_count[c] > 0)
            queue.emplace(col_count[c], c);
    };

    while (!queue.empty()) {
        const std::uint32_t c = queue.begin()->second;

        // live rows containing c (the list may hold stale entries)
        std::vector<std::uint32_t> live;
        live.reserve(col_rows[c].size());
        for (auto r : col_rows[c])
            if (active[r] && rows[r].coefficient(c) != nullptr)
                live.push_back(r);
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        col_rows[c].clear();

        std::uint32_t piv = live.front();
        for (auto r : live)
            if (rows[r].size() < rows[piv].size())
                piv = r;

        active[piv] = 0;
        for (auto cc : rows[piv].cols)
            bump(cc, -1);

        const Integer p = *rows[piv].coefficient(c);
        for (auto r : live) {
            if (r == piv)
                continue;
            const Integer t = *rows[r].coefficient(c);
            IntRow updated = combine(rows[r], p, rows[piv], t);
            // adjust column bookkeeping by diffing old and new supports
            const IntRow& old = rows[r];
            std::size_t a = 0, b = 0;
            while (a < old.size() || b < updated.size()) {
                if (b == updated.size() || (a < old.size() && old.cols[a] < updated.cols[b])) {
                    bump(old.cols[a], -1);
                    ++a;
                } else if (a == old.size() || updated.cols[b] < old.cols[a]) {
                    bump(updated.cols[b], +1);
                    col_rows[updated.cols[b]].push_back(r);
                    ++b;
                } else {
                    ++a;
                    ++b;
                }
            }
            rows[r] = std::move(updated);
            if (rows[r].empty())
                active[r] = 0;
        }
        ech.pivot_cols.push_back(c);
        ech.pivot_rows.push_back(std::move(rows[piv]));
    }
    return ech;
}

inline std::vector<IntRow> to_int_rows(const std::vector<SparseVector>& rows)
{
    std::vector<IntRow> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(to_int_row(r));
    return out;
}

} // namespace detail

/// Reduced row echelon basis of span(vectors): every returned vector has
/// leading entry 1 and is zero at the leading index of every other one. The
/// result depends only on the span.
inline std::vector<SparseVector> rref_basis(const std::vector<SparseVector>& vectors)
{
    std::vector<SparseVector> basis; // sorted by leading index
    for (const auto& input : vectors) {
        SparseVector v = input;
        for (const auto& b : basis) {
            if (!basis.empty() && b.size() != v.size())
                throw DimensionMismatch("rref_basis: dimension mismatch");
            Rational f = v.get(b.leading_index());
            if (!is_zero(f))
                v.axpy(-f, b);
        }
        if (v.is_zero())
            continue;
        const std::size_t lead = v.leading_index();
        v *= Rational(1) / v.get(lead);
        for (auto& b : basis) {
            Rational f = b.get(lead);
            if (!is_zero(f))
                b.axpy(-f, v);
        }
        auto pos = std::lower_bound(basis.begin(), basis.end(), lead,
                                    [](const SparseVector& b, std::size_t k) { return b.leading_index() < k; });
        basis.insert(pos, std::move(v));
    }
    return basis;
}

inline std::size_t rank(const SparseMatrix& m)
{
    return detail::eliminate(detail::to_int_rows(m.row_data()), m.cols()).rank();
}

/// Right kernel from an echelon form, one vector per free column, before
/// canonicalization.
inline std::vector<SparseVector> kernel_from_echelon(const detail::Echelon& ech)
{
    const std::size_t cols = ech.cols;
    std::vector<char> is_pivot(cols, 0);
    for (auto c : ech.pivot_cols)
        is_pivot[c] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    if (free_cols.empty())
        return {};

    // Solve for all free columns at once: x[c] is a sparse combination over
    // free-column slots.
    std::vector<std::map<std::size_t, Rational>> x(cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k)
        x[free_cols[k]][k] = 1;
    for (std::size_t k = ech.pivot_cols.size(); k-- > 0;) {
        const auto& row = ech.pivot_rows[k];
        const std::uint32_t pc = ech.pivot_cols[k];
        std::map<std::size_t, Rational> acc;
        Integer pv = 0;
        for (std::size_t e = 0; e < row.size(); ++e) {
            const auto c = row.cols[e];
            if (c == pc) {
                pv = row.vals[e];
                continue;
            }
            for (const auto& [slot, val] : x[c]) {
                Rational& a = acc[slot];
                a += Rational(row.vals[e]) * val;
            }
        }
        auto& out = x[pc];
        const Rational inv = Rational(-1) / Rational(pv);
        for (auto& [slot, val] : acc)
            if (!is_zero(val))
                out.emplace(slot, val * inv);
    }
    std::vector<std::map<std::size_t, Rational>> per_slot(free_cols.size());
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [slot, val] : x[c])
            per_slot[slot].emplace(c, val);
    std::vector<SparseVector> out;
    out.reserve(free_cols.size());
    for (const auto& entries : per_slot)
        out.emplace_back(cols, entries);
    return out;
}

/// Basis of the right null space, canonicalized to reduced row echelon form
/// (first nonzero entry of every vector is 1).
inline std::vector<SparseVector> kernel_basis(const SparseMatrix& m)
{
    auto ech = detail::eliminate(detail::to_int_rows(m.row_data()), m.cols());
    return rref_basis(kernel_from_echelon(ech));
}

/// Rank of the matrix whose rows are the given vectors.
inline std::size_t span_dimension(const std::vector<SparseVector>& vectors)
{
    if (vectors.empty())
        return 0;
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim)
            throw DimensionMismatch("span_dimension: vectors of length " + std::to_string(dim) + " and " +
                                    std::to_string(v.size()));
    return detail::eliminate(detail::to_int_rows(vectors), dim).rank();
}

/// Coefficients lambda with sum_i lambda_i * generators[i] == target, if any.
/// When the generators are dependent the returned solution is the one from
/// the canonical kernel basis.
inline std::optional<std::vector<Rational>> solve_combination(const std::vector<SparseVector>& generators,
                                                              const SparseVector& target)
{
    const std::size_t m = generators.size();
    std::map<std::size_t, std::map<std::size_t, Rational>> coords; // coordinate -> (column -> value)
    for (std::size_t g = 0; g < m; ++g) {
        if (generators[g].size() != target.size())
            throw DimensionMismatch("solve_combination: dimension mismatch");
        for (const auto& [i, v] : generators[g].entries())
            coords[i][g] = v;
    }
    for (const auto& [i, v] : target.entries())
        coords[i][m] = -v;
    SparseMatrix sys(0, m + 1);
    for (const auto& [i, row] : coords)
        sys.append_row(SparseVector(m + 1, row));
    // Canonical kernel basis is in RREF; a vector with nonzero last entry
    // exists iff the target lies in the span.
    for (const auto& k : kernel_basis(sys)) {
        if (k.leading_index() == m) // target itself is zero
            return std::vector<Rational>(m, Rational(0));
        Rational last = k.get(m);
        if (is_zero(last))
            continue;
        std::vector<Rational> lambda(m);
        for (std::size_t g = 0; g < m; ++g)
            lambda[g] = k.get(g) / last;
        return lambda;
    }
    if (target.is_zero())
        return std::vector<Rational>(m, Rational(0));
    return std::nullopt;
}

} // namespace ncdiv

#endif // NCDIV_EXACT_LINALG_HPP
