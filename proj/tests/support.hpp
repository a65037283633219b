// Shared helpers for the test programs: seeded samplers and small
// brute-force oracles that do not go through the library's fast paths.

#pragma once

#include "ncdiv/ncdiv.hpp"

#include <algorithm>
#include <vector>

namespace ncdiv::testing {

/// Dense Gauss-Jordan rank over the rationals.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m)
{
    if (m.empty())
        return 0;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && is_zero(m[p][c]))
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || is_zero(m[i][c]))
                continue;
            const Rational f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k)
                m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

inline std::vector<std::vector<Rational>> random_dense(Rng& rng, std::size_t rows, std::size_t cols, long bound = 3,
                                                       int zero_percent = 50)
{
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
        for (auto& x : row)
            if (rng.uniform(0, 99) >= zero_percent)
                x = rng.coefficient(bound);
    return m;
}

/// Smallest rotation by trying every one.
inline Word brute_min_rotation(const Word& w)
{
    Word best = w;
    for (std::size_t r = 1; r < w.size(); ++r) {
        Word cand = w.slice(r, w.size()) * w.slice(0, r);
        if (cand.letters() < best.letters())
            best = cand;
    }
    return best;
}

/// Positional definition: sum over occurrences of letter i of prefix (x) suffix.
inline PairPoly partial_oracle(int i, const NcPoly& p)
{
    PairPoly out(p.alphabet());
    for (const auto& [w, c] : p.terms())
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] == i)
                out.add_term({w.slice(0, j), w.slice(j + 1, w.size())}, c);
    return out;
}

/// Derivation applied by composing on monomials: d(w) computed by the
/// product rule on a word split in halves, recursively.
inline NcPoly apply_recursive(const Derivation& d, const Word& w)
{
    const Alphabet a = d.alphabet();
    if (w.empty())
        return NcPoly(a);
    if (w.size() == 1)
        return d.value_on(w[0]);
    const std::size_t h = w.size() / 2;
    const Word u = w.slice(0, h), v = w.slice(h, w.size());
    return apply_recursive(d, u) * NcPoly::monomial(a, v) + NcPoly::monomial(a, u) * apply_recursive(d, v);
}

inline NcPoly apply_recursive(const Derivation& d, const NcPoly& p)
{
    NcPoly out(p.alphabet());
    for (const auto& [w, c] : p.terms())
        out.add_scaled(c, apply_recursive(d, w));
    return out;
}

inline long euler_phi(long m)
{
    long r = m;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            r -= r / p;
        }
    if (m > 1)
        r -= r / m;
    return r;
}

inline long mobius(long m)
{
    int sign = 1;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            m /= p;
            if (m % p == 0)
                return 0;
            sign = -sign;
        }
    if (m > 1)
        sign = -sign;
    return sign;
}

inline long ipow(long b, long e)
{
    long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

/// Number of necklaces of length k over n letters.
inline long necklace_count(long n, long k)
{
    if (k == 0)
        return 1;
    long s = 0;
    for (long d = 1; d <= k; ++d)
        if (k % d == 0)
            s += euler_phi(d) * ipow(n, k / d);
    return s / k;
}

/// Witt dimension of the degree-k part of the free Lie algebra on m letters.
inline long witt(long m, long k)
{
    long s = 0;
    for (long d = 1; d <= k; ++d)
        if (k % d == 0)
            s += mobius(d) * ipow(m, k / d);
    return s / k;
}

} // namespace ncdiv::testing
