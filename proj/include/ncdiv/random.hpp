// Seeded sampling of words, polynomials and derivations. The bounded draw is
// done here instead of through std distributions so that a seed produces the
// same sample with every standard library.

#ifndef NCDIV_RANDOM_HPP
#define NCDIV_RANDOM_HPP

#include "ncdiv/derivation_algebra.hpp"

#include <cstdint>
#include <random>

namespace ncdiv {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] by rejection sampling.
    long uniform(long lo, long hi)
    {
        if (hi < lo)
            throw std::invalid_argument("empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<long>(next());
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    /// Nonzero integer coefficient in [-bound, bound].
    Rational coefficient(long bound = 3)
    {
        long v = uniform(1, bound);
        return Rational(uniform(0, 1) ? v : -v);
    }

private:
    std::mt19937_64 engine_;
};

inline Word random_word(Rng& rng, Alphabet a, int length)
{
    std::vector<Letter> letters(static_cast<std::size_t>(length));
    for (auto& l : letters)
        l = static_cast<Letter>(rng.uniform(1, a.n));
    return Word(std::move(letters));
}

/// Homogeneous polynomial of the given degree with up to max_terms terms.
inline NcPoly random_poly(Rng& rng, Alphabet a, int degree, int max_terms = 3)
{
    NcPoly p(a);
    const long terms = rng.uniform(1, max_terms);
    for (long i = 0; i < terms; ++i)
        p.add_term(random_word(rng, a, degree), rng.coefficient());
    return p;
}

/// Homogeneous derivation of degree k with up to max_terms basis terms.
inline Derivation random_derivation(Rng& rng, Alphabet a, int k, int max_terms = 3)
{
    Derivation d(a);
    const long terms = rng.uniform(1, max_terms);
    for (long i = 0; i < terms; ++i)
        d.add_term(DerBasisElem{static_cast<Letter>(rng.uniform(1, a.n)), random_word(rng, a, k + 1)},
                   rng.coefficient());
    return d;
}

inline BiCyclicPoly random_bicyclic(Rng& rng, Alphabet a, int degree, int max_terms = 3)
{
    BiCyclicPoly b(a);
    const long terms = rng.uniform(1, max_terms);
    for (long i = 0; i < terms; ++i) {
        const int left = static_cast<int>(rng.uniform(0, degree));
        b.add_term({Necklace(random_word(rng, a, left)), Necklace(random_word(rng, a, degree - left))},
                   rng.coefficient());
    }
    return b;
}

struct DerivationPair {
    Derivation first;
    Derivation second;
};

/// Homogeneous pair (d1, d2) with deg d1, deg d2 >= min_degree and
/// deg d1 + deg d2 <= max_total (and each degree <= max_single).
inline DerivationPair random_pair(Rng& rng, Alphabet a, int min_degree, int max_single, int max_total)
{
    if (2 * min_degree > max_total || min_degree > max_single)
        throw std::invalid_argument("random_pair: empty degree range");
    while (true) {
        const int p = static_cast<int>(rng.uniform(min_degree, max_single));
        const int q = static_cast<int>(rng.uniform(min_degree, max_single));
        if (p + q > max_total)
            continue;
        return {random_derivation(rng, a, p), random_derivation(rng, a, q)};
    }
}

} // namespace ncdiv

#endif // NCDIV_RANDOM_HPP
