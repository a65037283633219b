#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace ncdiv;
using ncdiv::testing::brute_min_rotation;

TEST_CASE("least rotation matches brute force on all short words", "[cyclic]")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 7; ++k)
            for (const Word& w : enumerate_words(n, k)) {
                const Word c = canonical_rotation(w);
                REQUIRE(c == brute_min_rotation(w));
                CHECK(canonical_rotation(c) == c);
                CHECK(rotate(w, least_rotation(w)) == c);
            }
}

TEST_CASE("necklace enumeration matches the counting formula", "[cyclic]")
{
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 6; ++k) {
            const auto ns = enumerate_necklaces(n, k);
            CHECK(static_cast<long>(ns.size()) == ncdiv::testing::necklace_count(n, k));
            std::set<Necklace> distinct(ns.begin(), ns.end());
            CHECK(distinct.size() == ns.size());
        }
    // pairs of total degree k: sum over splits
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 5; ++k) {
            long expected = 0;
            for (int a = 0; a <= k; ++a)
                expected += ncdiv::testing::necklace_count(n, a) * ncdiv::testing::necklace_count(n, k - a);
            CHECK(static_cast<long>(enumerate_necklace_pairs(n, k).size()) == expected);
        }
}

TEST_CASE("projection is rotation invariant", "[cyclic][property]")
{
    Rng rng(2);
    const Alphabet a = make_alphabet(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Word w = random_word(rng, a, static_cast<int>(rng.uniform(0, 7)));
        const CyclicPoly base = project(NcPoly::monomial(a, w));
        for (std::size_t r = 0; r < w.size(); ++r)
            CHECK(project(NcPoly::monomial(a, rotate(w, r))) == base);
    }
}

TEST_CASE("projection is linear and kills commutators", "[cyclic][property]")
{
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const NcPoly p = random_poly(rng, a, static_cast<int>(rng.uniform(0, 4)));
        const NcPoly q = random_poly(rng, a, static_cast<int>(rng.uniform(0, 4)));
        CHECK(project(bracket(p, q)).is_zero());
        const Rational s = rng.coefficient(5);
        CHECK(project(p + s * q) == project(p) + s * project(q));
        BiCyclicPoly expected(a);
        const CyclicPoly pp = project(p), pq = project(q);
        for (const auto& [n1, c1] : pp.terms())
            for (const auto& [n2, c2] : pq.terms())
                expected.add_term({n1, n2}, c1 * c2);
        CHECK(project(tensor(p, q)) == expected);
    }
}

TEST_CASE("tensor projection is factorwise", "[cyclic]")
{
    const Alphabet a = make_alphabet(2);
    const PairPoly t = tensor(NcPoly::monomial(a, Word{2, 1}), NcPoly::monomial(a, Word{2, 2, 1}));
    const BiCyclicPoly b = project(t);
    CHECK(b == BiCyclicPoly::of(a, Word{1, 2}, Word{1, 2, 2}));
    CHECK(b.coefficient({Necklace{1, 2}, Necklace{2, 1, 2}}) == 1);
}

TEST_CASE("switch is an involution exchanging factors", "[cyclic]")
{
    Rng rng(4);
    const Alphabet a = make_alphabet(3);
    for (int trial = 0; trial < 30; ++trial) {
        const BiCyclicPoly b = random_bicyclic(rng, a, static_cast<int>(rng.uniform(0, 5)));
        CHECK(switch_factors(switch_factors(b)) == b);
        for (const auto& [pr, c] : b.terms())
            CHECK(switch_factors(b).coefficient({pr.second, pr.first}) == c);
    }
}

TEST_CASE("necklace serialization round trips", "[cyclic]")
{
    const Necklace n{2, 1, 3};
    CHECK(to_string(n) == "|1.3.2|");
    CHECK(parse_necklace("|3.2.1|") == Necklace{1, 3, 2});
    CHECK(parse_necklace("|e|").empty());
    const NecklacePair p{Necklace{2, 1}, Necklace{}};
    CHECK(to_string(p) == "|1.2|*|e|");
    CHECK(parse_necklace_pair(to_string(p)) == p);
    CHECK_THROWS_AS(parse_necklace("1.2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_necklace_pair("|1|"), std::invalid_argument);
    CHECK_THROWS_AS(CyclicPoly::of(make_alphabet(2), Word{3}), std::out_of_range);
}
