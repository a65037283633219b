#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace ncdiv;

namespace {

bool homogeneous(const NcPoly& p, int k)
{
    for (const auto& [w, c] : p.terms())
        if (w.degree() != k)
            return false;
    return true;
}

} // namespace

TEST_CASE("word serialization round trips", "[tensor]")
{
    CHECK(to_string(Word{1, 2, 1}) == "1.2.1");
    CHECK(to_string(Word{}) == "e");
    CHECK(parse_word("3.1.2") == Word{3, 1, 2});
    CHECK(parse_word("e").empty());
    CHECK_THROWS_AS(parse_word("1..2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("a"), std::invalid_argument);
    CHECK_THROWS_AS(check_word(make_alphabet(2), Word{1, 3}), std::out_of_range);
}

TEST_CASE("multiplication concatenates and has the empty word as unit", "[tensor]")
{
    const Alphabet a = make_alphabet(3);
    NcPoly p = NcPoly::monomial(a, Word{1, 2}) + NcPoly::monomial(a, Word{3}, make_rational(2));
    NcPoly q = NcPoly::monomial(a, Word{2}) - NcPoly::unit(a);
    NcPoly pq = p * q;
    CHECK(pq.coefficient(Word{1, 2, 2}) == 1);
    CHECK(pq.coefficient(Word{3, 2}) == 2);
    CHECK(pq.coefficient(Word{1, 2}) == -1);
    CHECK(pq.coefficient(Word{3}) == -2);
    CHECK(pq.size() == 4);
    CHECK(p * NcPoly::unit(a) == p);
    CHECK(NcPoly::unit(a) * p == p);
}

TEST_CASE("bracket of generators", "[tensor]")
{
    const Alphabet a = make_alphabet(2);
    NcPoly b = bracket(NcPoly::generator(a, 1), NcPoly::generator(a, 2));
    CHECK(b.coefficient(Word{1, 2}) == 1);
    CHECK(b.coefficient(Word{2, 1}) == -1);
    CHECK(bracket(b, b).is_zero());
}

TEST_CASE("alphabet mismatch is an error", "[tensor]")
{
    NcPoly p = NcPoly::generator(make_alphabet(2), 1);
    NcPoly q = NcPoly::generator(make_alphabet(3), 1);
    CHECK_THROWS_AS(p + q, AlphabetMismatch);
    CHECK_THROWS_AS(multiply(p, q), AlphabetMismatch);
    CHECK_THROWS_AS(tensor(p, q), AlphabetMismatch);
    CHECK_THROWS_AS(make_alphabet(0), std::invalid_argument);
}

TEST_CASE("Jacobi identity and grading of the commutator", "[tensor][property]")
{
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const int dp = static_cast<int>(rng.uniform(0, 4)), dq = static_cast<int>(rng.uniform(0, 4)),
                  dr = static_cast<int>(rng.uniform(0, 4));
        const NcPoly p = random_poly(rng, a, dp), q = random_poly(rng, a, dq), r = random_poly(rng, a, dr);
        const NcPoly j = bracket(p, bracket(q, r)) + bracket(q, bracket(r, p)) + bracket(r, bracket(p, q));
        CHECK(j.is_zero());
        CHECK(homogeneous(bracket(p, q), dp + dq));
        CHECK(bracket(p, q) == -bracket(q, p));
    }
}

TEST_CASE("partial agrees with the positional definition and the Leibniz rule", "[tensor][property]")
{
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const NcPoly u = random_poly(rng, a, static_cast<int>(rng.uniform(0, 4)));
        const NcPoly v = random_poly(rng, a, static_cast<int>(rng.uniform(0, 4)));
        const NcPoly one = NcPoly::unit(a);
        for (int i = 1; i <= a.n; ++i) {
            CHECK(partial(i, u) == ncdiv::testing::partial_oracle(i, u));
            // partial_i(uv) = partial_i(u) (1 (x) v) + (u (x) 1) partial_i(v)
            const PairPoly rhs =
                multiply(partial(i, u), tensor(one, v)) + multiply(tensor(u, one), partial(i, v));
            CHECK(partial(i, u * v) == rhs);
        }
    }
    CHECK_THROWS_AS(partial(3, NcPoly::unit(make_alphabet(2))), std::out_of_range);
}

TEST_CASE("word enumeration is lexicographic and indexed", "[tensor]")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= 4; ++k) {
            const auto words = enumerate_words(n, k);
            REQUIRE(words.size() == static_cast<std::size_t>(ncdiv::testing::ipow(n, k)));
            for (std::size_t i = 0; i < words.size(); ++i) {
                CHECK(word_index(n, words[i]) == i);
                if (i > 0)
                    CHECK(words[i - 1].letters() < words[i].letters());
            }
        }
}
