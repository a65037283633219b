#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace ncdiv;

namespace {

Derivation rand_der(Rng& rng, Alphabet a, int max_degree = 3)
{
    return random_derivation(rng, a, static_cast<int>(rng.uniform(-1, max_degree)));
}

} // namespace

TEST_CASE("basis element degree and serialization", "[derivation]")
{
    const DerBasisElem e{2, Word{1, 2, 1}};
    CHECK(e.degree() == 2);
    CHECK(to_string(e) == "d2*:1.2.1");
    CHECK(parse_der_basis_elem("d2*:1.2.1") == e);
    CHECK(parse_der_basis_elem("d1*:e").degree() == -1);
    CHECK_THROWS_AS(parse_der_basis_elem("x1*:1"), std::invalid_argument);
    CHECK_THROWS_AS(Derivation::basis(make_alphabet(2), 3, Word{1}), std::out_of_range);
    CHECK_THROWS_AS(Derivation::basis(make_alphabet(2), 1, Word{4}), std::out_of_range);
}

TEST_CASE("derivation serialization round trips", "[derivation]")
{
    Rng rng(31);
    const Alphabet a = make_alphabet(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Derivation d = rand_der(rng, a);
        CHECK(parse_derivation(a, to_string(d)) == d);
    }
    CHECK(parse_derivation(a, "0").is_zero());
    CHECK_THROWS_AS(parse_derivation(a, "(1)d4*:1"), std::out_of_range);
    CHECK_THROWS_AS(parse_derivation(a, "d1*:1"), std::invalid_argument);
}

TEST_CASE("apply follows the Leibniz rule", "[derivation][property]")
{
    Rng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const Derivation d = rand_der(rng, a);
        const NcPoly p = random_poly(rng, a, static_cast<int>(rng.uniform(0, 5)));
        CHECK(apply(d, p) == ncdiv::testing::apply_recursive(d, p));
    }
    // degree -1: x_1^* deletes the letter x_1
    const Alphabet a = make_alphabet(2);
    const NcPoly img = apply(Derivation::basis(a, 1, Word{}), NcPoly::monomial(a, Word{1, 2, 1}));
    CHECK(img == NcPoly::monomial(a, Word{2, 1}) + NcPoly::monomial(a, Word{1, 2}));
}

TEST_CASE("bracket agrees with the commutator of compositions on generators", "[derivation][property]")
{
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const Derivation d1 = rand_der(rng, a), d2 = rand_der(rng, a);
        const Derivation br = der_bracket(d1, d2);
        for (int j = 1; j <= a.n; ++j) {
            const NcPoly z = NcPoly::generator(a, j);
            CHECK(apply(br, z) == apply(d1, apply(d2, z)) - apply(d2, apply(d1, z)));
        }
    }
}

TEST_CASE("bracket is antisymmetric, graded and satisfies Jacobi", "[derivation][property]")
{
    Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const int p = static_cast<int>(rng.uniform(-1, 3)), q = static_cast<int>(rng.uniform(-1, 3)),
                  r = static_cast<int>(rng.uniform(-1, 3));
        const Derivation x = random_derivation(rng, a, p), y = random_derivation(rng, a, q),
                         z = random_derivation(rng, a, r);
        CHECK(der_bracket(x, y) == -der_bracket(y, x));
        CHECK(der_bracket(x, y).is_homogeneous_of_degree(p + q));
        const Derivation jac = der_bracket(x, der_bracket(y, z)) + der_bracket(y, der_bracket(z, x)) +
                               der_bracket(z, der_bracket(x, y));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("actions on cyclic words are Lie actions", "[derivation][property]")
{
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const Alphabet a = make_alphabet(static_cast<int>(rng.uniform(1, 3)));
        const Derivation d1 = rand_der(rng, a), d2 = rand_der(rng, a);
        const BiCyclicPoly b = random_bicyclic(rng, a, static_cast<int>(rng.uniform(0, 4)));
        CHECK(act_on_bicyclic(der_bracket(d1, d2), b) ==
              act_on_bicyclic(d1, act_on_bicyclic(d2, b)) - act_on_bicyclic(d2, act_on_bicyclic(d1, b)));
        const CyclicPoly c = project(random_poly(rng, a, static_cast<int>(rng.uniform(0, 4))));
        CHECK(act_on_cyclic(der_bracket(d1, d2), c) ==
              act_on_cyclic(d1, act_on_cyclic(d2, c)) - act_on_cyclic(d2, act_on_cyclic(d1, c)));
    }
}

TEST_CASE("action does not depend on the representative", "[derivation][property]")
{
    Rng rng(53);
    const Alphabet a = make_alphabet(3);
    for (int trial = 0; trial < 40; ++trial) {
        const Derivation d = rand_der(rng, a);
        const Word u = random_word(rng, a, static_cast<int>(rng.uniform(1, 5)));
        const Word v = random_word(rng, a, static_cast<int>(rng.uniform(0, 4)));
        const BiCyclicPoly b = BiCyclicPoly::of(a, u, v);
        const BiCyclicPoly ref = act_on_bicyclic(d, b);
        for (std::size_t r = 0; r < u.size(); ++r) {
            // act on the rotated word in T, then project each factor
            const PairPoly lifted = tensor(apply(d, NcPoly::monomial(a, rotate(u, r))), NcPoly::monomial(a, v)) +
                                    tensor(NcPoly::monomial(a, rotate(u, r)), apply(d, NcPoly::monomial(a, v)));
            CHECK(project(lifted) == ref);
        }
    }
}

TEST_CASE("basis enumeration and coordinates", "[derivation]")
{
    const Alphabet a = make_alphabet(2);
    for (int k = -1; k <= 3; ++k) {
        const auto basis = enumerate_basis(a, k);
        REQUIRE(basis.size() == basis_dimension(a, k));
        for (std::size_t i = 0; i < basis.size(); ++i)
            CHECK(basis_index(a, basis[i]) == i);
    }
    const Derivation d = Derivation::basis(a, 2, Word{1, 2}, make_rational(3)) + Derivation::basis(a, 1, Word{2});
    const SparseVector v = coordinates(d, 1);
    CHECK(v.nnz() == 1);
    CHECK(v.get(basis_index(a, DerBasisElem{2, Word{1, 2}})) == 3);
    CHECK_THROWS_AS(enumerate_basis(a, -2), std::invalid_argument);
}

TEST_CASE("generation of Der(2) and Der(3) by brackets", "[derivation]")
{
    SECTION("n = 2, k = 2: 16 = 4 + 12")
    {
        const auto r = verify_msz_decomposition(make_alphabet(2), 2);
        CHECK(r.dim_target == 16);
        CHECK(r.dim_complement == 4);
        CHECK(r.dim_bracket_span == 12);
        CHECK(r.direct_sum_ok);
    }
    SECTION("n = 3, k = 2: 81 = 9 + 72")
    {
        const auto r = verify_msz_decomposition(make_alphabet(3), 2);
        CHECK(r.dim_target == 81);
        CHECK(r.dim_complement == 9);
        CHECK(r.dim_bracket_span == 72);
        CHECK(r.direct_sum_ok);
    }
    SECTION("n = 3, k = 3 fills 243")
    {
        const auto r = verify_msz_decomposition(make_alphabet(3), 3);
        CHECK(r.dim_target == 243);
        CHECK(r.dim_sum == 243);
        CHECK(r.fills);
    }
    SECTION("out of range")
    {
        CHECK_THROWS_AS(verify_msz_decomposition(make_alphabet(1), 2), UnsupportedRange);
        CHECK_THROWS_AS(verify_msz_decomposition(make_alphabet(2), 3), UnsupportedRange);
        CHECK_THROWS_AS(verify_msz_decomposition(make_alphabet(3), 1), UnsupportedRange);
    }
}

TEST_CASE("the section is not in the bracket span for n = 1", "[derivation]")
{
    // At n = 1, [Der(1), Der(1)] = 0 in degree 2, so brackets alone cannot fill.
    const Alphabet a = make_alphabet(1);
    const Derivation x2 = Derivation::basis(a, 1, Word{1, 1});
    CHECK(der_bracket(x2, x2).is_zero());
}
