// The graded Lie algebra Der(T(A_n)) = sum_{k >= -1} A_n^* (x) A_n^{(x)(k+1)}:
// basis elements, the bracket, and the actions on T, |T| and |T| (x) |T|.

#ifndef NCDIV_DERIVATION_ALGEBRA_HPP
#define NCDIV_DERIVATION_ALGEBRA_HPP

#include "ncdiv/cyclic_words.hpp"

#include <compare>
#include <string>
#include <vector>

namespace ncdiv {

class UnsupportedRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// x_{dual}^* (x) word, of degree |word| - 1. An empty word gives the
/// degree -1 element x_{dual}^*, which sends x_dual to the unit.
struct DerBasisElem {
    Letter dual = 1;
    Word word;

    int degree() const { return word.degree() - 1; }

    friend bool operator==(const DerBasisElem&, const DerBasisElem&) = default;
    friend std::strong_ordering operator<=>(const DerBasisElem& a, const DerBasisElem& b)
    {
        if (a.word.size() != b.word.size())
            return a.word.size() <=> b.word.size();
        if (a.dual != b.dual)
            return a.dual <=> b.dual;
        return a.word <=> b.word;
    }
};

inline std::string to_string(const DerBasisElem& e)
{
    return "d" + std::to_string(static_cast<int>(e.dual)) + "*:" + to_string(e.word);
}

/// Inverse of to_string(DerBasisElem), e.g. "d1*:1.2" or "d2*:e".
inline DerBasisElem parse_der_basis_elem(std::string_view text)
{
    auto colon = text.find("*:");
    if (text.size() < 4 || text.front() != 'd' || colon == std::string_view::npos)
        throw std::invalid_argument("malformed derivation basis element '" + std::string(text) + "'");
    Word dual = parse_word(text.substr(1, colon - 1));
    if (dual.size() != 1)
        throw std::invalid_argument("malformed dual index in '" + std::string(text) + "'");
    return DerBasisElem{dual[0], parse_word(text.substr(colon + 2))};
}

class Derivation : public LinearCombination<Derivation, DerBasisElem> {
public:
    explicit Derivation(Alphabet a) : LinearCombination(a) {}

    static Derivation basis(Alphabet a, int dual, const Word& w, const Rational& c = Rational(1))
    {
        if (!a.contains(dual))
            throw std::out_of_range("dual index out of range");
        check_word(a, w);
        return Derivation(a).add_term(DerBasisElem{static_cast<Letter>(dual), w}, c);
    }
    static Derivation basis(Alphabet a, const DerBasisElem& e, const Rational& c = Rational(1))
    {
        return basis(a, e.dual, e.word, c);
    }

    Derivation homogeneous_part(int k) const
    {
        Derivation out(alphabet());
        for (const auto& [e, c] : terms())
            if (e.degree() == k)
                out.add_term(e, c);
        return out;
    }

    bool is_homogeneous_of_degree(int k) const
    {
        for (const auto& [e, c] : terms())
            if (e.degree() != k)
                return false;
        return true;
    }

    /// D(x_j) as a polynomial.
    NcPoly value_on(int j) const
    {
        NcPoly out(alphabet());
        for (const auto& [e, c] : terms())
            if (e.dual == j)
                out.add_term(e.word, c);
        return out;
    }

    /// Values on all generators, indexed 1..n (slot 0 unused).
    std::vector<NcPoly> generator_values() const
    {
        std::vector<NcPoly> values(static_cast<std::size_t>(alphabet().n) + 1, NcPoly(alphabet()));
        for (const auto& [e, c] : terms())
            values[e.dual].add_term(e.word, c);
        return values;
    }
};

inline std::string to_string(const Derivation& d)
{
    if (d.is_zero())
        return "0";
    std::string s;
    for (const auto& [e, c] : d.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + to_string(e);
    }
    return s;
}

/// Inverse of to_string(Derivation): "(c)d1*:1.2 + (c')d2*:e" or "0".
inline Derivation parse_derivation(Alphabet a, std::string_view text)
{
    Derivation d(a);
    if (text == "0")
        return d;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(" + ", pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view term = text.substr(pos, end - pos);
        std::size_t close = term.find(')');
        if (term.empty() || term.front() != '(' || close == std::string_view::npos)
            throw std::invalid_argument("malformed derivation term '" + std::string(term) + "'");
        const DerBasisElem e = parse_der_basis_elem(term.substr(close + 1));
        if (!a.contains(e.dual))
            throw std::out_of_range("dual index out of range in '" + std::string(term) + "'");
        check_word(a, e.word);
        d.add_term(e, parse_rational(term.substr(1, close - 1)));
        pos = end == text.size() ? end : end + 3;
    }
    return d;
}

namespace detail {
inline void check_same(Alphabet a, Alphabet b, const char* what)
{
    if (!(a == b))
        throw AlphabetMismatch(std::string(what) + ": alphabet mismatch");
}
} // namespace detail

/// Leibniz extension of d from generators to T(A_n).
inline NcPoly apply(const Derivation& d, const NcPoly& p)
{
    detail::check_same(d.alphabet(), p.alphabet(), "apply");
    const auto values = d.generator_values();
    NcPoly out(p.alphabet());
    for (const auto& [w, c] : p.terms())
        for (std::size_t s = 0; s < w.size(); ++s)
            for (const auto& [v, b] : values[w[s]].terms())
                out.add_term(substitute(w, s, v), c * b);
    return out;
}

/// Bracket from the explicit basis formula: for D1 = f (x) u, D2 = g (x) v,
/// [D1, D2] = sum_s f(v_s) g (x) v[<s] u v[>s] - sum_t g(u_t) f (x) u[<t] v u[>t].
inline Derivation der_bracket(const Derivation& d1, const Derivation& d2)
{
    detail::check_same(d1.alphabet(), d2.alphabet(), "der_bracket");
    Derivation out(d1.alphabet());
    for (const auto& [e1, c1] : d1.terms()) {
        for (const auto& [e2, c2] : d2.terms()) {
            const Rational c = c1 * c2;
            for (std::size_t s = 0; s < e2.word.size(); ++s)
                if (e2.word[s] == e1.dual)
                    out.add_term(DerBasisElem{e2.dual, substitute(e2.word, s, e1.word)}, c);
            for (std::size_t t = 0; t < e1.word.size(); ++t)
                if (e1.word[t] == e2.dual)
                    out.add_term(DerBasisElem{e1.dual, substitute(e1.word, t, e2.word)}, -c);
        }
    }
    return out;
}

namespace detail {
// d . |w| for a single representative, accumulated into out with weight c.
template <class Sink>
void act_on_word(const std::vector<NcPoly>& values, const Word& w, const Rational& c, Sink&& sink)
{
    for (std::size_t s = 0; s < w.size(); ++s)
        for (const auto& [v, b] : values[w[s]].terms())
            sink(substitute(w, s, v), c * b);
}
} // namespace detail

/// Leibniz action on cyclic words: d.|u| = |d(u)|.
inline CyclicPoly act_on_cyclic(const Derivation& d, const CyclicPoly& p)
{
    detail::check_same(d.alphabet(), p.alphabet(), "act_on_cyclic");
    const auto values = d.generator_values();
    CyclicPoly out(p.alphabet());
    for (const auto& [nk, c] : p.terms())
        detail::act_on_word(values, nk.representative(), c,
                            [&](const Word& w, const Rational& x) { out.add_term(Necklace(w), x); });
    return out;
}

/// Factor-wise Leibniz action: d.(|u| (x) |v|) = |d u| (x) |v| + |u| (x) |d v|.
inline BiCyclicPoly act_on_bicyclic(const Derivation& d, const BiCyclicPoly& b)
{
    detail::check_same(d.alphabet(), b.alphabet(), "act_on_bicyclic");
    const auto values = d.generator_values();
    BiCyclicPoly out(b.alphabet());
    for (const auto& [pr, c] : b.terms()) {
        detail::act_on_word(values, pr.first.representative(), c,
                            [&](const Word& w, const Rational& x) { out.add_term({Necklace(w), pr.second}, x); });
        detail::act_on_word(values, pr.second.representative(), c,
                            [&](const Word& w, const Rational& x) { out.add_term({pr.first, Necklace(w)}, x); });
    }
    return out;
}

/// Basis of Der(k): all (i0, w) with |w| = k + 1, dual index major.
inline std::vector<DerBasisElem> enumerate_basis(Alphabet a, int k)
{
    if (k < -1)
        throw std::invalid_argument("derivation degree must be >= -1");
    std::vector<DerBasisElem> out;
    const auto words = enumerate_words(a.n, k + 1);
    out.reserve(static_cast<std::size_t>(a.n) * words.size());
    for (int i = 1; i <= a.n; ++i)
        for (const auto& w : words)
            out.push_back(DerBasisElem{static_cast<Letter>(i), w});
    return out;
}

inline std::size_t basis_dimension(Alphabet a, int k)
{
    std::size_t d = 1;
    for (int i = 0; i < k + 2; ++i)
        d *= static_cast<std::size_t>(a.n);
    return d;
}

/// Position of e in enumerate_basis(a, e.degree()).
inline std::size_t basis_index(Alphabet a, const DerBasisElem& e)
{
    std::size_t words = 1;
    for (std::size_t i = 0; i < e.word.size(); ++i)
        words *= static_cast<std::size_t>(a.n);
    return (e.dual - 1u) * words + word_index(a.n, e.word);
}

/// Coordinates of the degree-k part of d in the basis of Der(k).
inline SparseVector coordinates(const Derivation& d, int k)
{
    SparseVector v(basis_dimension(d.alphabet(), k));
    for (const auto& [e, c] : d.terms())
        if (e.degree() == k)
            v.set(basis_index(d.alphabet(), e), c);
    return v;
}

struct MszReport {
    int n = 0;
    int k = 0;
    std::size_t dim_target = 0;       ///< n^{k+2}
    std::size_t dim_bracket_span = 0; ///< span of the bracket families
    std::size_t dim_complement = 0;   ///< dim s(A (x) A); k = 2 only
    std::size_t dim_sum = 0;          ///< dim(bracket span + complement)
    bool direct_sum_ok = false;       ///< k = 2: sum is direct and fills Der(2)
    bool fills = false;               ///< the sum equals Der(k)
};

/// s(x_i (x) x_j) = x_1^* (x) x_i x_1 x_j.
inline Derivation msz_section(Alphabet a, int i, int j) { return Derivation::basis(a, 1, Word{i, 1, j}); }

/// Rank check of the generation statement for Der(k): for k = 2,
/// Der(2) = s(A (x) A) (+) [Der(1), Der(1)]; for n >= k >= 3,
/// Der(k) = [Der(k-1), Der(1)] + [Der(k-2), Der(2)].
inline MszReport verify_msz_decomposition(Alphabet a, int k)
{
    const int n = a.n;
    if (k == 2) {
        if (n < 2)
            throw UnsupportedRange("decomposition of Der(2) needs n >= 2");
    } else if (!(k >= 3 && n >= k)) {
        throw UnsupportedRange("generation of Der(k) is checked for k = 2 (n >= 2) or n >= k >= 3; got n=" +
                               std::to_string(n) + ", k=" + std::to_string(k));
    }
    MszReport rep;
    rep.n = n;
    rep.k = k;
    rep.dim_target = basis_dimension(a, k);

    std::vector<SparseVector> brackets;
    auto add_family = [&](int p, int q) {
        const auto lhs = enumerate_basis(a, p);
        const auto rhs = enumerate_basis(a, q);
        for (const auto& e1 : lhs)
            for (const auto& e2 : rhs) {
                auto v = coordinates(der_bracket(Derivation::basis(a, e1), Derivation::basis(a, e2)), k);
                if (!v.is_zero())
                    brackets.push_back(std::move(v));
            }
    };
    if (k == 2) {
        add_family(1, 1);
    } else {
        add_family(k - 1, 1);
        add_family(k - 2, 2);
    }
    rep.dim_bracket_span = span_dimension(brackets);

    std::vector<SparseVector> all = brackets;
    if (k == 2) {
        std::vector<SparseVector> section;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                section.push_back(coordinates(msz_section(a, i, j), 2));
        rep.dim_complement = span_dimension(section);
        all.insert(all.end(), section.begin(), section.end());
    }
    rep.dim_sum = span_dimension(all);
    rep.fills = rep.dim_sum == rep.dim_target;
    rep.direct_sum_ok = rep.fills && rep.dim_sum == rep.dim_bracket_span + rep.dim_complement;
    return rep;
}

} // namespace ncdiv

#endif // NCDIV_DERIVATION_ALGEBRA_HPP
