// Free Lie algebra on H = <x_1..x_n, y_1..y_n> in the Lyndon basis,
// symplectic derivations, the wedge-cube injection, the contraction maps and
// the Enomoto-Satoh trace, and a direct solve for degree-zero 1-cocycles
// Der_Sp -> |T(H)|.

#ifndef NCDIV_SYMPLECTIC_LIE_HPP
#define NCDIV_SYMPLECTIC_LIE_HPP

#include "ncdiv/cocycle_solver.hpp"

#include <array>

namespace ncdiv {

/// Generators x_i = i and y_i = n + i with omega(x_i, y_j) = delta_ij,
/// omega(y_i, x_j) = -delta_ij and all other pairings zero.
class SymplecticContext {
public:
    explicit SymplecticContext(int n) : n_(n)
    {
        if (n < 1 || 2 * n > 255)
            throw std::invalid_argument("symplectic rank must be in 1..127");
    }

    int n() const { return n_; }
    Alphabet alphabet() const { return Alphabet{2 * n_}; }
    int x(int i) const { return i; }
    int y(int i) const { return n_ + i; }
    bool is_x(int g) const { return g <= n_; }
    int index(int g) const { return is_x(g) ? g : g - n_; }

    int omega(int a, int b) const
    {
        if (is_x(a) && !is_x(b) && index(a) == index(b))
            return 1;
        if (!is_x(a) && is_x(b) && index(a) == index(b))
            return -1;
        return 0;
    }

    std::string name(int g) const { return (is_x(g) ? "x" : "y") + std::to_string(index(g)); }

    int parse_generator(std::string_view s) const
    {
        if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y'))
            throw std::invalid_argument("malformed generator '" + std::string(s) + "'");
        int i = 0;
        for (char c : s.substr(1)) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("malformed generator '" + std::string(s) + "'");
            i = i * 10 + (c - '0');
        }
        if (i < 1 || i > n_)
            throw std::out_of_range("generator '" + std::string(s) + "' outside rank " + std::to_string(n_));
        return s[0] == 'x' ? x(i) : y(i);
    }

    /// Torus weight: x_i -> +e_i, y_i -> -e_i.
    void add_weight(std::vector<int>& wt, int g, int sign = 1) const
    {
        wt[static_cast<std::size_t>(index(g))] += is_x(g) ? sign : -sign;
    }

    /// sum_j [x_j, y_j] in T(H).
    NcPoly symplectic_element() const
    {
        NcPoly p(alphabet());
        for (int j = 1; j <= n_; ++j) {
            p.add_term(Word{x(j), y(j)}, Rational(1));
            p.add_term(Word{y(j), x(j)}, Rational(-1));
        }
        return p;
    }

private:
    int n_;
};

inline std::vector<int> word_weight(const SymplecticContext& ctx, const Word& w)
{
    std::vector<int> wt(static_cast<std::size_t>(ctx.n()) + 1, 0);
    for (Letter l : w)
        ctx.add_weight(wt, l);
    return wt;
}

inline bool is_lyndon(const Word& w)
{
    if (w.empty())
        return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        // w must be strictly smaller than its suffix starting at i
        const auto& a = w.letters();
        if (!std::lexicographical_compare(a.begin(), a.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end()))
            return false;
    }
    return true;
}

/// Lyndon words of length k over m letters in lexicographic order (Duval).
inline std::vector<Word> lyndon_words(int m, int k)
{
    std::vector<Word> out;
    if (k < 1)
        return out;
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        const std::size_t len = w.size();
        if (static_cast<int>(len) == k) {
            std::vector<Letter> letters;
            for (int l : w)
                letters.push_back(static_cast<Letter>(l + 1));
            out.emplace_back(std::move(letters));
        }
        while (static_cast<int>(w.size()) < k)
            w.push_back(w[w.size() - len]);
        while (!w.empty() && w.back() == m - 1)
            w.pop_back();
    }
    return out;
}

/// w = u v with v the longest proper Lyndon suffix.
inline std::pair<Word, Word> standard_factorization(const Word& w)
{
    if (w.size() < 2)
        throw std::invalid_argument("standard factorization needs length >= 2");
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word v = w.slice(i, w.size());
        if (is_lyndon(v))
            return {w.slice(0, i), v};
    }
    throw std::logic_error("unreachable: single letters are Lyndon");
}

/// Element of the free Lie algebra, keyed by Lyndon words; the key w stands
/// for its standard bracketing.
class LieElement : public LinearCombination<LieElement, Word> {
public:
    explicit LieElement(Alphabet a) : LinearCombination(a) {}
    static LieElement generator(Alphabet a, int g) { return LieElement(a).add_term(Word{g}, Rational(1)); }

    bool is_homogeneous_of_degree(int k) const
    {
        for (const auto& [w, c] : terms())
            if (w.degree() != k)
                return false;
        return true;
    }
};

inline std::string bracketing(const Word& w)
{
    if (w.size() == 1)
        return std::to_string(static_cast<int>(w[0]));
    auto [u, v] = standard_factorization(w);
    return "[" + bracketing(u) + "," + bracketing(v) + "]";
}

inline std::string to_string(const LieElement& x)
{
    if (x.is_zero())
        return "0";
    std::string s;
    for (const auto& [w, c] : x.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + bracketing(w);
    }
    return s;
}

/// Recursive expansion of a Lyndon basis element into T.
inline NcPoly lyndon_expansion(Alphabet a, const Word& w)
{
    if (w.size() == 1)
        return NcPoly::monomial(a, w);
    auto [u, v] = standard_factorization(w);
    return bracket(lyndon_expansion(a, u), lyndon_expansion(a, v));
}

/// The free Lie algebra with precomputed Lyndon expansions up to a degree.
class FreeLieAlgebra {
public:
    FreeLieAlgebra(Alphabet a, int max_degree) : alphabet_(a), max_degree_(max_degree)
    {
        by_degree_.resize(static_cast<std::size_t>(max_degree) + 1);
        for (int k = 1; k <= max_degree; ++k) {
            by_degree_[static_cast<std::size_t>(k)] = lyndon_words(a.n, k);
            for (const auto& w : by_degree_[static_cast<std::size_t>(k)]) {
                NcPoly e(a);
                if (k == 1) {
                    e = NcPoly::monomial(a, w);
                } else {
                    auto [u, v] = standard_factorization(w);
                    e = bracket(expansions_.at(u), expansions_.at(v));
                }
                expansions_.emplace(w, std::move(e));
            }
        }
    }

    Alphabet alphabet() const { return alphabet_; }
    int max_degree() const { return max_degree_; }

    const std::vector<Word>& basis(int k) const
    {
        check_degree(k);
        return by_degree_[static_cast<std::size_t>(k)];
    }
    std::size_t dimension(int k) const { return basis(k).size(); }

    const NcPoly& expansion(const Word& w) const
    {
        auto it = expansions_.find(w);
        if (it == expansions_.end())
            throw std::invalid_argument("not a Lyndon word within the precomputed range: " + to_string(w));
        return it->second;
    }

    NcPoly embed(const LieElement& x) const
    {
        NcPoly out(alphabet_);
        for (const auto& [w, c] : x.terms())
            out.add_scaled(c, expansion(w));
        return out;
    }

    /// Lyndon coordinates of a Lie polynomial given in T. The smallest word
    /// in the support of a Lie polynomial is Lyndon and leads its basis
    /// element with coefficient 1, so it can be peeled off repeatedly.
    LieElement to_lie(const NcPoly& p) const
    {
        LieElement out(alphabet_);
        NcPoly rest = p;
        while (!rest.is_zero()) {
            const auto& [w, c] = *rest.terms().begin();
            if (!is_lyndon(w) || w.degree() > max_degree_)
                throw std::invalid_argument("polynomial is not a Lie element: leading word " + to_string(w));
            const Word lead = w;
            const Rational coeff = c;
            out.add_term(lead, coeff);
            rest.add_scaled(-coeff, expansion(lead));
        }
        return out;
    }

    LieElement bracket_of(const LieElement& x, const LieElement& y) const
    {
        return to_lie(ncdiv::bracket(embed(x), embed(y)));
    }

private:
    void check_degree(int k) const
    {
        if (k < 1 || k > max_degree_)
            throw std::out_of_range("Lie degree " + std::to_string(k) + " outside 1.." + std::to_string(max_degree_));
    }

    Alphabet alphabet_;
    int max_degree_;
    std::vector<std::vector<Word>> by_degree_;
    std::map<Word, NcPoly> expansions_;
};

inline LieElement lie_bracket(const FreeLieAlgebra& L, const LieElement& x, const LieElement& y)
{
    return L.bracket_of(x, y);
}

inline NcPoly embed(const FreeLieAlgebra& L, const LieElement& x) { return L.embed(x); }

/// Element of H^* (x) L: keys (dual generator, Lyndon word). Degree k means
/// values in L(k + 1).
class LieDerivation : public LinearCombination<LieDerivation, DerBasisElem> {
public:
    explicit LieDerivation(Alphabet a) : LinearCombination(a) {}

    bool is_homogeneous_of_degree(int k) const
    {
        for (const auto& [e, c] : terms())
            if (e.degree() != k)
                return false;
        return true;
    }

    /// The same map viewed as a derivation of T(H).
    Derivation to_derivation(const FreeLieAlgebra& L) const
    {
        Derivation d(alphabet());
        for (const auto& [e, c] : terms())
            for (const auto& [w, b] : L.expansion(e.word).terms())
                d.add_term(DerBasisElem{e.dual, w}, c * b);
        return d;
    }

    /// Value on a generator as a Lie element.
    LieElement value_on(int g) const
    {
        LieElement out(alphabet());
        for (const auto& [e, c] : terms())
            if (e.dual == g)
                out.add_term(e.word, c);
        return out;
    }
};

/// "(c)x1*:1.2 + ..." where the word after the colon is the Lyndon key.
inline std::string to_string(const LieDerivation& d, const SymplecticContext& ctx)
{
    if (d.is_zero())
        return "0";
    std::string s;
    for (const auto& [e, c] : d.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + ctx.name(e.dual) + "*:" + to_string(e.word);
    }
    return s;
}

inline LieDerivation parse_lie_derivation(const SymplecticContext& ctx, std::string_view text)
{
    LieDerivation d(ctx.alphabet());
    if (text == "0")
        return d;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(" + ", pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view term = text.substr(pos, end - pos);
        const std::size_t close = term.find(')');
        const std::size_t colon = term.find("*:");
        if (term.empty() || term.front() != '(' || close == std::string_view::npos || colon == std::string_view::npos ||
            colon < close)
            throw std::invalid_argument("malformed Lie derivation term '" + std::string(term) + "'");
        const int dual = ctx.parse_generator(term.substr(close + 1, colon - close - 1));
        const Word w = parse_word(term.substr(colon + 2));
        check_word(ctx.alphabet(), w);
        if (!is_lyndon(w))
            throw std::invalid_argument("key '" + to_string(w) + "' is not a Lyndon word");
        d.add_term(DerBasisElem{static_cast<Letter>(dual), w}, parse_rational(term.substr(1, close - 1)));
        pos = end == text.size() ? end : end + 3;
    }
    return d;
}

/// Back from a T(H)-derivation whose generator values are Lie polynomials.
inline LieDerivation from_derivation(const FreeLieAlgebra& L, const Derivation& d)
{
    LieDerivation out(d.alphabet());
    const auto values = d.generator_values();
    for (int g = 1; g < static_cast<int>(values.size()); ++g) {
        const LieElement v = L.to_lie(values[static_cast<std::size_t>(g)]);
        for (const auto& [w, c] : v.terms())
            out.add_term(DerBasisElem{static_cast<Letter>(g), w}, c);
    }
    return out;
}

inline LieDerivation lie_der_bracket(const FreeLieAlgebra& L, const LieDerivation& a, const LieDerivation& b)
{
    return from_derivation(L, der_bracket(a.to_derivation(L), b.to_derivation(L)));
}

/// D(sum_j [x_j, y_j]) computed in T(H).
inline NcPoly symplectic_defect(const SymplecticContext& ctx, const FreeLieAlgebra& L, const LieDerivation& d)
{
    return apply(d.to_derivation(L), ctx.symplectic_element());
}

/// A derivation of the free Lie algebra that kills sum_j [x_j, y_j]; checked
/// on construction.
class SpDerivation {
public:
    SpDerivation(const SymplecticContext& ctx, const FreeLieAlgebra& L, LieDerivation d) : value_(std::move(d))
    {
        if (!symplectic_defect(ctx, L, value_).is_zero())
            throw std::invalid_argument("derivation does not preserve the symplectic element");
    }
    const LieDerivation& value() const { return value_; }

private:
    LieDerivation value_;
};

/// Element of the third exterior power, keyed by increasing triples.
class Wedge3 : public LinearCombination<Wedge3, std::array<Letter, 3>> {
public:
    explicit Wedge3(Alphabet a) : LinearCombination(a) {}

    /// Adds c * z1 ^ z2 ^ z3, normalizing order with the sign of the sort.
    Wedge3& add_wedge(int z1, int z2, int z3, const Rational& c)
    {
        std::array<int, 3> z{z1, z2, z3};
        for (int v : z)
            if (!alphabet().contains(v))
                throw std::out_of_range("wedge factor out of range");
        int sign = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j + 1 < 3 - i; ++j)
                if (z[static_cast<std::size_t>(j)] > z[static_cast<std::size_t>(j + 1)]) {
                    std::swap(z[static_cast<std::size_t>(j)], z[static_cast<std::size_t>(j + 1)]);
                    sign = -sign;
                }
        if (z[0] == z[1] || z[1] == z[2])
            return *this;
        return add_term({static_cast<Letter>(z[0]), static_cast<Letter>(z[1]), static_cast<Letter>(z[2])},
                        sign > 0 ? c : Rational(-c));
    }

    static Wedge3 of(Alphabet a, int z1, int z2, int z3) { return Wedge3(a).add_wedge(z1, z2, z3, Rational(1)); }
};

inline std::string to_string(const std::array<Letter, 3>& t, const SymplecticContext& ctx)
{
    return ctx.name(t[0]) + "^" + ctx.name(t[1]) + "^" + ctx.name(t[2]);
}

inline std::string to_string(const Wedge3& w, const SymplecticContext& ctx)
{
    if (w.is_zero())
        return "0";
    std::string s;
    for (const auto& [t, c] : w.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + to_string(t, ctx);
    }
    return s;
}

/// Parses "x1^y1^x2", or a combination "(c)x1^y1^x2 + (c')x1^x2^y2".
inline Wedge3 parse_wedge(const SymplecticContext& ctx, std::string_view text)
{
    Wedge3 out(ctx.alphabet());
    if (text == "0")
        return out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(" + ", pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view s = text.substr(pos, end - pos);
        Rational c(1);
        if (!s.empty() && s.front() == '(') {
            const std::size_t close = s.find(')');
            if (close == std::string_view::npos)
                throw std::invalid_argument("malformed wedge '" + std::string(s) + "'");
            c = parse_rational(s.substr(1, close - 1));
            s = s.substr(close + 1);
        }
        std::array<int, 3> z{};
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            const std::size_t hat = s.find('^', start);
            if ((i < 2) == (hat == std::string_view::npos))
                throw std::invalid_argument("malformed wedge '" + std::string(s) + "'");
            z[static_cast<std::size_t>(i)] = ctx.parse_generator(s.substr(start, hat - start));
            start = hat + 1;
        }
        out.add_wedge(z[0], z[1], z[2], c);
        pos = end == text.size() ? end : end + 3;
    }
    return out;
}

/// Basis of the exterior cube: all increasing triples.
inline std::vector<std::array<Letter, 3>> wedge3_basis(Alphabet a)
{
    std::vector<std::array<Letter, 3>> out;
    for (int i = 1; i <= a.n; ++i)
        for (int j = i + 1; j <= a.n; ++j)
            for (int k = j + 1; k <= a.n; ++k)
                out.push_back({static_cast<Letter>(i), static_cast<Letter>(j), static_cast<Letter>(k)});
    return out;
}

namespace detail {
// [a, b] of generators in Lyndon coordinates.
inline LieElement generator_bracket(Alphabet al, int a, int b)
{
    LieElement out(al);
    if (a < b)
        out.add_term(Word{a, b}, Rational(1));
    else if (b < a)
        out.add_term(Word{b, a}, Rational(-1));
    return out;
}
} // namespace detail

/// phi(z1^z2^z3) = sum_g g^* (x) (omega(g,z1)[z2,z3] + omega(g,z2)[z3,z1] + omega(g,z3)[z1,z2]).
inline LieDerivation phi_inject_unchecked(const SymplecticContext& ctx, const Wedge3& w)
{
    const Alphabet al = ctx.alphabet();
    LieDerivation out(al);
    for (const auto& [t, c] : w.terms()) {
        const int z1 = t[0], z2 = t[1], z3 = t[2];
        for (int g = 1; g <= al.n; ++g) {
            LieElement v(al);
            v.add_scaled(Rational(ctx.omega(g, z1)), detail::generator_bracket(al, z2, z3));
            v.add_scaled(Rational(ctx.omega(g, z2)), detail::generator_bracket(al, z3, z1));
            v.add_scaled(Rational(ctx.omega(g, z3)), detail::generator_bracket(al, z1, z2));
            for (const auto& [lw, b] : v.terms())
                out.add_term(DerBasisElem{static_cast<Letter>(g), lw}, c * b);
        }
    }
    return out;
}

inline SpDerivation phi_inject(const SymplecticContext& ctx, const FreeLieAlgebra& L, const Wedge3& w)
{
    return SpDerivation(ctx, L, phi_inject_unchecked(ctx, w));
}

/// phi_bar_3(z1^z2^z3) = omega(z1,z2) z3 - omega(z1,z3) z2 + omega(z2,z3) z1, as a degree-1 polynomial.
inline NcPoly phi_bar_3(const SymplecticContext& ctx, const Wedge3& w)
{
    NcPoly out(ctx.alphabet());
    for (const auto& [t, c] : w.terms()) {
        const int z1 = t[0], z2 = t[1], z3 = t[2];
        out.add_term(Word{z3}, c * ctx.omega(z1, z2));
        out.add_term(Word{z2}, -c * ctx.omega(z1, z3));
        out.add_term(Word{z1}, c * ctx.omega(z2, z3));
    }
    return out;
}

/// phi_k: embed the Lie value and contract the dual against its first letter.
inline NcPoly contraction_phi_k(const FreeLieAlgebra& L, const LieDerivation& d, int k)
{
    if (!d.is_homogeneous_of_degree(k))
        throw std::invalid_argument("contraction_phi_k: derivation is not homogeneous of degree " + std::to_string(k));
    NcPoly out(d.alphabet());
    for (const auto& [e, c] : d.terms())
        for (const auto& [w, b] : L.expansion(e.word).terms())
            if (w[0] == e.dual)
                out.add_term(w.slice(1, w.size()), c * b);
    return out;
}

/// Tr_ES = p o phi_k, applied degreewise.
inline CyclicPoly es_trace(const FreeLieAlgebra& L, const LieDerivation& d)
{
    CyclicPoly out(d.alphabet());
    for (const auto& [e, c] : d.terms())
        for (const auto& [w, b] : L.expansion(e.word).terms())
            if (w[0] == e.dual)
                out.add_term(Necklace(w.slice(1, w.size())), c * b);
    return out;
}

/// Single-factor Leibniz action of a Lie derivation on |T(H)|.
inline CyclicPoly act_on_cyclic(const FreeLieAlgebra& L, const LieDerivation& d, const CyclicPoly& p)
{
    return act_on_cyclic(d.to_derivation(L), p);
}

/// Coordinates for Der_Sp(k): the kernel of the symplectic condition inside
/// H^* (x) L(k + 1), in reduced row echelon form over the columns
/// (dual generator, Lyndon word).
class SpDerivationBasis {
public:
    SpDerivationBasis(const SymplecticContext& ctx, const FreeLieAlgebra& L, int k) : k_(k), alphabet_(ctx.alphabet())
    {
        const auto& words = L.basis(k + 1);
        for (int g = 1; g <= alphabet_.n; ++g)
            for (const auto& w : words)
                columns_.push_back(DerBasisElem{static_cast<Letter>(g), w});
        for (std::size_t i = 0; i < columns_.size(); ++i)
            column_index_.emplace(columns_[i], i);

        // one row per word of degree k + 2 in the image of the condition
        std::map<Word, std::map<std::size_t, Rational>> rows;
        const NcPoly omega = ctx.symplectic_element();
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            LieDerivation single(alphabet_);
            single.add_term(columns_[i], Rational(1));
            const NcPoly image = apply(single.to_derivation(L), omega);
            for (const auto& [w, c] : image.terms())
                rows[w][i] = c;
        }
        SparseMatrix m(0, columns_.size());
        for (const auto& [w, r] : rows)
            m.append_row(SparseVector(columns_.size(), r));
        basis_ = kernel_basis(m);
        for (const auto& b : basis_) {
            leading_.push_back(b.leading_index());
            LieDerivation d(alphabet_);
            for (const auto& [i, c] : b.entries())
                d.add_term(columns_[i], c);
            elements_.push_back(std::move(d));
            weights_.push_back(weight_of(ctx, elements_.back()));
        }
    }

    int degree() const { return k_; }
    std::size_t dimension() const { return basis_.size(); }
    const LieDerivation& element(std::size_t i) const { return elements_.at(i); }
    const std::vector<int>& weight(std::size_t i) const { return weights_.at(i); }

    /// Coordinates of an element of Der_Sp(k): its values at the leading
    /// columns. Verified by reconstruction.
    std::vector<Rational> coordinates(const LieDerivation& d) const
    {
        std::vector<Rational> coords(basis_.size());
        SparseVector v(columns_.size());
        for (const auto& [e, c] : d.terms()) {
            auto it = column_index_.find(e);
            if (it == column_index_.end())
                throw std::invalid_argument("derivation has a component outside degree " + std::to_string(k_));
            v.set(it->second, c);
        }
        SparseVector rebuilt(columns_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            coords[i] = v.get(leading_[i]);
            rebuilt.axpy(coords[i], basis_[i]);
        }
        if (!(rebuilt == v))
            throw std::invalid_argument("derivation is not symplectic");
        return coords;
    }

    static std::vector<int> weight_of(const SymplecticContext& ctx, const LieDerivation& d)
    {
        std::vector<int> wt(static_cast<std::size_t>(ctx.n()) + 1, 0);
        if (d.is_zero())
            return wt;
        const auto& e = d.terms().begin()->first;
        wt = word_weight(ctx, e.word);
        ctx.add_weight(wt, e.dual, -1);
        return wt;
    }

private:
    int k_;
    Alphabet alphabet_;
    std::vector<DerBasisElem> columns_;
    std::map<DerBasisElem, std::size_t> column_index_;
    std::vector<SparseVector> basis_;
    std::vector<std::size_t> leading_;
    std::vector<LieDerivation> elements_;
    std::vector<std::vector<int>> weights_;
};

/// Dimension of Hom_Sp(wedge^3 H, H): linear maps M with M(X.w) = X.M(w)
/// for every X in a basis of sp(2n). Also reports whether phi_bar_3 is one.
struct IntertwinerReport {
    std::size_t dimension = 0;
    bool contains_phi_bar_3 = false;
};

inline IntertwinerReport sp_intertwiners_wedge3_to_h(const SymplecticContext& ctx, const SpDerivationBasis& sp)
{
    const Alphabet al = ctx.alphabet();
    const int m = al.n;
    const auto triples = wedge3_basis(al);
    std::map<std::array<Letter, 3>, std::size_t> tindex;
    for (std::size_t i = 0; i < triples.size(); ++i)
        tindex.emplace(triples[i], i);
    const std::size_t cols = triples.size() * static_cast<std::size_t>(m); // M[t][g] at t*m + (g-1)
    auto col = [&](std::size_t t, int g) { return t * static_cast<std::size_t>(m) + static_cast<std::size_t>(g - 1); };

    SparseMatrix sys(0, cols);
    for (std::size_t s = 0; s < sp.dimension(); ++s) {
        // X as a matrix: X(g) = sum_h X[g][h] h
        const LieDerivation& X = sp.element(s);
        std::vector<std::map<int, Rational>> act(static_cast<std::size_t>(m) + 1);
        for (const auto& [e, c] : X.terms())
            act[e.dual][e.word[0]] += c;
        for (std::size_t t = 0; t < triples.size(); ++t) {
            // X.w for w = triples[t], by Leibniz on the three factors
            Wedge3 xw(al);
            for (int f = 0; f < 3; ++f)
                for (const auto& [h, c] : act[triples[t][static_cast<std::size_t>(f)]]) {
                    std::array<int, 3> z{triples[t][0], triples[t][1], triples[t][2]};
                    z[static_cast<std::size_t>(f)] = h;
                    xw.add_wedge(z[0], z[1], z[2], c);
                }
            // row for each output generator g': sum_u xw[u] M[u][g'] - sum_g M[t][g] X[g][g'] = 0
            for (int gp = 1; gp <= m; ++gp) {
                std::map<std::size_t, Rational> row;
                for (const auto& [u, c] : xw.terms())
                    row[col(tindex.at(u), gp)] += c;
                for (int g = 1; g <= m; ++g) {
                    auto it = act[g].find(gp);
                    if (it != act[g].end())
                        row[col(t, g)] -= it->second;
                }
                SparseVector v(cols, row);
                if (!v.is_zero())
                    sys.append_row(std::move(v));
            }
        }
    }
    IntertwinerReport rep;
    auto kernel = kernel_basis(sys);
    rep.dimension = kernel.size();
    SparseVector pb(cols);
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const NcPoly v = phi_bar_3(ctx, Wedge3::of(al, triples[t][0], triples[t][1], triples[t][2]));
        for (const auto& [w, c] : v.terms())
            pb.set(col(t, w[0]), c);
    }
    auto with = kernel;
    with.push_back(pb);
    rep.contains_phi_bar_3 = !pb.is_zero() && span_dimension(with) == kernel.size();
    return rep;
}

struct EsUniquenessReport {
    int n = 0;
    int max_degree = 0;
    std::vector<std::size_t> der_sp_dimensions; ///< Der_Sp(0..max_degree)
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t pairs_used = 0;
    std::size_t dimension = 0;
    std::size_t dimension_above_degree_one = 0; ///< rank of the solutions restricted to degrees >= 2
    bool contains_trace = false;
    bool trace_nonzero = false;
    bool excess_flagged = false; ///< dimension > 1
    std::vector<std::pair<int, std::size_t>> dimension_by_cutoff;
    std::vector<std::pair<std::string, std::string>> residual_checks;
    std::vector<SparseVector> basis;
    std::vector<std::string> param_names;
};

/// Degree-zero cocycles Der_Sp -> |T(H)| up to max_degree, by direct kernel
/// computation over unknowns c(b) = sum_tau u_{b,tau} tau (b a basis element
/// of Der_Sp(d), tau a necklace of length d of equal torus weight).
class EsUniquenessSolver {
public:
    EsUniquenessSolver(int n, int max_degree)
        : ctx_(n), lie_(ctx_.alphabet(), max_degree + 2), max_degree_(max_degree)
    {
        if (n < 2)
            throw std::invalid_argument("the uniqueness solve needs n >= 2");
        if (max_degree < 1)
            throw std::invalid_argument("max_degree must be >= 1");
        for (int d = 0; d <= max_degree; ++d)
            bases_.emplace_back(ctx_, lie_, d);
        for (int d = 0; d <= max_degree; ++d) {
            const auto necklaces = enumerate_necklaces(ctx_.alphabet().n, d);
            std::map<std::vector<int>, std::vector<Necklace>> by_weight;
            for (const auto& nk : necklaces)
                by_weight[word_weight(ctx_, nk.representative())].push_back(nk);
            auto& slots = slots_.emplace_back();
            for (std::size_t b = 0; b < bases_[static_cast<std::size_t>(d)].dimension(); ++b) {
                auto& s = slots.emplace_back();
                auto it = by_weight.find(bases_[static_cast<std::size_t>(d)].weight(b));
                if (it == by_weight.end())
                    continue;
                for (const auto& nk : it->second) {
                    s.emplace_back(nk, names_.size());
                    names_.push_back("D" + std::to_string(d) + "." + std::to_string(b) + "->" + to_string(nk));
                    degree_of_.push_back(d);
                }
            }
        }
    }

    const SymplecticContext& context() const { return ctx_; }
    const FreeLieAlgebra& lie() const { return lie_; }
    const SpDerivationBasis& basis(int d) const { return bases_.at(static_cast<std::size_t>(d)); }
    std::size_t num_params() const { return names_.size(); }

    /// Unknown vector of a cochain given by its values on basis elements.
    SparseVector params_of(const std::function<CyclicPoly(const LieDerivation&)>& c) const
    {
        SparseVector v(names_.size());
        for (int d = 0; d <= max_degree_; ++d)
            for (std::size_t b = 0; b < basis(d).dimension(); ++b) {
                const CyclicPoly value = c(basis(d).element(b));
                for (const auto& [nk, x] : value.terms()) {
                    auto idx = slot(d, b, nk);
                    if (!idx)
                        throw std::invalid_argument("cochain value outside the weight-matched unknowns");
                    v.set(*idx, x);
                }
            }
        return v;
    }

    std::optional<std::size_t> slot(int d, std::size_t b, const Necklace& nk) const
    {
        for (const auto& [k, i] : slots_.at(static_cast<std::size_t>(d)).at(b))
            if (k == nk)
                return i;
        return std::nullopt;
    }

    /// c(x) for the member of the family with the given unknowns.
    CyclicPoly evaluate(const LieDerivation& x, int d, const SparseVector& params) const
    {
        CyclicPoly out(ctx_.alphabet());
        if (d < 0 || d > max_degree_ || x.is_zero())
            return out;
        const auto coords = basis(d).coordinates(x);
        for (std::size_t b = 0; b < coords.size(); ++b) {
            if (is_zero(coords[b]))
                continue;
            for (const auto& [nk, i] : slots_[static_cast<std::size_t>(d)][b])
                out.add_term(nk, coords[b] * params.get(i));
        }
        return out;
    }

    /// Rows of the cocycle condition on basis pairs (b1, b2) of degrees
    /// (p, q) with p <= q and p + q <= cutoff.
    std::vector<SparseVector> constraint_rows(int cutoff, std::size_t* pairs = nullptr) const
    {
        std::set<detail::RowKey> seen;
        std::vector<SparseVector> rows;
        std::size_t count = 0;
        for (int p = 0; p <= cutoff; ++p)
            for (int q = p; p + q <= cutoff; ++q)
                for (std::size_t i = 0; i < basis(p).dimension(); ++i)
                    for (std::size_t j = (p == q ? i + 1 : 0); j < basis(q).dimension(); ++j) {
                        ++count;
                        for (auto& r : pair_rows(p, i, q, j))
                            if (seen.insert(r).second)
                                rows.emplace_back(names_.size(), std::map<std::size_t, Rational>(r.begin(), r.end()));
                    }
        if (pairs)
            *pairs = count;
        return rows;
    }

    /// Unknowns whose degree is at most the cutoff.
    std::vector<std::size_t> params_up_to(int cutoff) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < degree_of_.size(); ++i)
            if (degree_of_[i] <= cutoff)
                out.push_back(i);
        return out;
    }

    EsUniquenessReport solve(std::uint64_t seed = 1, int fresh_pairs = 50) const
    {
        EsUniquenessReport rep;
        rep.n = ctx_.n();
        rep.max_degree = max_degree_;
        rep.param_names = names_;
        for (const auto& b : bases_)
            rep.der_sp_dimensions.push_back(b.dimension());
        rep.unknowns = names_.size();

        for (int cutoff = 1; cutoff <= max_degree_; ++cutoff) {
            std::size_t pairs = 0;
            auto rows = constraint_rows(cutoff, &pairs);
            // restrict to unknowns of degree <= cutoff
            const auto keep = params_up_to(cutoff);
            std::vector<std::size_t> remap(names_.size(), SIZE_MAX);
            for (std::size_t i = 0; i < keep.size(); ++i)
                remap[keep[i]] = i;
            SparseMatrix m(0, keep.size());
            for (const auto& r : rows) {
                std::map<std::size_t, Rational> e;
                for (const auto& [i, v] : r.entries())
                    e.emplace(remap[i], v);
                m.append_row(SparseVector(keep.size(), e));
            }
            auto kernel = kernel_basis(m);
            rep.dimension_by_cutoff.emplace_back(cutoff, kernel.size());
            if (cutoff == max_degree_) {
                rep.equations = rows.size();
                rep.pairs_used = pairs;
                rep.basis = kernel; // cutoff == max_degree keeps every unknown
                rep.dimension = kernel.size();
                std::vector<SparseVector> high;
                for (const auto& k : kernel) {
                    SparseVector h(names_.size());
                    for (const auto& [i, v] : k.entries())
                        if (degree_of_[i] >= 2)
                            h.set(i, v);
                    high.push_back(std::move(h));
                }
                rep.dimension_above_degree_one = span_dimension(high);
            }
        }
        rep.excess_flagged = rep.dimension > 1;

        const SparseVector tr = params_of([this](const LieDerivation& x) { return es_trace(lie_, x); });
        rep.trace_nonzero = !tr.is_zero();
        auto with = rep.basis;
        with.push_back(tr);
        rep.contains_trace = span_dimension(with) == rep.basis.size();

        verify(rep, seed, fresh_pairs);
        return rep;
    }

    /// A random element of Der_Sp(d) with small integer coordinates.
    LieDerivation random_element(Rng& rng, int d) const
    {
        LieDerivation x(ctx_.alphabet());
        const auto& B = basis(d);
        if (B.dimension() == 0)
            return x;
        const long terms = rng.uniform(1, 3);
        for (long t = 0; t < terms; ++t)
            x.add_scaled(rng.coefficient(), B.element(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(B.dimension()) - 1))));
        return x;
    }

    /// Cocycle identity for the member with the given unknowns on (x, y) of
    /// degrees (p, q).
    CyclicPoly coboundary(const SparseVector& params, const LieDerivation& x, int p, const LieDerivation& y,
                          int q) const
    {
        CyclicPoly out = act_on_cyclic(lie_, x, evaluate(y, q, params));
        out -= act_on_cyclic(lie_, y, evaluate(x, p, params));
        out -= evaluate(lie_der_bracket(lie_, x, y), p + q, params);
        return out;
    }

private:
    std::vector<detail::RowKey> pair_rows(int p, std::size_t i, int q, std::size_t j) const
    {
        const LieDerivation& x = basis(p).element(i);
        const LieDerivation& y = basis(q).element(j);
        std::map<Necklace, std::map<std::size_t, Rational>> expr;
        auto act_sym = [&](const LieDerivation& d, int deg, std::size_t b, const Rational& sign) {
            const auto values = d.to_derivation(lie_).generator_values();
            for (const auto& [nk, u] : slots_[static_cast<std::size_t>(deg)][b])
                TargetTraits<CyclicPoly>::act_on_key(values, nk, [&](const Necklace& k2, const Rational& v) {
                    expr[k2][u] += sign * v;
                });
        };
        act_sym(x, q, j, Rational(1));
        act_sym(y, p, i, Rational(-1));
        const auto br = lie_der_bracket(lie_, x, y);
        if (!br.is_zero()) {
            const auto coords = basis(p + q).coordinates(br);
            for (std::size_t b = 0; b < coords.size(); ++b)
                if (!is_zero(coords[b]))
                    for (const auto& [nk, u] : slots_[static_cast<std::size_t>(p + q)][b])
                        expr[nk][u] -= coords[b];
        }
        std::vector<detail::RowKey> out;
        for (const auto& [nk, coeffs] : expr)
            if (auto r = detail::normalized_row(coeffs))
                out.push_back(std::move(*r));
        return out;
    }

    void verify(EsUniquenessReport& rep, std::uint64_t seed, int count) const
    {
        Rng rng(seed);
        for (int t = 0; t < count; ++t) {
            int p, q;
            do {
                p = static_cast<int>(rng.uniform(0, max_degree_));
                q = static_cast<int>(rng.uniform(0, max_degree_));
            } while (p + q > max_degree_);
            const auto x = random_element(rng, p), y = random_element(rng, q);
            for (std::size_t b = 0; b < rep.basis.size(); ++b) {
                auto r = coboundary(rep.basis[b], x, p, y, q);
                if (!r.is_zero())
                    throw VerificationFailure("Der_Sp cocycle basis vector " + std::to_string(b) +
                                              " fails on x = " + to_string(x, ctx_) + ", y = " + to_string(y, ctx_));
            }
            rep.residual_checks.emplace_back(to_string(x, ctx_), to_string(y, ctx_));
        }
    }

    SymplecticContext ctx_;
    FreeLieAlgebra lie_;
    int max_degree_;
    std::vector<SpDerivationBasis> bases_;
    // slots_[d][b] = unknowns (necklace, index) for basis element b of degree d
    std::vector<std::vector<std::vector<std::pair<Necklace, std::size_t>>>> slots_;
    std::vector<std::string> names_;
    std::vector<int> degree_of_;
};

inline EsUniquenessReport es_uniqueness_solve(int n, int max_degree, std::uint64_t seed = 1)
{
    return EsUniquenessSolver(n, max_degree).solve(seed);
}

} // namespace ncdiv

#endif // NCDIV_SYMPLECTIC_LIE_HPP
