// Cyclic words |T(A_n)| = T/[T,T] and the tensor square |T| (x) |T|.

#ifndef NCDIV_CYCLIC_WORDS_HPP
#define NCDIV_CYCLIC_WORDS_HPP

#include "ncdiv/tensor_algebra.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace ncdiv {

/// Offset of a lexicographically least rotation (Booth's algorithm).
inline std::size_t least_rotation(const Word& w)
{
    const std::size_t n = w.size();
    if (n == 0)
        return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return w[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1))
                k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (i == -1 && sj != at(k)) {
            if (sj < at(k))
                k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

inline Word rotate(const Word& w, std::size_t r)
{
    if (w.empty())
        return w;
    r %= w.size();
    std::vector<Letter> out;
    out.reserve(w.size());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    return Word(std::move(out));
}

inline Word canonical_rotation(const Word& w) { return rotate(w, least_rotation(w)); }

/// A rotation class of words, stored by its least rotation.
class Necklace {
public:
    Necklace() = default;
    explicit Necklace(const Word& w) : rep_(canonical_rotation(w)) {}
    Necklace(std::initializer_list<int> letters) : Necklace(Word(letters)) {}

    const Word& representative() const { return rep_; }
    std::size_t size() const { return rep_.size(); }
    int degree() const { return rep_.degree(); }
    bool empty() const { return rep_.empty(); }

    friend bool operator==(const Necklace&, const Necklace&) = default;
    friend std::strong_ordering operator<=>(const Necklace& a, const Necklace& b) { return a.rep_ <=> b.rep_; }

private:
    Word rep_;
};

using NecklacePair = std::pair<Necklace, Necklace>;

inline std::string to_string(const Necklace& c) { return "|" + to_string(c.representative()) + "|"; }
inline std::string to_string(const NecklacePair& p) { return to_string(p.first) + "*" + to_string(p.second); }

inline Necklace parse_necklace(std::string_view text)
{
    if (text.size() < 2 || text.front() != '|' || text.back() != '|')
        throw std::invalid_argument("malformed necklace '" + std::string(text) + "'");
    return Necklace(parse_word(text.substr(1, text.size() - 2)));
}

inline NecklacePair parse_necklace_pair(std::string_view text)
{
    auto star = text.find("|*|");
    if (star == std::string_view::npos)
        throw std::invalid_argument("malformed necklace pair '" + std::string(text) + "'");
    return {parse_necklace(text.substr(0, star + 1)), parse_necklace(text.substr(star + 2))};
}

/// Element of |T(A_n)|.
class CyclicPoly : public LinearCombination<CyclicPoly, Necklace> {
public:
    explicit CyclicPoly(Alphabet a) : LinearCombination(a) {}
    static CyclicPoly of(Alphabet a, const Word& w, const Rational& c = Rational(1))
    {
        check_word(a, w);
        return CyclicPoly(a).add_term(Necklace(w), c);
    }
};

/// Element of |T(A_n)| (x) |T(A_n)|.
class BiCyclicPoly : public LinearCombination<BiCyclicPoly, NecklacePair> {
public:
    explicit BiCyclicPoly(Alphabet a) : LinearCombination(a) {}
    static BiCyclicPoly of(Alphabet a, const Word& left, const Word& right, const Rational& c = Rational(1))
    {
        check_word(a, left);
        check_word(a, right);
        return BiCyclicPoly(a).add_term({Necklace(left), Necklace(right)}, c);
    }

    /// Terms whose pair degree (sum of lengths) equals k.
    BiCyclicPoly homogeneous_part(int k) const
    {
        BiCyclicPoly out(alphabet());
        for (const auto& [p, c] : terms())
            if (p.first.degree() + p.second.degree() == k)
                out.add_term(p, c);
        return out;
    }
};

inline std::string to_string(const CyclicPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& [k, c] : p.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + to_string(k);
    }
    return s;
}

inline std::string to_string(const BiCyclicPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& [k, c] : p.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + to_string(k);
    }
    return s;
}

/// The canonical projection T -> |T|.
inline CyclicPoly project(const NcPoly& p)
{
    CyclicPoly out(p.alphabet());
    for (const auto& [w, c] : p.terms())
        out.add_term(Necklace(w), c);
    return out;
}

/// pi (x) pi : T (x) T -> |T| (x) |T|.
inline BiCyclicPoly project(const PairPoly& p)
{
    BiCyclicPoly out(p.alphabet());
    for (const auto& [uv, c] : p.terms())
        out.add_term({Necklace(uv.first), Necklace(uv.second)}, c);
    return out;
}

/// The switch sigma, exchanging the two tensor factors.
inline BiCyclicPoly switch_factors(const BiCyclicPoly& b)
{
    BiCyclicPoly out(b.alphabet());
    for (const auto& [p, c] : b.terms())
        out.add_term({p.second, p.first}, c);
    return out;
}

/// Necklaces of length k over n letters, in canonical (shortlex) order.
inline std::vector<Necklace> enumerate_necklaces(int n, int k)
{
    std::vector<Necklace> out;
    for (const auto& w : enumerate_words(n, k))
        if (canonical_rotation(w) == w)
            out.emplace_back(w);
    return out;
}

/// Basis of the total-degree-k part of |T| (x) |T|, ordered by left degree.
inline std::vector<NecklacePair> enumerate_necklace_pairs(int n, int k)
{
    std::vector<NecklacePair> out;
    for (int a = 0; a <= k; ++a) {
        auto left = enumerate_necklaces(n, a);
        auto right = enumerate_necklaces(n, k - a);
        for (const auto& l : left)
            for (const auto& r : right)
                out.emplace_back(l, r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ncdiv

#endif // NCDIV_CYCLIC_WORDS_HPP
