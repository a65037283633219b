// The free associative algebra T(A_n): words, non-commutative polynomials,
// the commutator bracket and the double-derivation partials.

#ifndef NCDIV_TENSOR_ALGEBRA_HPP
#define NCDIV_TENSOR_ALGEBRA_HPP

#include "ncdiv/linear_combination.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncdiv {

using Letter = std::uint8_t;

/// A finite sequence of generator indices. The empty word is the unit.
/// Ordered by length first, then lexicographically.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    Word(std::initializer_list<int> letters)
    {
        letters_.reserve(letters.size());
        for (int l : letters)
            letters_.push_back(static_cast<Letter>(l));
    }

    static Word letter(int l) { return Word{l}; }

    std::size_t size() const { return letters_.size(); }
    int degree() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const { return letters_; }

    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    /// letters [from, to)
    Word slice(std::size_t from, std::size_t to) const
    {
        return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                                        letters_.begin() + static_cast<std::ptrdiff_t>(to)));
    }

    Word& operator*=(const Word& other)
    {
        letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
        return *this;
    }
    friend Word operator*(Word a, const Word& b) { return a *= b; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b)
    {
        if (a.size() != b.size())
            return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

/// Word with the letter at position `pos` replaced by `replacement`.
inline Word substitute(const Word& w, std::size_t pos, const Word& replacement)
{
    std::vector<Letter> out;
    out.reserve(w.size() + replacement.size());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end());
    return Word(std::move(out));
}

inline std::string to_string(const Word& w)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += '.';
        s += std::to_string(static_cast<int>(w[i]));
    }
    return s;
}

/// Inverse of to_string(Word): "1.2.1" or "e".
inline Word parse_word(std::string_view text)
{
    if (text == "e")
        return Word{};
    std::vector<Letter> letters;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t dot = text.find('.', start);
        std::string_view part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (part.empty())
            throw std::invalid_argument("malformed word '" + std::string(text) + "'");
        int v = 0;
        for (char ch : part) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("malformed word '" + std::string(text) + "'");
            v = v * 10 + (ch - '0');
            if (v > 255)
                throw std::invalid_argument("letter out of range in '" + std::string(text) + "'");
        }
        if (v == 0)
            throw std::invalid_argument("letters are 1-based in '" + std::string(text) + "'");
        letters.push_back(static_cast<Letter>(v));
        if (dot == std::string_view::npos)
            break;
        start = dot + 1;
    }
    return Word(std::move(letters));
}

inline void check_word(Alphabet a, const Word& w)
{
    for (Letter l : w)
        if (!a.contains(l))
            throw std::out_of_range("letter " + std::to_string(static_cast<int>(l)) + " outside alphabet of size " +
                                    std::to_string(a.n));
}

/// Element of T(A_n).
class NcPoly : public LinearCombination<NcPoly, Word> {
public:
    explicit NcPoly(Alphabet a) : LinearCombination(a) {}

    static NcPoly unit(Alphabet a) { return NcPoly(a).add_term(Word{}, Rational(1)); }
    static NcPoly generator(Alphabet a, int i) { return monomial(a, Word::letter(i)); }
    static NcPoly monomial(Alphabet a, const Word& w, const Rational& c = Rational(1))
    {
        check_word(a, w);
        return NcPoly(a).add_term(w, c);
    }

    NcPoly homogeneous_part(int k) const
    {
        NcPoly out(alphabet());
        for (const auto& [w, c] : terms())
            if (w.degree() == k)
                out.add_term(w, c);
        return out;
    }

    bool is_homogeneous_of_degree(int k) const
    {
        for (const auto& [w, c] : terms())
            if (w.degree() != k)
                return false;
        return true;
    }
};

inline NcPoly multiply(const NcPoly& p, const NcPoly& q)
{
    if (!(p.alphabet() == q.alphabet()))
        throw AlphabetMismatch("multiply: alphabet mismatch");
    NcPoly out(p.alphabet());
    for (const auto& [u, a] : p.terms())
        for (const auto& [v, b] : q.terms())
            out.add_term(u * v, a * b);
    return out;
}

inline NcPoly operator*(const NcPoly& p, const NcPoly& q) { return multiply(p, q); }

inline NcPoly bracket(const NcPoly& p, const NcPoly& q) { return multiply(p, q) - multiply(q, p); }

inline std::string to_string(const NcPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    for (const auto& [w, c] : p.terms()) {
        if (!s.empty())
            s += " + ";
        s += "(" + to_string(c) + ")" + to_string(w);
    }
    return s;
}

/// Element of T(A_n) (x) T(A_n), basis word pairs.
class PairPoly : public LinearCombination<PairPoly, std::pair<Word, Word>> {
public:
    explicit PairPoly(Alphabet a) : LinearCombination(a) {}
};

/// Factor-wise product (a (x) b)(c (x) d) = ac (x) bd.
inline PairPoly multiply(const PairPoly& p, const PairPoly& q)
{
    if (!(p.alphabet() == q.alphabet()))
        throw AlphabetMismatch("multiply: alphabet mismatch");
    PairPoly out(p.alphabet());
    for (const auto& [u, a] : p.terms())
        for (const auto& [v, b] : q.terms())
            out.add_term({u.first * v.first, u.second * v.second}, a * b);
    return out;
}

/// p (x) q as an element of the tensor square.
inline PairPoly tensor(const NcPoly& p, const NcPoly& q)
{
    if (!(p.alphabet() == q.alphabet()))
        throw AlphabetMismatch("tensor: alphabet mismatch");
    PairPoly out(p.alphabet());
    for (const auto& [u, a] : p.terms())
        for (const auto& [v, b] : q.terms())
            out.add_term({u, v}, a * b);
    return out;
}

/// Double-derivation partial: on a word, the sum over positions holding
/// generator i of (prefix) (x) (suffix).
inline PairPoly partial(int i, const NcPoly& p)
{
    if (!p.alphabet().contains(i))
        throw std::out_of_range("partial: generator index " + std::to_string(i) + " out of range");
    PairPoly out(p.alphabet());
    for (const auto& [w, c] : p.terms())
        for (std::size_t s = 0; s < w.size(); ++s)
            if (w[s] == i)
                out.add_term({w.slice(0, s), w.slice(s + 1, w.size())}, c);
    return out;
}

/// All words of length k over n letters, lexicographic.
inline std::vector<Word> enumerate_words(int n, int k)
{
    std::vector<Word> out;
    if (k < 0)
        return out;
    std::vector<Letter> cur(static_cast<std::size_t>(k), 1);
    while (true) {
        out.emplace_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) {
            cur[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0)
            break;
        ++cur[static_cast<std::size_t>(pos)];
    }
    return out;
}

/// Position of w among enumerate_words(n, |w|).
inline std::size_t word_index(int n, const Word& w)
{
    std::size_t idx = 0;
    for (Letter l : w)
        idx = idx * static_cast<std::size_t>(n) + (l - 1u);
    return idx;
}

} // namespace ncdiv

#endif // NCDIV_TENSOR_ALGEBRA_HPP
