// Finitely supported formal linear combinations with rational coefficients.

#ifndef NCDIV_LINEAR_COMBINATION_HPP
#define NCDIV_LINEAR_COMBINATION_HPP

#include "ncdiv/exact_linalg.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace ncdiv {

class AlphabetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Number of generators of a free algebra; generators are 1..n.
struct Alphabet {
    int n = 1;

    constexpr bool contains(int letter) const { return letter >= 1 && letter <= n; }
    friend constexpr bool operator==(Alphabet, Alphabet) = default;
};

inline Alphabet make_alphabet(int n)
{
    if (n < 1 || n > 255)
        throw std::invalid_argument("alphabet size must be in 1..255, got " + std::to_string(n));
    return Alphabet{n};
}

/// CRTP base: a map Key -> nonzero Rational over a fixed alphabet. Derived
/// types get the vector-space operations; zero coefficients are never stored.
template <class Derived, class Key>
class LinearCombination {
public:
    using key_type = Key;
    using Terms = std::map<Key, Rational>;

    explicit LinearCombination(Alphabet a) : alphabet_(a) {}

    Alphabet alphabet() const { return alphabet_; }
    const Terms& terms() const& { return terms_; }
    // by value on temporaries, so range-for over f().terms() stays valid
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Derived& add_term(const Key& k, const Rational& c)
    {
        if (ncdiv::is_zero(c))
            return self();
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (ncdiv::is_zero(it->second))
                terms_.erase(it);
        }
        return self();
    }

    Derived& operator+=(const Derived& other)
    {
        check_same_alphabet(other);
        for (const auto& [k, c] : other.terms())
            add_term(k, c);
        return self();
    }

    Derived& operator-=(const Derived& other)
    {
        check_same_alphabet(other);
        for (const auto& [k, c] : other.terms())
            add_term(k, -c);
        return self();
    }

    Derived& operator*=(const Rational& s)
    {
        if (ncdiv::is_zero(s)) {
            terms_.clear();
            return self();
        }
        for (auto& [k, c] : terms_)
            c *= s;
        return self();
    }

    /// this += s * other
    Derived& add_scaled(const Rational& s, const Derived& other)
    {
        check_same_alphabet(other);
        if (ncdiv::is_zero(s))
            return self();
        for (const auto& [k, c] : other.terms())
            add_term(k, s * c);
        return self();
    }

    friend Derived operator+(Derived a, const Derived& b) { return a += b; }
    friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
    friend Derived operator*(const Rational& s, Derived a) { return a *= s; }
    friend Derived operator-(Derived a) { return a *= Rational(-1); }

    friend bool operator==(const LinearCombination& a, const LinearCombination& b)
    {
        return a.alphabet_ == b.alphabet_ && a.terms_ == b.terms_;
    }

protected:
    void check_same_alphabet(const LinearCombination& other) const
    {
        if (!(other.alphabet_ == alphabet_))
            throw AlphabetMismatch("alphabet mismatch: n=" + std::to_string(alphabet_.n) +
                                   " vs n=" + std::to_string(other.alphabet_.n));
    }

private:
    Derived& self() { return static_cast<Derived&>(*this); }

    Alphabet alphabet_;
    Terms terms_;
};

} // namespace ncdiv

#endif // NCDIV_LINEAR_COMBINATION_HPP
