// The non-commutative divergence, its switch, linear cochains and the
// coboundary of a degree-zero 1-cochain.

#ifndef NCDIV_DIVERGENCE_HPP
#define NCDIV_DIVERGENCE_HPP

#include "ncdiv/derivation_algebra.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>

namespace ncdiv {

/// Div on a single basis element: sum over positions j holding the dual
/// letter of |prefix| (x) |suffix|.
inline BiCyclicPoly div_basis(Alphabet a, const DerBasisElem& e)
{
    BiCyclicPoly out(a);
    const Word& w = e.word;
    for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] == e.dual)
            out.add_term({Necklace(w.slice(0, j)), Necklace(w.slice(j + 1, w.size()))}, Rational(1));
    return out;
}

inline BiCyclicPoly sigma_div_basis(Alphabet a, const DerBasisElem& e) { return switch_factors(div_basis(a, e)); }

/// A linear map Der -> Target given by its values on basis elements.
/// Target is CyclicPoly or BiCyclicPoly.
template <class Target>
class Cochain {
public:
    using BasisMap = std::function<Target(Alphabet, const DerBasisElem&)>;

    Cochain() : on_basis_([](Alphabet a, const DerBasisElem&) { return Target(a); }), name_("0") {}
    explicit Cochain(BasisMap f, std::string name = {}) : on_basis_(std::move(f)), name_(std::move(name)) {}

    static Cochain zero() { return Cochain(); }

    const std::string& name() const { return name_; }

    Target on_basis(Alphabet a, const DerBasisElem& e) const
    {
        if (e.degree() < 0)
            return Target(a); // no negative-degree component in the target
        return on_basis_(a, e);
    }

    Target operator()(const Derivation& d) const
    {
        Target out(d.alphabet());
        for (const auto& [e, c] : d.terms())
            out.add_scaled(c, on_basis(d.alphabet(), e));
        return out;
    }

    friend Cochain operator+(const Cochain& x, const Cochain& y)
    {
        return Cochain([x, y](Alphabet a, const DerBasisElem& e) { return x.on_basis(a, e) + y.on_basis(a, e); },
                       x.name_ + "+" + y.name_);
    }
    friend Cochain operator*(const Rational& s, const Cochain& x)
    {
        return Cochain([s, x](Alphabet a, const DerBasisElem& e) { return s * x.on_basis(a, e); },
                       to_string(s) + "*" + x.name_);
    }

private:
    BasisMap on_basis_;
    std::string name_;
};

using BiCochain = Cochain<BiCyclicPoly>;
using CyclicCochain = Cochain<CyclicPoly>;

inline BiCochain div_cochain() { return BiCochain(div_basis, "Div"); }
inline BiCochain sigma_div_cochain() { return BiCochain(sigma_div_basis, "sigma_Div"); }

inline BiCyclicPoly div(const Derivation& d) { return div_cochain()(d); }
inline BiCyclicPoly sigma_div(const Derivation& d) { return sigma_div_cochain()(d); }

inline BiCyclicPoly act(const Derivation& d, const BiCyclicPoly& b) { return act_on_bicyclic(d, b); }
inline CyclicPoly act(const Derivation& d, const CyclicPoly& p) { return act_on_cyclic(d, p); }

/// (dc)(d1, d2) = d1.c(d2) - d2.c(d1) - c([d1, d2]); zero iff the cocycle
/// identity holds on this pair.
template <class Target>
Target coboundary(const Cochain<Target>& c, const Derivation& d1, const Derivation& d2)
{
    Target out = act(d1, c(d2));
    out -= act(d2, c(d1));
    out -= c(der_bracket(d1, d2));
    return out;
}

/// For n = 1 a cochain of degree zero is a table c(x* (x) x^{k+1}) =
/// sum_{s+t=k} c_{s,t} |x^s| (x) |x^t|. Builds a cochain from such a table.
inline BiCochain n1_cochain_from_table(std::function<Rational(int, int)> table, std::string name)
{
    return BiCochain(
        [table = std::move(table)](Alphabet a, const DerBasisElem& e) {
            if (a.n != 1)
                throw std::invalid_argument("n = 1 cochain evaluated on alphabet of size " + std::to_string(a.n));
            BiCyclicPoly out(a);
            const int k = e.degree();
            for (int s = 0; s <= k; ++s) {
                std::vector<Letter> l(static_cast<std::size_t>(s), 1), r(static_cast<std::size_t>(k - s), 1);
                out.add_term({Necklace(Word(l)), Necklace(Word(r))}, table(s, k - s));
            }
            return out;
        },
        std::move(name));
}

struct N1Cocycles {
    BiCochain div_tensor_one; ///< c_{s,0} = s + 1
    BiCochain one_tensor_div; ///< c_{0,t} = t + 1
    BiCochain total_div;      ///< c_{s,t} = 1
};

inline std::array<std::function<Rational(int, int)>, 3> n1_classical_tables()
{
    return {[](int s, int t) { return t == 0 ? Rational(s + 1) : Rational(0); },
            [](int s, int t) { return s == 0 ? Rational(t + 1) : Rational(0); },
            [](int, int) { return Rational(1); }};
}

inline N1Cocycles n1_classical_cocycles(Alphabet a)
{
    if (a.n != 1)
        throw std::invalid_argument("the classical cocycles are defined for n = 1 only");
    auto t = n1_classical_tables();
    return {n1_cochain_from_table(t[0], "div(x)1"), n1_cochain_from_table(t[1], "1(x)div"),
            n1_cochain_from_table(t[2], "Div")};
}

} // namespace ncdiv

#endif // NCDIV_DIVERGENCE_HPP
