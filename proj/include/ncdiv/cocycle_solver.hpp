// Degree-zero 1-cocycles Der(T(A_n)) -> |T| (x) |T| (or |T|) as the kernel
// of an exact sparse linear system over an unknown cochain.
//
// Two families of unknown cochains are supported. The equivariant family has
// one coefficient per (contracted position, placement of the remaining
// letters into the target up to rotation); it is GL_n-equivariant for every
// n and evaluates at any alphabet size. The full family has one coefficient
// per (basis derivation, target basis element) pair of equal degree.

#ifndef NCDIV_COCYCLE_SOLVER_HPP
#define NCDIV_COCYCLE_SOLVER_HPP

#include "ncdiv/divergence.hpp"
#include "ncdiv/random.hpp"

#include <memory>
#include <optional>
#include <set>

namespace ncdiv {

class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AnsatzMode { equivariant, full };
enum class TargetKind { bicyclic, cyclic };

inline std::string to_string(AnsatzMode m) { return m == AnsatzMode::equivariant ? "equivariant" : "full"; }
inline std::string to_string(TargetKind t) { return t == TargetKind::bicyclic ? "bicyclic" : "cyclic"; }

/// Coefficient slots as a map key -> (unknown index -> coefficient).
template <class Key>
using Symbolic = std::map<Key, std::map<std::size_t, Rational>>;

namespace detail {

inline void add_into(std::map<std::size_t, Rational>& dst, const std::map<std::size_t, Rational>& src,
                     const Rational& f)
{
    for (const auto& [i, v] : src) {
        auto [it, ins] = dst.try_emplace(i, f * v);
        if (!ins)
            it->second += f * v;
    }
}

inline std::vector<int> letter_weight(int n, const Word& w)
{
    std::vector<int> wt(static_cast<std::size_t>(n) + 1, 0);
    for (Letter l : w)
        ++wt[l];
    return wt;
}

} // namespace detail

template <class Target>
struct TargetTraits;

template <>
struct TargetTraits<BiCyclicPoly> {
    using Key = NecklacePair;
    static constexpr TargetKind kind = TargetKind::bicyclic;
    static std::vector<Key> basis(int n, int d) { return enumerate_necklace_pairs(n, d); }
    static std::vector<int> weight(int n, const Key& k)
    {
        auto wt = detail::letter_weight(n, k.first.representative());
        for (Letter l : k.second.representative())
            ++wt[l];
        return wt;
    }
    template <class Sink>
    static void act_on_key(const std::vector<NcPoly>& values, const Key& k, Sink&& sink)
    {
        detail::act_on_word(values, k.first.representative(), Rational(1),
                            [&](const Word& w, const Rational& x) { sink(Key{Necklace(w), k.second}, x); });
        detail::act_on_word(values, k.second.representative(), Rational(1),
                            [&](const Word& w, const Rational& x) { sink(Key{k.first, Necklace(w)}, x); });
    }
};

template <>
struct TargetTraits<CyclicPoly> {
    using Key = Necklace;
    static constexpr TargetKind kind = TargetKind::cyclic;
    static std::vector<Key> basis(int n, int d) { return enumerate_necklaces(n, d); }
    static std::vector<int> weight(int n, const Key& k) { return detail::letter_weight(n, k.representative()); }
    template <class Sink>
    static void act_on_key(const std::vector<NcPoly>& values, const Key& k, Sink&& sink)
    {
        detail::act_on_word(values, k.representative(), Rational(1),
                            [&](const Word& w, const Rational& x) { sink(Necklace(w), x); });
    }
};

inline std::vector<int> derivation_weight(int n, const DerBasisElem& e)
{
    auto wt = detail::letter_weight(n, e.word);
    --wt[e.dual];
    return wt;
}

/// A finite-dimensional space of candidate cochains, linear in its unknowns.
template <class Target>
class CochainFamily {
public:
    using Key = typename TargetTraits<Target>::Key;

    virtual ~CochainFamily() = default;
    virtual std::size_t num_params() const = 0;
    virtual std::string param_name(std::size_t i) const = 0;
    virtual int max_degree() const = 0;
    /// out += scale * c(e), with c the generic member of the family.
    virtual void symbolic(Alphabet a, const DerBasisElem& e, const Rational& scale, Symbolic<Key>& out) const = 0;

    std::vector<std::string> param_names() const
    {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < num_params(); ++i)
            names.push_back(param_name(i));
        return names;
    }

    /// The member of the family with the given unknown values.
    Target evaluate(Alphabet a, const DerBasisElem& e, const SparseVector& params) const
    {
        Target out(a);
        if (e.degree() < 0 || e.degree() > max_degree())
            return out;
        Symbolic<Key> s;
        symbolic(a, e, Rational(1), s);
        for (const auto& [k, coeffs] : s) {
            Rational v = 0;
            for (const auto& [i, c] : coeffs)
                v += c * params.get(i);
            out.add_term(k, v);
        }
        return out;
    }
};

/// Labels 1..d of the remaining letters, arranged as one or two necklaces.
/// Each necklace starts with its smallest label.
struct Placement {
    std::vector<int> left;
    std::vector<int> right;
};

namespace detail {

inline std::vector<std::vector<int>> necklace_orders(std::vector<int> labels)
{
    std::vector<std::vector<int>> out;
    if (labels.empty()) {
        out.emplace_back();
        return out;
    }
    std::sort(labels.begin(), labels.end());
    do {
        out.push_back(labels);
    } while (std::next_permutation(labels.begin() + 1, labels.end()));
    return out;
}

inline std::string label_string(const std::vector<int>& labels)
{
    if (labels.empty())
        return "|e|";
    std::string s = "|";
    for (std::size_t i = 0; i < labels.size(); ++i)
        s += (i ? "." : "") + std::to_string(labels[i]);
    return s + "|";
}

inline Word pick(const Word& remaining, const std::vector<int>& labels)
{
    std::vector<Letter> out;
    out.reserve(labels.size());
    for (int l : labels)
        out.push_back(remaining[static_cast<std::size_t>(l - 1)]);
    return Word(std::move(out));
}

} // namespace detail

/// Placements of d labelled letters into a pair of necklaces: everything
/// on the left first, then everything on the right, then the mixed ones in
/// lexicographic order.
inline std::vector<Placement> bicyclic_placements(int d)
{
    std::vector<std::pair<int, Placement>> tagged;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        std::vector<int> l, r;
        for (int i = 1; i <= d; ++i)
            ((mask >> (i - 1)) & 1u ? l : r).push_back(i);
        const int tag = r.empty() ? 0 : (l.empty() ? 1 : 2);
        for (const auto& lo : detail::necklace_orders(l))
            for (const auto& ro : detail::necklace_orders(r))
                tagged.push_back({tag, Placement{lo, ro}});
    }
    std::sort(tagged.begin(), tagged.end(), [](const auto& x, const auto& y) {
        return std::tie(x.first, x.second.left, x.second.right) < std::tie(y.first, y.second.left, y.second.right);
    });
    std::vector<Placement> out;
    for (auto& t : tagged)
        out.push_back(std::move(t.second));
    return out;
}

inline std::vector<Placement> cyclic_placements(int d)
{
    std::vector<int> labels;
    for (int i = 1; i <= d; ++i)
        labels.push_back(i);
    std::vector<Placement> out;
    for (auto& o : detail::necklace_orders(labels))
        out.push_back(Placement{std::move(o), {}});
    return out;
}

/// c(x_{i0}^* (x) z_1...z_{k+1}) = sum_j delta(i0, i_j) sum_P c_{j,P} P(remaining letters).
template <class Target>
class EquivariantFamily : public CochainFamily<Target> {
public:
    using Key = typename TargetTraits<Target>::Key;
    static constexpr bool bicyclic = std::is_same_v<Target, BiCyclicPoly>;

    explicit EquivariantFamily(int max_degree) : max_degree_(max_degree)
    {
        if (max_degree < 0)
            throw std::invalid_argument("max_degree must be >= 0");
        for (int d = 0; d <= max_degree; ++d) {
            offset_.push_back(total_);
            placements_.push_back(bicyclic ? bicyclic_placements(d) : cyclic_placements(d));
            total_ += static_cast<std::size_t>(d + 1) * placements_.back().size();
        }
    }

    std::size_t num_params() const override { return total_; }
    int max_degree() const override { return max_degree_; }

    std::size_t index(int degree, int position, std::size_t placement) const
    {
        return offset_.at(static_cast<std::size_t>(degree)) +
               static_cast<std::size_t>(position) * placements_[static_cast<std::size_t>(degree)].size() + placement;
    }

    const std::vector<Placement>& placements(int degree) const { return placements_.at(static_cast<std::size_t>(degree)); }

    /// Degree of the cochain component an unknown belongs to.
    int param_degree(std::size_t i) const
    {
        int d = 0;
        while (d + 1 <= max_degree_ && offset_[static_cast<std::size_t>(d + 1)] <= i)
            ++d;
        return d;
    }

    std::string param_name(std::size_t i) const override
    {
        const int d = param_degree(i);
        const std::size_t local = i - offset_[static_cast<std::size_t>(d)];
        const std::size_t per = placements_[static_cast<std::size_t>(d)].size();
        const std::size_t j = local / per, p = local % per;
        if constexpr (bicyclic) {
            if (d == 0)
                return "a";
            if (d == 1) {
                static const char* names[] = {"alpha", "beta", "gamma", "omega"};
                return names[local];
            }
            if (d == 2)
                return std::string(1, static_cast<char>('a' + j)) + std::to_string(p + 1);
        }
        const auto& pl = placements_[static_cast<std::size_t>(d)][p];
        std::string s = "p" + std::to_string(d) + "." + std::to_string(j + 1) + detail::label_string(pl.left);
        if constexpr (bicyclic)
            s += "*" + detail::label_string(pl.right);
        return s;
    }

    std::optional<std::size_t> find_param(const std::string& name) const
    {
        for (std::size_t i = 0; i < total_; ++i)
            if (param_name(i) == name)
                return i;
        return std::nullopt;
    }

    void symbolic(Alphabet, const DerBasisElem& e, const Rational& scale, Symbolic<Key>& out) const override
    {
        const int d = e.degree();
        if (d < 0 || d > max_degree_)
            return;
        const Word& w = e.word;
        const auto& pls = placements_[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] != e.dual)
                continue;
            const Word rest = w.slice(0, j) * w.slice(j + 1, w.size());
            for (std::size_t p = 0; p < pls.size(); ++p) {
                Key k;
                if constexpr (bicyclic)
                    k = Key{Necklace(detail::pick(rest, pls[p].left)), Necklace(detail::pick(rest, pls[p].right))};
                else
                    k = Necklace(detail::pick(rest, pls[p].left));
                auto& slot = out[k][index(d, static_cast<int>(j), p)];
                slot += scale;
            }
        }
    }

private:
    int max_degree_;
    std::size_t total_ = 0;
    std::vector<std::size_t> offset_;
    std::vector<std::vector<Placement>> placements_;
};

/// One unknown per (basis element e, target basis element tau) of equal
/// degree. With weight filtering only pairs of equal torus weight are kept.
template <class Target>
class FullFamily : public CochainFamily<Target> {
public:
    using Key = typename TargetTraits<Target>::Key;

    FullFamily(Alphabet a, int max_degree, bool weight_filter)
        : alphabet_(a), max_degree_(max_degree), weight_filter_(weight_filter)
    {
        if (max_degree < 0)
            throw std::invalid_argument("max_degree must be >= 0");
        for (int d = 0; d <= max_degree; ++d) {
            const auto targets = TargetTraits<Target>::basis(a.n, d);
            std::map<std::vector<int>, std::vector<std::size_t>> by_weight;
            for (std::size_t t = 0; t < targets.size(); ++t)
                by_weight[TargetTraits<Target>::weight(a.n, targets[t])].push_back(t);
            for (const auto& e : enumerate_basis(a, d)) {
                auto& slots = slots_[e];
                auto add = [&](std::size_t t) {
                    slots.emplace_back(targets[t], names_.size());
                    names_.push_back(to_string(e) + "->" + to_string(targets[t]));
                };
                if (weight_filter) {
                    auto it = by_weight.find(derivation_weight(a.n, e));
                    if (it != by_weight.end())
                        for (auto t : it->second)
                            add(t);
                } else {
                    for (std::size_t t = 0; t < targets.size(); ++t)
                        add(t);
                }
            }
        }
    }

    Alphabet alphabet() const { return alphabet_; }
    bool weight_filtered() const { return weight_filter_; }
    std::size_t num_params() const override { return names_.size(); }
    std::string param_name(std::size_t i) const override { return names_.at(i); }
    int max_degree() const override { return max_degree_; }

    /// Unknown index of (e, tau), if it exists.
    std::optional<std::size_t> slot(const DerBasisElem& e, const Key& tau) const
    {
        auto it = slots_.find(e);
        if (it == slots_.end())
            return std::nullopt;
        for (const auto& [k, i] : it->second)
            if (k == tau)
                return i;
        return std::nullopt;
    }

    void symbolic(Alphabet a, const DerBasisElem& e, const Rational& scale, Symbolic<Key>& out) const override
    {
        if (!(a == alphabet_))
            throw AlphabetMismatch("full cochain family evaluated on a different alphabet");
        auto it = slots_.find(e);
        if (it == slots_.end())
            return;
        for (const auto& [k, i] : it->second)
            out[k][i] += scale;
    }

private:
    Alphabet alphabet_;
    int max_degree_;
    bool weight_filter_;
    std::map<DerBasisElem, std::vector<std::pair<Key, std::size_t>>> slots_;
    std::vector<std::string> names_;
};

/// Which pairs (d1, d2) contribute cocycle equations.
struct PairPolicy {
    enum class Kind { generating, explicit_pairs };
    Kind kind = Kind::generating;
    std::vector<int> first_degrees{-1, 0, 1, 2};
    std::vector<std::pair<DerBasisElem, DerBasisElem>> pairs; // explicit_pairs only
    std::string label = "generating";

    static PairPolicy generating() { return PairPolicy{}; }
    static PairPolicy explicit_list(std::vector<std::pair<DerBasisElem, DerBasisElem>> p, std::string label)
    {
        PairPolicy pol;
        pol.kind = Kind::explicit_pairs;
        pol.pairs = std::move(p);
        pol.label = std::move(label);
        pol.first_degrees.clear();
        return pol;
    }

    /// True when every degree-0 basis element is paired with everything, so
    /// that the Cartan elements force weight matching.
    bool contains_cartan() const
    {
        return kind == Kind::generating && std::find(first_degrees.begin(), first_degrees.end(), 0) != first_degrees.end();
    }
};

/// Stages of the hand computation for the equivariant ansatz: gl_n
/// commutators, brackets with x^* against degree 1, the three degree-2
/// identities, and the degree (1, 2) brackets. Instantiated over all index
/// values of the alphabet.
enum class ProofStage { trace = 1, degree_one = 2, degree_two = 4, degree_three = 8 };

inline std::vector<std::pair<DerBasisElem, DerBasisElem>> proof_pairs(Alphabet a, unsigned stages)
{
    using E = DerBasisElem;
    auto L = [](int i) { return static_cast<Letter>(i); };
    std::vector<std::pair<E, E>> out;
    const int n = a.n;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (stages & unsigned(ProofStage::trace))
                        out.push_back({E{L(i), Word{j}}, E{L(k), Word{l}}});
                    if (stages & unsigned(ProofStage::degree_one))
                        out.push_back({E{L(i), Word{}}, E{L(j), Word{k, l}}});
                    if (stages & unsigned(ProofStage::degree_two)) {
                        // [x_i^* x_i x_j, x_l^* x_l x_i], [x_i^* x_i x_j, x_l^* x_i x_l], [x_k^*, x_l^* x_i x_l x_j]
                        out.push_back({E{L(i), Word{i, j}}, E{L(l), Word{l, i}}});
                        out.push_back({E{L(i), Word{i, j}}, E{L(l), Word{i, l}}});
                        out.push_back({E{L(k), Word{}}, E{L(l), Word{i, l, j}}});
                    }
                }
    if (stages & unsigned(ProofStage::degree_three))
        for (const auto& e1 : enumerate_basis(a, 1))
            for (const auto& e2 : enumerate_basis(a, 2))
                out.push_back({e1, e2});
    return out;
}

/// Sparse system whose kernel is the space of cocycles in the family.
struct ConstraintSystem {
    std::size_t unknowns = 0;
    std::size_t pairs_used = 0;
    std::vector<SparseVector> rows;
};

namespace detail {

template <class Target>
void act_symbolic(const std::vector<NcPoly>& values, const Symbolic<typename TargetTraits<Target>::Key>& in,
                  const Rational& scale, Symbolic<typename TargetTraits<Target>::Key>& out)
{
    using Key = typename TargetTraits<Target>::Key;
    for (const auto& [k, coeffs] : in)
        TargetTraits<Target>::act_on_key(values, k, [&](const Key& k2, const Rational& x) {
            add_into(out[k2], coeffs, scale * x);
        });
}

// Row normalized so that the first entry is 1; used to drop duplicates.
using RowKey = std::vector<std::pair<std::size_t, Rational>>;

inline std::optional<RowKey> normalized_row(const std::map<std::size_t, Rational>& coeffs)
{
    RowKey row;
    for (const auto& [i, v] : coeffs)
        if (!is_zero(v))
            row.emplace_back(i, v);
    if (row.empty())
        return std::nullopt;
    const Rational lead = row.front().second;
    for (auto& [i, v] : row)
        v /= lead;
    return row;
}

} // namespace detail

/// Cocycle equations of the family on each policy pair: the coordinates of
/// d1.c(d2) - d2.c(d1) - c([d1, d2]).
template <class Target>
ConstraintSystem build_system(const CochainFamily<Target>& family, Alphabet a, const PairPolicy& policy)
{
    using Key = typename TargetTraits<Target>::Key;
    const int max_degree = family.max_degree();
    std::map<DerBasisElem, Symbolic<Key>> cache;
    auto sym = [&](const DerBasisElem& e) -> const Symbolic<Key>& {
        auto it = cache.find(e);
        if (it != cache.end())
            return it->second;
        Symbolic<Key> s;
        family.symbolic(a, e, Rational(1), s);
        return cache.emplace(e, std::move(s)).first->second;
    };

    std::set<detail::RowKey> seen;
    ConstraintSystem sys;
    sys.unknowns = family.num_params();

    auto process = [&](const DerBasisElem& e1, const DerBasisElem& e2) {
        // c is only known up to max_degree, so both operands must lie in range
        if (e1.degree() + e2.degree() > max_degree || e1.degree() > max_degree || e2.degree() > max_degree)
            return;
        ++sys.pairs_used;
        const Derivation d1 = Derivation::basis(a, e1), d2 = Derivation::basis(a, e2);
        Symbolic<Key> expr;
        detail::act_symbolic<Target>(d1.generator_values(), sym(e2), Rational(1), expr);
        detail::act_symbolic<Target>(d2.generator_values(), sym(e1), Rational(-1), expr);
        const Derivation br = der_bracket(d1, d2);
        for (const auto& [e, c] : br.terms())
            for (const auto& [k, coeffs] : sym(e))
                detail::add_into(expr[k], coeffs, -c);
        for (const auto& [k, coeffs] : expr) {
            auto row = detail::normalized_row(coeffs);
            if (!row || !seen.insert(*row).second)
                continue;
            std::map<std::size_t, Rational> entries(row->begin(), row->end());
            sys.rows.emplace_back(sys.unknowns, entries);
        }
    };

    if (policy.kind == PairPolicy::Kind::explicit_pairs) {
        for (const auto& [e1, e2] : policy.pairs) {
            check_word(a, e1.word);
            check_word(a, e2.word);
            process(e1, e2);
        }
        return sys;
    }
    for (int p : policy.first_degrees) {
        if (p > max_degree)
            continue;
        const auto lhs = enumerate_basis(a, p);
        for (int q = -1; p + q <= max_degree && q <= max_degree; ++q) {
            const auto rhs = enumerate_basis(a, q);
            for (const auto& e1 : lhs)
                for (const auto& e2 : rhs)
                    process(e1, e2);
        }
    }
    return sys;
}

/// Member of a family as a cochain. The family is shared, not copied.
template <class Target>
Cochain<Target> family_member(std::shared_ptr<const CochainFamily<Target>> family, SparseVector params,
                              std::string name = {})
{
    return Cochain<Target>(
        [family = std::move(family), params = std::move(params)](Alphabet a, const DerBasisElem& e) {
            return family->evaluate(a, e, params);
        },
        std::move(name));
}

/// Values of each cochain on every basis element of degree 0..max_degree,
/// flattened into vectors over a shared coordinate index.
template <class Target>
std::vector<SparseVector> image_vectors(const std::vector<Cochain<Target>>& cochains, Alphabet a, int max_degree)
{
    using Key = typename TargetTraits<Target>::Key;
    std::map<std::pair<DerBasisElem, Key>, std::size_t> index;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> raw(cochains.size());
    for (int d = 0; d <= max_degree; ++d)
        for (const auto& e : enumerate_basis(a, d))
            for (std::size_t c = 0; c < cochains.size(); ++c) {
                const Target value = cochains[c].on_basis(a, e);
                for (const auto& [k, v] : value.terms()) {
                    auto [it, ins] = index.try_emplace({e, k}, index.size());
                    raw[c].emplace_back(it->second, v);
                }
            }
    std::vector<SparseVector> out;
    for (auto& r : raw) {
        std::map<std::size_t, Rational> m(r.begin(), r.end());
        out.emplace_back(index.size(), m);
    }
    return out;
}

struct SolveOptions {
    AnsatzMode mode = AnsatzMode::equivariant;
    int max_degree = 3;
    PairPolicy policy = PairPolicy::generating();
    std::uint64_t seed = 1;
    int fresh_pairs = 100;
    bool identify = true;
};

struct Identification {
    std::vector<std::string> references;
    /// Per basis vector: coefficients on the references, if it lies in their span.
    std::vector<std::optional<std::vector<Rational>>> coordinates;
    std::size_t reference_rank = 0;
    bool spans_equal = false;
};

struct SolverReport {
    int n = 0;
    AnsatzMode mode = AnsatzMode::equivariant;
    TargetKind target = TargetKind::bicyclic;
    int max_degree = 0;
    std::string policy;
    bool weight_filtered = false;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t pairs_used = 0;
    std::size_t rank = 0;
    std::size_t raw_kernel_dimension = 0;
    std::size_t ansatz_null_dimension = 0; ///< members of the family that vanish identically at this n
    std::size_t dimension = 0;
    std::vector<std::string> param_names;
    std::vector<SparseVector> basis;
    std::optional<Identification> identification;
    std::vector<std::pair<std::string, std::string>> residual_checks; ///< fresh pairs verified
};

template <class Target>
struct SolveResult {
    SolverReport report;
    std::shared_ptr<const CochainFamily<Target>> family;
    std::vector<Cochain<Target>> cochains; ///< one per basis vector
};

/// Named coefficients of a basis vector, nonzero entries only.
inline std::vector<std::pair<std::string, Rational>> named_coefficients(const SolverReport& r, std::size_t i)
{
    std::vector<std::pair<std::string, Rational>> out;
    for (const auto& [k, v] : r.basis.at(i).entries())
        out.emplace_back(r.param_names[k], v);
    return out;
}

/// Reference cocycles used for identification.
template <class Target>
std::vector<Cochain<Target>> reference_cocycles(Alphabet a)
{
    if constexpr (std::is_same_v<Target, BiCyclicPoly>) {
        if (a.n == 1) {
            auto c = n1_classical_cocycles(a);
            return {c.div_tensor_one, c.one_tensor_div, c.total_div};
        }
        return {div_cochain(), sigma_div_cochain()};
    } else {
        return {};
    }
}

template <class Target>
void verify_fresh_pairs(const SolveResult<Target>& res, Alphabet a, std::uint64_t seed, int count,
                        std::vector<std::pair<std::string, std::string>>& log)
{
    if (res.cochains.empty() || count <= 0)
        return;
    const int m = res.report.max_degree;
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
        auto [d1, d2] = random_pair(rng, a, -1, m, m);
        for (std::size_t b = 0; b < res.cochains.size(); ++b) {
            auto r = coboundary(res.cochains[b], d1, d2);
            if (!r.is_zero())
                throw VerificationFailure("basis vector " + std::to_string(b) + " fails the cocycle identity on d1 = " +
                                          to_string(d1) + ", d2 = " + to_string(d2) + ": residual " + to_string(r));
        }
        log.emplace_back(to_string(d1), to_string(d2));
    }
}

/// Kernel of the system for the given family, reduced modulo members of the
/// family that vanish identically on this alphabet.
template <class Target>
SolveResult<Target> solve_family(std::shared_ptr<const CochainFamily<Target>> family, Alphabet a,
                                 const SolveOptions& opt)
{
    using Key = typename TargetTraits<Target>::Key;
    SolveResult<Target> res;
    res.family = family;
    SolverReport& rep = res.report;
    rep.n = a.n;
    rep.mode = opt.mode;
    rep.target = TargetTraits<Target>::kind;
    rep.max_degree = family->max_degree();
    rep.policy = opt.policy.label;
    rep.unknowns = family->num_params();
    rep.param_names = family->param_names();
    if (auto f = std::dynamic_pointer_cast<const FullFamily<Target>>(family))
        rep.weight_filtered = f->weight_filtered();

    ConstraintSystem sys = build_system(*family, a, opt.policy);
    rep.equations = sys.rows.size();
    rep.pairs_used = sys.pairs_used;
    SparseMatrix m = SparseMatrix::from_rows(sys.unknowns, std::move(sys.rows));
    auto kernel = kernel_basis(m);
    rep.rank = sys.unknowns - kernel.size();
    rep.raw_kernel_dimension = kernel.size();

    // Members of the family that evaluate to zero on every basis element.
    std::vector<SparseVector> null_space;
    if (opt.mode == AnsatzMode::equivariant) {
        SparseMatrix eval(0, family->num_params());
        for (int d = 0; d <= rep.max_degree; ++d)
            for (const auto& e : enumerate_basis(a, d)) {
                Symbolic<Key> s;
                family->symbolic(a, e, Rational(1), s);
                for (const auto& [k, coeffs] : s) {
                    std::map<std::size_t, Rational> row;
                    for (const auto& [i, v] : coeffs)
                        if (!is_zero(v))
                            row.emplace(i, v);
                    if (!row.empty())
                        eval.append_row(SparseVector(family->num_params(), row));
                }
            }
        null_space = kernel_basis(eval);
    }
    rep.ansatz_null_dimension = null_space.size();
    for (auto& k : kernel)
        for (const auto& z : null_space) {
            Rational f = k.get(z.leading_index());
            if (!is_zero(f))
                k.axpy(-f, z);
        }
    rep.basis = rref_basis(kernel);
    rep.dimension = rep.basis.size();

    for (std::size_t i = 0; i < rep.basis.size(); ++i)
        res.cochains.push_back(family_member<Target>(family, rep.basis[i], "basis" + std::to_string(i)));

    verify_fresh_pairs(res, a, opt.seed, opt.fresh_pairs, rep.residual_checks);

    if (opt.identify) {
        auto refs = reference_cocycles<Target>(a);
        if (!refs.empty()) {
            std::vector<Cochain<Target>> all = res.cochains;
            all.insert(all.end(), refs.begin(), refs.end());
            auto images = image_vectors(all, a, rep.max_degree);
            std::vector<SparseVector> ref_images(images.begin() + static_cast<std::ptrdiff_t>(res.cochains.size()),
                                                 images.end());
            Identification id;
            for (const auto& r : refs)
                id.references.push_back(r.name());
            id.reference_rank = span_dimension(ref_images);
            bool all_in = true;
            for (std::size_t i = 0; i < res.cochains.size(); ++i) {
                id.coordinates.push_back(solve_combination(ref_images, images[i]));
                all_in = all_in && id.coordinates.back().has_value();
            }
            std::vector<SparseVector> basis_images(images.begin(),
                                                   images.begin() + static_cast<std::ptrdiff_t>(res.cochains.size()));
            id.spans_equal = all_in && span_dimension(basis_images) == id.reference_rank;
            rep.identification = std::move(id);
        }
    }
    return res;
}

template <class Target>
SolveResult<Target> solve(Alphabet a, const SolveOptions& opt)
{
    std::shared_ptr<const CochainFamily<Target>> family;
    if (opt.mode == AnsatzMode::equivariant)
        family = std::make_shared<EquivariantFamily<Target>>(opt.max_degree);
    else
        family = std::make_shared<FullFamily<Target>>(a, opt.max_degree, opt.policy.contains_cartan());
    return solve_family<Target>(family, a, opt);
}

/// One admissible instance of the n = 1 recursion obtained from the bracket
/// [x^* x^{k+1}, x^* x^{l+1}] = (l - k) x^* x^{k+l+1}.
struct RecursionInstance {
    int l, k, s, t;
    Rational lhs, rhs;
    bool holds() const { return lhs == rhs; }
};

inline RecursionInstance n1_recursion_instance(int l, int k, int s, int t,
                                               const std::function<Rational(int, int)>& c)
{
    if (s + t != l + k || s < 0 || t < 0 || l < -1 || k < -1)
        throw std::invalid_argument("inadmissible recursion instance");
    auto at = [&](int p, int q) { return p < 0 || q < 0 ? Rational(0) : c(p, q); };
    RecursionInstance r{l, k, s, t, Rational(l - k) * at(s, t), 0};
    r.rhs = at(s - k, t) * (s - k) + at(s, t - k) * (t - k) - at(s - l, t) * (s - l) - at(s, t - l) * (t - l);
    return r;
}

inline bool n1_recursion_check(int l, int k, int s, int t, const std::function<Rational(int, int)>& c)
{
    return n1_recursion_instance(l, k, s, t, c).holds();
}

/// Every admissible (l, k, s, t) with l + k <= max_sum and l, k <= max_single.
/// Returns the violated instances.
inline std::vector<RecursionInstance> n1_recursion_sweep(const std::function<Rational(int, int)>& c, int max_sum,
                                                         int max_single, std::size_t* checked = nullptr)
{
    std::vector<RecursionInstance> bad;
    std::size_t count = 0;
    for (int k = -1; k <= max_single; ++k)
        for (int l = -1; l <= max_single; ++l) {
            if (l + k > max_sum || l + k < 0)
                continue;
            for (int s = 0; s <= l + k; ++s) {
                auto r = n1_recursion_instance(l, k, s, l + k - s, c);
                ++count;
                if (!r.holds())
                    bad.push_back(r);
            }
        }
    if (checked)
        *checked = count;
    return bad;
}

/// c_{s,t} read off an n = 1 cochain.
inline Rational n1_coefficient(const BiCochain& c, int s, int t)
{
    const Alphabet a = make_alphabet(1);
    std::vector<Letter> w(static_cast<std::size_t>(s + t + 1), 1);
    std::vector<Letter> l(static_cast<std::size_t>(s), 1), r(static_cast<std::size_t>(t), 1);
    return c.on_basis(a, DerBasisElem{1, Word(w)}).coefficient({Necklace(Word(l)), Necklace(Word(r))});
}

template <class Target>
struct TraceReport {
    bool off_diagonal_zero = true;
    bool diagonal_equal = true;
    Rational a = 0; ///< c(E_ii) = a |e| (x) |e|
    bool ok() const { return off_diagonal_zero && diagonal_equal; }
};

/// c on gl_n: zero off the diagonal and the same multiple of the unit on
/// every E_ii.
template <class Target>
TraceReport<Target> gl_trace_check(const Cochain<Target>& c, Alphabet a)
{
    using Key = typename TargetTraits<Target>::Key;
    TraceReport<Target> rep;
    std::optional<Target> first;
    for (int i = 1; i <= a.n; ++i)
        for (int j = 1; j <= a.n; ++j) {
            Target v = c.on_basis(a, DerBasisElem{static_cast<Letter>(i), Word{j}});
            if (i != j) {
                rep.off_diagonal_zero = rep.off_diagonal_zero && v.is_zero();
            } else if (!first) {
                first = v;
            } else {
                rep.diagonal_equal = rep.diagonal_equal && v == *first;
            }
        }
    if (first) {
        Key unit{};
        rep.a = first->coefficient(unit);
        Target scaled = Target(a);
        scaled.add_term(unit, rep.a);
        rep.diagonal_equal = rep.diagonal_equal && scaled == *first;
    }
    return rep;
}

struct ModeConsistency {
    std::size_t full_dimension = 0;
    std::size_t equivariant_dimension = 0;
    std::size_t equivariant_subspace_dimension = 0; ///< dim of the family's image
    std::size_t intersection_dimension = 0;
    bool equivariant_contained = false;
    bool ok() const { return equivariant_contained && intersection_dimension == equivariant_dimension; }
};

/// Compares the full and equivariant solution spaces for |T| (x) |T|.
inline ModeConsistency mode_consistency(Alphabet a, int max_degree, std::uint64_t seed = 1)
{
    SolveOptions opt;
    opt.max_degree = max_degree;
    opt.seed = seed;
    opt.identify = false;
    opt.fresh_pairs = 20;
    opt.mode = AnsatzMode::full;
    auto full = solve<BiCyclicPoly>(a, opt);
    opt.mode = AnsatzMode::equivariant;
    auto eq = solve<BiCyclicPoly>(a, opt);

    std::vector<BiCochain> all = full.cochains;
    all.insert(all.end(), eq.cochains.begin(), eq.cochains.end());
    const std::size_t nf = full.cochains.size(), ne = eq.cochains.size();
    const std::size_t np = eq.family->num_params();
    for (std::size_t i = 0; i < np; ++i) {
        SparseVector unit(np);
        unit.set(i, Rational(1));
        all.push_back(family_member<BiCyclicPoly>(eq.family, unit));
    }
    auto images = image_vectors(all, a, max_degree);
    auto slice = [&](std::size_t from, std::size_t to) {
        return std::vector<SparseVector>(images.begin() + static_cast<std::ptrdiff_t>(from),
                                         images.begin() + static_cast<std::ptrdiff_t>(to));
    };
    auto F = slice(0, nf), E = slice(nf, nf + ne), A = slice(nf + ne, images.size());

    ModeConsistency mc;
    mc.full_dimension = span_dimension(F);
    mc.equivariant_dimension = span_dimension(E);
    mc.equivariant_subspace_dimension = span_dimension(A);
    auto FE = F;
    FE.insert(FE.end(), E.begin(), E.end());
    mc.equivariant_contained = span_dimension(FE) == mc.full_dimension;
    auto FA = F;
    FA.insert(FA.end(), A.begin(), A.end());
    mc.intersection_dimension = mc.full_dimension + mc.equivariant_subspace_dimension - span_dimension(FA);
    return mc;
}

} // namespace ncdiv

#endif // NCDIV_COCYCLE_SOLVER_HPP
