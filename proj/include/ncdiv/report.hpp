// Job configuration, dispatch and the JSON / text report.

#ifndef NCDIV_REPORT_HPP
#define NCDIV_REPORT_HPP

#include "ncdiv/symplectic_lie.hpp"

#include <json.hpp>

#include <chrono>
#include <deque>
#include <sstream>

namespace ncdiv {

using Json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

/// Config problem with the offending field and, for file input, the line.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& msg, std::string field = {}, int line = 0)
        : std::invalid_argument(format(msg, field, line)), field_(std::move(field)), line_(line)
    {
    }
    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    static std::string format(const std::string& msg, const std::string& field, int line)
    {
        std::string s;
        if (line > 0)
            s += "line " + std::to_string(line) + ": ";
        if (!field.empty())
            s += "field '" + field + "': ";
        return s + msg;
    }
    std::string field_;
    int line_;
};

inline const std::vector<std::string>& job_commands()
{
    static const std::vector<std::string> c{"verify-div", "solve-cocycles", "verify-msz",
                                            "n1-cocycles", "es-trace",       "es-uniqueness"};
    return c;
}

struct JobConfig {
    std::string command;
    int n = 3;
    AnsatzMode mode = AnsatzMode::equivariant;
    TargetKind target = TargetKind::bicyclic;
    int max_degree = 3;
    std::uint64_t seed = 1;
    int samples = 0; ///< random samples; 0 picks the command default
    std::string out;
    std::string format = "json";

    void validate() const
    {
        const auto& cmds = job_commands();
        if (std::find(cmds.begin(), cmds.end(), command) == cmds.end())
            throw ConfigError("unknown command '" + command + "'", "command");
        if (n < 1 || n > 9)
            throw ConfigError("n must be in 1..9", "n");
        if (max_degree < 0 || max_degree > 12)
            throw ConfigError("max_degree must be in 0..12", "max_degree");
        if (samples < 0)
            throw ConfigError("samples must be >= 0", "samples");
        if (format != "json" && format != "text")
            throw ConfigError("format must be json or text", "format");
    }

    Json to_json() const
    {
        Json j;
        j["command"] = command;
        j["n"] = n;
        j["mode"] = to_string(mode);
        j["target"] = to_string(target);
        j["max_degree"] = max_degree;
        j["seed"] = seed;
        j["samples"] = samples;
        j["format"] = format;
        return j;
    }
};

inline AnsatzMode parse_mode(const std::string& s)
{
    if (s == "equivariant")
        return AnsatzMode::equivariant;
    if (s == "full")
        return AnsatzMode::full;
    throw ConfigError("expected equivariant or full, got '" + s + "'", "mode");
}

inline TargetKind parse_target(const std::string& s)
{
    if (s == "bicyclic")
        return TargetKind::bicyclic;
    if (s == "cyclic")
        return TargetKind::cyclic;
    throw ConfigError("expected bicyclic or cyclic, got '" + s + "'", "target");
}

namespace detail {
inline int line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline int line_of_key(std::string_view text, const std::string& key)
{
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}
} // namespace detail

/// Reads a JSON object into cfg, field by field. Unknown fields are errors.
inline void merge_config_json(JobConfig& cfg, std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what(), {},
                          detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object", {}, 1);
    for (const auto& [key, value] : j.items()) {
        const int line = detail::line_of_key(text, key);
        try {
            if (key == "command")
                cfg.command = value.get<std::string>();
            else if (key == "n")
                cfg.n = value.get<int>();
            else if (key == "mode")
                cfg.mode = parse_mode(value.get<std::string>());
            else if (key == "target")
                cfg.target = parse_target(value.get<std::string>());
            else if (key == "max_degree")
                cfg.max_degree = value.get<int>();
            else if (key == "seed")
                cfg.seed = value.get<std::uint64_t>();
            else if (key == "samples")
                cfg.samples = value.get<int>();
            else if (key == "out")
                cfg.out = value.get<std::string>();
            else if (key == "format")
                cfg.format = value.get<std::string>();
            else
                throw ConfigError("unknown field", key, line);
        } catch (const nlohmann::json::type_error& e) {
            throw ConfigError(std::string("wrong type: ") + e.what(), key, line);
        } catch (const ConfigError& e) {
            if (e.line() > 0)
                throw;
            throw ConfigError(e.what(), {}, line);
        }
    }
}

inline JobConfig parse_config(std::string_view text)
{
    JobConfig cfg;
    merge_config_json(cfg, text);
    return cfg;
}

struct CheckResult {
    std::string name;
    bool pass = true;
    Json detail = Json::object();
    Json counterexample; ///< null on pass
};

struct Report {
    Json job;
    std::deque<CheckResult> checks; // deque: check() hands out stable references
    Json results = Json::object();
    std::vector<std::pair<std::string, double>> timings; ///< seconds

    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }

    CheckResult& check(std::string name)
    {
        CheckResult c;
        c.name = std::move(name);
        checks.push_back(std::move(c));
        return checks.back();
    }

    template <class F>
    auto timed(const std::string& label, F&& f)
    {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            timings.emplace_back(label, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        } else {
            auto r = f();
            timings.emplace_back(label, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            return r;
        }
    }

    /// Everything except timings is a function of the job.
    Json to_json(bool with_timings = true) const
    {
        Json j;
        j["schema_version"] = report_schema_version;
        j["job"] = job;
        j["status"] = ok() ? "pass" : "fail";
        Json cs = Json::array();
        for (const auto& c : checks) {
            Json x;
            x["name"] = c.name;
            x["status"] = c.pass ? "pass" : "fail";
            if (!c.detail.empty())
                x["detail"] = c.detail;
            if (!c.pass)
                x["counterexample"] = c.counterexample;
            cs.push_back(std::move(x));
        }
        j["checks"] = std::move(cs);
        j["results"] = results;
        if (with_timings) {
            Json t = Json::object();
            for (const auto& [k, v] : timings)
                t[k] = v;
            j["timings_seconds"] = std::move(t);
        }
        return j;
    }

    std::string to_text() const
    {
        std::ostringstream os;
        os << "command  " << (job.is_object() ? job.value("command", "") : std::string()) << "\n";
        os << "status   " << (ok() ? "PASS" : "FAIL") << "\n\n";
        std::size_t width = 5;
        for (const auto& c : checks)
            width = std::max(width, c.name.size());
        for (const auto& c : checks) {
            os << (c.pass ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ');
            if (!c.detail.empty())
                os << c.detail.dump();
            os << "\n";
            if (!c.pass)
                os << "      counterexample: " << c.counterexample.dump() << "\n";
        }
        if (!results.empty()) {
            os << "\nresults\n";
            for (const auto& [k, v] : results.items())
                os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
        if (!timings.empty()) {
            os << "\ntimings\n";
            for (const auto& [k, v] : timings)
                os << "  " << k << ": " << v << " s\n";
        }
        return os.str();
    }
};

namespace detail {

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json solver_report_json(const SolverReport& r)
{
    Json j;
    j["n"] = r.n;
    j["mode"] = to_string(r.mode);
    j["target"] = to_string(r.target);
    j["max_degree"] = r.max_degree;
    j["pair_policy"] = r.policy;
    j["weight_filtered"] = r.weight_filtered;
    j["unknowns"] = r.unknowns;
    j["equations"] = r.equations;
    j["pairs_used"] = r.pairs_used;
    j["rank"] = r.rank;
    j["raw_kernel_dimension"] = r.raw_kernel_dimension;
    j["ansatz_null_dimension"] = r.ansatz_null_dimension;
    j["dimension"] = r.dimension;
    // Past k = n the generation argument no longer covers the cutoff; n = 2 in full mode has no known answer.
    j["exploratory"] = r.n >= 2 && (r.max_degree > r.n || (r.n == 2 && r.mode == AnsatzMode::full));
    Json basis = Json::array();
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
        Json b = Json::object();
        for (const auto& [name, v] : named_coefficients(r, i))
            b[name] = rational_json(v);
        basis.push_back(std::move(b));
    }
    j["basis"] = std::move(basis);
    if (r.identification) {
        const auto& id = *r.identification;
        Json x;
        x["references"] = id.references;
        x["reference_rank"] = id.reference_rank;
        x["spans_equal"] = id.spans_equal;
        Json coords = Json::array();
        for (const auto& c : id.coordinates) {
            if (!c) {
                coords.push_back(nullptr);
                continue;
            }
            Json v = Json::array();
            for (const auto& q : *c)
                v.push_back(rational_json(q));
            coords.push_back(std::move(v));
        }
        x["coordinates"] = std::move(coords);
        j["identification"] = std::move(x);
    }
    j["fresh_pairs_verified"] = r.residual_checks.size();
    return j;
}

template <class Target>
void cocycle_sample_check(CheckResult& chk, const Cochain<Target>& c, const std::vector<DerivationPair>& pairs)
{
    for (const auto& [d1, d2] : pairs) {
        const Target r = coboundary(c, d1, d2);
        if (!r.is_zero()) {
            chk.pass = false;
            chk.counterexample = {{"cochain", c.name()}, {"d1", to_string(d1)}, {"d2", to_string(d2)},
                                  {"residual", to_string(r)}};
            break;
        }
    }
    chk.detail["pairs"] = pairs.size();
}

inline void run_verify_div(const JobConfig& cfg, Report& rep)
{
    const Alphabet a = make_alphabet(cfg.n);
    const int samples = cfg.samples > 0 ? cfg.samples : 200;
    Rng rng(cfg.seed);
    std::vector<DerivationPair> pairs;
    for (int i = 0; i < samples; ++i)
        pairs.push_back(random_pair(rng, a, -1, cfg.max_degree, 2 * cfg.max_degree));

    rep.timed("div_cocycle", [&] { cocycle_sample_check(rep.check("div_cocycle"), div_cochain(), pairs); });
    rep.timed("sigma_div_cocycle",
              [&] { cocycle_sample_check(rep.check("sigma_div_cocycle"), sigma_div_cochain(), pairs); });

    auto& grading = rep.check("div_degree_zero");
    for (const auto& [d1, d2] : pairs) {
        for (const Derivation* d : {&d1, &d2}) {
            const int k = d->terms().begin()->first.degree();
            for (const auto& [pr, c] : div(*d).terms())
                if (pr.first.representative().degree() + pr.second.representative().degree() != k) {
                    grading.pass = false;
                    grading.counterexample = {{"d", to_string(*d)}, {"term", to_string(pr)}};
                }
        }
        if (!grading.pass)
            break;
    }

    auto& action = rep.check("bicyclic_lie_action");
    rep.timed("bicyclic_lie_action", [&] {
        for (std::size_t i = 0; i < pairs.size() && i < 50; ++i) {
            const auto& [d1, d2] = pairs[i];
            const BiCyclicPoly b = random_bicyclic(rng, a, static_cast<int>(rng.uniform(0, 3)));
            const BiCyclicPoly lhs = act(der_bracket(d1, d2), b);
            const BiCyclicPoly rhs = act(d1, act(d2, b)) - act(d2, act(d1, b));
            if (!(lhs == rhs)) {
                action.pass = false;
                action.counterexample = {{"d1", to_string(d1)}, {"d2", to_string(d2)}, {"b", to_string(b)}};
                break;
            }
        }
    });
    rep.results["pairs_tested"] = pairs.size();
}

template <class Target>
void run_solve(const JobConfig& cfg, Report& rep, int n)
{
    const Alphabet a = make_alphabet(n);
    SolveOptions opt;
    opt.mode = cfg.mode;
    opt.max_degree = cfg.max_degree;
    opt.seed = cfg.seed;
    if (cfg.samples > 0)
        opt.fresh_pairs = cfg.samples;
    auto& chk = rep.check("fresh_pair_verification");
    try {
        auto res = rep.timed("solve", [&] { return solve<Target>(a, opt); });
        chk.detail["pairs"] = res.report.residual_checks.size();
        rep.results["solver"] = solver_report_json(res.report);
        rep.results["dimension"] = res.report.dimension;
    } catch (const VerificationFailure& e) {
        chk.pass = false;
        chk.counterexample = {{"message", e.what()}};
    }
}

inline void run_verify_msz(const JobConfig& cfg, Report& rep)
{
    const auto m = rep.timed("rank", [&] { return verify_msz_decomposition(make_alphabet(cfg.n), cfg.max_degree); });
    Json r;
    r["n"] = m.n;
    r["k"] = m.k;
    r["dim_target"] = m.dim_target;
    r["dim_bracket_span"] = m.dim_bracket_span;
    r["dim_complement"] = m.dim_complement;
    r["dim_sum"] = m.dim_sum;
    rep.results["decomposition"] = r;
    auto& fills = rep.check("bracket_span_fills");
    fills.pass = m.fills;
    fills.detail = {{"dim_sum", m.dim_sum}, {"dim_target", m.dim_target}};
    if (!m.fills)
        fills.counterexample = r;
    if (m.k == 2) {
        auto& direct = rep.check("direct_sum");
        direct.pass = m.direct_sum_ok;
        if (!m.direct_sum_ok)
            direct.counterexample = r;
    }
}

inline void run_n1(const JobConfig& cfg, Report& rep)
{
    const Alphabet a = make_alphabet(1);
    SolveOptions opt;
    opt.mode = AnsatzMode::full;
    opt.max_degree = cfg.max_degree;
    opt.seed = cfg.seed;
    if (cfg.samples > 0)
        opt.fresh_pairs = cfg.samples;
    auto& verify = rep.check("fresh_pair_verification");
    std::optional<SolveResult<BiCyclicPoly>> res;
    try {
        res = rep.timed("solve", [&] { return solve<BiCyclicPoly>(a, opt); });
    } catch (const VerificationFailure& e) {
        verify.pass = false;
        verify.counterexample = {{"message", e.what()}};
        return;
    }
    rep.results["solver"] = solver_report_json(res->report);
    rep.results["dimension"] = res->report.dimension;

    auto& ident = rep.check("classical_identification");
    ident.pass = res->report.identification && res->report.identification->spans_equal;
    if (!ident.pass)
        ident.counterexample = {{"dimension", res->report.dimension}};

    // tables of the solved basis, read back from the cochains
    Json tables = Json::array();
    for (const auto& c : res->cochains) {
        Json t = Json::object();
        for (int k = 0; k <= cfg.max_degree; ++k)
            for (int s = 0; s <= k; ++s)
                t["c" + std::to_string(s) + "," + std::to_string(k - s)] = to_string(n1_coefficient(c, s, k - s));
        tables.push_back(std::move(t));
    }
    rep.results["coefficient_tables"] = std::move(tables);

    auto& rec = rep.check("recursion");
    std::size_t checked = 0, total = 0;
    for (std::size_t i = 0; i < res->cochains.size() && rec.pass; ++i) {
        const auto& c = res->cochains[i];
        // k = -1 reads c one degree above l + k, so stop one below the cutoff
        auto bad = n1_recursion_sweep([&](int s, int t) { return n1_coefficient(c, s, t); }, cfg.max_degree - 1,
                                      cfg.max_degree, &checked);
        total += checked;
        if (!bad.empty()) {
            rec.pass = false;
            rec.counterexample = {{"basis_vector", i}, {"l", bad[0].l}, {"k", bad[0].k}, {"s", bad[0].s},
                                  {"t", bad[0].t}, {"lhs", to_string(bad[0].lhs)}, {"rhs", to_string(bad[0].rhs)}};
        }
    }
    const auto classical = n1_classical_tables();
    for (std::size_t i = 0; i < classical.size() && rec.pass; ++i) {
        auto bad = n1_recursion_sweep(classical[i], cfg.max_degree + 2, cfg.max_degree + 3, &checked);
        total += checked;
        if (!bad.empty()) {
            rec.pass = false;
            rec.counterexample = {{"classical_table", i}, {"l", bad[0].l}, {"k", bad[0].k}, {"s", bad[0].s},
                                  {"t", bad[0].t}};
        }
    }
    rec.detail["instances"] = total;
}

inline void run_es_trace(const JobConfig& cfg, Report& rep)
{
    if (cfg.n < 2)
        throw ConfigError("es-trace needs n >= 2", "n");
    const SymplecticContext ctx(cfg.n);
    const Alphabet al = ctx.alphabet();
    const FreeLieAlgebra L(al, 4);
    const auto triples = wedge3_basis(al);

    auto& sym = rep.check("phi_symplectic");
    rep.timed("phi_symplectic", [&] {
        for (const auto& t : triples) {
            const Wedge3 w = Wedge3::of(al, t[0], t[1], t[2]);
            if (!symplectic_defect(ctx, L, phi_inject_unchecked(ctx, w)).is_zero()) {
                sym.pass = false;
                sym.counterexample = {{"wedge", to_string(w, ctx)}};
                break;
            }
        }
    });
    sym.detail["wedges"] = triples.size();

    auto& pb = rep.check("phi_bar_3_values");
    for (int i = 1; i <= ctx.n() && pb.pass; ++i)
        for (int j = 1; j <= ctx.n(); ++j) {
            if (i == j)
                continue;
            const Wedge3 w = Wedge3::of(al, ctx.x(i), ctx.y(i), ctx.x(j));
            if (!(phi_bar_3(ctx, w) == NcPoly::generator(al, ctx.x(j)))) {
                pb.pass = false;
                pb.counterexample = {{"wedge", to_string(w, ctx)}, {"value", to_string(phi_bar_3(ctx, w))}};
                break;
            }
        }

    auto& surj = rep.check("phi_bar_3_surjective");
    {
        std::vector<SparseVector> images;
        for (const auto& t : triples) {
            SparseVector v(static_cast<std::size_t>(al.n));
            for (const auto& [w, c] : phi_bar_3(ctx, Wedge3::of(al, t[0], t[1], t[2])).terms())
                v.set(w[0] - 1u, c);
            images.push_back(std::move(v));
        }
        const std::size_t r = span_dimension(images);
        surj.pass = r == static_cast<std::size_t>(al.n);
        surj.detail["rank"] = r;
        if (!surj.pass)
            surj.counterexample = {{"rank", r}};
    }

    auto& inter = rep.check("phi_bar_3_intertwiner");
    {
        const SpDerivationBasis sp(ctx, L, 0);
        const auto ir = rep.timed("intertwiners", [&] { return sp_intertwiners_wedge3_to_h(ctx, sp); });
        inter.pass = ir.dimension == 1 && ir.contains_phi_bar_3;
        inter.detail = {{"hom_dimension", ir.dimension}, {"contains_phi_bar_3", ir.contains_phi_bar_3}};
        if (!inter.pass)
            inter.counterexample = inter.detail;
    }

    auto& embed_chk = rep.check("embed_injective");
    for (int k = 1; k <= L.max_degree(); ++k) {
        std::vector<SparseVector> rows;
        for (const auto& w : L.basis(k)) {
            SparseVector v(basis_dimension(al, k - 2));
            for (const auto& [u, c] : L.expansion(w).terms())
                v.set(word_index(al.n, u), c);
            rows.push_back(std::move(v));
        }
        if (span_dimension(rows) != rows.size()) {
            embed_chk.pass = false;
            embed_chk.counterexample = {{"degree", k}};
            break;
        }
    }

    // Tr_ES cocycle identity on pairs drawn from phi(wedge^3 H)
    auto& cocycle = rep.check("es_trace_cocycle");
    const int samples = cfg.samples > 0 ? cfg.samples : 50;
    Rng rng(cfg.seed);
    auto random_wedge = [&] {
        Wedge3 w(al);
        const long terms = rng.uniform(1, 3);
        for (long i = 0; i < terms; ++i) {
            const auto& t = triples[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(triples.size()) - 1))];
            w.add_wedge(t[0], t[1], t[2], rng.coefficient());
        }
        return w;
    };
    rep.timed("es_trace_cocycle", [&] {
        for (int s = 0; s < samples; ++s) {
            const Wedge3 w1 = random_wedge(), w2 = random_wedge();
            const LieDerivation x = phi_inject(ctx, L, w1).value(), y = phi_inject(ctx, L, w2).value();
            CyclicPoly r = es_trace(L, lie_der_bracket(L, x, y));
            r -= act_on_cyclic(L, x, es_trace(L, y));
            r += act_on_cyclic(L, y, es_trace(L, x));
            if (!r.is_zero()) {
                cocycle.pass = false;
                cocycle.counterexample = {{"w1", to_string(w1, ctx)}, {"w2", to_string(w2, ctx)},
                                          {"residual", to_string(r)}};
                break;
            }
        }
    });
    cocycle.detail["pairs"] = samples;

    auto& grading = rep.check("es_trace_degree_zero");
    Json samples_json = Json::array();
    for (int k = 1; k <= 3 && grading.pass; ++k) {
        const SpDerivationBasis B(ctx, L, k);
        for (std::size_t b = 0; b < B.dimension(); ++b) {
            const CyclicPoly tr = es_trace(L, B.element(b));
            for (const auto& [nk, c] : tr.terms())
                if (nk.representative().degree() != k) {
                    grading.pass = false;
                    grading.counterexample = {{"derivation", to_string(B.element(b), ctx)}};
                }
        }
    }

    Json examples = Json::object();
    for (const auto& t : triples) {
        const Wedge3 w = Wedge3::of(al, t[0], t[1], t[2]);
        examples[to_string(t, ctx)] = {{"phi", to_string(phi_inject(ctx, L, w).value(), ctx)},
                                       {"phi_bar_3", to_string(phi_bar_3(ctx, w))},
                                       {"es_trace", to_string(es_trace(L, phi_inject(ctx, L, w).value()))}};
        if (examples.size() >= 8)
            break;
    }
    rep.results["wedge_examples"] = std::move(examples);
}

inline void run_es_uniqueness(const JobConfig& cfg, Report& rep)
{
    if (cfg.n < 2)
        throw ConfigError("es-uniqueness needs n >= 2", "n");
    if (cfg.max_degree < 1)
        throw ConfigError("es-uniqueness needs max_degree >= 1", "max_degree");
    const EsUniquenessSolver solver(cfg.n, cfg.max_degree);
    auto& verify = rep.check("fresh_pair_verification");
    EsUniquenessReport r;
    try {
        r = rep.timed("solve", [&] { return solver.solve(cfg.seed, cfg.samples > 0 ? cfg.samples : 50); });
    } catch (const VerificationFailure& e) {
        verify.pass = false;
        verify.counterexample = {{"message", e.what()}};
        return;
    }
    verify.detail["pairs"] = r.residual_checks.size();

    auto& contains = rep.check("contains_es_trace");
    contains.pass = r.contains_trace && r.trace_nonzero;
    if (!contains.pass)
        contains.counterexample = {{"trace_nonzero", r.trace_nonzero}, {"contains_trace", r.contains_trace}};

    Json j;
    j["n"] = r.n;
    j["max_degree"] = r.max_degree;
    j["der_sp_dimensions"] = r.der_sp_dimensions;
    j["unknowns"] = r.unknowns;
    j["equations"] = r.equations;
    j["pairs_used"] = r.pairs_used;
    j["dimension"] = r.dimension;
    j["dimension_above_degree_one"] = r.dimension_above_degree_one;
    j["excess_flagged"] = r.excess_flagged;
    if (r.excess_flagged)
        j["excess_note"] = "degree-1 values decouple: brackets with degree-1 elements land in Lie elements of "
                           "degree >= 2, which vanish in |T(H)|; the degree >= 2 part has the dimension above";
    Json table = Json::array();
    for (const auto& [cut, d] : r.dimension_by_cutoff)
        table.push_back({{"cutoff", cut}, {"dimension", d}});
    j["dimension_by_cutoff"] = std::move(table);
    Json basis = Json::array();
    for (const auto& b : r.basis) {
        Json x = Json::object();
        for (const auto& [i, v] : b.entries())
            x[r.param_names[i]] = rational_json(v);
        basis.push_back(std::move(x));
    }
    j["basis"] = std::move(basis);
    rep.results["es_uniqueness"] = std::move(j);
    rep.results["dimension"] = r.dimension;
}

} // namespace detail

/// Runs one job. Check failures are recorded in the report; configuration
/// problems throw ConfigError (or UnsupportedRange for out-of-range jobs).
inline Report run(const JobConfig& cfg)
{
    cfg.validate();
    Report rep;
    rep.job = cfg.to_json();
    if (cfg.command == "verify-div") {
        detail::run_verify_div(cfg, rep);
    } else if (cfg.command == "solve-cocycles") {
        if (cfg.target == TargetKind::bicyclic)
            detail::run_solve<BiCyclicPoly>(cfg, rep, cfg.n);
        else
            detail::run_solve<CyclicPoly>(cfg, rep, cfg.n);
    } else if (cfg.command == "verify-msz") {
        detail::run_verify_msz(cfg, rep);
    } else if (cfg.command == "n1-cocycles") {
        rep.job["n"] = 1;
        detail::run_n1(cfg, rep);
    } else if (cfg.command == "es-trace") {
        detail::run_es_trace(cfg, rep);
    } else {
        detail::run_es_uniqueness(cfg, rep);
    }
    return rep;
}

} // namespace ncdiv

#endif // NCDIV_REPORT_HPP
