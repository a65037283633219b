#include "support.hpp"

#include "ncdiv/report.hpp"

#include <catch_amalgamated.hpp>

using namespace ncdiv;

TEST_CASE("config parsing", "[report]")
{
    const JobConfig cfg = parse_config(R"({"command": "solve-cocycles", "n": 2, "mode": "full",
        "target": "cyclic", "max_degree": 2, "seed": 7, "samples": 10})");
    CHECK(cfg.command == "solve-cocycles");
    CHECK(cfg.n == 2);
    CHECK(cfg.mode == AnsatzMode::full);
    CHECK(cfg.target == TargetKind::cyclic);
    CHECK(cfg.max_degree == 2);
    CHECK(cfg.seed == 7);
    CHECK(cfg.samples == 10);
    CHECK_NOTHROW(cfg.validate());
    CHECK(parse_config(cfg.to_json().dump()).to_json() == cfg.to_json());
}

TEST_CASE("config errors name the field and the line", "[report]")
{
    auto error_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::make_pair(e.field(), e.line());
        }
        return std::make_pair(std::string("none"), -1);
    };
    CHECK(error_of("{\n  \"command\": \"verify-div\",\n  \"colour\": 3\n}") == std::make_pair(std::string("colour"), 3));
    CHECK(error_of("{\n  \"n\": \"three\"\n}") == std::make_pair(std::string("n"), 2));
    CHECK(error_of("{\n  \"mode\": \"weird\"\n}").second == 2);
    CHECK(error_of("{\n  \"n\": 2,\n  oops\n}").second == 3);
    CHECK(error_of("[1, 2]").second == 1);

    JobConfig cfg;
    cfg.command = "frobnicate";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.command = "verify-div";
    cfg.n = 0;
    CHECK_THROWS_AS(run(cfg), ConfigError);
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        CHECK(e.field() == "n");
        CHECK(std::string(e.what()).find("field 'n'") != std::string::npos);
    }
}

TEST_CASE("out-of-range jobs raise UnsupportedRange", "[report]")
{
    JobConfig cfg;
    cfg.command = "verify-msz";
    cfg.n = 2;
    cfg.max_degree = 3;
    CHECK_THROWS_AS(run(cfg), UnsupportedRange);
}

TEST_CASE("reports are deterministic apart from timings", "[report]")
{
    JobConfig cfg;
    cfg.command = "verify-div";
    cfg.n = 2;
    cfg.max_degree = 2;
    cfg.samples = 20;
    const Report r1 = run(cfg), r2 = run(cfg);
    CHECK(r1.ok());
    CHECK(r1.to_json(false) == r2.to_json(false));
    CHECK(r1.to_json(false)["schema_version"] == report_schema_version);
    CHECK(r1.to_json().contains("timings_seconds"));
    CHECK(r1.to_text().find("PASS") != std::string::npos);

    cfg.seed = 2;
    CHECK(run(cfg).to_json(false) != r1.to_json(false));
}

TEST_CASE("a failing check carries a replayable counterexample", "[report]")
{
    const BiCochain first_only(
        [](Alphabet a, const DerBasisElem& e) {
            BiCyclicPoly out(a);
            if (!e.word.empty() && e.word[0] == e.dual)
                out.add_term({Necklace(), Necklace(e.word.slice(1, e.word.size()))}, Rational(1));
            return out;
        },
        "first_only");
    const Alphabet a = make_alphabet(2);
    Rng rng(3);
    std::vector<DerivationPair> pairs;
    for (int i = 0; i < 100; ++i)
        pairs.push_back(random_pair(rng, a, -1, 3, 6));

    Report rep;
    detail::cocycle_sample_check(rep.check("first_only"), first_only, pairs);
    REQUIRE_FALSE(rep.ok());
    const Json ce = rep.to_json(false)["checks"][0]["counterexample"];
    CHECK(ce["cochain"] == "first_only");

    // replay from the serialized derivations
    const Derivation d1 = parse_derivation(a, ce["d1"].get<std::string>());
    const Derivation d2 = parse_derivation(a, ce["d2"].get<std::string>());
    const BiCyclicPoly r = coboundary(first_only, d1, d2);
    CHECK_FALSE(r.is_zero());
    CHECK(to_string(r) == ce["residual"].get<std::string>());
    CHECK(rep.to_text().find("counterexample") != std::string::npos);
}

TEST_CASE("every command runs on a small job", "[report]")
{
    for (const auto& [command, n, md] : std::vector<std::tuple<std::string, int, int>>{
             {"verify-div", 2, 2}, {"solve-cocycles", 2, 2}, {"verify-msz", 2, 2},
             {"n1-cocycles", 1, 4}, {"es-trace", 2, 2},      {"es-uniqueness", 2, 2}}) {
        JobConfig cfg;
        cfg.command = command;
        cfg.n = n;
        cfg.max_degree = md;
        cfg.samples = 10;
        const Report rep = run(cfg);
        INFO(command << "\n" << rep.to_text());
        CHECK(rep.ok());
        CHECK_FALSE(rep.checks.empty());
    }
}

TEST_CASE("solver results outside the generated range are labeled exploratory", "[report]")
{
    JobConfig cfg;
    cfg.command = "solve-cocycles";
    cfg.n = 2;
    cfg.max_degree = 2;
    cfg.samples = 5;
    CHECK(run(cfg).results["solver"]["exploratory"] == false);
    cfg.mode = AnsatzMode::full;
    CHECK(run(cfg).results["solver"]["exploratory"] == true);
    cfg.mode = AnsatzMode::equivariant;
    cfg.max_degree = 3;
    CHECK(run(cfg).results["solver"]["exploratory"] == true);
}
