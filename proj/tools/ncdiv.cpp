// Batch driver: one job per invocation, report written once at the end.
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include "ncdiv/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ncdiv::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of non-commutative divergence cocycles"};
    std::string config_path, command, mode, target, out, format;
    std::optional<int> n, max_degree, samples;
    std::optional<std::uint64_t> seed;

    const auto& cmds = ncdiv::job_commands();
    app.add_option("--command", command, "Job to run")->check(CLI::IsMember(cmds));
    app.add_option("--n", n, "Number of generators (rank for symplectic jobs)");
    app.add_option("--mode", mode, "Ansatz for solve-cocycles")->check(CLI::IsMember({"equivariant", "full"}));
    app.add_option("--target", target, "Cochain target")->check(CLI::IsMember({"bicyclic", "cyclic"}));
    app.add_option("--max-degree", max_degree, "Degree cutoff");
    app.add_option("--seed", seed, "Seed for every random sample");
    app.add_option("--samples", samples, "Number of random samples (0 = command default)");
    app.add_option("--config", config_path, "JSON job file; flags override its fields");
    app.add_option("--out", out, "Write the report here instead of stdout");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    ncdiv::JobConfig cfg;
    ncdiv::Report report;
    try {
        if (!config_path.empty()) {
            try {
                ncdiv::merge_config_json(cfg, read_file(config_path));
            } catch (const ncdiv::ConfigError& e) {
                throw ncdiv::ConfigError(config_path + ": " + e.what());
            }
        }
        if (!command.empty())
            cfg.command = command;
        if (n)
            cfg.n = *n;
        if (!mode.empty())
            cfg.mode = ncdiv::parse_mode(mode);
        if (!target.empty())
            cfg.target = ncdiv::parse_target(target);
        if (max_degree)
            cfg.max_degree = *max_degree;
        if (seed)
            cfg.seed = *seed;
        if (samples)
            cfg.samples = *samples;
        if (!out.empty())
            cfg.out = out;
        if (!format.empty())
            cfg.format = format;
        if (cfg.command.empty())
            throw ncdiv::ConfigError("no command given (use --command or a config file)", "command");
        report = ncdiv::run(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string text = cfg.format == "text" ? report.to_text() : report.to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "error: cannot write '" << cfg.out << "'\n";
            return 2;
        }
        f << text;
    }
    return report.ok() ? 0 : 1;
}
