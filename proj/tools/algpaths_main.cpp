#include "algpaths/cli.hpp"
#include "algpaths/errors.hpp"
#include "algpaths/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"algpaths: spectral partitions, connecting paths, component distances and lifts "
                 "for matrix solutions of p(a) = 0 with distinct roots"};
    app.require_subcommand(1);

    algpaths::RunConfig config;
    std::string roots_text = "0,1";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--roots", roots_text, "comma separated roots, e.g. \"0,1\" or \"0,1+2i,3\"");
        cmd->add_flag("--selfadjoint", config.selfadjoint, "Hermitian mode (requires real roots)");
        cmd->add_option("--tol", config.tol, "relative tolerance")->envname("ALGPATHS_TOL");
        cmd->add_option("--seed", config.seed, "seed for all randomized behavior");
        cmd->add_option("--dim", config.dim, "matrix dimension for generated inputs");
        cmd->add_option("--trials", config.trials, "randomized trial count");
        cmd->add_option("--grid", config.grid, "validation grid density");
        cmd->add_option("--in", config.input_path, "input file");
        cmd->add_option("--out", config.output_path, "output file");
    };

    CLI::App* decompose = app.add_subcommand("decompose", "spectral partition of a matrix");
    add_common(decompose);
    CLI::App* path = app.add_subcommand("path", "connecting path between two elements");
    add_common(path);
    path->add_option("--kind", config.kind, "exp | unitary | two-segment | polygonal | esterle");
    CLI::App* distance = app.add_subcommand("distance", "component distance experiment (CSV)");
    add_common(distance);
    CLI::App* lift = app.add_subcommand("lift", "lift an analytic family along a quotient");
    add_common(lift);
    CLI::App* check = app.add_subcommand("check", "run the invariant battery");
    add_common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    config.command = app.get_subcommands().front()->get_name();
    try {
        config.roots = algpaths::parse_roots(roots_text);
    } catch (const algpaths::Error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    }
    return algpaths::run(config, std::cout);
}
