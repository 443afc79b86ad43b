#include "okmod/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
    okmod::JobSpec job;
    CLI::App app{"Hermite and Smith normal forms of modules over rings of integers"};
    app.add_option("command", job.command, "hnf | snf | det | detideal | canonical | absolute | check")
        ->required()
        ->check(CLI::IsMember({"hnf", "snf", "det", "detideal", "canonical", "absolute", "check"}));
    app.add_option("--field", job.field_path, "field description file")->required();
    app.add_option("--matrix", job.matrix_path, "pseudo-matrix or bi-pseudo-matrix file")->required();
    app.add_option("--detideal", job.detideal_path, "determinantal ideal (or a multiple) to use as modulus");
    app.add_flag("--canonical", job.canonical, "canonicalize the pseudo-HNF");
    app.add_flag("--check", job.check, "verify the result with an independent oracle");
    app.add_option("--jobs", job.jobs, "threads for per-prime determinant work")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", job.seed, "seed (no command is randomized; accepted for scripting)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : okmod::kParseError;
    }
    return okmod::run(job, std::cout, std::cerr);
}
