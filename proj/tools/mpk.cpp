#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mpk: exact matrix polynomial toolkit"};
    app.require_subcommand(1);
    mpk::cli::Flags flags;
    std::string file;
    std::string chosen;

    const std::map<std::string, std::string> blurb{
        {"diagonalize", "local Smith form S L T = D with unimodular S, T"},
        {"spectrum", "eigenvalues of L with partial multiplicities"},
        {"jordan", "canonical Jordan chains at every eigenvalue"},
        {"solve-ode", "solution basis of L(d/dt) x = 0"},
        {"represent", "operator representation of a Hermitian L"},
        {"verify", "check a supplied triple or representation, else self-check"}};

    for (const auto& name : mpk::cli::commands()) {
        auto it = blurb.find(name);
        auto* sub = app.add_subcommand(name, it == blurb.end() ? std::string() : it->second);
        sub->add_option("file", file, "input JSON document")->required()->check(CLI::ExistingFile);
        sub->add_flag("--latex", flags.latex, "add LaTeX renderings");
        sub->add_flag("--verify", flags.verify, "re-verify every emitted solution term");
        sub->add_flag("--allow-numeric-roots", flags.allow_numeric_roots, "accept eigenvalues found only numerically");
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : mpk::cli::kInputError;
    }

    std::ifstream in(file);
    if (!in) {
        std::cerr << "input error: cannot read " << file << "\n";
        return mpk::cli::kInputError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return mpk::cli::run(chosen, buf.str(), flags, std::cout, std::cerr);
}
