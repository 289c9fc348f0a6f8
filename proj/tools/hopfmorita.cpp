#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hopfmorita/problem.hpp"

using namespace hopfmorita;

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Hopf-covariant Morita problems"};
    std::string input, output;
    cli::Flags flags;
    int truncation = -1, window = -1;
    app.add_option("--input", input, "problem file (JSON)")->required();
    app.add_option("--output", output, "report file (default: standard output)");
    app.add_option("--truncation", truncation, "truncation order N");
    app.add_option("--window", window, "mode window K");
    app.add_flag("--parallel", flags.parallel, "run independent tasks concurrently");
    app.add_flag("--oracle", flags.oracle, "rerun oracle-backed tasks against brute-force oracles");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kPass : cli::kInputError;
    }
    if (truncation >= 0) flags.truncation = truncation;
    if (window >= 0) flags.window = window;

    cli::Problem problem;
    try {
        problem = cli::load_problem_file(input, flags);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return cli::kInputError;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return cli::kInputError;
    } catch (const InconsistencyError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return cli::kInconsistency;
    } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return cli::kInputError;
    }

    const cli::RunResult result = cli::run(problem, flags);
    const std::string text = result.report.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write " << output << "\n";
            return cli::kInputError;
        }
        out << text;
    }
    std::cerr << cli::summary(result.report);
    return result.exit_code;
}
