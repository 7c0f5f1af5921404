// algebroid-lab: exact symbolic checks and (co)homology computations for Lie
// algebroids with Nambu structures, driven by JSON fixture files.
//
//   algebroid-lab <command> <fixture-path>
//       [--max-stratum N] [--degree-bound N]
//       [--samples basis|linear|quadratic] [--format json|text]
//
// Commands: axioms, nambu, leibniz, modular, nullity, cohomology, homology,
// duality, all.  Exit code 0 iff no check failed (2 on bad input).

#include "alab/engine.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"exact Nambu/Lie algebroid calculus checker"};
    app.name("algebroid-lab");

    std::string command, fixture_path;
    long max_stratum = -1;
    int degree_bound = -1;
    std::string samples = "linear";
    std::string format = "text";

    app.add_option("command", command, "one of: axioms nambu leibniz modular nullity cohomology homology duality all")
        ->required();
    app.add_option("fixture", fixture_path, "path to a JSON fixture file")->required();
    app.add_option("--max-stratum", max_stratum, "largest stratum weight to compute");
    app.add_option("--degree-bound", degree_bound, "polynomial degree bound for searches");
    app.add_option("--samples", samples, "sample level: basis, linear, quadratic");
    app.add_option("--format", format, "output format: text or json");

    CLI11_PARSE(app, argc, argv);

    try {
        alab::Fixture fx = alab::parse_fixture(fixture_path);
        alab::RunOptions opt;
        if (max_stratum >= 0) opt.max_stratum = max_stratum;
        if (degree_bound >= 0) opt.degree_bound = degree_bound;
        opt.level = alab::sample_level_from_string(samples);
        alab::Report rep = alab::run_command(fx, command, opt);
        if (format == "json")
            std::cout << rep.to_json().dump(2) << "\n";
        else
            std::cout << rep.to_text();
        return rep.ok() ? 0 : 1;
    } catch (const alab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const alab::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const alab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
