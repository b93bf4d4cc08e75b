#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "povm/cli.hpp"
#include "povm/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"covariant phase and smeared position observable toolkit"};
    app.set_version_flag("--version", std::string(povm::k_version));
    app.require_subcommand(0, 1);

    povm::CliOptions opt;
    std::uint64_t seed_value = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub, bool with_seed, bool with_dims) {
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--out", opt.out_dir, "output directory (default povm_out)");
        sub->add_option("--format", opt.format, "matrix output format: json or csv");
        if (with_seed)
            sub->add_option("--seed", seed_value, "override the random generator seed")
                ->each([&](const std::string&) { seed_given = true; });
        if (with_dims)
            sub->add_option("--dims", opt.dims, "override the one-sided dimension sweep");
    };

    add_common(app.add_subcommand("build", "construct effect operators from a config"),
               true, false);
    add_common(app.add_subcommand("dilemma-report",
                                  "observable versus spectral measure contrast report"),
               true, false);
    add_common(app.add_subcommand("convergence", "truncation sweep of the canonical observable"),
               false, true);
    add_common(app.add_subcommand("line", "smeared position run"), false, false);
    add_common(app.add_subcommand("oracle-check",
                                  "audit closed-form coefficients against quadrature"),
               false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cerr << app.help() << "\n";
        return 2;
    }
    opt.command = subs.front()->get_name();
    if (seed_given) opt.seed = seed_value;
    return povm::run_command(opt);
}
