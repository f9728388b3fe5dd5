#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpdre/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Max-plus fundamental solution semigroups for difference Riccati equations"};
    app.require_subcommand(1);

    mpdre::RunConfig config;
    std::string strategy = "doubling";
    std::vector<int> horizons;
    double rtol = 0.0;
    bool rtol_set = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", config.input_path, "problem document (JSON)")->required();
        cmd->add_option("--output", config.output_path, "output path (default: stdout)");
        cmd->add_option("--k", horizons, "horizon(s)")->delimiter(',');
        cmd->add_option("--strategy", strategy, "sequential|doubling")
            ->check(CLI::IsMember({"sequential", "doubling"}));
        cmd->add_option("--rtol", rtol, "match tolerance override")
            ->each([&](const std::string&) { rtol_set = true; });
    };

    CLI::App* check = app.add_subcommand("check", "assumption feasibility of the basis M");
    add_common(check);

    CLI::App* semigroup = app.add_subcommand("semigroup", "export semigroup elements");
    add_common(semigroup);
    semigroup->add_option("--kind", config.kinds, "Lambda|Theta|Q (repeatable)")
        ->delimiter(',');

    CLI::App* solve = app.add_subcommand("solve", "batch-solve initial conditions three ways");
    add_common(solve);
    solve->add_option("--p0", config.p0_spec,
                      "initial conditions: number, JSON array, or start:stop:step");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(verify);
    verify->add_flag("--limit-sweep", config.limit_sweep,
                     "also sweep M = -m I and emit the distance CSV");

    CLI::App* kernel = app.add_subcommand("kernel", "sample the primal kernel as CSV");
    add_common(kernel);
    kernel->add_option("--grid", config.grid_spec, "lo:hi:count sampling axis");
    kernel->add_option("--ray", config.ray_spec, "u1,..,un;v1,..,vn directions (n > 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return mpdre::kExitUsage;
    }

    config.command = app.get_subcommands().front()->get_name();
    config.horizons = horizons;
    if (rtol_set) config.rtol = rtol;
    config.strategy = (strategy == "sequential") ? mpdre::Strategy::sequential
                                                 : mpdre::Strategy::doubling;
    return mpdre::run_command(config);
}
