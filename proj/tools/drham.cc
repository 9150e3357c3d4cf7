#include "drham/gd.hpp"
#include "drham/models.hpp"
#include "drham/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int emit(const drham::Report &rep, const std::string &json_out, bool timings) {
    std::cout << rep.render();
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) {
            std::cerr << "error: cannot write '" << json_out << "'\n";
            return 3;
        }
        f << rep.to_json(timings);
    }
    return rep.all_pass() ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact verification of the bihamiltonian structure checks"};
    app.require_subcommand(1);

    drham::RunConfig cfg;
    int genus = 3;
    std::string json_out;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--genus", genus, "verify identities up to eps^(2 genus)")
            ->check(CLI::Range(1, 12));
        cmd->add_option("--seed", cfg.seed, "random-test seed");
        cmd->add_option("--jobs", cfg.jobs, "worker threads for independent checks")
            ->check(CLI::Range(1, 64));
        cmd->add_option("--json", json_out, "write the JSON report to this path");
        cmd->add_option("--d-max", cfg.d_max, "recursion depth for hierarchy checks")
            ->check(CLI::Range(0, 8));
        cmd->add_option("--pdo-depth", cfg.pdo_depth, "override the Laurent truncation depth");
        cmd->add_flag("--timings", cfg.timings, "include wall times in the JSON report");
    };

    auto *verify = app.add_subcommand("verify", "run the checks for one example");
    std::string target;
    verify->add_option("target", target, "kdv | rspin3 | rspin4 | rspin5 | cp1 | genus0 | central")
        ->required()
        ->check(CLI::IsMember({"kdv", "rspin3", "rspin4", "rspin5", "cp1", "genus0", "central"}));
    verify->add_option("--g-file", cfg.g_file, "model file with the 5-spin density (rspin5 only)")
        ->check(CLI::ExistingFile);
    add_common(verify);

    auto *prop = app.add_subcommand("prop", "run the randomised property suites");
    prop->add_option("--suite", cfg.suite, "run a single named suite");
    prop->add_option("--cases", cfg.cases, "random cases per suite")->check(CLI::Range(1, 100000));
    add_common(prop);

    auto *makeg = app.add_subcommand(
        "make-g", "write a generating-density model file reconstructed from the GD pipeline");
    int make_r = 5;
    std::string make_out = "rspin5-g.json";
    makeg->add_option("--r", make_r, "spin index")->check(CLI::IsMember({3, 4, 5}));
    makeg->add_option("--out", make_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 3; // configuration error
    }

    if (cfg.jobs == 1) {
        if (const char *env = std::getenv("DRHAM_JOBS")) {
            int j = std::atoi(env);
            if (j > 0) cfg.jobs = j;
        }
    }
    cfg.two_g_max = 2 * genus;

    try {
        if (verify->parsed()) return emit(drham::verify_target(target, cfg), json_out, cfg.timings);
        if (makeg->parsed()) {
            drham::CohFTModel m = drham::rspin_model_from_gd(make_r, 2 * (make_r - 1));
            drham::save_model(m, make_out);
            std::cout << "wrote " << make_out << " (" << m.name << ", eps cap "
                      << m.ring->eps_cap() << ")\n";
            return 0;
        }
        return emit(drham::run_properties(cfg), json_out, cfg.timings);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
