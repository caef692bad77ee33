// qsph: batch driver for quantum-symmetric-pair spherical-vector
// certification.  Subcommands mirror the verification suites; reports are
// deterministic (stable ordering, canonical scalar serialization).
#include <CLI11.hpp>

#include "qsph/config.hpp"

#include <iostream>

using namespace qsph;

namespace {

struct CommonArgs {
    std::string configPath;
    SuiteOptions opt;
    long lminArg = -3, lmaxArg = 3;
    bool hasLmin = false, hasLmax = false;
    long nArg = 0;
};

void addCommon(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.configPath, "diagram config file")->required();
    cmd->add_option("--n", a.nArg, "family parameter n")->each([&a](const std::string&) {
        a.opt.hasN = true;
    });
    cmd->add_option("--lmin", a.lminArg, "smallest character label")
        ->each([&a](const std::string&) { a.hasLmin = true; });
    cmd->add_option("--lmax", a.lmaxArg, "largest character label")
        ->each([&a](const std::string&) { a.hasLmax = true; });
    cmd->add_option("--dim-cap", a.opt.dimCap, "module dimension cap");
    cmd->add_option("--jobs", a.opt.jobs, "parallel workers for sweep cells");
    cmd->add_option("--out", a.opt.outDir, "report output directory");
    cmd->add_option("--format", a.opt.format, "report format: json, md, or both")
        ->check(CLI::IsMember({"json", "md", "both"}));
}

SuiteOptions finish(const CommonArgs& a, const DiagramConfig& cfg) {
    SuiteOptions opt = a.opt;
    opt.nOverride = a.opt.hasN ? a.nArg : cfg.n;
    opt.hasN = true;
    if (a.hasLmin) opt.lmin = a.lminArg;
    else if (cfg.hasLRange) opt.lmin = cfg.lmin;
    if (a.hasLmax) opt.lmax = a.lmaxArg;
    else if (cfg.hasLRange) opt.lmax = cfg.lmax;
    return opt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spherical-vector certification for quantum symmetric pairs"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> names = {"validate",      "build",        "spherical",
                                      "branching",     "verify-crystal", "verify-based",
                                      "verify-integral", "all"};
    std::map<std::string, CLI::App*> cmds;
    for (const auto& n : names) {
        CLI::App* c = app.add_subcommand(n);
        addCommon(c, args);
        cmds[n] = c;
    }

    CLI11_PARSE(app, argc, argv);

    std::string chosen;
    for (const auto& [n, c] : cmds)
        if (c->parsed()) chosen = n;

    DiagramConfig cfg;
    try {
        cfg = DiagramConfig::load(args.configPath);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    SuiteOptions opt = finish(args, cfg);

    std::vector<SuiteReport> reports;
    try {
        if (chosen == "validate") {
            reports.push_back(runValidate(cfg));
        } else if (chosen == "build") {
            reports.push_back(runBuild(cfg, opt));
        } else if (chosen == "spherical") {
            reports.push_back(runSpherical(cfg, opt));
        } else if (chosen == "branching") {
            reports.push_back(runBranching(cfg, opt));
        } else if (chosen == "verify-crystal") {
            reports.push_back(runVerifyCrystal(cfg, opt));
        } else if (chosen == "verify-based") {
            reports.push_back(runVerifyBased(cfg, opt));
        } else if (chosen == "verify-integral") {
            reports.push_back(runVerifyIntegral(cfg, opt));
        } else if (chosen == "all") {
            reports.push_back(runValidate(cfg));
            reports.push_back(runBranching(cfg, opt));
            reports.push_back(runVerifyCrystal(cfg, opt));
            reports.push_back(runVerifyBased(cfg, opt));
            reports.push_back(runVerifyIntegral(cfg, opt));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    bool predictedFailure = false;
    for (const auto& r : reports) {
        emitReport(r, opt, std::cout);
        predictedFailure = predictedFailure || r.predictedFailure();
    }
    return predictedFailure ? 1 : 0;
}
