// Diagram configuration files (textual, bit-exact round trip), suite
// configuration, and deterministic report generation for the CLI.
#pragma once

#include "qsph/spherical.hpp"

#include <iosfwd>
#include <string>

namespace qsph {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct DiagramConfig {
    // Either a type label or an explicit Cartan matrix + symmetrizer.
    std::string type;
    std::vector<std::vector<int>> cartan;
    std::vector<int> symmetrizer;
    std::vector<int> black;             // 1-based labels
    std::vector<std::pair<int, int>> tauCycles;  // 1-based two-cycles
    long n = 0;
    std::vector<int> order;             // optional linear-order override, 1-based
    std::vector<Weight> lambdas;        // optional weight list
    long lmin = 0, lmax = 0;
    bool hasLRange = false;
    long dimCap = 3000;
    std::map<int, LaurentPoly> cOverride, sOverride;  // 1-based node keys

    static DiagramConfig parse(const std::string& text);
    static DiagramConfig load(const std::string& path);
    std::string serialize() const;

    CartanDatum buildCartan() const;
    std::shared_ptr<AdmissiblePair> buildPair() const;
    QSPParameters buildParameters(const AdmissiblePair& pair) const;
};

struct SuiteOptions {
    long lmin = -3, lmax = 3;
    long nOverride = 0;
    bool hasN = false;
    long dimCap = 3000;
    int jobs = 1;
    std::string outDir;
    std::string format = "both";  // json | md | both
};

struct ReportRow {
    std::vector<std::string> cells;
    bool predictedPass = true;  // the theory predicts this row passes
    bool passed = true;
    bool undecided = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;
    std::vector<std::string> warnings;
    std::string markdown() const;
    std::string json() const;
    // Exit contribution: true iff a predicted-pass row failed.
    bool predictedFailure() const;
    int failures() const;
};

SuiteReport runValidate(const DiagramConfig& cfg);
SuiteReport runBuild(const DiagramConfig& cfg, const SuiteOptions& opt);
SuiteReport runSpherical(const DiagramConfig& cfg, const SuiteOptions& opt);
SuiteReport runBranching(const DiagramConfig& cfg, const SuiteOptions& opt);
SuiteReport runVerifyCrystal(const DiagramConfig& cfg, const SuiteOptions& opt);
SuiteReport runVerifyBased(const DiagramConfig& cfg, const SuiteOptions& opt);
SuiteReport runVerifyIntegral(const DiagramConfig& cfg, const SuiteOptions& opt);

// Writes the report files under opt.outDir (created if needed) when set.
void emitReport(const SuiteReport& rep, const SuiteOptions& opt, std::ostream& console);

// Stated crystal-limit condition of the rank-one theory (the published
// boundary), and the condition derived from the coproduct conventions of
// this library (they differ for |l| >= 2; see the verification reports).
bool statedLimitCondition(HermitianClass cls, int diagramRank, long l, long n);
bool derivedLimitCondition(HermitianClass cls, int diagramRank, long l, long n);

}  // namespace qsph
