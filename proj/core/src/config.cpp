#include "qsph/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qsph {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<int> parseIntList(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    for (char ch : s + " ") {
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
            cur += ch;
        } else if (!cur.empty()) {
            out.push_back(std::stoi(cur));
            cur.clear();
        }
    }
    return out;
}

std::string joinInts(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) os << " ";
        os << v[k];
    }
    return os.str();
}

}  // namespace

DiagramConfig DiagramConfig::parse(const std::string& text) {
    DiagramConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("bad config line: " + line);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key == "type") {
            cfg.type = val;
        } else if (key == "cartan") {
            cfg.cartan.clear();
            std::string row;
            for (char ch : val + "/") {
                if (ch == '/') {
                    auto r = parseIntList(row);
                    if (!r.empty()) cfg.cartan.push_back(r);
                    row.clear();
                } else {
                    row += ch;
                }
            }
        } else if (key == "symmetrizer") {
            cfg.symmetrizer = parseIntList(val);
        } else if (key == "black") {
            cfg.black = parseIntList(val);
        } else if (key == "tau") {
            cfg.tauCycles.clear();
            // cycles like (1 3)(2 4)
            std::vector<int> cur;
            bool open = false;
            std::string num;
            auto flushNum = [&] {
                if (!num.empty()) {
                    cur.push_back(std::stoi(num));
                    num.clear();
                }
            };
            for (char ch : val) {
                if (ch == '(') {
                    open = true;
                    cur.clear();
                } else if (ch == ')') {
                    flushNum();
                    if (cur.size() != 2) throw ConfigError("tau cycles must be transpositions");
                    cfg.tauCycles.emplace_back(cur[0], cur[1]);
                    open = false;
                } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                    num += ch;
                } else {
                    flushNum();
                }
            }
            if (open) throw ConfigError("unterminated tau cycle");
        } else if (key == "n") {
            cfg.n = std::stol(val);
        } else if (key == "order") {
            cfg.order = parseIntList(val);
        } else if (key == "lambda") {
            cfg.lambdas.clear();
            std::string part;
            for (char ch : val + ";") {
                if (ch == ';') {
                    auto r = parseIntList(part);
                    if (!r.empty()) cfg.lambdas.push_back(Weight(r.begin(), r.end()));
                    part.clear();
                } else {
                    part += ch;
                }
            }
        } else if (key == "lmin") {
            cfg.lmin = std::stol(val);
            cfg.hasLRange = true;
        } else if (key == "lmax") {
            cfg.lmax = std::stol(val);
            cfg.hasLRange = true;
        } else if (key == "dimcap") {
            cfg.dimCap = std::stol(val);
        } else if (key.rfind("c.", 0) == 0) {
            cfg.cOverride[std::stoi(key.substr(2))] = LaurentPoly::parse(val);
        } else if (key.rfind("s.", 0) == 0) {
            cfg.sOverride[std::stoi(key.substr(2))] = LaurentPoly::parse(val);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    if (cfg.type.empty() && cfg.cartan.empty()) throw ConfigError("config needs type or cartan");
    return cfg;
}

DiagramConfig DiagramConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

std::string DiagramConfig::serialize() const {
    std::ostringstream os;
    if (!type.empty()) {
        os << "type = " << type << "\n";
    } else {
        os << "cartan = ";
        for (size_t r = 0; r < cartan.size(); ++r) {
            if (r) os << " / ";
            os << joinInts(cartan[r]);
        }
        os << "\n";
        os << "symmetrizer = " << joinInts(symmetrizer) << "\n";
    }
    os << "black =" << (black.empty() ? "" : " " + joinInts(black)) << "\n";
    os << "tau =";
    for (const auto& [a, b] : tauCycles) os << " (" << a << " " << b << ")";
    os << "\n";
    os << "n = " << n << "\n";
    if (!order.empty()) os << "order = " << joinInts(order) << "\n";
    if (!lambdas.empty()) {
        os << "lambda = ";
        for (size_t k = 0; k < lambdas.size(); ++k) {
            if (k) os << " ; ";
            os << joinInts(std::vector<int>(lambdas[k].begin(), lambdas[k].end()));
        }
        os << "\n";
    }
    if (hasLRange) {
        os << "lmin = " << lmin << "\n";
        os << "lmax = " << lmax << "\n";
    }
    os << "dimcap = " << dimCap << "\n";
    for (const auto& [node, p] : cOverride) os << "c." << node << " = " << p.str() << "\n";
    for (const auto& [node, p] : sOverride) os << "s." << node << " = " << p.str() << "\n";
    return os.str();
}

CartanDatum DiagramConfig::buildCartan() const {
    if (!type.empty()) return CartanDatum::fromType(type);
    auto sym = symmetrizer;
    if (sym.empty()) sym.assign(cartan.size(), 1);
    return CartanDatum(cartan, sym);
}

std::shared_ptr<AdmissiblePair> DiagramConfig::buildPair() const {
    CartanDatum cd = buildCartan();
    std::set<int> blacks;
    for (int b : black) {
        if (b < 1 || b > cd.rank()) throw ConfigError("black node out of range");
        blacks.insert(b - 1);
    }
    std::vector<int> tau(static_cast<size_t>(cd.rank()));
    for (int i = 0; i < cd.rank(); ++i) tau[static_cast<size_t>(i)] = i;
    for (const auto& [a, b] : tauCycles) {
        if (a < 1 || a > cd.rank() || b < 1 || b > cd.rank())
            throw ConfigError("tau node out of range");
        tau[static_cast<size_t>(a - 1)] = b - 1;
        tau[static_cast<size_t>(b - 1)] = a - 1;
    }
    auto pair = std::make_shared<AdmissiblePair>(cd, blacks, tau);
    if (!order.empty()) {
        if (static_cast<int>(order.size()) != cd.rank()) throw ConfigError("order override size");
        std::vector<int> rank(static_cast<size_t>(cd.rank()));
        for (size_t k = 0; k < order.size(); ++k) {
            int node = order[k] - 1;
            if (node < 0 || node >= cd.rank()) throw ConfigError("order override node range");
            rank[static_cast<size_t>(node)] = static_cast<int>(k);
        }
        pair->setNodeOrder(rank);
    }
    return pair;
}

QSPParameters DiagramConfig::buildParameters(const AdmissiblePair& pair) const {
    QSPParameters par = defaultParameters(pair, n);
    for (const auto& [node, p] : cOverride) {
        par.c[node - 1] = RatFun::fromLaurent(p);
        par.note = "unsupported-by-paper parameter override";
    }
    for (const auto& [node, p] : sOverride) {
        par.s[node - 1] = RatFun::fromLaurent(p);
        par.note = "unsupported-by-paper parameter override";
    }
    return par;
}

// -------------------------------------------------------------------- report

std::string SuiteReport::markdown() const {
    std::ostringstream os;
    os << "# suite: " << suite << "\n\n";
    os << "|";
    for (const auto& c : columns) os << " " << c << " |";
    os << "\n|";
    for (size_t k = 0; k < columns.size(); ++k) os << " --- |";
    os << "\n";
    for (const auto& r : rows) {
        os << "|";
        for (const auto& c : r.cells) os << " " << c << " |";
        os << "\n";
    }
    os << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string SuiteReport::json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["columns"] = columns;
    auto rowsArr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json jr;
        jr["cells"] = r.cells;
        jr["predicted_pass"] = r.predictedPass;
        jr["passed"] = r.passed;
        jr["undecided"] = r.undecided;
        rowsArr.push_back(jr);
    }
    j["rows"] = rowsArr;
    j["warnings"] = warnings;
    j["failures"] = failures();
    return j.dump(2) + "\n";
}

bool SuiteReport::predictedFailure() const {
    for (const auto& r : rows)
        if (r.predictedPass && !r.passed && !r.undecided) return true;
    return false;
}

int SuiteReport::failures() const {
    int c = 0;
    for (const auto& r : rows)
        if (!r.passed) ++c;
    return c;
}

void emitReport(const SuiteReport& rep, const SuiteOptions& opt, std::ostream& console) {
    int pass = 0, fail = 0, und = 0;
    for (const auto& r : rep.rows) {
        if (r.undecided) ++und;
        else if (r.passed) ++pass;
        else ++fail;
    }
    console << "[" << rep.suite << "] rows: " << rep.rows.size() << " pass: " << pass
            << " fail: " << fail << " undecided: " << und << "\n";
    for (const auto& w : rep.warnings) console << "  warning: " << w << "\n";
    if (!opt.outDir.empty()) {
        std::filesystem::create_directories(opt.outDir);
        if (opt.format == "md" || opt.format == "both") {
            std::ofstream f(opt.outDir + "/" + rep.suite + ".md");
            f << rep.markdown();
        }
        if (opt.format == "json" || opt.format == "both") {
            std::ofstream f(opt.outDir + "/" + rep.suite + ".json");
            f << rep.json();
        }
    }
}

// -------------------------------------------------------------------- suites

bool statedLimitCondition(HermitianClass cls, int diagramRank, long l, long n) {
    if (l == 0) return true;
    if (cls == HermitianClass::AIIIb) return l > 0 ? n > 0 : 0 > n;
    if (cls == HermitianClass::AIIIa) return l > 0 ? n > 0 : diagramRank - 1 > n;
    return false;
}

bool derivedLimitCondition(HermitianClass cls, int diagramRank, long l, long n) {
    if (l == 0) return true;
    // Each tensor factor of the bottom chain must have a good limit; the
    // family label drifts by -e per step under the coproduct conventions
    // fixed here, which tightens the bound with |l|.
    if (cls == HermitianClass::AIIIb) return l > 0 ? n >= l : n <= l;
    if (cls == HermitianClass::AIIIa)
        return l > 0 ? n >= l : n <= diagramRank - 1 + l;
    return false;
}

namespace {

std::string decisionStr(Decision d) {
    switch (d) {
        case Decision::Yes: return "yes";
        case Decision::No: return "no";
        default: return "undecided";
    }
}

SuiteOptions effective(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions e = opt;
    if (!opt.hasN) e.nOverride = cfg.n;
    e.hasN = true;
    if (cfg.hasLRange && opt.lmin == -3 && opt.lmax == 3) {
        e.lmin = cfg.lmin;
        e.lmax = cfg.lmax;
    }
    return e;
}

QSPParameters paramsFor(const DiagramConfig& cfg, const AdmissiblePair& pair, long n) {
    DiagramConfig c2 = cfg;
    c2.n = n;
    return c2.buildParameters(pair);
}

// Spherical-weight sweep for the verification suites: the configured list
// when present, else {0} plus the basic spherical combination.
std::vector<Weight> sphericalSweep(const DiagramConfig& cfg, const AdmissiblePair& pair) {
    std::vector<Weight> out;
    if (!cfg.lambdas.empty()) {
        for (const auto& l : cfg.lambdas)
            if (pair.cartan().isDominant(l) && pair.isSpherical(l)) out.push_back(l);
        return out;
    }
    int nrank = pair.cartan().rank();
    out.push_back(Weight(static_cast<size_t>(nrank), 0));
    auto h = pair.classifyHermitian();
    if (h) {
        int i = pair.otimesNode();
        Weight w(static_cast<size_t>(nrank), 0);
        w[static_cast<size_t>(i)] += 1;
        w[static_cast<size_t>(pair.tau(i))] += 1;
        if (pair.isSpherical(w)) out.push_back(w);
    }
    return out;
}

}  // namespace

SuiteReport runValidate(const DiagramConfig& cfg) {
    SuiteReport rep;
    rep.suite = "validate";
    rep.columns = {"item", "value", "status"};
    try {
        auto pair = cfg.buildPair();
        rep.rows.push_back({{"admissible", "yes", "ok"}, true, true, false});
        auto h = pair->classifyHermitian();
        if (h) {
            std::ostringstream os;
            os << hermitianClassName(h->cls) << " orbit {";
            for (size_t k = 0; k < h->orbit.size(); ++k)
                os << (k ? "," : "") << h->orbit[k] + 1;
            os << "}";
            rep.rows.push_back({{"hermitian", os.str(), "ok"}, true, true, false});
            rep.rows.push_back({{"restricted-system",
                                 pair->isReducedRestricted() ? "reduced" : "nonreduced", "ok"},
                                true, true, false});
        } else {
            rep.rows.push_back({{"hermitian", "no", "ok"}, true, true, false});
        }
        std::ostringstream yi;
        yi << pair->iCoweightBasis().size();
        rep.rows.push_back({{"iweight-rank", yi.str(), "ok"}, true, true, false});
    } catch (const AdmissibleError& e) {
        rep.rows.push_back({{"admissible", "no", e.what()}, true, false, false});
    }
    return rep;
}

SuiteReport runBuild(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "build";
    rep.columns = {"lambda", "dim", "relations", "file"};
    auto pair = cfg.buildPair();
    std::vector<Weight> lambdas = cfg.lambdas;
    if (lambdas.empty())
        for (int i = 0; i < pair->cartan().rank(); ++i)
            lambdas.push_back(pair->cartan().fundamentalWeight(i));
    for (const auto& lambda : lambdas) {
        try {
            auto mod = WeightModule::buildSimple(pair->cartan(), lambda, eff.dimCap);
            bool rel = mod->checkRelations();
            std::string file = "-";
            if (!eff.outDir.empty()) {
                std::filesystem::create_directories(eff.outDir);
                std::ostringstream name;
                name << "module";
                for (int x : lambda) name << "_" << x;
                name << ".txt";
                std::ofstream f(eff.outDir + "/" + name.str());
                mod->serialize(f);
                file = name.str();
            }
            rep.rows.push_back({{weightStr(lambda), std::to_string(mod->dim()),
                                 rel ? "ok" : "FAIL", file},
                                true, rel, false});
        } catch (const DimensionCapExceeded&) {
            rep.rows.push_back({{weightStr(lambda), "-", "skipped (dim cap)", "-"}, true, true, true});
        }
    }
    return rep;
}

SuiteReport runSpherical(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "spherical";
    rep.columns = {"l", "n", "lambda", "multiplicity", "vector"};
    auto pair = cfg.buildPair();
    QSPParameters par = paramsFor(cfg, *pair, eff.nOverride);
    for (long l = eff.lmin; l <= eff.lmax; ++l) {
        try {
            BottomVector bv = bottomVector(pair, par, l, eff.dimCap);
            std::ostringstream vec;
            for (size_t k = 0; k < bv.cert.f.size(); ++k) {
                if (k) vec << ", ";
                vec << bv.cert.f[k].second.laurentStr();
            }
            rep.rows.push_back({{std::to_string(l), std::to_string(par.n),
                                 weightStr(bv.cert.lambda), "1", vec.str()},
                                true, true, false});
        } catch (const DimensionCapExceeded&) {
            rep.rows.push_back({{std::to_string(l), std::to_string(par.n), "-", "-",
                                 "skipped (dim cap)"},
                                true, true, true});
        }
    }
    return rep;
}

SuiteReport runBranching(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "branching";
    rep.columns = {"lambda", "l", "multiplicity", "predicted", "verdict"};
    auto pair = cfg.buildPair();
    QSPParameters par = paramsFor(cfg, *pair, eff.nOverride);
    std::vector<Weight> lambdas =
        cfg.lambdas.empty() ? dominantWeightsUpTo(pair->cartan(), eff.dimCap) : cfg.lambdas;
    auto cells = branchingTable(*pair, par, lambdas, eff.lmin, eff.lmax, eff.dimCap, eff.jobs);
    for (const auto& c : cells) {
        if (c.skipped) {
            rep.rows.push_back({{weightStr(c.lambda), std::to_string(c.l), "-", "-",
                                 "skipped (dim cap)"},
                                true, true, true});
            continue;
        }
        rep.rows.push_back({{weightStr(c.lambda), std::to_string(c.l),
                             std::to_string(c.multiplicity), c.predicted ? "1" : "0",
                             c.match ? "ok" : "MISMATCH"},
                            true, c.match, false});
    }
    return rep;
}

SuiteReport runVerifyCrystal(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "verify-crystal";
    rep.columns = {"l", "n", "in-lattice", "limit-highest", "stated-condition", "derived-condition",
                   "verdict"};
    auto pair = cfg.buildPair();
    auto h = pair->classifyHermitian();
    if (!h) {
        rep.warnings.push_back("diagram is not of Hermitian type; nothing to verify");
        return rep;
    }
    QSPParameters par = paramsFor(cfg, *pair, eff.nOverride);
    for (long l = eff.lmin; l <= eff.lmax; ++l) {
        BottomVector bv = bottomVector(pair, par, l, eff.dimCap);
        CrystalLimitReport r = crystalLimitCheck(bv.cert);
        bool stated = statedLimitCondition(h->cls, pair->cartan().rank(), l, par.n);
        bool derived = derivedLimitCondition(h->cls, pair->cartan().rank(), l, par.n);
        bool match = r.limitIsHighest == stated;
        rep.rows.push_back({{std::to_string(l), std::to_string(par.n),
                             r.inLattice ? "yes" : "no", r.limitIsHighest ? "yes" : "no",
                             stated ? "pass" : "fail", derived ? "pass" : "fail",
                             match ? "ok" : "MISMATCH"},
                            true, match, false});
        if (r.limitIsHighest != derived)
            rep.warnings.push_back("derived condition mismatch at l=" + std::to_string(l));
    }
    return rep;
}

SuiteReport runVerifyBased(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "verify-based";
    rep.columns = {"lambda", "l", "n", "(i)", "(ii)", "(iii)", "(iv)", "verdict"};
    auto pair = cfg.buildPair();
    auto h = pair->classifyHermitian();
    if (!h) {
        rep.warnings.push_back("diagram is not of Hermitian type; nothing to verify");
        return rep;
    }
    QSPParameters par = paramsFor(cfg, *pair, eff.nOverride);
    for (const Weight& lambda : sphericalSweep(cfg, *pair)) {
        for (long l = eff.lmin; l <= eff.lmax; ++l) {
            Weight ambient = weightAdd(pair->muOf(l), lambda);
            std::shared_ptr<const WeightModule> mod;
            try {
                mod = WeightModule::buildSimple(pair->cartan(), ambient, eff.dimCap);
            } catch (const DimensionCapExceeded&) {
                rep.rows.push_back({{weightStr(ambient), std::to_string(l), std::to_string(par.n),
                                     "-", "-", "-", "-", "skipped (dim cap)"},
                                    true, true, true});
                continue;
            }
            CoidealAction action(mod, pair, par);
            Character chi = characterChi(*pair, par, l);
            SphericalSolution sol = solveSpherical(action, chi);
            if (sol.multiplicity != 1) {
                rep.rows.push_back({{weightStr(ambient), std::to_string(l), std::to_string(par.n),
                                     "-", "-", "-", "-",
                                     "multiplicity " + std::to_string(sol.multiplicity)},
                                    false, false, false});
                continue;
            }
            SphericalCertificate cert{ambient, l, par.n, 1, sol.vectors[0], mod, pair, par};
            CrystalLattice lat(mod);
            IntegralForm form(mod);
            PsiInvolution psi(action);
            if (!psi.verified()) {
                rep.rows.push_back({{weightStr(ambient), std::to_string(l), std::to_string(par.n),
                                     "-", "-", "-", "-", "psi: " + psi.failure()},
                                    true, false, false});
                continue;
            }
            BasedMorphismReport r = basedMorphismCheck(cert, lat, form, psi);
            bool stated = statedLimitCondition(h->cls, pair->cartan().rank(), l, par.n);
            rep.rows.push_back({{weightStr(ambient), std::to_string(l), std::to_string(par.n),
                                 r.latticeToLattice ? "pass" : "fail",
                                 r.aFormToAForm ? "pass" : "fail",
                                 r.intertwinesPsi ? "pass" : "fail",
                                 r.injectiveAtInfinity ? "pass" : "fail",
                                 r.all() ? "ok" : ("failing: " + r.failing())},
                                stated, r.all(), false});
        }
    }
    return rep;
}

SuiteReport runVerifyIntegral(const DiagramConfig& cfg, const SuiteOptions& opt) {
    SuiteOptions eff = effective(cfg, opt);
    SuiteReport rep;
    rep.suite = "verify-integral";
    rep.columns = {"lambda", "l", "n", "dual", "integral", "route", "verdict"};
    auto pair = cfg.buildPair();
    auto h = pair->classifyHermitian();
    if (!h) {
        rep.warnings.push_back("diagram is not of Hermitian type; nothing to verify");
        return rep;
    }
    QSPParameters par = paramsFor(cfg, *pair, eff.nOverride);
    for (long l = eff.lmin; l <= eff.lmax; ++l) {
        BottomVector bv = bottomVector(pair, par, l, eff.dimCap);
        IntegralForm form(bv.cert.module);
        bool dual = dualIntegralCertify(bv.cert, form);
        IntegralReport ir = integralCertify(bv.cert, form);
        bool pass = dual && ir.member == Decision::Yes;
        bool undecided = ir.member == Decision::Undecided;
        rep.rows.push_back({{weightStr(bv.cert.lambda), std::to_string(l), std::to_string(par.n),
                             dual ? "pass" : "fail", decisionStr(ir.member),
                             ir.viaTensorRoute ? "tensor" : "quasi-minuscule",
                             pass ? "ok" : (undecided ? "undecided" : "FAIL")},
                            true, pass || undecided, undecided});
    }
    return rep;
}

}  // namespace qsph
