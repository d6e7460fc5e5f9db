// stsrank: command-line front end.
//
// Exit codes: 0 success, 1 other library error, 2 usage, 3 unknown constant,
// 4 resource cap. Errors are written to stderr as {"error":{"kind","message"}}.

#include "stsrank/components.hpp"
#include "stsrank/composer.hpp"
#include "stsrank/config.hpp"
#include "stsrank/counting.hpp"
#include "stsrank/designs.hpp"
#include "stsrank/dual.hpp"
#include "stsrank/enumerator.hpp"
#include "stsrank/error.hpp"
#include "stsrank/geometry.hpp"
#include "stsrank/io.hpp"
#include "stsrank/iso.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

using namespace stsrank;
using io::Json;

namespace {

struct Globals {
    bool json = false;
    int threads = 0;
    std::string config;
    Limits limits;
};

struct SpecArgs {
    int p = 2;
    int n = 3;
    int t = 1;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--field,-p", p, "2 or 3")->required();
        cmd->add_option("--n", n)->required();
        cmd->add_option("--t", t)->required();
    }
    CodeSpec spec() const { return CodeSpec::make(p, n, t); }
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void print(const Globals& g, const Json& j, const std::string& human)
{
    if (g.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << human;
}

std::string big(const BigCount& x)
{
    return to_decimal(x);
}

std::unique_ptr<std::ostream> open_out(const std::string& path, bool append = false)
{
    auto f = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
    if (!*f)
        throw ParameterError("cannot open '" + path + "' for writing");
    return f;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ParameterError("cannot open '" + path + "'");
    return f;
}

// --in file.json (a design, or the first line of a JSONL file) or --classic name.
TripleSystem load_design(const std::string& in, const std::string& classic)
{
    if (!in.empty() == !classic.empty())
        throw UsageError("give exactly one of --in or --classic");
    if (!in.empty()) {
        auto f = open_in(in);
        std::stringstream buf;
        buf << f.rdbuf();
        const std::string text = buf.str();
        try {
            return io::decode_design(Json::parse(text));
        } catch (const nlohmann::json::parse_error&) {
            std::istringstream lines(text);
            const auto all = io::read_designs_jsonl(lines);
            if (all.empty())
                throw ParameterError("'" + in + "' holds no design");
            return all.front();
        }
    }
    if (classic == "fano")
        return classic::fano();
    if (classic == "ag2" || classic == "affine-plane")
        return classic::affine_plane_3();
    if (classic == "sts3")
        return TripleSystem(3, {{0, 1, 2}});
    const auto colon = classic.find(':');
    if (colon != std::string::npos) {
        const std::string kind = classic.substr(0, colon);
        const int dim = std::stoi(classic.substr(colon + 1));
        if (dim < 1 || dim > 8)
            throw ParameterError("classic dimension must be in [1, 8]");
        if (kind == "pg")
            return classic::projective_space(static_cast<unsigned>(dim));
        if (kind == "ag")
            return classic::affine_space(static_cast<unsigned>(dim));
    }
    throw UsageError("unknown classic design '" + classic + "' (fano, ag2, sts3, pg:D, ag:D)");
}

std::string matrix_text(const FieldMatrix& m)
{
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (auto x : m.row(r))
            out += static_cast<char>('0' + x);
        out += '\n';
    }
    return out;
}

struct Check {
    std::string name;
    std::string detail;
    bool passed = false;
    bool skipped = false;
};

int run_verify(const Globals& g, const CodeSpec& spec)
{
    std::vector<Check> checks;
    const int p = spec.prime();

    const auto h = build_parity_check(spec);
    const std::size_t hr = matrix_rank(h);
    checks.push_back({"parity-check rank", std::to_string(hr) + " = " + std::to_string(spec.checkRows()),
                      hr == spec.checkRows()});

    std::shared_ptr<const TripleSystem> design;
    try {
        design = weight3_design(spec, g.limits);
        const auto built = constructive_weight3_design(spec, g.limits);
        checks.push_back({"design: scan = constructive", std::to_string(design->size()) + " blocks",
                          *design == built});
        const auto gdd = verify_gdd(spec, g.limits);
        checks.push_back({"group divisible structure",
                          "same " + std::to_string(gdd.lambdaSameGroup) + ", cross " +
                              std::to_string(gdd.lambdaCrossGroup),
                          gdd.passed});
    } catch (const ResourceError& e) {
        checks.push_back({"weight-3 design", e.what(), false, true});
    }

    std::vector<TripleSystem> composed;
    try {
        enumerate_compositions(spec, EnumerationMode::Stream,
                               [&](std::uint64_t, const TripleSystem& s) { composed.push_back(s); }, g.limits);
        std::sort(composed.begin(), composed.end());
        BigCount formula = -1;
        std::string formulaText = "unknown";
        try {
            formula = formula_distinct(spec, g.limits);
            formulaText = big(formula);
        } catch (const UnknownConstantError&) {
        }
        checks.push_back({"composer count = formula",
                          std::to_string(composed.size()) + " vs " + formulaText,
                          BigCount(composed.size()) == formula});
        const bool distinct = std::adjacent_find(composed.begin(), composed.end()) == composed.end();
        checks.push_back({"composed systems distinct", "", distinct});
    } catch (const ResourceError& e) {
        checks.push_back({"composer stream", e.what(), false, true});
    }

    if (design && !composed.empty()) {
        try {
            std::vector<TripleSystem> found;
            exact_cover_sts(*design, [&](const TripleSystem& s) { found.push_back(s); }, g.limits);
            checks.push_back({"oracle set = composer set", std::to_string(found.size()) + " solutions",
                              found == composed});
        } catch (const ResourceError& e) {
            checks.push_back({"exact-cover oracle", e.what(), false, true});
        }

        // 2^n - 1 - n + t (binary) or 3^n - 1 - n + t (ternary)
        const std::size_t bound = spec.binary() ? spec.length() - spec.n() + spec.t()
                                                : spec.length() - 1 - spec.n() + spec.t();
        bool ranksOk = true, dualOk = true, roundTrip = true;
        std::size_t dualChecked = 0;
        for (const auto& s : composed) {
            const auto a = incidence_matrix(s, p);
            const std::size_t r = matrix_rank(a);
            ranksOk = ranksOk && r <= bound;
            if (s.points() - r >= 2) {
                try {
                    dualOk = dualOk && verify_dual_structure(a, g.limits, Exec::Serial).passed;
                    ++dualChecked;
                } catch (const ResourceError&) {
                }
            }
            roundTrip = roundTrip && compose(decompose_sts(s, spec, g.limits), spec) == s;
        }
        checks.push_back({"p-rank bound", "rank <= " + std::to_string(bound), ranksOk});
        checks.push_back({"dual constant weight", std::to_string(dualChecked) + " systems with corank >= 2",
                          dualOk});
        checks.push_back({"compose(decompose(S)) = S", "", roundTrip});
    }

    bool all = true;
    Json rows = Json::array();
    std::ostringstream human;
    human << "check                          result  detail\n";
    for (const auto& c : checks) {
        const std::string result = c.skipped ? "skip" : (c.passed ? "pass" : "FAIL");
        all = all && (c.passed || c.skipped);
        rows.push_back({{"check", c.name}, {"result", result}, {"detail", c.detail}});
        human << std::left << std::setw(31) << c.name << std::setw(8) << result << c.detail << '\n';
    }
    print(g, Json{{"spec", io::encode(spec)}, {"checks", rows}, {"passed", all}}, human.str());
    return all ? 0 : 1;
}

int error_exit(ErrorKind kind, const std::string& message, int code)
{
    Json e{{"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
    std::cerr << e.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    Globals g;
    CLI::App app{"Steiner triple systems of bounded p-rank: codes, composition, counting, isomorphism"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--threads", g.threads, "worker cap (default: all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--config", g.config, "key=value file overriding the caps");

    // code
    SpecArgs codeSpec;
    auto* code = app.add_subcommand("code", "print the parity-check matrix H_{n,t}");
    codeSpec.add_to(code);

    // rank
    std::string rankIn, rankClassic;
    int rankP = 2;
    auto* rank = app.add_subcommand("rank", "p-rank of an STS");
    rank->add_option("--in", rankIn, "design JSON (or JSONL, first line)");
    rank->add_option("--classic", rankClassic, "fano, ag2, sts3, pg:D, ag:D");
    rank->add_option("--p", rankP, "prime")->required();

    // design
    SpecArgs designSpec;
    auto* design = app.add_subcommand("design", "weight-3 design of C_{n,t}");
    designSpec.add_to(design);

    // inspect
    SpecArgs inspectSpec;
    auto* inspect = app.add_subcommand("inspect", "column partition, geometry and GDD report");
    inspectSpec.add_to(inspect);

    // enumerate
    SpecArgs enumSpec;
    std::string enumMode = "count", enumOut, enumCheckpoint;
    auto* enumerate = app.add_subcommand("enumerate", "all composed systems inside C_{n,t}");
    enumSpec.add_to(enumerate);
    enumerate->add_option("--mode", enumMode)->check(CLI::IsMember({"count", "stream"}));
    enumerate->add_option("--out", enumOut, "JSONL output (stream mode)");
    enumerate->add_option("--checkpoint", enumCheckpoint, "resume cursor file (stream mode)");

    // oracle
    SpecArgs oracleSpec;
    bool oracleCount = false;
    std::string oracleOut;
    auto* oracle = app.add_subcommand("oracle", "exact-cover search inside the weight-3 design");
    oracleSpec.add_to(oracle);
    oracle->add_flag("--count", oracleCount);
    oracle->add_option("--out", oracleOut, "JSONL output");

    // components
    std::string compKind, compOut;
    std::uint64_t compOrder = 0;
    bool compCount = false, compList = false;
    auto* components = app.add_subcommand("components", "N1 / N2 / N3 building blocks");
    components->add_option("--kind", compKind, "n1, n2 or n3")->required();
    components->add_option("--order", compOrder)->required();
    components->add_flag("--count", compCount);
    components->add_flag("--list", compList);
    components->add_option("--out", compOut, "JSONL output for --list");

    // formula
    std::string which;
    SpecArgs formulaSpec;
    bool refined = false;
    auto* formula = app.add_subcommand("formula", "closed-form counts and bounds");
    formula->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"s", "s-prime", "cl", "exact-t1", "bounds", "bounds-exact", "aut-code", "aut-upper"}));
    formula->add_option("--field,-p", formulaSpec.p)->required();
    formula->add_option("--n", formulaSpec.n)->required();
    formula->add_option("--t", formulaSpec.t, "ignored by cl and exact-t1");
    formula->add_flag("--refined", refined);

    // iso
    SpecArgs isoSpec;
    std::string isoIn, isoReport;
    auto* iso = app.add_subcommand("iso", "isomorphism classes and the mass formula");
    isoSpec.add_to(iso);
    iso->add_option("--in", isoIn, "JSONL systems")->required();
    iso->add_option("--report", isoReport, "write the full JSON report here");

    // verify
    SpecArgs verifySpec;
    auto* verify = app.add_subcommand("verify", "structure-theorem checks for one spec");
    verifySpec.add_to(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_exit(ErrorKind::Parameter, e.what(), 2);
    }

    try {
        if (!g.config.empty())
            g.limits = load_limits(g.config);
        if (g.threads > 0)
            omp_set_num_threads(g.threads);

        if (*code) {
            const auto h = build_parity_check(codeSpec.spec());
            print(g, io::encode(h), matrix_text(h));
        } else if (*rank) {
            const auto d = load_design(rankIn, rankClassic);
            const auto r = sts_rank(d, rankP);
            print(g, Json{{"v", d.points()}, {"p", rankP}, {"rank", r}}, std::to_string(r) + "\n");
        } else if (*design) {
            const auto d = weight3_design(designSpec.spec(), g.limits);
            const auto j = io::encode(*d);
            std::cout << j.dump(g.json ? 2 : -1) << '\n';
        } else if (*inspect) {
            const auto spec = inspectSpec.spec();
            const auto part = column_partition(spec);
            const auto geo = geometry_of(spec);
            const auto gdd = verify_gdd(spec, g.limits);
            Json j{{"spec", io::encode(spec)},
                   {"partition", io::encode(part)},
                   {"geometry", io::encode(geo)},
                   {"gdd", io::encode(gdd)}};
            std::ostringstream human;
            human << spec.label() << ": length " << spec.length() << ", T " << spec.T() << ", M " << spec.M()
                  << "\n"
                  << "zero columns " << part.zeroSet.size() << ", groups " << part.groups.size() << " of size "
                  << (part.groups.empty() ? 0 : part.groups[0].size()) << "\n"
                  << (geo.kind == GeometryKind::Projective2 ? "PG(" : "AG(") << geo.dimension << ","
                  << (geo.kind == GeometryKind::Projective2 ? 2 : 3) << "): " << geo.points.size() << " points, "
                  << geo.line_count() << " lines\n"
                  << "blocks: interior " << gdd.interiorBlocks << ", mixed " << gdd.mixedBlocks << ", transversal "
                  << gdd.transversalBlocks << "\n"
                  << "lambda same group " << gdd.lambdaSameGroup << ", cross group " << gdd.lambdaCrossGroup
                  << ", gdd " << (gdd.passed ? "pass" : "FAIL") << "\n";
            print(g, j, human.str());
            if (!gdd.passed)
                return 1;
        } else if (*enumerate) {
            const auto spec = enumSpec.spec();
            if (enumMode == "count") {
                const auto r = enumerate_compositions(spec, EnumerationMode::Count, {}, g.limits);
                print(g, Json{{"spec", io::encode(spec)}, {"mode", "count"}, {"count", big(r.count)}},
                      big(r.count) + "\n");
            } else {
                StreamOptions opts;
                if (!enumCheckpoint.empty() && std::filesystem::exists(enumCheckpoint)) {
                    auto f = open_in(enumCheckpoint);
                    std::string token;
                    f >> token;
                    opts.startOrdinal = static_cast<std::uint64_t>(parse_decimal(token));
                }
                std::unique_ptr<std::ostream> file;
                if (!enumOut.empty())
                    file = open_out(enumOut, opts.startOrdinal > 0);
                std::ostream& out = file ? *file : std::cout;
                auto save = [&](std::uint64_t next) {
                    if (enumCheckpoint.empty())
                        return;
                    out.flush();
                    std::ofstream(enumCheckpoint, std::ios::trunc) << next << '\n';
                };
                const auto r = enumerate_compositions(
                    spec, EnumerationMode::Stream,
                    [&](std::uint64_t ordinal, const TripleSystem& s) {
                        io::write_jsonl(out, s);
                        if ((ordinal + 1) % 4096 == 0)
                            save(ordinal + 1);
                    },
                    g.limits, opts);
                out.flush();
                save(static_cast<std::uint64_t>(r.count));
                if (file)
                    print(g, Json{{"spec", io::encode(spec)}, {"mode", "stream"}, {"count", big(r.count)},
                                  {"emitted", r.emitted}},
                          big(r.count) + "\n");
            }
        } else if (*oracle) {
            const auto spec = oracleSpec.spec();
            const auto d = weight3_design(spec, g.limits);
            std::unique_ptr<std::ostream> file;
            if (!oracleOut.empty())
                file = open_out(oracleOut);
            const auto count = exact_cover_sts(
                *d, file ? std::function<void(const TripleSystem&)>([&](const TripleSystem& s) { io::write_jsonl(*file, s); })
                         : std::function<void(const TripleSystem&)>{},
                g.limits);
            print(g, Json{{"spec", io::encode(spec)}, {"count", count}}, std::to_string(count) + "\n");
        } else if (*components) {
            const auto kind = parse_count_kind(compKind);
            if (compList) {
                std::unique_ptr<std::ostream> file;
                if (!compOut.empty())
                    file = open_out(compOut);
                std::ostream& out = file ? *file : std::cout;
                std::uint64_t n = 0;
                if (kind == CountKind::N1)
                    n = enumerate_all_sts(static_cast<Point>(compOrder),
                                          [&](const TripleSystem& s) { io::write_jsonl(out, s); }, g.limits);
                else if (kind == CountKind::N2)
                    n = enumerate_one_factorizations(static_cast<Point>(compOrder), [&](const OneFactorization& f) {
                        out << io::encode(f).dump() << '\n';
                    });
                else
                    n = enumerate_transversal_designs(static_cast<unsigned>(compOrder), [&](const LatinSquare& s) {
                        out << io::encode(s).dump() << '\n';
                    });
                if (file)
                    print(g, Json{{"kind", to_string(kind)}, {"order", compOrder}, {"count", std::to_string(n)}},
                          std::to_string(n) + "\n");
            } else {
                const auto c = catalog_count(kind, compOrder, g.limits);
                print(g, io::encode(c), big(c.value) + "\n");
            }
        } else if (*formula) {
            const int p = formulaSpec.p;
            if (p != 2 && p != 3)
                throw UsageError("--field must be 2 or 3");
            const Field field = static_cast<Field>(p);
            auto spec = [&] { return formulaSpec.spec(); };
            Json j{{"which", which}, {"field", p}, {"n", formulaSpec.n}};
            if (which != "cl" && which != "exact-t1")
                j["t"] = formulaSpec.t;
            if (which == "s" || which == "s-prime") {
                if ((which == "s") != (p == 2))
                    throw UsageError("s is the binary count and s-prime the ternary one");
                j["value"] = big(formula_distinct(spec(), g.limits));
            } else if (which == "cl") {
                j["value"] = big(formula_classical(field, static_cast<unsigned>(formulaSpec.n)));
            } else if (which == "exact-t1") {
                j["value"] = big(formula_exact_rank_t1(field, static_cast<unsigned>(formulaSpec.n), g.limits));
            } else if (which == "aut-code") {
                j["value"] = big(aut_code_order(spec()));
            } else if (which == "aut-upper") {
                j["value"] = big(aut_sts_upper(spec()));
            } else if (which == "bounds-exact") {
                j["refined"] = refined;
                j["value"] = big(iso_bounds_exact_rank(spec(), refined, g.limits));
            } else {
                const auto report = io::encode(iso_bounds(spec(), g.limits));
                // Bounds always print as a JSON report.
                std::cout << report.dump(2) << '\n';
                return 0;
            }
            print(g, j, j["value"].get<std::string>() + "\n");
        } else if (*iso) {
            const auto spec = isoSpec.spec();
            auto f = open_in(isoIn);
            const auto systems = io::read_designs_jsonl(f);
            const auto report = iso_classes(systems, spec, g.limits);
            const auto j = io::encode(report);
            if (!isoReport.empty())
                *open_out(isoReport) << j.dump(2) << '\n';
            std::ostringstream human;
            human << "systems " << big(report.totalDistinct) << ", classes " << report.classes.size()
                  << ", |Aut C| " << big(report.autCode) << ", mass " << to_string(report.massSum) << " ("
                  << (report.massBalanced ? "balanced" : "UNBALANCED") << ")\n";
            human << "class  multiplicity  |Aut S|  |Aut S ∩ Aut C|  rank\n";
            for (std::size_t i = 0; i < report.classes.size(); ++i) {
                const auto& c = report.classes[i];
                human << std::left << std::setw(7) << i << std::setw(14) << c.multiplicity << std::setw(9)
                      << big(c.autOrder) << std::setw(17) << big(c.stabilizerOrder) << c.rank << '\n';
            }
            print(g, j, human.str());
            if (!report.massBalanced)
                return 1;
        } else if (*verify) {
            return run_verify(g, verifySpec.spec());
        }
    } catch (const UsageError& e) {
        return error_exit(ErrorKind::Parameter, e.what(), 2);
    } catch (const ParameterError& e) {
        return error_exit(e.kind(), e.what(), 2);
    } catch (const UnknownConstantError& e) {
        return error_exit(e.kind(), e.what(), 3);
    } catch (const ResourceError& e) {
        return error_exit(e.kind(), e.what(), 4);
    } catch (const Error& e) {
        return error_exit(e.kind(), e.what(), 1);
    } catch (const std::exception& e) {
        return error_exit(ErrorKind::Consistency, e.what(), 1);
    }
    return 0;
}
