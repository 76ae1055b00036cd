// Command-line front end: construct / analyze / decode / verify / simulate,
// plus manifest-driven reruns. Primary outputs (alist, CSV, JSON) are
// deterministic given (seed, parameters) regardless of worker count; wall
// times live only in the manifest.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldpc/ldpc.hpp"

using nlohmann::json;

namespace {

// Exit codes, one per error category.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFormat = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitVerifyFailures = 6;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("read failed on " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out.good()) throw IoError("write failed on " + path);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001B3ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setfill('0') << std::setw(16) << h;
    return ss.str();
}

std::string fmt_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LDPC_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

ldpc::TannerGraph load_code(const std::string& path) {
    auto text = read_file(path);
    try {
        return ldpc::read_alist(text);
    } catch (const std::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_manifest(const std::string& subcommand, const json& params,
                    const std::string& digest, double wall_seconds,
                    const std::string& path) {
    json m;
    m["subcommand"] = subcommand;
    m["params"] = params;
    m["code_digest"] = digest;
    m["tool_version"] = ldpc::kVersion;
    m["wall_time_seconds"] = wall_seconds;
    write_file(path, m.dump(2) + "\n");
}

std::string default_manifest_path(const json& params) {
    if (params.contains("manifest") && !params["manifest"].get<std::string>().empty())
        return params["manifest"].get<std::string>();
    return params["out"].get<std::string>() + ".manifest.json";
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---- construct ------------------------------------------------------------

json log_to_jsonl_records(const ldpc::ConstructionLog& log) {
    json records = json::array();
    for (const auto& d : log.decisions)
        records.push_back({{"seq", d.seq},
                           {"kind", "decision"},
                           {"variable", d.variable},
                           {"k", d.k},
                           {"chosen_check", d.chosen_check},
                           {"candidate_count", d.candidate_count},
                           {"rejected", d.rejected}});
    for (const auto& r : log.ripups)
        records.push_back({{"seq", r.seq},
                           {"kind", "ripup"},
                           {"blocked_variable", r.blocked_variable},
                           {"ripped_variable", r.ripped_variable},
                           {"removed_checks", r.removed_checks}});
    for (const auto& r : log.repairs)
        records.push_back({{"seq", r.seq},
                           {"kind", "repair"},
                           {"variable", r.variable},
                           {"removed_check", r.removed_check},
                           {"added_check", r.added_check},
                           {"codeword", r.codeword}});
    std::sort(records.begin(), records.end(),
              [](const json& a, const json& b) { return a["seq"] < b["seq"]; });
    return records;
}

int run_construct(const json& p) {
    Timer timer;
    ldpc::ConstructionParams cp;
    cp.n = p["n"];
    cp.m = p["m"];
    cp.gamma = p["gamma"];
    cp.max_check_degree = p["max_check_degree"];
    cp.tree_depth = p["tree_depth"];
    cp.rng_seed = p["seed"].get<std::uint64_t>();
    cp.randomize = p["randomize"];
    cp.avoid_53 = p["avoid_53"];

    ldpc::TannerGraph g(0, 0);
    ldpc::ConstructionLog log;
    try {
        ldpc::check_feasible(cp);
        std::tie(g, log) = ldpc::peg_construct(cp);
        if (p["repair"].get<bool>())
            std::tie(g, log) = ldpc::repair_weight8(std::move(g), cp, log);
    } catch (const ldpc::CandidateExhausted& e) {
        throw InfeasibleError(e.what());
    } catch (const ldpc::RepairFailed& e) {
        throw InfeasibleError(e.what());
    } catch (const std::invalid_argument& e) {
        throw InfeasibleError(e.what());
    }

    auto alist = ldpc::write_alist(g);
    write_file(p["out"], alist);
    if (p.contains("log") && !p["log"].get<std::string>().empty()) {
        std::ostringstream lines;
        for (const auto& rec : log_to_jsonl_records(log)) lines << rec.dump() << "\n";
        write_file(p["log"], lines.str());
    }
    write_manifest("construct", p, fnv1a_hex(alist), timer.seconds(),
                   default_manifest_path(p));

    // Degree histogram, reported for inspection.
    std::map<std::size_t, int> hist;
    for (int c = 0; c < g.m; ++c) ++hist[g.chk_degree(c)];
    std::cerr << "constructed n=" << g.n << " m=" << g.m << " girth=" << ldpc::girth(g)
              << " check-degree histogram:";
    for (auto [d, count] : hist) std::cerr << " " << d << "x" << count;
    std::cerr << "\n";
    return kExitOk;
}

// ---- analyze --------------------------------------------------------------

std::string join_support(const std::vector<int>& vars) {
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(vars[i]);
    }
    return s;
}

int run_analyze(const json& p) {
    Timer timer;
    auto g = load_code(p["code"]);
    bool with_critical = p["critical_numbers"];

    std::ostringstream csv;
    csv << "type,support,c_count,cond_a,cond_b,critical_number\n";
    auto row = [&](const std::string& type, const std::vector<int>& vars) {
        auto rep = ldpc::classify_subset(g, vars);
        csv << type << "," << join_support(rep.vars) << "," << rep.c_count() << ","
            << (rep.cond_a ? 1 : 0) << "," << (rep.cond_b ? 1 : 0) << ",";
        if (with_critical) {
            auto cn = ldpc::critical_number(g, rep.vars);
            if (cn.found) csv << cn.value;
        }
        csv << "\n";
    };

    for (const auto& t : ldpc::find_three_three(g)) row("(3,3)", {t[0], t[1], t[2]});
    for (const auto& rep : ldpc::find_53_structures(g)) row("(5,3)", rep.vars);
    for (const auto& s : ldpc::find_80_codewords(g).supports) row("(8,0)", s);

    write_file(p["out"], csv.str());
    write_manifest("analyze", p, fnv1a_hex(ldpc::write_alist(g)), timer.seconds(),
                   default_manifest_path(p));
    return kExitOk;
}

// ---- decode ---------------------------------------------------------------

int run_decode(const json& p) {
    Timer timer;
    auto g = load_code(p["code"]);
    auto word_text = read_file(p["word"]);
    std::vector<std::uint8_t> word;
    std::istringstream ws(word_text);
    int bit;
    while (ws >> bit) {
        if (bit != 0 && bit != 1) throw FormatError("word file: bits must be 0 or 1");
        word.push_back(static_cast<std::uint8_t>(bit));
    }
    if (static_cast<int>(word.size()) != g.n)
        throw FormatError("word file: got " + std::to_string(word.size()) +
                          " bits, code length is " + std::to_string(g.n));

    ldpc::DecoderConfig cfg;
    cfg.max_iterations = p["max_iterations"];
    std::string rule = p["rule"];
    cfg.decision_rule = rule == "B" ? ldpc::DecisionRule::B : ldpc::DecisionRule::A;

    auto outcome = ldpc::gallager_a_decode(g, word, cfg);
    std::ostringstream out;
    out << "status ";
    switch (outcome.status) {
        case ldpc::DecodeStatus::Converged: out << "converged"; break;
        case ldpc::DecodeStatus::FixedPoint: out << "fixed-point"; break;
        case ldpc::DecodeStatus::FailedMaxIter: out << "max-iterations"; break;
    }
    out << "\niterations " << outcome.iterations_used << "\noutput ";
    for (auto b : outcome.output) out << static_cast<int>(b);
    out << "\nresidual_support";
    for (int v : outcome.residual_error_support) out << " " << v;
    out << "\n";

    write_file(p["out"], out.str());
    write_manifest("decode", p, fnv1a_hex(ldpc::write_alist(g)), timer.seconds(),
                   default_manifest_path(p));
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const json& p) {
    Timer timer;
    auto g = load_code(p["code"]);
    ldpc::DecoderConfig cfg;
    cfg.max_iterations = p["max_iterations"];
    int threads = resolve_threads(p["threads"]);

    ldpc::VerifyReport rep;
    try {
        rep = ldpc::exhaustive_verify(g, p["t"], cfg, p["budget"].get<std::uint64_t>(),
                                      threads);
    } catch (const std::invalid_argument& e) {
        throw InfeasibleError(e.what());
    }

    json report;
    report["t"] = rep.t;
    report["patterns_checked"] = rep.patterns_checked;
    report["failures"] = rep.failures;
    write_file(p["out"], report.dump(2) + "\n");
    write_manifest("verify", p, fnv1a_hex(ldpc::write_alist(g)), timer.seconds(),
                   default_manifest_path(p));
    return rep.failures.empty() ? kExitOk : kExitVerifyFailures;
}

// ---- simulate -------------------------------------------------------------

int run_simulate(const json& p) {
    Timer timer;
    auto g = load_code(p["code"]);
    ldpc::StopRule stop;
    stop.min_failures = p["min_failures"].get<std::uint64_t>();
    stop.max_trials = p["max_trials"].get<std::uint64_t>();
    std::uint64_t seed = p["seed"].get<std::uint64_t>();
    int threads = resolve_threads(p["threads"]);

    std::ostringstream csv;
    csv << "alpha,trials,failures,fer,ci_low,ci_high\n";
    for (double alpha : p["alpha_list"].get<std::vector<double>>()) {
        ldpc::FERPoint pt;
        try {
            pt = ldpc::fer_estimate(g, alpha, stop, {}, seed, threads);
        } catch (const std::invalid_argument& e) {
            throw InfeasibleError(e.what());
        }
        csv << fmt_double(pt.alpha) << "," << pt.trials << "," << pt.failures << ","
            << fmt_double(pt.fer) << "," << fmt_double(pt.ci_low) << ","
            << fmt_double(pt.ci_high) << "\n";
    }
    write_file(p["out"], csv.str());
    write_manifest("simulate", p, fnv1a_hex(ldpc::write_alist(g)), timer.seconds(),
                   default_manifest_path(p));
    return kExitOk;
}

// ---- rerun ----------------------------------------------------------------

int dispatch(const std::string& subcommand, const json& params) {
    if (subcommand == "construct") return run_construct(params);
    if (subcommand == "analyze") return run_analyze(params);
    if (subcommand == "decode") return run_decode(params);
    if (subcommand == "verify") return run_verify(params);
    if (subcommand == "simulate") return run_simulate(params);
    throw FormatError("manifest: unknown subcommand " + subcommand);
}

int run_rerun(const std::string& manifest_path) {
    json m;
    try {
        m = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        throw FormatError(manifest_path + ": " + e.what());
    }
    if (!m.contains("subcommand") || !m.contains("params"))
        throw FormatError(manifest_path + ": missing subcommand/params");
    return dispatch(m["subcommand"], m["params"]);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"column-weight-three LDPC construction, analysis and simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ldpc::kVersion));

    json p;

    auto* construct = app.add_subcommand("construct", "build a code, write alist + log");
    int n = 0, m = 0, gamma = 3, max_check_degree = 7, tree_depth = 6;
    std::uint64_t seed = 0;
    bool randomize = false, no_avoid_53 = false, no_repair = false;
    std::string out, log_path, manifest_path;
    construct->add_option("--n", n, "variable nodes")->required();
    construct->add_option("--m", m, "check nodes")->required();
    construct->add_option("--gamma", gamma, "variable degree (default 3)");
    construct->add_option("--max-check-degree", max_check_degree, "check degree cap");
    construct->add_option("--tree-depth", tree_depth, "BFS depth; girth >= depth + 2");
    construct->add_option("--seed", seed, "construction seed");
    construct->add_flag("--randomize", randomize, "seed-permuted variable order");
    construct->add_flag("--no-avoid-53", no_avoid_53, "skip (5,3) candidate rejection");
    construct->add_flag("--no-repair", no_repair, "skip weight-8 codeword repair");
    construct->add_option("--out", out, "alist output path")->required();
    construct->add_option("--log", log_path, "JSON-lines construction log path");
    construct->add_option("--manifest", manifest_path, "manifest path (default <out>.manifest.json)");

    auto* analyze = app.add_subcommand("analyze", "list (3,3), (5,3), (8,0) structures as CSV");
    std::string code_path;
    bool critical_numbers = false;
    analyze->add_option("--code", code_path, "alist input")->required();
    analyze->add_flag("--critical-numbers", critical_numbers, "compute per-structure critical numbers");
    analyze->add_option("--out", out, "CSV output path")->required();
    analyze->add_option("--manifest", manifest_path, "manifest path");

    auto* decode = app.add_subcommand("decode", "decode one received word");
    std::string word_path, rule = "A";
    int max_iterations = 50;
    decode->add_option("--code", code_path, "alist input")->required();
    decode->add_option("--word", word_path, "received word file (whitespace 0/1)")->required();
    decode->add_option("--rule", rule, "decision rule A or B")
        ->check(CLI::IsMember({"A", "B"}));
    decode->add_option("--max-iters", max_iterations, "iteration cap");
    decode->add_option("--out", out, "outcome text path")->required();
    decode->add_option("--manifest", manifest_path, "manifest path");

    auto* verify = app.add_subcommand("verify", "exhaustive weight <= t sweep; nonzero exit on failures");
    int t = 3, threads = 0;
    std::uint64_t budget = 100'000'000;
    verify->add_option("--code", code_path, "alist input")->required();
    verify->add_option("--t", t, "max error weight");
    verify->add_option("--max-iters", max_iterations, "iteration cap");
    verify->add_option("--budget", budget, "pattern-count ceiling");
    verify->add_option("--threads", threads, "worker count (0 = auto)");
    verify->add_option("--out", out, "JSON report path")->required();
    verify->add_option("--manifest", manifest_path, "manifest path");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo FER sweep to CSV");
    std::vector<double> alpha_list;
    std::uint64_t min_failures = 50, max_trials = 100'000'000;
    simulate->add_option("--code", code_path, "alist input")->required();
    simulate->add_option("--alpha-list", alpha_list, "crossover probabilities")
        ->required()
        ->delimiter(',');
    simulate->add_option("--min-failures", min_failures, "failures per point");
    simulate->add_option("--max-trials", max_trials, "trial ceiling per point");
    simulate->add_option("--seed", seed, "channel seed");
    simulate->add_option("--threads", threads, "worker count (0 = auto)");
    simulate->add_option("--out", out, "CSV output path")->required();
    simulate->add_option("--manifest", manifest_path, "manifest path");

    auto* rerun = app.add_subcommand("rerun", "re-execute a subcommand from its manifest");
    std::string rerun_manifest;
    rerun->add_option("--manifest", rerun_manifest, "manifest input")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed()) {
            p = {{"n", n},
                 {"m", m},
                 {"gamma", gamma},
                 {"max_check_degree", max_check_degree},
                 {"tree_depth", tree_depth},
                 {"seed", seed},
                 {"randomize", randomize},
                 {"avoid_53", !no_avoid_53},
                 {"repair", !no_repair},
                 {"out", out},
                 {"log", log_path},
                 {"manifest", manifest_path}};
            return run_construct(p);
        }
        if (analyze->parsed()) {
            p = {{"code", code_path},
                 {"critical_numbers", critical_numbers},
                 {"out", out},
                 {"manifest", manifest_path}};
            return run_analyze(p);
        }
        if (decode->parsed()) {
            p = {{"code", code_path},
                 {"word", word_path},
                 {"rule", rule},
                 {"max_iterations", max_iterations},
                 {"out", out},
                 {"manifest", manifest_path}};
            return run_decode(p);
        }
        if (verify->parsed()) {
            p = {{"code", code_path},
                 {"t", t},
                 {"max_iterations", max_iterations},
                 {"budget", budget},
                 {"threads", threads},
                 {"out", out},
                 {"manifest", manifest_path}};
            return run_verify(p);
        }
        if (simulate->parsed()) {
            p = {{"code", code_path},
                 {"alpha_list", alpha_list},
                 {"min_failures", min_failures},
                 {"max_trials", max_trials},
                 {"seed", seed},
                 {"threads", threads},
                 {"out", out},
                 {"manifest", manifest_path}};
            return run_simulate(p);
        }
        if (rerun->parsed()) return run_rerun(rerun_manifest);
    } catch (const IoError& e) {
        std::cerr << "error[io]: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error[format]: " << e.what() << "\n";
        return kExitFormat;
    } catch (const InfeasibleError& e) {
        std::cerr << "error[infeasible]: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
