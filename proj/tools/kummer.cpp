// Command-line front end: per-prime rank and dimension queries, invariant
// dumps, the identity verification suite, and the batch survey pipeline.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "kummer/invariants.hpp"
#include "kummer/modarith.hpp"
#include "kummer/regularity.hpp"
#include "kummer/selmer.hpp"
#include "kummer/survey.hpp"
#include "kummer/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kummer;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

unsigned default_workers() {
    if (const char* env = std::getenv("KUMMER_THREADS")) {
        long v = std::atol(env);
        if (v > 0) return (unsigned)v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

struct PrimeQuery {
    u64 p = 0;
    u64 N = 0;
    std::string format = "text";
};

void add_prime_flags(CLI::App* cmd, PrimeQuery& q) {
    cmd->add_option("--p", q.p, "small odd prime p")->required();
    cmd->add_option("--N", q.N, "prime N with N = 1 mod p")->required();
    cmd->add_option("--format", q.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
}

json rank_to_json(const RankEstimate& est) {
    json j;
    j["p"] = est.pair.p;
    j["N"] = est.pair.N;
    j["rank_lower"] = est.lower;
    j["rank_upper"] = est.upper;
    j["exact"] = est.exact;
    j["mu"] = est.mu;
    j["assumed_r_cyclotomic"] = est.assumed_r_cyclotomic;
    return j;
}

json dims_to_json(const DimensionString& dims) {
    json j;
    j["p"] = dims.pair.p;
    j["N"] = dims.pair.N;
    j["dim_string"] = dims.str();
    j["entries"] = json::array();
    for (const DimEntry& e : dims.entries) {
        json je;
        je["i"] = e.i;
        je["value"] = std::string(1, e.to_char());
        je["note"] = e.note;
        je["best_effort"] = e.best_effort;
        je["degenerate"] = e.degenerate_poly;
        j["entries"].push_back(je);
    }
    return j;
}

json residue_to_json(const ResidueClass& rc) {
    json j;
    j["value"] = rc.value;
    j["label"] = rc.label;
    j["pth_power"] = rc.is_pth_power();
    return j;
}

int cmd_rank(const PrimeQuery& q, unsigned r_cyc) {
    PrimePair pair(q.p, q.N);
    ClassContext ctx(pair);
    FactorialCheckpoints cp = factorial_checkpoints(pair);
    DimensionString dims = dimension_string(cp, ctx);
    unsigned mu = mu_count(cp, ctx);
    RankEstimate est = rank_estimate(dims, mu, r_cyc);
    if (q.format == "json") {
        std::cout << rank_to_json(est).dump() << "\n";
    } else {
        if (est.exact)
            std::cout << "r_K = " << est.lower << " (exact)\n";
        else
            std::cout << est.lower << " <= r_K <= " << est.upper << "\n";
        std::cout << "dims = " << (dims.entries.empty() ? std::string("(none)") : dims.str())
                  << ", mu = " << mu << "\n";
    }
    return kExitOk;
}

int cmd_dims(const PrimeQuery& q) {
    PrimePair pair(q.p, q.N);
    ClassContext ctx(pair);
    FactorialCheckpoints cp = factorial_checkpoints(pair);
    DimensionString dims = dimension_string(cp, ctx);
    if (q.format == "json") {
        std::cout << dims_to_json(dims).dump() << "\n";
    } else {
        std::cout << "p = " << pair.p << ", N = " << pair.N << ": dims = "
                  << (dims.entries.empty() ? std::string("(none)") : dims.str()) << "\n";
        for (const DimEntry& e : dims.entries)
            std::cout << "  h(-" << e.i << ") = " << e.to_char() << "  [" << e.note << "]\n";
    }
    return kExitOk;
}

int cmd_invariants(const PrimeQuery& q) {
    PrimePair pair(q.p, q.N);
    if (pair.p < 5) throw InvalidPair("invariants: requires p >= 5");
    ClassContext ctx(pair);
    FactorialCheckpoints cp = factorial_checkpoints(pair);
    std::vector<ResidueClass> s = all_s_invariants(cp, ctx);
    std::vector<ResidueClass> m;
    for (unsigned i = 1; i + 1 < pair.p; i += 2) m.push_back(m_gamma(i, cp, ctx));
    ResidueClass a2 = a_invariant(2, ctx);
    ResidueClass c = c_invariant(ctx);

    if (q.format == "json") {
        json j;
        j["p"] = pair.p;
        j["N"] = pair.N;
        j["zeta"] = ctx.zeta().zeta;
        j["s"] = json::array();
        for (unsigned i = 0; i < s.size(); ++i) {
            json je = residue_to_json(s[i]);
            je["i"] = i + 1;
            j["s"].push_back(je);
        }
        j["m_gamma"] = json::array();
        for (unsigned t = 0; t < m.size(); ++t) {
            json je = residue_to_json(m[t]);
            je["i"] = 2 * t + 1;
            j["m_gamma"].push_back(je);
        }
        j["a2"] = residue_to_json(a2);
        j["c"] = residue_to_json(c);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p = " << pair.p << ", N = " << pair.N << ", zeta = " << ctx.zeta().zeta
                  << "\n";
        for (unsigned i = 0; i < s.size(); ++i)
            std::cout << "  S_" << i + 1 << " = " << s[i].value << "  label " << s[i].label
                      << "\n";
        for (unsigned t = 0; t < m.size(); ++t)
            std::cout << "  M_" << 2 * t + 1 << " (Gamma) = " << m[t].value << "  label "
                      << m[t].label << "\n";
        std::cout << "  A_2 = " << a2.value << "  label " << a2.label << "\n";
        std::cout << "  C = " << c.value << "  label " << c.label << "\n";
    }
    return kExitOk;
}

int cmd_verify(u64 p, u64 max_n, unsigned workers, const std::string& format) {
    VerifyReport rep = verify_identities(p, max_n, workers);
    if (format == "json") {
        json j;
        j["p"] = rep.p;
        j["max"] = rep.max_n;
        j["primes_checked"] = rep.primes_checked;
        j["checks"] = rep.checks;
        j["failures"] = rep.failures;
        j["notes"] = rep.notes;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "p = " << rep.p << ", N <= " << rep.max_n << ": " << rep.primes_checked
                  << " primes, " << rep.checks << " checks, " << rep.failures << " failures\n";
        for (const std::string& note : rep.notes) std::cout << "  " << note << "\n";
        std::cout << (rep.ok() ? "PASS" : "FAIL") << "\n";
    }
    return rep.ok() ? kExitOk : kExitVerifyFailure;
}

void print_aggregate(const TableAggregate& agg, const std::string& format) {
    if (format == "json") {
        json j;
        j["p"] = agg.p;
        j["total"] = agg.total;
        j["errors"] = agg.error_count;
        j["strings"] = json::object();
        for (const auto& [k, v] : agg.string_counts) j["strings"][k] = v;
        j["exact_ranks"] = json::object();
        for (const auto& [k, v] : agg.exact_rank_counts) j["exact_ranks"][k] = v;
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "p = " << agg.p << ", records = " << agg.total << ", errors = " << agg.error_count
              << "\n";
    std::cout << "dimensions  count  fraction\n";
    for (const auto& [k, v] : agg.string_counts) {
        std::printf("%-11s %-6llu %.4f\n", k.c_str(), (unsigned long long)v,
                    agg.total ? (double)v / (double)agg.total : 0.0);
    }
    if (!agg.exact_rank_counts.empty()) {
        std::cout << "exact ranks (dimensions|rank): count\n";
        for (const auto& [k, v] : agg.exact_rank_counts)
            std::cout << "  " << k << ": " << v << "\n";
    }
    // fraction with h(-1) = 1: strings starting with '1'
    u64 h1 = 0;
    for (const auto& [k, v] : agg.string_counts)
        if (!k.empty() && k[0] == '1') h1 += v;
    if (agg.total)
        std::printf("fraction with h(-1) = 1: %.4f\n", (double)h1 / (double)agg.total);
}

int cmd_survey(SurveyConfig cfg, const std::string& format) {
    TableAggregate agg = run_survey(cfg);
    print_aggregate(agg, format);
    return kExitOk;
}

int cmd_tables(const std::string& input, std::string fmt_opt, const std::string& format) {
    RecordFormat fmt;
    if (fmt_opt == "csv") {
        fmt = RecordFormat::Csv;
    } else if (fmt_opt == "jsonl") {
        fmt = RecordFormat::Jsonl;
    } else {
        fmt = input.size() >= 6 && input.substr(input.size() - 6) == ".jsonl"
                  ? RecordFormat::Jsonl
                  : RecordFormat::Csv;
    }
    std::vector<PrimeRecord> records = read_records(input, fmt);
    print_aggregate(aggregate(records), format);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"class-group p-rank invariants for Q(N^(1/p)), N = 1 mod p prime"};
    app.require_subcommand(1);

    PrimeQuery rank_q, dims_q, inv_q;
    unsigned r_cyc = 0;

    CLI::App* rank = app.add_subcommand("rank", "rank bounds for one (p, N)");
    add_prime_flags(rank, rank_q);
    rank->add_option("--r-cyclotomic", r_cyc,
                     "assumed p-rank of the cyclotomic class group (default 0)");

    CLI::App* dims = app.add_subcommand("dims", "dimension string for one (p, N)");
    add_prime_flags(dims, dims_q);

    CLI::App* inv = app.add_subcommand("invariants", "S_i, M_i, A_2, C for one (p, N)");
    add_prime_flags(inv, inv_q);

    u64 verify_p = 5, verify_max = 1000;
    unsigned verify_workers = default_workers();
    std::string verify_format = "text";
    CLI::App* verify = app.add_subcommand("verify", "identity suite over all N <= bound");
    verify->add_option("--p", verify_p, "small odd prime p")->required();
    verify->add_option("--max", verify_max, "upper bound on N")->required();
    verify->add_option("--workers", verify_workers, "worker threads");
    verify->add_option("--format", verify_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    SurveyConfig scfg;
    scfg.workers = default_workers();
    std::string survey_format = "csv";
    std::string survey_print = "text";
    CLI::App* survey = app.add_subcommand("survey", "evaluate every prime N <= bound");
    survey->add_option("--p", scfg.p, "small odd prime p")->required();
    survey->add_option("--max", scfg.max_n, "upper bound on N")->required();
    survey->add_option("--output", scfg.output_path, "output records file")->required();
    survey->add_option("--workers", scfg.workers, "worker threads");
    survey->add_flag("--resume", scfg.resume, "resume from the checkpoint");
    survey->add_option("--records-format", survey_format, "records encoding")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    survey->add_flag("--timing", scfg.timing,
                     "record wall-clock time per prime (output no longer byte-reproducible)");
    survey->add_option("--checkpoint-every", scfg.checkpoint_every, "records per checkpoint");
    survey->add_option("--format", survey_print, "summary format")
        ->check(CLI::IsMember({"text", "json"}));

    std::string tables_input, tables_records_format = "auto", tables_format = "text";
    CLI::App* tables = app.add_subcommand("tables", "aggregate a records file");
    tables->add_option("--input", tables_input, "records file")->required();
    tables->add_option("--records-format", tables_records_format, "records encoding")
        ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
    tables->add_option("--format", tables_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (rank->parsed()) return cmd_rank(rank_q, r_cyc);
        if (dims->parsed()) return cmd_dims(dims_q);
        if (inv->parsed()) return cmd_invariants(inv_q);
        if (verify->parsed()) return cmd_verify(verify_p, verify_max, verify_workers, verify_format);
        if (survey->parsed()) {
            scfg.format = survey_format == "jsonl" ? RecordFormat::Jsonl : RecordFormat::Csv;
            return cmd_survey(scfg, survey_print);
        }
        if (tables->parsed()) return cmd_tables(tables_input, tables_records_format, tables_format);
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const RootStatusMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
