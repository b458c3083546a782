#include "kummer/survey.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "kummer/invariants.hpp"
#include "kummer/selmer.hpp"

namespace kummer {

using json = nlohmann::ordered_json;

std::vector<u64> sieve(u64 p, u64 lo, u64 hi) {
    if (lo < 2 || lo > hi || hi >= ((u64)1 << 63))
        throw BadRange("sieve: need 2 <= lo <= hi < 2^63");
    if (p < 3 || !is_prime_u64(p)) throw BadRange("sieve: p must be an odd prime");

    u64 root = (u64)std::sqrt((double)hi);
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;

    // base primes by a plain sieve up to sqrt(hi)
    std::vector<char> comp(root + 1, 0);
    std::vector<u64> base;
    for (u64 q = 2; q <= root; ++q) {
        if (comp[q]) continue;
        base.push_back(q);
        for (u64 m = q * q; m <= root; m += q) comp[m] = 1;
    }

    std::vector<u64> out;
    // first candidate >= lo that is = 1 mod p (n = 1 itself is below lo >= 2)
    const u64 first = lo + ((1 + p - lo % p) % p);
    const u64 seg_len = 1u << 20; // candidates per segment
    std::vector<char> flags;
    u64 seg_start = first;
    while (seg_start <= hi) {
        u64 count = (hi - seg_start) / p + 1;
        if (count > seg_len) count = seg_len;
        const u64 seg_end = seg_start + (count - 1) * p;
        flags.assign(count, 1);
        for (u64 q : base) {
            if (q == p) continue; // no candidate is divisible by p
            // candidates divisible by q form the class q * (q^-1 mod p) mod pq
            u64 qinv = pow_mod(q % p, p - 2, p);
            u64 c = q * qinv; // in [0, pq), = 0 mod q, = 1 mod p
            u64 step = p * q;
            u64 start_floor = std::max(seg_start, 2 * q); // keep q itself prime
            u64 x = c;
            if (start_floor > c) x = c + (start_floor - c + step - 1) / step * step;
            for (; x <= seg_end; x += step) flags[(x - seg_start) / p] = 0;
        }
        for (u64 t = 0; t < count; ++t)
            if (flags[t]) out.push_back(seg_start + t * p);
        if (seg_end > hi - p) break;
        seg_start = seg_end + p;
    }
    return out;
}

namespace {

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

} // namespace

PrimeRecord process_prime(const PrimePair& pair) {
    PrimeRecord rec;
    rec.p = pair.p;
    rec.N = pair.N;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ClassContext ctx(pair);
        FactorialCheckpoints cp = factorial_checkpoints(pair);
        std::vector<ResidueClass> labels = all_s_invariants(cp, ctx);
        for (const ResidueClass& rc : labels) rec.s_labels.push_back(rc.label);
        DimensionString dims = dimension_string(cp, ctx);
        rec.dim_string = dims.str();
        for (const DimEntry& e : dims.entries)
            if (e.degenerate_poly) rec.degenerate = true;
        rec.mu = mu_count(cp, ctx);
        RankEstimate est = rank_estimate(dims, rec.mu);
        rec.rank_lower = est.lower;
        rec.rank_upper = est.upper;
        rec.rank_exact = est.exact;
    } catch (const std::exception& e) {
        rec.error = sanitize(e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.elapsed_us = (u64)std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
    return rec;
}

void TableAggregate::add(const PrimeRecord& rec) {
    if (total == 0 && p == 0) p = rec.p;
    ++total;
    if (!rec.error.empty()) {
        ++error_count;
        return;
    }
    ++string_counts[rec.dim_string];
    if (rec.rank_exact)
        ++exact_rank_counts[rec.dim_string + "|" + std::to_string(rec.rank_lower)];
}

TableAggregate aggregate(const std::vector<PrimeRecord>& records) {
    TableAggregate agg;
    for (const PrimeRecord& rec : records) {
        if (agg.total > 0 && rec.p != agg.p)
            throw MixedP("aggregate: records mix p = " + std::to_string(agg.p) + " and p = " +
                         std::to_string(rec.p));
        agg.add(rec);
    }
    return agg;
}

// ---- encodings ----

std::string csv_header() {
    return "p,N,dim_string,rank_lower,rank_upper,rank_exact,mu,s_labels,degenerate_flag,error,"
           "elapsed_us";
}

namespace {

std::string join_labels(const std::vector<unsigned>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(';');
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<unsigned> split_labels(const std::string& s) {
    std::vector<unsigned> out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(';', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back((unsigned)std::stoul(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

} // namespace

std::string to_csv_line(const PrimeRecord& r) {
    std::string s;
    s += std::to_string(r.p);
    s += ',';
    s += std::to_string(r.N);
    s += ',';
    s += r.dim_string;
    s += ',';
    s += std::to_string(r.rank_lower);
    s += ',';
    s += std::to_string(r.rank_upper);
    s += ',';
    s += r.rank_exact ? '1' : '0';
    s += ',';
    s += std::to_string(r.mu);
    s += ',';
    s += join_labels(r.s_labels);
    s += ',';
    s += r.degenerate ? '1' : '0';
    s += ',';
    s += sanitize(r.error);
    s += ',';
    s += std::to_string(r.elapsed_us);
    return s;
}

PrimeRecord from_csv_line(const std::string& line) {
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (f.size() < 10) {
        std::size_t next = line.find(',', pos);
        if (next == std::string::npos) throw IoFailure("csv: expected 11 fields");
        f.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    f.push_back(line.substr(pos));
    if (f[10].find(',') != std::string::npos) throw IoFailure("csv: expected 11 fields");
    PrimeRecord r;
    r.p = std::stoull(f[0]);
    r.N = std::stoull(f[1]);
    r.dim_string = f[2];
    r.rank_lower = (unsigned)std::stoul(f[3]);
    r.rank_upper = (unsigned)std::stoul(f[4]);
    r.rank_exact = f[5] == "1";
    r.mu = (unsigned)std::stoul(f[6]);
    r.s_labels = split_labels(f[7]);
    r.degenerate = f[8] == "1";
    r.error = f[9];
    r.elapsed_us = std::stoull(f[10]);
    return r;
}

std::string to_jsonl_line(const PrimeRecord& r) {
    json j;
    j["p"] = r.p;
    j["N"] = r.N;
    j["dim_string"] = r.dim_string;
    j["rank_lower"] = r.rank_lower;
    j["rank_upper"] = r.rank_upper;
    j["rank_exact"] = r.rank_exact ? 1 : 0;
    j["mu"] = r.mu;
    j["s_labels"] = join_labels(r.s_labels);
    j["degenerate_flag"] = r.degenerate ? 1 : 0;
    j["error"] = r.error;
    j["elapsed_us"] = r.elapsed_us;
    return j.dump();
}

PrimeRecord from_jsonl_line(const std::string& line) {
    json j = json::parse(line);
    PrimeRecord r;
    r.p = j.at("p").get<u64>();
    r.N = j.at("N").get<u64>();
    r.dim_string = j.at("dim_string").get<std::string>();
    r.rank_lower = j.at("rank_lower").get<unsigned>();
    r.rank_upper = j.at("rank_upper").get<unsigned>();
    r.rank_exact = j.at("rank_exact").get<int>() != 0;
    r.mu = j.at("mu").get<unsigned>();
    r.s_labels = split_labels(j.at("s_labels").get<std::string>());
    r.degenerate = j.at("degenerate_flag").get<int>() != 0;
    r.error = j.at("error").get<std::string>();
    r.elapsed_us = j.at("elapsed_us").get<u64>();
    return r;
}

std::vector<PrimeRecord> read_records(const std::string& path, RecordFormat fmt) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    std::vector<PrimeRecord> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (fmt == RecordFormat::Csv && first) {
            first = false;
            if (line != csv_header()) throw IoFailure("csv: bad header in " + path);
            continue;
        }
        first = false;
        out.push_back(fmt == RecordFormat::Csv ? from_csv_line(line) : from_jsonl_line(line));
    }
    return out;
}

// ---- survey driver ----

std::string config_hash(const SurveyConfig& cfg) {
    std::string key = "survey-v1|p=" + std::to_string(cfg.p) + "|max=" + std::to_string(cfg.max_n) +
                      "|fmt=" + (cfg.format == RecordFormat::Csv ? "csv" : "jsonl") +
                      "|timing=" + (cfg.timing ? "1" : "0");
    u64 h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string checkpoint_path(const SurveyConfig& cfg) { return cfg.output_path + ".ckpt"; }

namespace {

struct CheckpointData {
    std::string hash;
    u64 last_n = 0;
    TableAggregate partial;
};

void save_checkpoint(const SurveyConfig& cfg, u64 last_n, const TableAggregate& agg) {
    json j;
    j["config_hash"] = config_hash(cfg);
    j["last_n"] = last_n;
    json counts;
    counts["p"] = agg.p;
    counts["total"] = agg.total;
    counts["errors"] = agg.error_count;
    counts["strings"] = json::object();
    for (const auto& [k, v] : agg.string_counts) counts["strings"][k] = v;
    counts["exact_ranks"] = json::object();
    for (const auto& [k, v] : agg.exact_rank_counts) counts["exact_ranks"][k] = v;
    j["partial_counts"] = counts;

    std::string tmp = checkpoint_path(cfg) + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoFailure("cannot write checkpoint " + tmp);
        out << j.dump() << "\n";
    }
    std::filesystem::rename(tmp, checkpoint_path(cfg));
}

std::optional<CheckpointData> load_checkpoint(const SurveyConfig& cfg) {
    std::ifstream in(checkpoint_path(cfg));
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, /*allow_exceptions=*/true);
    CheckpointData ck;
    ck.hash = j.at("config_hash").get<std::string>();
    ck.last_n = j.at("last_n").get<u64>();
    const json& counts = j.at("partial_counts");
    ck.partial.p = counts.at("p").get<u64>();
    ck.partial.total = counts.at("total").get<u64>();
    ck.partial.error_count = counts.at("errors").get<u64>();
    for (auto it = counts.at("strings").begin(); it != counts.at("strings").end(); ++it)
        ck.partial.string_counts[it.key()] = it.value().get<u64>();
    for (auto it = counts.at("exact_ranks").begin(); it != counts.at("exact_ranks").end(); ++it)
        ck.partial.exact_rank_counts[it.key()] = it.value().get<u64>();
    return ck;
}

// Records already on disk whose N is at most last_n, validated against the
// expected prime sequence. The file is rewritten to exactly this prefix, so
// a kill mid-line cannot poison a resumed run.
std::vector<PrimeRecord> recover_prefix(const SurveyConfig& cfg, const std::vector<u64>& primes,
                                        u64 last_n) {
    std::vector<PrimeRecord> kept;
    {
        std::ifstream in(cfg.output_path);
        if (!in) throw IoFailure("resume: cannot open " + cfg.output_path);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (cfg.format == RecordFormat::Csv && first) {
                first = false;
                if (line != csv_header()) throw IoFailure("resume: bad header");
                continue;
            }
            first = false;
            if (line.empty()) break;
            PrimeRecord rec;
            try {
                rec = cfg.format == RecordFormat::Csv ? from_csv_line(line)
                                                      : from_jsonl_line(line);
            } catch (const std::exception&) {
                break; // partial trailing line from a kill
            }
            if (rec.N > last_n) break;
            if (kept.size() >= primes.size() || rec.N != primes[kept.size()])
                throw IoFailure("resume: output does not match the expected prime sequence");
            kept.push_back(std::move(rec));
        }
    }
    u64 expected = 0;
    for (u64 n : primes) {
        if (n > last_n) break;
        ++expected;
    }
    if (kept.size() != expected)
        throw IoFailure("resume: output is behind its checkpoint");

    std::string tmp = cfg.output_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out) throw IoFailure("resume: cannot rewrite " + cfg.output_path);
        if (cfg.format == RecordFormat::Csv) out << csv_header() << "\n";
        for (const PrimeRecord& rec : kept)
            out << (cfg.format == RecordFormat::Csv ? to_csv_line(rec) : to_jsonl_line(rec))
                << "\n";
    }
    std::filesystem::rename(tmp, cfg.output_path);
    return kept;
}

} // namespace

TableAggregate run_survey(const SurveyConfig& cfg) {
    if (cfg.output_path.empty()) throw IoFailure("run_survey: output path required");
    std::vector<u64> primes = sieve(cfg.p, 2, cfg.max_n);

    TableAggregate agg;
    agg.p = cfg.p;
    std::size_t start_idx = 0;

    if (cfg.resume) {
        if (auto ck = load_checkpoint(cfg)) {
            if (ck->hash != config_hash(cfg))
                throw ConfigMismatch("resume: checkpoint belongs to a different configuration");
            std::vector<PrimeRecord> kept = recover_prefix(cfg, primes, ck->last_n);
            for (const PrimeRecord& rec : kept) agg.add(rec);
            if (agg.total != ck->partial.total || agg.error_count != ck->partial.error_count ||
                agg.string_counts != ck->partial.string_counts ||
                agg.exact_rank_counts != ck->partial.exact_rank_counts)
                throw IoFailure("resume: checkpoint aggregate does not match recovered records");
            start_idx = kept.size();
        }
    }

    std::ofstream out;
    if (start_idx == 0) {
        out.open(cfg.output_path, std::ios::trunc | std::ios::binary);
        if (!out) throw IoFailure("cannot open " + cfg.output_path);
        if (cfg.format == RecordFormat::Csv) out << csv_header() << "\n";
    } else {
        out.open(cfg.output_path, std::ios::app | std::ios::binary);
        if (!out) throw IoFailure("cannot open " + cfg.output_path);
    }

    std::atomic<std::size_t> next_work{start_idx};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::condition_variable cv_done, cv_space;
    std::map<std::size_t, PrimeRecord> done;
    constexpr std::size_t kMaxBuffered = 4096;

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv_space.wait(lk, [&] { return done.size() < kMaxBuffered || stop.load(); });
            }
            std::size_t idx = next_work.fetch_add(1);
            if (idx >= primes.size()) return;
            PrimeRecord rec;
            try {
                PrimePair pair(cfg.p, primes[idx]);
                rec = process_prime(pair);
            } catch (const std::exception& e) {
                rec.p = cfg.p;
                rec.N = primes[idx];
                rec.error = sanitize(e.what());
            }
            if (!cfg.timing) rec.elapsed_us = 0;
            {
                std::lock_guard<std::mutex> lk(mu);
                done.emplace(idx, std::move(rec));
            }
            cv_done.notify_all();
        }
    };

    unsigned nworkers = std::max(1u, cfg.workers);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);

    u64 since_checkpoint = 0;
    u64 emitted_this_run = 0;
    u64 last_emitted_n = start_idx ? primes[start_idx - 1] : 0;
    bool aborted = false;

    for (std::size_t emit = start_idx; emit < primes.size(); ++emit) {
        PrimeRecord rec;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv_done.wait(lk, [&] { return done.count(emit) != 0; });
            rec = std::move(done[emit]);
            done.erase(emit);
        }
        cv_space.notify_all();
        out << (cfg.format == RecordFormat::Csv ? to_csv_line(rec) : to_jsonl_line(rec)) << "\n";
        agg.add(rec);
        last_emitted_n = rec.N;
        ++emitted_this_run;
        if (++since_checkpoint >= cfg.checkpoint_every) {
            out.flush();
            save_checkpoint(cfg, last_emitted_n, agg);
            since_checkpoint = 0;
        }
        if (cfg.stop_after && emitted_this_run >= cfg.stop_after) {
            aborted = true;
            break;
        }
    }

    stop.store(true);
    cv_space.notify_all();
    for (std::thread& t : pool) t.join();
    out.flush();
    if (!out) throw IoFailure("write failure on " + cfg.output_path);

    if (!aborted) save_checkpoint(cfg, primes.empty() ? 0 : primes.back(), agg);
    return agg;
}

} // namespace kummer
