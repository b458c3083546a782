#ifndef KUMMER_SURVEY_HPP_
#define KUMMER_SURVEY_HPP_

#include <map>
#include <string>
#include <vector>

#include "kummer/modarith.hpp"

namespace kummer {

// Ascending primes N = 1 mod p in [lo, hi]; segmented sieve stepping through
// the arithmetic progression.
std::vector<u64> sieve(u64 p, u64 lo, u64 hi); // throws BadRange

// One row of the survey output. Round-trips losslessly through both encodings.
struct PrimeRecord {
    u64 p = 0;
    u64 N = 0;
    std::string dim_string; // '?' for Unknown entries
    unsigned rank_lower = 0;
    unsigned rank_upper = 0;
    bool rank_exact = false;
    unsigned mu = 0;
    std::vector<unsigned> s_labels; // labels of S_1..S_{p-2}
    bool degenerate = false;        // a hardcoded polynomial degenerated mod N
    std::string error;              // empty on success; never aborts the survey
    u64 elapsed_us = 0;

    bool operator==(const PrimeRecord&) const = default;
};

// Full evaluation of one prime: checkpoint pass, S labels, dimension string,
// rank bounds. Failures are captured in the error field.
PrimeRecord process_prime(const PrimePair& pair);

struct TableAggregate {
    u64 p = 0;
    std::map<std::string, u64> string_counts;
    std::map<std::string, u64> exact_rank_counts; // key "<string>|<rank>"
    u64 total = 0;
    u64 error_count = 0;

    void add(const PrimeRecord& rec);
    bool operator==(const TableAggregate&) const = default;
};

TableAggregate aggregate(const std::vector<PrimeRecord>& records); // throws MixedP

// ---- encodings ----

enum class RecordFormat { Csv, Jsonl };

std::string csv_header();
std::string to_csv_line(const PrimeRecord& rec);
PrimeRecord from_csv_line(const std::string& line);
std::string to_jsonl_line(const PrimeRecord& rec);
PrimeRecord from_jsonl_line(const std::string& line);

std::vector<PrimeRecord> read_records(const std::string& path, RecordFormat fmt);

// ---- survey driver ----

struct SurveyConfig {
    u64 p = 5;
    u64 max_n = 0;
    unsigned workers = 1;
    std::string output_path;
    bool resume = false;
    RecordFormat format = RecordFormat::Csv;
    // Wall-clock timing per record; off by default so identical configs
    // produce byte-identical output.
    bool timing = false;
    u64 checkpoint_every = 10000;
    // Test hook: stop (as if killed) after emitting this many records.
    u64 stop_after = 0;
};

std::string config_hash(const SurveyConfig& cfg);
std::string checkpoint_path(const SurveyConfig& cfg);

// Evaluates every sieved prime with a dynamic worker pool; records are
// written in ascending-N order regardless of completion order, so output is
// byte-identical for any worker count. Checkpoints bind to the config hash;
// resuming reuses the completed prefix and reproduces an uninterrupted run
// exactly.
TableAggregate run_survey(const SurveyConfig& cfg);

} // namespace kummer

#endif // KUMMER_SURVEY_HPP_
