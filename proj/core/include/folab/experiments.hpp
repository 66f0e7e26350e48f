#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace folab {

inline constexpr int kConfigVersion = 1;

/// Experiment ids: exp_dense, exp_sparse, exp_sizes, exp_tenacity, exp_oracle.
struct ExperimentConfig {
    std::string experiment;
    std::vector<std::size_t> n;
    std::vector<double> p;     ///< edge probabilities, or
    std::vector<double> c;     ///< p = c / n when non-empty
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    double epsilon = 0.2;      ///< relative tolerance (exp_sizes)
    double omega = 10.0;       ///< slack factor for the very sparse ranges
    std::size_t max_tuple = 2; ///< exp_sizes tuple length
    std::size_t k = 3;         ///< exp_tenacity threshold
    std::size_t k_max = 6;     ///< exp_dense extension search limit
    std::size_t restarts = 8;  ///< sieve search restarts
    std::size_t threads = 0;   ///< 0: hardware concurrency
};

ExperimentConfig config_from_json(const nlohmann::json& j);
/// Normalised form: every field, sorted keys, no thread count.
nlohmann::json to_json(const ExperimentConfig& c);
/// FNV-1a (64 bit) over the normalised JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

struct ResultTable {
    std::string experiment;
    std::string config_hash;
    std::vector<std::string> columns;
    std::vector<nlohmann::ordered_json> rows; ///< keys in column order
    nlohmann::json summary;
};

/// Rows run in parallel and come back sorted by (n, p, trial). Cap
/// violations land in the row's "error" column. Throws InvalidArgument for
/// an unknown id or a bad config.
ResultTable run_experiment(const ExperimentConfig& cfg);

/// RFC 4180 CSV with a header row.
void write_csv(std::ostream& out, const ResultTable& t);
/// One JSON object per row.
void write_jsonl(std::ostream& out, const ResultTable& t);
/// Header plus records of a CSV document.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
/// The CSV text of one cell value.
std::string csv_cell(const nlohmann::ordered_json& v);

} // namespace folab
