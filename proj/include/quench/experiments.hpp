// Experiment orchestration behind the command-line front end: config
// parsing and validation, seeded experiment runners, and structured result
// emission (CSV/JSON) with a lossless round trip.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace quench {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResultTable {
    using Cell = std::variant<double, std::int64_t, std::string>;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::string experiment;
    nlohmann::json parameters;
    std::uint64_t seed = kDefaultSeed;
    std::string output;  // empty -> stdout
    OutputFormat format = OutputFormat::Csv;
    unsigned threads = 1;
};

std::vector<std::string> list_experiments();

// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& doc);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

// Schema check without execution: missing/ill-typed keys are errors, unknown
// keys are warnings.
ValidationReport validate_config(const nlohmann::json& doc);

// Deterministic for a fixed config at any thread count.
ResultTable run_experiment(const ExperimentConfig& cfg);

void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
ResultTable read_csv(std::istream& in);

// The data section (columns + rows) rendered as CSV text without the
// metadata comment block; two runs of the same config must match bit for bit.
std::string data_section(const ResultTable& table);

}  // namespace quench
