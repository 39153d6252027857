#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "contagion/balance.hpp"

namespace contagion {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Balance CSV: bank_id,total_assets,total_liabilities,liquid_assets
// Exposure CSV: from_id,to_id,amount  ("from" borrowed `amount` from "to")
// Amounts are euros with at most two decimals.
BankingSystem read_system(std::istream& balance, std::istream& exposures, const std::string& balance_name = "balance",
                          const std::string& exposures_name = "exposures");
BankingSystem load_system(const std::filesystem::path& balance_csv, const std::filesystem::path& exposures_csv);

// Canonical form: banks sorted by id, exposures by (from_id, to_id).
void write_system(const BankingSystem& system, std::ostream& balance, std::ostream& exposures);
void save_system(const BankingSystem& system, const std::filesystem::path& balance_csv,
                 const std::filesystem::path& exposures_csv);

// "start:stop:step", both ends inclusive (stop is kept when within 1e-12 of
// a step). A bare number is a one-point grid. Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

// Fields are written verbatim; callers pass values without commas or quotes.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> fields) { rows.push_back(std::move(fields)); }
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

std::string sha256_file(const std::filesystem::path& path);

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::uint64_t rng_seed = 0;
    std::map<std::string, std::string> input_digests;  // path -> sha256 hex
    std::string tool_version;
    std::string timestamp;  // UTC, ISO 8601

    nlohmann::json to_json() const;
    void write(const std::filesystem::path& out_dir) const;
};

std::string utc_timestamp();

}  // namespace contagion
