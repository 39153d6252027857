#include "contagion/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace contagion {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Row {
    std::size_t line;
    std::vector<std::string> fields;
};

std::vector<Row> read_rows(std::istream& in, const std::string& name, const std::vector<std::string>& header) {
    std::vector<Row> rows;
    std::string text;
    std::size_t line = 0;
    bool seen_header = false;
    while (std::getline(in, text)) {
        ++line;
        const auto body = trim(text);
        if (body.empty()) continue;
        const auto fields = split(body);
        if (!seen_header) {
            if (fields.size() != header.size() || !std::equal(fields.begin(), fields.end(), header.begin())) {
                std::string want;
                for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
                throw ParseError(name, line, "expected header '" + want + "'");
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != header.size()) {
            throw ParseError(name, line,
                             "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back(Row{line, std::vector<std::string>(fields.begin(), fields.end())});
    }
    if (!seen_header) throw ParseError(name, line == 0 ? 1 : line, "missing header");
    return rows;
}

Money amount_field(const Row& row, std::size_t col, const std::string& name) {
    try {
        return parse_money(row.fields[col]);
    } catch (const std::exception& e) {
        throw ParseError(name, row.line, e.what());
    }
}

const std::vector<std::string> kBalanceHeader{"bank_id", "total_assets", "total_liabilities", "liquid_assets"};
const std::vector<std::string> kExposureHeader{"from_id", "to_id", "amount"};

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

BankingSystem read_system(std::istream& balance, std::istream& exposures, const std::string& balance_name,
                          const std::string& exposures_name) {
    const auto bank_rows = read_rows(balance, balance_name, kBalanceHeader);
    std::vector<BalanceSheet> sheets;
    sheets.reserve(bank_rows.size());
    std::unordered_map<std::string, BankIndex> index;
    for (const auto& row : bank_rows) {
        const auto& id = row.fields[0];
        if (id.empty()) throw ParseError(balance_name, row.line, "empty bank_id");
        if (!index.emplace(id, sheets.size()).second) {
            throw ValidationError(balance_name + ":" + std::to_string(row.line) + ": duplicate bank '" + id + "'");
        }
        sheets.push_back(BalanceSheet{id, amount_field(row, 1, balance_name), amount_field(row, 2, balance_name),
                                      amount_field(row, 3, balance_name)});
    }

    const auto exposure_rows = read_rows(exposures, exposures_name, kExposureHeader);
    std::vector<Exposure> entries;
    entries.reserve(exposure_rows.size());
    std::unordered_map<std::uint64_t, std::size_t> first_line;
    const auto n = sheets.size();
    for (const auto& row : exposure_rows) {
        auto resolve = [&](const std::string& id) {
            const auto it = index.find(id);
            if (it == index.end()) {
                throw ValidationError(exposures_name + ":" + std::to_string(row.line) + ": unknown bank '" + id + "'");
            }
            return it->second;
        };
        const auto where = exposures_name + ":" + std::to_string(row.line) + ": ";
        const auto borrower = resolve(row.fields[0]);
        const auto lender = resolve(row.fields[1]);
        const auto amount = amount_field(row, 2, exposures_name);
        if (borrower == lender) throw ValidationError(where + "self-exposure of bank '" + row.fields[0] + "'");
        if (amount <= Money{}) {
            throw ValidationError(where + "non-positive exposure from '" + row.fields[0] + "' to '" + row.fields[1] + "'");
        }
        const auto key = static_cast<std::uint64_t>(borrower) * n + lender;
        const auto [it, fresh] = first_line.emplace(key, row.line);
        if (!fresh) {
            throw ValidationError(exposures_name + ": duplicate exposure from '" + row.fields[0] + "' to '" +
                                  row.fields[1] + "' on lines " + std::to_string(it->second) + " and " +
                                  std::to_string(row.line));
        }
        entries.push_back(Exposure{borrower, lender, amount});
    }
    return BankingSystem(std::move(sheets), ExposureMatrix(n, std::move(entries)));
}

BankingSystem load_system(const std::filesystem::path& balance_csv, const std::filesystem::path& exposures_csv) {
    auto balance = open_in(balance_csv);
    auto exposures = open_in(exposures_csv);
    return read_system(balance, exposures, balance_csv.string(), exposures_csv.string());
}

void write_system(const BankingSystem& system, std::ostream& balance, std::ostream& exposures) {
    const auto sheets = system.balance_sheets();
    std::vector<BankIndex> order(sheets.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](BankIndex a, BankIndex b) { return sheets[a].bank_id < sheets[b].bank_id; });

    balance << "bank_id,total_assets,total_liabilities,liquid_assets\n";
    for (auto i : order) {
        const auto& s = sheets[i];
        balance << s.bank_id << ',' << format_money(s.total_assets) << ',' << format_money(s.total_liabilities) << ','
                << format_money(s.liquid_assets) << '\n';
    }

    std::vector<const Exposure*> rows;
    for (const auto& e : system.exposures().entries()) rows.push_back(&e);
    std::sort(rows.begin(), rows.end(), [&](const Exposure* a, const Exposure* b) {
        const auto& fa = sheets[a->borrower].bank_id;
        const auto& fb = sheets[b->borrower].bank_id;
        if (fa != fb) return fa < fb;
        return sheets[a->lender].bank_id < sheets[b->lender].bank_id;
    });
    exposures << "from_id,to_id,amount\n";
    for (const auto* e : rows) {
        exposures << sheets[e->borrower].bank_id << ',' << sheets[e->lender].bank_id << ',' << format_money(e->amount)
                  << '\n';
    }
}

void save_system(const BankingSystem& system, const std::filesystem::path& balance_csv,
                 const std::filesystem::path& exposures_csv) {
    auto balance = open_out(balance_csv);
    auto exposures = open_out(exposures_csv);
    write_system(system, balance, exposures);
    if (!balance.flush() || !exposures.flush()) throw std::runtime_error("write failed");
}

std::vector<double> parse_grid(std::string_view text) {
    auto number = [&](std::string_view s) {
        s = trim(s);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw std::invalid_argument("bad grid '" + std::string(text) + "'");
        }
        return v;
    };
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos) return {number(text)};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw std::invalid_argument("grid must be start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = number(text.substr(0, c1));
    const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(text.substr(c2 + 1));
    if (!(step > 0.0) || stop < start) {
        throw std::invalid_argument("grid needs step > 0 and stop >= start, got '" + std::string(text) + "'");
    }
    constexpr double tol = 1e-12;
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        double v = start + static_cast<double>(k) * step;
        if (v > stop + tol) break;
        if (std::abs(v - stop) <= tol) v = stop;
        out.push_back(v);
        if (out.size() > 10'000'000) throw std::invalid_argument("grid too large");
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::string text;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) text += ',';
            text += fields[k];
        }
        text += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    auto out = open_out(path);
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string sha256_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 unavailable");
    }
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[digest[k] >> 4];
        out += hex[digest[k] & 15];
    }
    return out;
}

nlohmann::json RunManifest::to_json() const {
    return nlohmann::json{{"command", command},         {"config", config},
                          {"rng_seed", rng_seed},       {"input_digests", input_digests},
                          {"tool_version", tool_version}, {"timestamp", timestamp}};
}

void RunManifest::write(const std::filesystem::path& out_dir) const {
    auto out = open_out(out_dir / "manifest.json");
    out << to_json().dump(2) << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace contagion
