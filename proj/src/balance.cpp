#include "contagion/balance.hpp"

#include <algorithm>

namespace contagion {

namespace {

void build_index(std::size_t n, const std::vector<Exposure>& entries, bool by_borrower,
                 std::vector<std::size_t>& offsets, std::vector<Link>& links) {
    offsets.assign(n + 1, 0);
    for (const auto& e : entries) ++offsets[(by_borrower ? e.borrower : e.lender) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    links.resize(entries.size());
    auto cursor = offsets;
    // Entries are sorted by (borrower, lender), so both views come out sorted
    // by peer.
    for (const auto& e : entries) {
        const auto owner = by_borrower ? e.borrower : e.lender;
        const auto peer = by_borrower ? e.lender : e.borrower;
        links[cursor[owner]++] = Link{peer, e.amount};
    }
}

}  // namespace

ExposureMatrix::ExposureMatrix(std::size_t n, std::vector<Exposure> entries)
    : n_(n), entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.borrower >= n_ || e.lender >= n_) {
            throw ValidationError("exposure index out of range (" + std::to_string(e.borrower) + ", " +
                                  std::to_string(e.lender) + ") for " + std::to_string(n_) + " banks");
        }
        if (e.borrower == e.lender) {
            throw ValidationError("self-exposure for bank index " + std::to_string(e.borrower));
        }
        if (e.amount <= Money{}) {
            throw ValidationError("non-positive exposure " + format_money(e.amount) + " from " +
                                  std::to_string(e.borrower) + " to " + std::to_string(e.lender));
        }
    }
    std::sort(entries_.begin(), entries_.end(), [](const Exposure& a, const Exposure& b) {
        return a.borrower != b.borrower ? a.borrower < b.borrower : a.lender < b.lender;
    });
    auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const Exposure& a, const Exposure& b) {
        return a.borrower == b.borrower && a.lender == b.lender;
    });
    if (dup != entries_.end()) {
        throw ValidationError("duplicate exposure pair (" + std::to_string(dup->borrower) + ", " +
                              std::to_string(dup->lender) + ")");
    }
    build_index(n_, entries_, true, row_offsets_, rows_);
    build_index(n_, entries_, false, col_offsets_, cols_);
}

std::span<const Link> ExposureMatrix::borrowed_from(BankIndex borrower) const {
    if (borrower >= n_) return {};
    return std::span<const Link>(rows_).subspan(row_offsets_[borrower],
                                                row_offsets_[borrower + 1] - row_offsets_[borrower]);
}

std::span<const Link> ExposureMatrix::lent_to(BankIndex lender) const {
    if (lender >= n_) return {};
    return std::span<const Link>(cols_).subspan(col_offsets_[lender], col_offsets_[lender + 1] - col_offsets_[lender]);
}

Money ExposureMatrix::amount(BankIndex borrower, BankIndex lender) const {
    const auto row = borrowed_from(borrower);
    auto it = std::lower_bound(row.begin(), row.end(), lender,
                               [](const Link& l, BankIndex peer) { return l.peer < peer; });
    return it != row.end() && it->peer == lender ? it->amount : Money{};
}

Money ExposureMatrix::interbank_liabilities(BankIndex bank) const {
    Money sum;
    for (const auto& l : borrowed_from(bank)) sum += l.amount;
    return sum;
}

Money ExposureMatrix::interbank_assets(BankIndex bank) const {
    Money sum;
    for (const auto& l : lent_to(bank)) sum += l.amount;
    return sum;
}

Money ExposureMatrix::total_volume() const {
    Money sum;
    for (const auto& e : entries_) sum += e.amount;
    return sum;
}

NetExposureMatrix net_exposures(const ExposureMatrix& exposures) {
    std::vector<Exposure> net;
    net.reserve(exposures.entry_count());
    for (const auto& e : exposures.entries()) {
        const Money diff = e.amount - exposures.amount(e.lender, e.borrower);
        if (diff > Money{}) net.push_back(Exposure{e.borrower, e.lender, diff});
    }
    return NetExposureMatrix(ExposureMatrix(exposures.size(), std::move(net)));
}

BankingSystem::BankingSystem(std::vector<BalanceSheet> sheets, ExposureMatrix exposures)
    : sheets_(std::move(sheets)), exposures_(std::move(exposures)) {
    if (exposures_.size() != sheets_.size()) {
        throw ValidationError("exposure matrix covers " + std::to_string(exposures_.size()) + " banks but " +
                              std::to_string(sheets_.size()) + " balance sheets were given");
    }
    for (BankIndex i = 0; i < sheets_.size(); ++i) {
        const auto& s = sheets_[i];
        const std::string who = "bank '" + s.bank_id + "'";
        if (s.bank_id.empty()) throw ValidationError("empty bank id at index " + std::to_string(i));
        if (!ids_.emplace(s.bank_id, i).second) throw ValidationError("duplicate " + who);
        if (s.total_assets < Money{} || s.total_liabilities < Money{} || s.liquid_assets < Money{}) {
            throw ValidationError(who + " has a negative balance-sheet entry");
        }
        if (s.liquid_assets > s.total_assets) {
            throw ValidationError(who + " has liquid assets exceeding total assets");
        }
        if (s.capital() <= Money{}) {
            throw ValidationError(who + " has non-positive capital " + format_money(s.capital()));
        }
        if (exposures_.interbank_assets(i) > s.total_assets) {
            throw ValidationError(who + " has interbank assets " + format_money(exposures_.interbank_assets(i)) +
                                  " exceeding total assets " + format_money(s.total_assets));
        }
        if (exposures_.interbank_liabilities(i) > s.total_liabilities) {
            throw ValidationError(who + " has interbank liabilities " +
                                  format_money(exposures_.interbank_liabilities(i)) +
                                  " exceeding total liabilities " + format_money(s.total_liabilities));
        }
        total_assets_ += s.total_assets;
    }
}

const BalanceSheet& BankingSystem::sheet(BankIndex i) const {
    if (i >= sheets_.size()) throw std::out_of_range("bank index " + std::to_string(i) + " out of range");
    return sheets_[i];
}

BankIndex BankingSystem::index_of(const std::string& bank_id) const {
    if (auto it = ids_.find(bank_id); it != ids_.end()) return it->second;
    throw std::out_of_range("unknown bank id '" + bank_id + "'");
}

Money capital(const BankingSystem& system, BankIndex i) { return system.sheet(i).capital(); }

double leverage(const BalanceSheet& sheet) {
    const Money c = sheet.capital();
    if (c <= Money{}) throw ZeroCapital("bank '" + sheet.bank_id + "' has non-positive capital");
    return sheet.total_assets.to_double() / c.to_double();
}

double leverage(const BankingSystem& system, BankIndex i) { return leverage(system.sheet(i)); }

std::vector<Money> capitals(const BankingSystem& system) {
    std::vector<Money> out;
    out.reserve(system.size());
    for (const auto& s : system.balance_sheets()) out.push_back(s.capital());
    return out;
}

}  // namespace contagion
