#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "contagion/money.hpp"

namespace contagion {

using BankIndex = std::size_t;

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroCapital : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct BalanceSheet {
    std::string bank_id;
    Money total_assets;
    Money total_liabilities;
    Money liquid_assets;

    Money capital() const { return total_assets - total_liabilities; }

    friend bool operator==(const BalanceSheet&, const BalanceSheet&) = default;
};

// One directed claim: `borrower` owes `amount` to `lender` (L_ij with
// i = borrower, j = lender).
struct Exposure {
    BankIndex borrower;
    BankIndex lender;
    Money amount;

    friend bool operator==(const Exposure&, const Exposure&) = default;
};

// Counterpart of a bank in one of its adjacency rows.
struct Link {
    BankIndex peer;
    Money amount;
};

// Sparse interbank liability matrix. Entries are strictly positive, never on
// the diagonal, unique per (borrower, lender) and stored sorted by
// (borrower, lender). Both row (what a bank owes) and column (what a bank is
// owed) views are indexed.
class ExposureMatrix {
public:
    ExposureMatrix() = default;
    // Validates and sorts. Throws ValidationError on zero/negative amounts,
    // self-exposures, out-of-range indices or duplicated pairs.
    ExposureMatrix(std::size_t n, std::vector<Exposure> entries);

    std::size_t size() const { return n_; }
    std::size_t entry_count() const { return entries_.size(); }
    std::span<const Exposure> entries() const { return entries_; }

    // Lenders of `borrower` with amounts owed to each (row i of L).
    std::span<const Link> borrowed_from(BankIndex borrower) const;
    // Borrowers of `lender` with amounts owed by each (column j of L).
    std::span<const Link> lent_to(BankIndex lender) const;

    // Amount borrower owes lender, zero when absent.
    Money amount(BankIndex borrower, BankIndex lender) const;

    Money interbank_liabilities(BankIndex bank) const;
    Money interbank_assets(BankIndex bank) const;
    Money total_volume() const;

    friend bool operator==(const ExposureMatrix& a, const ExposureMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Exposure> entries_;
    std::vector<std::size_t> row_offsets_;
    std::vector<Link> rows_;
    std::vector<std::size_t> col_offsets_;
    std::vector<Link> cols_;
};

// Pairwise-netted exposures: at most one direction per pair is present.
class NetExposureMatrix {
public:
    NetExposureMatrix() = default;

    std::size_t size() const { return matrix_.size(); }
    const ExposureMatrix& matrix() const { return matrix_; }
    std::span<const Link> borrowed_from(BankIndex borrower) const { return matrix_.borrowed_from(borrower); }
    std::span<const Link> lent_to(BankIndex lender) const { return matrix_.lent_to(lender); }
    Money amount(BankIndex borrower, BankIndex lender) const { return matrix_.amount(borrower, lender); }

private:
    friend NetExposureMatrix net_exposures(const ExposureMatrix& exposures);
    explicit NetExposureMatrix(ExposureMatrix m) : matrix_(std::move(m)) {}
    ExposureMatrix matrix_;
};

// L^net_ij = max(0, L_ij - L_ji).
NetExposureMatrix net_exposures(const ExposureMatrix& exposures);

// Immutable after construction; safe to share across worker threads.
class BankingSystem {
public:
    BankingSystem() = default;
    // Enforces the ingestion invariants and throws ValidationError naming the
    // offending bank:
    //  - non-negative amounts, liquid <= total assets, capital > 0
    //  - interbank assets <= total assets, interbank liabilities <= total
    //    liabilities
    //  - unique bank ids, matrix dimension equal to bank count
    BankingSystem(std::vector<BalanceSheet> sheets, ExposureMatrix exposures);

    std::size_t size() const { return sheets_.size(); }
    std::span<const BalanceSheet> balance_sheets() const { return sheets_; }
    const BalanceSheet& sheet(BankIndex i) const;
    const ExposureMatrix& exposures() const { return exposures_; }

    // Dense index for an id; throws std::out_of_range when unknown.
    BankIndex index_of(const std::string& bank_id) const;

    Money total_system_assets() const { return total_assets_; }

    friend bool operator==(const BankingSystem& a, const BankingSystem& b) {
        return a.sheets_ == b.sheets_ && a.exposures_ == b.exposures_;
    }

private:
    std::vector<BalanceSheet> sheets_;
    ExposureMatrix exposures_;
    std::unordered_map<std::string, BankIndex> ids_;
    Money total_assets_;
};

// A_i^tot - L_i^tot. Throws std::out_of_range on a bad index.
Money capital(const BankingSystem& system, BankIndex i);

// A_i^tot / (A_i^tot - L_i^tot). Throws ZeroCapital when capital <= 0.
double leverage(const BankingSystem& system, BankIndex i);
double leverage(const BalanceSheet& sheet);

std::vector<Money> capitals(const BankingSystem& system);

}  // namespace contagion
