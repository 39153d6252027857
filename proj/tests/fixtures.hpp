#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "contagion/balance.hpp"

namespace fixture {

struct Bank {
    std::string id;
    std::int64_t assets;
    std::int64_t liabilities;
    std::int64_t liquid = 0;
};

struct Loan {
    std::size_t borrower;
    std::size_t lender;
    std::int64_t amount;
};

// Amounts in cents.
inline contagion::BankingSystem make(const std::vector<Bank>& banks, const std::vector<Loan>& loans = {}) {
    using contagion::Money;
    std::vector<contagion::BalanceSheet> sheets;
    for (const auto& b : banks) sheets.push_back({b.id, Money(b.assets), Money(b.liabilities), Money(b.liquid)});
    std::vector<contagion::Exposure> entries;
    for (const auto& l : loans) entries.push_back({l.borrower, l.lender, Money(l.amount)});
    return contagion::BankingSystem(std::move(sheets), contagion::ExposureMatrix(banks.size(), std::move(entries)));
}

// The 3-bank chain: A borrowed 10 from B, B borrowed 8 from C. Seeding A
// costs B 10 against capital 5; C then loses 8 against capital cap_c.
inline contagion::BankingSystem chain(std::int64_t cap_c) {
    return make({{"A", 100, 50}, {"B", 100, 95}, {"C", 100, 100 - cap_c}}, {{0, 1, 10}, {1, 2, 8}});
}

}  // namespace fixture
