#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace contagion {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags keep independent consumers of one master seed apart.
enum class Stream : std::uint64_t {
    balance_sheets = 1,
    network = 2,
    replica = 3,
    replica_attempt = 4,
    system = 5,
    erdos_renyi = 6,
};

// Counter-based derivation: the seed for (master, stream, i, j, ...) depends
// only on its arguments, never on how many draws happened elsewhere.
inline std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::initializer_list<std::uint64_t> counters = {}) {
    std::uint64_t h = mix64(master ^ mix64(static_cast<std::uint64_t>(stream)));
    for (auto c : counters) h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t master, Stream stream, std::initializer_list<std::uint64_t> counters = {}) {
    return Rng(derive_seed(master, stream, counters));
}

}  // namespace contagion
