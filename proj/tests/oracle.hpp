#pragma once

// Independent reference implementations used only by tests. Nothing here
// shares code with the library under test: primality is trial division or
// BPSW (Miller-Rabin base 2 + strong Lucas), and the gap statistics are
// direct summations over a prime table, evaluated in reverse order so that
// agreement with the library's streaming recurrences is meaningful.

#include <cstdint>
#include <span>
#include <vector>

#include "gapkit/rational.hpp"

namespace oracle {

bool trial_is_prime(std::uint64_t x);
std::vector<std::uint64_t> trial_primes_up_to(std::uint64_t limit);

// Baillie-PSW probable-prime test; no known 64-bit counterexamples.
bool bpsw_is_prime(std::uint64_t n);

// Lucas-Lehmer verdict for the Mersenne number 2^61 - 1.
bool lucas_lehmer_m61();

// primes[k-1] = p_k throughout; every function needs p_{n+1} available.
gapkit::Rational mean_gap(std::uint64_t n,
                          std::span<const std::uint64_t> primes);
gapkit::Rational weighted_gap_sum(std::uint64_t n,
                                  std::span<const std::uint64_t> primes);
gapkit::Rational tail_sum(std::uint64_t m, std::uint64_t n,
                          std::span<const std::uint64_t> primes);

// Literal two-sided evaluation of the three telescoping identities.
bool identities_hold(std::uint64_t m, std::uint64_t n,
                     std::span<const std::uint64_t> primes);

struct GapRow {
  std::uint64_t n, p, gap;
};
std::vector<GapRow> record_gaps(std::span<const std::uint64_t> primes);
std::vector<GapRow> first_occurrences(std::span<const std::uint64_t> primes);

}  // namespace oracle
