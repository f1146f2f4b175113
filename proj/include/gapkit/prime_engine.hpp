#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gapkit/errors.hpp"

namespace gapkit {

struct PrimeIndexEntry {
  std::uint64_t n;  // 1-based index
  std::uint64_t p;
};

inline constexpr std::uint64_t kMaxSieveLimit = 1ull << 52;
inline constexpr std::uint64_t kLargestPrime64 = 18446744073709551557ull;

struct SieveConfig {
  std::uint64_t limit = 100'000'000;
  std::uint64_t segment_size = 1ull << 20;  // odd candidates per segment
  unsigned parallel_segments = 1;

  void validate() const;  // std::invalid_argument / CapacityError
};

// Simple bitset sieve; used for base primes and as a test oracle at small scale.
std::vector<std::uint64_t> small_primes_up_to(std::uint64_t limit);

// Bitset over odd candidates first_value, first_value+2, ...; set bit <=> prime.
struct Segment {
  std::uint64_t index;
  std::uint64_t first_value;
  std::uint64_t count;
  std::vector<std::uint64_t> bits;
};

class SegmentedSieve {
 public:
  explicit SegmentedSieve(SieveConfig cfg);

  std::uint64_t segment_count() const { return segment_count_; }
  std::uint64_t candidate_count() const { return candidate_count_; }
  const SieveConfig& config() const { return cfg_; }

  Segment make_segment(std::uint64_t index) const;

  // Delivers segments to fn strictly in index order starting at first_segment,
  // sieving up to cfg.parallel_segments segments concurrently.
  void for_each_segment(const std::function<void(const Segment&)>& fn,
                        std::uint64_t first_segment = 0) const;

 private:
  SieveConfig cfg_;
  std::uint64_t candidate_count_ = 0;
  std::uint64_t segment_count_ = 0;
  std::vector<std::uint64_t> base_primes_;  // odd primes <= sqrt(limit)
};

namespace detail {
template <class F>
void scan_segment_bits(const Segment& seg, std::uint64_t& n, F& fn) {
  const std::uint64_t words = (seg.count + 63) / 64;
  for (std::uint64_t w = 0; w < words; ++w) {
    std::uint64_t bits = seg.bits[w];
    while (bits) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
      bits &= bits - 1;
      fn(PrimeIndexEntry{++n, seg.first_value + 2 * (w * 64 + b)});
    }
  }
}
}  // namespace detail

template <class F>
void for_each_prime(const SieveConfig& cfg, F&& fn) {
  cfg.validate();
  std::uint64_t n = 0;
  fn(PrimeIndexEntry{++n, 2});
  SegmentedSieve sieve(cfg);
  sieve.for_each_segment(
      [&](const Segment& seg) { detail::scan_segment_bits(seg, n, fn); });
}

std::vector<PrimeIndexEntry> primes_up_to(const SieveConfig& cfg);
std::vector<std::uint64_t> prime_values_up_to(std::uint64_t limit);

// Rosser-style overestimate of p_n, used to size sieves for index ranges.
std::uint64_t prime_upper_bound(std::uint64_t n);

PrimeIndexEntry nth_prime(std::uint64_t n);

bool is_prime_64(std::uint64_t x) noexcept;
std::uint64_t next_prime(std::uint64_t x);  // CapacityError past kLargestPrime64
std::uint64_t prev_prime(std::uint64_t x);  // std::domain_error for x < 3

// On-disk segment cache: per segment an 8-byte little-endian base value
// followed by the segment's bitset words as little-endian u64s.
void write_segment_cache(const std::string& path, const SieveConfig& cfg);
void read_segment_cache(const std::string& path, const SieveConfig& cfg,
                        const std::function<void(const Segment&)>& fn);

template <class F>
void for_each_prime_cached(const std::string& path, const SieveConfig& cfg,
                           F&& fn) {
  cfg.validate();
  std::uint64_t n = 0;
  fn(PrimeIndexEntry{++n, 2});
  read_segment_cache(path, cfg, [&](const Segment& seg) {
    detail::scan_segment_bits(seg, n, fn);
  });
}

}  // namespace gapkit
