#include "gapkit/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <filesystem>
#include <future>
#include <stdexcept>

namespace gapkit {

namespace {

std::uint64_t isqrt64(std::uint64_t x) {
  if (x == 0) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Witness ladders verified against the Jaeschke / Sinclair tables.
bool miller_rabin_64(std::uint64_t n) {
  static constexpr std::uint64_t kTier1[] = {2, 3};
  static constexpr std::uint64_t kTier2[] = {2, 3, 5, 7};
  static constexpr std::uint64_t kTier3[] = {2, 3, 5, 7, 11, 13};
  static constexpr std::uint64_t kTier4[] = {2, 3, 5, 7, 11, 13, 17};
  static constexpr std::uint64_t kTier5[] = {2,  3,  5,  7,  11, 13,
                                             17, 19, 23, 29, 31, 37};
  const std::uint64_t* witnesses = kTier5;
  std::size_t count = 12;
  if (n < 1373653ull) {
    witnesses = kTier1;
    count = 2;
  } else if (n < 3215031751ull) {
    witnesses = kTier2;
    count = 4;
  } else if (n < 3474749660383ull) {
    witnesses = kTier3;
    count = 6;
  } else if (n < 341550071728321ull) {
    witnesses = kTier4;
    count = 7;
  }
  for (std::size_t i = 0; i < count; ++i)
    if (!strong_probable_prime(n, witnesses[i])) return false;
  return true;
}

constexpr std::uint64_t kTrialPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23,
                                          29, 31, 37, 41, 43, 47, 53, 59};

}  // namespace

void SieveConfig::validate() const {
  if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
  if (limit > kMaxSieveLimit)
    throw CapacityError("sieve limit exceeds supported maximum 2^52");
  if (segment_size < 1024)
    throw std::invalid_argument("segment_size must be >= 1024");
  if (parallel_segments < 1)
    throw std::invalid_argument("parallel_segments must be >= 1");
}

std::vector<std::uint64_t> small_primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  if (limit < 3) return out;
  // Bitset over odd values 3,5,...
  const std::uint64_t count = (limit - 3) / 2 + 1;
  std::vector<std::uint64_t> bits((count + 63) / 64, ~0ull);
  const std::uint64_t root = isqrt64(limit);
  for (std::uint64_t v = 3; v <= root; v += 2) {
    const std::uint64_t idx = (v - 3) / 2;
    if (!(bits[idx >> 6] & (1ull << (idx & 63)))) continue;
    for (std::uint64_t q = v * v; q <= limit; q += 2 * v) {
      const std::uint64_t j = (q - 3) / 2;
      bits[j >> 6] &= ~(1ull << (j & 63));
    }
  }
  for (std::uint64_t i = 0; i < count; ++i)
    if (bits[i >> 6] & (1ull << (i & 63))) out.push_back(3 + 2 * i);
  return out;
}

SegmentedSieve::SegmentedSieve(SieveConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  candidate_count_ = cfg_.limit >= 3 ? (cfg_.limit - 3) / 2 + 1 : 0;
  segment_count_ =
      (candidate_count_ + cfg_.segment_size - 1) / cfg_.segment_size;
  auto base = small_primes_up_to(isqrt64(cfg_.limit));
  base_primes_.assign(base.begin() + (base.empty() ? 0 : 1), base.end());
}

Segment SegmentedSieve::make_segment(std::uint64_t index) const {
  Segment seg;
  seg.index = index;
  const std::uint64_t first_candidate = index * cfg_.segment_size;
  seg.first_value = 3 + 2 * first_candidate;
  seg.count = std::min<std::uint64_t>(cfg_.segment_size,
                                      candidate_count_ - first_candidate);
  seg.bits.assign((seg.count + 63) / 64, ~0ull);
  const std::uint64_t last_value = seg.first_value + 2 * (seg.count - 1);
  for (std::uint64_t p : base_primes_) {
    if (p * p > last_value) break;
    std::uint64_t q = std::max(p * p, ((seg.first_value + p - 1) / p) * p);
    if ((q & 1) == 0) q += p;
    if (q > last_value) continue;
    for (std::uint64_t j = (q - seg.first_value) / 2; j < seg.count; j += p)
      seg.bits[j >> 6] &= ~(1ull << (j & 63));
  }
  if (seg.count & 63) seg.bits.back() &= (1ull << (seg.count & 63)) - 1;
  return seg;
}

void SegmentedSieve::for_each_segment(
    const std::function<void(const Segment&)>& fn,
    std::uint64_t first_segment) const {
  if (cfg_.parallel_segments <= 1) {
    for (std::uint64_t i = first_segment; i < segment_count_; ++i) {
      Segment seg = make_segment(i);
      fn(seg);
    }
    return;
  }
  std::deque<std::future<Segment>> window;
  std::uint64_t scheduled = first_segment;
  auto schedule = [&] {
    if (scheduled >= segment_count_) return;
    const std::uint64_t i = scheduled++;
    window.push_back(std::async(std::launch::async,
                                [this, i] { return make_segment(i); }));
  };
  for (unsigned i = 0; i < cfg_.parallel_segments; ++i) schedule();
  while (!window.empty()) {
    Segment seg = window.front().get();
    window.pop_front();
    schedule();
    fn(seg);
  }
}

std::vector<PrimeIndexEntry> primes_up_to(const SieveConfig& cfg) {
  std::vector<PrimeIndexEntry> out;
  if (cfg.limit >= 3)
    out.reserve(static_cast<std::size_t>(
        1.2 * static_cast<double>(cfg.limit) /
        std::log(static_cast<double>(cfg.limit))));
  for_each_prime(cfg, [&](PrimeIndexEntry e) { out.push_back(e); });
  return out;
}

std::vector<std::uint64_t> prime_values_up_to(std::uint64_t limit) {
  SieveConfig cfg;
  cfg.limit = limit;
  std::vector<std::uint64_t> out;
  if (limit >= 3)
    out.reserve(static_cast<std::size_t>(1.2 * static_cast<double>(limit) /
                                         std::log(static_cast<double>(limit))));
  for_each_prime(cfg, [&](PrimeIndexEntry e) { out.push_back(e.p); });
  return out;
}

std::uint64_t prime_upper_bound(std::uint64_t n) {
  if (n < 6) return 13;
  const double nd = static_cast<double>(n);
  const double bound = nd * (std::log(nd) + std::log(std::log(nd)));
  if (bound >= static_cast<double>(kMaxSieveLimit))
    throw CapacityError("prime index out of supported range");
  return static_cast<std::uint64_t>(bound) + 2;
}

PrimeIndexEntry nth_prime(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("prime indices start at 1");
  SieveConfig cfg;
  cfg.limit = prime_upper_bound(n);
  PrimeIndexEntry hit{0, 0};
  for_each_prime(cfg, [&](PrimeIndexEntry e) {
    if (e.n == n) hit = e;
  });
  if (hit.n != n) throw CapacityError("nth_prime: bound estimate too small");
  return hit;
}

bool is_prime_64(std::uint64_t x) noexcept {
  if (x < 2) return false;
  if (x == 2) return true;
  if ((x & 1) == 0) return false;
  for (std::uint64_t p : kTrialPrimes) {
    if (x == p) return true;
    if (x % p == 0) return false;
  }
  if (x < 61 * 61) return true;
  return miller_rabin_64(x);
}

std::uint64_t next_prime(std::uint64_t x) {
  if (x < 2) return 2;
  if (x >= kLargestPrime64)
    throw CapacityError("no prime above x fits in 64 bits");
  std::uint64_t c = x + 1;
  if (c == 2) return 2;
  if ((c & 1) == 0) ++c;
  while (!is_prime_64(c)) c += 2;
  return c;
}

std::uint64_t prev_prime(std::uint64_t x) {
  if (x < 3) throw std::domain_error("no prime below x");
  if (x == 3) return 2;
  std::uint64_t c = x - 1;
  if ((c & 1) == 0) --c;
  while (c >= 3 && !is_prime_64(c)) c -= 2;
  return c >= 3 ? c : 2;
}

void write_segment_cache(const std::string& path, const SieveConfig& cfg) {
  cfg.validate();
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open segment cache for writing: " + path);
  SegmentedSieve sieve(cfg);
  bool ok = true;
  sieve.for_each_segment([&](const Segment& seg) {
    unsigned char header[8];
    std::uint64_t base = seg.first_value;
    for (int i = 0; i < 8; ++i) header[i] = static_cast<unsigned char>(base >> (8 * i));
    ok = ok && std::fwrite(header, 1, 8, f) == 8;
    for (std::uint64_t word : seg.bits) {
      unsigned char enc[8];
      for (int i = 0; i < 8; ++i) enc[i] = static_cast<unsigned char>(word >> (8 * i));
      ok = ok && std::fwrite(enc, 1, 8, f) == 8;
    }
  });
  const int close_rc = std::fclose(f);
  ok = ok && close_rc == 0;
  if (!ok) {
    std::remove(tmp.c_str());
    throw std::runtime_error("segment cache write failed: " + path);
  }
  std::filesystem::rename(tmp, path);
}

void read_segment_cache(const std::string& path, const SieveConfig& cfg,
                        const std::function<void(const Segment&)>& fn) {
  cfg.validate();
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open segment cache: " + path);
  const std::uint64_t candidates = cfg.limit >= 3 ? (cfg.limit - 3) / 2 + 1 : 0;
  const std::uint64_t segments =
      (candidates + cfg.segment_size - 1) / cfg.segment_size;
  bool ok = true;
  for (std::uint64_t idx = 0; idx < segments && ok; ++idx) {
    Segment seg;
    seg.index = idx;
    const std::uint64_t first_candidate = idx * cfg.segment_size;
    seg.count =
        std::min<std::uint64_t>(cfg.segment_size, candidates - first_candidate);
    unsigned char header[8];
    ok = std::fread(header, 1, 8, f) == 8;
    if (!ok) break;
    std::uint64_t base = 0;
    for (int i = 0; i < 8; ++i)
      base |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    seg.first_value = base;
    if (base != 3 + 2 * first_candidate) {
      ok = false;
      break;
    }
    const std::uint64_t words = (seg.count + 63) / 64;
    seg.bits.resize(words);
    for (std::uint64_t w = 0; w < words && ok; ++w) {
      unsigned char enc[8];
      ok = std::fread(enc, 1, 8, f) == 8;
      std::uint64_t word = 0;
      for (int i = 0; i < 8; ++i)
        word |= static_cast<std::uint64_t>(enc[i]) << (8 * i);
      seg.bits[w] = word;
    }
    if (ok) fn(seg);
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("segment cache corrupt or truncated: " + path);
}

}  // namespace gapkit
