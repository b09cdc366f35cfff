#include "gaussfermat/census.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace gaussfermat {

namespace {

using std::uint32_t;

// Ranges below this bound are sieved; above it every candidate is tested
// with Miller-Rabin / factorized individually.
constexpr u64 kSieveLimit = u64{1} << 32;
// Sub-block length for sieving, small enough to stay cache resident.
constexpr u64 kChunk = u64{1} << 15;
// Distinct primes <= 2^16 dividing any n < 2^32.
constexpr std::size_t kMaxSmallFactors = 9;

std::vector<uint32_t> primes_up_to(u64 limit) {
  std::vector<uint8_t> composite(limit + 1, 0);
  std::vector<uint32_t> primes;
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<uint32_t>(p));
    for (u64 m = p * p; m <= limit; m += p) composite[m] = 1;
  }
  return primes;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Primality (and optionally factorization) of every integer in [lo, hi).
class Segment {
 public:
  enum class Mode { Primality, Factors };

  Segment(u64 lo, u64 hi, const std::vector<uint32_t>& base_primes, Mode mode)
      : lo_(lo), hi_(hi), mode_(mode), sieved_(hi <= kSieveLimit) {
    if (!sieved_) return;
    const u64 root = isqrt(hi - 1);
    if (mode == Mode::Primality) {
      composite_.assign(hi - lo, 0);
      for (uint32_t p32 : base_primes) {
        const u64 p = p32;
        if (p > root) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        for (u64 m = start; m < hi; m += p) composite_[m - lo] = 1;
      }
    } else {
      slots_.assign(hi - lo, Slot{});
      for (uint32_t p32 : base_primes) {
        const u64 p = p32;
        if (p > root) break;
        for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) {
          Slot& s = slots_[m - lo];
          s.primes[s.count++] = p32;
        }
      }
    }
  }

  bool is_prime(u64 n) const {
    if (!sieved_) return gaussfermat::is_prime(n);
    if (mode_ == Mode::Primality) return n >= 2 && composite_[n - lo_] == 0;
    const Slot& s = slots_[n - lo_];
    return n >= 2 && (s.count == 0 || (s.count == 1 && s.primes[0] == n));
  }

  Factorization factorization(u64 n) const {
    if (!sieved_ || mode_ != Mode::Factors) return factorize(n);
    const Slot& s = slots_[n - lo_];
    Factorization f;
    f.n = n;
    u64 rest = n;
    for (uint8_t k = 0; k < s.count; ++k) {
      const u64 p = s.primes[k];
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
    if (rest > 1) f.factors.push_back({rest, 1});
    return f;
  }

 private:
  struct Slot {
    uint32_t primes[kMaxSmallFactors];
    uint8_t count = 0;
  };

  u64 lo_, hi_;
  Mode mode_;
  bool sieved_;
  std::vector<uint8_t> composite_;
  std::vector<Slot> slots_;
};

const std::vector<uint32_t>& sieve_primes() {
  static const std::vector<uint32_t> primes = primes_up_to(u64{1} << 16);
  return primes;
}

// Calls fn(n, segment) for every candidate in [lo, hi) passing the filter.
template <class Fn>
void for_each_candidate(u64 lo, u64 hi, const std::optional<ResidueFilter>& filter,
                        Segment::Mode mode, Fn&& fn) {
  for (u64 chunk_lo = lo; chunk_lo < hi; chunk_lo += std::min(kChunk, hi - chunk_lo)) {
    const u64 chunk_hi = chunk_lo + std::min(kChunk, hi - chunk_lo);
    const Segment segment(chunk_lo, chunk_hi, sieve_primes(), mode);
    u64 n = chunk_lo;
    u64 step = 1;
    if (filter) {
      step = filter->modulus;
      const u64 r = n % filter->modulus;
      n += (filter->residue + filter->modulus - r) % filter->modulus;
    }
    for (; n < chunk_hi; n += step) fn(n, segment);
  }
}

// Runs fn(block_lo, block_hi) over all blocks and returns results in block order.
template <class Result, class Fn>
std::vector<Result> run_blocks(const RangeQuery& q, const CensusControl& control, Fn&& fn) {
  q.validate();
  const u64 span = q.hi - q.lo;
  const u64 blocks = (span + q.block_size - 1) / q.block_size;
  std::vector<Result> results(blocks);
  std::atomic<u64> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex mutex;
  u64 done = 0;

  auto worker = [&] {
    for (;;) {
      if (abort.load() || control.stop.stop_requested()) return;
      const u64 b = next.fetch_add(1);
      if (b >= blocks) return;
      const u64 block_lo = q.lo + b * q.block_size;
      const u64 block_hi = block_lo + std::min(q.block_size, q.hi - block_lo);
      try {
        results[b] = fn(block_lo, block_hi);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        abort = true;
        return;
      }
      if (control.progress) {
        std::lock_guard lock(mutex);
        control.progress(++done, blocks);
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<u64>(q.workers, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (control.stop.stop_requested()) throw CensusCancelled();
  return results;
}

std::vector<u64> concat(std::vector<std::vector<u64>> parts) {
  std::vector<u64> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

template <class Predicate>
std::vector<u64> scan(const RangeQuery& q, const CensusControl& control, Segment::Mode mode,
                      Predicate&& keep) {
  return concat(run_blocks<std::vector<u64>>(q, control, [&](u64 lo, u64 hi) {
    std::vector<u64> found;
    for_each_candidate(lo, hi, q.filter, mode, [&](u64 n, const Segment& s) {
      if (keep(n, s)) found.push_back(n);
    });
    return found;
  }));
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n\v\f");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n\v\f");
  return std::string(s.substr(b, e - b + 1));
}

nlohmann::ordered_json query_json(u64 lo, u64 hi, const std::optional<ResidueFilter>& filter) {
  nlohmann::ordered_json j;
  j["lo"] = lo;
  j["hi"] = hi;
  j["filter"] = filter ? nlohmann::ordered_json(to_string(*filter)) : nlohmann::ordered_json();
  return j;
}

}  // namespace

ResidueFilter parse_residue_filter(std::string_view text) {
  const std::string s = trim(text);
  const auto comma = s.find(',');
  auto fail = [&]() -> ResidueFilter {
    throw std::invalid_argument("malformed residue filter '" + std::string(text) +
                                "', expected MODULUS,RESIDUE");
  };
  if (comma == std::string::npos) return fail();
  const std::string m = trim(s.substr(0, comma));
  const std::string r = trim(s.substr(comma + 1));
  ResidueFilter f{};
  auto [p1, e1] = std::from_chars(m.data(), m.data() + m.size(), f.modulus);
  auto [p2, e2] = std::from_chars(r.data(), r.data() + r.size(), f.residue);
  if (m.empty() || r.empty() || e1 != std::errc{} || e2 != std::errc{} ||
      p1 != m.data() + m.size() || p2 != r.data() + r.size()) {
    return fail();
  }
  if (f.modulus == 0 || f.residue >= f.modulus) {
    throw std::invalid_argument("residue filter requires 0 <= residue < modulus");
  }
  return f;
}

std::string to_string(const ResidueFilter& f) {
  return std::to_string(f.modulus) + "," + std::to_string(f.residue);
}

void RangeQuery::validate() const {
  if (lo < 2 || lo >= hi || hi >= kMaxModulus) {
    throw std::out_of_range("range query requires 2 <= lo < hi < 2^63, got [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (filter && (filter->modulus == 0 || filter->residue >= filter->modulus)) {
    throw std::invalid_argument("residue filter requires 0 <= residue < modulus");
  }
  if (workers == 0) throw std::invalid_argument("worker count must be positive");
  if (block_size == 0) throw std::invalid_argument("block size must be positive");
}

std::vector<u64> search_gfp(const RangeQuery& q, const GaussianBase& z,
                            const CensusControl& control) {
  return scan(q, control, Segment::Mode::Primality, [&](u64 n, const Segment& s) {
    return !s.is_prime(n) && gaussian_fermat_ratio_test(n, z) == TestOutcome::Pass;
  });
}

std::vector<u64> search_fermat_psp(const RangeQuery& q, u64 a, const CensusControl& control) {
  if (a < 2) throw std::invalid_argument("integer base must be >= 2");
  return scan(q, control, Segment::Mode::Primality, [&](u64 n, const Segment& s) {
    return !s.is_prime(n) && classical_fermat_test(n, a) == TestOutcome::Pass;
  });
}

Classifier parse_classifier(std::string_view name) {
  static constexpr std::pair<std::string_view, Classifier> kNames[] = {
      {"g_carmichael", Classifier::GCarmichael},
      {"carmichael", Classifier::Carmichael},
      {"g_cyclic", Classifier::GCyclic},
      {"g_lehmer", Classifier::GLehmer},
      {"congruence_exception", Classifier::CongruenceException},
      {"giuga", Classifier::Giuga},
      {"williams_1", Classifier::Williams1},
      {"twin_pair_product", Classifier::TwinPairProduct},
  };
  for (const auto& [n, c] : kNames) {
    if (n == name) return c;
  }
  throw std::invalid_argument("unknown classifier '" + std::string(name) + "'");
}

std::string_view to_string(Classifier c) {
  switch (c) {
    case Classifier::GCarmichael: return "g_carmichael";
    case Classifier::Carmichael: return "carmichael";
    case Classifier::GCyclic: return "g_cyclic";
    case Classifier::GLehmer: return "g_lehmer";
    case Classifier::CongruenceException: return "congruence_exception";
    case Classifier::Giuga: return "giuga";
    case Classifier::Williams1: return "williams_1";
    case Classifier::TwinPairProduct: return "twin_pair_product";
  }
  return "?";
}

std::vector<u64> search_classifier(const RangeQuery& q, Classifier which, u64 giuga_cap,
                                   const CensusControl& control) {
  q.validate();
  if (which == Classifier::Giuga && q.hi - 1 > giuga_cap) {
    throw std::out_of_range("giuga search reaches " + std::to_string(q.hi - 1) +
                            ", above the cap " + std::to_string(giuga_cap));
  }
  return scan(q, control, Segment::Mode::Factors, [&](u64 n, const Segment& s) {
    const Factorization f = s.factorization(n);
    switch (which) {
      case Classifier::GCarmichael: return is_g_carmichael(f);
      case Classifier::Carmichael: return is_carmichael(f);
      case Classifier::GCyclic: return is_g_cyclic(f);
      case Classifier::GLehmer: return is_g_lehmer(f);
      case Classifier::CongruenceException:
        return is_g_cyclic(f) && !phi_power_congruence(f) && !lambda_power_congruence(f);
      case Classifier::Giuga: return giuga_membership(n, giuga_cap);
      case Classifier::Williams1: return is_r_williams(f, 1);
      case Classifier::TwinPairProduct: return is_twin_pair_product(f);
    }
    return false;
  });
}

u64 CensusTable::at(const GaussianBase& z, u64 a) const {
  auto zi = std::find(gaussian_bases.begin(), gaussian_bases.end(), z);
  auto ai = std::find(integer_bases.begin(), integer_bases.end(), a);
  if (zi == gaussian_bases.end() || ai == integer_bases.end()) {
    throw std::out_of_range("base not present in census table");
  }
  return counts[zi - gaussian_bases.begin()][ai - integer_bases.begin()];
}

CensusTable joint_census(const RangeQuery& q, std::span<const GaussianBase> gaussian_bases,
                         std::span<const u64> integer_bases, const CensusControl& control) {
  q.validate();
  for (u64 a : integer_bases) {
    if (a < 2 || a >= kMaxModulus) throw std::invalid_argument("integer bases must be >= 2");
  }
  CensusTable table;
  table.gaussian_bases.assign(gaussian_bases.begin(), gaussian_bases.end());
  table.integer_bases.assign(integer_bases.begin(), integer_bases.end());
  table.lo = q.lo;
  table.limit = q.hi;
  table.filter = q.filter;
  const std::size_t rows = gaussian_bases.size();
  const std::size_t cols = integer_bases.size();
  table.counts.assign(rows, std::vector<u64>(cols, 0));
  if (rows == 0 || cols == 0) return table;
  if (cols > 64) throw std::invalid_argument("at most 64 integer bases per census");

  // a^(n-1) for every base is assembled from the powers of the distinct
  // primes dividing the bases, so bases 2..11 cost five exponentiations.
  std::vector<u64> primes;
  std::vector<std::vector<std::pair<std::size_t, unsigned>>> recipe(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& pp : factorize(integer_bases[j]).factors) {
      auto it = std::find(primes.begin(), primes.end(), pp.prime);
      if (it == primes.end()) it = primes.insert(primes.end(), pp.prime);
      recipe[j].emplace_back(static_cast<std::size_t>(it - primes.begin()), pp.exponent);
    }
  }

  auto partials = run_blocks<std::vector<u64>>(q, control, [&](u64 lo, u64 hi) {
    std::vector<u64> counts(rows * cols, 0);
    std::vector<u64> prime_powers(primes.size());
    for_each_candidate(lo, hi, q.filter, Segment::Mode::Primality,
                       [&](u64 n, const Segment& s) {
      if (s.is_prime(n)) return;
      for (std::size_t k = 0; k < primes.size(); ++k) {
        prime_powers[k] = pow_mod(primes[k], n - 1, n);
      }
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        u64 r = 1 % n;
        for (const auto& [k, e] : recipe[j]) {
          for (unsigned t = 0; t < e; ++t) r = mul_mod(r, prime_powers[k], n);
        }
        if (r == 1) mask |= std::uint64_t{1} << j;
      }
      if (mask == 0) return;
      for (std::size_t i = 0; i < rows; ++i) {
        if (gaussian_fermat_ratio_test(n, gaussian_bases[i]) != TestOutcome::Pass) continue;
        for (std::size_t j = 0; j < cols; ++j) {
          if ((mask >> j) & 1) ++counts[i * cols + j];
        }
      }
    });
    return counts;
  });

  for (const auto& part : partials) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) table.counts[i][j] += part[i * cols + j];
    }
  }
  return table;
}

VerificationReport verify_external_list(std::istream& in, std::string source,
                                        const GaussianBase& z,
                                        std::optional<ResidueFilter> filter) {
  VerificationReport report;
  report.source = std::move(source);
  std::string line;
  while (std::getline(in, line)) {
    const std::string token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    u64 n = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (ec != std::errc{} || ptr != token.data() + token.size() || n < 2 || n >= kMaxModulus) {
      ++report.malformed_lines;
      continue;
    }
    ++report.total_read;
    if (filter && !filter->accepts(n)) continue;
    ++report.filtered;
    const TestOutcome outcome = gaussian_fermat_ratio_test(n, z);
    if (outcome == TestOutcome::InvalidBase) {
      ++report.invalid_base;
    } else if (outcome == TestOutcome::Pass) {
      report.passing.push_back(n);
      std::string note = std::to_string(n) + ": ";
      if (is_prime(n)) {
        note += "prime";
      } else if (is_g_carmichael(n)) {
        note += "composite and G-Carmichael, passes every valid Gaussian base";
      } else {
        note += "composite Gaussian Fermat pseudoprime to base " + to_string(z);
      }
      report.notes.push_back(std::move(note));
    }
  }
  return report;
}

VerificationReport verify_external_list(const std::filesystem::path& path, const GaussianBase& z,
                                        std::optional<ResidueFilter> filter) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return verify_external_list(in, path.string(), z, filter);
}

WilliamsScanReport williams_equivalence_scan(const RangeQuery& query,
                                             const CensusControl& control) {
  const ResidueFilter three_mod_four{4, 3};
  if (query.filter && !(*query.filter == three_mod_four)) {
    throw std::invalid_argument("this scan is restricted to n = 3 (mod 4)");
  }
  RangeQuery q = query;
  q.filter = three_mod_four;

  struct Part {
    u64 checked = 0;
    std::vector<u64> matches;
    std::vector<u64> violations;
  };
  auto parts = run_blocks<Part>(q, control, [&](u64 lo, u64 hi) {
    Part part;
    for_each_candidate(lo, hi, q.filter, Segment::Mode::Factors, [&](u64 n, const Segment& s) {
      ++part.checked;
      try {
        if (carmichael_and_g_carmichael_3mod4(s.factorization(n))) part.matches.push_back(n);
      } catch (const ConsistencyError&) {
        part.violations.push_back(n);
      }
    });
    return part;
  });

  WilliamsScanReport report;
  for (auto& p : parts) {
    report.checked += p.checked;
    report.matches.insert(report.matches.end(), p.matches.begin(), p.matches.end());
    report.violations.insert(report.violations.end(), p.violations.begin(), p.violations.end());
  }
  return report;
}

std::vector<u64> carmichael_intersection_scan(const RangeQuery& q, const CensusControl& control) {
  WilliamsScanReport report = williams_equivalence_scan(q, control);
  if (!report.violations.empty()) {
    throw ConsistencyError("1-Williams characterization violated at n = " +
                           std::to_string(report.violations.front()));
  }
  return std::move(report.matches);
}

std::string to_csv(const CensusTable& table) {
  std::ostringstream out;
  out << "base";
  for (u64 a : table.integer_bases) out << ',' << a;
  out << '\n';
  for (std::size_t i = 0; i < table.gaussian_bases.size(); ++i) {
    out << to_string(table.gaussian_bases[i]);
    for (u64 c : table.counts[i]) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

std::string to_records(const CensusTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.gaussian_bases.size(); ++i) {
    nlohmann::ordered_json record;
    record["kind"] = "table";
    auto query = query_json(table.lo, table.limit, table.filter);
    query["integer_bases"] = table.integer_bases;
    record["query"] = std::move(query);
    record["base"] = to_string(table.gaussian_bases[i]);
    record["values"] = table.counts[i];
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::string list_to_record(std::string_view kind, const RangeQuery& q,
                           std::optional<std::string> base, std::span<const u64> values) {
  nlohmann::ordered_json record;
  record["kind"] = kind;
  record["query"] = query_json(q.lo, q.hi, q.filter);
  record["base"] = base ? nlohmann::ordered_json(*base) : nlohmann::ordered_json();
  record["values"] = std::vector<u64>(values.begin(), values.end());
  return record.dump() + "\n";
}

std::string list_to_csv(std::span<const u64> values) {
  std::string out = "n\n";
  for (u64 v : values) out += std::to_string(v) + "\n";
  return out;
}

}  // namespace gaussfermat
