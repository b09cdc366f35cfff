#pragma once

// Parallel range searches over [lo, hi): pseudoprime lists, classifier
// censuses, the joint Gaussian/classical pseudoprime table, and checking of
// externally supplied pseudoprime lists.
//
// Ranges are cut into fixed-size blocks handed to workers; results are merged
// in block order, so output never depends on the worker count.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfermat/classify.hpp"
#include "gaussfermat/fermat.hpp"

namespace gaussfermat {

struct ResidueFilter {
  u64 modulus;
  u64 residue;

  bool accepts(u64 n) const { return n % modulus == residue; }
  friend bool operator==(const ResidueFilter&, const ResidueFilter&) = default;
};

/// "m,r" -> {m, r}. Throws std::invalid_argument.
ResidueFilter parse_residue_filter(std::string_view text);
std::string to_string(const ResidueFilter& f);

inline constexpr u64 kDefaultBlockSize = u64{1} << 20;

struct RangeQuery {
  u64 lo = 2;
  u64 hi = 2;  // exclusive
  std::optional<ResidueFilter> filter;
  unsigned workers = 1;
  u64 block_size = kDefaultBlockSize;

  /// Throws std::out_of_range / std::invalid_argument on a malformed query.
  void validate() const;
};

/// Thrown when a run is cancelled through CensusControl::stop.
class CensusCancelled : public std::runtime_error {
 public:
  CensusCancelled() : std::runtime_error("census cancelled") {}
};

struct CensusControl {
  std::stop_token stop;
  /// Called after each finished block with (blocks done, blocks total).
  /// Invocations are serialized.
  std::function<void(u64, u64)> progress;
};

/// Composite n in range with is_gfp(n, z), ascending.
std::vector<u64> search_gfp(const RangeQuery& q, const GaussianBase& z,
                            const CensusControl& control = {});

/// Composite n in range that are Fermat pseudoprimes to base a, ascending.
std::vector<u64> search_fermat_psp(const RangeQuery& q, u64 a, const CensusControl& control = {});

enum class Classifier {
  GCarmichael,
  Carmichael,
  GCyclic,
  GLehmer,
  CongruenceException,
  Giuga,
  Williams1,
  TwinPairProduct,
};

/// Names: g_carmichael, carmichael, g_cyclic, g_lehmer, congruence_exception,
/// giuga, williams_1, twin_pair_product. Throws std::invalid_argument.
Classifier parse_classifier(std::string_view name);
std::string_view to_string(Classifier c);

/// n in range matching the classifier, ascending. congruence_exception is
/// G-cyclic with neither power congruence holding. Giuga searches reject
/// ranges reaching past `giuga_cap`.
std::vector<u64> search_classifier(const RangeQuery& q, Classifier which,
                                   u64 giuga_cap = kDefaultGiugaCap,
                                   const CensusControl& control = {});

struct CensusTable {
  std::vector<GaussianBase> gaussian_bases;
  std::vector<u64> integer_bases;
  /// counts[i][j]: composites that are GFP to gaussian_bases[i] and Fermat
  /// pseudoprimes to integer_bases[j].
  std::vector<std::vector<u64>> counts;
  u64 lo = 2;
  u64 limit = 2;
  std::optional<ResidueFilter> filter;

  u64 at(const GaussianBase& z, u64 a) const;
};

CensusTable joint_census(const RangeQuery& q, std::span<const GaussianBase> gaussian_bases,
                         std::span<const u64> integer_bases, const CensusControl& control = {});

struct VerificationReport {
  std::string source;
  u64 total_read = 0;
  u64 filtered = 0;
  u64 invalid_base = 0;
  u64 malformed_lines = 0;
  std::vector<u64> passing;
  /// One line per passing entry describing what kind of number it is.
  std::vector<std::string> notes;
};

/// Reads decimal integers one per line ('#' comments and blank lines
/// skipped), applies the filter and runs the Gaussian ratio test to base z.
/// Throws std::runtime_error if the file cannot be opened.
VerificationReport verify_external_list(const std::filesystem::path& path, const GaussianBase& z,
                                        std::optional<ResidueFilter> filter);
VerificationReport verify_external_list(std::istream& in, std::string source,
                                        const GaussianBase& z,
                                        std::optional<ResidueFilter> filter);

struct WilliamsScanReport {
  u64 checked = 0;
  /// n = 3 (mod 4) that are both Carmichael and G-Carmichael.
  std::vector<u64> matches;
  /// n where the 1-Williams characterization disagreed.
  std::vector<u64> violations;
};

/// Scans n = 3 (mod 4) in range. The query's filter must be absent or (4, 3).
WilliamsScanReport williams_equivalence_scan(const RangeQuery& q,
                                             const CensusControl& control = {});

/// The matches of williams_equivalence_scan; throws ConsistencyError if the
/// characterization was violated anywhere.
std::vector<u64> carmichael_intersection_scan(const RangeQuery& q,
                                              const CensusControl& control = {});

// Serialization. Both formats are byte-stable for fixed inputs.

std::string to_csv(const CensusTable& table);
/// One JSON record per Gaussian base: {kind, query, base, values}.
std::string to_records(const CensusTable& table);

/// A single JSON record {kind, query, base, values} for a search result.
std::string list_to_record(std::string_view kind, const RangeQuery& q,
                           std::optional<std::string> base, std::span<const u64> values);
std::string list_to_csv(std::span<const u64> values);

}  // namespace gaussfermat
