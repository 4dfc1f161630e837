#pragma once
// The statistical layer: pools of M values, exact empirical cdf and mid-rank
// NAQ, coarse bucketing with the boundary-crossing audit, pool-stability
// verification and DKW bands. All cdf/quantile arithmetic is exact rational;
// floating point appears only in the DKW exponentials.

#include "naqkit/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naqkit {

// An exact value in bits, stored as its antilog 2^m (a rational >= 1) so that
// integer complexities and Levin values m = k + log2(1+tau) compare exactly.
class ExactBits {
 public:
  ExactBits() : antilog_(1) {}

  static ExactBits from_int_bits(uint64_t m) {
    ExactBits v;
    v.antilog_ = Rat(pow2(m));
    return v;
  }
  static ExactBits from_levin(uint64_t k, uint64_t tau) {
    ExactBits v;
    v.antilog_ = Rat(pow2(k) * (BigInt(tau) + 1));
    return v;
  }
  static ExactBits from_antilog(Rat a) {
    if (a < 1) throw std::invalid_argument("ExactBits: antilog < 1");
    ExactBits v;
    v.antilog_ = std::move(a);
    return v;
  }

  const Rat& antilog() const { return antilog_; }
  double bits_double() const;

  // True value is an integer number of bits (antilog a power of two).
  std::optional<uint64_t> int_bits() const;

  // Largest t with 2^t <= antilog.
  uint64_t floor_bits() const;

  bool operator==(const ExactBits& o) const { return antilog_ == o.antilog_; }
  bool operator!=(const ExactBits& o) const { return antilog_ != o.antilog_; }
  bool operator<(const ExactBits& o) const { return antilog_ < o.antilog_; }
  bool operator<=(const ExactBits& o) const { return antilog_ <= o.antilog_; }
  bool operator>(const ExactBits& o) const { return antilog_ > o.antilog_; }
  bool operator>=(const ExactBits& o) const { return antilog_ >= o.antilog_; }

 private:
  Rat antilog_;
};

enum class PoolStatus { kFinite, kInfinite, kUnknownAtBudget };

struct PoolEntry {
  std::string id;
  PoolStatus status = PoolStatus::kFinite;
  ExactBits m;  // meaningful iff status == kFinite
  std::string method;
};

struct Pool {
  std::vector<PoolEntry> entries;

  size_t finite_count() const;
  size_t infinite_count() const;
  size_t unknown_count() const;
  std::vector<ExactBits> finite_values() const;  // in entry order
};

// F-hat(z): fraction of finite pool values <= z, exact. Infinite entries are
// excluded from the denominator and counted separately by callers.
Rat empirical_cdf(const Pool& pool, const ExactBits& z);

// Mid-rank NAQ: (#{m' < m} + #{m' = m}/2) / n, exact rational in [0,1].
Rat naq_midrank(const ExactBits& m, const Pool& pool);

// Resource-bounded variant: same mid-rank convention over a pool of M_T
// values (K + log2(1 + tau*), carried exactly by ExactBits).
inline Rat naq_t(const ExactBits& m_t, const Pool& pool) { return naq_midrank(m_t, pool); }

struct MidrankCdfGapReport {
  Rat max_gap;                 // max over members of |midrank - cdf|
  Rat tie_free_bound;          // 1/(2n)
  bool within_tie_free_bound;  // holds only when all values are distinct
  size_t max_tie_multiplicity = 0;
};

MidrankCdfGapReport midrank_vs_cdf_gap(const Pool& pool);

// Bucket index floor(m / width) per finite entry, exact.
std::vector<int64_t> bucketize(const Pool& pool, uint64_t width);
int64_t bucket_index(const ExactBits& m, uint64_t width);

// Coarse-invariance audit over two value vectors with certified max
// perturbation c (bits): reports boundary crossings and whether the
// bucket-induced weak orders coincide.
struct BucketAudit {
  bool perturbation_certified = false;  // all pairs within c bits
  std::vector<size_t> crossings;        // indices whose buckets differ
  bool weak_orders_coincide = false;
  std::vector<size_t> near_boundary;  // entries within c bits of a boundary
};

BucketAudit bucket_audit(const std::vector<ExactBits>& a, const std::vector<ExactBits>& b,
                         uint64_t c_bits, uint64_t width);

struct StabilityReport {
  bool pass = false;
  size_t grid_points = 0;
  size_t violations = 0;
  Rat worst_lower_slack;  // min over grid of (F' - (|T|/|T'|) F)
  Rat worst_upper_slack;  // min over grid of (F + (|T'|-|T|)/|T'| - F')
};

// Lemma-3.2 check on nested pools at the given grid; throws invalid_argument
// when T is not a sub-multiset of T'.
StabilityReport pool_stability_check(const Pool& T, const Pool& T_prime,
                                     const std::vector<ExactBits>& z_grid);

// DKW: bound = min(1, 2 e^(-2 n eps^2)); inverse eps = sqrt(ln(2/delta)/(2n)).
double dkw_band(uint64_t n, double epsilon);
double dkw_epsilon(uint64_t n, double delta);

}  // namespace naqkit
