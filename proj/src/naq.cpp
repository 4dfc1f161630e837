#include "naqkit/naq.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace naqkit {

double ExactBits::bits_double() const {
  // log2 of a positive rational via its parts; desk-scale magnitudes.
  double num = boost::multiprecision::numerator(antilog_).convert_to<double>();
  double den = boost::multiprecision::denominator(antilog_).convert_to<double>();
  return std::log2(num) - std::log2(den);
}

std::optional<uint64_t> ExactBits::int_bits() const {
  if (boost::multiprecision::denominator(antilog_) != 1) return std::nullopt;
  BigInt n = boost::multiprecision::numerator(antilog_);
  uint64_t t = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++t;
  }
  if (n != 1) return std::nullopt;
  return t;
}

uint64_t ExactBits::floor_bits() const {
  uint64_t t = 0;
  while (Rat(pow2(t + 1)) <= antilog_) ++t;
  return t;
}

size_t Pool::finite_count() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.status == PoolStatus::kFinite;
  return n;
}
size_t Pool::infinite_count() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.status == PoolStatus::kInfinite;
  return n;
}
size_t Pool::unknown_count() const {
  size_t n = 0;
  for (const auto& e : entries) n += e.status == PoolStatus::kUnknownAtBudget;
  return n;
}
std::vector<ExactBits> Pool::finite_values() const {
  std::vector<ExactBits> out;
  for (const auto& e : entries)
    if (e.status == PoolStatus::kFinite) out.push_back(e.m);
  return out;
}

Rat empirical_cdf(const Pool& pool, const ExactBits& z) {
  size_t n = pool.finite_count();
  if (n == 0) throw std::invalid_argument("empirical_cdf: no finite pool entries");
  size_t count = 0;
  for (const auto& e : pool.entries)
    if (e.status == PoolStatus::kFinite && e.m <= z) ++count;
  return Rat(count, n);
}

Rat naq_midrank(const ExactBits& m, const Pool& pool) {
  size_t n = pool.finite_count();
  if (n == 0) throw std::invalid_argument("naq_midrank: no finite pool entries");
  size_t below = 0, tied = 0;
  for (const auto& e : pool.entries) {
    if (e.status != PoolStatus::kFinite) continue;
    if (e.m < m)
      ++below;
    else if (e.m == m)
      ++tied;
  }
  return Rat(2 * below + tied, 2 * n);
}

MidrankCdfGapReport midrank_vs_cdf_gap(const Pool& pool) {
  size_t n = pool.finite_count();
  if (n == 0) throw std::invalid_argument("midrank_vs_cdf_gap: no finite pool entries");
  MidrankCdfGapReport rep;
  rep.tie_free_bound = Rat(1, 2 * n);
  rep.max_gap = 0;

  std::map<Rat, size_t> multiplicity;
  for (const auto& e : pool.entries)
    if (e.status == PoolStatus::kFinite) ++multiplicity[e.m.antilog()];
  for (const auto& [antilog, count] : multiplicity) {
    ExactBits m = ExactBits::from_antilog(antilog);
    Rat gap = empirical_cdf(pool, m) - naq_midrank(m, pool);
    if (gap < 0) gap = -gap;
    if (gap > rep.max_gap) rep.max_gap = gap;
    rep.max_tie_multiplicity = std::max(rep.max_tie_multiplicity, count);
  }
  rep.within_tie_free_bound = rep.max_gap <= rep.tie_free_bound;
  return rep;
}

int64_t bucket_index(const ExactBits& m, uint64_t width) {
  if (width == 0) throw std::invalid_argument("bucket_index: width >= 1");
  return static_cast<int64_t>(m.floor_bits() / width);
}

std::vector<int64_t> bucketize(const Pool& pool, uint64_t width) {
  std::vector<int64_t> out;
  for (const auto& e : pool.entries)
    if (e.status == PoolStatus::kFinite) out.push_back(bucket_index(e.m, width));
  return out;
}

BucketAudit bucket_audit(const std::vector<ExactBits>& a, const std::vector<ExactBits>& b,
                         uint64_t c_bits, uint64_t width) {
  if (a.size() != b.size()) throw std::invalid_argument("bucket_audit: vector sizes differ");
  if (width == 0) throw std::invalid_argument("bucket_audit: width >= 1");
  BucketAudit audit;
  audit.perturbation_certified = true;

  Rat shift = Rat(pow2(c_bits));
  std::vector<int64_t> ba, bb;
  for (size_t i = 0; i < a.size(); ++i) {
    // |log2 a - log2 b| <= c  <=>  a <= b 2^c and b <= a 2^c.
    if (!(a[i].antilog() <= b[i].antilog() * shift && b[i].antilog() <= a[i].antilog() * shift))
      audit.perturbation_certified = false;
    int64_t qa = bucket_index(a[i], width);
    int64_t qb = bucket_index(b[i], width);
    ba.push_back(qa);
    bb.push_back(qb);
    if (qa != qb) audit.crossings.push_back(i);

    // Within c bits of either side of a's bucket: m - qb*w < c or (q+1)w - m < c.
    uint64_t q = static_cast<uint64_t>(qa);
    bool lower_near = a[i].antilog() < Rat(pow2(q * width + c_bits));
    bool upper_near = a[i].antilog() * shift > Rat(pow2((q + 1) * width));
    if (lower_near || upper_near) audit.near_boundary.push_back(i);
  }

  // Same weak order: all pairwise bucket comparisons agree.
  audit.weak_orders_coincide = true;
  for (size_t i = 0; i < ba.size() && audit.weak_orders_coincide; ++i)
    for (size_t j = i + 1; j < ba.size(); ++j) {
      auto cmp = [](int64_t u, int64_t v) { return (u < v) ? -1 : (u > v ? 1 : 0); };
      if (cmp(ba[i], ba[j]) != cmp(bb[i], bb[j])) {
        audit.weak_orders_coincide = false;
        break;
      }
    }
  return audit;
}

StabilityReport pool_stability_check(const Pool& T, const Pool& T_prime,
                                     const std::vector<ExactBits>& z_grid) {
  // Sub-multiset check over finite values.
  std::map<Rat, int64_t> counts;
  for (const auto& e : T_prime.entries)
    if (e.status == PoolStatus::kFinite) ++counts[e.m.antilog()];
  for (const auto& e : T.entries)
    if (e.status == PoolStatus::kFinite)
      if (--counts[e.m.antilog()] < 0)
        throw std::invalid_argument("pool_stability_check: pools are not nested");

  size_t nT = T.finite_count();
  size_t nTp = T_prime.finite_count();
  if (nT == 0 || nTp == 0)
    throw std::invalid_argument("pool_stability_check: empty pool");

  StabilityReport rep;
  rep.grid_points = z_grid.size();
  bool first = true;
  for (const ExactBits& z : z_grid) {
    Rat f = empirical_cdf(T, z);
    Rat fp = empirical_cdf(T_prime, z);
    Rat lower_slack = fp - Rat(nT, nTp) * f;
    Rat upper_slack = f + Rat(nTp - nT, nTp) - fp;
    if (lower_slack < 0 || upper_slack < 0) ++rep.violations;
    if (first || lower_slack < rep.worst_lower_slack) rep.worst_lower_slack = lower_slack;
    if (first || upper_slack < rep.worst_upper_slack) rep.worst_upper_slack = upper_slack;
    first = false;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

double dkw_band(uint64_t n, double epsilon) {
  if (n == 0 || !(epsilon > 0))
    throw std::invalid_argument("dkw_band: need n >= 1 and epsilon > 0");
  double bound = 2.0 * std::exp(-2.0 * static_cast<double>(n) * epsilon * epsilon);
  return bound < 1.0 ? bound : 1.0;
}

double dkw_epsilon(uint64_t n, double delta) {
  if (n == 0 || !(delta > 0) || !(delta < 1))
    throw std::invalid_argument("dkw_epsilon: need n >= 1 and delta in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace naqkit
