#ifndef BOSEGAS_OCCUPATION_HPP
#define BOSEGAS_OCCUPATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bosegas {

// Size limits for the dense paths.  sym paths are bounded by max_sym_dim,
// anything materialized on the full (d+1)^n tensor space by max_tensor_dim.
struct Capacity {
  std::int64_t max_sym_dim = 1'000'000;
  std::int64_t max_tensor_dim = std::int64_t{1} << 24;
};

// Global capacity configuration (mutable; defaults above).
Capacity& capacity();

// Occupation numbers (n_0, ..., n_d) of the d+1 single-particle levels.
struct OccupationVector {
  std::vector<int> counts;
  int total = 0;

  OccupationVector() = default;
  explicit OccupationVector(std::vector<int> c);

  int levels() const { return static_cast<int>(counts.size()); }
  int level_parameter() const { return levels() - 1; }  // d
  int operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }

  bool operator==(const OccupationVector& other) const { return counts == other.counts; }
  std::string to_string() const;
};

// All occupation vectors with total n over d+1 levels, in the canonical
// order: lexicographically decreasing, so (n,0,...,0) is first and
// (0,...,0,n) last.  Ordinals in this list are the SymBasisIndex.
std::vector<OccupationVector> enumerate_occupations(int n, int d);

// C(n, k), exact, throws OverflowError past 64-bit range.
std::uint64_t binomial(int n, int k);

// n! / prod(n_i!), exact; requires occ.total == n.
std::uint64_t multinomial(int n, const OccupationVector& occ);

// Dimension of the n-particle symmetric subspace, C(n+d, d).
std::int64_t sym_dim(int n, int d);

// Counts how often each level 0..d appears among the given indices.
OccupationVector occupation_profile(std::span<const int> indices, int d);

// Enumeration plus ordinal lookup for a fixed (n, d) sector.
class SymBasis {
 public:
  SymBasis(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
  const std::vector<OccupationVector>& states() const { return states_; }
  const OccupationVector& state(std::int64_t ordinal) const;

  // Ordinal of occ in the canonical order; throws if occ is not in this sector.
  std::int64_t ordinal(const OccupationVector& occ) const;
  // As above but returns -1 instead of throwing.
  std::int64_t find(const OccupationVector& occ) const;

 private:
  struct CountsHash {
    std::size_t operator()(const std::vector<int>& v) const;
  };

  int n_;
  int d_;
  std::vector<OccupationVector> states_;
  std::unordered_map<std::vector<int>, std::int64_t, CountsHash> index_;
};

}  // namespace bosegas

#endif
