#include "bosegas/occupation.hpp"

#include <numeric>
#include <sstream>

#include "bosegas/errors.hpp"

namespace bosegas {

Capacity& capacity() {
  static Capacity instance;
  return instance;
}

OccupationVector::OccupationVector(std::vector<int> c) : counts(std::move(c)) {
  if (counts.empty()) throw ValidationError("occupation vector needs at least one level");
  for (int v : counts) {
    if (v < 0) throw ValidationError("occupation numbers must be nonnegative");
  }
  total = std::accumulate(counts.begin(), counts.end(), 0);
}

std::string OccupationVector::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out << ",";
    out << counts[i];
  }
  out << ")";
  return out.str();
}

namespace {

void enumerate_rec(int remaining, int level, int d, std::vector<int>& scratch,
                   std::vector<OccupationVector>& out) {
  if (level == d) {
    scratch[static_cast<std::size_t>(level)] = remaining;
    out.emplace_back(scratch);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    scratch[static_cast<std::size_t>(level)] = v;
    enumerate_rec(remaining - v, level + 1, d, scratch, out);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(what);
  return r;
}

}  // namespace

std::vector<OccupationVector> enumerate_occupations(int n, int d) {
  if (n < 0 || d < 0) throw ValidationError("enumerate_occupations: n and d must be nonnegative");
  const std::int64_t dim = sym_dim(n, d);
  if (dim > capacity().max_sym_dim) {
    throw CapacityError("enumerate_occupations: sym_dim(" + std::to_string(n) + "," +
                        std::to_string(d) + ") = " + std::to_string(dim) +
                        " exceeds limit " + std::to_string(capacity().max_sym_dim));
  }
  std::vector<OccupationVector> out;
  out.reserve(static_cast<std::size_t>(dim));
  std::vector<int> scratch(static_cast<std::size_t>(d) + 1, 0);
  enumerate_rec(n, 0, d, scratch, out);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw ValidationError("binomial: negative argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) is divisible by i at every step
    r = checked_mul(r, static_cast<std::uint64_t>(n - k + i), "binomial overflow");
    r /= static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t multinomial(int n, const OccupationVector& occ) {
  if (occ.total != n) {
    throw ValidationError("multinomial: occupation total " + std::to_string(occ.total) +
                          " does not match n = " + std::to_string(n));
  }
  std::uint64_t r = 1;
  int placed = 0;
  for (int c : occ.counts) {
    placed += c;
    r = checked_mul(r, binomial(placed, c), "multinomial overflow");
  }
  return r;
}

std::int64_t sym_dim(int n, int d) {
  if (n < 0 || d < 0) throw ValidationError("sym_dim: n and d must be nonnegative");
  const std::uint64_t v = binomial(n + d, d);
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw OverflowError("sym_dim overflow");
  return static_cast<std::int64_t>(v);
}

OccupationVector occupation_profile(std::span<const int> indices, int d) {
  if (d < 0) throw ValidationError("occupation_profile: d must be nonnegative");
  std::vector<int> counts(static_cast<std::size_t>(d) + 1, 0);
  for (int x : indices) {
    if (x < 0 || x > d) {
      throw ValidationError("occupation_profile: index " + std::to_string(x) +
                            " outside 0.." + std::to_string(d));
    }
    ++counts[static_cast<std::size_t>(x)];
  }
  return OccupationVector(std::move(counts));
}

std::size_t SymBasis::CountsHash::operator()(const std::vector<int>& v) const {
  // FNV-1a over the level counts
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

SymBasis::SymBasis(int n, int d) : n_(n), d_(d), states_(enumerate_occupations(n, d)) {
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(states_[i].counts, static_cast<std::int64_t>(i));
  }
}

const OccupationVector& SymBasis::state(std::int64_t ordinal) const {
  if (ordinal < 0 || ordinal >= size()) throw ValidationError("SymBasis: ordinal out of range");
  return states_[static_cast<std::size_t>(ordinal)];
}

std::int64_t SymBasis::ordinal(const OccupationVector& occ) const {
  const std::int64_t i = find(occ);
  if (i < 0) {
    throw ValidationError("SymBasis: occupation " + occ.to_string() + " not in sector (n=" +
                          std::to_string(n_) + ", d=" + std::to_string(d_) + ")");
  }
  return i;
}

std::int64_t SymBasis::find(const OccupationVector& occ) const {
  const auto it = index_.find(occ.counts);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace bosegas
