#include "bosegas/rational.hpp"

#include "bosegas/errors.hpp"

namespace bosegas {

Rational rat_from_u64(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(INT64_MAX)) {
    throw OverflowError("rational: value exceeds signed 64-bit range");
  }
  return Rational(static_cast<std::int64_t>(v));
}

Rational rat_binomial(int n, int k) { return rat_from_u64(binomial(n, k)); }

Rational rat_multinomial(int n, const OccupationVector& occ) {
  return rat_from_u64(multinomial(n, occ));
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace bosegas
