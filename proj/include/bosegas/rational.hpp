#ifndef BOSEGAS_RATIONAL_HPP
#define BOSEGAS_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>

#include "bosegas/occupation.hpp"

namespace bosegas {

// Exact rational arithmetic for the combinatorial identities.  Converted to
// double only at the boundary to floating-point code.
using Rational = boost::rational<std::int64_t>;

Rational rat_from_u64(std::uint64_t v);
Rational rat_binomial(int n, int k);
Rational rat_multinomial(int n, const OccupationVector& occ);
double to_double(const Rational& r);

}  // namespace bosegas

#endif
