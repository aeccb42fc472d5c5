#ifndef BOSEGAS_TESTS_ORACLES_HPP
#define BOSEGAS_TESTS_ORACLES_HPP

// Full-tensor-space constructions used as independent references for the
// occupation-basis implementations.

#include <unsupported/Eigen/KroneckerProduct>

#include "bosegas/operators.hpp"
#include "bosegas/rng.hpp"
#include "bosegas/types.hpp"

namespace bosegas::testing {

inline Matrix kron_chain(const std::vector<Matrix>& factors) {
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = Eigen::kroneckerProduct(out, factors[i]).eval();
  }
  return out;
}

// sum_i T_i on the full n-fold tensor space
inline Matrix one_body_sum_full(const Matrix& t, int n) {
  const std::int64_t q = t.rows();
  Matrix total = Matrix::Zero(pow_ll(q, n), pow_ll(q, n));
  for (int i = 0; i < n; ++i) {
    std::vector<Matrix> factors(static_cast<std::size_t>(n), Matrix::Identity(q, q));
    factors[static_cast<std::size_t>(i)] = t;
    total += kron_chain(factors);
  }
  return total;
}

// V acting on tensor factors (i, j) of n factors, i < j
inline Matrix two_body_term_full(const Matrix& v, int n, int q, int i, int j) {
  // conjugate V ox I^(n-2) by the permutation with pi(0) = i, pi(1) = j:
  // U_pi pulls factors (i, j) into slots (0, 1), where the base applies V.
  // Conjugation by a permutation is an index relabeling, applied directly.
  std::vector<int> pi;
  pi.reserve(static_cast<std::size_t>(n));
  pi.push_back(i);
  pi.push_back(j);
  for (int k = 0; k < n; ++k) {
    if (k != i && k != j) pi.push_back(k);
  }
  std::vector<Matrix> factors;
  factors.push_back(v);
  for (int k = 2; k < n; ++k) factors.push_back(Matrix::Identity(q, q));
  const Matrix base = kron_chain(factors);

  const std::int64_t dim = base.rows();
  std::vector<std::int64_t> relabel(static_cast<std::size_t>(dim));
  std::vector<int> digits;
  std::vector<int> permuted(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < dim; ++x) {
    digits = index_digits(x, n, q);
    for (int k = 0; k < n; ++k) {
      permuted[static_cast<std::size_t>(k)] = digits[static_cast<std::size_t>(pi[static_cast<std::size_t>(k)])];
    }
    relabel[static_cast<std::size_t>(x)] = digits_index(permuted, q);
  }
  Matrix out(dim, dim);
  for (std::int64_t row = 0; row < dim; ++row) {
    for (std::int64_t col = 0; col < dim; ++col) {
      out(row, col) = base(relabel[static_cast<std::size_t>(row)],
                           relabel[static_cast<std::size_t>(col)]);
    }
  }
  return out;
}

// full mean-field Hamiltonian sum T_i + coupling * sum_{i<j} V_ij
inline Matrix meanfield_full(const Matrix& t, const Matrix& v, int n, double coupling) {
  const int q = static_cast<int>(t.rows());
  Matrix h = one_body_sum_full(t, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h += coupling * two_body_term_full(v, n, q, i, j);
    }
  }
  return h;
}

inline Matrix random_hermitian(std::int64_t dim, std::uint64_t seed) {
  SplitStream stream(seed, 1);
  Matrix a(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t c = 0; c < dim; ++c) {
      a(r, c) = Complex(2.0 * stream.next_uniform() - 1.0, 2.0 * stream.next_uniform() - 1.0);
    }
  }
  return (a + a.adjoint()).eval() / 2.0;
}

// random Hermitian V with the SWAP-exchange symmetry
inline Matrix random_pair_interaction(int q, std::uint64_t seed) {
  Matrix v = random_hermitian(q * q, seed);
  Matrix swapped(q * q, q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int e = 0; e < q; ++e)
          swapped(a * q + b, c * q + e) = v(b * q + a, e * q + c);
  return (v + swapped) / 2.0;
}

}  // namespace bosegas::testing

#endif
