#ifndef BOSEGAS_ENSEMBLES_HPP
#define BOSEGAS_ENSEMBLES_HPP

#include <string>
#include <vector>

#include "bosegas/symspace.hpp"
#include "bosegas/types.hpp"

namespace bosegas {

enum class EnsembleKind { uniform, noninteracting, meanfield };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& s);

// Parameters of a finite-n ensemble.  beta_eff() applies the beta/n scaling
// when `scaled` is set.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::uniform;
  int n = 2;
  int d = 1;
  double beta = 0.0;
  bool scaled = false;
  std::vector<double> epsilons;  // noninteracting: T = diag(epsilons)
  Matrix t;                      // meanfield one-body part
  Matrix v;                      // meanfield two-body part

  double beta_eff() const { return scaled ? beta / static_cast<double>(n) : beta; }
  void validate() const;
};

// Occupation-diagonal ensembles as plain weight vectors; this path never
// materializes matrices and scales to large n.
RealVector uniform_weights(int n, int d);
RealVector noninteracting_weights(int n, int d, double beta_eff,
                                  const std::vector<double>& epsilons);

// The same ensembles as densities on the symmetric subspace.
SymOperator uniform_ensemble(int n, int d);
SymOperator gibbs_noninteracting(int n, int d, double beta_eff,
                                 const std::vector<double>& epsilons);

// exp(-beta_eff H_n) / Tr(...) on the symmetric subspace, H_n the mean-field
// Hamiltonian built from (t, v).
SymOperator gibbs_meanfield(int n, int d, double beta_eff, const Matrix& t, const Matrix& v);

// Dispatch on spec.kind.
SymOperator build_ensemble(const EnsembleSpec& spec);

// Diagonal ensemble weights for spec.kind != meanfield.
RealVector build_ensemble_weights(const EnsembleSpec& spec);

}  // namespace bosegas

#endif
