#ifndef BOSEGAS_SERIALIZATION_HPP
#define BOSEGAS_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "bosegas/operators.hpp"
#include "bosegas/symspace.hpp"

namespace bosegas {

// Dense operators serialize as
//   {dim, factors, local_dim, entries: [[re, im], ...]}   (row-major)
// and symmetric-subspace operators add {n, d}.  Doubles round-trip exactly.
nlohmann::json to_json(const DenseOperator& op);
DenseOperator dense_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SymOperator& op);
SymOperator sym_from_json(const nlohmann::json& j);

// 17 significant digits: lossless for doubles.
std::string format_double(double value);

}  // namespace bosegas

#endif
