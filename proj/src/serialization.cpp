#include "bosegas/serialization.hpp"

#include <cstdio>

#include "bosegas/errors.hpp"

namespace bosegas {

namespace {

nlohmann::json entries_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::int64_t row = 0; row < m.rows(); ++row) {
    for (std::int64_t col = 0; col < m.cols(); ++col) {
      entries.push_back({m(row, col).real(), m(row, col).imag()});
    }
  }
  return entries;
}

Matrix entries_from_json(const nlohmann::json& entries, std::int64_t dim) {
  if (!entries.is_array() || static_cast<std::int64_t>(entries.size()) != dim * dim) {
    throw ValidationError("operator json: entries must be a flat array of dim^2 pairs");
  }
  Matrix m(dim, dim);
  std::int64_t flat = 0;
  for (const auto& pair : entries) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ValidationError("operator json: each entry must be a [re, im] pair");
    }
    m(flat / dim, flat % dim) = Complex(pair[0].get<double>(), pair[1].get<double>());
    ++flat;
  }
  return m;
}

void require_fields(const nlohmann::json& j, std::initializer_list<const char*> fields) {
  for (const char* f : fields) {
    if (!j.contains(f)) throw ValidationError(std::string("operator json: missing field '") + f + "'");
  }
}

}  // namespace

nlohmann::json to_json(const DenseOperator& op) {
  return nlohmann::json{{"dim", op.dim()},
                        {"factors", op.factors},
                        {"local_dim", op.local_dim},
                        {"entries", entries_to_json(op.entries)}};
}

DenseOperator dense_from_json(const nlohmann::json& j) {
  require_fields(j, {"dim", "factors", "local_dim", "entries"});
  const std::int64_t dim = j.at("dim").get<std::int64_t>();
  DenseOperator op = DenseOperator::make(j.at("factors").get<int>(), j.at("local_dim").get<int>(),
                                         entries_from_json(j.at("entries"), dim));
  if (op.dim() != dim) throw ValidationError("operator json: dim does not match factors/local_dim");
  return op;
}

nlohmann::json to_json(const SymOperator& op) {
  return nlohmann::json{{"n", op.n},
                        {"d", op.d},
                        {"dim", op.dim()},
                        {"entries", entries_to_json(op.matrix)}};
}

SymOperator sym_from_json(const nlohmann::json& j) {
  require_fields(j, {"n", "d", "dim", "entries"});
  const std::int64_t dim = j.at("dim").get<std::int64_t>();
  return SymOperator::make(j.at("n").get<int>(), j.at("d").get<int>(),
                           entries_from_json(j.at("entries"), dim));
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace bosegas
