#include "bosegas/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Core>

#include "bosegas/convergence.hpp"
#include "bosegas/definetti.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/reduction.hpp"
#include "bosegas/serialization.hpp"

namespace bosegas::cli {

namespace {

using nlohmann::json;

void check_fields(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw ValidationError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

template <typename T>
T get_field(const json& j, const std::string& where, const char* name) {
  if (!j.contains(name)) throw ValidationError(where + ": missing field '" + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + name + "' has the wrong type");
  }
}

template <typename T>
T get_field_or(const json& j, const std::string& where, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + name + "' has the wrong type");
  }
}

Matrix parse_operator(const json& j, const std::string& where, int factors, int local_dim) {
  DenseOperator op = [&] {
    try {
      return dense_from_json(j);
    } catch (const json::exception&) {
      throw ValidationError(where + ": malformed operator object");
    }
  }();
  if (op.factors != factors || op.local_dim != local_dim) {
    throw ValidationError(where + ": expected an operator on " + std::to_string(factors) +
                          " factor(s) of local dimension " + std::to_string(local_dim));
  }
  return op.entries;
}

EnsembleSpec parse_ensemble(const json& j) {
  const std::string where = "ensemble";
  check_fields(j, where, {"kind", "n", "d", "beta", "scaled", "epsilons", "T", "V"});
  EnsembleSpec spec;
  spec.kind = ensemble_kind_from_string(get_field<std::string>(j, where, "kind"));
  spec.n = get_field<int>(j, where, "n");
  spec.d = get_field<int>(j, where, "d");
  spec.beta = get_field_or<double>(j, where, "beta", 0.0);
  spec.scaled = get_field_or<bool>(j, where, "scaled", false);
  if (j.contains("epsilons")) {
    spec.epsilons = get_field<std::vector<double>>(j, where, "epsilons");
  }
  const int q = spec.d + 1;
  if (j.contains("T")) spec.t = parse_operator(j.at("T"), where + ".T", 1, q);
  if (j.contains("V")) spec.v = parse_operator(j.at("V"), where + ".V", 2, q);
  if (spec.kind == EnsembleKind::meanfield) {
    if (!j.contains("T") || !j.contains("V")) {
      throw ValidationError(where + ": meanfield ensembles need both T and V");
    }
  }
  if (spec.kind == EnsembleKind::noninteracting && spec.epsilons.empty()) {
    throw ValidationError(where + ": noninteracting ensembles need epsilons");
  }
  spec.validate();
  return spec;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%FT%TZ", std::gmtime(&t));
  return buffer;
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << text;
}

json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    for (std::int64_t c = 0; c < m.cols(); ++c) rows.push_back(m(r, c));
  }
  return rows;
}

}  // namespace

RunConfig parse_config(const json& j) {
  const std::string where = "config";
  check_fields(j, where,
               {"schema", "command", "ensemble", "m", "n_list", "limit", "mc", "tolerances",
                "output", "verify"});
  RunConfig config;
  config.schema = get_field<int>(j, where, "schema");
  if (config.schema != kSchemaVersion) {
    throw ValidationError("config: unsupported schema version " + std::to_string(config.schema));
  }
  config.command = get_field<std::string>(j, where, "command");
  static const std::set<std::string> kCommands{"reduce", "limit", "sweep", "verify", "sample"};
  if (!kCommands.contains(config.command)) {
    throw ValidationError("config: unknown command '" + config.command + "'");
  }
  if (j.contains("ensemble")) {
    config.ensemble = parse_ensemble(j.at("ensemble"));
    config.has_ensemble = true;
  }
  config.m = get_field_or<int>(j, where, "m", 1);
  if (config.m < 1) throw ValidationError("config: m must be at least 1");
  config.n_list = get_field_or<std::vector<int>>(j, where, "n_list", {});
  config.limit = get_field_or<std::string>(j, where, "limit", "");
  if (!config.limit.empty()) limit_kind_from_string(config.limit);  // validates

  if (j.contains("mc")) {
    const json& mc = j.at("mc");
    check_fields(mc, "mc", {"samples", "seed"});
    config.mc.samples = get_field_or<std::size_t>(mc, "mc", "samples", config.mc.samples);
    config.mc.seed = get_field_or<std::uint64_t>(mc, "mc", "seed", config.mc.seed);
  }
  if (j.contains("tolerances")) {
    const json& tol = j.at("tolerances");
    if (!tol.is_object()) throw ValidationError("tolerances: expected an object");
    for (const auto& item : tol.items()) {
      if (!item.value().is_number()) {
        throw ValidationError("tolerances: '" + item.key() + "' must be a number");
      }
      config.tolerances[item.key()] = item.value().get<double>();
    }
  }
  if (j.contains("output")) {
    const json& out = j.at("output");
    check_fields(out, "output", {"path", "format"});
    config.output.path = get_field_or<std::string>(out, "output", "path", config.output.path);
    config.output.format = get_field_or<std::string>(out, "output", "format", config.output.format);
    if (config.output.format != "csv" && config.output.format != "json") {
      throw ValidationError("output: format must be csv or json");
    }
  }
  if (j.contains("verify")) {
    const json& verify = j.at("verify");
    check_fields(verify, "verify", {"what", "j", "order", "trials"});
    config.verify.what = get_field<std::string>(verify, "verify", "what");
    static const std::set<std::string> kWhats{"claim", "series", "free-energy"};
    if (!kWhats.contains(config.verify.what)) {
      throw ValidationError("verify: unknown check '" + config.verify.what + "'");
    }
    config.verify.j = get_field_or<int>(verify, "verify", "j", config.verify.j);
    config.verify.order = get_field_or<int>(verify, "verify", "order", config.verify.order);
    config.verify.trials = get_field_or<int>(verify, "verify", "trials", config.verify.trials);
  }
  if (config.command == "verify" && config.verify.what.empty()) {
    throw ValidationError("config: verify command needs a verify block");
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_echo(const RunConfig& config) {
  json j{{"schema", config.schema}, {"command", config.command}, {"m", config.m}};
  if (config.has_ensemble) {
    json e{{"kind", to_string(config.ensemble.kind)},
           {"n", config.ensemble.n},
           {"d", config.ensemble.d},
           {"beta", config.ensemble.beta},
           {"scaled", config.ensemble.scaled}};
    if (!config.ensemble.epsilons.empty()) e["epsilons"] = config.ensemble.epsilons;
    if (config.ensemble.t.size() > 0) {
      e["T"] = to_json(DenseOperator::make(1, config.ensemble.d + 1, config.ensemble.t));
    }
    if (config.ensemble.v.size() > 0) {
      e["V"] = to_json(DenseOperator::make(2, config.ensemble.d + 1, config.ensemble.v));
    }
    j["ensemble"] = e;
  }
  if (!config.n_list.empty()) j["n_list"] = config.n_list;
  if (!config.limit.empty()) j["limit"] = config.limit;
  j["mc"] = json{{"samples", config.mc.samples}, {"seed", config.mc.seed}};
  if (!config.tolerances.empty()) j["tolerances"] = config.tolerances;
  j["output"] = json{{"path", config.output.path}, {"format", config.output.format}};
  if (!config.verify.what.empty()) {
    j["verify"] = json{{"what", config.verify.what},
                       {"j", config.verify.j},
                       {"order", config.verify.order},
                       {"trials", config.verify.trials}};
  }
  return j;
}

namespace {

void write_manifest(const RunConfig& config, const std::vector<std::string>& outputs,
                    bool truncated, int exit_code) {
  json manifest{{"schema", kSchemaVersion},
                {"command", config.command},
                {"config", config_echo(config)},
                {"versions",
                 json{{"bosegas", kVersion},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)}}},
                {"timestamp", timestamp_utc()},
                {"truncated", truncated},
                {"outputs", outputs},
                {"exit_status", exit_code}};
  write_text(config.output.path + ".manifest.json", manifest.dump(2) + "\n");
}

double tolerance_or(const RunConfig& config, const std::string& name, double fallback) {
  const auto it = config.tolerances.find(name);
  return it == config.tolerances.end() ? fallback : it->second;
}

SymOperator reduce_ensemble(const EnsembleSpec& spec, int m) {
  if (spec.kind == EnsembleKind::meanfield) {
    return reduce_sym(build_ensemble(spec), m);
  }
  return reduce_diagonal_ensemble(build_ensemble_weights(spec), spec.n, spec.d, m);
}

RunOutcome run_reduce(const RunConfig& config) {
  if (!config.has_ensemble) throw ValidationError("reduce: config needs an ensemble");
  const SymOperator reduced = reduce_ensemble(config.ensemble, config.m);
  const std::string path = config.output.path + ".json";
  write_text(path, to_json(reduced).dump() + "\n");
  return {kExitOk, {path}};
}

RunOutcome run_limit(const RunConfig& config) {
  if (config.limit.empty()) throw ValidationError("limit: config needs a limit kind");
  if (!config.has_ensemble) throw ValidationError("limit: config needs an ensemble");
  const LimitKind kind = limit_kind_from_string(config.limit);
  const EnsembleSpec& spec = config.ensemble;
  SymOperator op;
  switch (kind) {
    case LimitKind::uniform: op = limit_uniform(config.m, spec.d); break;
    case LimitKind::noninteracting:
      op = limit_noninteracting(config.m, spec.d, spec.beta, spec.epsilons);
      break;
    case LimitKind::condensate: op = limit_condensate(config.m, spec.d); break;
    case LimitKind::meanfield:
      throw ValidationError("limit: the meanfield limit is Monte Carlo; use the sample command");
  }
  const std::string path = config.output.path + ".json";
  write_text(path, to_json(op).dump() + "\n");
  return {kExitOk, {path}};
}

RunOutcome run_sweep(const RunConfig& config, const std::atomic<bool>* cancel, bool& truncated) {
  if (!config.has_ensemble) throw ValidationError("sweep: config needs an ensemble");
  if (config.limit.empty()) throw ValidationError("sweep: config needs a limit kind");
  if (config.n_list.empty()) throw ValidationError("sweep: config needs a nonempty n_list");
  const SweepResult result =
      sweep_to_limit(config.ensemble, limit_kind_from_string(config.limit), config.m,
                     config.n_list, config.mc.samples, config.mc.seed, cancel);
  truncated = result.truncated;
  const std::string path = config.output.path + ".csv";
  write_text(path, to_csv(result));
  return {kExitOk, {path}};
}

RunOutcome run_sample(const RunConfig& config) {
  if (!config.has_ensemble) throw ValidationError("sample: config needs an ensemble");
  const EnsembleSpec& spec = config.ensemble;
  DeFinettiWeight weight;
  switch (spec.kind) {
    case EnsembleKind::uniform: weight = DeFinettiWeight::uniform(); break;
    case EnsembleKind::noninteracting: {
      Matrix t = Matrix::Zero(spec.d + 1, spec.d + 1);
      for (int i = 0; i <= spec.d; ++i) t(i, i) = spec.epsilons[static_cast<std::size_t>(i)];
      const std::int64_t q = spec.d + 1;
      weight = DeFinettiWeight::boltzmann(spec.beta, t, Matrix::Zero(q * q, q * q));
      break;
    }
    case EnsembleKind::meanfield:
      weight = DeFinettiWeight::boltzmann(spec.beta, spec.t, spec.v);
      break;
  }
  const McMomentEstimate estimate =
      mc_estimate_moment(config.m, spec.d, weight, config.mc.samples, config.mc.seed);
  json j{{"estimate", to_json(estimate.estimate)},
         {"std_errors", real_matrix_to_json(estimate.std_errors)},
         {"z_estimate", estimate.z_estimate},
         {"z_std_error", estimate.z_std_error},
         {"trace_deviation", estimate.trace_deviation},
         {"bias_scale", estimate.bias_scale},
         {"samples", estimate.samples},
         {"seed", estimate.seed}};
  const std::string path = config.output.path + ".json";
  write_text(path, j.dump(2) + "\n");
  return {kExitOk, {path}};
}

RunOutcome run_verify(const RunConfig& config) {
  if (!config.has_ensemble) throw ValidationError("verify: config needs an ensemble");
  const EnsembleSpec& spec = config.ensemble;

  if (config.verify.what == "claim") {
    if (config.n_list.empty()) throw ValidationError("verify claim: needs a nonempty n_list");
    if (spec.t.size() == 0 || spec.v.size() == 0) {
      throw ValidationError("verify claim: ensemble needs T and V");
    }
    const auto table =
        verify_claim(config.verify.j, config.m, config.n_list, spec.t, spec.v, spec.d);
    std::ostringstream csv;
    csv << "n,deviation,wall_time_s\n";
    for (const auto& row : table) {
      csv << row.n << "," << format_double(row.deviation) << ","
          << format_double(row.wall_time_s) << "\n";
    }
    const std::string path = config.output.path + ".csv";
    write_text(path, csv.str());

    const double slack = tolerance_or(config, "slack", 0.0);
    bool decreasing = true;
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i].deviation > table[i - 1].deviation + slack) decreasing = false;
    }
    return {decreasing ? kExitOk : kExitThreshold, {path}};
  }

  if (config.verify.what == "series") {
    if (spec.t.size() == 0 || spec.v.size() == 0) {
      throw ValidationError("verify series: ensemble needs T and V");
    }
    const SeriesCheck check = verify_series(config.verify.order, spec.beta, spec.n, config.m,
                                            spec.t, spec.v, spec.d);
    const bool ok = check.deviation <= check.remainder_bound;
    json j{{"truncation_order", check.truncation_order},
           {"beta", check.beta},
           {"deviation", check.deviation},
           {"remainder_bound", check.remainder_bound},
           {"within_bound", ok}};
    const std::string path = config.output.path + ".json";
    write_text(path, j.dump(2) + "\n");
    return {ok ? kExitOk : kExitThreshold, {path}};
  }

  // free-energy
  Matrix h;
  if (spec.t.size() > 0) {
    h = spec.t;
  } else if (!spec.epsilons.empty()) {
    h = Matrix::Zero(spec.d + 1, spec.d + 1);
    for (int i = 0; i <= spec.d; ++i) h(i, i) = spec.epsilons[static_cast<std::size_t>(i)];
  } else {
    throw ValidationError("verify free-energy: ensemble needs T or epsilons");
  }
  const double sigma_factor = tolerance_or(config, "sigma_factor", 3.0);
  const VariationalReport report = variational_check(
      spec.beta, h, spec.d, config.verify.trials, config.mc.samples, config.mc.seed, sigma_factor);
  json trials = json::array();
  for (const auto& trial : report.trials) {
    trials.push_back(json{{"value", trial.value},
                          {"std_error", trial.std_error},
                          {"consistent", trial.consistent}});
  }
  const bool ok = report.minimizer_matches_reference && report.all_trials_consistent;
  json j{{"minimizer_value", report.minimizer.value},
         {"minimizer_std_error", report.minimizer.std_error},
         {"z_estimate", report.z_estimate},
         {"z_reference", report.z_reference},
         {"reference_value", report.reference_value},
         {"sigma_factor", report.sigma_factor},
         {"minimizer_matches_reference", report.minimizer_matches_reference},
         {"all_trials_consistent", report.all_trials_consistent},
         {"trials", trials}};
  const std::string path = config.output.path + ".json";
  write_text(path, j.dump(2) + "\n");
  return {ok ? kExitOk : kExitThreshold, {path}};
}

}  // namespace

RunOutcome run(const RunConfig& config, const std::atomic<bool>* cancel) {
  RunOutcome outcome;
  bool truncated = false;
  if (config.command == "reduce") {
    outcome = run_reduce(config);
  } else if (config.command == "limit") {
    outcome = run_limit(config);
  } else if (config.command == "sweep") {
    outcome = run_sweep(config, cancel, truncated);
  } else if (config.command == "sample") {
    outcome = run_sample(config);
  } else if (config.command == "verify") {
    outcome = run_verify(config);
  } else {
    throw ValidationError("unknown command '" + config.command + "'");
  }
  if (truncated && outcome.exit_code == kExitOk) outcome.exit_code = kExitInterrupted;
  write_manifest(config, outcome.outputs, truncated, outcome.exit_code);
  return outcome;
}

}  // namespace bosegas::cli
