#include "covertbc/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "covertbc/capacity.hpp"
#include "covertbc/condition.hpp"
#include "covertbc/converse.hpp"
#include "covertbc/info.hpp"
#include "covertbc/io.hpp"
#include "covertbc/region.hpp"
#include "covertbc/sim.hpp"

namespace covertbc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kLn2 = 0.6931471805599453;

const char* kCommandNames[] = {"capacity", "condition", "map",  "region",
                               "converse", "keys",      "simulate", "sweep"};

double rate_out(double nats, bool bits) { return bits ? nats / kLn2 : nats; }

const char* units_label(bool bits) {
  return bits ? "bits_per_sqrt_use" : "nats_per_sqrt_use";
}

ordered_json finite_or_string(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

ordered_json verdict_to_json(const ConditionVerdict& verdict) {
  ordered_json out;
  out["satisfied"] = verdict.satisfied;
  out["dominant_receiver"] = verdict.dominant_receiver;
  out["worst_ratio"] = finite_or_string(verdict.worst_ratio);
  out["threshold"] = verdict.threshold;
  out["witness_px"] = verdict.witness_px.p;
  out["boundary_tie"] = verdict.boundary_tie;
  return out;
}

std::string run_capacity(const RunManifest& m, const LoadedSpec& loaded) {
  ordered_json out;
  if (loaded.kind == LoadedSpec::Kind::Gaussian) {
    out["l1_star"] = rate_out(covert_capacity_awgn(loaded.gauss.n1, loaded.gauss.sigma2), m.bits);
    out["l2_star"] = rate_out(covert_capacity_awgn(loaded.gauss.n2, loaded.gauss.sigma2), m.bits);
  } else if (loaded.v) {
    BroadcastSpec spec = to_broadcast_spec(loaded);
    CovertCapacityResult c1 = covert_capacity_general(spec.w, spec.warden);
    CovertCapacityResult c2 = covert_capacity_general(spec.v, spec.warden);
    CovertCapacityResult cz = key_stream_capacity(spec.warden);
    out["l1_star"] = rate_out(c1.l_star, m.bits);
    out["argmax_p1"] = c1.argmax_p;
    out["l2_star"] = rate_out(c2.l_star, m.bits);
    out["argmax_p2"] = c2.argmax_p;
    out["lz_star"] = rate_out(cz.l_star, m.bits);
    out["argmax_pz"] = cz.argmax_p;
    out["pruned_inputs"] = spec.pruning.dropped_inputs;
    out["pruned_warden_outputs"] = spec.pruning.dropped_warden_outputs;
  } else {
    CovertCapacityResult c = covert_capacity_general(loaded.w, loaded.warden);
    out["l_star"] = rate_out(c.l_star, m.bits);
    out["argmax_p"] = c.argmax_p;
  }
  out["units"] = units_label(m.bits);
  return out.dump(2) + "\n";
}

std::string run_condition(const RunManifest& m, const LoadedSpec& loaded) {
  BroadcastSpec spec = to_broadcast_spec(loaded);
  ordered_json out;
  out["general"] = verdict_to_json(check_condition(spec));
  if (spec.num_inputs() == 2)
    out["binary"] = verdict_to_json(check_condition_binary(spec));
  else
    out["binary"] = nullptr;
  (void)m;
  return out.dump(2) + "\n";
}

std::string run_map(const RunManifest& m, const LoadedSpec& loaded) {
  ConditionMap map = condition_map(loaded.w, loaded.warden, m.grid_step);
  std::ostringstream csv;
  csv << "q0,q1,verdict\n";
  for (std::size_t i = 0; i < map.q_values.size(); ++i)
    for (std::size_t j = 0; j < map.q_values.size(); ++j)
      csv << format_double(map.q_values[i]) << ',' << format_double(map.q_values[j]) << ','
          << static_cast<int>(map.cells[i][j]) << '\n';
  return csv.str();
}

RegionSpec region_from_spec(const LoadedSpec& loaded) {
  if (loaded.kind == LoadedSpec::Kind::Gaussian) {
    return make_region({covert_capacity_awgn(loaded.gauss.n1, loaded.gauss.sigma2),
                        covert_capacity_awgn(loaded.gauss.n2, loaded.gauss.sigma2)});
  }
  BroadcastSpec spec = to_broadcast_spec(loaded);
  return make_region({covert_capacity_general(spec.w, spec.warden).l_star,
                      covert_capacity_general(spec.v, spec.warden).l_star});
}

std::string run_region(const RunManifest& m, const LoadedSpec& loaded) {
  RegionSpec region = region_from_spec(loaded);
  std::vector<BoundaryPoint> points = boundary(region, static_cast<std::size_t>(m.resolution));
  std::ostringstream csv;
  csv << "share_1,share_2,L_1,L_2\n";
  for (const auto& point : points)
    csv << format_double(point.shares[0]) << ',' << format_double(point.shares[1]) << ','
        << format_double(rate_out(point.rates[0], m.bits)) << ','
        << format_double(rate_out(point.rates[1], m.bits)) << '\n';
  return csv.str();
}

std::string run_converse(const RunManifest& m, const LoadedSpec& loaded) {
  std::ostringstream csv;
  if (loaded.kind == LoadedSpec::Kind::Gaussian) {
    long long n = m.n_values.front();
    WeightBudget budget = max_weight_gaussian(m.delta, n, loaded.gauss.sigma2);
    auto sweep = gaussian_converse_region(loaded.gauss.n1, loaded.gauss.n2, loaded.gauss.sigma2,
                                          budget, static_cast<std::size_t>(m.resolution));
    double scale = std::sqrt(static_cast<double>(n) / m.delta);
    csv << "tau,l1_bound,l2_bound,l1_normalized,l2_normalized\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      double tau = budget.alpha_bar * static_cast<double>(i) /
                   static_cast<double>(sweep.size() - 1);
      csv << format_double(tau) << ',' << format_double(sweep[i].first) << ','
          << format_double(sweep[i].second) << ','
          << format_double(rate_out(sweep[i].first * scale, m.bits)) << ','
          << format_double(rate_out(sweep[i].second * scale, m.bits)) << '\n';
    }
    return csv.str();
  }

  BroadcastSpec spec = to_broadcast_spec(loaded);
  CovertCapacityResult c1 = covert_capacity_general(spec.w, spec.warden);
  CovertCapacityResult c2 = covert_capacity_general(spec.v, spec.warden);
  const std::vector<double>& mix_p = c1.l_star >= c2.l_star ? c2.argmax_p : c1.argmax_p;
  csv << "n,lambda,bound_nats,normalized\n";
  for (long long n : m.n_values) {
    WeightBudget budget = max_weight(m.delta, n, spec.warden, mix_p);
    ConverseBound bound = lambda_sum_bound(spec, budget);
    csv << n << ',' << format_double(bound.lambda) << ','
        << format_double(rate_out(bound.bound_nats, m.bits)) << ','
        << format_double(rate_out(bound.normalized, m.bits)) << '\n';
  }
  return csv.str();
}

std::string run_keys(const RunManifest& m, const LoadedSpec& loaded) {
  BroadcastSpec spec = to_broadcast_spec(loaded);
  RegionSpec region = make_region({covert_capacity_general(spec.w, spec.warden).l_star,
                                   covert_capacity_general(spec.v, spec.warden).l_star});
  double lz = key_stream_capacity(spec.warden).l_star;
  std::vector<BoundaryPoint> points = boundary(region, static_cast<std::size_t>(m.resolution));
  std::ostringstream csv;
  csv << "share_1,share_2,l1,l2,min_key_rate\n";
  for (const auto& point : points) {
    double key = min_key_rate(point.rates[0], point.rates[1], region, lz);
    csv << format_double(point.shares[0]) << ',' << format_double(point.shares[1]) << ','
        << format_double(rate_out(point.rates[0], m.bits)) << ','
        << format_double(rate_out(point.rates[1], m.bits)) << ','
        << format_double(rate_out(key, m.bits)) << '\n';
  }
  return csv.str();
}

SimConfig sim_config_from(const RunManifest& m, const LoadedSpec& loaded) {
  SimConfig cfg;
  cfg.spec = to_broadcast_spec(loaded);
  cfg.n = m.n_values.front();
  cfg.delta = m.delta;
  cfg.rho = m.rho;
  cfg.rates_fraction = m.rates_fraction;
  cfg.trials = m.trials;
  cfg.seed = m.seed;
  return cfg;
}

ordered_json user_to_json(const UserReport& user, bool bits) {
  ordered_json out;
  out["log_m"] = rate_out(user.log_m, bits);
  out["empirical_error"] = user.empirical_error;
  out["wilson_halfwidth"] = user.wilson_halfwidth;
  return out;
}

std::string run_simulate(const RunManifest& m, const LoadedSpec& loaded) {
  SimReport report = run(sim_config_from(m, loaded));
  ordered_json out;
  out["user1"] = user_to_json(report.user1, m.bits);
  out["user2"] = user_to_json(report.user2, m.bits);
  out["joint_error"] = report.joint_error;
  out["exact_ensemble_kl"] = report.exact_ensemble_kl;
  out["detection_sum_bound"] = report.detection_sum_bound;
  out["empirical_lrt_sum"] = report.empirical_lrt_sum;
  out["lrt_false_alarm"] = report.lrt_false_alarm;
  out["lrt_missed_detection"] = report.lrt_missed_detection;
  out["lrt_std_error"] = report.lrt_std_error;
  out["seed"] = report.seed;
  out["trials"] = report.trials;
  out["units"] = units_label(m.bits);
  return out.dump(2) + "\n";
}

std::string run_sweep(const RunManifest& m, const LoadedSpec& loaded) {
  SimConfig cfg = sim_config_from(m, loaded);
  std::vector<SweepRow> rows = sweep(cfg, m.n_values);
  std::ostringstream csv;
  csv << "n,log_m_total,normalized_sum,share_sum,error,kl\n";
  for (const auto& row : rows)
    csv << row.n << ',' << format_double(rate_out(row.log_m_total, m.bits)) << ','
        << format_double(rate_out(row.normalized_sum, m.bits)) << ','
        << format_double(row.share_sum) << ',' << format_double(row.error) << ','
        << format_double(row.kl) << '\n';
  return csv.str();
}

ordered_json manifest_to_json(const RunManifest& m) {
  ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command_name(m.command);
  doc["spec"] = m.spec_path;
  doc["out"] = m.out_path;
  ordered_json params;
  params["delta"] = m.delta;
  params["n"] = m.n_values;
  params["rho"] = m.rho;
  params["grid_step"] = m.grid_step;
  params["trials"] = m.trials;
  params["seed"] = m.seed;
  params["bits"] = m.bits;
  params["rates_fraction"] = m.rates_fraction;
  params["resolution"] = m.resolution;
  doc["params"] = params;
  return doc;
}

}  // namespace

const char* command_name(Command command) {
  return kCommandNames[static_cast<int>(command)];
}

std::optional<Command> parse_command(const std::string& name) {
  for (int i = 0; i < 8; ++i)
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  return std::nullopt;
}

std::string sidecar_path_for(const std::string& out_path) {
  return out_path + ".sidecar.json";
}

int dispatch(const RunManifest& manifest) {
  try {
    if (manifest.out_path.empty())
      throw ParseError("cli", "dispatch", "missing output path");
    if (manifest.n_values.empty())
      throw ParseError("cli", "dispatch", "need at least one n value");
    LoadedSpec loaded = load_spec_file(manifest.spec_path);

    std::string results;
    switch (manifest.command) {
      case Command::Capacity: results = run_capacity(manifest, loaded); break;
      case Command::Condition: results = run_condition(manifest, loaded); break;
      case Command::Map: results = run_map(manifest, loaded); break;
      case Command::Region: results = run_region(manifest, loaded); break;
      case Command::Converse: results = run_converse(manifest, loaded); break;
      case Command::Keys: results = run_keys(manifest, loaded); break;
      case Command::Simulate: results = run_simulate(manifest, loaded); break;
      case Command::Sweep: results = run_sweep(manifest, loaded); break;
    }
    write_text_file(manifest.out_path, results);
    write_text_file(sidecar_path_for(manifest.out_path),
                    manifest_to_json(manifest).dump(2) + "\n");
    return 0;
  } catch (const Error& e) {
    ordered_json record;
    record["error"]["type"] = e.name();
    record["error"]["module"] = e.module_name();
    record["error"]["operation"] = e.operation();
    record["error"]["message"] = e.what();
    std::cout << record.dump(2) << std::endl;
    switch (e.kind()) {
      case ErrorKind::Parse: return 2;
      case ErrorKind::Precondition: return 3;
      case ErrorKind::Numeric: return 4;
    }
    return 4;
  } catch (const std::exception& e) {
    ordered_json record;
    record["error"]["type"] = "InternalError";
    record["error"]["message"] = e.what();
    std::cout << record.dump(2) << std::endl;
    return 4;
  }
}

RunManifest manifest_from_sidecar(const std::string& sidecar_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(sidecar_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("cli", "manifest_from_sidecar", e.what());
  }
  RunManifest manifest;
  auto command = parse_command(doc.at("command").get<std::string>());
  if (!command)
    throw ParseError("cli", "manifest_from_sidecar", "unknown command in sidecar");
  manifest.command = *command;
  manifest.spec_path = doc.at("spec").get<std::string>();
  manifest.out_path = doc.at("out").get<std::string>();
  const auto& params = doc.at("params");
  manifest.delta = params.at("delta").get<double>();
  manifest.n_values = params.at("n").get<std::vector<long long>>();
  manifest.rho = params.at("rho").get<double>();
  manifest.grid_step = params.at("grid_step").get<double>();
  manifest.trials = params.at("trials").get<long long>();
  manifest.seed = params.at("seed").get<std::uint64_t>();
  manifest.bits = params.at("bits").get<bool>();
  manifest.rates_fraction = params.at("rates_fraction").get<double>();
  manifest.resolution = params.at("resolution").get<long long>();
  return manifest;
}

}  // namespace covertbc
