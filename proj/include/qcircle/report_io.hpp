#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcircle/common.hpp"
#include "qcircle/experiments.hpp"
#include "qcircle/fourier_state.hpp"
#include "qcircle/measures.hpp"
#include "qcircle/minimize.hpp"

// Report schemas (owned by the CLI): JSON documents carry "kind" and
// "schema_version"; every number is printed with 17 significant digits so a
// re-read reproduces the double bit-for-bit. +infinity has no JSON literal and
// is serialized as the string "inf". Writers are hand-rolled to keep key order
// and number formatting deterministic; parsing uses nlohmann::json.

namespace qcircle {

inline constexpr int kSchemaVersion = 1;

// -- number/text formatting -----------------------------------------------------

inline std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// JSON value token: plain number, or quoted "inf"/"-inf"/"nan".
inline std::string json_num(double v) {
  if (std::isinf(v) || std::isnan(v)) return "\"" + fmt17(v) + "\"";
  return fmt17(v);
}

inline std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

// RFC-4180 quoting: fields containing comma, quote, or newline get quoted,
// embedded quotes doubled.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

// -- JSON writers -----------------------------------------------------------------

inline std::string report_json_body(const UncertaintyReport& r) {
  std::ostringstream os;
  os << "{\"lambda\": " << json_num(r.lambda)
     << ", \"circ_variance\": " << json_num(r.circ_variance)
     << ", \"kr_angle\": " << json_num(r.kr_angle)
     << ", \"j_variance\": " << json_num(r.j_variance)
     << ", \"sum_kr\": " << json_num(r.sum_kr)
     << ", \"u2_magnitude\": " << json_num(r.u2_magnitude) << "}";
  return os.str();
}

inline std::string to_json(const UncertaintyReport& r) {
  std::ostringstream os;
  os << "{\"kind\": \"uncertainty_report\", \"schema_version\": " << kSchemaVersion
     << ", \"report\": " << report_json_body(r) << "}\n";
  return os.str();
}

inline std::string state_json_body(const FourierState& s) {
  std::ostringstream os;
  os << "{\"n_min\": " << s.n_min << ", \"n_max\": " << s.n_max << ", \"coeffs\": [";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (i) os << ", ";
    os << "[" << json_num(s.coeffs[i].real()) << ", " << json_num(s.coeffs[i].imag()) << "]";
  }
  os << "]}";
  return os.str();
}

inline std::string to_json(const FourierState& s) {
  std::ostringstream os;
  os << "{\"kind\": \"fourier_state\", \"schema_version\": " << kSchemaVersion
     << ", \"state\": " << state_json_body(s) << "}\n";
  return os.str();
}

inline std::string to_json(const std::vector<LambdaSweepRow>& rows) {
  std::ostringstream os;
  os << "{\"kind\": \"lambda_sweep\", \"schema_version\": " << kSchemaVersion << ", \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ", ";
    os << "{\"lambda\": " << json_num(rows[i].lambda)
       << ", \"circ_variance\": " << json_num(rows[i].circ_variance)
       << ", \"difference\": " << json_num(rows[i].difference)
       << ", \"kr_angle\": " << json_num(rows[i].kr_angle) << "}";
  }
  os << "]}\n";
  return os.str();
}

inline std::string to_json(const Trajectory& t) {
  std::ostringstream os;
  os << "{\"kind\": \"trajectory\", \"schema_version\": " << kSchemaVersion << ", \"points\": [";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    if (i) os << ", ";
    os << "{\"time\": " << json_num(t.times[i]) << ", \"phase_estimate\": ";
    if (t.phase_estimate[i].has_value()) os << json_num(*t.phase_estimate[i]);
    else os << "null";
    os << ", \"u1_magnitude\": " << json_num(t.u1_magnitude[i])
       << ", \"windowed_mean\": " << json_num(t.windowed_mean[i])
       << ", \"report\": " << report_json_body(t.reports[i]) << "}";
  }
  os << "]}\n";
  return os.str();
}

inline std::string to_json(const LineDemoReport& r) {
  std::ostringstream os;
  os << "{\"kind\": \"line_demo\", \"schema_version\": " << kSchemaVersion
     << ", \"L\": " << json_num(r.L)
     << ", \"box_variance\": " << json_num(r.box_variance)
     << ", \"split_box_variance\": " << json_num(r.split_box_variance)
     << ", \"ratio\": " << json_num(r.ratio) << ", \"gaussian_curve\": [";
  for (std::size_t i = 0; i < r.gaussian_curve.size(); ++i) {
    if (i) os << ", ";
    os << "{\"sigma2\": " << json_num(r.gaussian_curve[i].sigma2)
       << ", \"heisenberg_sum\": " << json_num(r.gaussian_curve[i].heisenberg_sum) << "}";
  }
  os << "]}\n";
  return os.str();
}

inline std::string to_json(const MinimizationReport& r) {
  std::ostringstream os;
  os << "{\"kind\": \"minimization_report\", \"schema_version\": " << kSchemaVersion
     << ", \"method\": " << json_quote(r.method)
     << ", \"best_value\": " << json_num(r.best_value)
     << ", \"below_one\": " << (r.below_one ? "true" : "false")
     << ", \"coherent_value\": " << json_num(r.coherent_value)
     << ", \"cat_value\": " << json_num(r.cat_value)
     << ", \"overlap_cat_canonical\": " << json_num(r.overlap_cat_canonical)
     << ", \"overlap_cat_matched\": " << json_num(r.overlap_cat_matched)
     << ", \"non_convergence\": " << (r.non_convergence ? "true" : "false")
     << ", \"restarts\": [";
  for (std::size_t i = 0; i < r.restarts.size(); ++i) {
    const RestartResult& rr = r.restarts[i];
    if (i) os << ", ";
    os << "{\"index\": " << rr.index << ", \"seed_kind\": " << json_quote(rr.seed_kind)
       << ", \"start_value\": " << json_num(rr.start_value)
       << ", \"final_value\": " << json_num(rr.final_value)
       << ", \"iterations\": " << rr.iterations
       << ", \"converged\": " << (rr.converged ? "true" : "false") << "}";
  }
  os << "], \"best_state\": " << state_json_body(r.best_state) << "}\n";
  return os.str();
}

// -- CSV writers --------------------------------------------------------------------

inline const char* sweep_csv_header() { return "lambda,circ_variance,difference,kr_angle"; }

inline std::string to_csv(const std::vector<LambdaSweepRow>& rows) {
  std::ostringstream os;
  os << sweep_csv_header() << "\n";
  for (const LambdaSweepRow& r : rows)
    os << fmt17(r.lambda) << ',' << fmt17(r.circ_variance) << ',' << fmt17(r.difference) << ','
       << fmt17(r.kr_angle) << "\n";
  return os.str();
}

inline const char* report_csv_header() {
  return "lambda,circ_variance,kr_angle,j_variance,sum_kr,u2_magnitude";
}

inline std::string to_csv(const UncertaintyReport& r) {
  std::ostringstream os;
  os << report_csv_header() << "\n"
     << fmt17(r.lambda) << ',' << fmt17(r.circ_variance) << ',' << fmt17(r.kr_angle) << ','
     << fmt17(r.j_variance) << ',' << fmt17(r.sum_kr) << ',' << fmt17(r.u2_magnitude) << "\n";
  return os.str();
}

inline const char* trajectory_csv_header() {
  return "time,u1_magnitude,phase_estimate,windowed_mean,circ_variance,kr_angle,j_variance,"
         "sum_kr,u2_magnitude";
}

inline std::string to_csv(const Trajectory& t) {
  std::ostringstream os;
  os << trajectory_csv_header() << "\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << fmt17(t.times[i]) << ',' << fmt17(t.u1_magnitude[i]) << ',';
    if (t.phase_estimate[i].has_value()) os << fmt17(*t.phase_estimate[i]);
    os << ',' << fmt17(t.windowed_mean[i]);
    const UncertaintyReport& r = t.reports[i];
    os << ',' << fmt17(r.circ_variance) << ',' << fmt17(r.kr_angle) << ',' << fmt17(r.j_variance)
       << ',' << fmt17(r.sum_kr) << ',' << fmt17(r.u2_magnitude) << "\n";
  }
  return os.str();
}

// -- parsing ---------------------------------------------------------------------------

inline double parse_json_double(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    try {
      return std::stod(s);
    } catch (const std::exception&) {
    }
  }
  throw DomainError(std::string("expected a number for ") + what);
}

inline FourierState state_from_json(const nlohmann::json& doc) {
  const nlohmann::json& body = doc.contains("state") ? doc.at("state") : doc;
  FourierState s;
  s.n_min = body.at("n_min").get<int>();
  s.n_max = body.at("n_max").get<int>();
  if (s.n_min > s.n_max) throw BadRangeError("state_from_json: n_min > n_max");
  for (const nlohmann::json& pair : body.at("coeffs"))
    s.coeffs.emplace_back(parse_json_double(pair.at(0), "coeff re"),
                          parse_json_double(pair.at(1), "coeff im"));
  if (static_cast<int>(s.coeffs.size()) != s.size())
    throw DomainError("state_from_json: coefficient count does not match lattice range");
  return s;
}

inline FourierState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open state file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  return state_from_json(doc);
}

// Grid syntax "start:stop:count", inclusive endpoints; count = 1 yields {start}.
inline std::vector<double> parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw DomainError("grid must be start:stop:count, got '" + text + "'");
  double start, stop;
  long count;
  try {
    start = std::stod(text.substr(0, c1));
    stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    count = std::stol(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw DomainError("grid must be start:stop:count, got '" + text + "'");
  }
  if (count < 1) throw DomainError("grid count must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(start);
    return grid;
  }
  for (long i = 0; i < count; ++i)
    grid.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  return grid;
}

inline std::pair<int, int> parse_n_range(const std::string& text) {
  const auto c = text.find(':', 1);  // skip a possible leading minus sign
  if (c == std::string::npos) throw DomainError("n-range must be MIN:MAX, got '" + text + "'");
  int lo, hi;
  try {
    lo = std::stoi(text.substr(0, c));
    hi = std::stoi(text.substr(c + 1));
  } catch (const std::exception&) {
    throw DomainError("n-range must be MIN:MAX, got '" + text + "'");
  }
  if (lo > hi) throw BadRangeError("n-range: MIN > MAX");
  return {lo, hi};
}

inline std::vector<double> grid_from_json(const nlohmann::json& v, const char* what) {
  if (v.is_string()) return parse_grid(v.get<std::string>());
  if (v.is_array()) {
    std::vector<double> grid;
    for (const nlohmann::json& x : v) grid.push_back(parse_json_double(x, what));
    return grid;
  }
  throw DomainError(std::string(what) + ": expected an array or a start:stop:count string");
}

// Declarative config file mirroring ExperimentConfig; unknown keys rejected.
inline ExperimentConfig config_from_json(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "lambda_grid") cfg.lambda_grid = grid_from_json(value, "lambda_grid");
    else if (key == "epsilon_grid") cfg.epsilon_grid = grid_from_json(value, "epsilon_grid");
    else if (key == "l_grid") cfg.l_grid = grid_from_json(value, "l_grid");
    else if (key == "time_grid") cfg.time_grid = grid_from_json(value, "time_grid");
    else if (key == "n_range") {
      if (value.is_string()) {
        std::tie(cfg.n_min, cfg.n_max) = parse_n_range(value.get<std::string>());
      } else if (value.is_array() && value.size() == 2) {
        cfg.n_min = value.at(0).get<int>();
        cfg.n_max = value.at(1).get<int>();
        if (cfg.n_min > cfg.n_max) throw BadRangeError("n_range: MIN > MAX");
      } else {
        throw DomainError("n_range: expected [min, max] or \"MIN:MAX\"");
      }
    } else if (key == "optimizer") {
      for (const auto& [okey, ovalue] : value.items()) {
        if (okey == "restarts") cfg.optimizer.restarts = ovalue.get<int>();
        else if (okey == "max_iters") cfg.optimizer.max_iters = ovalue.get<int>();
        else if (okey == "step_tol") cfg.optimizer.step_tol = parse_json_double(ovalue, "step_tol");
        else if (okey == "seed") cfg.optimizer.seed = ovalue.get<std::uint64_t>();
        else throw DomainError("unknown optimizer config key: " + okey);
      }
    } else if (key == "output_path") {
      cfg.output_path = value.get<std::string>();
    } else {
      throw DomainError("unknown config key: " + key);
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  return config_from_json(nlohmann::json::parse(in));
}

}  // namespace qcircle
