// Copyright 2026 The tpp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TPP_IO_HPP_
#define TPP_IO_HPP_

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tpp/model.hpp"
#include "tpp/pattern.hpp"
#include "tpp/residuals.hpp"

namespace tpp {

// Shortest decimal string that parses back to the same double. Locale
// independent, so output bytes are reproducible everywhere.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// format_double, with ".0" appended to bare integers so a lone scalar on
// stdout is unambiguously a decimal.
inline std::string format_double_decimal(double v) {
  std::string s = format_double(v);
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

inline double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError("bad number '" + std::string(text) + "' in " + where);
  }
  return value;
}

// --- Event files -----------------------------------------------------
//
// One event per line after a `time` or `time,mark` header; decimal
// numbers, rows ascending in time, '\n' line ends.

struct EventRows {
  std::vector<RawEvent> rows;
  bool marked = false;
};

inline EventRows parse_event_text(std::string_view text,
                                  const std::string& where) {
  EventRows out;
  std::size_t pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= text.size()) return std::nullopt;
    std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, end == std::string_view::npos ? std::string_view::npos
                                           : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    return line;
  };

  auto header = next_line();
  if (!header.has_value()) throw ParseError(where + ": missing header line");
  if (*header == "time") {
    out.marked = false;
  } else if (*header == "time,mark") {
    out.marked = true;
  } else {
    throw ParseError(where + ": header must be 'time' or 'time,mark'");
  }

  std::size_t row = 0;
  while (auto line = next_line()) {
    if (line->empty() && pos >= text.size()) break;  // trailing newline
    ++row;
    std::string loc = where + " row " + std::to_string(row);
    std::size_t comma = line->find(',');
    if (out.marked) {
      if (comma == std::string_view::npos) {
        throw ParseError(loc + ": expected 'time,mark'");
      }
      double t = parse_double(line->substr(0, comma), loc);
      double mark = parse_double(line->substr(comma + 1), loc);
      out.rows.emplace_back(t, mark);
    } else {
      if (comma != std::string_view::npos) {
        throw ParseError(loc + ": expected a single 'time' column");
      }
      out.rows.emplace_back(parse_double(*line, loc), std::nullopt);
    }
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream outfile(path, std::ios::binary);
  if (!outfile) throw ParseError("cannot write '" + path + "'");
  outfile << content;
  if (!outfile) throw ParseError("write to '" + path + "' failed");
}

inline PointPattern read_event_file(const std::string& path,
                                    ObservationWindow window) {
  EventRows rows = parse_event_text(read_text_file(path), path);
  return validate_pattern(rows.rows, window, rows.marked);
}

inline std::string event_file_text(const PointPattern& pattern) {
  std::string out = pattern.marked ? "time,mark\n" : "time\n";
  for (const Event& e : pattern.events) {
    out += format_double(e.time);
    if (pattern.marked) {
      out += ',';
      out += format_double(*e.mark);
    }
    out += '\n';
  }
  return out;
}

inline void write_event_file(const std::string& path,
                             const PointPattern& pattern) {
  write_text_file(path, event_file_text(pattern));
}

// --- Model spec documents ----------------------------------------------
//
// {"model": "<family>", "params": {...}} with the variant's parameter
// names exactly; anything unknown is an error.

namespace detail {

inline double spec_number(const nlohmann::json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ParseError(std::string("model spec missing param '") + key + "'");
  }
  if (!it->is_number()) {
    throw ParseError(std::string("model spec param '") + key +
                     "' must be a number");
  }
  return it->get<double>();
}

inline void reject_unknown_keys(const nlohmann::json& object,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace detail

inline ModelSpec parse_model_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model spec must be a JSON object");
  detail::reject_unknown_keys(doc, {"model", "params"}, "model spec");
  if (!doc.contains("model") || !doc["model"].is_string()) {
    throw ParseError("model spec needs a string field 'model'");
  }
  if (!doc.contains("params") || !doc["params"].is_object()) {
    throw ParseError("model spec needs an object field 'params'");
  }
  auto family = family_from_name(doc["model"].get<std::string>());
  if (!family.has_value()) {
    throw ParseError("unknown model '" + doc["model"].get<std::string>() +
                     "'");
  }
  const nlohmann::json& params = doc["params"];

  ModelSpec model;
  switch (*family) {
    case Family::hom_poisson:
      detail::reject_unknown_keys(params, {"lambda"}, "params");
      model = HomPoisson{detail::spec_number(params, "lambda")};
      break;
    case Family::piecewise_poisson: {
      detail::reject_unknown_keys(params, {"breakpoints", "rates"}, "params");
      PiecewisePoisson m;
      for (const char* key : {"breakpoints", "rates"}) {
        auto it = params.find(key);
        if (it == params.end() || !it->is_array()) {
          throw ParseError(std::string("piecewise_poisson needs array '") +
                           key + "'");
        }
        auto& target = std::string_view(key) == "breakpoints" ? m.breakpoints
                                                              : m.rates;
        for (const auto& v : *it) {
          if (!v.is_number()) {
            throw ParseError(std::string("non-numeric entry in '") + key +
                             "'");
          }
          target.push_back(v.get<double>());
        }
      }
      model = std::move(m);
      break;
    }
    case Family::renewal_gamma:
      detail::reject_unknown_keys(params, {"shape", "rate"}, "params");
      model = RenewalGamma{detail::spec_number(params, "shape"),
                           detail::spec_number(params, "rate")};
      break;
    case Family::hawkes_exp:
      detail::reject_unknown_keys(params, {"mu", "alpha", "gamma_rate"},
                                  "params");
      model = HawkesExp{detail::spec_number(params, "mu"),
                        detail::spec_number(params, "alpha"),
                        detail::spec_number(params, "gamma_rate")};
      break;
    case Family::self_correcting:
      detail::reject_unknown_keys(params, {"mu", "alpha"}, "params");
      model = SelfCorrecting{detail::spec_number(params, "mu"),
                             detail::spec_number(params, "alpha")};
      break;
    case Family::etas_exp:
      detail::reject_unknown_keys(
          params, {"mu", "alpha", "beta", "gamma", "delta"}, "params");
      model = EtasExp{detail::spec_number(params, "mu"),
                      detail::spec_number(params, "alpha"),
                      detail::spec_number(params, "beta"),
                      detail::spec_number(params, "gamma"),
                      detail::spec_number(params, "delta")};
      break;
    case Family::stop_after_n: {
      detail::reject_unknown_keys(params, {"lambda", "n_max"}, "params");
      auto it = params.find("n_max");
      if (it == params.end() || !it->is_number_integer()) {
        throw ParseError("stop_after_n needs an integer 'n_max'");
      }
      model = StopAfterN{detail::spec_number(params, "lambda"),
                         it->get<std::int64_t>()};
      break;
    }
  }
  validate_model(model);
  return model;
}

inline ModelSpec load_model_spec(const std::string& path) {
  return parse_model_spec(read_text_file(path));
}

// --- Residual reports ----------------------------------------------------

// JSON mirror of ResidualReport. NaN fields (undefined diagnostics on
// empty patterns) serialize as null.
inline nlohmann::ordered_json residual_report_to_json(
    const ResidualReport& report) {
  nlohmann::ordered_json doc;
  doc["n"] = report.n;
  doc["rescaled_times"] = report.rescaled_times;
  doc["interevent_mean"] = report.interevent_mean;
  doc["interevent_cv"] = report.interevent_cv;
  doc["ks_statistic"] = report.ks_statistic;
  doc["ks_p_value"] = report.ks_p_value;
  doc["max_gap"] = {{"index", report.max_gap.index},
                    {"value", report.max_gap.value}};
  doc["censored_remainder"] = report.censored_remainder;
  doc["gap_lag1_autocorr"] = report.gap_lag1_autocorr;
  return doc;
}

}  // namespace tpp

#endif  // TPP_IO_HPP_
