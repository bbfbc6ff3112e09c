#include "fittsnorm/log_format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "fittsnorm/error.hpp"

namespace fittsnorm {

using Json = nlohmann::ordered_json;

std::string Diagnostic::to_string() const {
  std::string out = "line " + std::to_string(line);
  if (!key.empty()) out += ", key '" + key + "'";
  return out + ": " + message;
}

namespace {

constexpr std::string_view kKnownKeys[] = {"pid",     "device",   "bias",     "A",
                                           "W",       "seq",      "trial",    "start_x",
                                           "start_y", "target_x", "target_y", "clicks",
                                           "practice"};

bool is_known(std::string_view key) {
  for (std::string_view k : kKnownKeys) {
    if (k == key) return true;
  }
  return false;
}

struct LineError {
  std::string key;
  std::string message;
};

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw LineError{key, "missing"};
  return *it;
}

double number_of(const Json& v, const char* key) {
  if (!v.is_number()) throw LineError{key, "expected a number"};
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw LineError{key, "not finite"};
  return d;
}

int integer_of(const Json& v, const char* key) {
  const double d = number_of(v, key);
  if (d != std::floor(d) || std::fabs(d) > 1e9) throw LineError{key, "expected an integer"};
  return static_cast<int>(d);
}

std::string string_of(const Json& v, const char* key) {
  if (!v.is_string()) throw LineError{key, "expected a string"};
  return v.get<std::string>();
}

TrialRecord record_from(const Json& obj) {
  if (!obj.is_object()) throw LineError{"", "line is not a JSON object"};
  TrialRecord r;
  r.participant_id = string_of(require(obj, "pid"), "pid");
  if (auto it = obj.find("device"); it != obj.end()) r.device = string_of(*it, "device");
  const std::string bias = string_of(require(obj, "bias"), "bias");
  const auto parsed_bias = parse_bias(bias);
  if (!parsed_bias) throw LineError{"bias", "unknown bias '" + bias + "'"};
  r.bias = *parsed_bias;
  r.condition.amplitude_px = number_of(require(obj, "A"), "A");
  r.condition.width_px = number_of(require(obj, "W"), "W");
  r.sequence_index = integer_of(require(obj, "seq"), "seq");
  r.trial_index = integer_of(require(obj, "trial"), "trial");
  r.start.x = number_of(require(obj, "start_x"), "start_x");
  r.start.y = number_of(require(obj, "start_y"), "start_y");
  r.target.x = number_of(require(obj, "target_x"), "target_x");
  r.target.y = number_of(require(obj, "target_y"), "target_y");
  const Json& clicks = require(obj, "clicks");
  if (!clicks.is_array()) throw LineError{"clicks", "expected an array"};
  for (const Json& c : clicks) {
    if (!c.is_object()) throw LineError{"clicks", "each click must be an object"};
    r.clicks.push_back({number_of(require(c, "x"), "clicks.x"), number_of(require(c, "y"), "clicks.y"),
                        number_of(require(c, "t_ms"), "clicks.t_ms")});
  }
  if (auto it = obj.find("practice"); it != obj.end()) {
    if (!it->is_boolean()) throw LineError{"practice", "expected true or false"};
    r.practice = it->get<bool>();
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!is_known(it.key())) r.extra_fields.emplace_back(it.key(), it.value().dump());
  }
  try {
    r.validate();
  } catch (const ValidationError& e) {
    throw LineError{"", e.what()};
  }
  return r;
}

void append_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

}  // namespace

ParseResult parse_log(std::istream& in, const ParseOptions& options) {
  ParseResult result;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      result.header_lines.push_back(line.substr(first + 1));
      continue;
    }
    Diagnostic diag;
    diag.line = number;
    try {
      result.records.push_back(record_from(Json::parse(line)));
      continue;
    } catch (const LineError& e) {
      diag.key = e.key;
      diag.message = e.message;
    } catch (const Json::exception& e) {
      diag.message = std::string("malformed JSON: ") + e.what();
    }
    if (options.strict) throw ValidationError(diag.to_string());
    result.diagnostics.push_back(std::move(diag));
  }
  if (in.bad()) throw IoError("error while reading trial log");
  return result;
}

ParseResult read_log_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_log(in, options);
}

std::string format_number(double value) {
  if (!std::isfinite(value)) throw ValidationError("cannot serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string serialize_record(const TrialRecord& r) {
  std::string out = "{\"pid\":";
  append_string(out, r.participant_id);
  out += ",\"device\":";
  append_string(out, r.device);
  out += ",\"bias\":\"";
  out += to_string(r.bias);
  out += "\",\"A\":" + format_number(r.condition.amplitude_px);
  out += ",\"W\":" + format_number(r.condition.width_px);
  out += ",\"seq\":" + std::to_string(r.sequence_index);
  out += ",\"trial\":" + std::to_string(r.trial_index);
  out += ",\"start_x\":" + format_number(r.start.x);
  out += ",\"start_y\":" + format_number(r.start.y);
  out += ",\"target_x\":" + format_number(r.target.x);
  out += ",\"target_y\":" + format_number(r.target.y);
  out += ",\"clicks\":[";
  for (std::size_t i = 0; i < r.clicks.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"x\":" + format_number(r.clicks[i].x) + ",\"y\":" + format_number(r.clicks[i].y) +
           ",\"t_ms\":" + format_number(r.clicks[i].t_ms) + "}";
  }
  out += ']';
  if (r.practice) out += ",\"practice\":true";
  for (const auto& [key, raw] : r.extra_fields) {
    out += ',';
    append_string(out, key);
    out += ':';
    out += raw;
  }
  out += '}';
  return out;
}

void write_log(std::ostream& out, std::span<const TrialRecord> records,
               std::span<const std::string> header_lines) {
  for (const std::string& h : header_lines) out << '#' << h << '\n';
  for (const TrialRecord& r : records) out << serialize_record(r) << '\n';
}

void write_log_file(const std::filesystem::path& path, std::span<const TrialRecord> records,
                    std::span<const std::string> header_lines) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_log(out, records, header_lines);
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace fittsnorm
