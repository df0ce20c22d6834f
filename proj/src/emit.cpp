#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "ymcyl/harness.hpp"

namespace ymcyl {

namespace {

using Json = nlohmann::ordered_json;

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// JSON has no infinities; they are written as strings.
Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double from_json_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  throw IoError("report: bad number '" + s + "'");
}

void write_csv(const VerificationReport& r, std::ostream& out) {
  out << "experiment,seed,version,name,estimate,target,error_bar,score,threshold,pass\n";
  for (const auto& row : r.rows) {
    out << csv_field(r.experiment) << ',' << r.seed << ',' << csv_field(r.version) << ',' << csv_field(row.name) << ','
        << number(row.estimate) << ',' << number(row.target) << ',' << number(row.error_bar) << ','
        << number(row.score) << ',' << (row.threshold ? number(*row.threshold) : "") << ','
        << (row.pass ? "true" : "false") << '\n';
  }
}

void write_json(const VerificationReport& r, std::ostream& out) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["experiment"] = r.experiment;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  Json inputs = Json::array();
  for (const auto& [k, v] : r.inputs) inputs.push_back({{"key", k}, {"value", v}});
  j["inputs"] = inputs;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o;
    o["name"] = row.name;
    o["estimate"] = json_number(row.estimate);
    o["target"] = json_number(row.target);
    o["error_bar"] = json_number(row.error_bar);
    o["score"] = json_number(row.score);
    o["threshold"] = row.threshold ? json_number(*row.threshold) : Json(nullptr);
    o["pass"] = row.pass;
    rows.push_back(o);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("format", "expected csv or json, got '" + name + "'");
}

void emit(const VerificationReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Csv) {
    write_csv(report, out);
  } else {
    write_json(report, out);
  }
  if (!out) throw IoError("report: write failed");
}

void emit(const VerificationReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit(report, format, out);
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

VerificationReport read_json_report(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("report: ") + e.what());
  }
  if (j.value("schema_version", -1) != kReportSchemaVersion) throw IoError("report: unsupported schema version");
  VerificationReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& kv : j.at("inputs")) r.add_input(kv.at("key").get<std::string>(), kv.at("value").get<std::string>());
  for (const auto& o : j.at("rows")) {
    CheckRow row;
    row.name = o.at("name").get<std::string>();
    row.estimate = from_json_number(o.at("estimate"));
    row.target = from_json_number(o.at("target"));
    row.error_bar = from_json_number(o.at("error_bar"));
    row.score = from_json_number(o.at("score"));
    if (!o.at("threshold").is_null()) row.threshold = from_json_number(o.at("threshold"));
    row.pass = o.at("pass").get<bool>();
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace ymcyl
