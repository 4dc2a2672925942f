#include "verifier/report.hpp"

#include <fstream>
#include <sstream>

#include "qhgeo/error.hpp"

namespace qhgeo::verifier {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_value(const Json& v) {
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

std::string format_json(const Report& report) { return report.json.dump(2) + "\n"; }

std::string format_csv(const Report& report) {
  std::ostringstream out;
  out << "index,label,id,status,constant,measured,predicted\n";
  for (const Json& c : report.json.at("checks")) {
    const Json& predicted = c.at("predicted");
    for (const auto& [name, value] : c.at("measured").items()) {
      out << c.at("index").get<std::size_t>() << ',' << csv_field(c.at("label").get<std::string>())
          << ',' << c.at("id").get<std::string>() << ',' << c.at("status").get<std::string>()
          << ',' << csv_field(name) << ',' << csv_value(value) << ','
          << (predicted.contains(name) ? csv_value(predicted.at(name)) : "") << '\n';
    }
  }
  return out.str();
}

void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write report to " + path.string());
  file << (format == ReportFormat::kJson ? format_json(report) : format_csv(report));
  if (!file) throw ConfigError("cannot write report to " + path.string());
}

}  // namespace qhgeo::verifier
