#include "spsw/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spsw {

std::string_view toolkit_version() { return SPSW_VERSION; }

ReportDocument::ReportDocument(std::string suite, nlohmann::json config)
    : suite_(std::move(suite)), config_(std::move(config)) {}

CheckRecord& ReportDocument::add(std::string id, std::string anchor, double max_residual, double tolerance,
                                 std::size_t samples) {
  CheckRecord r{std::move(id), std::move(anchor), max_residual, tolerance, samples, false};
  r.pass = !std::isnan(max_residual) && max_residual <= tolerance;
  records_.push_back(std::move(r));
  return records_.back();
}

CheckRecord& ReportDocument::add_condition(std::string id, std::string anchor, bool holds, std::size_t samples) {
  return add(std::move(id), std::move(anchor), holds ? 0.0 : 1.0, 0.0, samples);
}

void ReportDocument::set_section(const std::string& key, nlohmann::json value) { sections_[key] = std::move(value); }
void ReportDocument::set_header(const std::string& key, nlohmann::json value) { header_[key] = std::move(value); }

std::size_t ReportDocument::passed() const {
  return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [](const auto& r) { return r.pass; }));
}

namespace {
// JSON has no NaN/inf; keep them readable instead of null.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
}  // namespace

nlohmann::json ReportDocument::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records_)
    recs.push_back({{"id", r.id},
                    {"anchor", r.anchor},
                    {"max_residual", number(r.max_residual)},
                    {"tolerance", number(r.tolerance)},
                    {"samples", r.samples},
                    {"pass", r.pass}});
  nlohmann::json doc = {{"toolkit", "spsw"},
                        {"version", toolkit_version()},
                        {"suite", suite_},
                        {"config", config_},
                        {"records", recs},
                        {"summary", {{"total", records_.size()}, {"passed", passed()}, {"failed", failed()}}}};
  if (!header_.empty()) doc["header"] = header_;
  for (const auto& [k, v] : sections_.items()) doc[k] = v;
  return doc;
}

std::string ReportDocument::dump() const { return to_json().dump(2) + "\n"; }

std::string ReportDocument::csv() const {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os.precision(17);
  os << "id,anchor,max_residual,tolerance,samples,pass\n";
  for (const auto& r : records_)
    os << quote(r.id) << ',' << quote(r.anchor) << ',' << r.max_residual << ',' << r.tolerance << ',' << r.samples
       << ',' << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace spsw
