#pragma once

// Machine-readable verification reports.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace spsw {

std::string_view toolkit_version();

struct CheckRecord {
  std::string id;
  std::string anchor;  // the quoted claim the check verifies
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Ordered list of check records plus free-form sections. Serialization is
/// deterministic: records keep insertion order, object keys are sorted and
/// doubles are printed in shortest round-trip form.
class ReportDocument {
 public:
  explicit ReportDocument(std::string suite, nlohmann::json config = nlohmann::json::object());

  /// Adds a record; pass is max_residual <= tolerance (false for NaN).
  CheckRecord& add(std::string id, std::string anchor, double max_residual, double tolerance,
                   std::size_t samples = 0);
  /// Adds a boolean check (residual 0 when it holds, 1 otherwise, tolerance 0).
  CheckRecord& add_condition(std::string id, std::string anchor, bool holds, std::size_t samples = 0);

  void set_section(const std::string& key, nlohmann::json value);
  void set_header(const std::string& key, nlohmann::json value);

  const std::vector<CheckRecord>& records() const { return records_; }
  std::size_t passed() const;
  std::size_t failed() const { return records_.size() - passed(); }
  bool all_pass() const { return failed() == 0; }

  nlohmann::json to_json() const;
  std::string dump() const;
  /// id,anchor,max_residual,tolerance,samples,pass
  std::string csv() const;

 private:
  std::string suite_;
  nlohmann::json config_;
  nlohmann::json header_ = nlohmann::json::object();
  nlohmann::json sections_ = nlohmann::json::object();
  std::vector<CheckRecord> records_;
};

}  // namespace spsw
