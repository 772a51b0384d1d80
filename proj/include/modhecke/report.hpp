#pragma once

// Deterministic verification reports. Output carries no timestamps or other
// run-dependent data, so repeated runs on the same inputs are byte-identical.

#include <string>
#include <vector>

#include "modhecke/rational.hpp"

namespace modhecke {

struct ReportEntry {
  std::string check;     // e.g. "cellalg/ideal-closure"
  std::string instance;  // e.g. "chain(p=2,k=2,n=2) phi=2"
  std::string status;    // "pass", "fail" or "discrepancy"
  std::string lhs, rhs;  // exact values when the check compares two quantities
  std::string witness;   // free-form detail
};

class Report {
 public:
  void add(ReportEntry e) { entries_.push_back(std::move(e)); }
  const std::vector<ReportEntry>& entries() const { return entries_; }

  bool all_pass() const;          // no "fail" entries
  bool has_discrepancy() const;

  std::string to_json() const;
  std::string to_markdown() const;

 private:
  std::vector<ReportEntry> entries_;
};

/// Writes via a temp file and atomic rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace modhecke
