#include "modhecke/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace modhecke {

std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
  std::string t = s.find('/') == std::string::npos ? s + "/1" : s;
  Rat r(t);
  r.canonicalize();
  return r;
}

bool Report::all_pass() const {
  for (const ReportEntry& e : entries_)
    if (e.status == "fail") return false;
  return true;
}

bool Report::has_discrepancy() const {
  for (const ReportEntry& e : entries_)
    if (e.status == "discrepancy") return true;
  return false;
}

std::string Report::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportEntry& e : entries_) {
    nlohmann::ordered_json j;
    j["check"] = e.check;
    j["instance"] = e.instance;
    j["status"] = e.status;
    if (!e.lhs.empty() || !e.rhs.empty()) {
      j["lhs"] = e.lhs;
      j["rhs"] = e.rhs;
    }
    if (!e.witness.empty()) j["witness"] = e.witness;
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json root;
  root["checks"] = std::move(arr);
  return root.dump(2) + "\n";
}

std::string Report::to_markdown() const {
  std::ostringstream os;
  os << "| check | instance | status | lhs | rhs | witness |\n";
  os << "|---|---|---|---|---|---|\n";
  for (const ReportEntry& e : entries_)
    os << "| " << e.check << " | " << e.instance << " | " << e.status << " | " << e.lhs << " | "
       << e.rhs << " | " << e.witness << " |\n";
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot replace " + path);
}

}  // namespace modhecke
