#include <charconv>
#include <cmath>

#include "abel/csv.hpp"

namespace abel {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::cell(const std::string& s) {
  if (rows_.empty()) rows_.emplace_back();
  if (rows_.back().size() >= columns_.size()) throw Error(Errc::invalid_argument, "too many cells in CSV row");
  rows_.back().push_back(s);
  return *this;
}

CsvTable& CsvTable::cell(double x) { return cell(format_double(x)); }

CsvTable& CsvTable::cell(int x) { return cell(std::to_string(x)); }

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += v[i];
    }
    out += '\n';
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  return out;
}

CsvTable stage_table(const UniversalSeries& s) {
  CsvTable t({"n", "case", "degree", "sup_error", "eps_n"});
  for (std::size_t n = 1; n < s.stages.size(); ++n) {
    const Stage& st = s.stages[n];
    t.row().cell(st.n).cell(describe(st.case_info)).cell(st.fit.degree).cell(st.fit.sup_error).cell(st.eps);
  }
  return t;
}

CsvTable scan_table(const DilateReport& r) {
  CsvTable t({"target_id", "arc_id", "n", "r_n", "sup_error"});
  for (const auto& e : r.entries) {
    for (std::size_t k = 0; k < e.errors.size(); ++k) {
      t.row().cell(e.target_id).cell(e.arc_id).cell(e.n[k]).cell(e.r[k]).cell(e.errors[k]);
    }
  }
  return t;
}

}  // namespace abel
