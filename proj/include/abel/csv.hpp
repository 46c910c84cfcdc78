#pragma once

#include <string>
#include <vector>

#include "abel/builder.hpp"
#include "abel/probe.hpp"

namespace abel {

// Shortest decimal that parses back to the same double; "nan" and "inf" for non-finite values.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& row();
  CsvTable& cell(const std::string& s);
  CsvTable& cell(double x);
  CsvTable& cell(int x);

  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// n, case, degree, sup_error, eps_n
CsvTable stage_table(const UniversalSeries& s);
// target_id, arc_id, n, r_n, sup_error
CsvTable scan_table(const DilateReport& r);

}  // namespace abel
