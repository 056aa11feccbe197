#pragma once

// Diagnostics CSV: fixed column order, 17 significant digits, '.' decimal,
// ',' separator, one header row. Bitwise reproducible for identical runs.

#include <fstream>
#include <string>

#include "peq/fields.hpp"

namespace peq {

std::string diag_csv_header();
std::string diag_csv_row(const DiagRecord& r);

class DiagCsv {
  public:
    explicit DiagCsv(const std::string& path);
    void write(const DiagRecord& r);  // flushes after each row

  private:
    std::ofstream out_;
};

// shared by the twin/epsilon report writers
std::string format_g17(double x);

}  // namespace peq
