#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "depmod/gsi.hpp"

namespace depmod {

// 17 significant digits: round-trip exact for 64-bit floats, so repeated
// runs are byte-stable.
std::string fmt17(double v);

// Comma-separated values, LF line endings, '#'-prefixed comment lines.
void write_csv(std::ostream& os, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

std::string to_string(GsiMethod method);
std::string to_string(TieResolution resolution);

void write_reports_kv(std::ostream& os, const std::vector<GsiReport>& reports);
void write_reports_csv(std::ostream& os,
                       const std::vector<GsiReport>& reports);
void write_selection(std::ostream& os, const SelectionResult& result);

}  // namespace depmod
