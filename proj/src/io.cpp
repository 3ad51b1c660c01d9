#include "depmod/io.hpp"

#include <cstdio>

namespace depmod {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_csv(std::ostream& os, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
  for (const std::string& c : comments) os << "# " << c << "\n";
  for (std::size_t k = 0; k < header.size(); ++k)
    os << header[k] << (k + 1 < header.size() ? "," : "");
  os << "\n";
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j)
      os << fmt17(rows(i, j)) << (j + 1 < rows.cols() ? "," : "");
    os << "\n";
  }
}

std::string to_string(GsiMethod method) {
  return method == GsiMethod::analytic ? "analytic" : "pick_freeze";
}

std::string to_string(TieResolution resolution) {
  switch (resolution) {
    case TieResolution::second_type_total:
      return "second_type_total";
    case TieResolution::first_type_total:
      return "first_type_total";
    case TieResolution::first_order:
      return "first_order";
    case TieResolution::equivalent:
      return "equivalent";
  }
  return "?";
}

namespace {
const char* kReportFields[] = {"gsi_fo_trace", "gsi_tot_trace", "gsi_fo_frob",
                               "gsi_tot_frob", "se_fo_trace",   "se_tot_trace",
                               "se_fo_frob",   "se_tot_frob"};

std::vector<double> report_values(const GsiReport& r) {
  return {r.fo_trace,    r.tot_trace,    r.fo_frob,    r.tot_frob,
          r.se_fo_trace, r.se_tot_trace, r.se_fo_frob, r.se_tot_frob};
}
}  // namespace

void write_reports_kv(std::ostream& os,
                      const std::vector<GsiReport>& reports) {
  for (const GsiReport& r : reports) {
    os << "pivot " << (r.pivot + 1) << "\n";
    os << "method " << to_string(r.method) << "\n";
    os << "n " << r.n << "\n";
    os << "seed " << r.seed << "\n";
    const auto values = report_values(r);
    for (std::size_t k = 0; k < values.size(); ++k)
      os << kReportFields[k] << " " << fmt17(values[k]) << "\n";
    os << "\n";
  }
}

void write_reports_csv(std::ostream& os,
                       const std::vector<GsiReport>& reports) {
  os << "pivot,method,n,seed";
  for (const char* f : kReportFields) os << "," << f;
  os << "\n";
  for (const GsiReport& r : reports) {
    os << (r.pivot + 1) << "," << to_string(r.method) << "," << r.n << ","
       << r.seed;
    for (double v : report_values(r)) os << "," << fmt17(v);
    os << "\n";
  }
}

void write_selection(std::ostream& os, const SelectionResult& result) {
  os << "j_star " << (result.j_star + 1) << "\n";
  os << "tie " << (result.tie ? "true" : "false") << "\n";
  os << "tie_resolution " << to_string(result.resolution) << "\n";
  for (const GsiReport& r : result.ranking)
    os << "pivot " << (r.pivot + 1) << " gsi_tot_frob " << fmt17(r.tot_frob)
       << " gsi_tot_trace " << fmt17(r.tot_trace) << " gsi_fo_frob "
       << fmt17(r.fo_frob) << " gsi_fo_trace " << fmt17(r.fo_trace) << "\n";
}

}  // namespace depmod
