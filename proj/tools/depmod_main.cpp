#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "depmod/constrained.hpp"
#include "depmod/elliptical.hpp"
#include "depmod/errors.hpp"
#include "depmod/gsi.hpp"
#include "depmod/io.hpp"
#include "depmod/linalg.hpp"
#include "depmod/model_spec.hpp"
#include "depmod/trapezoid.hpp"

namespace {

using namespace depmod;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  return out;
}

int model_dimension(const DmSpec& spec) {
  if (spec.has("mu")) return static_cast<int>(spec.mu.size());
  if (spec.has("a")) return static_cast<int>(spec.a.size());
  if (spec.has("sigmas")) return static_cast<int>(spec.sigmas.size());
  if (spec.has("d")) return spec.d;
  if (spec.has("sigma")) return static_cast<int>(spec.sigma.rows());
  if (spec.family == "trapezoid") return 2;
  if (!spec.marginals.empty()) return static_cast<int>(spec.marginals.size());
  throw SpecParseError("cannot infer model dimension from spec");
}

DmSpec with_pivot(DmSpec spec, int pivot_1b) {
  spec.pivot = pivot_1b;
  spec.perm.clear();
  return spec;
}

std::vector<GsiReport> reports_for_spec(const DmSpec& spec,
                                        const std::string& method, long n,
                                        std::uint64_t seed) {
  const int d = model_dimension(spec);
  std::vector<GsiReport> reports;
  for (int j = 1; j <= d; ++j) {
    if (method == "analytic") {
      if (spec.family == "gaussian") {
        reports.push_back(gsi_gaussian_analytic(
            spec.mu, CovarianceMatrix::from(spec.sigma), j - 1));
      } else if (spec.family == "trapezoid") {
        reports.push_back(gsi_trapezoid_analytic(
            spec.beta, j == 1 ? TrapezoidModel::r1 : TrapezoidModel::r2));
      } else {
        throw UnsupportedAnalytic("analytic indices are available for "
                                  "gaussian and trapezoid only");
      }
    } else {
      const DependencyModel m = build_dm(with_pivot(spec, j));
      RngStream rng(seed, 0xD15C0000u + static_cast<std::uint64_t>(j));
      reports.push_back(gsi_pick_freeze(m, n, rng));
    }
  }
  return reports;
}

int cmd_sample(const std::string& spec_path, long n, std::uint64_t seed,
               bool seed_given, const std::string& out_path) {
  const std::string text = slurp(spec_path);
  const DmSpec spec = parse_model_spec(text);
  const DependencyModel model = build_dm(spec);
  RngStream rng(seed_given ? seed : spec.seed);
  const SampleBatch batch = sample_batch(model, n, rng);

  std::vector<std::string> header;
  for (int k = 1; k <= model.dim(); ++k)
    header.push_back("x" + std::to_string(k));
  std::vector<std::string> comments = {
      "seed=" + std::to_string(rng.seed()),
      "spec-digest=" + spec_digest(text),
  };
  auto out = open_out(out_path);
  write_csv(out, comments, header, batch.values);
  return 0;
}

int cmd_gsi(const std::string& spec_path, const std::string& method, long n,
            std::uint64_t seed, bool seed_given, const std::string& out_path,
            const std::string& format) {
  const DmSpec spec = parse_model_spec(slurp(spec_path));
  const auto reports =
      reports_for_spec(spec, method, n, seed_given ? seed : spec.seed);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_out(out_path);
    os = &file;
  }
  if (format == "kv")
    write_reports_kv(*os, reports);
  else
    write_reports_csv(*os, reports);
  return 0;
}

int cmd_select(const std::string& spec_path, const std::string& method,
               long n, std::uint64_t seed, bool seed_given) {
  const DmSpec spec = parse_model_spec(slurp(spec_path));
  const auto reports =
      reports_for_spec(spec, method, n, seed_given ? seed : spec.seed);
  const double tol = method == "analytic" ? 1e-12 : 1e-3;
  write_selection(std::cout, select_efficient_dm(reports, tol));
  return 0;
}

int cmd_reproduce(const std::string& target, const std::string& out_path,
                  std::uint64_t seed) {
  auto out = open_out(out_path);
  if (target == "gaussian_d3") {
    const double sets[7][3] = {
        {-0.9990, 0.9990, -0.9990}, {0.25, 0.50, 0.75}, {0.60, 0.0, 0.0},
        {0.0, 0.0, 0.0},            {0.25, 0.80, 0.50}, {0.0, 0.75, 0.45},
        {-0.50, 0.50, -0.50}};
    Eigen::VectorXd sd(3);
    sd << 3.0, 5.0, 4.0;
    out << "# target=gaussian_d3\n";
    out << "# seed=" << seed << "\n";
    out << "set,rho12,rho13,rho23,pivot,gsi_t_trace,gsi_t_frob\n";
    for (int s = 0; s < 7; ++s) {
      Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(3, 3);
      corr(0, 1) = corr(1, 0) = sets[s][0];
      corr(0, 2) = corr(2, 0) = sets[s][1];
      corr(1, 2) = corr(2, 1) = sets[s][2];
      const CovarianceMatrix cov =
          CovarianceMatrix::from(covariance_from_correlations(sd, corr));
      for (int j = 0; j < 3; ++j) {
        const GsiReport r =
            gsi_gaussian_analytic(Eigen::VectorXd::Zero(3), cov, j);
        out << "S" << (s + 1) << "," << fmt17(sets[s][0]) << ","
            << fmt17(sets[s][1]) << "," << fmt17(sets[s][2]) << "," << (j + 1)
            << "," << fmt17(r.tot_trace) << "," << fmt17(r.tot_frob) << "\n";
      }
    }
    return 0;
  }
  if (target == "trapezoid") {
    const double grid[9] = {0.0001, 0.125, 0.250, 0.375, 0.500,
                            0.625,  0.750, 0.875, 1.0};
    out << "# target=trapezoid\n";
    out << "# seed=" << seed << "\n";
    out << "beta,model,first_order,total\n";
    for (double beta : grid) {
      for (int which = 0; which < 2; ++which) {
        const GsiReport r = gsi_trapezoid_analytic(
            beta, which == 0 ? TrapezoidModel::r1 : TrapezoidModel::r2);
        out << fmt17(beta) << "," << (which == 0 ? "r1" : "r2") << ","
            << fmt17(r.fo_frob) << "," << fmt17(r.tot_frob) << "\n";
      }
    }
    return 0;
  }
  throw InvalidParams("unknown reproduce target '" + target + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dependency models: sampling and sensitivity-based selection"};
  app.require_subcommand(1);

  std::string spec_path, out_path, method = "analytic", format = "csv";
  std::string target;
  long n = 65536;
  std::uint64_t seed = 0;

  auto add_seed = [&](CLI::App* cmd) { return cmd->add_option("--seed", seed); };

  auto* sample = app.add_subcommand("sample", "Draw rows from a model spec");
  sample->add_option("--spec", spec_path)->required();
  sample->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  auto* sample_seed = add_seed(sample);
  sample->add_option("--out", out_path)->required();

  auto* gsi = app.add_subcommand("gsi", "Sensitivity indices per pivot");
  gsi->add_option("--spec", spec_path)->required();
  gsi->add_option("--method", method)
      ->check(CLI::IsMember({"analytic", "pick_freeze"}));
  gsi->add_option("--n", n)->check(CLI::PositiveNumber);
  auto* gsi_seed = add_seed(gsi);
  gsi->add_option("--out", out_path);
  gsi->add_option("--format", format)->check(CLI::IsMember({"csv", "kv"}));

  auto* select = app.add_subcommand("select", "Pick the efficient model");
  select->add_option("--spec", spec_path)->required();
  select->add_option("--method", method)
      ->check(CLI::IsMember({"analytic", "pick_freeze"}));
  select->add_option("--n", n)->check(CLI::PositiveNumber);
  auto* select_seed = add_seed(select);

  auto* reproduce =
      app.add_subcommand("reproduce", "Reference tables for the test cases");
  reproduce->add_option("--target", target)
      ->required()
      ->check(CLI::IsMember({"gaussian_d3", "trapezoid"}));
  reproduce->add_option("--out", out_path)->required();
  add_seed(reproduce);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed())
      return cmd_sample(spec_path, n, seed, sample_seed->count() > 0,
                        out_path);
    if (gsi->parsed())
      return cmd_gsi(spec_path, method, n, seed, gsi_seed->count() > 0,
                     out_path, format);
    if (select->parsed())
      return cmd_select(spec_path, method, n, seed, select_seed->count() > 0);
    if (reproduce->parsed()) return cmd_reproduce(target, out_path, seed);
  } catch (const depmod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
