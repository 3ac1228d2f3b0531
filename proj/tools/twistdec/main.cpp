#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "twistdec/runner.hpp"

using twistdec::app::RunSpec;

int main(int argc, char** argv) {
  CLI::App app{"Decompositions and twisted-pair checks for contractions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunSpec spec;
  app.add_option("--tol", spec.tol.residual_tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", spec.tol.rank_tol, "Relative singular-value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--depth", spec.depth, "Iteration / dilation depth (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--n-max", spec.n_max, "Largest power used by class diagnostics")->check(CLI::PositiveNumber);
  app.add_option("--seed", spec.seed, "Seed for randomized probes and sweeps");
  app.add_option("--out", spec.out, "Write the report here instead of stdout");
  app.add_option("--format", spec.format, "Report format")->check(CLI::IsMember({"json", "text"}));

  auto* classify = app.add_subcommand("classify", "Species and C_ab class of each operator");
  classify->add_option("spec", spec.spec_path, "Operator spec file")->required()->check(CLI::ExistingFile);

  auto* decompose = app.add_subcommand("decompose", "Run a decomposition");
  decompose->add_option("--kind", spec.kind, "Decomposition")
      ->required()
      ->check(CLI::IsMember({"canonical", "wold", "halmos-wallen", "grid", "mixed-grid", "canonical-grid"}));
  decompose->add_option("--grid-mode", spec.grid_mode, "canonical-grid hypothesis")
      ->check(CLI::IsMember({"doubly-twisted", "c00"}));
  decompose->add_option("spec", spec.spec_path, "Operator spec file")->required()->check(CLI::ExistingFile);

  auto* pair = app.add_subcommand("pair", "Twisted-pair relations");
  pair->require_subcommand(1);
  auto* verify = pair->add_subcommand("verify", "Check T1T2 = U T2T1 and the adjoint relation");
  verify->add_option("spec", spec.spec_path, "Pair spec file")->required()->check(CLI::ExistingFile);

  auto* dilate = app.add_subcommand("dilate", "Truncated minimal isometric dilation and twisted extension");
  dilate->add_option("spec", spec.spec_path, "Operator or pair spec file")->required()->check(CLI::ExistingFile);

  auto* wandering = app.add_subcommand("wandering", "Wandering-subspace identities for twisted isometries");
  wandering->add_option("spec", spec.spec_path, "Pair spec file")->required()->check(CLI::ExistingFile);

  app.add_subcommand("suite", "Seeded property battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : twistdec::app::kUsage;
  }

  spec.command = app.get_subcommands().front()->get_name();
  if (const char* env = std::getenv("TWISTDEC_SEED")) {
    try {
      spec.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "TWISTDEC_SEED is not an unsigned integer: " << env << "\n";
      return twistdec::app::kUsage;
    }
  }

  const twistdec::app::RunResult r = twistdec::app::run(spec);
  const std::string body = spec.format == "text" ? twistdec::app::render_text(r.report) : r.report.dump(2) + "\n";
  if (spec.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(spec.out);
    if (!out) {
      std::cerr << "cannot write " << spec.out << "\n";
      return twistdec::app::kUsage;
    }
    out << body;
    std::cerr << "status: " << r.report["outcome"]["status"].get<std::string>()
              << " (exit " << r.exit_code << ")\n";
  }
  return r.exit_code;
}
