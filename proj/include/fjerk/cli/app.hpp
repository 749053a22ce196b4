#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fjerk/chaos/sweep.hpp"
#include "fjerk/io/svg.hpp"

namespace fjerk::cli {

/// Everything a subcommand needs, after flags and config file are merged.
struct RunConfig {
  JerkParams params;
  OrderSpec orders = OrderSpec::commensurate(1.0);
  Branch branch = Branch::Plus;
  solver::SolveConfig solve;
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::size_t n_points = 1;
  bool lyapunov = false;
  std::size_t renorm_every = chaos::kDefaultRenormEvery;
  double transient = chaos::kDefaultTransient;
  io::Plane plane = io::Plane::XY;
  std::filesystem::path out_dir;
  bool csv = true;
  bool svg = true;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` includes the program name. A
/// `--config FILE` argument supplies `key = value` defaults for flags that
/// are absent from the command line.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fjerk::cli
