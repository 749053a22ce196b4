#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "fjerk/chaos/sweep.hpp"
#include "fjerk/solver/integrator.hpp"
#include "fjerk/stability/commensurate.hpp"

namespace fjerk::io {

/// File-system failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to read back the same double.
std::string format_double(double v);

/// Header `t,x,y,z` plus one row per sample.
std::string trajectory_csv(const solver::Trajectory& traj);

struct HopfRow {
  Branch branch = Branch::Plus;
  std::string orders_label;
  stability::HopfSolution solution;
};
/// Header `branch,alpha_or_orders,gamma_H,epsilon_H,residual_re,residual_im`.
std::string hopf_csv(const std::vector<HopfRow>& rows);

/// Header `epsilon,kind,x_value`; per epsilon the maxima, then the minima, in
/// time order. A divergent point gives one `divergent` row with an empty
/// x_value.
std::string sweep_csv(const chaos::SweepResult& sweep);

/// Header `epsilon,lambda1,lambda2,lambda3,converged`; points without a
/// spectrum leave the exponents empty and converged = 0.
std::string lyapunov_csv(const chaos::SweepResult& sweep);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

/// Reads a trajectory CSV back; only t and the states are filled in.
solver::Trajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace fjerk::io
