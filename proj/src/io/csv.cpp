#include "fjerk/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fjerk::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const solver::Trajectory& traj) {
  std::string out = "t,x,y,z\n";
  out.reserve(traj.t.size() * 80);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out += format_double(traj.t[i]);
    for (double v : traj.states[i]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string hopf_csv(const std::vector<HopfRow>& rows) {
  std::string out = "branch,alpha_or_orders,gamma_H,epsilon_H,residual_re,residual_im\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.branch)) + ',' + r.orders_label + ',' +
           format_double(r.solution.gamma_H) + ',' + format_double(r.solution.epsilon_H) + ',' +
           format_double(r.solution.residual_re) + ',' + format_double(r.solution.residual_im) + '\n';
  }
  return out;
}

std::string sweep_csv(const chaos::SweepResult& sweep) {
  std::string out = "epsilon,kind,x_value\n";
  for (const auto& pt : sweep.points) {
    const std::string eps = format_double(pt.epsilon);
    if (pt.divergent) {
      out += eps + ",divergent,\n";
      continue;
    }
    for (double v : pt.extrema.maxima) out += eps + ",max," + format_double(v) + '\n';
    for (double v : pt.extrema.minima) out += eps + ",min," + format_double(v) + '\n';
  }
  return out;
}

std::string lyapunov_csv(const chaos::SweepResult& sweep) {
  std::string out = "epsilon,lambda1,lambda2,lambda3,converged\n";
  for (const auto& pt : sweep.points) {
    out += format_double(pt.epsilon);
    if (pt.spectrum) {
      for (double v : pt.spectrum->exponents) out += ',' + format_double(v);
      out += pt.spectrum->converged ? ",1\n" : ",0\n";
    } else {
      out += ",,,,0\n";
    }
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (first) {
      table.header = split_line(line);
      first = false;
    } else if (!line.empty()) {
      table.rows.push_back(split_line(line));
    }
  }
  return table;
}

solver::Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  const CsvTable table = parse_csv(read_text(path));
  if (table.header != std::vector<std::string>{"t", "x", "y", "z"}) {
    throw IoError(path.string() + ": not a trajectory CSV");
  }
  solver::Trajectory traj{{}, {}, {}, OrderSpec::commensurate(1.0)};
  for (const auto& row : table.rows) {
    if (row.size() != 4) throw IoError(path.string() + ": malformed row");
    traj.t.push_back(std::stod(row[0]));
    traj.states.push_back({std::stod(row[1]), std::stod(row[2]), std::stod(row[3])});
  }
  return traj;
}

}  // namespace fjerk::io
