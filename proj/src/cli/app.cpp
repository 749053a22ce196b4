#include "fjerk/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fjerk/core/errors.hpp"
#include "fjerk/io/config.hpp"
#include "fjerk/io/csv.hpp"
#include "fjerk/stability/commensurate.hpp"
#include "fjerk/stability/incommensurate.hpp"

namespace fjerk::cli {

namespace {

namespace fs = std::filesystem;

// Raw flag values as typed; converted once the subcommand is known.
struct RawFlags {
  double a = 0.129;
  double b = 7.0;
  std::optional<double> eps;
  std::optional<double> alpha;
  std::optional<std::string> alphas;
  std::string branch = "plus";
  double h = 0.005;
  double t_end = 300.0;
  std::string x0 = "0,0,0";
  std::optional<std::string> memory;
  double eps_min = 0.0;
  double eps_max = 0.0;
  std::size_t n = 1;
  bool lyapunov = false;
  std::size_t renorm_every = chaos::kDefaultRenormEvery;
  double transient = chaos::kDefaultTransient;
  std::string plane = "xy";
  std::optional<std::string> out;
  std::string formats = "csv,svg";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(flag) + ": '" + s + "' is not a finite number");
  }
  return v;
}

OrderSpec parse_orders(const RawFlags& f) {
  if (f.alpha && f.alphas) throw std::invalid_argument("--alpha and --alphas are exclusive");
  if (f.alpha) {
    if (!(*f.alpha > 0.0 && *f.alpha <= 1.0)) throw std::invalid_argument("--alpha must lie in (0, 1]");
    return OrderSpec::commensurate(*f.alpha);
  }
  if (!f.alphas) throw std::invalid_argument("one of --alpha or --alphas is required");
  const auto parts = split(*f.alphas, ',');
  if (parts.size() != 3) throw std::invalid_argument("--alphas needs three orders V1/U1,V2/U2,V3/U3");
  try {
    return OrderSpec::incommensurate(Rational::parse(parts[0]), Rational::parse(parts[1]),
                                     Rational::parse(parts[2]));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--alphas: ") + e.what());
  }
}

solver::MemoryPolicy parse_memory(const std::string& s) {
  if (s == "full") return solver::MemoryPolicy::full();
  if (s.rfind("short:", 0) == 0) {
    return solver::MemoryPolicy::short_memory(parse_real(s.substr(6), "--memory"));
  }
  throw std::invalid_argument("--memory must be 'full' or 'short:W', got '" + s + "'");
}

RunConfig build_config(const RawFlags& f, const std::string& command) {
  RunConfig rc;
  rc.params = {f.a, f.b, f.eps.value_or(0.0)};
  rc.orders = parse_orders(f);
  rc.branch = parse_branch(f.branch);
  rc.solve.h = f.h;
  rc.solve.t_end = f.t_end;
  const auto x0 = split(f.x0, ',');
  if (x0.size() != 3) throw std::invalid_argument("--x0 needs three comma-separated values");
  for (std::size_t i = 0; i < 3; ++i) rc.solve.initial_state[i] = parse_real(x0[i], "--x0");
  const std::string default_memory = command == "sweep" ? "short:50" : "full";
  rc.solve.memory = parse_memory(f.memory.value_or(default_memory));
  rc.solve.validate();
  rc.eps_min = f.eps_min;
  rc.eps_max = f.eps_max;
  rc.n_points = f.n;
  rc.lyapunov = f.lyapunov;
  rc.renorm_every = f.renorm_every;
  if (rc.renorm_every < 1) throw std::invalid_argument("--renorm-every must be at least 1");
  rc.transient = f.transient;
  if (!(rc.transient >= 0.0 && rc.transient < 1.0)) {
    throw std::invalid_argument("--transient must lie in [0, 1)");
  }
  rc.plane = io::parse_plane(f.plane);
  rc.csv = rc.svg = false;
  for (const auto& fmt : split(f.formats, ',')) {
    if (fmt == "csv") {
      rc.csv = true;
    } else if (fmt == "svg") {
      rc.svg = true;
    } else {
      throw std::invalid_argument("--formats accepts csv and svg, got '" + fmt + "'");
    }
  }
  if (f.out) rc.out_dir = *f.out;
  return rc;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".fjerk-write-probe";
  {
    std::ofstream os(probe);
    if (!os) throw io::IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

// Shortest text that reads back as the same double.
std::string g(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int cmd_hopf(const RunConfig& rc, std::ostream& out) {
  const stability::HopfSolution sol =
      rc.orders.is_commensurate()
          ? stability::hopf_commensurate(rc.params.a, rc.params.b, rc.orders.alphas()[0], rc.branch)
          : stability::hopf_incommensurate(rc.params.a, rc.params.b, rc.orders, rc.branch);
  out << "branch=" << to_string(rc.branch) << '\n'
      << "orders=" << rc.orders.label() << '\n'
      << "gamma_H=" << g(sol.gamma_H) << '\n'
      << "epsilon_H=" << g(sol.epsilon_H) << '\n'
      << "theta=" << g(sol.theta) << '\n'
      << "residual_re=" << g(sol.residual_re) << '\n'
      << "residual_im=" << g(sol.residual_im) << '\n';
  if (!rc.out_dir.empty()) {
    prepare_out_dir(rc.out_dir);
    io::write_text(rc.out_dir / "hopf.csv", io::hopf_csv({{rc.branch, rc.orders.label(), sol}}));
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& rc, std::ostream& out) {
  prepare_out_dir(rc.out_dir);
  const solver::Trajectory traj = solver::integrate(rc.params, rc.orders, rc.solve);
  if (rc.csv) io::write_text(rc.out_dir / "trajectory.csv", io::trajectory_csv(traj));
  if (rc.svg) {
    io::write_text(rc.out_dir / "portrait.svg",
                   io::portrait_svg(traj, rc.params, rc.plane, rc.transient));
  }
  const auto [lo, hi] = std::minmax_element(
      traj.states.begin(), traj.states.end(),
      [](const Vec3& p, const Vec3& q) { return p[0] < q[0]; });
  out << "simulate: " << traj.t.size() << " samples to t=" << g(traj.t.back()) << ", x in ["
      << g((*lo)[0]) << ", " << g((*hi)[0]) << "], output in " << rc.out_dir.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  prepare_out_dir(rc.out_dir);
  chaos::SweepOptions opt;
  opt.with_lyapunov = rc.lyapunov;
  opt.renorm_every = rc.renorm_every;
  opt.transient = rc.transient;
  const chaos::SweepResult res = chaos::sweep_bifurcation(rc.params, rc.orders, rc.eps_min,
                                                          rc.eps_max, rc.n_points, rc.solve, opt);
  if (rc.csv) {
    io::write_text(rc.out_dir / "sweep.csv", io::sweep_csv(res));
    if (rc.lyapunov) io::write_text(rc.out_dir / "lyapunov.csv", io::lyapunov_csv(res));
  }
  const auto divergent = std::count_if(res.points.begin(), res.points.end(),
                                       [](const chaos::SweepPoint& p) { return p.divergent; });
  if (rc.svg && divergent < static_cast<std::ptrdiff_t>(res.points.size())) {
    io::write_text(rc.out_dir / "bifurcation.svg", io::bifurcation_svg(res, rc.transient));
    if (rc.lyapunov) io::write_text(rc.out_dir / "lyapunov.svg", io::lyapunov_svg(res));
  }
  out << "sweep: " << res.points.size() << " points over [" << g(rc.eps_min) << ", "
      << g(res.epsilon_grid.back()) << "], " << divergent << " divergent, output in "
      << rc.out_dir.string() << '\n';
  return kExitOk;
}

int cmd_lyapunov(const RunConfig& rc, std::ostream& out) {
  prepare_out_dir(rc.out_dir);
  chaos::LyapunovRun run = chaos::lyapunov_run(solver::jerk_system(rc.params), rc.orders, rc.solve,
                                               rc.renorm_every, rc.transient);
  chaos::SweepResult one;
  one.epsilon_grid = {rc.params.epsilon};
  one.params = rc.params;
  one.orders = rc.orders;
  one.config = rc.solve;
  chaos::SweepPoint pt;
  pt.epsilon = rc.params.epsilon;
  pt.extrema = chaos::extract_extrema(run.trajectory, rc.transient);
  pt.spectrum = run.spectrum;
  pt.attractor = chaos::classify_attractor(pt.extrema, pt.spectrum);
  one.points.push_back(pt);
  if (rc.csv) io::write_text(rc.out_dir / "lyapunov.csv", io::lyapunov_csv(one));
  const auto& e = run.spectrum.exponents;
  out << "lyapunov: eps=" << g(rc.params.epsilon) << " lambda=(" << g(e[0]) << ", " << g(e[1])
      << ", " << g(e[2]) << ") converged=" << (run.spectrum.converged ? "yes" : "no")
      << " attractor=" << pt.attractor.label() << '\n';
  return kExitOk;
}

int cmd_portrait(const RunConfig& rc, std::ostream& out) {
  prepare_out_dir(rc.out_dir);
  const solver::Trajectory traj = solver::integrate(rc.params, rc.orders, rc.solve);
  const fs::path svg = rc.out_dir / ("portrait_" + io::to_string(rc.plane) + ".svg");
  io::write_text(svg, io::portrait_svg(traj, rc.params, rc.plane, rc.transient));
  if (rc.csv) io::write_text(rc.out_dir / "trajectory.csv", io::trajectory_csv(traj));
  out << "portrait: plane " << io::to_string(rc.plane) << ", " << traj.t.size()
      << " samples, wrote " << svg.string() << '\n';
  return kExitOk;
}

const std::set<std::string> kBooleanKeys = {"lyapunov"};

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&flag](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Pulls `--config FILE` out of args and appends the file's entries as flags
// that the command line does not already set.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;
  for (const auto& [key, value] : io::load_config(*path)) {
    if (has_flag(args, key)) continue;
    if (kBooleanKeys.count(key)) {
      if (value == "true" || value == "1") {
        args.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw std::invalid_argument("config key '" + key + "' expects true or false");
      }
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

void add_model_flags(CLI::App* sub, RawFlags& f, bool with_eps) {
  sub->add_option("--a", f.a, "damping coefficient a")->capture_default_str();
  sub->add_option("--b", f.b, "coefficient b")->capture_default_str();
  if (with_eps) sub->add_option("--eps", f.eps, "parameter epsilon")->required();
  sub->add_option("--alpha", f.alpha, "commensurate order in (0, 1]");
  sub->add_option("--alphas", f.alphas, "orders V1/U1,V2/U2,V3/U3");
}

void add_solver_flags(CLI::App* sub, RawFlags& f) {
  sub->add_option("--h", f.h, "step size")->capture_default_str();
  sub->add_option("--t-end", f.t_end, "horizon")->capture_default_str();
  sub->add_option("--x0", f.x0, "initial state x,y,z")->capture_default_str();
  sub->add_option("--memory", f.memory, "full or short:W");
  sub->add_option("--transient", f.transient, "transient fraction")->capture_default_str();
  sub->add_option("--formats", f.formats, "csv,svg subset")->capture_default_str();
}

}  // namespace

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RawFlags f;
  CLI::App app{"Fractional-order quadratic jerk system: Hopf analysis, simulation and chaos "
               "diagnostics",
               "fjerk"};
  app.require_subcommand(1);
  // --h is the step size, so help is long-form only.
  app.set_help_flag("--help", "print help");
  app.set_help_all_flag("--help-all");

  CLI::App* hopf = app.add_subcommand("hopf", "Hopf critical point (gamma_H, epsilon_H)");
  add_model_flags(hopf, f, false);
  hopf->add_option("--branch", f.branch, "plus or minus")->required();
  hopf->add_option("--out", f.out, "directory for hopf.csv");

  CLI::App* simulate = app.add_subcommand("simulate", "integrate one trajectory");
  add_model_flags(simulate, f, true);
  add_solver_flags(simulate, f);
  simulate->add_option("--plane", f.plane, "portrait plane xy, xz or yz")->capture_default_str();
  simulate->add_option("--out", f.out, "output directory")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "bifurcation sweep over epsilon");
  add_model_flags(sweep, f, false);
  add_solver_flags(sweep, f);
  sweep->add_option("--eps-min", f.eps_min, "first epsilon")->required();
  sweep->add_option("--eps-max", f.eps_max, "last epsilon")->required();
  sweep->add_option("--n", f.n, "grid points")->required();
  sweep->add_flag("--lyapunov", f.lyapunov, "also compute Lyapunov spectra");
  sweep->add_option("--renorm-every", f.renorm_every, "steps between renormalizations")
      ->capture_default_str();
  sweep->add_option("--out", f.out, "output directory")->required();

  CLI::App* lyap = app.add_subcommand("lyapunov", "Lyapunov spectrum of one run");
  add_model_flags(lyap, f, true);
  add_solver_flags(lyap, f);
  lyap->add_option("--renorm-every", f.renorm_every, "steps between renormalizations")
      ->capture_default_str();
  lyap->add_option("--out", f.out, "output directory")->required();

  CLI::App* portrait = app.add_subcommand("portrait", "2-D phase portrait as SVG");
  add_model_flags(portrait, f, true);
  add_solver_flags(portrait, f);
  portrait->add_option("--plane", f.plane, "xy, xz or yz")->capture_default_str();
  portrait->add_option("--out", f.out, "output directory")->required();

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fjerk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "fjerk: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::IoError& e) {
    err << "fjerk: " << e.what() << '\n';
    return kExitDomain;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig rc;
  try {
    rc = build_config(f, command);
  } catch (const std::invalid_argument& e) {
    err << "fjerk " << command << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (command == "hopf") return cmd_hopf(rc, out);
    if (command == "simulate") return cmd_simulate(rc, out);
    if (command == "sweep") return cmd_sweep(rc, out);
    if (command == "lyapunov") return cmd_lyapunov(rc, out);
    return cmd_portrait(rc, out);
  } catch (const DomainError& e) {
    err << "fjerk " << command << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const io::IoError& e) {
    err << "fjerk " << command << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "fjerk " << command << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fjerk::cli
