#include "fjerk/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fjerk::io {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  AxisMap x;
  AxisMap y;
};

Frame make_frame(double x_lo, double x_hi, double y_lo, double y_hi) {
  return {AxisMap(x_lo, x_hi, kLeft, kWidth - kRight),
          AxisMap(y_lo, y_hi, kHeight - kBottom, kTop)};
}

std::string header(const std::string& title) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         "<text x=\"" + num(kWidth / 2) + "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title) + "</text>\n";
}

std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label) {
  std::string out = "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  out += "<path d=\"M" + num(kLeft) + " " + num(kTop) + " V" + num(kHeight - kBottom) + " H" +
         num(kWidth - kRight) + "\"/>\n</g>\n<g class=\"ticks\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x.lo() + (f.x.hi() - f.x.lo()) * i / 4.0;
    const double yv = f.y.lo() + (f.y.hi() - f.y.lo()) * i / 4.0;
    out += "<text x=\"" + num(f.x(xv)) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\">" + tick(xv) + "</text>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(f.y(yv) + 4) +
           "\" text-anchor=\"end\">" + tick(yv) + "</text>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         num((kTop + kHeight - kBottom) / 2) + ")\">" + escape(y_label) + "</text>\n";
  return out;
}

std::string params_title(const char* what, const JerkParams& p, const OrderSpec& orders) {
  return std::string(what) + ": a=" + tick(p.a) + ", b=" + tick(p.b) + ", orders " + orders.label();
}

void extend(double v, double& lo, double& hi) {
  lo = std::min(lo, v);
  hi = std::max(hi, v);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

AxisMap::AxisMap(double lo, double hi, double px_lo, double px_hi) {
  if (!(hi > lo)) {
    const double pad = std::max(0.5, std::abs(lo) * 0.05);
    lo -= pad;
    hi += pad;
  }
  lo_ = lo;
  hi_ = hi;
  px_lo_ = px_lo;
  scale_ = (px_hi - px_lo) / (hi - lo);
}

Plane parse_plane(const std::string& s) {
  if (s == "xy") return Plane::XY;
  if (s == "xz") return Plane::XZ;
  if (s == "yz") return Plane::YZ;
  throw std::invalid_argument("plane must be xy, xz or yz, got '" + s + "'");
}

std::string to_string(Plane p) {
  switch (p) {
    case Plane::XY: return "xy";
    case Plane::XZ: return "xz";
    case Plane::YZ: return "yz";
  }
  return "?";
}

std::string bifurcation_svg(const chaos::SweepResult& sweep, double transient) {
  double e_lo = kInf, e_hi = -kInf, x_lo = kInf, x_hi = -kInf;
  for (const auto& pt : sweep.points) {
    if (pt.divergent) continue;
    extend(pt.epsilon, e_lo, e_hi);
    for (const auto* list : {&pt.extrema.maxima, &pt.extrema.minima}) {
      for (double v : *list) extend(v, x_lo, x_hi);
    }
  }
  if (!(e_lo <= e_hi)) throw std::invalid_argument("bifurcation dataset has no finite points");
  if (!(x_lo <= x_hi)) x_lo = x_hi = 0.0;
  const Frame f = make_frame(e_lo, e_hi, x_lo, x_hi);
  std::string out = header(params_title("Bifurcation", sweep.params, sweep.orders) +
                           ", transient " + tick(transient));
  out += axes(f, "epsilon", "local extrema of x");
  out += "<g class=\"markers\" fill=\"navy\" stroke=\"none\">\n";
  for (const auto& pt : sweep.points) {
    if (pt.divergent) continue;
    const std::string cx = num(f.x(pt.epsilon));
    for (const auto* list : {&pt.extrema.maxima, &pt.extrema.minima}) {
      for (double v : *list) out += "<circle cx=\"" + cx + "\" cy=\"" + num(f.y(v)) + "\" r=\"0.8\"/>\n";
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string lyapunov_svg(const chaos::SweepResult& sweep) {
  double e_lo = kInf, e_hi = -kInf, l_lo = 0.0, l_hi = 0.0;
  for (const auto& pt : sweep.points) {
    if (!pt.spectrum) continue;
    extend(pt.epsilon, e_lo, e_hi);
    for (double v : pt.spectrum->exponents) extend(v, l_lo, l_hi);
  }
  if (!(e_lo <= e_hi)) throw std::invalid_argument("Lyapunov dataset has no spectra");
  const Frame f = make_frame(e_lo, e_hi, l_lo, l_hi);
  std::string out = header(params_title("Lyapunov exponents", sweep.params, sweep.orders));
  out += axes(f, "epsilon", "lambda");
  out += "<line class=\"zero\" x1=\"" + num(kLeft) + "\" y1=\"" + num(f.y(0.0)) + "\" x2=\"" +
         num(kWidth - kRight) + "\" y2=\"" + num(f.y(0.0)) +
         "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  const char* colours[3] = {"crimson", "seagreen", "royalblue"};
  for (std::size_t c = 0; c < 3; ++c) {
    out += "<polyline class=\"lambda" + std::to_string(c + 1) + "\" fill=\"none\" stroke=\"" +
           colours[c] + "\" points=\"";
    bool first = true;
    for (const auto& pt : sweep.points) {
      if (!pt.spectrum) continue;
      if (!first) out += ' ';
      out += num(f.x(pt.epsilon)) + "," + num(f.y(pt.spectrum->exponents[c]));
      first = false;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string portrait_svg(const solver::Trajectory& traj, const JerkParams& params, Plane plane,
                         double transient, std::size_t max_points) {
  const std::size_t n = traj.states.size();
  if (n == 0) throw std::invalid_argument("empty trajectory");
  const auto first = static_cast<std::size_t>(std::ceil(transient * static_cast<double>(n - 1)));
  const std::size_t ia = plane == Plane::YZ ? 1 : 0;
  const std::size_t ib = plane == Plane::XY ? 1 : 2;
  const std::size_t count = n - first;
  const std::size_t stride = std::max<std::size_t>(1, (count + max_points - 1) / std::max<std::size_t>(1, max_points));

  double a_lo = kInf, a_hi = -kInf, b_lo = kInf, b_hi = -kInf;
  for (std::size_t i = first; i < n; ++i) {
    extend(traj.states[i][ia], a_lo, a_hi);
    extend(traj.states[i][ib], b_lo, b_hi);
  }
  const Frame f = make_frame(a_lo, a_hi, b_lo, b_hi);
  const char* names = "xyz";
  std::string out = header(params_title("Phase portrait", params, traj.orders) + ", eps=" +
                           tick(params.epsilon) + ", t_end=" + tick(traj.config.t_end));
  out += axes(f, std::string(1, names[ia]), std::string(1, names[ib]));
  out += "<polyline class=\"orbit\" fill=\"none\" stroke=\"black\" stroke-width=\"0.4\" points=\"";
  for (std::size_t i = first; i < n; i += stride) {
    if (i != first) out += ' ';
    out += num(f.x(traj.states[i][ia])) + "," + num(f.y(traj.states[i][ib]));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace fjerk::io
