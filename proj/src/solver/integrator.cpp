#include "fjerk/solver/integrator.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "fjerk/core/errors.hpp"
#include "fjerk/solver/abm_weights.hpp"

namespace fjerk::solver {

void SolveConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size h must be positive");
  if (!(t_end >= h) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be at least h");
  if (memory.window && !(*memory.window >= 10.0 * h)) {
    throw std::invalid_argument("short-memory window must be at least 10 h");
  }
  for (double v : initial_state) {
    if (!std::isfinite(v)) throw std::invalid_argument("initial state must be finite");
  }
}

std::size_t SolveConfig::steps() const { return static_cast<std::size_t>(std::llround(t_end / h)); }

std::size_t SolveConfig::memory_steps() const {
  const std::size_t n = steps();
  if (memory.is_full()) return n;
  const auto w = static_cast<std::size_t>(std::llround(*memory.window / h));
  return w < n ? w : n;
}

System jerk_system(const JerkParams& params) {
  return {[params](const Vec3& s) { return vector_field(params, s); },
          [params](const Vec3& s) { return jacobian(params, s); }};
}

namespace {

struct Sums {
  double predictor;
  double corrector;
};

// Length of the coarse blocks that stand in for history older than the
// short-memory window.
constexpr std::size_t kBlock = 32;

// Prefix sums of the weight tables, S[k] = sum_{i<k} w_i and
// I[k] = sum_{i<k} i w_i, used to weight whole blocks at once.
struct WeightPrefix {
  std::vector<double> sp, ip, sw, iw;

  explicit WeightPrefix(const AbmWeights& w) {
    const std::size_t len = w.corrector.size();
    sp.resize(len + 1);
    ip.resize(len + 1);
    sw.resize(len + 1);
    iw.resize(len + 1);
    long double a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < len; ++i) {
      sp[i] = static_cast<double>(a);
      ip[i] = static_cast<double>(b);
      sw[i] = static_cast<double>(c);
      iw[i] = static_cast<double>(d);
      a += w.predictor[i];
      b += static_cast<long double>(i) * w.predictor[i];
      c += w.corrector[i];
      d += static_cast<long double>(i) * w.corrector[i];
    }
    sp[len] = static_cast<double>(a);
    ip[len] = static_cast<double>(b);
    sw[len] = static_cast<double>(c);
    iw[len] = static_cast<double>(d);
  }
};

// One scalar right-hand-side history plus, for short memory, the mean and
// least-squares slope of every completed block [1 + kB, 1 + (k+1)B).
struct Channel {
  std::vector<double> f;
  std::vector<double> mean;
  std::vector<double> slope;

  void close_block() {
    const std::size_t a = 1 + mean.size() * kBlock;
    const double centre = static_cast<double>(kBlock - 1) / 2.0;
    double s = 0.0;
    double m = 0.0;
    for (std::size_t l = 0; l < kBlock; ++l) {
      m += f[a + l];
      s += (static_cast<double>(l) - centre) * f[a + l];
    }
    const double b = static_cast<double>(kBlock);
    mean.push_back(m / b);
    slope.push_back(s * 12.0 / (b * (b * b - 1.0)));
  }
};

// History part of one ABM step from n to n+1 for one channel. Points
// [jb, n] and j = 0 enter exactly; for short memory the `far` completed
// blocks below jb enter through their mean and slope. Fixed 4-lane
// accumulation keeps the result bitwise reproducible.
Sums convolve(const Channel& ch, const AbmWeights& w, const WeightPrefix* pre, std::size_t n,
              std::size_t far) {
  const double* f = ch.f.data();
  const double* P = w.predictor.data();
  const double* W = w.corrector.data();
  const std::size_t jb = 1 + far * kBlock;

  double p[4] = {P[n] * f[0], 0.0, 0.0, 0.0};
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  const double start = w.corrector_start[n] * f[0];

  std::size_t j = jb;
  for (; j + 3 <= n; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t k = n - (j + l);
      p[l] += P[k] * f[j + l];
      c[l] += W[k] * f[j + l];
    }
  }
  for (; j <= n; ++j) {
    const std::size_t k = n - j;
    p[0] += P[k] * f[j];
    c[0] += W[k] * f[j];
  }
  double pf = 0.0;
  double cf = 0.0;
  for (std::size_t b = 0; b < far; ++b) {
    const std::size_t a = 1 + b * kBlock;
    const std::size_t hi = n - a + 1;
    const std::size_t lo = hi - kBlock;
    const double offset = static_cast<double>(n) - (static_cast<double>(a) +
                                                    static_cast<double>(kBlock - 1) / 2.0);
    const double sp = pre->sp[hi] - pre->sp[lo];
    const double sw = pre->sw[hi] - pre->sw[lo];
    const double mp = offset * sp - (pre->ip[hi] - pre->ip[lo]);
    const double mw = offset * sw - (pre->iw[hi] - pre->iw[lo]);
    pf += sp * ch.mean[b] + mp * ch.slope[b];
    cf += sw * ch.mean[b] + mw * ch.slope[b];
  }
  return {(p[0] + p[1]) + (p[2] + p[3]) + pf, start + ((c[0] + c[1]) + (c[2] + c[3])) + cf};
}

bool finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

[[noreturn]] void diverged(double t) {
  std::ostringstream os;
  os.precision(6);
  os << "state became non-finite at t = " << t;
  throw DivergenceError(t, os.str());
}

// Weight tables per equation; equations with equal orders share one table.
std::array<std::shared_ptr<const AbmWeights>, 3> build_weights(const OrderSpec& orders,
                                                               std::size_t n, double h) {
  const auto alphas = orders.alphas();
  std::array<std::shared_ptr<const AbmWeights>, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (alphas[k] == alphas[i]) out[i] = out[k];
    }
    if (!out[i]) out[i] = std::make_shared<const AbmWeights>(abm_weights(alphas[i], n, h));
  }
  return out;
}

// Modified Gram-Schmidt on the columns of V, done twice for stability.
// Returns Q (orthonormal columns) and the upper-triangular R with V = Q R.
void gram_schmidt(const Mat3& V, Mat3& Q, Mat3& R) {
  Q = V;
  R = {};
  for (std::size_t c = 0; c < 3; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 3; ++i) dot += Q[i][k] * Q[i][c];
        R[k][c] += dot;
        for (std::size_t i = 0; i < 3; ++i) Q[i][c] -= dot * Q[i][k];
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < 3; ++i) norm += Q[i][c] * Q[i][c];
    norm = std::sqrt(norm);
    R[c][c] = norm;
    if (norm > 0.0) {
      for (std::size_t i = 0; i < 3; ++i) Q[i][c] /= norm;
    }
  }
}

Mat3 upper_inverse(const Mat3& R) {
  Mat3 inv{};
  for (std::size_t c = 0; c < 3; ++c) {
    inv[c][c] = 1.0 / R[c][c];
    for (std::size_t r = c; r-- > 0;) {
      double s = 0.0;
      for (std::size_t k = r + 1; k <= c; ++k) s += R[r][k] * inv[k][c];
      inv[r][c] = -s / R[r][r];
    }
  }
  return inv;
}

double orthonormality_error(const Mat3& Q) {
  double err = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < 3; ++i) dot += Q[i][a] * Q[i][b];
      err = std::max(err, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return err;
}

class Engine {
 public:
  Engine(const System& system, const OrderSpec& orders, const SolveConfig& cfg, bool tangent,
         std::size_t renorm_every)
      : system_(system),
        cfg_(cfg),
        n_steps_(cfg.steps()),
        memory_(cfg.memory_steps()),
        weights_(build_weights(orders, n_steps_, cfg.h)),
        tangent_(tangent),
        renorm_every_(renorm_every),
        traj_{{}, {}, cfg, orders} {
    if (memory_ < n_steps_) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
          if (weights_[k] == weights_[i]) prefix_[i] = prefix_[k];
        }
        if (!prefix_[i]) prefix_[i] = std::make_shared<const WeightPrefix>(*weights_[i]);
      }
    }
    traj_.t.reserve(n_steps_ + 1);
    traj_.states.reserve(n_steps_ + 1);
    for (auto& ch : state_) ch.f.reserve(n_steps_ + 1);
    if (tangent_) {
      for (auto& row : tangent_ch_) {
        for (auto& ch : row) ch.f.reserve(n_steps_ + 1);
      }
      log_.renorm_every = renorm_every_;
    }
  }

  void run() {
    Vec3 y = cfg_.initial_state;
    push_state(0, y);
    if (!finite(f_state_last())) diverged(0.0);
    if (tangent_) {
      tangent_base_ = Mat3{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
      push_tangent(y, tangent_base_);
    }

    for (std::size_t n = 0; n < n_steps_; ++n) {
      // History older than the window collapses into completed blocks.
      const std::size_t j0 = n + 1 > memory_ ? n + 1 - memory_ : 0;
      const std::size_t far = j0 > 1 ? (j0 - 1) / kBlock : 0;
      if (far > state_[0].mean.size()) close_blocks(far);
      const double t_next = static_cast<double>(n + 1) * cfg_.h;

      const Vec3& y0 = cfg_.initial_state;
      Vec3 pred{};
      Vec3 corr{};
      for (std::size_t i = 0; i < 3; ++i) {
        const Sums s = convolve(state_[i], *weights_[i], prefix_[i].get(), n, far);
        pred[i] = y0[i] + s.predictor;
        corr[i] = y0[i] + s.corrector;
      }
      const Vec3 fp = system_.rhs(pred);
      for (std::size_t i = 0; i < 3; ++i) y[i] = corr[i] + weights_[i]->corrector_self * fp[i];
      if (!finite(y)) diverged(t_next);
      push_state(n + 1, y);
      if (!finite(f_state_last())) diverged(t_next);

      if (tangent_) {
        step_tangent(n, far, y);
        if ((n + 1) % renorm_every_ == 0) renormalize(t_next);
      }
    }
  }

  Trajectory take_trajectory() { return std::move(traj_); }
  TangentLog take_log() { return std::move(log_); }

 private:
  Vec3 f_state_last() const {
    return {state_[0].f.back(), state_[1].f.back(), state_[2].f.back()};
  }

  void close_blocks(std::size_t far) {
    while (state_[0].mean.size() < far) {
      for (auto& ch : state_) ch.close_block();
      if (tangent_) {
        for (auto& row : tangent_ch_) {
          for (auto& ch : row) ch.close_block();
        }
      }
    }
  }

  void push_state(std::size_t k, const Vec3& y) {
    traj_.t.push_back(static_cast<double>(k) * cfg_.h);
    traj_.states.push_back(y);
    const Vec3 f = system_.rhs(y);
    for (std::size_t i = 0; i < 3; ++i) state_[i].f.push_back(f[i]);
  }

  void push_tangent(const Vec3& y, const Mat3& V) {
    tangent_last_ = V;
    const Mat3 J = system_.jacobian(y);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += J[i][k] * V[k][c];
        tangent_ch_[i][c].f.push_back(s);
      }
    }
  }

  // Tangent predictor from history, corrector with the Jacobian frozen at
  // the freshly corrected state.
  void step_tangent(std::size_t n, std::size_t far, const Vec3& y_next) {
    Mat3 pred{};
    Mat3 corr{};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        const Sums s = convolve(tangent_ch_[i][c], *weights_[i], prefix_[i].get(), n, far);
        pred[i][c] = tangent_base_[i][c] + s.predictor;
        corr[i][c] = tangent_base_[i][c] + s.corrector;
      }
    }
    Mat3 V{};
    const Mat3 J = system_.jacobian(y_next);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        double jp = 0.0;
        for (std::size_t k = 0; k < 3; ++k) jp += J[i][k] * pred[k][c];
        V[i][c] = corr[i][c] + weights_[i]->corrector_self * jp;
      }
    }
    push_tangent(y_next, V);
  }

  void renormalize(double t) {
    Mat3 Q;
    Mat3 R;
    gram_schmidt(tangent_last_, Q, R);
    Vec3 logs{};
    for (std::size_t c = 0; c < 3; ++c) {
      if (!(R[c][c] >= 1e-300) || !std::isfinite(R[c][c])) {
        std::ostringstream os;
        os << "tangent vector " << c << " collapsed at t = " << t;
        throw DomainError(Errc::TangentCollapse, os.str());
      }
      logs[c] = std::log(R[c][c]);
    }
    // V -> V R^{-1} is a fixed linear map of the basis, so it applies to the
    // initial value, to every stored right-hand side and to the block data.
    const Mat3 Rinv = upper_inverse(R);
    const auto transform = [&Rinv](Vec3& row) {
      Vec3 out{};
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t k = 0; k <= c; ++k) out[c] += row[k] * Rinv[k][c];
      }
      row = out;
    };
    for (auto& row : tangent_base_) transform(row);
    const auto transform_series = [&transform](std::array<Channel, 3>& row,
                                               std::vector<double> Channel::*member) {
      auto& v0 = row[0].*member;
      auto& v1 = row[1].*member;
      auto& v2 = row[2].*member;
      for (std::size_t j = 0; j < v0.size(); ++j) {
        Vec3 r{v0[j], v1[j], v2[j]};
        transform(r);
        v0[j] = r[0];
        v1[j] = r[1];
        v2[j] = r[2];
      }
    };
    for (auto& row : tangent_ch_) {
      transform_series(row, &Channel::f);
      transform_series(row, &Channel::mean);
      transform_series(row, &Channel::slope);
    }
    // The newest point is replaced by the orthonormal basis itself; its
    // stored right-hand side already follows from the transformed row.
    tangent_last_ = Q;
    log_.renorm_times.push_back(t);
    log_.log_norms.push_back(logs);
    log_.max_orthonormality_error = std::max(log_.max_orthonormality_error, orthonormality_error(Q));
  }

  const System& system_;
  SolveConfig cfg_;
  std::size_t n_steps_;
  std::size_t memory_;
  std::array<std::shared_ptr<const AbmWeights>, 3> weights_;
  std::array<std::shared_ptr<const WeightPrefix>, 3> prefix_;
  bool tangent_;
  std::size_t renorm_every_;

  Trajectory traj_;
  std::array<Channel, 3> state_;

  Mat3 tangent_base_{};
  Mat3 tangent_last_{};
  std::array<std::array<Channel, 3>, 3> tangent_ch_;
  TangentLog log_;
};

}  // namespace

Trajectory integrate(const System& system, const OrderSpec& orders, const SolveConfig& cfg) {
  cfg.validate();
  Engine engine(system, orders, cfg, false, 1);
  engine.run();
  return engine.take_trajectory();
}

Trajectory integrate(const JerkParams& params, const OrderSpec& orders, const SolveConfig& cfg) {
  return integrate(jerk_system(params), orders, cfg);
}

std::pair<Trajectory, TangentLog> integrate_with_tangent(const System& system,
                                                         const OrderSpec& orders,
                                                         const SolveConfig& cfg,
                                                         std::size_t renorm_every) {
  cfg.validate();
  if (renorm_every < 1) throw std::invalid_argument("renorm_every must be at least 1");
  if (!system.jacobian) throw std::invalid_argument("tangent propagation needs a Jacobian");
  Engine engine(system, orders, cfg, true, renorm_every);
  engine.run();
  return {engine.take_trajectory(), engine.take_log()};
}

std::pair<Trajectory, TangentLog> integrate_with_tangent(const JerkParams& params,
                                                         const OrderSpec& orders,
                                                         const SolveConfig& cfg,
                                                         std::size_t renorm_every) {
  return integrate_with_tangent(jerk_system(params), orders, cfg, renorm_every);
}

}  // namespace fjerk::solver
