#include "eslqr/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace eslqr {

namespace {

using Vec13 = Eigen::Matrix<double, 13, 1>;

Vec13 pack(const TrueState& s) {
  Vec13 x;
  x << s.p, s.q.wxyz(), s.v, s.omega;
  return x;
}

TrueState unpack(const Vec13& x) {
  TrueState s;
  s.p = x.segment<3>(0);
  s.q = {x[3], x[4], x[5], x[6]};
  s.v = x.segment<3>(7);
  s.omega = x.segment<3>(10);
  return s;
}

Vec13 derivative(const Vec13& x, const Wrench& w, const VehicleParams& params) {
  const TrueStateDerivative d = true_derivative(unpack(x), w, params);
  Vec13 dx;
  dx << d.dp, d.dq_wxyz, d.dv, d.domega;
  return dx;
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt_inner > 0.0)) {
    throw std::invalid_argument("sim: dt_inner must be positive");
  }
  if (outer_divisor < 1) {
    throw std::invalid_argument("sim: outer_divisor must be >= 1");
  }
  if (!(duration >= dt_inner)) {
    throw std::invalid_argument("sim: duration must be at least dt_inner");
  }
  initial.validate();
}

TrueState rk4_step(const TrueState& s, const Wrench& w, const VehicleParams& params,
                   double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("rk4_step: dt must be positive");
  }
  const Vec13 x0 = pack(s);
  const Vec13 k1 = derivative(x0, w, params);
  const Vec13 k2 = derivative(x0 + 0.5 * dt * k1, w, params);
  const Vec13 k3 = derivative(x0 + 0.5 * dt * k2, w, params);
  const Vec13 k4 = derivative(x0 + dt * k3, w, params);
  Vec13 x1 = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!x1.allFinite()) {
    throw std::runtime_error("rk4_step: state diverged to non-finite values");
  }
  TrueState out = unpack(x1);
  out.q = out.q.normalized();
  return out;
}

SimLog run_closed_loop(const SimConfig& cfg, const TrajectorySampler& traj,
                       const LqrWeights& weights, const BodyrateGains& gains,
                       const VehicleParams& params, double epsilon) {
  cfg.validate();
  weights.validate();
  gains.validate();
  params.validate();

  const long n_steps = static_cast<long>(std::floor(cfg.duration / cfg.dt_inner));
  SimLog log;
  log.rows.reserve(n_steps + 1);

  TrueState state = cfg.initial;
  ErrorControl prev_du = ErrorControl::zero();
  OuterLoopOutput outer;

  for (long i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt_inner;
    const TrajectorySample sample = traj(t);

    try {
      if (i % cfg.outer_divisor == 0) {
        outer = lqr_step(state, sample, weights, params, prev_du, epsilon);
        prev_du = outer.delta_u;
      }
    } catch (const CareFailure& e) {
      log.completed = false;
      log.failure_reason = std::string("riccati failure at t=") +
                           std::to_string(t) + ": " + e.what();
      return log;
    }

    SimRow row;
    row.t = t;
    row.state = state;
    row.nominal = sample.nominal;
    row.error = compute_error(state, sample.nominal);
    row.thrust_cmd = outer.command.c;
    row.omega_cmd = outer.command.omega;
    row.torque = bodyrate_torque(outer.command.omega, state.omega, params, gains);
    row.dp_norm = row.error.dp.norm();
    row.care_residual = outer.gain.residual;
    row.thrust_saturated = outer.thrust_saturated;
    log.rows.push_back(row);

    log.max_care_residual = std::max(log.max_care_residual, row.care_residual);
    log.max_quat_norm_error =
        std::max(log.max_quat_norm_error, std::abs(state.q.norm() - 1.0));
    if (row.thrust_saturated && i % cfg.outer_divisor == 0) {
      ++log.saturation_count;
    }

    if (i < n_steps) {
      try {
        state = rk4_step(state, Wrench{row.thrust_cmd, row.torque}, params,
                         cfg.dt_inner);
      } catch (const std::runtime_error& e) {
        log.completed = false;
        log.failure_reason = std::string("integration failure at t=") +
                             std::to_string(t) + ": " + e.what();
        return log;
      }
    }
  }

  log.final_closed_loop_abscissa = outer.gain.closed_loop_abscissa;
  log.final_spectral_abscissa_a = outer.gain.spectral_abscissa_a;
  return log;
}

TrackingMetrics compute_metrics(const SimLog& log, double settle_threshold,
                                double window_start) {
  if (log.rows.empty()) {
    throw std::invalid_argument("compute_metrics: empty log");
  }
  const double t_end = log.rows.back().t;
  if (window_start > t_end) {
    throw std::invalid_argument("compute_metrics: window starts past the log end");
  }

  TrackingMetrics m;
  double sum_sq = 0.0;
  long count = 0;
  for (const SimRow& row : log.rows) {
    m.max_position_error = std::max(m.max_position_error, row.dp_norm);
    if (row.t >= window_start) {
      sum_sq += row.dp_norm * row.dp_norm;
      ++count;
    }
  }
  m.rmse_position = std::sqrt(sum_sq / static_cast<double>(count));
  m.final_attitude_error = log.rows.back().error.dtheta.norm();

  // First time ||dp|| drops below the threshold and stays there.
  long last_above = -1;
  for (long i = 0; i < static_cast<long>(log.rows.size()); ++i) {
    if (log.rows[i].dp_norm >= settle_threshold) {
      last_above = i;
    }
  }
  if (last_above < 0) {
    m.settling_time = log.rows.front().t;
  } else if (last_above + 1 < static_cast<long>(log.rows.size())) {
    m.settling_time = log.rows[last_above + 1].t;
  }
  return m;
}

}  // namespace eslqr
