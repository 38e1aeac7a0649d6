#include "eslqr/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace eslqr {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit: cannot open " + path + " for writing");
  }
  return out;
}

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

// Minimal static line chart. No external tooling: a fixed canvas, linear
// axes with a handful of ticks, one polyline per series.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool equal_aspect) {
  constexpr double kWidth = 800.0, kHeight = 600.0, kMargin = 70.0;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  auto widen = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double pad = span > 0.0 ? 0.05 * span : 0.5;
    lo -= pad;
    hi += pad;
  };
  widen(x_min, x_max);
  widen(y_min, y_max);
  if (equal_aspect) {
    const double plot_w = kWidth - 2.0 * kMargin;
    const double plot_h = kHeight - 2.0 * kMargin;
    const double scale = std::max((x_max - x_min) / plot_w, (y_max - y_min) / plot_h);
    const double cx = 0.5 * (x_min + x_max), cy = 0.5 * (y_min + y_max);
    x_min = cx - 0.5 * scale * plot_w;
    x_max = cx + 0.5 * scale * plot_w;
    y_min = cy - 0.5 * scale * plot_h;
    y_max = cy + 0.5 * scale * plot_h;
  }

  auto px = [&](double x) {
    return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2.0 * kMargin);
  };
  auto py = [&](double y) {
    return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2.0 * kMargin);
  };
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  auto tick_label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return std::string(buf);
  };

  std::ofstream out = open_or_throw(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2.0
      << "\" y=\"30\" text-anchor=\"middle\" font-size=\"18\" "
         "font-family=\"sans-serif\">"
      << title << "</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2.0 * kMargin << "\" height=\"" << kHeight - 2.0 * kMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    out << "<line x1=\"" << coord(px(fx)) << "\" y1=\"" << kHeight - kMargin
        << "\" x2=\"" << coord(px(fx)) << "\" y2=\"" << kHeight - kMargin + 6
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << coord(px(fx)) << "\" y=\"" << kHeight - kMargin + 22
        << "\" text-anchor=\"middle\" font-size=\"12\" "
           "font-family=\"sans-serif\">"
        << tick_label(fx) << "</text>\n";
    out << "<line x1=\"" << kMargin - 6 << "\" y1=\"" << coord(py(fy)) << "\" x2=\""
        << kMargin << "\" y2=\"" << coord(py(fy)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin - 10 << "\" y=\"" << coord(py(fy) + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
        << tick_label(fy) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2.0 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\" "
         "font-family=\"sans-serif\">"
      << x_label << "</text>\n";
  out << "<text x=\"20\" y=\"" << kHeight / 2.0
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 20 "
      << kHeight / 2.0 << ")\">" << y_label << "</text>\n";

  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      out << coord(px(x)) << "," << coord(py(y)) << " ";
    }
    out << "\"/>\n";
  }

  // Legend.
  double ly = kMargin + 18.0;
  for (const Series& s : series) {
    out << "<line x1=\"" << kWidth - kMargin - 150 << "\" y1=\"" << ly - 4
        << "\" x2=\"" << kWidth - kMargin - 120 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 112 << "\" y=\"" << ly
        << "\" font-size=\"13\" font-family=\"sans-serif\">" << s.label
        << "</text>\n";
    ly += 20.0;
  }
  out << "</svg>\n";
}

}  // namespace

void write_csv(const SimLog& log, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "t,px,py,pz,qw,qx,qy,qz,vx,vy,vz,wx,wy,wz,"
         "npx,npy,npz,nqw,nqx,nqy,nqz,nvx,nvy,nvz,"
         "dpx,dpy,dpz,dthetax,dthetay,dthetaz,dvx,dvy,dvz,"
         "thrust_cmd,wcmdx,wcmdy,wcmdz,taux,tauy,tauz,"
         "dp_norm,care_residual,saturated\r\n";
  for (const SimRow& r : log.rows) {
    const double cols[] = {
        r.t,
        r.state.p.x(), r.state.p.y(), r.state.p.z(),
        r.state.q.w, r.state.q.x, r.state.q.y, r.state.q.z,
        r.state.v.x(), r.state.v.y(), r.state.v.z(),
        r.state.omega.x(), r.state.omega.y(), r.state.omega.z(),
        r.nominal.p.x(), r.nominal.p.y(), r.nominal.p.z(),
        r.nominal.q.w, r.nominal.q.x, r.nominal.q.y, r.nominal.q.z,
        r.nominal.v.x(), r.nominal.v.y(), r.nominal.v.z(),
        r.error.dp.x(), r.error.dp.y(), r.error.dp.z(),
        r.error.dtheta.x(), r.error.dtheta.y(), r.error.dtheta.z(),
        r.error.dv.x(), r.error.dv.y(), r.error.dv.z(),
        r.thrust_cmd,
        r.omega_cmd.x(), r.omega_cmd.y(), r.omega_cmd.z(),
        r.torque.x(), r.torque.y(), r.torque.z(),
        r.dp_norm,
        r.care_residual,
    };
    for (double c : cols) {
      out << fmt(c) << ",";
    }
    out << (r.thrust_saturated ? 1 : 0) << "\r\n";
  }
}

void write_summary(const SimLog& log, const TrackingMetrics& metrics,
                   const std::string& scenario, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "scenario: " << scenario << "\n";
  out << "completed: " << (log.completed ? "yes" : "no") << "\n";
  if (!log.completed) {
    out << "failure_reason: " << log.failure_reason << "\n";
  }
  out << "rows: " << log.rows.size() << "\n";
  if (!log.rows.empty()) {
    out << "end_time_s: " << fmt(log.rows.back().t) << "\n";
  }
  out << "rmse_position_m: " << fmt(metrics.rmse_position) << "\n";
  out << "max_position_error_m: " << fmt(metrics.max_position_error) << "\n";
  if (metrics.settling_time.has_value()) {
    out << "settling_time_s: " << fmt(*metrics.settling_time) << "\n";
  } else {
    out << "settling_time_s: not_reached\n";
  }
  out << "final_attitude_error_rad: " << fmt(metrics.final_attitude_error) << "\n";
  out << "max_care_residual: " << fmt(log.max_care_residual) << "\n";
  out << "max_quat_norm_error: " << fmt(log.max_quat_norm_error) << "\n";
  out << "final_closed_loop_abscissa: " << fmt(log.final_closed_loop_abscissa) << "\n";
  out << "final_spectral_abscissa_a: " << fmt(log.final_spectral_abscissa_a) << "\n";
  out << "thrust_saturation_count: " << log.saturation_count << "\n";
}

void write_traj_xy_svg(const SimLog& log, const std::string& path) {
  Series nominal{"nominal", "#1f77b4", {}};
  Series actual{"true", "#d62728", {}};
  for (const SimRow& r : log.rows) {
    nominal.points.emplace_back(r.nominal.p.x(), r.nominal.p.y());
    actual.points.emplace_back(r.state.p.x(), r.state.p.y());
  }
  write_line_chart(path, "Horizontal path", "x [m]", "y [m]", {nominal, actual},
                   /*equal_aspect=*/true);
}

void write_error_norm_svg(const SimLog& log, const std::string& path) {
  Series dp{"||dp|| [m]", "#d62728", {}};
  Series dtheta{"||dtheta|| [rad]", "#1f77b4", {}};
  for (const SimRow& r : log.rows) {
    dp.points.emplace_back(r.t, r.dp_norm);
    dtheta.points.emplace_back(r.t, r.error.dtheta.norm());
  }
  write_line_chart(path, "Tracking error", "t [s]", "error", {dp, dtheta},
                   /*equal_aspect=*/false);
}

}  // namespace eslqr
