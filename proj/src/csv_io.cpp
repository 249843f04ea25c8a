#include "sdcm/csv_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace sdcm {

const char* const kTrajectoryCsvHeader =
    "t,x_x,x_y,x_z,xd_x,xd_y,xd_z,theta,thetad,"
    "xil_x,xil_y,xil_z,xia,"
    "xil_d_x,xil_d_y,xil_d_z,xild_d_x,xild_d_y,xild_d_z,xia_d,xiad_d,"
    "fext_x,fext_y,fext_z,tau_ext,"
    "recmp_x,recmp_y,recmp_z,rvrp_x,rvrp_y,rvrp_z,phi_vro,r_cop";

namespace {

void append_num(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_row(std::string& out, const LogRow& r) {
  const double values[] = {
      r.t,
      r.state.x.x(), r.state.x.y(), r.state.x.z(),
      r.state.xdot.x(), r.state.xdot.y(), r.state.xdot.z(),
      r.state.theta, r.state.thetadot,
      r.xi_l.x(), r.xi_l.y(), r.xi_l.z(), r.xi_a,
      r.xi_l_d.x(), r.xi_l_d.y(), r.xi_l_d.z(),
      r.xi_l_dot_d.x(), r.xi_l_dot_d.y(), r.xi_l_dot_d.z(),
      r.xi_a_d, r.xi_a_dot_d,
      r.wrench.f_ext.x(), r.wrench.f_ext.y(), r.wrench.f_ext.z(),
      r.wrench.tau_ext,
      r.wrench.r_ecmp.x(), r.wrench.r_ecmp.y(), r.wrench.r_ecmp.z(),
      r.wrench.r_vrp.x(), r.wrench.r_vrp.y(), r.wrench.r_vrp.z(),
      r.wrench.phi_vro, r.wrench.r_cop,
  };
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    first = false;
    append_num(out, v);
  }
  out += '\n';
}

}  // namespace

std::string trajectory_csv(const TrajectoryLog& log) {
  std::string out;
  out.reserve(log.rows.size() * 420 + 512);
  out += kTrajectoryCsvHeader;
  out += '\n';
  for (const auto& row : log.rows) append_row(out, row);
  return out;
}

std::string summary_json(const TrajectoryLog& log, const SimConfig& config) {
  using nlohmann::json;
  const RunSummary& s = log.summary;
  json doc;
  doc["scenario"] = config.scenario_id;
  doc["duration"] = s.duration;
  doc["rows"] = s.n_rows;
  doc["diverged"] = log.diverged;
  if (log.diverged) doc["message"] = log.message;
  doc["derived"] = {{"b", s.derived.b}, {"s", s.derived.s},
                    {"gamma", s.derived.gamma}};
  json eig = json::array();
  for (int i = 0; i < 8; ++i) eig.push_back(s.closed_loop_eigenvalues(i));
  doc["closed_loop_eigenvalues"] = eig;
  doc["stable"] = s.stable;
  doc["peak_abs_cop"] = s.peak_abs_cop;
  doc["peak_exact_cop"] = s.peak_exact_cop;
  doc["cop_threshold"] = config.params.r_cop_thres;
  doc["max_lin_err"] = s.max_lin_err;
  doc["max_ang_err"] = s.max_ang_err;
  doc["final_lin_err"] = s.final_lin_err;
  doc["final_ang_err"] = s.final_ang_err;
  doc["final_theta"] = s.final_theta;
  doc["settling_time_lin"] = s.settling_time_lin;
  doc["settling_time_ang"] = s.settling_time_ang;
  doc["saturated_ticks"] = s.n_saturated_ticks;
  doc["setpoint_switches"] = s.n_setpoint_switches;
  json segs = json::array();
  for (const auto& seg : s.segments) {
    segs.push_back({{"segment", seg.segment},
                    {"phi_set", seg.phi_set},
                    {"min_abs_theta_err", seg.min_abs_theta_err},
                    {"end_abs_theta_err", seg.end_abs_theta_err}});
  }
  doc["segments"] = segs;
  return doc.dump(2) + "\n";
}

std::vector<std::string> write_plot_data(const TrajectoryLog& log,
                                         const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  struct Signal {
    const char* name;
    std::function<double(const LogRow&)> get;
  };
  const Signal signals[] = {
      {"x_x", [](const LogRow& r) { return r.state.x.x(); }},
      {"x_z", [](const LogRow& r) { return r.state.x.z(); }},
      {"theta", [](const LogRow& r) { return r.state.theta; }},
      {"thetad", [](const LogRow& r) { return r.state.thetadot; }},
      {"xia", [](const LogRow& r) { return r.xi_a; }},
      {"xia_d", [](const LogRow& r) { return r.xi_a_d; }},
      {"xil_x", [](const LogRow& r) { return r.xi_l.x(); }},
      {"xil_d_x", [](const LogRow& r) { return r.xi_l_d.x(); }},
      {"phi_vro", [](const LogRow& r) { return r.wrench.phi_vro; }},
      {"tau_ext", [](const LogRow& r) { return r.wrench.tau_ext; }},
      {"r_cop", [](const LogRow& r) { return r.wrench.r_cop; }},
      {"fext_x", [](const LogRow& r) { return r.wrench.f_ext.x(); }},
      {"fext_z", [](const LogRow& r) { return r.wrench.f_ext.z(); }},
      {"angular_momentum",
       [](const LogRow& r) { return r.angular_momentum; }},
  };
  std::vector<std::string> written;
  for (const auto& sig : signals) {
    const fs::path path = fs::path(dir) / (std::string(sig.name) + ".dat");
    std::string out;
    out.reserve(log.rows.size() * 48);
    for (const auto& row : log.rows) {
      append_num(out, row.t);
      out += ' ';
      append_num(out, sig.get(row));
      out += '\n';
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << out;
    written.push_back(path.string());
  }
  return written;
}

}  // namespace sdcm
