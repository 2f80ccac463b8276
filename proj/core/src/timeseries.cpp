#include "kinfluid/timeseries.hpp"

#include <fstream>
#include <stdexcept>

#include "format_detail.hpp"

namespace kinfluid {

using detail::fmt_double;
using detail::json_escape;

std::string csv_header(int dimension) {
  std::string h = "t,mass_fluid,mass_kinetic";
  const auto vec_cols = [&](const std::string& stem) {
    for (int a = 0; a < dimension; ++a) h += "," + stem + "_" + std::to_string(a);
  };
  vec_cols("momentum");
  vec_cols("vc");
  vec_cols("mc");
  vec_cols("uc");
  h += ",E_total,L,E_int,D,E_sigma,D_sigma";
  for (int j = 1; j <= 9; ++j) h += ",J" + std::to_string(j);
  h += ",bl_bound,rho_min,rho_max,u_max";
  return h;
}

namespace {

std::string csv_row(const FunctionalRow& row, int dimension) {
  std::string line = fmt_double(row.t);
  line += "," + fmt_double(row.mass_fluid);
  line += "," + fmt_double(row.mass_kinetic);
  const auto vec_cols = [&](const Vec& v) {
    for (int a = 0; a < dimension; ++a) line += "," + fmt_double(v[a]);
  };
  vec_cols(row.total_momentum);
  vec_cols(row.v_c);
  vec_cols(row.m_c);
  vec_cols(row.u_c);
  line += "," + fmt_double(row.E_total);
  line += "," + fmt_double(row.L);
  line += "," + fmt_double(row.E_int);
  line += "," + fmt_double(row.D);
  line += "," + fmt_double(row.E_sigma);
  line += "," + fmt_double(row.D_sigma);
  for (double j : row.J) line += "," + fmt_double(j);
  line += "," + fmt_double(row.bl_bound);
  line += "," + fmt_double(row.rho_min);
  line += "," + fmt_double(row.rho_max);
  line += "," + fmt_double(row.u_max);
  return line;
}

std::string json_vec(const Vec& v, int dimension) {
  std::string out = "[";
  for (int a = 0; a < dimension; ++a) {
    if (a > 0) out += ", ";
    out += fmt_double(v[a]);
  }
  return out + "]";
}

std::string json_row(const FunctionalRow& row, int dimension) {
  std::string out = "{";
  out += "\"t\": " + fmt_double(row.t);
  out += ", \"mass_fluid\": " + fmt_double(row.mass_fluid);
  out += ", \"mass_kinetic\": " + fmt_double(row.mass_kinetic);
  out += ", \"momentum\": " + json_vec(row.total_momentum, dimension);
  out += ", \"vc\": " + json_vec(row.v_c, dimension);
  out += ", \"mc\": " + json_vec(row.m_c, dimension);
  out += ", \"uc\": " + json_vec(row.u_c, dimension);
  out += ", \"E_total\": " + fmt_double(row.E_total);
  out += ", \"L\": " + fmt_double(row.L);
  out += ", \"E_int\": " + fmt_double(row.E_int);
  out += ", \"D\": " + fmt_double(row.D);
  out += ", \"E_sigma\": " + fmt_double(row.E_sigma);
  out += ", \"D_sigma\": " + fmt_double(row.D_sigma);
  out += ", \"J\": [";
  for (std::size_t j = 0; j < row.J.size(); ++j) {
    if (j > 0) out += ", ";
    out += fmt_double(row.J[j]);
  }
  out += "]";
  out += ", \"bl_bound\": " + fmt_double(row.bl_bound);
  out += ", \"rho_min\": " + fmt_double(row.rho_min);
  out += ", \"rho_max\": " + fmt_double(row.rho_max);
  out += ", \"u_max\": " + fmt_double(row.u_max);
  out += "}";
  return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string timeseries_csv(const RunHistory& history) {
  std::string out = csv_header(history.config.dimension) + "\n";
  for (const auto& row : history.rows) out += csv_row(row, history.config.dimension) + "\n";
  return out;
}

std::string timeseries_json(const RunHistory& history) {
  const int dim = history.config.dimension;
  std::string out = "{\n\"config\": ";
  out += config_echo_json(history.config);
  out += ",\n\"rows\": [\n";
  for (std::size_t i = 0; i < history.rows.size(); ++i) {
    out += json_row(history.rows[i], dim);
    if (i + 1 < history.rows.size()) out += ",";
    out += "\n";
  }
  out += "],\n";
  if (history.fit) {
    out += "\"decay_fit\": {\"rate\": " + fmt_double(history.fit->rate) +
           ", \"r_squared\": " + fmt_double(history.fit->r_squared) +
           ", \"window_begin\": " + fmt_double(history.fit->window_begin) +
           ", \"window_end\": " + fmt_double(history.fit->window_end) +
           ", \"samples\": " + std::to_string(history.fit->samples) + "},\n";
  } else {
    out += "\"decay_fit\": null,\n";
  }
  out += "\"conservation\": {\"mass_fluid_drift\": " + fmt_double(history.report.mass_fluid_drift) +
         ", \"mass_kinetic_drift\": " + fmt_double(history.report.mass_kinetic_drift) +
         ", \"momentum_drift\": " + fmt_double(history.report.momentum_drift) +
         ", \"max_energy_step_increase\": " + fmt_double(history.report.max_energy_step_increase) +
         ", \"max_e_sigma_step_increase\": " +
         fmt_double(history.report.max_e_sigma_step_increase) + "},\n";
  out += "\"summary\": {\"t_final\": " + fmt_double(history.summary.t_final) +
         ", \"steps\": " + std::to_string(history.summary.steps) +
         ", \"particle_count\": " + std::to_string(history.summary.particle_count) +
         ", \"L_final\": " + fmt_double(history.summary.L_final) +
         ", \"rho_min\": " + fmt_double(history.summary.rho_min) +
         ", \"rho_max\": " + fmt_double(history.summary.rho_max) +
         ", \"u_max\": " + fmt_double(history.summary.u_max) + "},\n";
  out += "\"aborted\": " + std::string(history.aborted ? "true" : "false") + ",\n";
  out += "\"abort_reason\": \"" + json_escape(history.abort_reason) + "\"\n";
  out += "}\n";
  return out;
}

void write_timeseries_csv(const RunHistory& history, const std::filesystem::path& path) {
  write_text(timeseries_csv(history), path);
}

void write_timeseries_json(const RunHistory& history, const std::filesystem::path& path) {
  write_text(timeseries_json(history), path);
}

}  // namespace kinfluid
