#include "cavity/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cavity {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io, "cannot rename " + tmp.string() + " to " + path.string() +
                                         ": " + ec.message());
}

std::string field_csv(const FieldMap& map) {
  std::ostringstream s;
  s << "x,y,cavity,layer,re_u,im_u,abs_u\n";
  for (const auto& p : map.samples)
    s << format_real(p.x) << ',' << format_real(p.y) << ',' << p.cavity << ',' << p.layer << ','
      << format_real(p.value.real()) << ',' << format_real(p.value.imag()) << ','
      << format_real(std::abs(p.value)) << '\n';
  return s.str();
}

std::string sweep_csv(const RcsSweep& sweep) {
  std::ostringstream s;
  s << "phi_rad,sigma,sigma_db\n";
  for (std::size_t i = 0; i < sweep.phi.size(); ++i)
    s << format_real(sweep.phi[i]) << ',' << format_real(sweep.sigma[i]) << ','
      << format_real(sweep.sigma_db[i]) << '\n';
  return s.str();
}

std::string enhancement_csv(const EnhancementSpectrum& spectrum) {
  std::ostringstream s;
  s << "kappa";
  const std::size_t cols = spectrum.q.empty() ? 0 : spectrum.q.front().size();
  for (std::size_t k = 0; k < cols; ++k) s << ",Q_E_cavity" << k;
  s << '\n';
  for (std::size_t i = 0; i < spectrum.kappa.size(); ++i) {
    s << format_real(spectrum.kappa[i]);
    for (double q : spectrum.q[i]) s << ',' << format_real(q);
    s << '\n';
  }
  return s.str();
}

std::string coefficients_csv(const ApertureSolution& solution) {
  std::ostringstream s;
  s << "cavity,mode,re_u,im_u\n";
  const Layout& L = solution.layout;
  for (int k = 0; k < L.cavities; ++k)
    for (int n = L.first_mode; n < L.first_mode + L.modes; ++n) {
      const Complex u = solution.u0(k, n);
      s << k << ',' << n << ',' << format_real(u.real()) << ',' << format_real(u.imag()) << '\n';
    }
  return s.str();
}

std::string oracle_csv(const std::vector<oracle::OracleReport>& reports) {
  std::ostringstream s;
  s << "case,oracle_re,oracle_im,production_re,production_im,abs_error,rel_error,grid,passed\n";
  for (const auto& r : reports)
    s << r.case_id << ',' << format_real(r.oracle_value.real()) << ','
      << format_real(r.oracle_value.imag()) << ',' << format_real(r.production_value.real())
      << ',' << format_real(r.production_value.imag()) << ',' << format_real(r.abs_error) << ','
      << format_real(r.rel_error) << ',' << r.grid << ',' << (r.passed ? 1 : 0) << '\n';
  return s.str();
}

void export_grid(const FieldMap& map, const std::filesystem::path& path) {
  write_file_atomic(path, field_csv(map));
}
void export_sweep(const RcsSweep& sweep, const std::filesystem::path& path) {
  write_file_atomic(path, sweep_csv(sweep));
}
void export_enhancement(const EnhancementSpectrum& spectrum, const std::filesystem::path& path) {
  write_file_atomic(path, enhancement_csv(spectrum));
}
void export_coefficients(const ApertureSolution& solution, const std::filesystem::path& path) {
  write_file_atomic(path, coefficients_csv(solution));
}
void export_oracle(const std::vector<oracle::OracleReport>& reports,
                   const std::filesystem::path& path) {
  write_file_atomic(path, oracle_csv(reports));
}

}  // namespace cavity
