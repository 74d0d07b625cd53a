#include "foldfem/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace foldfem {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace

void write_convergence_csv(std::ostream& os, const ConvergenceHistory& history) {
  os << kConvergenceHeader << '\n';
  for (const ConvergenceRow& r : history) {
    os << r.level << ',' << r.elements << ',' << r.dofs;
    for (int i = 1; i <= 6; ++i) os << ',' << number(r.eta[i]);
    os << ',' << number(r.eta_tot) << ',';
    if (r.dg_error) os << number(*r.dg_error);
    os << ',';
    if (r.eff_index) os << number(*r.eff_index);
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    os << ',' << wall << '\n';
  }
}

void write_vtk(std::ostream& os, const DgSpace& space, std::span<const double> coeffs,
               std::span<const double> indicators) {
  const Mesh& mesh = space.mesh();
  if (static_cast<int>(coeffs.size()) != space.num_dofs()) throw ConfigError("coefficient vector size mismatch");
  if (!indicators.empty() && static_cast<int>(indicators.size()) != mesh.num_triangles())
    throw ConfigError("indicator vector size mismatch");

  std::vector<double> sum(mesh.num_vertices(), 0.0);
  std::vector<int> count(mesh.num_vertices(), 0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int v : mesh.triangle(t).v) {
      sum[v] += space.eval_function(t, mesh.vertex(v), coeffs, 0).value;
      ++count[v];
    }
  }

  os << "# vtk DataFile Version 3.0\nfoldfem solution\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Point& p : mesh.vertices()) os << number(p.x) << ' ' << number(p.y) << " 0\n";
  os << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
  for (const Triangle& t : mesh.triangles()) os << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  os << "CELL_TYPES " << mesh.num_triangles() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) os << "5\n";

  os << "POINT_DATA " << mesh.num_vertices() << "\nSCALARS u_h double 1\nLOOKUP_TABLE default\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) os << number(count[v] ? sum[v] / count[v] : 0.0) << '\n';

  os << "CELL_DATA " << mesh.num_triangles() << "\nSCALARS indicator double 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) os << number(indicators.empty() ? 0.0 : indicators[t]) << '\n';
  os << "SCALARS level int 1\nLOOKUP_TABLE default\n";
  for (const Triangle& t : mesh.triangles()) os << t.level << '\n';
}

std::filesystem::path write_vtk_level(const std::filesystem::path& dir, int level, const DgSpace& space,
                                      std::span<const double> coeffs, std::span<const double> indicators) {
  std::filesystem::create_directories(dir);
  const auto path = dir / ("mesh_level_" + std::to_string(level) + ".vtk");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_vtk(out, space, coeffs, indicators);
  return path;
}

}  // namespace foldfem
