#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>

#include "foldfem/adapt.hpp"
#include "foldfem/space.hpp"

namespace foldfem {

inline constexpr const char* kConvergenceHeader =
    "level,elements,dofs,eta1,eta2,eta3,eta4,eta5,eta6,eta_tot,dg_error,eff_index,wall_ms";

/// One row per level in kConvergenceHeader order; dg_error and eff_index are
/// left empty when unknown.
void write_convergence_csv(std::ostream& os, const ConvergenceHistory& history);

/// Legacy VTK (ASCII) unstructured grid of triangles. Point data u_h is the
/// mean of the element traces meeting at each vertex; cell data holds the
/// element indicator and the element refinement level.
void write_vtk(std::ostream& os, const DgSpace& space, std::span<const double> coeffs,
               std::span<const double> indicators);

/// write_vtk into dir / "mesh_level_{level}.vtk".
std::filesystem::path write_vtk_level(const std::filesystem::path& dir, int level, const DgSpace& space,
                                      std::span<const double> coeffs, std::span<const double> indicators);

}  // namespace foldfem
