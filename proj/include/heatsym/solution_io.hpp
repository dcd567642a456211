#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "heatsym/meshes.hpp"

namespace heatsym {

/// Long format, one row per node: t,i,x,u or t,i,x,s,rho,u. 17 significant digits.
void write_solution_csv(std::ostream& out, const std::vector<Layer>& layers);
std::vector<Layer> read_solution_csv(std::istream& in);

void write_solution_csv(const std::string& path, const std::vector<Layer>& layers);
std::vector<Layer> read_solution_csv(const std::string& path);

void write_time_mesh_csv(std::ostream& out, const TimeMesh& mesh);
void write_layer_mesh_csv(std::ostream& out, const Layer& layer);

}  // namespace heatsym
