#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regge/geometry.hpp"

namespace regge {

struct LatticeConfig {
  double lambda = -1.0 / 3.0;
  EdgeVector lapse = EdgeVector(0.1, 0.01, 0.02, 0.03);
  double scale = 1.0;
  std::array<int, 4> extents{2, 2, 2, 2};

  void validate() const;
  static LatticeConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct LatticeSimplex {
  std::array<int, 5> vertex;                 // periodic vertex ids, by simplex label
  std::array<std::array<int, 4>, 5> coords;  // unwrapped integer coordinates
  std::array<int, 4> path;                   // order in which the cell axes are stepped
};

struct TriangleIncidence {
  int simplex = 0;
  FaceId face;
};

struct LatticeTriangle {
  std::array<int, 3> vertex;  // sorted periodic ids
  std::vector<TriangleIncidence> incidences;
  int multiplicity() const { return int(incidences.size()); }
};

// Periodic 4-cubic lattice, each cell split into 24 path simplices.
// Path position 0 is labelled 4, positions 1..4 are labelled 0, 1, 2, 3,
// so the identity path reproduces lapse_simplex.
class Lattice {
 public:
  explicit Lattice(const LatticeConfig& cfg);

  const LatticeConfig& config() const { return cfg_; }
  const std::array<EdgeVector, 4>& axes() const { return axes_; }
  int vertex_count() const { return int(displacement_.size()); }
  const std::vector<LatticeSimplex>& simplices() const { return simplices_; }
  const std::vector<LatticeTriangle>& triangles() const { return triangles_; }

  int vertex_id(const std::array<int, 4>& c) const;
  EdgeVector position(const std::array<int, 4>& c) const;
  // Simplex from the embedding, refitted to the edge lengths when they are perturbed.
  Simplex4 geometry(int simplex) const;

  int edge_count() const { return int(edge_shift_.size()); }
  // Edge ids of a simplex, indexed like all_faces(): entry n joins labels faces[n].i and faces[n].k.
  const std::array<int, 10>& simplex_edges(int simplex) const { return simplex_edges_.at(simplex); }

  // Vertex displacements move the embedding; the complex stays flat.
  void set_displacement(int vertex, const EdgeVector& d) { displacement_.at(vertex) = d; }
  // Independent Gaussian displacement of every vertex, relative to the cell scale.
  void displace(double amplitude, std::uint64_t seed);
  // Shifts of squared edge lengths change the intrinsic geometry and produce curvature.
  void set_edge_shift(int edge, double shift) { edge_shift_.at(edge) = shift; }
  // Every squared edge length shifted by amplitude * |lapse^2| * N(0,1), which
  // keeps the thin timelike direction intact.
  void perturb_lengths(double amplitude, std::uint64_t seed);

  // multiplicity -> number of triangles
  std::map<int, int> multiplicity_histogram() const;
  // Triangle index of a face of a simplex.
  int triangle_of(int simplex, FaceId f) const;

 private:
  LatticeConfig cfg_;
  std::array<EdgeVector, 4> axes_;
  std::vector<EdgeVector> displacement_;
  std::vector<LatticeSimplex> simplices_;
  std::vector<LatticeTriangle> triangles_;
  std::vector<std::array<int, 10>> face_triangle_;
  std::vector<double> edge_shift_;
  std::vector<std::array<int, 10>> simplex_edges_;
};

// Sum of hyperdihedral angles around every triangle.
std::vector<Complex> angle_sums(const Lattice& lat);

// Dihedral-angle sums around every edge of the periodic 3-d section,
// computed from the geometry of its six-tetrahedron cube split.
std::vector<double> edge_angle_sums_3d(double lambda);

}  // namespace regge
