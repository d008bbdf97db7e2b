#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "regge/algebra.hpp"

namespace regge {

using EdgeVector = Eigen::Vector4d;

// Dual area tensor of a triangle together with its chiral 3-vectors.
struct Bivector {
  Matrix4c tensor = Matrix4c::Zero();  // upper indices
  ChiralVec plus = ChiralVec::Zero();
  ChiralVec minus = ChiralVec::Zero();

  const ChiralVec& chiral(Chirality c) const { return c == Chirality::Plus ? plus : minus; }
};

// v^{ab} = 1/2 eps^{ab}_{cd} l1^c l2^d
Matrix4c dual_area_tensor(const EdgeVector& l1, const EdgeVector& l2,
                          Signature sig = Signature::Lorentzian);
// 2 v_k = -eps_klm v^{lm} +- kappa (v_k0 - v_0k), lowered time index
ChiralVec chiral_vector(const Matrix4c& tensor, Chirality c, Signature sig = Signature::Lorentzian);
// Lowered tensor 1/2 v^k Sigma_{k ab} rebuilt from a chiral vector.
Matrix4c chiral_tensor(const ChiralVec& v, Chirality c, Signature sig = Signature::Lorentzian);

Bivector bivector_from_edges(const EdgeVector& l1, const EdgeVector& l2,
                             Signature sig = Signature::Lorentzian);

// Principal square root with roundoff imaginary parts of real inputs removed,
// so that real negative squares map to +i sqrt|x|.
Complex clean_sqrt(Complex z);

// Area of a triangle, sqrt of the self-dual square v.v.
Complex area(const Bivector& b);

// Face of a 4-simplex labelled by its opposite edge (i, k), i < k.
struct FaceId {
  int i = 0;
  int k = 1;
  friend bool operator==(const FaceId&, const FaceId&) = default;
};

// (0,1) (0,2) (0,3) (0,4) (1,2) (1,3) (1,4) (2,3) (2,4) (3,4)
const std::array<FaceId, 10>& all_faces();
int face_index(FaceId f);

// Complex hyperdihedral angle at a triangle, between the two faces through p and q.
Complex hyperdihedral_angle(const std::array<EdgeVector, 3>& triangle, const EdgeVector& p,
                            const EdgeVector& q, Signature sig = Signature::Lorentzian);

class Simplex4 {
 public:
  // Edges l40, l41, l42, l43 from the base vertex 4 placed at the origin.
  explicit Simplex4(const std::array<EdgeVector, 4>& edges,
                    Signature sig = Signature::Lorentzian);
  static Simplex4 from_points(const std::array<EdgeVector, 5>& x,
                              Signature sig = Signature::Lorentzian);

  const EdgeVector& vertex(int i) const { return x_[i]; }
  const std::array<EdgeVector, 5>& vertices() const { return x_; }
  Signature signature() const { return sig_; }

  std::array<int, 3> triangle(FaceId f) const;
  // Triangle opposite the edge (i,k), oriented as a face of the tetrahedron
  // opposite vertex i; v(i,k) = -v(k,i) and sum_k v(i,k) = 0.
  Bivector face_bivector(int i, int k) const;
  Bivector face_bivector(FaceId f) const { return face_bivector(f.i, f.k); }
  Complex angle(FaceId f) const;
  Complex area(FaceId f) const;

  // Largest |sum of the four chiral face vectors| over the five tetrahedra.
  double closure_residual() const;

 private:
  Simplex4(const std::array<EdgeVector, 5>& x, Signature sig, bool);
  std::array<EdgeVector, 5> x_;
  Signature sig_;
};

// Vertices moved by minimum-norm Gauss-Newton steps until the squared edge
// lengths (pairs in all_faces() order) reach the targets; vertex 4 stays fixed.
std::array<EdgeVector, 5> refit_squared_lengths(const std::array<EdgeVector, 5>& x,
                                                const std::array<double, 10>& target,
                                                Signature sig = Signature::Lorentzian);

// Regular 4-simplex with unit edges in Euclidean signature.
Simplex4 regular_simplex();

// Axes of the lattice cell: lapse first, then three unit spatial vectors with
// pairwise products lambda (spatial scale applied).
std::array<EdgeVector, 4> lattice_axes(double lambda, const EdgeVector& lapse, double scale = 1.0);

// Lapse-first path simplex of the cell at the origin: vertex 4 at the origin,
// vertex 0 the lapse, vertices 1, 2, 3 along the spatial axes in order.
Simplex4 lapse_simplex(double lambda, const EdgeVector& lapse, double scale = 1.0);

// Closed-form dihedral angles of the spatial tetrahedron of the cubic section.
struct DihedralTable3d {
  double a2_43_1 = 0;  // at edge (43)
  double a1_42_3 = 0;  // at edge (42)
  double a4_31_2 = 0;  // at edge (31)
  double a4_23_1 = 0;  // at edge (23)
  double a3_41_2 = 0;  // at edge (41)
  double a4_12_3 = 0;  // at edge (12)
  double min() const;
};

DihedralTable3d dihedral_angles_3d(double lambda);

}  // namespace regge
