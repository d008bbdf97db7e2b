#pragma once

#include <array>
#include <string>

#include "regge/lattice.hpp"

namespace regge {

// Connection rotors Omega_0..Omega_4 of a bisimplex, one pair per 3-face.
struct BisimplexConnections {
  std::array<Rotor, 5> plus;
  std::array<Rotor, 5> minus;

  const std::array<Rotor, 5>& chiral(Chirality c) const {
    return c == Chirality::Plus ? plus : minus;
  }
  std::array<Rotor, 5>& chiral(Chirality c) { return c == Chirality::Plus ? plus : minus; }

  // R_ik = Omega_i^T Omega_k
  Rotor curvature(int i, int k, Chirality c) const;
  // Omega_i -> G Omega_i for every i (same G for all faces).
  BisimplexConnections gauge_transformed(const Rotor& g, Chirality c) const;
};

// Holonomies R_ik for all ordered pairs of one chirality.
struct CurvatureSet {
  std::array<std::array<Rotor, 5>, 5> r;
  static CurvatureSet from_connections(const BisimplexConnections& c, Chirality ch);
};

// max over (i,k,l) of |R_ik R_kl - R_il|
double bianchi_check(const CurvatureSet& set);
double bianchi_check(const BisimplexConnections& c);

enum class Representation { SU2, SO3 };
std::string to_string(Representation rep);
Representation representation_from_string(const std::string& s);

// Which side of the arcsin cut is taken for real arguments with |z| > 1.
enum class CutSide { None, Above, Below };

// Principal arcsin; on the cut the +-i0 prescription decides, None throws BranchError.
Complex principal_arcsin(Complex z, CutSide side = CutSide::Above);
// Root y of sin y = z closest to the reference value.
Complex sector_arcsin(Complex z, Complex reference);

// Branch data for the ten terms of one chirality, in all_faces() order.
// reference picks the arcsin root; area_sign is the sign it carries relative to
// pi - alpha, which is also the sign taken by the area sqrt(v.v) on shell.
struct BranchSector {
  std::array<int, 10> area_sign;
  std::array<Complex, 10> reference;

  // Reference area_sign * (pi - alpha), alpha conjugated for the minus chirality.
  static BranchSector geometric(const Simplex4& s, Chirality c,
                                const std::array<int, 10>& area_sign = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1});
};

// Hyperdihedral angle as seen by one chirality.
Complex chiral_angle(const Simplex4& s, FaceId f, Chirality c);

// sum over the ten triangles of (2 pi - 2 alpha) A
Complex regge_bisimplex(const Simplex4& s);
// Same sum with the chiral angle and signed area sign * sqrt(v.v) of one chirality.
Complex chirality_regge_part(const Simplex4& s, Chirality c,
                             const std::array<int, 10>& area_sign = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1});

Complex regge_total(const Lattice& lat);
// sum over simplices of sum over faces of (2 pi / N - alpha) A
Complex decompose_total(const Lattice& lat);

Complex connection_action_su2(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                              const BranchSector& sector);
Complex connection_action_so3(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                              const BranchSector& sector);
Complex connection_action(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                          const BranchSector& sector, Representation rep);

// (1 + i/gamma) plus + (1 - i/gamma) minus; gamma = inf gives plus + minus.
Complex combine_gamma(Complex plus, Complex minus, double gamma);

struct ActionValue {
  Complex plus;
  Complex minus;
  Complex total;
  std::string to_json(int simplex_id, const std::string& sector) const;
};

// Angle classes near the flat pseudo-cubic background.
enum class AngleType { Real, HalfPiPlusImaginary, Imaginary };
std::string to_string(AngleType t);

struct ResolvedAngle {
  AngleType type = AngleType::Real;
  Complex so3;  // reconstruction from sin(2 pi - 2 alpha)
  Complex su2;  // reconstruction from sin(pi - alpha)
  int sign = 1; // sgn Re(alpha - pi/2), or the cut-side sign for the half-pi class
};

// Classify an angle and rebuild it from the branch identities; throws
// SectorViolation outside the region where they hold.
ResolvedAngle resolve_angle(Complex alpha, CutSide side = CutSide::Above);
std::array<ResolvedAngle, 10> resolve_branch(const Simplex4& s, Chirality c = Chirality::Plus,
                                             CutSide side = CutSide::Above);

// Per-simplex, per-chirality constant carried by a face of the given class
// on a triangle shared by N simplices: (2 pi / N - c) / 2 with c the constant
// part of the angle (pi/2, or 0 for the imaginary class).
double sector_constant(AngleType t, int multiplicity);

struct SectorConstantEntry {
  int simplex;
  FaceId face;
  AngleType type;
  int multiplicity;
  double constant;
};
std::vector<SectorConstantEntry> sector_constants(const Lattice& lat);

}  // namespace regge
