#include "regge/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
const Complex kI(0, 1);

template <typename Term>
Complex sum_terms(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                  const BranchSector& sector, Term term) {
  Complex total = 0;
  for (int n = 0; n < 10; ++n) {
    const FaceId f = all_faces()[n];
    const ChiralVec v = s.face_bivector(f).chiral(c);
    const Complex sq = clean_sqrt(square(v));
    if (std::abs(sq) < 1e-300) throw DegenerateGeometry("triangle with zero chiral area");
    total += term(v, sq, conn.curvature(f.i, f.k, c), sector.reference[n]);
  }
  return total;
}

}  // namespace

Rotor BisimplexConnections::curvature(int i, int k, Chirality c) const {
  const auto& om = chiral(c);
  return compose(inverse(om.at(i)), om.at(k));
}

BisimplexConnections BisimplexConnections::gauge_transformed(const Rotor& g, Chirality c) const {
  BisimplexConnections out = *this;
  for (auto& o : out.chiral(c)) o = compose(g, o);
  return out;
}

CurvatureSet CurvatureSet::from_connections(const BisimplexConnections& c, Chirality ch) {
  CurvatureSet set;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) set.r[i][k] = c.curvature(i, k, ch);
  return set;
}

double bianchi_check(const CurvatureSet& set) {
  double worst = 0;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k)
      for (int l = 0; l < 5; ++l)
        worst = std::max(worst, rotor_distance(compose(set.r[i][k], set.r[k][l]), set.r[i][l]));
  return worst;
}

double bianchi_check(const BisimplexConnections& c) {
  return std::max(bianchi_check(CurvatureSet::from_connections(c, Chirality::Plus)),
                  bianchi_check(CurvatureSet::from_connections(c, Chirality::Minus)));
}

std::string to_string(Representation rep) { return rep == Representation::SU2 ? "su2" : "so3"; }

Representation representation_from_string(const std::string& s) {
  if (s == "su2") return Representation::SU2;
  if (s == "so3") return Representation::SO3;
  throw ValidationError("representation must be su2 or so3");
}

Complex principal_arcsin(Complex z, CutSide side) {
  const bool on_cut = std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z)) &&
                      std::abs(z.real()) > 1.0;
  if (!on_cut) return std::asin(z);
  if (side == CutSide::None) throw BranchError("arcsin argument lies on the cut");
  // signed zero selects the side of the cut
  return std::asin(Complex(z.real(), side == CutSide::Above ? 0.0 : -0.0));
}

Complex sector_arcsin(Complex z, Complex reference) {
  const Complex a = std::asin(z);
  Complex best;
  double dist = std::numeric_limits<double>::infinity();
  for (const Complex base : {a, kPi - a}) {
    const double m = std::round((reference - base).real() / (2 * kPi));
    const Complex y = base + 2 * kPi * m;
    if (std::abs(y - reference) < dist) {
      dist = std::abs(y - reference);
      best = y;
    }
  }
  return best;
}

Complex chiral_angle(const Simplex4& s, FaceId f, Chirality c) {
  const Complex a = s.angle(f);
  return c == Chirality::Plus ? a : std::conj(a);
}

BranchSector BranchSector::geometric(const Simplex4& s, Chirality c,
                                     const std::array<int, 10>& area_sign) {
  BranchSector b;
  b.area_sign = area_sign;
  for (int n = 0; n < 10; ++n)
    b.reference[n] = double(area_sign[n]) * (kPi - chiral_angle(s, all_faces()[n], c));
  return b;
}

Complex regge_bisimplex(const Simplex4& s) {
  Complex total = 0;
  for (const FaceId& f : all_faces()) total += (2 * kPi - 2.0 * s.angle(f)) * s.area(f);
  return total;
}

Complex chirality_regge_part(const Simplex4& s, Chirality c, const std::array<int, 10>& area_sign) {
  Complex total = 0;
  for (int n = 0; n < 10; ++n) {
    const FaceId f = all_faces()[n];
    total += (2 * kPi - 2.0 * chiral_angle(s, f, c)) * double(area_sign[n]) *
             clean_sqrt(square(s.face_bivector(f).chiral(c)));
  }
  return total;
}

Complex regge_total(const Lattice& lat) {
  const auto sums = angle_sums(lat);
  Complex total = 0;
  for (std::size_t t = 0; t < sums.size(); ++t) {
    const auto& inc = lat.triangles()[t].incidences.front();
    total += (2 * kPi - sums[t]) * lat.geometry(inc.simplex).area(inc.face);
  }
  return total;
}

Complex decompose_total(const Lattice& lat) {
  Complex total = 0;
  for (int sid = 0; sid < int(lat.simplices().size()); ++sid) {
    const Simplex4 s = lat.geometry(sid);
    total += 0.5 * regge_bisimplex(s);
    for (const FaceId& f : all_faces()) {
      const int n = lat.triangles()[lat.triangle_of(sid, f)].multiplicity();
      total += (2 * kPi / n - kPi) * s.area(f);
    }
  }
  return total;
}

Complex connection_action_su2(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                              const BranchSector& sector) {
  return sum_terms(s, conn, c, sector,
                   [](const ChiralVec& v, Complex sq, const Rotor& r, Complex ref) {
                     return sq * sector_arcsin(circ(v, r) / sq, ref);
                   });
}

Complex connection_action_so3(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                              const BranchSector& sector) {
  return sum_terms(s, conn, c, sector,
                   [](const ChiralVec& v, Complex sq, const Rotor& r, Complex ref) {
                     return 0.5 * sq * sector_arcsin(star(v, to_adjoint(r)) / sq, 2.0 * ref);
                   });
}

Complex connection_action(const Simplex4& s, const BisimplexConnections& conn, Chirality c,
                          const BranchSector& sector, Representation rep) {
  return rep == Representation::SU2 ? connection_action_su2(s, conn, c, sector)
                                    : connection_action_so3(s, conn, c, sector);
}

Complex combine_gamma(Complex plus, Complex minus, double gamma) {
  if (gamma == 0 || std::isnan(gamma)) throw DomainError("gamma must be nonzero");
  const Complex ig = std::isinf(gamma) ? Complex(0) : kI / gamma;
  return (1.0 + ig) * plus + (1.0 - ig) * minus;
}

std::string ActionValue::to_json(int simplex_id, const std::string& sector) const {
  nlohmann::json j;
  j["simplex_id"] = simplex_id;
  j["plus"] = {plus.real(), plus.imag()};
  j["minus"] = {minus.real(), minus.imag()};
  j["total"] = {total.real(), total.imag()};
  j["sector"] = sector;
  return j.dump();
}

std::string to_string(AngleType t) {
  switch (t) {
    case AngleType::Real: return "real";
    case AngleType::HalfPiPlusImaginary: return "half-pi";
    case AngleType::Imaginary: return "imaginary";
  }
  return "?";
}

ResolvedAngle resolve_angle(Complex alpha, CutSide side) {
  const double tol = 1e-9;
  ResolvedAngle r;
  if (std::abs(alpha.real()) < tol) {
    r.type = AngleType::Imaginary;
  } else if (std::abs(alpha.imag()) <= 1e-12 * (1 + std::abs(alpha))) {
    r.type = AngleType::Real;
    if (!(alpha.real() > kPi / 4 && alpha.real() < 3 * kPi / 4))
      throw SectorViolation("real angle outside (pi/4, 3pi/4)");
  } else if (std::abs(alpha.real() - kPi / 2) < tol) {
    r.type = AngleType::HalfPiPlusImaginary;
  } else {
    throw SectorViolation("angle is not of a resolvable class");
  }

  const Complex s2 = std::asin(std::sin(2 * kPi - 2.0 * alpha));
  r.so3 = r.type == AngleType::Imaginary ? -0.5 * s2 : kPi / 2 + 0.5 * s2;

  if (r.type == AngleType::HalfPiPlusImaginary) {
    // sin(pi - alpha) = ch(eta) lies on the cut; the side fixes the sign
    const double eta = alpha.imag();
    const double dir = side == CutSide::Below ? 1.0 : -1.0;
    if (side == CutSide::None) throw BranchError("arcsin argument lies on the cut");
    r.sign = eta >= 0 ? int(dir) : -int(dir);
  } else {
    r.sign = alpha.real() - kPi / 2 >= 0 ? 1 : -1;
  }
  r.su2 = kPi / 2 + (kPi / 2 - principal_arcsin(std::sin(kPi - alpha), side)) * double(r.sign);
  return r;
}

std::array<ResolvedAngle, 10> resolve_branch(const Simplex4& s, Chirality c, CutSide side) {
  std::array<ResolvedAngle, 10> out;
  for (int n = 0; n < 10; ++n) out[n] = resolve_angle(chiral_angle(s, all_faces()[n], c), side);
  return out;
}

double sector_constant(AngleType t, int multiplicity) {
  if (multiplicity <= 0) throw ValidationError("multiplicity must be positive");
  const double c = t == AngleType::Imaginary ? 0.0 : kPi / 2;
  return 0.5 * (2 * kPi / multiplicity - c);
}

std::vector<SectorConstantEntry> sector_constants(const Lattice& lat) {
  std::vector<SectorConstantEntry> out;
  for (int sid = 0; sid < int(lat.simplices().size()); ++sid) {
    const Simplex4 s = lat.geometry(sid);
    for (const FaceId& f : all_faces()) {
      const AngleType t = resolve_angle(s.angle(f)).type;
      const int n = lat.triangles()[lat.triangle_of(sid, f)].multiplicity();
      out.push_back({sid, f, t, n, sector_constant(t, n)});
    }
  }
  return out;
}

}  // namespace regge
