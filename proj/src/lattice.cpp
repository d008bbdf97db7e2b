#include "regge/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

namespace regge {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

int wrap(int c, int n) { return ((c % n) + n) % n; }

// Key of a simplex face that is independent of the periodic copy it was reached from.
template <std::size_t K, std::size_t D>
std::vector<int> face_key(std::array<std::array<int, D>, K> pts,
                          const std::function<int(const std::array<int, D>&)>& id) {
  std::array<int, K> ids;
  for (std::size_t j = 0; j < K; ++j) ids[j] = id(pts[j]);
  std::array<std::size_t, K> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ids[a] != ids[b] ? ids[a] < ids[b] : pts[a] < pts[b];
  });
  std::vector<int> key{ids[order[0]]};
  for (std::size_t j = 1; j < K; ++j)
    for (std::size_t d = 0; d < D; ++d) key.push_back(pts[order[j]][d] - pts[order[0]][d]);
  return key;
}

}  // namespace

void LatticeConfig::validate() const {
  if (!(lambda > -0.5 && lambda < 1.0)) throw ValidationError("lambda must lie in (-1/2, 1)");
  if (!(scale > 0) || !std::isfinite(scale)) throw ValidationError("scale must be positive");
  if (!lapse.allFinite()) throw ValidationError("lapse must be finite");
  if (lapse.tail<3>().squaredNorm() >= lapse(0) * lapse(0))
    throw ValidationError("lapse must be timelike");
  for (int e : extents)
    if (e < 2) throw ValidationError("periodic extents must be at least 2");

  // Thin lapse: in every path simplex of a cell, a triangle is timelike exactly
  // when one of its edges is a single lapse step.
  const auto ax = lattice_axes(lambda, lapse, scale);
  const Eigen::Matrix4d g = metric(Signature::Lorentzian);
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    std::array<EdgeVector, 5> x;
    std::array<unsigned, 5> steps{};
    x[0] = EdgeVector::Zero();
    for (int j = 0; j < 4; ++j) {
      x[j + 1] = x[j] + ax[perm[j]];
      steps[j + 1] = steps[j] | (1u << perm[j]);
    }
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        for (int c = b + 1; c < 5; ++c) {
          const EdgeVector l1 = x[b] - x[a], l2 = x[c] - x[a];
          const double area2 = l1.dot(g * l1) * l2.dot(g * l2) - std::pow(l1.dot(g * l2), 2);
          const bool lapse_edge = (steps[b] ^ steps[a]) == 1u || (steps[c] ^ steps[b]) == 1u ||
                                  (steps[c] ^ steps[a]) == 1u;
          if ((area2 < 0) != lapse_edge)
            throw ValidationError("lapse is not thin compared with the spatial cell at this lambda");
        }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

LatticeConfig LatticeConfig::from_json(const std::string& text) {
  LatticeConfig cfg;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("lambda")) cfg.lambda = j.at("lambda").get<double>();
    if (j.contains("scale")) cfg.scale = j.at("scale").get<double>();
    if (j.contains("lapse")) {
      const auto v = j.at("lapse").get<std::vector<double>>();
      if (v.size() != 4) throw ValidationError("lapse needs 4 components");
      cfg.lapse = EdgeVector(v[0], v[1], v[2], v[3]);
    }
    if (j.contains("extents")) {
      const auto v = j.at("extents").get<std::vector<int>>();
      if (v.size() != 4) throw ValidationError("extents needs 4 entries");
      std::copy(v.begin(), v.end(), cfg.extents.begin());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad lattice config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string LatticeConfig::to_json() const {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["lapse"] = {lapse(0), lapse(1), lapse(2), lapse(3)};
  j["scale"] = scale;
  j["extents"] = extents;
  return j.dump();
}

Lattice::Lattice(const LatticeConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  axes_ = lattice_axes(cfg_.lambda, cfg_.lapse, cfg_.scale);
  const auto& n = cfg_.extents;
  displacement_.assign(std::size_t(n[0]) * n[1] * n[2] * n[3], EdgeVector::Zero());

  std::map<std::vector<int>, int> tri_index, edge_index;
  const std::function<int(const std::array<int, 4>&)> id = [this](const std::array<int, 4>& c) {
    return vertex_id(c);
  };
  std::array<int, 4> q{};
  for (q[0] = 0; q[0] < n[0]; ++q[0])
    for (q[1] = 0; q[1] < n[1]; ++q[1])
      for (q[2] = 0; q[2] < n[2]; ++q[2])
        for (q[3] = 0; q[3] < n[3]; ++q[3]) {
          std::array<int, 4> perm{0, 1, 2, 3};
          do {
            LatticeSimplex s;
            s.path = perm;
            std::array<int, 4> c = q;
            s.coords[4] = c;
            for (int j = 0; j < 4; ++j) {
              c[perm[j]] += 1;
              s.coords[j] = c;
            }
            for (int l = 0; l < 5; ++l) s.vertex[l] = vertex_id(s.coords[l]);
            const int sid = int(simplices_.size());
            simplices_.push_back(s);

            std::array<int, 10> ft{};
            for (int f = 0; f < 10; ++f) {
              const FaceId face = all_faces()[f];
              std::array<std::array<int, 4>, 3> pts;
              int m = 0;
              for (int l = 0; l < 5; ++l)
                if (l != face.i && l != face.k) pts[m++] = s.coords[l];
              const auto key = face_key<3, 4>(pts, id);
              auto it = tri_index.find(key);
              if (it == tri_index.end()) {
                LatticeTriangle t;
                for (int j = 0; j < 3; ++j) t.vertex[j] = vertex_id(pts[j]);
                std::sort(t.vertex.begin(), t.vertex.end());
                it = tri_index.emplace(key, int(triangles_.size())).first;
                triangles_.push_back(t);
              }
              triangles_[it->second].incidences.push_back({sid, face});
              ft[f] = it->second;
            }
            face_triangle_.push_back(ft);

            std::array<int, 10> se{};
            for (int e = 0; e < 10; ++e) {
              const FaceId p = all_faces()[e];
              const auto key = face_key<2, 4>({s.coords[p.i], s.coords[p.k]}, id);
              auto it = edge_index.find(key);
              if (it == edge_index.end()) {
                it = edge_index.emplace(key, int(edge_shift_.size())).first;
                edge_shift_.push_back(0.0);
              }
              se[e] = it->second;
            }
            simplex_edges_.push_back(se);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
}

int Lattice::vertex_id(const std::array<int, 4>& c) const {
  const auto& n = cfg_.extents;
  return ((wrap(c[0], n[0]) * n[1] + wrap(c[1], n[1])) * n[2] + wrap(c[2], n[2])) * n[3] +
         wrap(c[3], n[3]);
}

EdgeVector Lattice::position(const std::array<int, 4>& c) const {
  EdgeVector x = displacement_[vertex_id(c)];
  for (int d = 0; d < 4; ++d) x += double(c[d]) * axes_[d];
  return x;
}

Simplex4 Lattice::geometry(int simplex) const {
  const auto& s = simplices_.at(simplex);
  std::array<EdgeVector, 5> x;
  for (int l = 0; l < 5; ++l) x[l] = position(s.coords[l]);
  const auto& edges = simplex_edges_[simplex];
  if (std::any_of(edges.begin(), edges.end(), [&](int e) { return edge_shift_[e] != 0.0; })) {
    const Eigen::Matrix4d g = metric(Signature::Lorentzian);
    std::array<double, 10> target;
    for (int n = 0; n < 10; ++n) {
      const FaceId p = all_faces()[n];
      const EdgeVector d = x[p.i] - x[p.k];
      target[n] = d.dot(g * d) + edge_shift_[edges[n]];
    }
    x = refit_squared_lengths(x, target);
  }
  return Simplex4::from_points(x);
}

void Lattice::perturb_lengths(double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const Eigen::Matrix4d g = metric(Signature::Lorentzian);
  const double unit = std::abs(cfg_.lapse.dot(g * cfg_.lapse));
  for (auto& d : edge_shift_) d = amplitude * unit * nd(rng);
}

void Lattice::displace(double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const double time_scale = std::abs(cfg_.lapse(0));
  for (auto& d : displacement_) {
    d(0) = amplitude * time_scale * nd(rng);
    for (int k = 1; k < 4; ++k) d(k) = amplitude * cfg_.scale * nd(rng);
  }
}

std::map<int, int> Lattice::multiplicity_histogram() const {
  std::map<int, int> h;
  for (const auto& t : triangles_) ++h[t.multiplicity()];
  return h;
}

int Lattice::triangle_of(int simplex, FaceId f) const {
  return face_triangle_.at(simplex)[face_index(f)];
}

std::vector<Complex> angle_sums(const Lattice& lat) {
  std::vector<Complex> sums(lat.triangles().size(), Complex(0));
  for (int s = 0; s < int(lat.simplices().size()); ++s) {
    const Simplex4 geo = lat.geometry(s);
    for (const FaceId& f : all_faces()) sums[lat.triangle_of(s, f)] += geo.angle(f);
  }
  return sums;
}

std::vector<double> edge_angle_sums_3d(double lambda) {
  const auto ax4 = lattice_axes(lambda, EdgeVector(1, 0, 0, 0));
  std::array<Eigen::Vector3d, 3> ax;
  for (int i = 0; i < 3; ++i) ax[i] = ax4[i + 1].tail<3>();
  const int n = 3;
  const std::function<int(const std::array<int, 3>&)> id = [](const std::array<int, 3>& c) {
    return (wrap(c[0], n) * n + wrap(c[1], n)) * n + wrap(c[2], n);
  };
  auto pos = [&](const std::array<int, 3>& c) {
    return Eigen::Vector3d(c[0] * ax[0] + c[1] * ax[1] + c[2] * ax[2]);
  };
  std::map<std::vector<int>, double> sums;
  std::array<int, 3> q{};
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = 0; q[1] < n; ++q[1])
      for (q[2] = 0; q[2] < n; ++q[2]) {
        std::array<int, 3> perm{0, 1, 2};
        do {
          std::array<std::array<int, 3>, 4> v;
          v[0] = q;
          for (int j = 0; j < 3; ++j) {
            v[j + 1] = v[j];
            v[j + 1][perm[j]] += 1;
          }
          for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
              std::array<int, 2> o{};
              int m = 0;
              for (int c = 0; c < 4; ++c)
                if (c != a && c != b) o[m++] = c;
              const Eigen::Vector3d pa = pos(v[a]), e = (pos(v[b]) - pa).normalized();
              Eigen::Vector3d p = pos(v[o[0]]) - pa, r = pos(v[o[1]]) - pa;
              p -= p.dot(e) * e;
              r -= r.dot(e) * e;
              const double ang = std::acos(std::clamp(p.dot(r) / (p.norm() * r.norm()), -1.0, 1.0));
              sums[face_key<2, 3>({v[a], v[b]}, id)] += ang;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
  std::vector<double> out;
  for (const auto& kv : sums) out.push_back(kv.second);
  (void)kPi;
  return out;
}

}  // namespace regge
