#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "regge/errors.hpp"

namespace regge {

using Complex = std::complex<double>;

template <typename T>
using ChiralVecT = Eigen::Matrix<std::complex<T>, 3, 1>;
template <typename T>
using AdjointT = Eigen::Matrix<std::complex<T>, 3, 3>;

using ChiralVec = ChiralVecT<double>;
using Adjoint = AdjointT<double>;
using LorentzMatrix = Eigen::Matrix4d;
using Matrix4c = Eigen::Matrix4cd;

enum class Signature { Lorentzian, Euclidean };
enum class Chirality { Plus, Minus };

inline int sign_of(Chirality c) { return c == Chirality::Plus ? 1 : -1; }
inline Chirality opposite(Chirality c) {
  return c == Chirality::Plus ? Chirality::Minus : Chirality::Plus;
}

// diag(-1,1,1,1) or the identity
Eigen::Matrix4d metric(Signature sig);
// i for Lorentzian, 1 for Euclidean
Complex kappa(Signature sig);

// Levi-Civita symbols, eps4(0,1,2,3) = +1, eps3(0,1,2) = +1
int eps4(int a, int b, int c, int d);
int eps3(int a, int b, int c);

// Unconjugated bilinear product a.b
template <typename T>
std::complex<T> dot(const ChiralVecT<T>& a, const ChiralVecT<T>& b) {
  return a.cwiseProduct(b).sum();
}

template <typename T>
std::complex<T> square(const ChiralVecT<T>& a) {
  return dot(a, a);
}

// Unconjugated a x b (Eigen's cross conjugates complex results).
template <typename T>
ChiralVecT<T> cross(const ChiralVecT<T>& a, const ChiralVecT<T>& b) {
  return ChiralVecT<T>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
                       a(0) * b(1) - a(1) * b(0));
}

// cos(phi/2) + Sigma.n sin(phi/2), stored as (w, u)
template <typename T>
struct RotorT {
  std::complex<T> w{1};
  ChiralVecT<T> u = ChiralVecT<T>::Zero();

  std::complex<T> norm() const { return w * w + dot(u, u); }
};

using Rotor = RotorT<double>;

template <typename T>
RotorT<T> identity_rotor() {
  return RotorT<T>{};
}

template <typename T>
RotorT<T> rotor_from_axis_angle(std::complex<T> phi, const ChiralVecT<T>& n) {
  if (std::abs(dot(n, n) - std::complex<T>(1)) > T(1e-10))
    throw InvalidAxis("rotation axis must satisfy n.n = 1");
  RotorT<T> r;
  r.w = std::cos(phi / T(2));
  r.u = n * std::sin(phi / T(2));
  return r;
}

// Product with adjoint(compose(a, b)) = adjoint(a) * adjoint(b).
template <typename T>
RotorT<T> compose(const RotorT<T>& a, const RotorT<T>& b) {
  RotorT<T> r;
  r.w = a.w * b.w - dot(a.u, b.u);
  r.u = a.w * b.u + b.w * a.u - cross(a.u, b.u);
  return r;
}

template <typename T>
RotorT<T> inverse(const RotorT<T>& a) {
  return RotorT<T>{a.w, -a.u};
}

template <typename T>
RotorT<T> conjugate(const RotorT<T>& a) {
  return RotorT<T>{std::conj(a.w), a.u.conjugate()};
}

// Rotor with rotation vector xi (angle sqrt(xi.xi), axis xi / angle).
template <typename T>
RotorT<T> rotor_exp(const ChiralVecT<T>& xi) {
  const std::complex<T> th = std::sqrt(dot(xi, xi));
  RotorT<T> r;
  r.w = std::cos(th / T(2));
  if (std::abs(th) < T(1e-6)) {
    const std::complex<T> t2 = th * th;
    r.u = xi * (T(0.5) - t2 / T(48));
  } else {
    r.u = xi * (std::sin(th / T(2)) / th);
  }
  return r;
}

template <typename T>
AdjointT<T> to_adjoint(const RotorT<T>& r) {
  const std::complex<T> d = r.w * r.w - dot(r.u, r.u);
  const ChiralVecT<T> s = T(2) * r.w * r.u;
  AdjointT<T> m = T(2) * r.u * r.u.transpose();
  m(0, 0) += d;
  m(1, 1) += d;
  m(2, 2) += d;
  m(0, 1) += s(2);
  m(1, 0) -= s(2);
  m(1, 2) += s(0);
  m(2, 1) -= s(0);
  m(2, 0) += s(1);
  m(0, 2) -= s(1);
  return m;
}

// v o R, equal to (v.n) sin(phi/2)
template <typename T>
std::complex<T> circ(const ChiralVecT<T>& v, const RotorT<T>& r) {
  return dot(v, r.u);
}

// v * R = 1/2 v^a m^{bc} eps_abc, equal to (v.n) sin(phi)
template <typename T>
std::complex<T> star(const ChiralVecT<T>& v, const AdjointT<T>& m) {
  std::complex<T> s(0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (int e = eps3(a, b, c)) s += T(e) * v(a) * m(b, c);
  return s / T(2);
}

double rotor_distance(const Rotor& a, const Rotor& b);

// Lowered-index generators Sigma_{k ab}, k = 0..2 for the three spatial axes.
Matrix4c sigma_lower(Chirality c, int k, Signature sig = Signature::Lorentzian);
// Mixed-index generator Sigma^a_b, acting on vectors.
Matrix4c sigma_mixed(Chirality c, int k, Signature sig = Signature::Lorentzian);

// Mixed-index 4x4 matrix of one chiral factor.
Matrix4c chiral_matrix(const Rotor& r, Chirality c, Signature sig = Signature::Lorentzian);
// Product of both chiral factors; complex in general.
Matrix4c assemble_complex(const Rotor& plus, const Rotor& minus,
                          Signature sig = Signature::Lorentzian);
// Real matrix; throws ValidationError if the product is not real.
LorentzMatrix assemble(const Rotor& plus, const Rotor& minus,
                       Signature sig = Signature::Lorentzian);
// Inverse of assemble, fixed up to the joint sign by Re(plus.w) >= 0.
std::pair<Rotor, Rotor> split_lorentz(const LorentzMatrix& lambda,
                                      Signature sig = Signature::Lorentzian);
// Same decomposition without validating the input as proper orthochronous.
std::pair<Rotor, Rotor> split_matrix(const Matrix4c& lambda,
                                     Signature sig = Signature::Lorentzian);

// Rank-2 tensor helpers, upper indices throughout.
Matrix4c hodge_dual(const Matrix4c& a, Signature sig = Signature::Lorentzian);
Matrix4c chiral_part(const Matrix4c& a, Chirality c, Signature sig = Signature::Lorentzian);
// A o B = 1/2 A_ab B^ab
Complex circ_tensor(const Matrix4c& a, const Matrix4c& b, Signature sig = Signature::Lorentzian);
// A * B = 1/4 eps_abcd A^ab B^cd
Complex star_tensor(const Matrix4c& a, const Matrix4c& b, Signature sig = Signature::Lorentzian);

struct SigmaIdentityReport {
  double duality = 0;     // max |*Sigma -+ i Sigma|
  double product = 0;     // max |Sigma_k Sigma_l + delta - eps Sigma|
  double commutator = 0;  // max |[+Sigma_k, -Sigma_l]|
  double bilinear = 0;    // max |2 +v o +v - (v o v + i v * v)| over random bivectors
  int cases = 0;
  double worst() const;
};

SigmaIdentityReport sigma_identities_check(int random_cases = 1000, std::uint64_t seed = 1);

// Normalized Haar density on the compact sector in terms of the rotation vector.
double haar_density(const Eigen::Vector3d& phi);
Rotor sample_haar(std::mt19937_64& rng);
// Total Haar mass by radial quadrature.
double haar_normalization();

}  // namespace regge
