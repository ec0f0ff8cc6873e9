#pragma once

// Quaternion scalars, imaginary units and symplectic frames.
//
// Sign convention: e1*e2 = +e3 (and cyclic). Every product in the library
// goes through Quaternion::operator*, so this is the only place it is fixed.

#include <array>
#include <cmath>
#include <complex>

namespace quatkit {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}

  static constexpr Quaternion pure(const Vec3& v) { return {0.0, v[0], v[1], v[2]}; }

  constexpr double real() const { return w; }
  constexpr Vec3 imag() const { return {x, y, z}; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion& operator*=(Quaternion& p, const Quaternion& q) { return p = p * q; }

constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) { return p * q; }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion qconj(const Quaternion& q) { return conj(q); }

constexpr double norm2(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}
inline double abs(const Quaternion& q) { return std::sqrt(norm2(q)); }
inline double qnorm(const Quaternion& q) { return abs(q); }

inline Quaternion inverse(const Quaternion& q) { return conj(q) / norm2(q); }

inline constexpr Quaternion kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion kE1{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kE2{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kE3{0.0, 0.0, 0.0, 1.0};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Unit purely imaginary quaternion; squares to -1.
class ImaginaryUnit {
 public:
  // Throws Error(Structure) unless |direction| = 1 within `tolerance`.
  explicit ImaginaryUnit(const Vec3& direction, double tolerance = 1e-12);

  // Normalises an arbitrary nonzero direction.
  static ImaginaryUnit normalized(const Vec3& direction);
  static ImaginaryUnit e1() { return ImaginaryUnit({1.0, 0.0, 0.0}); }
  static ImaginaryUnit e2() { return ImaginaryUnit({0.0, 1.0, 0.0}); }
  static ImaginaryUnit e3() { return ImaginaryUnit({0.0, 0.0, 1.0}); }

  const Vec3& direction() const { return dir_; }
  Quaternion quaternion() const { return Quaternion::pure(dir_); }
  operator Quaternion() const { return quaternion(); }

  bool operator==(const ImaginaryUnit&) const = default;

 private:
  Vec3 dir_;
};

// Orthonormal imaginary triple (i, j, k = i*j).
class Frame {
 public:
  Frame(const ImaginaryUnit& i, const ImaginaryUnit& j, double tolerance = 1e-12);

  static Frame standard();

  const ImaginaryUnit& i() const { return i_; }
  const ImaginaryUnit& j() const { return j_; }
  const ImaginaryUnit& k() const { return k_; }

  // Coordinates (a0, a1, a2, a3) with q = a0 + a1 i + a2 j + a3 k.
  std::array<double, 4> coordinates(const Quaternion& q) const;
  Quaternion compose(const std::array<double, 4>& coords) const;

  // a + b i  for a complex number a + b sqrt(-1).
  Quaternion embed(Complex z) const;
  // Inverse of embed on C_i; the components along j and k are dropped.
  Complex project(const Quaternion& q) const;

  bool operator==(const Frame& o) const { return i_ == o.i_ && j_ == o.j_; }

 private:
  ImaginaryUnit i_;
  ImaginaryUnit j_;
  ImaginaryUnit k_;
};

struct SymplecticPair {
  Complex z1;
  Complex z2;
};

// q = z1 + z2*j with z1, z2 in C_i of the frame.
SymplecticPair symplectic_split(const Quaternion& q, const Frame& f);
Quaternion symplectic_join(const SymplecticPair& s, const Frame& f);

// Deterministic completion: j is the coordinate axis least aligned with i
// (lowest index on ties) with the i-component projected out.
Frame frame_complete(const ImaginaryUnit& i);

// q0 + i*|Im q|, the representative of {h q h^-1 : |h| = 1} in the closed
// upper half-plane of C_i.
Quaternion sphere_representative(const Quaternion& q, const ImaginaryUnit& i);

// Unit quaternion h with lambda*h = h*target, for unit imaginary lambda.
Quaternion align_units(const ImaginaryUnit& lambda, const ImaginaryUnit& target);

}  // namespace quatkit
