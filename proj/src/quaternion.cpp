#include "quatkit/quaternion.hpp"

#include <cstdlib>

#include "quatkit/error.hpp"

namespace quatkit {

ImaginaryUnit::ImaginaryUnit(const Vec3& direction, double tolerance) : dir_(direction) {
  const double len = length(direction);
  if (!std::isfinite(len) || std::abs(len - 1.0) > tolerance) {
    throw Error(ErrorKind::Structure, "imaginary unit must have unit length",
                std::abs(len - 1.0));
  }
}

ImaginaryUnit ImaginaryUnit::normalized(const Vec3& direction) {
  const double len = length(direction);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw Error(ErrorKind::Structure, "cannot normalise a zero direction");
  }
  return ImaginaryUnit({direction[0] / len, direction[1] / len, direction[2] / len});
}

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

namespace {

// For orthogonal pure units, i*j is the pure quaternion i x j.
ImaginaryUnit product_unit(const ImaginaryUnit& i, const ImaginaryUnit& j, double tolerance) {
  const double d = dot(i.direction(), j.direction());
  if (std::abs(d) > tolerance) {
    throw Error(ErrorKind::Structure, "frame units must be orthogonal", std::abs(d));
  }
  return ImaginaryUnit::normalized(cross(i.direction(), j.direction()));
}

}  // namespace

Frame::Frame(const ImaginaryUnit& i, const ImaginaryUnit& j, double tolerance)
    : i_(i), j_(j), k_(product_unit(i, j, tolerance)) {}

Frame Frame::standard() { return Frame(ImaginaryUnit::e1(), ImaginaryUnit::e2()); }

std::array<double, 4> Frame::coordinates(const Quaternion& q) const {
  const Vec3 v = q.imag();
  return {q.w, dot(v, i_.direction()), dot(v, j_.direction()), dot(v, k_.direction())};
}

Quaternion Frame::compose(const std::array<double, 4>& c) const {
  const Vec3& i = i_.direction();
  const Vec3& j = j_.direction();
  const Vec3& k = k_.direction();
  return {c[0], c[1] * i[0] + c[2] * j[0] + c[3] * k[0],
          c[1] * i[1] + c[2] * j[1] + c[3] * k[1],
          c[1] * i[2] + c[2] * j[2] + c[3] * k[2]};
}

Quaternion Frame::embed(Complex z) const {
  return compose({z.real(), z.imag(), 0.0, 0.0});
}

Complex Frame::project(const Quaternion& q) const {
  return {q.w, dot(q.imag(), i_.direction())};
}

// (a + b i) + (c + d i) j = a + b i + c j + d k.
SymplecticPair symplectic_split(const Quaternion& q, const Frame& f) {
  const auto c = f.coordinates(q);
  return {Complex(c[0], c[1]), Complex(c[2], c[3])};
}

Quaternion symplectic_join(const SymplecticPair& s, const Frame& f) {
  return f.compose({s.z1.real(), s.z1.imag(), s.z2.real(), s.z2.imag()});
}

Frame frame_complete(const ImaginaryUnit& i) {
  const Vec3& d = i.direction();
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(d[a]) < std::abs(d[axis])) axis = a;
  }
  Vec3 j{0.0, 0.0, 0.0};
  j[axis] = 1.0;
  for (int pass = 0; pass < 2; ++pass) {
    const double overlap = dot(j, d);
    for (int a = 0; a < 3; ++a) j[a] -= overlap * d[a];
  }
  return Frame(i, ImaginaryUnit::normalized(j));
}

Quaternion sphere_representative(const Quaternion& q, const ImaginaryUnit& i) {
  const double im = length(q.imag());
  const Vec3& d = i.direction();
  return {q.w, im * d[0], im * d[1], im * d[2]};
}

Quaternion align_units(const ImaginaryUnit& lambda, const ImaginaryUnit& target) {
  const Quaternion h = kOne - lambda.quaternion() * target.quaternion();
  const double len = abs(h);
  if (len > 1e-6) return h / len;
  // lambda = -target: any unit orthogonal to target conjugates one to the other.
  return frame_complete(target).j().quaternion();
}

}  // namespace quatkit
