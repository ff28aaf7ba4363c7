#include "abeltoric/lattice.hpp"

#include "abeltoric/error.hpp"

namespace abeltoric {

bool LatticeVector::is_zero() const {
  for (const auto& c : coords) {
    if (c != 0) return false;
  }
  return true;
}

bool LatticeVector::is_primitive() const {
  Integer g = 0;
  for (const auto& c : coords) g = gcd(g, c);
  return g == 1;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  for (std::size_t i = 0; i < 4; ++i) coords[i] += o.coords[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  for (std::size_t i = 0; i < 4; ++i) coords[i] -= o.coords[i];
  return *this;
}

LatticeVector operator-(const LatticeVector& a) {
  LatticeVector r;
  for (std::size_t i = 0; i < 4; ++i) r.coords[i] = -a.coords[i];
  return r;
}

LatticeVector operator*(const Integer& k, const LatticeVector& v) {
  LatticeVector r;
  for (std::size_t i = 0; i < 4; ++i) r.coords[i] = k * v.coords[i];
  return r;
}

std::string LatticeVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ",";
    s += coords[i].get_str();
  }
  return s + ")";
}

bool DualVector::is_integral() const {
  for (const auto& c : coords) {
    if (!abeltoric::is_integral(c)) return false;
  }
  return true;
}

std::array<Integer, 4> DualVector::to_integers() const {
  std::array<Integer, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!abeltoric::is_integral(coords[i])) {
      throw Error(ErrorKind::Internal, "dual vector " + to_string() + " is not integral");
    }
    out[i] = Integer(coords[i].get_num());
  }
  return out;
}

std::string DualVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ",";
    s += coords[i].get_str();
  }
  return s + ")";
}

Rational pairing(const DualVector& m, const LatticeVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < 4; ++i) s += m.coords[i] * v.coords[i];
  return s;
}

namespace {

using Matrix4 = std::array<std::array<Integer, 4>, 4>;

Matrix4 rows_of(const Basis4& vs) {
  Matrix4 a;
  for (std::size_t i = 0; i < 4; ++i) a[i] = vs[i].coords;
  return a;
}

// Determinant of the 3x3 minor with row r and column c removed.
Integer minor3(const Matrix4& a, std::size_t r, std::size_t c) {
  std::array<std::array<const Integer*, 3>, 3> m;
  for (std::size_t i = 0, ii = 0; i < 4; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, jj = 0; j < 4; ++j) {
      if (j == c) continue;
      m[ii][jj++] = &a[i][j];
    }
    ++ii;
  }
  return *m[0][0] * (*m[1][1] * *m[2][2] - *m[1][2] * *m[2][1]) -
         *m[0][1] * (*m[1][0] * *m[2][2] - *m[1][2] * *m[2][0]) +
         *m[0][2] * (*m[1][0] * *m[2][1] - *m[1][1] * *m[2][0]);
}

Integer cofactor(const Matrix4& a, std::size_t r, std::size_t c) {
  Integer m = minor3(a, r, c);
  return ((r + c) % 2 == 0) ? m : Integer(-m);
}

Integer det(const Matrix4& a) {
  Integer d = 0;
  for (std::size_t c = 0; c < 4; ++c) {
    if (a[0][c] != 0) d += a[0][c] * cofactor(a, 0, c);
  }
  return d;
}

// Rational dual basis; m_j[k] = C_jk / det.
std::array<DualVector, 4> rational_dual(const Matrix4& a, const Integer& d) {
  std::array<DualVector, 4> out;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      out[j].coords[k] = Rational(cofactor(a, j, k), d);
      out[j].coords[k].canonicalize();
    }
  }
  return out;
}

}  // namespace

Integer det4(const LatticeVector& v1, const LatticeVector& v2, const LatticeVector& v3,
             const LatticeVector& v4) {
  return det(Matrix4{v1.coords, v2.coords, v3.coords, v4.coords});
}

Integer det4(const Basis4& vs) { return det(rows_of(vs)); }

bool is_unimodular_basis(const Basis4& vs) { return abs(det4(vs)) == 1; }

std::array<DualVector, 4> dual_basis(const Basis4& vs) {
  Matrix4 a = rows_of(vs);
  Integer d = det(a);
  if (abs(d) != 1) {
    throw Error(ErrorKind::NotABasis,
                "vectors do not form a lattice basis (determinant " + d.get_str() + ")");
  }
  return rational_dual(a, d);
}

std::array<Integer, 4> express_in_basis(const LatticeVector& v, const Basis4& basis) {
  auto duals = dual_basis(basis);
  std::array<Integer, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = Integer(pairing(duals[i], v).get_num());
  return out;
}

std::array<Rational, 4> rational_coordinates(const LatticeVector& v, const Basis4& basis) {
  Matrix4 a = rows_of(basis);
  Integer d = det(a);
  if (d == 0) throw Error(ErrorKind::NotABasis, "vectors are linearly dependent");
  auto duals = rational_dual(a, d);
  std::array<Rational, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = pairing(duals[i], v);
  return out;
}

}  // namespace abeltoric
