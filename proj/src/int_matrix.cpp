#include "mrt/int_matrix.hpp"

#include <sstream>

namespace mrt {

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (dim_ != o.dim_) throw value_error("matrix product: dimension mismatch");
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (static_cast<int>(v.size()) != dim_) throw value_error("matrix-vector: dimension mismatch");
  IntVec r(dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (dim_ != o.dim_) throw value_error("matrix sum: dimension mismatch");
  IntMatrix r(dim_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (dim_ != o.dim_) throw value_error("matrix difference: dimension mismatch");
  IntMatrix r(dim_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

IntMatrix IntMatrix::negated() const {
  IntMatrix r(dim_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Int IntMatrix::trace() const {
  Int t = 0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

Int IntMatrix::det() const {
  // Bareiss fraction-free elimination; exact over Z.
  int n = dim_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = t / prev;  // exact by Bareiss
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

bool IntMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (at(i, j) != Int(i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_identity_mod(const Int& m) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (fmod(at(i, j) - Int(i == j ? 1 : 0), m) != 0) return false;
  return true;
}

IntMatrix IntMatrix::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw value_error("matrix is not invertible over the integers");
  int n = dim_;
  // adjugate via cofactors is fine at these dimensions, but Gauss-Jordan over
  // rationals with an exactness check is simpler to state; use cofactors.
  IntMatrix adj(n);
  std::vector<Int> sub((n - 1) * (n - 1) + 1, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor(n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc) = at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = (n == 1) ? Int(1) : minor.det();
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(j, i) = cof;
    }
  if (d == -1) adj = adj.negated();
  return adj;
}

bool IntMatrix::operator<(const IntMatrix& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  for (size_t i = 0; i < a_.size(); ++i) {
    int c = cmp(a_[i], o.a_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string IntMatrix::key() const {
  std::ostringstream out;
  out << dim_;
  for (const Int& x : a_) out << ',' << x.get_str(16);
  return out.str();
}

Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw value_error("dot: dimension mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec negated(const IntVec& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

IntVec scaled(const IntVec& v, const Int& c) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

IntVec covector_times(const IntVec& beta, const IntMatrix& m) {
  int n = m.dim();
  if (static_cast<int>(beta.size()) != n) throw value_error("covector_times: dimension mismatch");
  IntVec r(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) r[j] += beta[i] * m.at(i, j);
  return r;
}

IntMatrix rank_one_reflection(const IntVec& b, const IntVec& beta) {
  int n = static_cast<int>(b.size());
  IntMatrix m = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) += b[i] * beta[j];
  return m;
}

int canonical_sign(IntVec& v) {
  for (const Int& x : v) {
    if (x > 0) return 1;
    if (x < 0) {
      v = negated(v);
      return -1;
    }
  }
  return 1;
}

std::string to_string(const IntVec& v) {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].get_str();
  }
  out << ')';
  return out.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out << "; ";
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j).get_str();
    }
  }
  out << ']';
  return out.str();
}

}  // namespace mrt
