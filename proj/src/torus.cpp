#include "mrt/torus.hpp"

#include <sstream>

namespace mrt {

bool TorusElement::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

bool TorusElement::operator<(const TorusElement& o) const {
  for (size_t i = 0; i < c.size(); ++i) {
    int v = cmp(c[i], o.c[i]);
    if (v != 0) return v < 0;
  }
  return false;
}

TorusElement reduce_mod1(std::vector<Rat> v) {
  for (auto& x : v) x = mod1(x);
  return TorusElement{std::move(v)};
}

TorusElement torus_add(const TorusElement& a, const TorusElement& b) {
  std::vector<Rat> v(a.c.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.c[i] + b.c[i];
  return reduce_mod1(std::move(v));
}

TorusElement torus_sub(const TorusElement& a, const TorusElement& b) {
  std::vector<Rat> v(a.c.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = a.c[i] - b.c[i];
  return reduce_mod1(std::move(v));
}

TorusElement torus_neg(const TorusElement& a) {
  std::vector<Rat> v(a.c.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = -a.c[i];
  return reduce_mod1(std::move(v));
}

TorusElement torus_scale(const Int& k, const TorusElement& a) {
  std::vector<Rat> v(a.c.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = Rat(k) * a.c[i];
  return reduce_mod1(std::move(v));
}

TorusElement torus_act(const IntMatrix& w, const TorusElement& a) {
  int n = w.dim();
  std::vector<Rat> v(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (w.at(i, j) != 0) v[i] += Rat(w.at(i, j)) * a.c[j];
  return reduce_mod1(std::move(v));
}

Int torus_order(const TorusElement& a) {
  Int l = 1;
  for (const auto& x : a.c) {
    Int d = x.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  return l;
}

TorusElement half_of(const IntVec& b) {
  std::vector<Rat> v(b.size());
  for (size_t i = 0; i < b.size(); ++i) v[i] = Rat(b[i], 2);
  return reduce_mod1(std::move(v));
}

std::string to_string(const TorusElement& t) {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < t.c.size(); ++i) {
    if (i) out << ", ";
    out << t.c[i].get_num().get_str();
    if (t.c[i].get_den() != 1) out << '/' << t.c[i].get_den().get_str();
  }
  out << ')';
  return out.str();
}

bool strongly_negative(const IntMatrix& sigma, const TorusElement& x) {
  return in_rational_span_mod_lattice(eigenlattice(sigma, -1), x.c);
}

Report validate_marked_torus(const MarkedReflectionTorus& t) {
  Report rep;
  const auto& g = *t.group;
  bool counts = t.h.size() == g.reflections().size();
  rep.add("marking-per-reflection", counts);
  if (!counts) return rep;
  bool neg = true, tor = true, nz = true;
  std::string dneg, dnz;
  for (size_t s = 0; s < t.h.size(); ++s) {
    const IntMatrix& sigma = g.mat(g.reflections()[s]);
    if (!strongly_negative(sigma, t.h[s])) {
      neg = false;
      dneg = "sigma " + std::to_string(s);
    }
    if (!torus_add(t.h[s], t.h[s]).is_zero()) tor = false;
    if (!g.reflection_trivial_mod2(static_cast<int>(s)) && t.h[s].is_zero()) {
      nz = false;
      dnz = "sigma " + std::to_string(s);
    }
  }
  rep.add("strongly-negative", neg, dneg);
  rep.add("two-torsion", tor);
  rep.add("nonzero-when-nontrivial-mod2", nz, dnz);
  bool equi = true;
  std::string det;
  for (int w = 0; equi && w < g.size(); ++w)
    for (size_t s = 0; equi && s < t.h.size(); ++s) {
      int tt = g.conj_sigma(w, static_cast<int>(s));
      if (torus_act(g.mat(w), t.h[s]) != t.h[tt]) {
        equi = false;
        det = "w=" + std::to_string(w) + " sigma=" + std::to_string(s);
      }
    }
  rep.add("marking-equivariant", equi, det);
  return rep;
}

MarkedReflectionTorus lattice_to_torus(const MarkedReflectionLattice& m) {
  MarkedReflectionTorus t;
  t.group = m.group;
  for (const auto& mk : m.marking) t.h.push_back(half_of(mk.b));
  return t;
}

MarkedReflectionLattice torus_to_lattice(const MarkedReflectionTorus& t) {
  const auto& g = *t.group;
  std::vector<StrictMarking> marking;
  for (size_t s = 0; s < t.h.size(); ++s) {
    const IntMatrix& sigma = g.mat(g.reflections()[s]);
    auto options = markings_of(sigma);
    const StrictMarking* found = nullptr;
    for (const auto& opt : options)
      if (half_of(opt.b) == t.h[s]) {
        found = &opt;
        break;
      }
    if (!found) throw value_error("torus_to_lattice: h is not the half of any marking of sigma");
    marking.push_back(*found);
  }
  return MarkedReflectionLattice{t.group, std::move(marking)};
}

}  // namespace mrt
