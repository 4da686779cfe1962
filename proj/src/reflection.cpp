#include "mrt/reflection.hpp"

namespace mrt {

StrictMarking canonical_marking(StrictMarking m) {
  IntVec b = m.b;
  if (canonical_sign(b) < 0) return {b, negated(m.beta)};
  return m;
}

bool marking_valid_for(const IntMatrix& sigma, const StrictMarking& m) {
  if (static_cast<int>(m.b.size()) != sigma.dim()) return false;
  if (rank_one_reflection(m.b, m.beta) != sigma) return false;
  return dot(m.beta, m.b) == -2;
}

Reflection make_reflection(const IntMatrix& m) {
  if (!is_reflection(m)) throw value_error("matrix is not a reflection");
  return Reflection{m, is_trivial_mod2(m)};
}

std::vector<Reflection> reflections_in(const FiniteMatrixGroup& g) {
  std::vector<Reflection> out;
  out.reserve(g.reflections().size());
  for (int e : g.reflections()) out.push_back(Reflection{g.mat(e), g.reflection_trivial_mod2(g.sigma_index(e))});
  return out;
}

IntVec negative_eigenvector(const IntMatrix& sigma) {
  auto basis = eigenlattice(sigma, -1);
  check(basis.size() == 1, "a reflection has a rank-1 negative eigenlattice");
  IntVec b = basis[0];
  canonical_sign(b);
  return b;
}

std::vector<IntVec> eigenlattice(const IntMatrix& sigma, int sign) {
  if (!is_reflection(sigma)) throw value_error("eigenlattice: not a reflection");
  // sign = -1: ker(1 + sigma); sign = +1: ker(1 - sigma)
  IntMatrix m = sign < 0 ? IntMatrix::identity(sigma.dim()) + sigma
                         : IntMatrix::identity(sigma.dim()) - sigma;
  auto basis = kernel_basis(rows_of(m));
  for (auto& v : basis) canonical_sign(v);
  return basis;
}

namespace {

// beta determined by sigma = I + b beta^T for the given b (entries of
// sigma - I are divisible columnwise by b).
std::optional<IntVec> beta_for(const IntMatrix& sigma, const IntVec& b) {
  int n = sigma.dim();
  int lead = -1;
  for (int i = 0; i < n; ++i)
    if (b[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) return std::nullopt;
  IntVec beta(n);
  for (int j = 0; j < n; ++j) {
    Int num = sigma.at(lead, j) - Int(lead == j ? 1 : 0);
    if (num % b[lead] != 0) return std::nullopt;
    beta[j] = num / b[lead];
  }
  StrictMarking cand{b, beta};
  if (!marking_valid_for(sigma, cand)) return std::nullopt;
  return beta;
}

}  // namespace

std::vector<StrictMarking> markings_of(const IntMatrix& sigma) {
  if (!is_reflection(sigma)) throw value_error("markings_of: not a reflection");
  IntVec b0 = negative_eigenvector(sigma);
  std::vector<StrictMarking> out;
  auto beta0 = beta_for(sigma, b0);
  check(beta0.has_value(), "the kernel generator of 1+sigma always carries a marking");
  out.push_back(canonical_marking({b0, *beta0}));
  if (is_trivial_mod2(sigma)) {
    IntVec b1 = scaled(b0, 2);
    auto beta1 = beta_for(sigma, b1);
    check(beta1.has_value(), "a mod-2 trivial reflection carries the doubled marking");
    out.push_back(canonical_marking({b1, *beta1}));
  }
  return out;
}

StrictMarking conjugate_marking(const IntMatrix& w, const StrictMarking& m) {
  return conjugate_marking(w, w.inverse_unimodular(), m);
}

StrictMarking conjugate_marking(const IntMatrix& w, const IntMatrix& w_inv,
                                const StrictMarking& m) {
  IntVec b = w * m.b;
  IntVec beta = covector_times(m.beta, w_inv);
  return canonical_marking({b, beta});
}

}  // namespace mrt
