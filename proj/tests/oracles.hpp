#pragma once

// Reference implementations used only by tests. Each one computes the same
// quantity as a library routine by a different, more literal route.

#include <cmath>
#include <vector>

#include "opineq/generators.hpp"
#include "opineq/hilbert_module.hpp"
#include "opineq/transformer.hpp"

namespace oracle {

using opineq::CMatrix;
using opineq::Complex;
using opineq::ModuleContext;
using opineq::ModuleElement;

/// x^{⊗k} materialized in A^{n^k}: slot (s1..sk) holds x_{s1}·…·x_{sk}
/// with weight w_{s1}·…·w_{sk}. The interior inner product then reduces to
/// the plain weighted sum, ⟨x⊗u, y⊗v⟩ = ⟨u, ⟨x,y⟩ v⟩.
inline ModuleElement tensor_power(const ModuleElement& x, int k) {
  std::vector<CMatrix> parts{opineq::identity(x.dim())};
  std::vector<double> weights{1.0};
  for (int level = 0; level < k; ++level) {
    std::vector<CMatrix> next_parts;
    std::vector<double> next_weights;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t s = 0; s < x.length(); ++s) {
        next_parts.push_back(x[s] * parts[i]);
        next_weights.push_back(weights[i] * x.weight(s));
      }
    parts = std::move(next_parts);
    weights = std::move(next_weights);
  }
  return ModuleElement(ModuleContext{x.dim(), weights}, parts);
}

/// ⟨x^{⊗k}, a y^{⊗k}⟩ on the materialized tensor power.
inline CMatrix nested_power(const ModuleElement& x, const ModuleElement& y, const CMatrix& a, int k) {
  if (k == 0) return a;
  return opineq::inner(tensor_power(x, k), opineq::left_act(a, tensor_power(y, k)));
}

/// Matrix of T built column by column from its action on the basis E_ij.
inline CMatrix matrix_of(const opineq::ElementaryOperator& t) {
  const Eigen::Index d = t.dim();
  CMatrix rep(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      rep.col(j * d + i) = opineq::vec(opineq::apply(t, e));
    }
  return rep;
}

/// Partial sums Σ_{n≤N} T^n(I) of the Fock Gram series.
inline CMatrix fock_partial_sum(const ModuleElement& z, int terms) {
  const opineq::ElementaryOperator t(z, z);
  CMatrix term = opineq::identity(z.dim());
  CMatrix sum = term;
  for (int n = 1; n < terms; ++n) {
    term = opineq::apply(t, term);
    sum += term;
  }
  return sum;
}

/// (1 − t)^α, the closed form of Σ (−1)^n C(α,n) t^n.
inline double scalar_fractional(double alpha, double t) { return std::pow(1.0 - t, alpha); }

/// Tuple whose single slot is `m`, unit weight.
inline ModuleElement single(const CMatrix& m) {
  return ModuleElement(ModuleContext::uniform(m.rows(), 1), {m});
}

inline ModuleElement scalar_tuple(Eigen::Index d, std::size_t n, Complex c) {
  return ModuleElement::constant(ModuleContext::uniform(d, n), c * opineq::identity(d));
}

/// Gaussian test matrix with a fixed seed.
inline CMatrix gaussian(std::uint64_t seed, Eigen::Index d) { return opineq::gen_gaussian(seed, d); }

inline double rel_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

}  // namespace oracle
