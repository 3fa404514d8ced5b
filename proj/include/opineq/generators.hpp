#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "opineq/hilbert_module.hpp"
#include "opineq/inequalities.hpp"

namespace opineq {

enum class GeneratorKind { Generic, NormalCommuting, Contractive, NormalContractive, Gruss };

std::string_view to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(std::string_view name);

struct GeneratorSpec {
  std::uint64_t seed = 0;
  Eigen::Index dim = 2;  // [1, 8]
  std::size_t len = 2;   // [1, 6]
  GeneratorKind kind = GeneratorKind::Generic;
  double scale = 1.0;
  double contraction = 0.999;  // (0, 1)
  bool random_weights = false;

  void validate() const;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Seed of trial `index` under `master`; independent of every other trial.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// QR of a standard complex Gaussian matrix with R's diagonal made positive.
CMatrix gen_haar_unitary(std::uint64_t seed, Eigen::Index d);

/// d×d matrix of i.i.d. standard complex Gaussians, E|z|² = 1.
CMatrix gen_gaussian(std::uint64_t seed, Eigen::Index d);

ModuleContext gen_context(const GeneratorSpec& spec);

ModuleElement gen_element(const GeneratorSpec& spec);

/// Everything one check needs. `basis_x`/`basis_y` hold the shared unitary
/// of normal tuples so perturbations can be projected back onto normality.
struct Instance {
  std::uint64_t seed = 0;
  GeneratorKind kind = GeneratorKind::Generic;
  ModuleElement x;
  ModuleElement y;
  CMatrix a;
  std::optional<ModuleElement> e;
  std::optional<GrussBall> ball;
  std::optional<CMatrix> basis_x;
  std::optional<CMatrix> basis_y;
  double contraction = 0.999;
};

/// Draws x, y, a (and e with balls for the Grüss kind) from one seed, then
/// asserts the kind's hypotheses on the result; throws InvalidSpec if a
/// constructed instance misses them.
Instance gen_instance(const GeneratorSpec& spec);

}  // namespace opineq
