#pragma once

#include "cuntzlab/linalg.hpp"
#include "cuntzlab/scalar.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cuntzlab {

/// CUNTZLAB_SEED when set, else the fallback.
std::uint64_t env_seed(std::uint64_t fallback = 20240601);

using Rng = std::mt19937_64;

/// Unit vector in C^n. Exact mode uses inverse stereographic projection of a
/// random rational point, so the result lies exactly on the sphere.
template <class F>
std::vector<F> random_unit_vector(Rng& rng, std::size_t n);

/// Unitary n×n matrix. Exact mode uses the Cayley transform (I-K)(I+K)^{-1}
/// of a random skew-Hermitian rational K.
template <class F>
Matrix<F> random_unitary(Rng& rng, std::size_t n);

/// Unit-modulus phase. Exact mode draws from rational points on the circle.
template <class F>
F random_phase(Rng& rng);

}  // namespace cuntzlab
