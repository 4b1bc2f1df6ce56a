#pragma once

#include "algpaths/complex_matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace algpaths {

/**
 * Seeded random source for all randomized drivers. One seed fully determines
 * every draw, so experiment outputs are reproducible byte for byte.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi);        // inclusive bounds
    double gaussian();                      // standard normal (Box-Muller, no cached spare)
    cplx complex_gaussian();

    ComplexMatrix gaussian_matrix(int rows, int cols);
    ComplexMatrix hermitian_gaussian(int n);
    ComplexMatrix random_unitary(int n);                       // modified Gram-Schmidt of a Gaussian
    ComplexMatrix random_invertible(int n, double spread);     // 1 + spread * Gaussian, retried until well-pivoted

private:
    std::mt19937_64 gen_;
};

} // namespace algpaths
