#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nildiag/matrix.hpp"
#include "nildiag/poly.hpp"

namespace nildiag::tools {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs acceptance criteria 1..9 (or those in `only`). Fully determined by
/// `seed`. Progress lines go to `log` when it is non-null.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::set<int>& only = {},
                                            std::ostream* log = nullptr);

/// "PASS  3  potent4-f2 suite  (16000 instances) [1.2 s]"
std::string format_result(const CriterionResult& r, bool with_timing = true);

// Random instances shared with tests and benchmarks.
using Rng = std::mt19937_64;
Fe random_element(const FieldSpec& f, Rng& rng);
Mat random_matrix(const FieldSpec& f, std::size_t n, Rng& rng);
Mat random_invertible(const FieldSpec& f, std::size_t n, Rng& rng);
/// Monic of degree n with random lower coefficients.
Poly random_monic(const FieldSpec& f, std::size_t n, Rng& rng);
/// P (C(f_1) + ... + C(f_k)) P^{-1} with f_i | f_{i+1}, at least two factors
/// when n >= 2, so the input is derogatory.
Mat random_derogatory(const FieldSpec& f, std::size_t n, Rng& rng);

}  // namespace nildiag::tools
