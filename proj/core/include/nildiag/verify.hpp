#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nildiag/matrix.hpp"
#include "nildiag/poly.hpp"
#include "nildiag/splitter.hpp"

// Independent checking. Only field, polynomial and matrix arithmetic is used
// here; nothing from the block constructions or the canonical form.

namespace nildiag {

struct CheckReport {
    bool sum_ok = false;
    bool square_zero_ok = false;
    /// Set only when the certificate claims diagonalizability.
    std::optional<bool> diagonalizable_ok;
    bool potency_ok = false;
    std::uint64_t potency_claimed = 0;
    /// Eigenvalues of D with multiplicities, when D is diagonalizable.
    std::vector<Root> eigenvalues;
    std::vector<std::string> failures;

    bool all_ok() const { return failures.empty(); }
};

/// Minimal polynomial from the first linear dependence among I, M, M^2, ...
Poly minimal_polynomial(const Mat& m);

/// det(xI - M) by Berkowitz's division-free recurrence.
Poly characteristic_polynomial(const Mat& m);

/// Re-derives every claim of `cert` for the matrix `a`. Failures are reported,
/// never thrown, except a field or order mismatch (PreconditionError).
CheckReport check_certificate(const Mat& a, const SplitCertificate& cert);

struct OracleResult {
    bool exists = false;
    std::optional<Mat> witness_e;  ///< first E in bit-pattern order
    std::uint64_t candidates = 0;
};

/// Over GF(2), order <= 4: is there E with E^potency = E and (A + E)^nil_index_max = 0?
/// Candidates are enumerated as bit patterns with bit n*r + c equal to E(r, c).
OracleResult brute_force_exists(const Mat& a, unsigned nil_index_max, unsigned potency);

/// Streams every n x n matrix N with N^2 = 0 and returns the count. Matrix
/// index i has entry k (row-major) equal to base-q digit k of i.
std::uint64_t enumerate_square_zero(std::size_t n, const FieldSpec& field,
                                    const std::function<void(const Mat&)>& sink = {});

}  // namespace nildiag
