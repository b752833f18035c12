#pragma once

#include <vector>

#include "nildiag/matrix.hpp"
#include "nildiag/poly.hpp"

namespace nildiag {

/// Companion matrix of a monic f = x^n + u_{n-1} x^{n-1} + ... + u_0: ones on
/// the subdiagonal, (u_0, ..., u_{n-1}) in the last column.
Mat companion_of(const Poly& f);

/// True iff m is exactly a companion matrix (subdiagonal ones, zeros
/// elsewhere outside the last column).
bool is_companion(const Mat& m);

/// Rational canonical form: basis^{-1} * A * basis = blocks, where blocks is
/// the direct sum of companion_of(factors[i]) and factors[i] | factors[i+1].
struct RcfResult {
    std::vector<Poly> factors;
    Mat basis;
    Mat blocks;
};

/// Invariant factors via Smith reduction of xI - A over F[x]. The row
/// operations are replayed on generator vectors, so the module generator of
/// each cyclic summand comes out alongside its invariant factor. The result
/// is re-checked before returning.
RcfResult rcf(const Mat& a);

Poly charpoly(const Mat& a);
Poly minpoly(const Mat& a);
bool is_nonderogatory(const Mat& a);

/// Krylov matrix [v | Av | ... | A^{k-1} v].
Mat krylov(const Mat& a, const Vec& v, std::size_t k);

struct Recompanion {
    Mat basis;      ///< Q = [e1 | A e1 | ... | A^{n-1} e1]
    Mat companion;  ///< Q^{-1} A Q
};

/// Brings a matrix with cyclic vector e1 back to companion form. Throws
/// PreconditionError("not cyclic") when e1 is not cyclic; the splitter only
/// calls it on shifted or scaled companion matrices, where it always is.
Recompanion recompanion_cyclic(const Mat& a);

}  // namespace nildiag
