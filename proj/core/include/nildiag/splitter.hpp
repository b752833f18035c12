#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nildiag/matrix.hpp"
#include "nildiag/poly.hpp"

namespace nildiag {

enum class Mode {
    DiagSplit,       ///< diagonalizable + square-zero, q >= 4
    Potent4F2,       ///< 4-potent + square-zero over GF(2)
    PotentSubfield,  ///< #K-potent + square-zero for a subfield K, non-derogatory input
};

std::string_view to_string(Mode mode);
/// Accepts "diag-split", "potent4-f2", "potent-subfield".
Mode parse_mode(std::string_view text);

struct SplitOptions {
    /// Free parameter of the block constructions. When unset, the smallest
    /// admissible element in bit-pattern order is taken per block.
    std::optional<Fe> a;
    Mode mode = Mode::DiagSplit;
    /// Degree d of the subfield GF(2^d) for Mode::PotentSubfield.
    std::optional<unsigned> subfield_degree;
};

enum class AtomKind { D1, D2, D3, D4 };
std::string_view to_string(AtomKind kind);

/// One diagonal atom of a block's D, positioned by its first row in the
/// coordinates of the whole matrix's canonical basis.
struct Atom {
    AtomKind kind;
    std::size_t position;
    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Normalization {
    enum class Kind { None, Scale, Shift };
    Kind kind = Kind::None;
    /// Scale factor c (block = c * normalized) or shift b (block = normalized + b Id).
    Fe value{};
};

/// How one invariant-factor block was split.
struct BlockRecord {
    Poly factor;
    std::size_t offset = 0;
    std::string route;
    std::optional<Fe> a;
    Normalization normalization;
    std::vector<Atom> layout;
    /// Distinct eigenvalues of this block's D as named by the governing
    /// construction, ascending. Empty when the route does not name a set
    /// over the base field (GF(2) routes and the potency-3 route).
    std::vector<Fe> expected_eigenvalues;
};

/// N and D for a single companion block, in the block's own basis.
struct BlockSplit {
    Mat n;
    Mat d;
    BlockRecord record;
};

struct SplitCertificate {
    Mode mode = Mode::DiagSplit;
    Mat a;
    Mat n;
    Mat d;
    std::vector<BlockRecord> blocks;
    /// D^potency_s = D is claimed.
    std::uint64_t potency_s = 0;
    /// Diag-split only: D is diagonalizable over the base field, with these
    /// eigenvalues and algebraic multiplicities.
    bool diagonalizable = false;
    std::vector<Root> eigenvalues;
    /// Emission checks; all are true on any certificate that was returned.
    bool sum_ok = false;
    bool square_zero_ok = false;
    bool potency_ok = false;
};

/// Split of the companion matrix of a monic f over a field with q >= 4
/// (diag-split routes). Throws PreconditionError for q < 4 or an inadmissible
/// opts.a, and ConstructionError if a post-check fails.
BlockSplit split_companion(const Poly& f, const SplitOptions& opts = {});

/// GF(2) route for the companion of f: N^2 = 0 and D^4 = D, entries in GF(2).
BlockSplit split_companion_f2(const Poly& f);

/// Diagonalizable + square-zero split of any square matrix over GF(q), q >= 4.
SplitCertificate split_any(const Mat& a, const SplitOptions& opts = {});
/// 4-potent + square-zero split of any square matrix over GF(2).
SplitCertificate split_f2(const Mat& a);
/// #K-potent (or 3-potent) + square-zero split of a non-derogatory matrix,
/// with K = GF(2^d).
SplitCertificate split_subfield(const Mat& a, unsigned d, const SplitOptions& opts = {});
/// Dispatches on opts.mode.
SplitCertificate split(const Mat& a, const SplitOptions& opts);

/// Square-zero N for each trace-one monic quartic over GF(2) such that
/// (C + N)^4 = C + N, C its companion matrix. Indexed by u0 + 2 u1 + 4 u2;
/// bit 4r + c of each entry is N(r, c). Each entry is the first such N in
/// increasing bit-pattern order.
extern const std::uint16_t kF2QuarticFallback[8];

}  // namespace nildiag
