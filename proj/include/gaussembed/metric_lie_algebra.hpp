#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "gaussembed/errors.hpp"

namespace gaussembed {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Structure constants of a 3-dimensional algebra: c(k,i,j) is the
/// coefficient of e_k in [e_i, e_j].  Stored densely (27 reals), indices
/// are 1-based to match the bracket notation.  Antisymmetry in (i,j) is
/// maintained by set_bracket and validated by from_flat.
class StructureTensor {
public:
    StructureTensor() = default;

    double c(int k, int i, int j) const { return data_[offset(k, i, j)]; }

    // Writes c(k,i,j) = value and c(k,j,i) = -value.  Rejects i == j with
    // a nonzero value.
    void set_bracket(int k, int i, int j, double value);

    // Flat layout is row-major in (k,i,j): c[1][1][1] ... c[3][3][3].
    static StructureTensor from_flat(const std::array<double, 27>& flat);
    std::array<double, 27> to_flat() const;

    double max_abs() const;

private:
    static int offset(int k, int i, int j) { return ((k - 1) * 3 + (i - 1)) * 3 + (j - 1); }
    std::array<double, 27> data_{};
};

/// Inner product on the algebra, as its Gram matrix in the given basis.
struct InnerProduct {
    Mat3 gram{};

    static InnerProduct identity();
    // Validates symmetry and positive definiteness (leading principal minors > 0).
    static InnerProduct from_flat(const std::array<double, 9>& flat);
};

/// Orthonormal-frame bracket coefficients
///   [e1,e2] = a e2 + 2b e3,  [e1,e3] = 2c e2 + d e3,  [e2,e3] = 2t e1,
/// with (a+d)t = 0 (rejected otherwise; the bracket is not a Lie algebra
/// without it).
class CanonicalFrame {
public:
    CanonicalFrame(double a, double b, double c, double d, double t);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double t() const { return t_; }

private:
    double a_, b_, c_, d_, t_;
};

enum class Family {
    Abelian,            // R^3
    Heisenberg,         // h3
    Solvable,           // r3, normal form with lambda > 0
    SolvableAlpha,      // r3,alpha, -1 <= alpha <= 1 (alpha = 1 is r3,1)
    SolvablePrimeAlpha, // r3',alpha, alpha >= 0, lambda >= 1
    Simple,             // sl2(R) / so(3) via (u, v)
};

const char* family_name(Family f);
// Parses a CLI family name ("abelian", "h3", "r3", "r3-alpha",
// "r3-prime-alpha", "simple"); throws ParseError on anything else.
Family family_from_name(const std::string& name);

/// A point of one of the normal-form families.  Construct through the
/// factories, which enforce the parameter ranges.
struct FamilyPoint {
    Family family = Family::Abelian;
    double alpha = 0.0;
    double lambda = 0.0;
    double u = 0.0;
    double v = 0.0;

    static FamilyPoint abelian();
    static FamilyPoint heisenberg();
    static FamilyPoint solvable(double lambda);                       // lambda > 0
    static FamilyPoint solvable_alpha(double alpha, double lambda);   // -1 <= alpha <= 1
    static FamilyPoint solvable_prime_alpha(double alpha, double lambda); // alpha >= 0, lambda >= 1
    static FamilyPoint simple(double u, double v);                    // (u+v)/2 > 0, u != v
};

// Normal-form bracket of the family point as canonical-frame coefficients.
CanonicalFrame canonical_frame_of(const FamilyPoint& point);

// Dense structure constants of the canonical frame's bracket.
StructureTensor structure_tensor_of(const CanonicalFrame& frame);

struct OrthonormalizeResult {
    StructureTensor structure;  // bracket in the orthonormalized basis
    Mat3 basis_change;          // B with B^T gram B = I; columns are the new basis
};

// Gram-Schmidt in index order e1, e2, e3 against the given inner product.
// Throws NotPositiveDefinite if a pivot is <= 0.
OrthonormalizeResult orthonormalize(const StructureTensor& structure, const InnerProduct& ip);

// Maximum absolute Jacobi-identity violation over all index choices;
// 0 (to rounding) for genuine Lie algebras.
double jacobi_check(const StructureTensor& structure);

// Plain-text readers for the CLI --structure/--gram flags: 27 (resp. 9)
// whitespace-separated reals.  Throw ParseError on malformed input.
StructureTensor read_structure_file(const std::string& path);
InnerProduct read_gram_file(const std::string& path);
StructureTensor read_structure_stream(std::istream& in);
InnerProduct read_gram_stream(std::istream& in);

}  // namespace gaussembed
