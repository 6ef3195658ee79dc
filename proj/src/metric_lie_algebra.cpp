#include "gaussembed/metric_lie_algebra.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gaussembed {

void StructureTensor::set_bracket(int k, int i, int j, double value) {
    if (i == j) {
        if (value != 0.0) throw PreconditionViolated("set_bracket: [e_i, e_i] must vanish");
        return;
    }
    data_[offset(k, i, j)] = value;
    data_[offset(k, j, i)] = -value;
}

StructureTensor StructureTensor::from_flat(const std::array<double, 27>& flat) {
    StructureTensor s;
    s.data_ = flat;
    double scale = s.max_abs();
    double tol = 1e-9 * std::max(1.0, scale);
    for (int k = 1; k <= 3; ++k)
        for (int i = 1; i <= 3; ++i)
            for (int j = i; j <= 3; ++j) {
                double forward = s.c(k, i, j);
                double backward = s.c(k, j, i);
                if (std::abs(forward + backward) > tol)
                    throw ParseError("structure tensor is not antisymmetric in (i,j)");
                // Symmetrize exactly so downstream code sees c(k,i,j) == -c(k,j,i).
                double clean = (i == j) ? 0.0 : 0.5 * (forward - backward);
                s.data_[offset(k, i, j)] = clean;
                s.data_[offset(k, j, i)] = -clean;
            }
    return s;
}

std::array<double, 27> StructureTensor::to_flat() const { return data_; }

double StructureTensor::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

InnerProduct InnerProduct::identity() {
    InnerProduct ip;
    for (int i = 0; i < 3; ++i) ip.gram[i][i] = 1.0;
    return ip;
}

InnerProduct InnerProduct::from_flat(const std::array<double, 9>& flat) {
    InnerProduct ip;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ip.gram[i][j] = flat[i * 3 + j];
    double scale = 0.0;
    for (double x : flat) scale = std::max(scale, std::abs(x));
    double tol = 1e-9 * std::max(1.0, scale);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(ip.gram[i][j] - ip.gram[j][i]) > tol)
                throw ParseError("Gram matrix is not symmetric");
            double clean = 0.5 * (ip.gram[i][j] + ip.gram[j][i]);
            ip.gram[i][j] = ip.gram[j][i] = clean;
        }
    const Mat3& g = ip.gram;
    double m1 = g[0][0];
    double m2 = g[0][0] * g[1][1] - g[0][1] * g[0][1];
    double m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[1][2]) -
                g[0][1] * (g[0][1] * g[2][2] - g[1][2] * g[0][2]) +
                g[0][2] * (g[0][1] * g[1][2] - g[1][1] * g[0][2]);
    if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0))
        throw NotPositiveDefinite("Gram matrix is not positive definite");
    return ip;
}

CanonicalFrame::CanonicalFrame(double a, double b, double c, double d, double t)
    : a_(a), b_(b), c_(c), d_(d), t_(t) {
    if ((a + d) * t != 0.0)
        throw PreconditionViolated("canonical frame requires (a+d)t = 0");
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Abelian: return "abelian";
        case Family::Heisenberg: return "h3";
        case Family::Solvable: return "r3";
        case Family::SolvableAlpha: return "r3-alpha";
        case Family::SolvablePrimeAlpha: return "r3-prime-alpha";
        case Family::Simple: return "simple";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "abelian" || name == "euclidean") return Family::Abelian;
    if (name == "h3") return Family::Heisenberg;
    if (name == "r3") return Family::Solvable;
    if (name == "r3-alpha") return Family::SolvableAlpha;
    if (name == "r3-prime-alpha") return Family::SolvablePrimeAlpha;
    if (name == "simple") return Family::Simple;
    throw ParseError("unknown family '" + name +
                     "' (expected abelian, h3, r3, r3-alpha, r3-prime-alpha or simple)");
}

FamilyPoint FamilyPoint::abelian() { return FamilyPoint{Family::Abelian, 0, 0, 0, 0}; }

FamilyPoint FamilyPoint::heisenberg() { return FamilyPoint{Family::Heisenberg, 0, 0, 0, 0}; }

FamilyPoint FamilyPoint::solvable(double lambda) {
    if (!(lambda > 0.0)) throw InvalidPoint("r3 requires lambda > 0");
    return FamilyPoint{Family::Solvable, 0, lambda, 0, 0};
}

FamilyPoint FamilyPoint::solvable_alpha(double alpha, double lambda) {
    // alpha = 1 is the r3,1 point; its metric is unique up to isometry and
    // scaling and the bracket below is independent of lambda there.
    if (!(alpha >= -1.0 && alpha <= 1.0)) throw InvalidPoint("r3,alpha requires -1 <= alpha <= 1");
    if (!std::isfinite(lambda)) throw InvalidPoint("r3,alpha requires finite lambda");
    return FamilyPoint{Family::SolvableAlpha, alpha, lambda, 0, 0};
}

FamilyPoint FamilyPoint::solvable_prime_alpha(double alpha, double lambda) {
    if (!(alpha >= 0.0)) throw InvalidPoint("r3',alpha requires alpha >= 0");
    if (!(lambda >= 1.0)) throw InvalidPoint("r3',alpha requires lambda >= 1");
    return FamilyPoint{Family::SolvablePrimeAlpha, alpha, lambda, 0, 0};
}

FamilyPoint FamilyPoint::simple(double u, double v) {
    if (!((u + v) / 2.0 > 0.0)) throw InvalidPoint("simple family requires (u+v)/2 > 0");
    if ((-u + v) / 2.0 == 0.0) throw InvalidPoint("simple family requires u != v");
    return FamilyPoint{Family::Simple, 0, 0, u, v};
}

CanonicalFrame canonical_frame_of(const FamilyPoint& p) {
    switch (p.family) {
        case Family::Abelian:
            return CanonicalFrame(0, 0, 0, 0, 0);
        case Family::Heisenberg:
            // [e1,e2] = e3  ==>  2b = 1
            return CanonicalFrame(0, 0.5, 0, 0, 0);
        case Family::Solvable:
            // [x1,x2] = x2 + 2 lambda x3, [x1,x3] = x3
            return CanonicalFrame(1, p.lambda, 0, 1, 0);
        case Family::SolvableAlpha:
            // [x1,x2] = x2 + 2 lambda (alpha-1) x3, [x1,x3] = alpha x3
            return CanonicalFrame(1, p.lambda * (p.alpha - 1.0), 0, p.alpha, 0);
        case Family::SolvablePrimeAlpha:
            // [x1,x2] = alpha x2 - lambda x3, [x1,x3] = (1/lambda) x2 + alpha x3
            return CanonicalFrame(p.alpha, -p.lambda / 2.0, 1.0 / (2.0 * p.lambda), p.alpha, 0);
        case Family::Simple:
            // [x1,x2] = (-u+v)/2 x3, [x1,x3] = -(u+v)/2 x2, [x2,x3] = x1
            return CanonicalFrame(0, (p.v - p.u) / 4.0, -(p.u + p.v) / 4.0, 0, 0.5);
    }
    throw InvalidPoint("unhandled family");
}

StructureTensor structure_tensor_of(const CanonicalFrame& f) {
    StructureTensor s;
    s.set_bracket(2, 1, 2, f.a());
    s.set_bracket(3, 1, 2, 2.0 * f.b());
    s.set_bracket(2, 1, 3, 2.0 * f.c());
    s.set_bracket(3, 1, 3, f.d());
    s.set_bracket(1, 2, 3, 2.0 * f.t());
    return s;
}

OrthonormalizeResult orthonormalize(const StructureTensor& structure, const InnerProduct& ip) {
    // Cholesky gram = L L^T; B = L^{-T} is the Gram-Schmidt change of basis
    // in index order e1, e2, e3.
    const Mat3& g = ip.gram;
    Mat3 L{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = g[i][j];
            for (int k = 0; k < j; ++k) sum -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(sum > 0.0)) throw NotPositiveDefinite("orthonormalize: pivot <= 0");
                L[i][i] = std::sqrt(sum);
            } else {
                L[i][j] = sum / L[j][j];
            }
        }
    }
    // Invert L^T (upper triangular) by back substitution.
    Mat3 B{};
    for (int col = 0; col < 3; ++col) {
        std::array<double, 3> x{};
        x[col] = 1.0;
        for (int row = 2; row >= 0; --row) {
            double sum = x[row];
            for (int k = row + 1; k < 3; ++k) sum -= L[k][row] * x[k];  // (L^T)[row][k] = L[k][row]
            x[row] = sum / L[row][row];
        }
        for (int row = 0; row < 3; ++row) B[row][col] = x[row];
    }
    // New basis f_i = sum_m B[m][i] e_m, so
    //   c'(l,i,j) = sum_{k,m,n} Binv[l][k] B[m][i] B[n][j] c(k,m,n),
    // and B^{-1} = L^T.
    OrthonormalizeResult result;
    result.basis_change = B;
    for (int l = 1; l <= 3; ++l)
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) {
                double sum = 0.0;
                for (int k = 1; k <= 3; ++k) {
                    double binv_lk = L[k - 1][l - 1];  // (L^T)[l][k]
                    if (binv_lk == 0.0) continue;
                    double inner = 0.0;
                    for (int m = 1; m <= 3; ++m)
                        for (int n = 1; n <= 3; ++n) {
                            double cv = structure.c(k, m, n);
                            if (cv != 0.0) inner += B[m - 1][i - 1] * B[n - 1][j - 1] * cv;
                        }
                    sum += binv_lk * inner;
                }
                result.structure.set_bracket(l, i, j, sum);
            }
    return result;
}

double jacobi_check(const StructureTensor& s) {
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int l = 1; l <= 3; ++l)
                for (int m = 1; m <= 3; ++m) {
                    double sum = 0.0;
                    for (int k = 1; k <= 3; ++k)
                        sum += s.c(k, i, j) * s.c(m, k, l) + s.c(k, j, l) * s.c(m, k, i) +
                               s.c(k, l, i) * s.c(m, k, j);
                    worst = std::max(worst, std::abs(sum));
                }
    return worst;
}

namespace {

template <std::size_t N>
std::array<double, N> read_reals(std::istream& in, const char* what) {
    std::array<double, N> values{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!(in >> values[i])) {
            std::ostringstream msg;
            msg << what << ": expected " << N << " reals, got " << i;
            throw ParseError(msg.str());
        }
    }
    double trailing;
    if (in >> trailing) throw ParseError(std::string(what) + ": trailing data after expected values");
    return values;
}

}  // namespace

StructureTensor read_structure_stream(std::istream& in) {
    return StructureTensor::from_flat(read_reals<27>(in, "structure tensor"));
}

InnerProduct read_gram_stream(std::istream& in) {
    return InnerProduct::from_flat(read_reals<9>(in, "Gram matrix"));
}

StructureTensor read_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open structure file '" + path + "'");
    return read_structure_stream(in);
}

InnerProduct read_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open Gram file '" + path + "'");
    return read_gram_stream(in);
}

}  // namespace gaussembed
