#ifndef WILDRED_LINALG_HPP
#define WILDRED_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "wildred/rat.hpp"

namespace wildred {

using Vec = std::vector<Rat>;

/// Dense exact-rational matrix. Row-major.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(const Rat& c) const;
    Vec operator*(const Vec& v) const;
    Mat transpose() const;

    bool is_zero() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Exact rank via Gaussian elimination.
std::size_t rank(Mat m);

/// Determinant (square input).
Rat det(Mat m);

/// Inverse; throws invariant_violation if singular.
Mat inverse(const Mat& m);

/// Solve m x = b exactly; returns one solution, or nullopt if inconsistent.
std::optional<Vec> solve(Mat m, Vec b);

/// Basis of the right nullspace {x : m x = 0}.
std::vector<Vec> nullspace(const Mat& m);

/// Characteristic polynomial coefficients c_0..c_n (monic: c_n = 1) of a
/// square matrix, via the Faddeev-LeVerrier recursion.
std::vector<Rat> char_poly(const Mat& m);

// ---- Dense univariate polynomial helpers (coefficient vectors, c[i] = coeff of x^i) ----

std::vector<Rat> poly_derivative(const std::vector<Rat>& p);
std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b);
Rat poly_eval(const std::vector<Rat>& p, const Rat& x);

/// True iff p is squarefree (gcd(p, p') constant).
bool poly_squarefree(const std::vector<Rat>& p);

/// Squarefree part p / gcd(p, p'), made monic.
std::vector<Rat> poly_squarefree_part(const std::vector<Rat>& p);

/// Evaluate a polynomial at a square matrix.
Mat poly_eval_matrix(const std::vector<Rat>& p, const Mat& m);

/// An operator is semisimple iff the squarefree part of its characteristic
/// polynomial annihilates it (the minimal polynomial is then squarefree).
bool matrix_semisimple(const Mat& m);

/// All rational roots of p (with multiplicity discarded), by the rational
/// root theorem applied to the integer-scaled polynomial.
std::vector<Rat> rational_roots(const std::vector<Rat>& p);

} // namespace wildred

#endif
