#include "wildred/linalg.hpp"

#include <algorithm>

#include "wildred/errors.hpp"

namespace wildred {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    ensure_invariant(rows_ == o.rows_ && cols_ == o.cols_, "Mat+: shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    ensure_invariant(rows_ == o.rows_ && cols_ == o.cols_, "Mat-: shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    ensure_invariant(cols_ == o.rows_, "Mat*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

Mat Mat::operator*(const Rat& c) const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    ensure_invariant(cols_ == v.size(), "Mat*Vec: shape mismatch");
    Vec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
}

namespace {

// Row-echelon reduction in place; returns pivot columns. If rhs != nullptr it
// receives the same row operations.
std::vector<std::size_t> row_reduce(Mat& m, Vec* rhs) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
            if (rhs) std::swap((*rhs)[p], (*rhs)[row]);
        }
        const Rat inv = Rat(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        if (rhs) (*rhs)[row] *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == 0) continue;
            const Rat f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
            if (rhs) (*rhs)[i] -= f * (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(Mat m) {
    return row_reduce(m, nullptr).size();
}

Rat det(Mat m) {
    ensure_invariant(m.rows() == m.cols(), "det: square input required");
    const std::size_t n = m.rows();
    Rat d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m.at(p, col) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        const Rat inv = Rat(1) / m.at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            const Rat f = m.at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

Mat inverse(const Mat& m) {
    ensure_invariant(m.rows() == m.cols(), "inverse: square input required");
    const std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    const auto pivots = row_reduce(aug, nullptr);
    ensure_invariant(pivots.size() == n && pivots.back() == n - 1, "inverse: singular matrix");
    Mat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

std::optional<Vec> solve(Mat m, Vec b) {
    ensure_invariant(m.rows() == b.size(), "solve: shape mismatch");
    const auto pivots = row_reduce(m, &b);
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        if (b[i] != 0) return std::nullopt;
    Vec x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
    return x;
}

std::vector<Vec> nullspace(const Mat& m_in) {
    Mat m = m_in;
    const auto pivots = row_reduce(m, nullptr);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(m.cols(), Rat(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rat> char_poly(const Mat& m) {
    ensure_invariant(m.rows() == m.cols(), "char_poly: square input required");
    const std::size_t n = m.rows();
    // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A(M_k + c_{n-k} I).
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = 1;
    Mat Mk = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mk = m * Mk;
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += Mk.at(i, i);
        const Rat ck = -tr / Rat(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) Mk.at(i, i) += ck;
    }
    return c;
}

namespace {

std::vector<Rat> poly_trim(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::vector<Rat> poly_mod(std::vector<Rat> a, const std::vector<Rat>& b) {
    // b nonzero, trimmed.
    while (a.size() >= b.size() && !(a = poly_trim(std::move(a))).empty() && a.size() >= b.size()) {
        const Rat f = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a = poly_trim(std::move(a));
    }
    return poly_trim(std::move(a));
}

std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
    std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    a = poly_trim(std::move(a));
    while (a.size() >= b.size()) {
        const Rat f = a.back() / b.back();
        const std::size_t off = a.size() - b.size();
        q[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a = poly_trim(std::move(a));
    }
    ensure_invariant(a.empty(), "poly_div_exact: nonzero remainder");
    return poly_trim(std::move(q));
}

} // namespace

std::vector<Rat> poly_derivative(const std::vector<Rat>& p) {
    std::vector<Rat> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return poly_trim(std::move(d));
}

std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        auto r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Rat lead = a.back();
        for (auto& x : a) x /= lead;
    }
    return a;
}

Rat poly_eval(const std::vector<Rat>& p, const Rat& x) {
    Rat v(0);
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

bool poly_squarefree(const std::vector<Rat>& p) {
    return poly_gcd(p, poly_derivative(p)).size() <= 1;
}

std::vector<Rat> poly_squarefree_part(const std::vector<Rat>& p) {
    const auto g = poly_gcd(p, poly_derivative(p));
    auto q = poly_div_exact(poly_trim(p), g);
    if (!q.empty()) {
        const Rat lead = q.back();
        for (auto& x : q) x /= lead;
    }
    return q;
}

Mat poly_eval_matrix(const std::vector<Rat>& p, const Mat& m) {
    const std::size_t n = m.rows();
    Mat acc(n, n);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = m * acc;
        for (std::size_t d = 0; d < n; ++d) acc.at(d, d) += p[i];
    }
    return acc;
}

bool matrix_semisimple(const Mat& m) {
    return poly_eval_matrix(poly_squarefree_part(char_poly(m)), m).is_zero();
}

std::vector<Rat> rational_roots(const std::vector<Rat>& p_in) {
    const auto p = poly_trim(p_in);
    if (p.empty()) return {};
    // Scale to integer coefficients.
    boost::multiprecision::mpz_int lcm_den = 1;
    for (const auto& c : p) {
        const auto d = boost::multiprecision::denominator(c);
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    std::vector<boost::multiprecision::mpz_int> ip;
    ip.reserve(p.size());
    for (const auto& c : p) ip.push_back(boost::multiprecision::numerator(c * Rat(lcm_den)));
    // Strip trailing zero constant terms: x = 0 is a root then.
    std::vector<Rat> roots;
    std::size_t low = 0;
    while (low < ip.size() && ip[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low >= ip.size()) return roots;
    const auto a0 = abs(ip[low]);
    const auto an = abs(ip.back());
    // Enumerate divisors of a0 and an (desk-scale inputs keep these small).
    auto divisors = [](boost::multiprecision::mpz_int v) {
        std::vector<boost::multiprecision::mpz_int> ds;
        for (boost::multiprecision::mpz_int d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                if (d * d != v) ds.push_back(v / d);
            }
        return ds;
    };
    for (const auto& pnum : divisors(a0))
        for (const auto& qden : divisors(an))
            for (int sgn : {1, -1}) {
                const Rat cand = Rat(pnum * sgn) / Rat(qden);
                if (poly_eval(p, cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

} // namespace wildred
