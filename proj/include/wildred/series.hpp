#ifndef WILDRED_SERIES_HPP
#define WILDRED_SERIES_HPP

#include <vector>

#include "wildred/errors.hpp"
#include "wildred/rat.hpp"

namespace wildred {

/// Truncated power series over the rationals: coefficient vectors of a fixed
/// length s, representing elements of Q[w]/(w^s). All operations truncate.
namespace series {

using Trunc = std::vector<Rat>;

inline Trunc zero(std::size_t s) { return Trunc(s, Rat(0)); }

inline Trunc one(std::size_t s) {
    Trunc t = zero(s);
    if (s > 0) t[0] = 1;
    return t;
}

inline Trunc add(const Trunc& a, const Trunc& b) {
    ensure_invariant(a.size() == b.size(), "series::add: length mismatch");
    Trunc r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Trunc mul(const Trunc& a, const Trunc& b) {
    ensure_invariant(a.size() == b.size(), "series::mul: length mismatch");
    Trunc r = zero(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// Multiplicative inverse of a unit (nonzero constant term).
inline Trunc inv(const Trunc& a) {
    require(!a.empty() && a[0] != 0, "series::inv: not a unit");
    Trunc r = zero(a.size());
    r[0] = Rat(1) / a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
        Rat acc(0);
        for (std::size_t j = 0; j < k; ++j) acc += r[j] * a[k - j];
        r[k] = -acc / a[0];
    }
    return r;
}

inline Trunc pow(const Trunc& a, std::size_t n) {
    Trunc r = one(a.size());
    for (std::size_t i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

/// Composition a(b(w)) for b with zero constant term.
inline Trunc compose(const Trunc& a, const Trunc& b) {
    ensure_invariant(a.size() == b.size(), "series::compose: length mismatch");
    require(b.empty() || b[0] == 0, "series::compose: inner series must vanish at 0");
    Trunc r = zero(a.size());
    Trunc bp = one(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < r.size(); ++k) r[k] += a[i] * bp[k];
        bp = mul(bp, b);
    }
    return r;
}

/// Formal derivative, same truncation length (top coefficient information is
/// lost; callers must track orders).
inline Trunc derivative(const Trunc& a) {
    Trunc r = zero(a.size());
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
    return r;
}

} // namespace series

} // namespace wildred

#endif
