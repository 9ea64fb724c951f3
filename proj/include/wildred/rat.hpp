#ifndef WILDRED_RAT_HPP
#define WILDRED_RAT_HPP

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "wildred/errors.hpp"

namespace wildred {

/// Exact rational scalar (GMP-backed). All arithmetic in the engine is exact.
using Rat = boost::multiprecision::mpq_rational;

/// Parse "p/q" or "p" (optional sign, arbitrary precision). Rejects zero
/// denominators and malformed input.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw validation_error("empty rational literal");
    auto check_digits = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!check_digits(s)) throw validation_error("malformed rational: '" + s + "'");
            return Rat(s);
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!check_digits(num) || !check_digits(den))
            throw validation_error("malformed rational: '" + s + "'");
        Rat d{den};
        if (d == 0) throw validation_error("zero denominator in rational: '" + s + "'");
        return Rat(num) / d;
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        throw validation_error("malformed rational: '" + s + "'");
    }
}

/// Canonical "p/q" (or "p" when integral) rendering.
inline std::string format_rat(const Rat& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace wildred

#endif
