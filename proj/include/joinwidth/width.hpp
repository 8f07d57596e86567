#pragma once

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "joinwidth/error.hpp"

namespace jw {

/// A non-negative rational width bound p/q.
///
/// Accepts "2", "0.5", "1.25" (up to 3 decimals) and "3/2" (denominator up to
/// 1000).
class Width {
public:
    Width() = default;
    Width(std::uint64_t num, std::uint64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0 || den_ > 1000) throw std::invalid_argument("width denominator must be in 1..1000");
        auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ > 64 * den_) throw std::invalid_argument("width above 64 is not supported");
    }

    static Width parse(const std::string& s) {
        auto bad = [&] { return std::invalid_argument("invalid width '" + s + "'"); };
        if (s.empty()) throw bad();
        auto digits = [&](const std::string& t) {
            if (t.empty() || t.size() > 12) throw bad();
            for (char ch : t)
                if (ch < '0' || ch > '9') throw bad();
            return std::stoull(t);
        };
        if (auto slash = s.find('/'); slash != std::string::npos)
            return Width(digits(s.substr(0, slash)), digits(s.substr(slash + 1)));
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            if (fp.size() > 3) throw bad();
            std::uint64_t den = 1;
            for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
            std::uint64_t whole = ip.empty() ? 0 : digits(ip);
            std::uint64_t frac = fp.empty() ? 0 : digits(fp);
            return Width(whole * den + frac, den);
        }
        return Width(digits(s));
    }

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend bool operator==(const Width& a, const Width& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Width& a, const Width& b) {
        using boost::multiprecision::cpp_int;
        return cpp_int(a.num_) * b.den_ < cpp_int(b.num_) * a.den_;
    }
    friend bool operator<=(const Width& a, const Width& b) { return !(b < a); }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// Largest tuple count n with n <= base^w, i.e. floor(base^(p/q)), decided
/// exactly as the largest n with n^q <= base^p. Saturates at uint64 max.
inline std::uint64_t tuple_cap(std::uint64_t base, const Width& w) {
    using boost::multiprecision::cpp_int;
    constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    if (w.num() == 0) return 1;
    if (base <= 1) return base;
    long double est = std::exp(static_cast<long double>(w.num()) / w.den() * std::log(static_cast<long double>(base)));
    if (est > 1.7e19L) return top;
    cpp_int target = boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(w.num()));
    auto fits = [&](std::uint64_t n) {
        return boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(w.den())) <= target;
    };
    auto n = static_cast<std::uint64_t>(est);
    if (n < 1) n = 1;
    while (n > 1 && !fits(n)) --n;
    while (n < top && fits(n + 1)) ++n;
    return n;
}

/// log_base(count), with 0 for count <= 1.
inline double width_of(std::size_t count, std::size_t base) {
    if (count <= 1) return 0.0;
    return std::log(static_cast<double>(count)) / std::log(static_cast<double>(base));
}

/// Width formatted with three decimals.
inline std::string format_width(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", w);
    return buf;
}

}  // namespace jw
