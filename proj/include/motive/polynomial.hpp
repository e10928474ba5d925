#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motive/errors.hpp"
#include "motive/int_matrix.hpp"

namespace motive {

namespace detail {

// Shared polynomial printer.  Positive terms come first, then negative ones,
// each group in the order handed in, so "L - 1" and "1 + t^2 + t^4" both come
// out the way a person would write them.
inline std::string render_signed_terms(const std::vector<std::pair<std::string, Int>>& terms) {
    std::string out;
    for (int negatives = 0; negatives < 2; ++negatives)
        for (const auto& [mono, coeff] : terms) {
            if (coeff == 0 || (coeff < 0) != (negatives == 1)) continue;
            Int a = abs(coeff);
            std::string piece = mono.empty() ? a.str() : (a == 1 ? mono : a.str() + mono);
            if (out.empty()) out = (coeff < 0 ? "-" : "") + piece;
            else out += (coeff < 0 ? " - " : " + ") + piece;
        }
    return out.empty() ? "0" : out;
}

inline std::string power_str(const std::string& var, int e) {
    if (e == 0) return "";
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

}  // namespace detail

// Integer polynomial in one variable with nonnegative exponents.
class Poly1 {
  public:
    Poly1() = default;
    static Poly1 constant(const Int& c) { return term(c, 0); }
    static Poly1 term(const Int& c, int power) {
        if (power < 0) throw validation_error("polynomial powers must be nonnegative");
        Poly1 p;
        if (c != 0) p.c_[power] = c;
        return p;
    }

    const Int& coeff(int power) const {
        static const Int zero = 0;
        auto it = c_.find(power);
        return it == c_.end() ? zero : it->second;
    }
    const std::map<int, Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    Poly1 operator+(const Poly1& o) const {
        Poly1 r = *this;
        for (const auto& [n, a] : o.c_) {
            r.c_[n] += a;
            if (r.c_[n] == 0) r.c_.erase(n);
        }
        return r;
    }
    Poly1 operator-() const {
        Poly1 r;
        for (const auto& [n, a] : c_) r.c_[n] = -a;
        return r;
    }
    Poly1 operator-(const Poly1& o) const { return *this + (-o); }
    Poly1 operator*(const Poly1& o) const {
        Poly1 r;
        for (const auto& [n, a] : c_)
            for (const auto& [m, b] : o.c_) {
                r.c_[n + m] += a * b;
                if (r.c_[n + m] == 0) r.c_.erase(n + m);
            }
        return r;
    }
    Poly1 pow(int e) const {
        Poly1 r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Int eval(const Int& x) const {
        Int r = 0, xn = 1;
        int last = 0;
        for (const auto& [n, a] : c_) {
            for (; last < n; ++last) xn *= x;
            r += a * xn;
        }
        return r;
    }

    bool operator==(const Poly1& o) const { return c_ == o.c_; }
    bool operator!=(const Poly1& o) const { return !(*this == o); }

    std::string to_string(const std::string& var = "t") const {
        std::vector<std::pair<std::string, Int>> terms;
        for (const auto& [n, a] : c_) terms.emplace_back(detail::power_str(var, n), a);
        return detail::render_signed_terms(terms);
    }

  private:
    std::map<int, Int> c_;
};

// Integer polynomial in two variables with nonnegative exponents.
class Poly2 {
  public:
    Poly2() = default;
    static Poly2 constant(const Int& c) { return term(c, 0, 0); }
    static Poly2 term(const Int& c, int p, int q) {
        if (p < 0 || q < 0) throw validation_error("polynomial powers must be nonnegative");
        Poly2 r;
        if (c != 0) r.c_[{p, q}] = c;
        return r;
    }

    const Int& coeff(int p, int q) const {
        static const Int zero = 0;
        auto it = c_.find({p, q});
        return it == c_.end() ? zero : it->second;
    }
    const std::map<std::pair<int, int>, Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [k, a] : o.c_) {
            r.c_[k] += a;
            if (r.c_[k] == 0) r.c_.erase(k);
        }
        return r;
    }
    Poly2 operator-() const {
        Poly2 r;
        for (const auto& [k, a] : c_) r.c_[k] = -a;
        return r;
    }
    Poly2 operator-(const Poly2& o) const { return *this + (-o); }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (const auto& [k, a] : c_)
            for (const auto& [l, b] : o.c_) {
                std::pair<int, int> key{k.first + l.first, k.second + l.second};
                r.c_[key] += a * b;
                if (r.c_[key] == 0) r.c_.erase(key);
            }
        return r;
    }
    Poly2 pow(int e) const {
        Poly2 r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    Poly2 swapped() const {
        Poly2 r;
        for (const auto& [k, a] : c_) r.c_[{k.second, k.first}] = a;
        return r;
    }
    // Substitute both variables by one: the (p, q) term lands in degree p+q.
    Poly1 diagonal() const {
        Poly1 r;
        for (const auto& [k, a] : c_) r = r + Poly1::term(a, k.first + k.second);
        return r;
    }

    bool operator==(const Poly2& o) const { return c_ == o.c_; }
    bool operator!=(const Poly2& o) const { return !(*this == o); }

    std::string to_string(const std::string& var1 = "u", const std::string& var2 = "v") const {
        // print by total degree, higher var1 power first within a degree
        std::vector<std::pair<std::pair<int, int>, Int>> order(c_.begin(), c_.end());
        std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
            int dx = x.first.first + x.first.second, dy = y.first.first + y.first.second;
            if (dx != dy) return dx < dy;
            return x.first.first > y.first.first;
        });
        std::vector<std::pair<std::string, Int>> terms;
        for (const auto& [k, a] : order) {
            std::string m1 = detail::power_str(var1, k.first);
            std::string m2 = detail::power_str(var2, k.second);
            std::string m = m1.empty() ? m2 : (m2.empty() ? m1 : m1 + "*" + m2);
            terms.emplace_back(m, a);
        }
        return detail::render_signed_terms(terms);
    }

  private:
    std::map<std::pair<int, int>, Int> c_;
};

}  // namespace motive
