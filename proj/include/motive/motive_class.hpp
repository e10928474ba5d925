#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motive/errors.hpp"
#include "motive/int_matrix.hpp"
#include "motive/polynomial.hpp"

namespace motive {

// One multiplicative generator of the class ring: a product of named atoms
// and a power of the Tate class L.  Ordering is atoms-major, so pure powers
// of L (empty atom part) sort first and "1 + Y*L - Y" prints constants,
// then L powers, then atom terms.
struct MotiveMonomial {
    std::map<std::string, int> atoms;
    int lpow = 0;

    bool operator<(const MotiveMonomial& o) const {
        if (atoms != o.atoms) return atoms < o.atoms;
        return lpow < o.lpow;
    }
    bool operator==(const MotiveMonomial& o) const {
        return atoms == o.atoms && lpow == o.lpow;
    }

    MotiveMonomial operator*(const MotiveMonomial& o) const {
        MotiveMonomial r = *this;
        r.lpow += o.lpow;
        for (const auto& [name, e] : o.atoms) {
            r.atoms[name] += e;
            if (r.atoms[name] == 0) r.atoms.erase(name);
        }
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [name, e] : atoms) {
            if (!s.empty()) s += "*";
            s += detail::power_str(name, e);
        }
        if (lpow != 0) {
            if (!s.empty()) s += "*";
            s += detail::power_str("L", lpow);
        }
        return s;
    }
};

// Element of the free commutative ring on atom symbols and L: a finite
// integer combination of monomials.
class MotiveClass {
  public:
    MotiveClass() = default;
    static MotiveClass zero() { return {}; }
    static MotiveClass one() { return constant(1); }
    static MotiveClass constant(const Int& c) { return monomial(c, MotiveMonomial{}); }
    static MotiveClass tate(int power) {
        if (power < 0) throw validation_error("negative power of L");
        return monomial(1, MotiveMonomial{{}, power});
    }
    static MotiveClass atom_class(const std::string& name) {
        return monomial(1, MotiveMonomial{{{name, 1}}, 0});
    }
    static MotiveClass monomial(const Int& c, MotiveMonomial m) {
        MotiveClass r;
        if (c != 0) r.c_[std::move(m)] = c;
        return r;
    }

    const std::map<MotiveMonomial, Int>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    const Int& coeff(const MotiveMonomial& m) const {
        static const Int zero_ = 0;
        auto it = c_.find(m);
        return it == c_.end() ? zero_ : it->second;
    }

    MotiveClass operator+(const MotiveClass& o) const {
        MotiveClass r = *this;
        for (const auto& [m, a] : o.c_) {
            r.c_[m] += a;
            if (r.c_[m] == 0) r.c_.erase(m);
        }
        return r;
    }
    MotiveClass operator-() const {
        MotiveClass r;
        for (const auto& [m, a] : c_) r.c_[m] = -a;
        return r;
    }
    MotiveClass operator-(const MotiveClass& o) const { return *this + (-o); }
    MotiveClass operator*(const MotiveClass& o) const {
        MotiveClass r;
        for (const auto& [m, a] : c_)
            for (const auto& [n, b] : o.c_) {
                MotiveMonomial key = m * n;
                r.c_[key] += a * b;
                if (r.c_[key] == 0) r.c_.erase(key);
            }
        return r;
    }

    bool operator==(const MotiveClass& o) const { return c_ == o.c_; }
    bool operator!=(const MotiveClass& o) const { return !(*this == o); }

    std::string to_string() const {
        std::vector<std::pair<std::string, Int>> terms;
        for (const auto& [m, a] : c_) terms.emplace_back(m.to_string(), a);
        return detail::render_signed_terms(terms);
    }

  private:
    std::map<MotiveMonomial, Int> c_;
};

// Class of projective n-space: 1 + L + ... + L^n.
inline MotiveClass projective_space_class(int n) {
    if (n < 0) throw validation_error("projective space of negative dimension");
    MotiveClass r;
    for (int i = 0; i <= n; ++i) r = r + MotiveClass::tate(i);
    return r;
}

}  // namespace motive
