#pragma once

#include <map>
#include <optional>
#include <set>

#include "motive/ab_morphism.hpp"

namespace motive {

// Finitely supported assignment degree -> FinAbGroup.  Zero groups are not
// stored, so equality of the underlying maps is equality of graded groups.
class GradedGroup {
  public:
    GradedGroup() = default;
    explicit GradedGroup(std::map<int, FinAbGroup> parts) : parts_(std::move(parts)) {
        for (auto it = parts_.begin(); it != parts_.end();)
            it = it->second.is_zero() ? parts_.erase(it) : std::next(it);
    }
    static GradedGroup concentrated(int n, const FinAbGroup& g) {
        return GradedGroup({{n, g}});
    }

    const FinAbGroup& at(int n) const {
        static const FinAbGroup zero;
        auto it = parts_.find(n);
        return it == parts_.end() ? zero : it->second;
    }
    const std::map<int, FinAbGroup>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    int min_degree() const { return parts_.empty() ? 0 : parts_.begin()->first; }
    int max_degree() const { return parts_.empty() ? 0 : parts_.rbegin()->first; }

    bool operator==(const GradedGroup& o) const { return parts_ == o.parts_; }
    bool operator!=(const GradedGroup& o) const { return !(*this == o); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [n, g] : parts_) {
            if (!s.empty()) s += ", ";
            s += "H^" + std::to_string(n) + " = " + g.to_string();
        }
        return s;
    }

  private:
    std::map<int, FinAbGroup> parts_;
};

// Degree-preserving map of graded groups, one AbMorphism per degree.
// Degrees without a stored map are zero maps; stored zero maps are dropped,
// so equality of the stored maps is equality of graded morphisms.
class GradedMorphism {
  public:
    GradedMorphism() = default;
    GradedMorphism(GradedGroup source, GradedGroup target, std::map<int, AbMorphism> maps)
        : source_(std::move(source)), target_(std::move(target)) {
        for (auto& [n, f] : maps) {
            if (f.source() != source_.at(n) || f.target() != target_.at(n))
                throw validation_error("graded morphism: wrong groups at degree " +
                                       std::to_string(n));
            if (!f.is_zero()) maps_.emplace(n, std::move(f));
        }
    }
    GradedMorphism(const GradedGroup& source, const GradedGroup& target,
                   const std::map<int, IntMatrix>& mats)
        : source_(source), target_(target) {
        for (const auto& [n, m] : mats) {
            AbMorphism f(source.at(n), target.at(n), m);
            if (!f.is_zero()) maps_.emplace(n, std::move(f));
        }
    }
    static GradedMorphism zero(GradedGroup source, GradedGroup target) {
        return GradedMorphism(std::move(source), std::move(target), std::map<int, AbMorphism>{});
    }
    static GradedMorphism identity(const GradedGroup& g) {
        std::map<int, AbMorphism> maps;
        for (const auto& [n, part] : g.parts()) maps.emplace(n, AbMorphism::identity(part));
        return GradedMorphism(g, g, std::move(maps));
    }

    const GradedGroup& source() const { return source_; }
    const GradedGroup& target() const { return target_; }
    AbMorphism at(int n) const {
        auto it = maps_.find(n);
        return it == maps_.end() ? AbMorphism::zero(source_.at(n), target_.at(n)) : it->second;
    }
    bool is_zero() const { return maps_.empty(); }
    // First degree carrying a nonzero map, for diagnostics.
    std::optional<int> first_nonzero_degree() const {
        if (maps_.empty()) return std::nullopt;
        return maps_.begin()->first;
    }

    GradedMorphism operator+(const GradedMorphism& o) const {
        if (source_ != o.source_ || target_ != o.target_)
            throw validation_error("graded morphism sum: group mismatch");
        std::map<int, AbMorphism> maps = maps_;
        for (const auto& [n, f] : o.maps_) {
            auto it = maps.find(n);
            if (it == maps.end()) maps.emplace(n, f);
            else it->second = it->second + f;
        }
        return GradedMorphism(source_, target_, std::move(maps));
    }
    GradedMorphism operator-() const {
        std::map<int, AbMorphism> maps;
        for (const auto& [n, f] : maps_) maps.emplace(n, -f);
        return GradedMorphism(source_, target_, std::move(maps));
    }
    GradedMorphism operator-(const GradedMorphism& o) const { return *this + (-o); }

    bool operator==(const GradedMorphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && maps_ == o.maps_;
    }
    bool operator!=(const GradedMorphism& o) const { return !(*this == o); }

  private:
    GradedGroup source_, target_;
    std::map<int, AbMorphism> maps_;
};

// f after g, degreewise.
inline GradedMorphism compose(const GradedMorphism& f, const GradedMorphism& g) {
    if (g.target() != f.source()) throw validation_error("graded compose: group mismatch");
    std::map<int, AbMorphism> maps;
    for (const auto& [n, part] : g.source().parts()) {
        (void)part;
        maps.emplace(n, compose(f.at(n), g.at(n)));
    }
    return GradedMorphism(g.source(), f.target(), std::move(maps));
}

// Degreewise direct sum with graded injections and projections.
struct GradedDirectSum {
    GradedGroup group;
    std::vector<GradedMorphism> inj, proj;
};

inline GradedDirectSum graded_direct_sum(const std::vector<GradedGroup>& parts) {
    std::set<int> degrees;
    for (const auto& p : parts)
        for (const auto& [n, g] : p.parts()) {
            (void)g;
            degrees.insert(n);
        }
    std::map<int, FinAbGroup> total;
    std::vector<std::map<int, IntMatrix>> inj(parts.size()), proj(parts.size());
    for (int n : degrees) {
        std::vector<FinAbGroup> slice;
        slice.reserve(parts.size());
        for (const auto& p : parts) slice.push_back(p.at(n));
        DirectSum s = direct_sum(slice);
        total[n] = s.group;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            inj[k][n] = s.inj[k];
            proj[k][n] = s.proj[k];
        }
    }
    GradedDirectSum out;
    out.group = GradedGroup(std::move(total));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out.inj.push_back(GradedMorphism(parts[k], out.group, inj[k]));
        out.proj.push_back(GradedMorphism(out.group, parts[k], proj[k]));
    }
    return out;
}

}  // namespace motive
