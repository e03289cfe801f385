#pragma once

// Exact arithmetic over the nilpotent coefficient ring
//   R_k (x) Q  =  Q[t_1..t_k]/(t_i^2),
// Laurent polynomials in z1, z2 over it, and the coordinate substitutions
// used for wall-crossing. Everything is immutable after construction and
// every operation is a pure function.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tropwall/errors.hpp"

namespace tropwall {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rational_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// cpp_rational's two-argument constructor rejects negative denominators;
// normalize the sign first.
inline Rational int_ratio(long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Accepts "p" or "p/q" with optional leading '-' on p; q must be positive.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> Rational { throw MalformedRational(text); };
    if (text.empty()) return bad();
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto is_int = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!is_int(num, true) || !is_int(den, false)) return bad();
    BigInt n(num), d(den);
    if (d == 0) return bad();
    return Rational(n, d);
}

// ---------------------------------------------------------------------------
// TSubset: a squarefree monomial t_I, I subset of {1..k}, as a bit mask.

struct TSubset {
    std::uint32_t mask = 0;

    TSubset() = default;
    explicit TSubset(std::uint32_t m) : mask(m) {}

    static TSubset empty() { return TSubset{}; }
    static TSubset single(int i) { return TSubset(1u << (i - 1)); }  // 1-based index
    static TSubset of(std::initializer_list<int> is) {
        TSubset s;
        for (int i : is) s.mask |= 1u << (i - 1);
        return s;
    }

    bool is_empty() const { return mask == 0; }
    int order() const { return __builtin_popcount(mask); }
    bool contains(int i) const { return (mask >> (i - 1)) & 1u; }
    bool disjoint(TSubset o) const { return (mask & o.mask) == 0; }
    bool subset_of(TSubset o) const { return (mask & ~o.mask) == 0; }
    TSubset unite(TSubset o) const { return TSubset(mask | o.mask); }
    TSubset minus(TSubset o) const { return TSubset(mask & ~o.mask); }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 1; i <= 32; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    auto operator<=>(const TSubset&) const = default;
};

// ---------------------------------------------------------------------------
// NilCoefficient: an element of R_k (x) Q, a map t_I -> rational with no
// stored zeros. Product rule: t_I * t_J = t_{I u J} if disjoint, else 0.

class NilCoefficient {
  public:
    NilCoefficient() = default;
    NilCoefficient(long long n) {
        if (n != 0) terms_[TSubset::empty()] = Rational(n);
    }
    NilCoefficient(const Rational& r) {
        if (r != 0) terms_[TSubset::empty()] = r;
    }
    static NilCoefficient t(TSubset I, const Rational& c = Rational(1)) {
        NilCoefficient n;
        if (c != 0) n.terms_[I] = c;
        return n;
    }

    const std::map<TSubset, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_empty() &&
               terms_.begin()->second == 1;
    }
    Rational coeff(TSubset I) const {
        auto it = terms_.find(I);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_part() const { return coeff(TSubset::empty()); }

    // Smallest |I| among stored terms; -1 when zero.
    int min_order() const {
        int best = -1;
        for (auto& [I, c] : terms_) {
            int o = I.order();
            if (best < 0 || o < best) best = o;
        }
        return best;
    }

    NilCoefficient order_part(int o) const {
        NilCoefficient out;
        for (auto& [I, c] : terms_)
            if (I.order() == o) out.terms_[I] = c;
        return out;
    }

    // t_i = 0: drop every term whose subset contains i.
    NilCoefficient specialize_zero(int i) const {
        NilCoefficient out;
        for (auto& [I, c] : terms_)
            if (!I.contains(i)) out.terms_[I] = c;
        return out;
    }

    NilCoefficient& operator+=(const NilCoefficient& o) {
        for (auto& [I, c] : o.terms_) {
            auto [it, fresh] = terms_.try_emplace(I, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }
    friend NilCoefficient operator+(NilCoefficient a, const NilCoefficient& b) {
        a += b;
        return a;
    }
    NilCoefficient operator-() const {
        NilCoefficient out;
        for (auto& [I, c] : terms_) out.terms_[I] = -c;
        return out;
    }
    friend NilCoefficient operator-(const NilCoefficient& a, const NilCoefficient& b) {
        return a + (-b);
    }
    friend NilCoefficient operator*(const NilCoefficient& a, const NilCoefficient& b) {
        NilCoefficient out;
        for (auto& [I, ci] : a.terms_)
            for (auto& [J, cj] : b.terms_) {
                if (!I.disjoint(J)) continue;  // t_i^2 = 0
                out += NilCoefficient::t(I.unite(J), ci * cj);
            }
        return out;
    }
    friend NilCoefficient operator*(const NilCoefficient& a, const Rational& s) {
        NilCoefficient out;
        if (s == 0) return out;
        for (auto& [I, c] : a.terms_) out.terms_[I] = c * s;
        return out;
    }
    friend NilCoefficient operator/(const NilCoefficient& a, const Rational& s) {
        BigInt n = numerator(s), d = denominator(s);
        if (n < 0) {
            n = -n;
            d = -d;
        }
        return a * Rational(d, n);
    }

    bool operator==(const NilCoefficient&) const = default;

    std::string str() const;

  private:
    std::map<TSubset, Rational> terms_;
};

// ---------------------------------------------------------------------------
// ZExp: exponent of z1^{a1} z2^{a2}; also reused as a lattice direction.

struct ZExp {
    long long a1 = 0, a2 = 0;

    auto operator<=>(const ZExp&) const = default;  // lexicographic, canonical order

    ZExp operator+(ZExp o) const { return {a1 + o.a1, a2 + o.a2}; }
    ZExp operator-(ZExp o) const { return {a1 - o.a1, a2 - o.a2}; }
    ZExp operator-() const { return {-a1, -a2}; }
    ZExp operator*(long long s) const { return {a1 * s, a2 * s}; }
    bool is_zero() const { return a1 == 0 && a2 == 0; }
};

inline long long det(ZExp a, ZExp b) { return a.a1 * b.a2 - a.a2 * b.a1; }

inline ZExp primitive(ZExp v) {
    if (v.is_zero()) throw InternalError("primitive of zero vector");
    long long g = std::gcd(std::abs(v.a1), std::abs(v.a2));
    return {v.a1 / g, v.a2 / g};
}

inline std::string zexp_str(ZExp a) {
    return "(" + std::to_string(a.a1) + "," + std::to_string(a.a2) + ")";
}

// ---------------------------------------------------------------------------
// LaurentPoly: finite Laurent polynomial in z1, z2 over NilCoefficient.
// No stored zero coefficients; term order is lexicographic on the exponent.

class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(long long n) {
        NilCoefficient c(n);
        if (!c.is_zero()) terms_[ZExp{}] = c;
    }
    LaurentPoly(const NilCoefficient& c) {
        if (!c.is_zero()) terms_[ZExp{}] = c;
    }
    static LaurentPoly monomial(ZExp a, const NilCoefficient& c) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms_[a] = c;
        return p;
    }
    static LaurentPoly z1() { return monomial({1, 0}, 1); }
    static LaurentPoly z2() { return monomial({0, 1}, 1); }

    const std::map<ZExp, NilCoefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_zero() &&
               terms_.begin()->second.is_one();
    }
    NilCoefficient coeff(ZExp a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? NilCoefficient() : it->second;
    }
    NilCoefficient constant_term() const { return coeff(ZExp{}); }
    std::size_t term_count() const { return terms_.size(); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
        a += b;
        return a;
    }
    LaurentPoly operator-() const {
        LaurentPoly out;
        for (auto& [a, c] : terms_) out.terms_[a] = -c;
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
        return a + (-b);
    }
    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
        LaurentPoly out;
        for (auto& [a, ca] : p.terms_)
            for (auto& [b, cb] : q.terms_) {
                NilCoefficient c = ca * cb;
                if (!c.is_zero()) out.add_term(a + b, c);
            }
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& p, const NilCoefficient& s) {
        return p * LaurentPoly(s);
    }

    LaurentPoly pow(unsigned e) const {
        LaurentPoly out(1);
        for (unsigned i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    // Unipotent means 1 + n with every term of n carrying a nonempty TSubset.
    bool is_unipotent() const {
        if (constant_term().constant_part() != 1) return false;
        for (auto& [a, c] : terms_)
            for (auto& [I, r] : c.terms())
                if (I.is_empty() && !(a.is_zero() && r == 1)) return false;
        return true;
    }

    // f - 1, for unipotent f.
    LaurentPoly nilpotent_part() const {
        return *this - LaurentPoly(1);
    }

    LaurentPoly specialize_zero(int i) const {
        LaurentPoly out;
        for (auto& [a, c] : terms_) {
            NilCoefficient s = c.specialize_zero(i);
            if (!s.is_zero()) out.terms_[a] = s;
        }
        return out;
    }

    std::string str() const;

  private:
    void add_term(ZExp a, const NilCoefficient& c) {
        auto [it, fresh] = terms_.try_emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    std::map<ZExp, NilCoefficient> terms_;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
};

// f^e for any integer e, where f must be unipotent. Negative powers go
// through the finite geometric series of the nilpotent part.
inline LaurentPoly unit_pow(const LaurentPoly& f, long long e) {
    if (!f.is_unipotent())
        throw NotUnipotent("unit_pow argument is not of the form 1 + nilpotent: " + f.str());
    if (e == 0) return LaurentPoly(1);
    LaurentPoly base = f;
    if (e < 0) {
        LaurentPoly n = f.nilpotent_part();
        LaurentPoly inv(1), power = n;
        long long sign = -1;
        while (!power.is_zero()) {
            LaurentPoly add = power * NilCoefficient(sign);
            inv += add;
            power = power * n;
            sign = -sign;
        }
        base = inv;
        e = -e;
    }
    LaurentPoly out(1);
    for (long long i = 0; i < e; ++i) out = out * base;
    return out;
}

// ---------------------------------------------------------------------------
// CoordMap: the substitution z_i -> z_i * (1 + nilpotent). Composition is
// in ring-map order: compose(s, r) applies r first, then s.

struct CoordMap {
    LaurentPoly image_z1, image_z2;

    static CoordMap identity() { return {LaurentPoly::z1(), LaurentPoly::z2()}; }

    bool operator==(const CoordMap&) const = default;
};

inline bool is_identity(const CoordMap& s) {
    return s.image_z1 == LaurentPoly::z1() && s.image_z2 == LaurentPoly::z2();
}

inline LaurentPoly substitute(const LaurentPoly& p, const CoordMap& s) {
    // Factor images as z_i * u_i with u_i unipotent so negative exponents exist.
    LaurentPoly u1 = s.image_z1 * LaurentPoly::monomial({-1, 0}, 1);
    LaurentPoly u2 = s.image_z2 * LaurentPoly::monomial({0, -1}, 1);
    if (!u1.is_unipotent() || !u2.is_unipotent())
        throw NotUnipotent("coordinate map image is not z_i * (1 + nilpotent)");
    std::map<long long, LaurentPoly> pow1, pow2;
    auto upow = [](std::map<long long, LaurentPoly>& cache, const LaurentPoly& u, long long e) {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, unit_pow(u, e)).first;
        return it->second;
    };
    LaurentPoly out;
    for (auto& [a, c] : p.terms()) {
        LaurentPoly term = LaurentPoly::monomial(a, c);
        if (a.a1 != 0) term = term * upow(pow1, u1, a.a1);
        if (a.a2 != 0) term = term * upow(pow2, u2, a.a2);
        out += term;
    }
    return out;
}

inline CoordMap compose(const CoordMap& s, const CoordMap& r) {
    return {substitute(r.image_z1, s), substitute(r.image_z2, s)};
}

// ---------------------------------------------------------------------------
// Collapsed polynomials over Q[t]/(t^{k+1}), the image of the base change
// t_i -> t. Coefficient vectors are indexed by the degree of t.

struct CollapsedPoly {
    int k = 0;
    std::map<ZExp, std::vector<Rational>> terms;  // each vector has size k+1

    bool operator==(const CollapsedPoly&) const = default;

    void add(ZExp a, int deg, const Rational& c) {
        if (deg > k || c == 0) return;
        auto& v = terms.try_emplace(a, std::vector<Rational>(k + 1, Rational(0))).first->second;
        v[deg] += c;
        prune(a);
    }
    Rational coeff(ZExp a, int deg) const {
        auto it = terms.find(a);
        if (it == terms.end() || deg > k) return Rational(0);
        return it->second[deg];
    }

    friend CollapsedPoly operator+(const CollapsedPoly& p, const CollapsedPoly& q) {
        CollapsedPoly out = p;
        for (auto& [a, v] : q.terms)
            for (int d = 0; d <= q.k; ++d) out.add(a, d, v[d]);
        return out;
    }
    friend CollapsedPoly operator*(const CollapsedPoly& p, const CollapsedPoly& q) {
        CollapsedPoly out;
        out.k = p.k;
        for (auto& [a, va] : p.terms)
            for (auto& [b, vb] : q.terms)
                for (int i = 0; i <= p.k; ++i)
                    for (int j = 0; i + j <= p.k && j <= q.k; ++j)
                        out.add(a + b, i + j, va[i] * vb[j]);
        return out;
    }

  private:
    void prune(ZExp a) {
        auto it = terms.find(a);
        if (it == terms.end()) return;
        for (auto& c : it->second)
            if (c != 0) return;
        terms.erase(it);
    }
};

// Base change t_I -> t^{|I|} into Q[t]/(t^{k+1}).
inline CollapsedPoly collapse(const LaurentPoly& p, int k) {
    CollapsedPoly out;
    out.k = k;
    for (auto& [a, c] : p.terms())
        for (auto& [I, r] : c.terms()) out.add(a, I.order(), r);
    return out;
}

// ---------------------------------------------------------------------------
// Printing (used by error witnesses, CLI output and SVG labels).

inline std::string NilCoefficient::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [I, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        std::string mon;
        for (int i : I.members()) mon += (mon.empty() ? "t" : "*t") + std::to_string(i);
        if (mon.empty())
            out += rational_str(c);
        else if (c == 1)
            out += mon;
        else
            out += rational_str(c) + "*" + mon;
    }
    return out;
}

inline std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [a, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        std::string zmon;
        if (a.a1 != 0) zmon += "z1" + (a.a1 == 1 ? "" : "^" + std::to_string(a.a1));
        if (a.a2 != 0)
            zmon += std::string(zmon.empty() ? "" : "*") + "z2" +
                    (a.a2 == 1 ? "" : "^" + std::to_string(a.a2));
        std::string cs = c.str();
        bool simple = c.terms().size() == 1;
        if (zmon.empty())
            out += simple ? cs : "(" + cs + ")";
        else if (c.is_one())
            out += zmon;
        else
            out += (simple ? cs : "(" + cs + ")") + "*" + zmon;
    }
    return out;
}

}  // namespace tropwall
