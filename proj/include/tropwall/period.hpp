#pragma once

// The quantum period as a constant-term series: the T^2-cycle oscillatory
// integral of e^{W/hbar} expands as 1 + sum_{m>=2} [z^0](W^m)/m! hbar^{-m},
// and its t_I-coefficients aggregate the descendant invariants with one
// psi^{m-2} insertion at u and n = |I| point constraints.

#include <optional>

#include "tropwall/potential.hpp"

namespace tropwall {

struct PeriodSeries {
    int mmax = 0;
    std::map<int, NilCoefficient> coeff;  // m -> [z^0](W^m)/m!, nonzero only

    NilCoefficient at(int m) const {
        auto it = coeff.find(m);
        return it == coeff.end() ? NilCoefficient() : it->second;
    }
    bool operator==(const PeriodSeries&) const = default;
};

inline Rational factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline PeriodSeries period(const LaurentPoly& w, int mmax) {
    if (mmax < 2) throw Error("period: mmax must be at least 2");
    PeriodSeries out;
    out.mmax = mmax;
    LaurentPoly wpow = w;
    for (int m = 2; m <= mmax; ++m) {
        wpow = wpow * w;
        NilCoefficient c = wpow.constant_term() / factorial(m);
        if (!c.is_zero()) out.coeff[m] = c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Descendant table: entry(m, I) is the t_I-coefficient of the hbar^{-m}
// period coefficient. Alongside each value we report n = |I|, the psi-power
// m-2 and the total degree |Delta| = m + n. These are the Delta-aggregated
// sums; the per-class log invariants carry an extra |Aut(Delta)| factor.

struct DescendantTable {
    int k = 0;
    int mmax = 0;
    std::map<std::pair<int, TSubset>, Rational> entries;  // nonzero only

    Rational entry(int m, TSubset I) const {
        auto it = entries.find({m, I});
        return it == entries.end() ? Rational(0) : it->second;
    }
    bool operator==(const DescendantTable&) const = default;
};

inline DescendantTable descendants(const PeriodSeries& s, int k) {
    DescendantTable t;
    t.k = k;
    t.mmax = s.mmax;
    for (auto& [m, c] : s.coeff)
        for (auto& [I, v] : c.terms()) t.entries[{m, I}] = v;
    return t;
}

inline std::string descendants_csv(const DescendantTable& t) {
    std::string out = "m,n,|Delta|,I,value\n";
    std::uint32_t full = t.k == 0 ? 0u : ((1u << t.k) - 1u);
    for (int m = 2; m <= t.mmax; ++m)
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            TSubset I(mask);
            std::string is;
            for (int i : I.members()) is += (is.empty() ? "" : " ") + std::to_string(i);
            out += std::to_string(m) + "," + std::to_string(I.order()) + "," +
                   std::to_string(m + I.order()) + ",{" + is + "}," +
                   rational_str(t.entry(m, I)) + "\n";
            if (full == 0) break;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Chamber invariance: the period must not depend on the sample point.

struct PeriodMismatch {
    RationalPoint u1, u2;
    int m = 0;
    TSubset tset;
    Rational v1, v2;
};

inline std::optional<PeriodMismatch> chamber_invariance_check(
    const Diagram& d, const std::vector<RationalPoint>& samples, int mmax) {
    if (samples.empty()) return std::nullopt;
    std::vector<PeriodSeries> series;
    for (const RationalPoint& u : samples)
        series.push_back(period(potential_at(d, u).value, mmax));
    for (std::size_t j = 1; j < series.size(); ++j) {
        if (series[j] == series[0]) continue;
        for (int m = 2; m <= mmax; ++m) {
            NilCoefficient a = series[0].at(m), b = series[j].at(m);
            if (a == b) continue;
            NilCoefficient diff = a - b;
            TSubset I = diff.terms().begin()->first;
            return PeriodMismatch{samples[0], samples[j], m, I, a.coeff(I), b.coeff(I)};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Base change t_i -> t: reports coefficients of hbar^{-m} t^n as the raw
// sums over |I| = n (the n!-bookkeeping of the limiting form is left to the
// caller and documented in the README).

struct CollapsedPeriod {
    int mmax = 0;
    int k = 0;
    std::map<std::pair<int, int>, Rational> coeff;  // (m, n) -> value, nonzero only

    Rational at(int m, int n) const {
        auto it = coeff.find({m, n});
        return it == coeff.end() ? Rational(0) : it->second;
    }
    bool operator==(const CollapsedPeriod&) const = default;
};

inline CollapsedPeriod collapsed_period(const PeriodSeries& s, int k) {
    CollapsedPeriod out;
    out.mmax = s.mmax;
    out.k = k;
    for (auto& [m, c] : s.coeff)
        for (auto& [I, v] : c.terms()) {
            auto key = std::make_pair(m, I.order());
            auto [it, fresh] = out.coeff.try_emplace(key, v);
            if (!fresh) {
                it->second += v;
                if (it->second == 0) out.coeff.erase(it);
            }
        }
    return out;
}

inline int default_max_order(int k) { return 3 * (k + 2); }

}  // namespace tropwall
