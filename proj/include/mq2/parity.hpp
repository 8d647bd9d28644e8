#pragma once

// Class-number-parity classifiers for multi-quadratic fields containing
// sqrt(2).  A real field L = F(sqrt(2)) has odd class number exactly when the
// odd-conductor subfield F is one of a finite list of shapes cut out by
// congruence and residue-symbol conditions (the case table labeled 4.2a-4.2f
// below); an imaginary field is decided by a four-entry list (4.5.1-4.5.4)
// plus one even-but-not-divisible-by-4 family.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace mq2 {

enum class Parity { Odd, Even, EvenNotDiv4, OutOfScope };

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Odd: return "odd";
        case Parity::Even: return "even";
        case Parity::EvenNotDiv4: return "even_not_div4";
        case Parity::OutOfScope: return "out_of_scope";
    }
    return "?";
}

struct ParityVerdict {
    Parity verdict = Parity::OutOfScope;
    std::optional<std::string> matched_case; // present iff verdict is Odd or EvenNotDiv4
    std::string witness;
    std::vector<std::string> notes;
};

struct YamamotoMatch {
    std::string label; // "4.2a" .. "4.2f"
    std::string witness;
};

namespace parity_detail {

inline std::string show(u64 p) { return std::to_string(p); }

// (a) Q(sqrt(p))
inline std::optional<std::string> case_a(u64 p) {
    if (p % 4 == 3) return "p=" + show(p) + " = 3 (mod 4)";
    if (p % 8 == 5) return "p=" + show(p) + " = 5 (mod 8)";
    if (p % 8 == 1 && quartic_symbol(2, p) * quartic_symbol_mod2(static_cast<i64>(p)) == -1)
        return "p=" + show(p) + " = 1 (mod 8), (2/p)4 (p/2)4 = -1";
    return std::nullopt;
}

// (b) Q(sqrt(pq))
inline std::optional<std::string> case_b(u64 p, u64 q) {
    if (p % 4 == 3 && q % 8 == 3) return "p=" + show(p) + " = 3 (mod 4), q=" + show(q) + " = 3 (mod 8)";
    return std::nullopt;
}

// (c) Q(sqrt(p), sqrt(q))
inline std::optional<std::string> case_c(u64 p, u64 q) {
    auto pq = [&] { return "p=" + show(p) + ", q=" + show(q); };
    if (p % 8 == 3 && q % 8 == 3) return pq() + ": p = q = 3 (mod 8)";
    if (p % 8 == 3 && q % 8 == 5) return pq() + ": p = 3, q = 5 (mod 8)";
    if (p % 8 == 3 && q % 8 == 7) return pq() + ": p = 3, q = 7 (mod 8)";
    if (p % 8 == 5 && q % 8 == 7) return pq() + ": p = 5, q = 7 (mod 8)";
    if (p % 8 == 5 && q % 8 == 1 && legendre(static_cast<i64>(q), p) == -1 &&
        quartic_symbol(2, q) * quartic_symbol_mod2(static_cast<i64>(q)) == -1)
        return pq() + ": p = 5, q = 1 (mod 8), (q/p) = -1, (2/q)4 (q/2)4 = -1";
    if (p % 8 == 5 && q % 8 == 5) {
        if (legendre(static_cast<i64>(q), p) == 1 &&
            quartic_symbol(static_cast<i64>(q), p) * quartic_symbol(static_cast<i64>(p), q) == -1)
            return pq() + ": p = q = 5 (mod 8), (q/p) = 1, (q/p)4 (p/q)4 = -1";
        if (legendre(static_cast<i64>(q), p) == -1 &&
            quartic_symbol(2 * static_cast<i64>(q), p) * quartic_symbol(2 * static_cast<i64>(p), q) *
                    quartic_symbol_mod2(static_cast<i64>(p * q)) == 1)
            return pq() + ": p = q = 5 (mod 8), (q/p) = -1, (2q/p)4 (2p/q)4 (pq/2)4 = 1";
    }
    return std::nullopt;
}

// (d) Q(sqrt(p), sqrt(q), sqrt(l))
inline std::optional<std::string> case_d(u64 p, u64 q, u64 l) {
    auto pql = [&] { return "p=" + show(p) + ", q=" + show(q) + ", l=" + show(l); };
    if (p % 8 == 3 && q % 8 == 3 && l % 8 == 5 && legendre(static_cast<i64>(p * q), l) == -1)
        return pql() + ": p = q = 3, l = 5 (mod 8), (pq/l) = -1";
    if (p % 8 == 3 && q % 8 == 3 && l % 8 == 7 && legendre(static_cast<i64>(p * q), l) == -1)
        return pql() + ": p = q = 3, l = 7 (mod 8), (pq/l) = -1";
    if (p % 8 == 3 && q % 8 == 5 && l % 8 == 7 && legendre(static_cast<i64>(q), l) == -1)
        return pql() + ": p = 3, q = 5, l = 7 (mod 8), (q/l) = -1";
    return std::nullopt;
}

// (e) Q(sqrt(pq), sqrt(l))
inline std::optional<std::string> case_e(u64 p, u64 q, u64 l) {
    auto pql = [&] { return "p=" + show(p) + ", q=" + show(q) + ", l=" + show(l); };
    if (p % 8 == 3 && q % 8 == 3 && l % 8 == 5 && legendre(static_cast<i64>(p * q), l) == -1)
        return pql() + ": p = q = 3, l = 5 (mod 8), (pq/l) = -1";
    if (p % 8 == 3 && q % 8 == 7 && l % 8 == 5 && legendre(static_cast<i64>(l), q) == -1)
        return pql() + ": p = 3, q = 7, l = 5 (mod 8), (l/q) = -1";
    return std::nullopt;
}

// (f) Q(sqrt(pq), sqrt(pl))
inline std::optional<std::string> case_f(u64 p, u64 q, u64 l) {
    if (p % 8 == 3 && q % 8 == 3 && l % 8 == 7 && legendre(static_cast<i64>(p * q), l) == -1)
        return "p=" + show(p) + ", q=" + show(q) + ", l=" + show(l) +
               ": p = q = 3, l = 7 (mod 8), (pq/l) = -1";
    return std::nullopt;
}

// Pure shape-and-condition matcher; the genus-field requirement is layered on
// top by yamamoto_case.
inline std::optional<YamamotoMatch> shape_match(const MultiQuadField& f) {
    const auto elems = f.elements();
    std::vector<SquareClass> nontrivial;
    for (const auto& e : elems)
        if (!e.is_one()) nontrivial.push_back(e);

    auto primes_of = [](const SquareClass& c) { return c.odd_primes; };

    if (f.rank() == 1) {
        const auto& m = nontrivial.front();
        auto ps = primes_of(m);
        if (ps.size() == 1) {
            if (auto w = case_a(ps[0])) return YamamotoMatch{"4.2a", *w};
        } else if (ps.size() == 2) {
            if (auto w = case_b(ps[0], ps[1])) return YamamotoMatch{"4.2b", *w};
            if (auto w = case_b(ps[1], ps[0])) return YamamotoMatch{"4.2b", *w};
        }
        return std::nullopt;
    }

    if (f.rank() == 2) {
        std::vector<u64> singles;
        std::vector<std::vector<u64>> composites;
        for (const auto& e : nontrivial) {
            auto ps = primes_of(e);
            if (ps.size() == 1)
                singles.push_back(ps[0]);
            else
                composites.push_back(ps);
        }
        if (singles.size() == 2) {
            if (auto w = case_c(singles[0], singles[1])) return YamamotoMatch{"4.2c", *w};
            if (auto w = case_c(singles[1], singles[0])) return YamamotoMatch{"4.2c", *w};
            return std::nullopt;
        }
        if (singles.size() == 1 && composites.size() == 2) {
            u64 l = singles[0];
            for (const auto& ps : composites) {
                if (ps.size() != 2) continue;
                if (auto w = case_e(ps[0], ps[1], l)) return YamamotoMatch{"4.2e", *w};
                if (auto w = case_e(ps[1], ps[0], l)) return YamamotoMatch{"4.2e", *w};
            }
            return std::nullopt;
        }
        if (singles.empty() && composites.size() == 3) {
            std::vector<u64> support;
            for (const auto& ps : composites) {
                if (ps.size() != 2) return std::nullopt;
                support.insert(support.end(), ps.begin(), ps.end());
            }
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()), support.end());
            if (support.size() != 3) return std::nullopt;
            for (size_t i = 0; i < 3; ++i) {
                u64 l = support[i];
                u64 p = support[(i + 1) % 3], q = support[(i + 2) % 3];
                if (auto w = case_f(p, q, l)) return YamamotoMatch{"4.2f", *w};
            }
            return std::nullopt;
        }
        return std::nullopt;
    }

    if (f.rank() == 3) {
        std::vector<u64> singles;
        std::vector<u64> support;
        for (const auto& e : nontrivial) {
            auto ps = primes_of(e);
            if (ps.size() == 1) singles.push_back(ps[0]);
            support.insert(support.end(), ps.begin(), ps.end());
        }
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        std::sort(singles.begin(), singles.end());
        if (singles.size() != 3 || support.size() != 3) return std::nullopt;
        std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& pm : perms) {
            if (auto w = case_d(singles[pm[0]], singles[pm[1]], singles[pm[2]]))
                return YamamotoMatch{"4.2d", *w};
        }
        return std::nullopt;
    }

    return std::nullopt;
}

} // namespace parity_detail

// Case classifier for a totally real multi-quadratic field with conductor not
// divisible by 8: the Iwasawa invariants of its Z2-tower all vanish exactly
// when the field matches one of the listed shapes and equals its own genus
// field.  Returns the first matching case, none otherwise.
inline std::optional<YamamotoMatch> yamamoto_case(const MultiQuadField& f) {
    if (!f.is_real()) throw hypothesis_error("yamamoto_case: field must be totally real");
    if (conductor_two_part_exceeds_4(f))
        throw hypothesis_error("yamamoto_case: hypothesis violated, conductor divisible by 8");
    auto m = parity_detail::shape_match(f);
    if (!m) return std::nullopt;
    if (!(narrow_genus_field(f).genus == f)) return std::nullopt;
    return m;
}

// Parity of h(L) for real L containing sqrt(2): odd iff the odd-conductor
// index-2 subfield F matches a vanishing case (or is Q itself).
inline ParityVerdict real_parity_with_sqrt2(const MultiQuadField& l) {
    if (!l.is_real()) throw hypothesis_error("real_parity_with_sqrt2: field must be totally real");
    if (!contains_sqrt(l, 2)) throw hypothesis_error("real_parity_with_sqrt2: sqrt(2) not in the field");
    MultiQuadField f = l.odd_class_subfield();
    ParityVerdict v;
    if (f.rank() == 0) {
        v.verdict = Parity::Odd;
        v.matched_case = "4.4.2";
        v.witness = "L = Q(sqrt(2)), class number 1";
        return v;
    }
    if (auto m = yamamoto_case(f)) {
        v.verdict = Parity::Odd;
        v.matched_case = m->label;
        v.witness = "F = " + f.serialize() + "; " + m->witness;
    } else {
        v.verdict = Parity::Even;
        v.witness = "F = " + f.serialize() + " matches no vanishing case";
    }
    return v;
}

// Parity of h(K) for imaginary K containing sqrt(2).
inline ParityVerdict imag_parity_with_sqrt2(const MultiQuadField& k) {
    if (!k.is_imaginary()) throw hypothesis_error("imag_parity_with_sqrt2: field must be imaginary");
    if (!contains_sqrt(k, 2)) throw hypothesis_error("imag_parity_with_sqrt2: sqrt(2) not in the field");
    ParityVerdict v;
    v.verdict = Parity::Even;
    bool has_i = contains_sqrt(k, -1);

    std::vector<u64> odd_imag;  // d with -d an odd class of the field
    std::vector<u64> odd_real;  // positive odd nontrivial classes
    for (const auto& e : k.elements()) {
        if (e.two || e.is_one()) continue;
        i64 val = e.abs_integer();
        if (e.sign)
            odd_imag.push_back(static_cast<u64>(val));
        else if (val != 1)
            odd_real.push_back(static_cast<u64>(val));
    }
    std::sort(odd_imag.begin(), odd_imag.end());

    if (k.rank() == 2) {
        if (has_i) {
            v.verdict = Parity::Odd;
            v.matched_case = "4.5.4";
            v.witness = "K = Q(sqrt(2), sqrt(-1))";
            return v;
        }
        u64 d = odd_imag.front(); // exactly one odd imaginary class at rank 2
        if (is_prime(d) && d % 8 == 3) {
            v.verdict = Parity::Odd;
            v.matched_case = "4.5.1";
            v.witness = "K = Q(sqrt(2), sqrt(-p)), p=" + std::to_string(d) + " = 3 (mod 8)";
        } else if (is_prime(d) && d % 8 == 5) {
            v.verdict = Parity::EvenNotDiv4;
            v.matched_case = "4.5.p≡5";
            v.witness = "K = Q(sqrt(2), sqrt(-p)), p=" + std::to_string(d) + " = 5 (mod 8)";
            v.notes.push_back("2 | h(K) but 4 does not divide h(K)");
        } else {
            v.witness = "imaginary radicand " + std::to_string(d) + " matches no case";
        }
        return v;
    }

    if (k.rank() == 3 && has_i) {
        if (odd_real.size() == 1 && is_prime(odd_real[0]) &&
            (odd_real[0] % 8 == 3 || odd_real[0] % 8 == 5)) {
            v.verdict = Parity::Odd;
            v.matched_case = "4.5.2";
            v.witness = "K = Q(sqrt(2), sqrt(-1), sqrt(-p)), p=" + std::to_string(odd_real[0]) +
                        " = " + std::to_string(odd_real[0] % 8) + " (mod 8)";
        } else {
            v.witness = "no prime p = 3,5 (mod 8) presentation";
        }
        return v;
    }

    if (k.rank() == 3 && !has_i) {
        if (odd_imag.size() == 2 && is_prime(odd_imag[0]) && is_prime(odd_imag[1]) &&
            odd_imag[0] % 8 == 3 && odd_imag[1] % 8 == 3) {
            v.verdict = Parity::Odd;
            v.matched_case = "4.5.3";
            v.witness = "K = Q(sqrt(2), sqrt(-p), sqrt(-q)), p=" + std::to_string(odd_imag[0]) +
                        ", q=" + std::to_string(odd_imag[1]) + ", p = q = 3 (mod 8)";
            v.notes.push_back(
                "parity for this family is disputed in the literature; the implemented criterion reports odd");
        } else {
            v.witness = "imaginary radicands match no case";
        }
        return v;
    }

    v.witness = "rank " + std::to_string(k.rank()) + " field matches no case";
    return v;
}

// CLI-facing dispatcher: fields without sqrt(2) are out of scope.
inline ParityVerdict classify_parity(const MultiQuadField& k) {
    if (!contains_sqrt(k, 2)) {
        ParityVerdict v;
        v.verdict = Parity::OutOfScope;
        v.witness = "criterion requires sqrt(2) in the field";
        return v;
    }
    return k.is_real() ? real_parity_with_sqrt2(k) : imag_parity_with_sqrt2(k);
}

} // namespace mq2
