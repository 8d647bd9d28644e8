#pragma once

// Multi-quadratic fields as finite F2 subgroups of square classes.  The
// canonical basis is kept in reduced row-echelon form over the coordinate
// order (sign, two, odd primes ascending), which makes membership tests,
// real/imaginary structure and kernel computations plain linear algebra.

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "square_class.hpp"

namespace mq2 {

class MultiQuadField {
public:
    MultiQuadField() = default; // the rational field, rank 0

    static MultiQuadField from_classes(std::span<const SquareClass> gens) {
        MultiQuadField f;
        for (const auto& g : gens) f.insert(g);
        return f;
    }

    // Radicands must already be squarefree.
    static MultiQuadField from_radicands(std::span<const i64> rads) {
        MultiQuadField f;
        for (i64 r : rads) f.insert(SquareClass::from_squarefree(r));
        return f;
    }

    // Radicands reduced modulo squares first (the CLI input path).
    static MultiQuadField from_reduced_radicands(std::span<const i64> rads) {
        MultiQuadField f;
        for (i64 r : rads) f.insert(SquareClass::reduce(r));
        return f;
    }

    const std::vector<SquareClass>& basis() const { return basis_; }
    int rank() const { return static_cast<int>(basis_.size()); }

    i64 degree() const {
        if (rank() > 62) throw input_error("field degree exceeds 2^62");
        return i64{1} << rank();
    }

    bool is_real() const {
        for (const auto& b : basis_)
            if (b.sign) return false;
        return true;
    }
    bool is_imaginary() const { return !is_real(); }

    bool contains(const SquareClass& c) const { return reduce_against_basis(c).is_one(); }

    // All 2^rank subgroup elements, in a deterministic order.
    std::vector<SquareClass> elements() const {
        if (rank() > 20) throw input_error("subgroup enumeration limited to rank 20");
        std::vector<SquareClass> out{SquareClass::one()};
        for (const auto& b : basis_) {
            size_t n = out.size();
            for (size_t i = 0; i < n; ++i) out.push_back(out[i] * b);
        }
        std::sort(out.begin(), out.end(), square_class_less);
        return out;
    }

    MultiQuadField adjoin(const SquareClass& c) const {
        MultiQuadField f = *this;
        f.insert(c);
        return f;
    }

    // Kernel of the sign functional: the maximal totally real subfield.
    MultiQuadField real_subfield() const { return kernel(SquareClass::kSignOrdinal); }

    // Kernel of the 2-coordinate functional: the classes with odd radicand.
    MultiQuadField odd_class_subfield() const { return kernel(SquareClass::kTwoOrdinal); }

    // Canonical text form: comma-separated radicands of the reduced basis.
    std::string serialize() const {
        std::string out;
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(basis_[i].to_integer());
        }
        return out;
    }

    static MultiQuadField parse(std::string_view text) {
        return from_reduced_radicands(parse_radicand_list(text));
    }

    static std::vector<i64> parse_radicand_list(std::string_view text) {
        std::vector<i64> rads;
        std::string item;
        std::stringstream ss{std::string(text)};
        while (std::getline(ss, item, ',')) {
            size_t a = item.find_first_not_of(" \t");
            size_t b = item.find_last_not_of(" \t");
            if (a == std::string::npos) throw input_error("empty radicand in list");
            item = item.substr(a, b - a + 1);
            try {
                size_t used = 0;
                i64 v = std::stoll(item, &used);
                if (used != item.size()) throw input_error("");
                if (v == 0) throw input_error("");
                rads.push_back(v);
            } catch (const std::exception&) {
                throw input_error("radicand list: expected nonzero integers, got '" + item + "'");
            }
        }
        return rads;
    }

    bool operator==(const MultiQuadField&) const = default;

private:
    std::vector<SquareClass> basis_; // reduced row echelon, sorted by pivot

    SquareClass reduce_against_basis(SquareClass c) const {
        for (const auto& b : basis_) {
            if (c.is_one()) break;
            if (c.has_coordinate(b.pivot())) c = c * b;
        }
        return c;
    }

    void insert(SquareClass c) {
        c = reduce_against_basis(c);
        if (c.is_one()) return;
        for (auto& b : basis_)
            if (b.has_coordinate(c.pivot())) b = b * c;
        basis_.push_back(std::move(c));
        std::sort(basis_.begin(), basis_.end(),
                  [](const SquareClass& a, const SquareClass& b) { return a.pivot() < b.pivot(); });
    }

    // Kernel of a single coordinate functional: keep the rows where it is
    // zero; rows where it is one survive only in pairwise products.
    MultiQuadField kernel(u64 ordinal) const {
        std::vector<SquareClass> gens;
        std::optional<SquareClass> flagged;
        for (const auto& b : basis_) {
            if (!b.has_coordinate(ordinal)) {
                gens.push_back(b);
            } else if (!flagged) {
                flagged = b;
            } else {
                gens.push_back(b * *flagged);
            }
        }
        return from_classes(gens);
    }
};

inline MultiQuadField field_from_radicands(std::span<const i64> rads) {
    return MultiQuadField::from_radicands(rads);
}

// Membership of sqrt(d): d reduced modulo squares, sign preserved.
inline bool contains_sqrt(const MultiQuadField& k, i64 d) {
    return k.contains(SquareClass::reduce(d));
}

inline MultiQuadField maximal_real_subfield(const MultiQuadField& k) {
    return k.real_subfield();
}

// True iff 8 divides the conductor, i.e. some basis class carries the
// coordinate of 2 (some quadratic subfield is Q(sqrt(2m)) with m odd).
inline bool conductor_two_part_exceeds_4(const MultiQuadField& f) {
    for (const auto& b : f.basis())
        if (b.two) return true;
    return false;
}

struct GenusFieldResult {
    MultiQuadField base;
    std::vector<SquareClass> narrow_generators; // the p* classes
    MultiQuadField narrow;
    MultiQuadField genus;
};

// Narrow genus field: adjoin sqrt(p*) for every odd prime p ramified in the
// field, where p* = (-1)^((p-1)/2) p.  A prime divides a subgroup element iff
// it divides a basis element, so the basis scan is exhaustive.  The genus
// field is the real part of the narrow one for totally real base fields and
// coincides with it for totally imaginary ones.
inline GenusFieldResult narrow_genus_field(const MultiQuadField& f) {
    GenusFieldResult out;
    out.base = f;
    std::vector<u64> ramified;
    for (const auto& b : f.basis())
        for (u64 p : b.odd_primes) ramified.push_back(p);
    std::sort(ramified.begin(), ramified.end());
    ramified.erase(std::unique(ramified.begin(), ramified.end()), ramified.end());

    out.narrow = f;
    for (u64 p : ramified) {
        SquareClass star;
        star.sign = (p % 4 == 3);
        star.odd_primes = {p};
        out.narrow_generators.push_back(star);
        out.narrow = out.narrow.adjoin(star);
    }
    out.genus = f.is_real() ? out.narrow.real_subfield() : out.narrow;
    return out;
}

// Normal form of an imaginary field as Q(sqrt(d_1), ..., sqrt(d_r), sqrt(-d)):
// real_radicands is a basis of the maximal real subfield (positive squarefree
// representatives) and -d is an imaginary class.  theta records whether
// sqrt(2) lies in the field.  When some real radicand has an odd prime that
// divides neither d nor the remaining real radicands, the presentation is
// ordered with such a radicand last and admissible is set; the search tries
// every basis element in last position and every imaginary class as -d.
// The radicands of the theta-stripped presentation are kept alongside; they
// drive the ramification-count formulas.
struct CanonicalPresentation {
    std::vector<i64> real_radicands;
    i64 imaginary_radicand = 1; // d
    bool theta = false;
    bool admissible = true;
    std::vector<i64> reduced_real_radicands; // real basis after stripping sqrt(2), witness last
};

inline CanonicalPresentation canonical_presentation(const MultiQuadField& k) {
    if (!k.is_imaginary()) throw hypothesis_error("canonical presentation requires an imaginary field");
    CanonicalPresentation pres;
    SquareClass two_class = SquareClass::from_squarefree(2);
    pres.theta = k.contains(two_class);

    MultiQuadField reduced = pres.theta ? k.odd_class_subfield() : k;
    MultiQuadField reduced_real = reduced.real_subfield();

    std::vector<i64> imaginary_candidates; // d with -d a class of the reduced field
    for (const auto& e : reduced.elements())
        if (e.sign) imaginary_candidates.push_back(e.abs_integer());
    std::sort(imaginary_candidates.begin(), imaginary_candidates.end());
    if (imaginary_candidates.empty())
        throw internal_error("imaginary field without imaginary classes");

    const auto& rows = reduced_real.basis();
    pres.admissible = rows.empty(); // r = 0 needs no witness
    size_t witness_row = rows.size();
    i64 chosen_d = imaginary_candidates.front();
    for (i64 d : imaginary_candidates) {
        if (pres.admissible) break;
        SquareClass dc = SquareClass::reduce(d);
        for (size_t j = 0; j < rows.size() && !pres.admissible; ++j) {
            for (u64 q : rows[j].odd_primes) {
                if (dc.divisible_by_odd_prime(q)) continue;
                bool in_other_row = false;
                for (size_t i = 0; i < rows.size(); ++i)
                    if (i != j && rows[i].divisible_by_odd_prime(q)) in_other_row = true;
                if (in_other_row) continue;
                pres.admissible = true;
                witness_row = j;
                chosen_d = d;
                break;
            }
        }
    }

    pres.imaginary_radicand = chosen_d;
    for (size_t j = 0; j < rows.size(); ++j)
        if (j != witness_row) pres.reduced_real_radicands.push_back(rows[j].to_integer());
    if (witness_row < rows.size())
        pres.reduced_real_radicands.push_back(rows[witness_row].to_integer());

    if (pres.theta) {
        MultiQuadField k_plus = k.real_subfield();
        for (const auto& b : k_plus.basis()) pres.real_radicands.push_back(b.to_integer());
    } else {
        pres.real_radicands = pres.reduced_real_radicands;
    }
    return pres;
}

} // namespace mq2
