#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <sstream>

#include "alcove/closed_subsets.hpp"
#include "alcove/cyclotomic.hpp"
#include "alcove/fusion.hpp"

namespace alcove {

inline constexpr double kPi = 3.14159265358979323846;

// Twist C_lambda = e^{i*pi*t} with t an exact rational reduced mod 2.
struct TwistExponent {
    Rat t;

    bool is_plus_one() const { return t == 0; }
    bool is_minus_one() const { return t == 1; }
    std::complex<double> value() const {
        return std::polar(1.0, kPi * rat_to_double(t));
    }
    friend bool operator==(const TwistExponent& a, const TwistExponent& b) { return a.t == b.t; }
};

inline TwistExponent twist_exponent(const AlcoveCtx& ctx, const Weight& lambda) {
    require(ctx.contains(lambda), "weight " + lambda.str() + " is outside the alcove");
    const Weight shifted = lambda + 2 * ctx.rs.rho;
    Rat t = rat_mod(ctx.rs.inner(lambda, shifted) / rat(ctx.shifted_level), Rat(2));
    ensure(mpz_divisible_p(
               mpz_class(static_cast<long>(2 * ctx.shifted_level * ctx.rs.gram_denominator)).get_mpz_t(),
               t.get_den().get_mpz_t()),
           "twist denominator exceeds the cyclotomic order");
    return TwistExponent{t};
}

// Quantum Weyl dimension via the sine product; positive for alcove weights.
inline double qdim(const AlcoveCtx& ctx, const Weight& lambda) {
    require(ctx.contains(lambda), "weight " + lambda.str() + " is outside the alcove");
    const double denom = static_cast<double>(ctx.shifted_level);
    const Weight lrho = lambda + ctx.rs.rho;
    double value = 1.0;
    for (const auto& pr : ctx.rs.positive_roots) {
        const double a = rat_to_double(ctx.rs.inner(lrho, pr.weight));
        const double b = rat_to_double(ctx.rs.inner(ctx.rs.rho, pr.weight));
        value *= std::sin(kPi * a / denom) / std::sin(kPi * b / denom);
    }
    return value;
}

// Order of the cyclotomic field carrying exact twists and quantum dimensions.
inline long long cyclotomic_order(const AlcoveCtx& ctx) {
    return 2 * ctx.shifted_level * ctx.rs.gram_denominator;
}

inline Cyclotomic twist_value_exact(const AlcoveCtx& ctx, const Weight& lambda) {
    const long long n = cyclotomic_order(ctx);
    const Rat e = ctx.rs.inner(lambda, lambda + 2 * ctx.rs.rho) * rat(ctx.rs.gram_denominator);
    ensure(rat_is_integer(e), "twist exponent is not integral in the cyclotomic field");
    return Cyclotomic::root_of_unity(n, rat_to_ll(e));
}

// Exact quantum dimension: the factors (2i) of each sine cancel between
// numerator and denominator.
inline Cyclotomic qdim_exact(const AlcoveCtx& ctx, const Weight& lambda) {
    require(ctx.contains(lambda), "weight " + lambda.str() + " is outside the alcove");
    const long long n = cyclotomic_order(ctx);
    const long long d = ctx.rs.gram_denominator;
    auto sine_factor = [&](const Rat& pairing) {
        const Rat u = pairing * rat(d);
        ensure(rat_is_integer(u), "sine exponent is not integral in the cyclotomic field");
        const long long k = rat_to_ll(u);
        return Cyclotomic::root_of_unity(n, k) - Cyclotomic::root_of_unity(n, -k);
    };
    const Weight lrho = lambda + ctx.rs.rho;
    Cyclotomic num = Cyclotomic::one(n), den = Cyclotomic::one(n);
    for (const auto& pr : ctx.rs.positive_roots) {
        num = num * sine_factor(ctx.rs.inner(lrho, pr.weight));
        den = den * sine_factor(ctx.rs.inner(ctx.rs.rho, pr.weight));
    }
    return num / den;
}

// Hopf link value S_{lambda,gamma} = sum_mu N_{lambda,gamma}^mu C_mu
// C_lambda^{-1} C_gamma^{-1} qdim(mu).
inline std::complex<double> s_entry(const FusionTable& table, const Weight& lambda,
                                    const Weight& gamma) {
    const AlcoveCtx& ctx = table.ctx();
    const FusionVector& fv = table.product(lambda, gamma);
    const Rat tl = twist_exponent(ctx, lambda).t;
    const Rat tg = twist_exponent(ctx, gamma).t;
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [mu, mult] : fv.coeffs) {
        const Rat tm = twist_exponent(ctx, mu).t;
        acc += static_cast<double>(mult) * std::polar(qdim(ctx, mu), kPi * rat_to_double(tm - tl - tg));
    }
    return acc;
}

inline Cyclotomic s_entry_exact(const FusionTable& table, const Weight& lambda,
                                const Weight& gamma) {
    const AlcoveCtx& ctx = table.ctx();
    const long long n = cyclotomic_order(ctx);
    const FusionVector& fv = table.product(lambda, gamma);
    const Cyclotomic phase_out = (twist_value_exact(ctx, lambda) * twist_value_exact(ctx, gamma)).conj();
    Cyclotomic acc = Cyclotomic::zero(n);
    for (const auto& [mu, mult] : fv.coeffs)
        acc = acc + rat(mult) * (twist_value_exact(ctx, mu) * phase_out * qdim_exact(ctx, mu));
    return acc;
}

// ---- degenerate objects -------------------------------------------------------

// lambda is degenerate in S iff the double braiding with every member of S is
// trivial on every fusion summand: t_mu - t_lambda - t_gamma = 0 (mod 2).
inline bool is_degenerate(const FusionTable& table, const ClosedSubset& S, const Weight& lambda) {
    const AlcoveCtx& ctx = table.ctx();
    require(S.contains(lambda), "weight " + lambda.str() + " is not a member of the subset");
    const Rat tl = twist_exponent(ctx, lambda).t;
    for (const auto& gamma : S.members) {
        const Rat tg = twist_exponent(ctx, gamma).t;
        for (const auto& [mu, mult] : table.product(lambda, gamma).coeffs) {
            const Rat tm = twist_exponent(ctx, mu).t;
            if (rat_mod(tm - tl - tg, Rat(2)) != 0) return false;
        }
    }
    return true;
}

struct DegenerateObject {
    Weight weight;
    bool even = true;      // C = +1; odd means C = -1
    bool invertible = true;
};

inline bool weight_is_invertible(const FusionTable& table, const Weight& w) {
    const FusionVector& sq = table.product(w, dual_weight(table.ctx(), w));
    return sq.size() == 1 && sq.coeffs.front().first.is_zero() && sq.coeffs.front().second == 1;
}

// All degenerate members of S with parity and invertibility.  The degenerate
// set is itself closed under fusion; that invariant is enforced here.
inline std::vector<DegenerateObject> degenerate_report(const FusionTable& table,
                                                       const ClosedSubset& S) {
    const AlcoveCtx& ctx = table.ctx();
    std::vector<DegenerateObject> out;
    for (const auto& lambda : S.members) {
        if (!is_degenerate(table, S, lambda)) continue;
        const Rat t = twist_exponent(ctx, lambda).t;
        ensure(t == 0 || t == 1, "degenerate object with twist exponent " + rat_str(t));
        out.push_back(DegenerateObject{lambda, t == 0, weight_is_invertible(table, lambda)});
    }
    std::vector<Weight> members;
    for (const auto& d : out) members.push_back(d.weight);
    ensure(is_closed(table, members), "degenerate objects do not form a closed subset");
    return out;
}

// ---- fusion ring catalog for the degenerate subcategory ----------------------

struct DegenerateRingTag {
    enum class Kind { Cyclic, KleinFour, DihedralType, Unidentified };
    Kind kind = Kind::Unidentified;
    long long param = 0; // group order for Cyclic, d for DihedralType

    friend bool operator==(const DegenerateRingTag& a, const DegenerateRingTag& b) {
        return a.kind == b.kind && a.param == b.param;
    }
    std::string str() const {
        switch (kind) {
            case Kind::Cyclic:
                return param == 1 ? "trivial" : "Z/" + std::to_string(param);
            case Kind::KleinFour: return "Z/2 x Z/2";
            case Kind::DihedralType: return "dihedral-type d=" + std::to_string(param);
            case Kind::Unidentified: return "unidentified";
        }
        return "unidentified";
    }
};

namespace detail {

// Character-ring structure constants of <x,y | x^2 = y^2 = (xy)^d = 1> for odd
// d: objects 0 (unit), 1 (sign), and V_e for e = 1..(d-1)/2 with qdim 2.
// fold(x) maps an exponent to its class index in 0..(d-1)/2.
inline std::vector<long long> dihedral_product(long long d, long long a, long long b) {
    const long long m = (d - 1) / 2;
    auto fold = [&](long long x) {
        x %= d;
        if (x < 0) x += d;
        return std::min(x, d - x);
    };
    std::vector<long long> out(static_cast<std::size_t>(m) + 2, 0);
    auto add_class = [&](long long cls) {
        if (cls == 0) {
            out[0] += 1; // unit
            out[1] += 1; // sign
        } else {
            out[static_cast<std::size_t>(cls) + 1] += 1;
        }
    };
    const bool a_inv = a < 2, b_inv = b < 2;
    if (a_inv && b_inv) {
        out[(a + b) % 2] = 1;
        return out;
    }
    if (a_inv || b_inv) {
        const long long v = a_inv ? b - 1 : a - 1;
        out[static_cast<std::size_t>(v) + 1] = 1; // sign (and unit) fix every V_e
        return out;
    }
    const long long e = a - 1, f = b - 1; // exponent classes in 1..(d-1)/2
    long long sum_cls = fold(e + f), diff_cls = fold(e - f);
    if (diff_cls == 0) {
        // V_e (x) V_e = unit + sign + V_{2e}
        add_class(0);
        add_class(sum_cls);
    } else {
        add_class(sum_cls);
        add_class(diff_cls);
    }
    return out;
}

} // namespace detail

inline DegenerateRingTag identify_degenerate_ring(const FusionTable& table,
                                                  const std::vector<DegenerateObject>& report) {
    const AlcoveCtx& ctx = table.ctx();
    const std::size_t n = report.size();
    if (n == 0 || n > 24) return DegenerateRingTag{};

    std::vector<int> idx;
    for (const auto& d : report) idx.push_back(ctx.index_of(d.weight));

    const bool all_invertible =
        std::all_of(report.begin(), report.end(), [](const DegenerateObject& d) { return d.invertible; });

    if (all_invertible) {
        // Group structure: products of invertibles are single summands.
        std::vector<std::vector<int>> mult(n, std::vector<int>(n, -1));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                const FusionVector& fv = table.product_by_index(idx[a], idx[b]);
                if (fv.size() != 1 || fv.coeffs.front().second != 1) return DegenerateRingTag{};
                const int target = ctx.index_of(fv.coeffs.front().first);
                auto it = std::find(idx.begin(), idx.end(), target);
                if (it == idx.end()) return DegenerateRingTag{};
                mult[a][b] = static_cast<int>(it - idx.begin());
            }
        }
        int unit = -1;
        for (std::size_t a = 0; a < n; ++a)
            if (ctx.alcove[static_cast<std::size_t>(idx[a])].is_zero()) unit = static_cast<int>(a);
        if (unit < 0) return DegenerateRingTag{};
        auto order_of = [&](int a) {
            int x = a, ord = 1;
            while (x != unit) {
                x = mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
                ++ord;
            }
            return ord;
        };
        int max_order = 1;
        for (std::size_t a = 0; a < n; ++a) max_order = std::max(max_order, order_of(static_cast<int>(a)));
        if (max_order == static_cast<int>(n))
            return DegenerateRingTag{DegenerateRingTag::Kind::Cyclic, static_cast<long long>(n)};
        if (n == 4 && max_order == 2) return DegenerateRingTag{DegenerateRingTag::Kind::KleinFour, 0};
        return DegenerateRingTag{};
    }

    // Two invertibles plus (d-1)/2 objects of quantum dimension 2.
    std::vector<std::size_t> invertibles, twos;
    for (std::size_t a = 0; a < n; ++a) {
        if (report[a].invertible) {
            invertibles.push_back(a);
        } else {
            if (std::abs(qdim(ctx, report[a].weight) - 2.0) > 1e-9) return DegenerateRingTag{};
            twos.push_back(a);
        }
    }
    if (invertibles.size() != 2) return DegenerateRingTag{};
    const long long d = 2 * static_cast<long long>(twos.size()) + 1;

    std::size_t unit, sign;
    if (ctx.alcove[static_cast<std::size_t>(idx[invertibles[0]])].is_zero()) {
        unit = invertibles[0];
        sign = invertibles[1];
    } else if (ctx.alcove[static_cast<std::size_t>(idx[invertibles[1]])].is_zero()) {
        unit = invertibles[1];
        sign = invertibles[0];
    } else {
        return DegenerateRingTag{};
    }

    // Backtracking bijection of the qdim-2 objects onto classes 1..(d-1)/2.
    std::vector<long long> assign(twos.size());
    std::iota(assign.begin(), assign.end(), 1);
    auto catalog_index = [&](std::size_t obj) -> long long {
        if (obj == unit) return 0;
        if (obj == sign) return 1;
        auto it = std::find(twos.begin(), twos.end(), obj);
        return 1 + assign[static_cast<std::size_t>(it - twos.begin())];
    };
    do {
        bool match = true;
        for (std::size_t a = 0; a < n && match; ++a) {
            for (std::size_t b = a; b < n && match; ++b) {
                auto expected = detail::dihedral_product(d, catalog_index(a), catalog_index(b));
                const FusionVector& fv = table.product_by_index(idx[a], idx[b]);
                std::vector<long long> actual(expected.size(), 0);
                for (const auto& [mu, mlt] : fv.coeffs) {
                    const int target = ctx.index_of(mu);
                    auto it = std::find(idx.begin(), idx.end(), target);
                    if (it == idx.end()) {
                        match = false;
                        break;
                    }
                    actual[static_cast<std::size_t>(
                        catalog_index(static_cast<std::size_t>(it - idx.begin())))] += mlt;
                }
                if (match && actual != expected) match = false;
            }
        }
        if (match) return DegenerateRingTag{DegenerateRingTag::Kind::DihedralType, d};
    } while (std::next_permutation(assign.begin(), assign.end()));
    return DegenerateRingTag{};
}

// ---- verdicts -----------------------------------------------------------------

enum class ModularVerdict { ModularAsIs, ModularAfterQuotient, SpinModular };

inline std::string verdict_str(ModularVerdict v) {
    switch (v) {
        case ModularVerdict::ModularAsIs: return "ModularAsIs";
        case ModularVerdict::ModularAfterQuotient: return "ModularAfterQuotient";
        case ModularVerdict::SpinModular: return "SpinModular";
    }
    return "ModularAsIs";
}

struct ModularityReport {
    ModularVerdict verdict = ModularVerdict::ModularAsIs;
    std::vector<DegenerateObject> degenerates;
    DegenerateRingTag ring;
};

inline ModularityReport modularity_report(const FusionTable& table, const ClosedSubset& S) {
    ModularityReport rep;
    rep.degenerates = degenerate_report(table, S);
    rep.ring = identify_degenerate_ring(table, rep.degenerates);
    const bool any_odd =
        std::any_of(rep.degenerates.begin(), rep.degenerates.end(),
                    [](const DegenerateObject& d) { return !d.even; });
    const bool only_unit = rep.degenerates.size() == 1 && rep.degenerates.front().weight.is_zero();
    if (any_odd)
        rep.verdict = ModularVerdict::SpinModular;
    else if (only_unit)
        rep.verdict = ModularVerdict::ModularAsIs;
    else
        rep.verdict = ModularVerdict::ModularAfterQuotient;
    return rep;
}

// Full per-subset scalar data.
struct ModularData {
    ClosedSubset subset;
    std::vector<double> qdims;                                  // by member order
    std::vector<TwistExponent> twists;                          // by member order
    std::vector<std::vector<std::complex<double>>> s_matrix;    // subset x subset
    std::optional<std::vector<std::vector<Cyclotomic>>> s_matrix_exact;
    ModularityReport report;
};

inline ModularData modular_data(const FusionTable& table, const ClosedSubset& S, bool exact_s = false) {
    const AlcoveCtx& ctx = table.ctx();
    ModularData md;
    md.subset = S;
    const std::size_t n = S.members.size();
    md.qdims.reserve(n);
    md.twists.reserve(n);
    for (const auto& w : S.members) {
        md.qdims.push_back(qdim(ctx, w));
        ensure(md.qdims.back() > 0, "quantum dimension must be positive");
        md.twists.push_back(twist_exponent(ctx, w));
    }
    md.s_matrix.assign(n, std::vector<std::complex<double>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            md.s_matrix[a][b] = md.s_matrix[b][a] = s_entry(table, S.members[a], S.members[b]);
    if (exact_s) {
        std::vector<std::vector<Cyclotomic>> es(n, std::vector<Cyclotomic>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                es[a][b] = es[b][a] = s_entry_exact(table, S.members[a], S.members[b]);
        md.s_matrix_exact = std::move(es);
    }
    md.report = modularity_report(table, S);
    return md;
}

// ---- S-matrix identity checks ---------------------------------------------------

struct SIdentityReport {
    double max_product_residual = 0;  // S_{lambda (x) gamma, mu} = S_lm S_gm / qdim(mu)
    double max_row_residual = 0;      // sum_gamma qdim(gamma) S_{lambda gamma} = delta Sum qdim^2
    double max_modulus_excess = 0;    // |S~| <= 1
    double abs_det = 0;
    double tol_identity = 1e-9;
    double tol_det = 1e-6;

    bool product_identity_ok() const { return max_product_residual <= tol_identity; }
    bool row_identity_ok() const { return max_row_residual <= tol_identity; }
    bool modulus_bound_ok() const { return max_modulus_excess <= tol_identity; }
    bool nondegenerate_ok() const { return abs_det > tol_det; }
    bool all_ok() const {
        return product_identity_ok() && row_identity_ok() && modulus_bound_ok() && nondegenerate_ok();
    }
    std::string detail() const {
        std::ostringstream os;
        os << "product residual " << max_product_residual << ", row residual " << max_row_residual
           << ", modulus excess " << max_modulus_excess << ", |det S| " << abs_det;
        return os.str();
    }
};

inline SIdentityReport verify_s_identities(const FusionTable& table, double tol_identity = 1e-9,
                                           double tol_det = 1e-6) {
    const AlcoveCtx& ctx = table.ctx();
    const std::size_t n = ctx.alcove.size();
    SIdentityReport rep;
    rep.tol_identity = tol_identity;
    rep.tol_det = tol_det;

    std::vector<double> dims(n);
    for (std::size_t i = 0; i < n; ++i) dims[i] = qdim(ctx, ctx.alcove[i]);
    std::vector<std::vector<std::complex<double>>> S(n, std::vector<std::complex<double>>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            S[a][b] = S[b][a] = s_entry(table, ctx.alcove[a], ctx.alcove[b]);

    auto rel = [](double err, double scale) { return err / std::max(1.0, scale); };

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t m = 0; m < n; ++m) {
                std::complex<double> lhs(0.0, 0.0);
                for (const auto& [eta, mult] : table.product_by_index(static_cast<int>(a),
                                                                      static_cast<int>(b)).coeffs)
                    lhs += static_cast<double>(mult) * S[static_cast<std::size_t>(ctx.index_of(eta))][m];
                const std::complex<double> rhs = S[a][m] * S[b][m] / dims[m];
                rep.max_product_residual = std::max(
                    rep.max_product_residual, rel(std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs))));
            }
        }
    }

    double sum_sq = 0;
    for (std::size_t g = 0; g < n; ++g) sum_sq += dims[g] * dims[g];
    for (std::size_t a = 0; a < n; ++a) {
        std::complex<double> row(0.0, 0.0);
        for (std::size_t g = 0; g < n; ++g) row += dims[g] * S[a][g];
        const double expect = a == 0 ? sum_sq : 0.0;
        rep.max_row_residual = std::max(rep.max_row_residual, rel(std::abs(row - expect), sum_sq));
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            rep.max_modulus_excess =
                std::max(rep.max_modulus_excess, std::abs(S[a][b]) / (dims[a] * dims[b]) - 1.0);

    // determinant by LU with partial pivoting
    {
        auto M = S;
        std::complex<double> det(1.0, 0.0);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            for (std::size_t row = col + 1; row < n; ++row)
                if (std::abs(M[row][col]) > std::abs(M[pivot][col])) pivot = row;
            if (std::abs(M[pivot][col]) == 0.0) {
                det = 0.0;
                break;
            }
            if (pivot != col) {
                std::swap(M[pivot], M[col]);
                det = -det;
            }
            det *= M[col][col];
            for (std::size_t row = col + 1; row < n; ++row) {
                const std::complex<double> f = M[row][col] / M[col][col];
                for (std::size_t j = col; j < n; ++j) M[row][j] -= f * M[col][j];
            }
        }
        rep.abs_det = std::abs(det);
    }
    return rep;
}

} // namespace alcove
