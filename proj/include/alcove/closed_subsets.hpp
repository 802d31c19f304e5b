#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "alcove/fusion.hpp"

namespace alcove {

struct ClassificationTag {
    enum class Kind {
        GammaZ,
        DeltaZ,
        ExcB,
        ExcD_even, // D_l set with the two doubled spin corners, l = n*j
        ExcD_odd,  // D_l set without them, 2l = n*j with n odd
        ExcE7_a,
        ExcE7_b,
        ExcE8,
        Unclassified,
    };
    Kind kind = Kind::Unclassified;
    std::vector<int> subgroup; // center element ids, for GammaZ / DeltaZ
    long long j = 0, n = 0;    // parameters of the exceptional families

    friend bool operator==(const ClassificationTag& a, const ClassificationTag& b) {
        return a.kind == b.kind && a.subgroup == b.subgroup && a.j == b.j && a.n == b.n;
    }

    std::string str() const {
        auto with_params = [&](const std::string& name) {
            return name + "(j=" + std::to_string(j) + ",n=" + std::to_string(n) + ")";
        };
        auto with_subgroup = [&](const std::string& name) {
            std::string s = name + "{";
            for (std::size_t i = 0; i < subgroup.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(subgroup[i]);
            }
            return s + "}";
        };
        switch (kind) {
            case Kind::GammaZ: return with_subgroup("GammaZ");
            case Kind::DeltaZ: return with_subgroup("DeltaZ");
            case Kind::ExcB: return with_params("ExcB");
            case Kind::ExcD_even: return with_params("ExcD_even");
            case Kind::ExcD_odd: return with_params("ExcD_odd");
            case Kind::ExcE7_a: return "ExcE7_a";
            case Kind::ExcE7_b: return "ExcE7_b";
            case Kind::ExcE8: return "ExcE8";
            case Kind::Unclassified: return "Unclassified";
        }
        return "Unclassified";
    }
};

// A duality- and fusion-closed subset of the alcove.
struct ClosedSubset {
    std::vector<Weight> members; // alcove-ordered
    ClassificationTag tag;

    bool contains(const Weight& w) const {
        return std::find(members.begin(), members.end(), w) != members.end();
    }
    std::size_t size() const { return members.size(); }
    friend bool operator==(const ClosedSubset& a, const ClosedSubset& b) {
        return a.members == b.members;
    }
};

namespace detail {

using IndexSet = std::vector<char>; // characteristic vector over alcove indices

inline std::vector<Weight> indices_to_members(const AlcoveCtx& ctx, const IndexSet& s) {
    std::vector<Weight> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) out.push_back(ctx.alcove[i]);
    return out;
}

inline IndexSet members_to_indices(const AlcoveCtx& ctx, const std::vector<Weight>& members) {
    IndexSet s(ctx.alcove.size(), 0);
    for (const auto& w : members) s[static_cast<std::size_t>(ctx.index_of(w))] = 1;
    return s;
}

// Least fusion-closed superset; the duality step is optional so tests can
// confirm that tensor closure already implies it.
inline IndexSet close_indices(const FusionTable& table, IndexSet s, bool duality_step) {
    const AlcoveCtx& ctx = table.ctx();
    s[0] = 1; // the unit
    std::vector<int> worklist;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) worklist.push_back(static_cast<int>(i));

    auto add = [&](int idx) {
        if (!s[static_cast<std::size_t>(idx)]) {
            s[static_cast<std::size_t>(idx)] = 1;
            worklist.push_back(idx);
        }
    };

    std::vector<int> processed;
    while (!worklist.empty()) {
        int a = worklist.back();
        worklist.pop_back();
        if (duality_step) add(table.dual_index(a));
        processed.push_back(a);
        for (int b : processed)
            for (int c : table.support_indices(a, b)) add(c);
    }
    (void)ctx;
    return s;
}

} // namespace detail

inline bool is_closed(const FusionTable& table, const std::vector<Weight>& members) {
    const AlcoveCtx& ctx = table.ctx();
    detail::IndexSet s = detail::members_to_indices(ctx, members);
    if (!s[0]) return false;
    std::vector<int> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) idx.push_back(static_cast<int>(i));
    for (int a : idx) {
        if (!s[static_cast<std::size_t>(table.dual_index(a))]) return false;
        for (int b : idx)
            for (int c : table.support_indices(a, b))
                if (!s[static_cast<std::size_t>(c)]) return false;
    }
    return true;
}

inline ClosedSubset closure(const FusionTable& table, const std::vector<Weight>& generators,
                            bool duality_step = true) {
    const AlcoveCtx& ctx = table.ctx();
    for (const auto& g : generators)
        require(ctx.contains(g), "closure generator " + g.str() + " is outside the alcove");
    auto s = detail::close_indices(table, detail::members_to_indices(ctx, generators), duality_step);
    ClosedSubset out;
    out.members = detail::indices_to_members(ctx, s);
    return out;
}

// Gamma_Z: alcove weights on which the subgroup Z acts trivially, i.e.
// (gamma, ell(z)) integral for every z in Z.
inline ClosedSubset gamma_Z(const FusionTable& table, const CenterMap& cm,
                            const std::vector<int>& subgroup, bool verify = true) {
    const AlcoveCtx& ctx = table.ctx();
    ClosedSubset out;
    for (const auto& gamma : ctx.alcove) {
        bool integral = true;
        for (int id : subgroup) {
            if (!rat_is_integer(center_pairing(ctx.rs, gamma, cm.elements[static_cast<std::size_t>(id)]))) {
                integral = false;
                break;
            }
        }
        if (integral) out.members.push_back(gamma);
    }
    if (verify) ensure(is_closed(table, out.members), "Gamma_Z is not closed");
    return out;
}

// Delta_Z: the image of Z under k*ell; every member is invertible.
inline ClosedSubset delta_Z(const FusionTable& table, const CenterMap& cm,
                            const std::vector<int>& subgroup, bool verify = true) {
    const AlcoveCtx& ctx = table.ctx();
    std::set<Weight> members;
    for (int id : subgroup) members.insert(ctx.level * cm.elements[static_cast<std::size_t>(id)].ell);
    ClosedSubset out;
    out.members.assign(members.begin(), members.end());
    std::sort(out.members.begin(), out.members.end(), graded_lex_less);
    if (verify) {
        ensure(is_closed(table, out.members), "Delta_Z is not closed");
        for (const auto& w : out.members) {
            const FusionVector& sq = table.product(w, dual_weight(ctx, w));
            ensure(sq.size() == 1 && sq.coeffs.front().first.is_zero(),
                   "Delta_Z member " + w.str() + " is not invertible");
        }
    }
    return out;
}

// The complete lattice of closed subsets: every closed set is the join of the
// singleton closures of its members, so iterated pairwise joins of singleton
// closures reach all of them.
inline std::vector<ClosedSubset> enumerate_closed(const FusionTable& table,
                                                  std::size_t max_alcove = 200) {
    const AlcoveCtx& ctx = table.ctx();
    require(ctx.alcove.size() <= max_alcove,
            "alcove size " + std::to_string(ctx.alcove.size()) + " exceeds the enumeration bound " +
                std::to_string(max_alcove));

    std::set<detail::IndexSet> sets;
    std::vector<detail::IndexSet> singles;
    for (std::size_t i = 0; i < ctx.alcove.size(); ++i) {
        detail::IndexSet s(ctx.alcove.size(), 0);
        s[i] = 1;
        auto closed = detail::close_indices(table, std::move(s), true);
        if (sets.insert(closed).second) singles.push_back(closed);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<detail::IndexSet> current(sets.begin(), sets.end());
        for (const auto& a : current) {
            for (const auto& single : singles) {
                detail::IndexSet u = a;
                bool grows = false;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    if (single[i] && !u[i]) {
                        u[i] = 1;
                        grows = true;
                    }
                }
                if (!grows) continue;
                auto closed = detail::close_indices(table, std::move(u), true);
                if (sets.insert(closed).second) changed = true;
            }
        }
    }

    std::vector<ClosedSubset> out;
    for (const auto& s : sets) {
        ClosedSubset cs;
        cs.members = detail::indices_to_members(ctx, s);
        out.push_back(std::move(cs));
    }
    std::sort(out.begin(), out.end(), [](const ClosedSubset& a, const ClosedSubset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.members < b.members;
    });
    return out;
}

// Theorem-2 exceptional sets applicable to this algebra and level, with their
// tags.  Parameters (j, n) range over all divisor solutions; n must be odd
// for the families whose last element is lambda_{(n-1)j/2}.
inline std::vector<std::pair<ClassificationTag, std::vector<Weight>>> exceptional_sets(
    const AlcoveCtx& ctx) {
    std::vector<std::pair<ClassificationTag, std::vector<Weight>>> out;
    if (ctx.level != 2) return out;
    const int r = ctx.rs.rank();
    const Family fam = ctx.rs.algebra.family;
    auto fw = [&](int i_one_based, long long mult = 1) {
        return Weight::fundamental(static_cast<std::size_t>(r), static_cast<std::size_t>(i_one_based - 1), mult);
    };
    auto sorted = [](std::vector<Weight> v) {
        std::sort(v.begin(), v.end(), graded_lex_less);
        return v;
    };

    if (fam == Family::E && r == 7) {
        ClassificationTag a{ClassificationTag::Kind::ExcE7_a, {}, 0, 0};
        out.emplace_back(a, sorted({Weight::zero(7), fw(6)}));
        ClassificationTag b{ClassificationTag::Kind::ExcE7_b, {}, 0, 0};
        out.emplace_back(b, sorted({Weight::zero(7), fw(2), fw(7, 2)}));
    }
    if (fam == Family::E && r == 8) {
        ClassificationTag t{ClassificationTag::Kind::ExcE8, {}, 0, 0};
        out.emplace_back(t, sorted({Weight::zero(8), fw(1)}));
    }
    if (fam == Family::B) {
        const long long two_l_plus_1 = 2LL * r + 1;
        for (long long j = 3; j <= two_l_plus_1; ++j) {
            if (two_l_plus_1 % j != 0) continue;
            const long long n = two_l_plus_1 / j; // odd automatically
            std::vector<Weight> members{Weight::zero(static_cast<std::size_t>(r)), fw(1, 2)};
            for (long long m = 1; m <= (n - 1) / 2; ++m)
                members.push_back(fw(static_cast<int>(m * j)));
            ClassificationTag t{ClassificationTag::Kind::ExcB, {}, j, n};
            out.emplace_back(t, sorted(std::move(members)));
        }
    }
    if (fam == Family::D) {
        const long long l = r;
        for (long long j = 3; j <= l; ++j) {
            if (l % j != 0) continue;
            const long long n = l / j;
            std::vector<Weight> members{Weight::zero(static_cast<std::size_t>(r)), fw(1, 2),
                                        fw(r - 1, 2), fw(r, 2)};
            for (long long m = 1; m <= n - 1; ++m)
                members.push_back(fw(static_cast<int>(m * j)));
            ClassificationTag t{ClassificationTag::Kind::ExcD_even, {}, j, n};
            out.emplace_back(t, sorted(std::move(members)));
        }
        for (long long n = 1; n <= 2 * l; n += 2) {
            if ((2 * l) % n != 0) continue;
            const long long j = 2 * l / n;
            if (j <= 2) continue;
            std::vector<Weight> members{Weight::zero(static_cast<std::size_t>(r)), fw(1, 2)};
            for (long long m = 1; m <= (n - 1) / 2; ++m)
                members.push_back(fw(static_cast<int>(m * j)));
            ClassificationTag t{ClassificationTag::Kind::ExcD_odd, {}, j, n};
            out.emplace_back(t, sorted(std::move(members)));
        }
    }
    return out;
}

// Matches S against Gamma_Z, Delta_Z, then the exceptional families, in that
// precedence order.
inline ClassificationTag classify(const FusionTable& table, const CenterMap& cm,
                                  const ClosedSubset& S) {
    for (const auto& sub : subgroups_of_center(cm)) {
        if (gamma_Z(table, cm, sub, false).members == S.members)
            return ClassificationTag{ClassificationTag::Kind::GammaZ, sub, 0, 0};
    }
    for (const auto& sub : subgroups_of_center(cm)) {
        if (delta_Z(table, cm, sub, false).members == S.members)
            return ClassificationTag{ClassificationTag::Kind::DeltaZ, sub, 0, 0};
    }
    for (const auto& [tag, members] : exceptional_sets(table.ctx())) {
        if (members == S.members) return tag;
    }
    return ClassificationTag{};
}

// Roots alpha (short roots in the nonsimply-laced case) with lambda_i + alpha
// inside the alcove at level k = (lambda_i, theta); ground truth for the
// dull-corner chart.
inline std::vector<Weight> chart_shifts(const RootSystem& rs, int fw_index_one_based) {
    const int r = rs.rank();
    require(fw_index_one_based >= 1 && fw_index_one_based <= r, "fundamental weight index out of range");
    const int i = fw_index_one_based - 1;
    const Weight lam = Weight::fundamental(static_cast<std::size_t>(r), static_cast<std::size_t>(i));
    require(rs.long_simple[static_cast<std::size_t>(i)] && rs.theta_pairing[static_cast<std::size_t>(i)] >= 2,
            "lambda_" + std::to_string(fw_index_one_based) + " is not a dull long fundamental weight of " +
                rs.algebra.str());
    const long long k = rs.theta_pairing[static_cast<std::size_t>(i)];

    const Rat short_norm = rs.beta == rs.theta ? Rat(2) : rs.norm2(rs.beta);
    std::vector<Weight> shifts;
    for (const auto& pr : rs.positive_roots) {
        if (!rs.simply_laced && pr.norm2 != short_norm) continue;
        for (int sign : {+1, -1}) {
            Weight alpha = sign * pr.weight;
            Weight shifted = lam + alpha;
            if (!shifted.is_dominant()) continue;
            if (rs.level(shifted) > k) continue;
            shifts.push_back(std::move(alpha));
        }
    }
    std::sort(shifts.begin(), shifts.end());
    return shifts;
}

// Least m <= bound with 0 a summand of lambda^{tensor m}, following supports only.
inline std::optional<long long> min_fusion_power_containing_zero(const FusionTable& table,
                                                                 const Weight& lambda,
                                                                 long long bound) {
    const AlcoveCtx& ctx = table.ctx();
    require(ctx.contains(lambda), "weight " + lambda.str() + " is outside the alcove");
    require(bound >= 1, "power bound must be at least 1");
    const int il = ctx.index_of(lambda);
    detail::IndexSet cur(ctx.alcove.size(), 0);
    cur[static_cast<std::size_t>(il)] = 1;
    for (long long m = 1; m <= bound; ++m) {
        if (cur[0]) return m;
        detail::IndexSet next(ctx.alcove.size(), 0);
        for (std::size_t a = 0; a < cur.size(); ++a) {
            if (!cur[a]) continue;
            for (int c : table.support_indices(static_cast<int>(a), il))
                next[static_cast<std::size_t>(c)] = 1;
        }
        cur = std::move(next);
    }
    return std::nullopt;
}

} // namespace alcove
