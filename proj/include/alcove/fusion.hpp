#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "alcove/characters.hpp"
#include "alcove/root_system.hpp"

namespace alcove {

// The level-k Weyl alcove: dominant weights with (lambda, theta) <= k, in
// graded lexicographic order.  Immutable after construction.
struct AlcoveCtx {
    RootSystem rs;
    long long level = 0;
    long long shifted_level = 0; // k + dual Coxeter number
    std::vector<Weight> alcove;
    std::unordered_map<Weight, int, WeightHash> index;

    bool contains(const Weight& w) const { return index.count(w) != 0; }
    int index_of(const Weight& w) const {
        auto it = index.find(w);
        require(it != index.end(), "weight " + w.str() + " is not in the level-" +
                                       std::to_string(level) + " alcove of " + rs.algebra.str());
        return it->second;
    }
};

inline AlcoveCtx enumerate_alcove(const RootSystem& rs, long long k) {
    require(k >= 0, "level must be nonnegative");
    AlcoveCtx ctx;
    ctx.rs = rs;
    ctx.level = k;
    ctx.shifted_level = k + rs.dual_coxeter;

    const int r = rs.rank();
    std::vector<long long> labels(r, 0);
    std::function<void(int, long long)> rec = [&](int t, long long used) {
        if (t == r) {
            ctx.alcove.emplace_back(labels);
            return;
        }
        for (long long v = 0; used + v * rs.theta_pairing[t] <= k; ++v) {
            labels[t] = v;
            rec(t + 1, used + v * rs.theta_pairing[t]);
        }
        labels[t] = 0;
    };
    rec(0, 0);
    std::sort(ctx.alcove.begin(), ctx.alcove.end(), graded_lex_less);
    for (std::size_t i = 0; i < ctx.alcove.size(); ++i)
        ctx.index.emplace(ctx.alcove[i], static_cast<int>(i));
    ensure(!ctx.alcove.empty() && ctx.alcove.front().is_zero(), "alcove must start at 0");
    return ctx;
}

// Folds mu under the rho-shifted action of the quantum Weyl group.  Returns
// nullopt when mu + rho lies on a reflection wall; otherwise the unique
// alcove representative with the sign of the folding element.
inline std::optional<std::pair<Weight, int>> affine_to_alcove(const AlcoveCtx& ctx, const Weight& mu) {
    const RootSystem& rs = ctx.rs;
    const int r = rs.rank();
    std::vector<long long> y(mu.labels);
    require(y.size() == static_cast<std::size_t>(r), "weight rank does not match algebra rank");
    for (int i = 0; i < r; ++i) y[i] += 1; // shift by rho

    int parity = 1;
    for (int guard = 0; guard < 1000000; ++guard) {
        int neg = -1;
        for (int i = 0; i < r; ++i) {
            if (y[i] < 0) {
                neg = i;
                break;
            }
            if (y[i] == 0) return std::nullopt;
        }
        if (neg >= 0) {
            const long long c = y[neg];
            for (int j = 0; j < r; ++j) y[j] -= c * rs.cartan[neg][j];
            parity = -parity;
            continue;
        }
        long long lvl = 0;
        for (int i = 0; i < r; ++i) lvl += y[i] * rs.theta_pairing[i];
        if (lvl == ctx.shifted_level) return std::nullopt;
        if (lvl < ctx.shifted_level) {
            Weight out(std::move(y));
            for (int i = 0; i < r; ++i) out[static_cast<std::size_t>(i)] -= 1;
            return std::make_pair(std::move(out), parity);
        }
        // reflect about the affine wall (x, theta) = k + h
        const long long m = lvl - ctx.shifted_level;
        for (int i = 0; i < r; ++i) y[i] -= m * rs.theta[static_cast<std::size_t>(i)];
        parity = -parity;
    }
    throw internal_error("affine folding did not terminate");
}

// Truncated tensor product coefficients as a sorted sparse vector over the
// alcove order.
struct FusionVector {
    std::vector<std::pair<Weight, long long>> coeffs; // alcove-ordered, multiplicities > 0

    bool contains(const Weight& w) const {
        for (const auto& [key, n] : coeffs)
            if (key == w) return true;
        return false;
    }
    long long multiplicity(const Weight& w) const {
        for (const auto& [key, n] : coeffs)
            if (key == w) return n;
        return 0;
    }
    std::size_t size() const { return coeffs.size(); }
    friend bool operator==(const FusionVector& a, const FusionVector& b) {
        return a.coeffs == b.coeffs;
    }
};

namespace detail {

// Core of the folding algorithm: accumulates sign * mult over the weights of
// V_gamma shifted by base.  Raw label buffers keep the hot path allocation-free.
class FusionAccumulator {
  public:
    FusionAccumulator(const AlcoveCtx& ctx)
        : ctx_(ctx), r_(ctx.rs.rank()), acc_(ctx.alcove.size(), 0), y_(r_) {}

    void add_orbit(const std::vector<long long>& base, const std::vector<long long>& nu,
                   long long mult) {
        const RootSystem& rs = ctx_.rs;
        for (int i = 0; i < r_; ++i) y_[i] = base[i] + nu[i] + 1;
        int parity = 1;
        for (;;) {
            int neg = -1;
            for (int i = 0; i < r_; ++i) {
                if (y_[i] < 0) {
                    neg = i;
                    break;
                }
                if (y_[i] == 0) return;
            }
            if (neg >= 0) {
                const long long c = y_[neg];
                const auto& row = rs.cartan[neg];
                for (int j = 0; j < r_; ++j) y_[j] -= c * row[j];
                parity = -parity;
                continue;
            }
            long long lvl = 0;
            for (int i = 0; i < r_; ++i) lvl += y_[i] * rs.theta_pairing[i];
            if (lvl == ctx_.shifted_level) return;
            if (lvl < ctx_.shifted_level) break;
            const long long m = lvl - ctx_.shifted_level;
            for (int i = 0; i < r_; ++i) y_[i] -= m * rs.theta[static_cast<std::size_t>(i)];
            parity = -parity;
        }
        key_.labels.assign(y_.begin(), y_.end());
        for (auto& x : key_.labels) x -= 1;
        auto it = ctx_.index.find(key_);
        ensure(it != ctx_.index.end(), "folded weight escaped the alcove");
        acc_[static_cast<std::size_t>(it->second)] += parity * mult;
    }

    FusionVector finish() const {
        FusionVector fv;
        for (std::size_t i = 0; i < acc_.size(); ++i) {
            ensure(acc_[i] >= 0, "fusion coefficients must be nonnegative");
            if (acc_[i] > 0) fv.coeffs.emplace_back(ctx_.alcove[i], acc_[i]);
        }
        return fv;
    }

  private:
    const AlcoveCtx& ctx_;
    int r_;
    std::vector<long long> acc_;
    std::vector<long long> y_;
    Weight key_;
};

} // namespace detail

// N_{lambda,gamma}^eta by folding lambda + (weights of V_gamma) into the
// alcove.  The smaller character of the two factors is enumerated.
inline FusionVector fusion_product(const AlcoveCtx& ctx, CharacterStore& store, const Weight& lambda,
                                   const Weight& gamma) {
    require(ctx.contains(lambda), "fusion factor " + lambda.str() + " is outside the alcove");
    require(ctx.contains(gamma), "fusion factor " + gamma.str() + " is outside the alcove");

    const Weight* base = &lambda;
    const Weight* expand = &gamma;
    if (weyl_dimension(ctx.rs, gamma) > weyl_dimension(ctx.rs, lambda)) std::swap(base, expand);

    auto table = store.get(ctx.rs, *expand);
    detail::FusionAccumulator acc(ctx);
    for (const auto& [delta, mult] : table->entries) {
        orbit_visit(ctx.rs, delta, [&](const std::vector<long long>& nu) {
            acc.add_orbit(base->labels, nu, mult);
        });
    }
    FusionVector fv = acc.finish();
    ensure(!fv.coeffs.empty(), "truncated tensor product must be nonempty");
    return fv;
}

// Weight of the dual representation: the dominant representative of -lambda.
inline Weight dual_weight(const AlcoveCtx& ctx, const Weight& lambda) {
    require(ctx.contains(lambda), "weight " + lambda.str() + " is outside the alcove");
    return to_dominant(ctx.rs, -lambda).dominant;
}

// ---- memoized pairwise products ---------------------------------------------

// Caches fusion products over one alcove.  Products are symmetric, so the
// cache is keyed on unordered index pairs.  Thread-safe.
class FusionTable {
  public:
    FusionTable(const AlcoveCtx& ctx, CharacterStore& store) : ctx_(ctx), store_(store) {}

    const AlcoveCtx& ctx() const { return ctx_; }
    CharacterStore& store() const { return store_; }

    const FusionVector& product(const Weight& a, const Weight& b) const {
        return product_by_index(ctx_.index_of(a), ctx_.index_of(b));
    }

    const FusionVector& product_by_index(int ia, int ib) const {
        if (ia > ib) std::swap(ia, ib);
        const std::size_t key = static_cast<std::size_t>(ia) * ctx_.alcove.size() +
                                static_cast<std::size_t>(ib);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return *it->second;
        }
        auto fv = std::make_unique<FusionVector>(
            fusion_product(ctx_, store_, ctx_.alcove[static_cast<std::size_t>(ia)],
                           ctx_.alcove[static_cast<std::size_t>(ib)]));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = memo_.emplace(key, std::move(fv));
        return *it->second;
    }

    std::vector<int> support_indices(int ia, int ib) const {
        const FusionVector& fv = product_by_index(ia, ib);
        std::vector<int> out;
        out.reserve(fv.coeffs.size());
        for (const auto& [w, n] : fv.coeffs) out.push_back(ctx_.index_of(w));
        return out;
    }

    int dual_index(int ia) const {
        return ctx_.index_of(dual_weight(ctx_, ctx_.alcove[static_cast<std::size_t>(ia)]));
    }

  private:
    const AlcoveCtx& ctx_;
    CharacterStore& store_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::size_t, std::unique_ptr<FusionVector>> memo_;
};

// phi_z(gamma): fusion with the invertible corner k*ell(z).  The product of
// an invertible object with a simple object has exactly one summand.
inline Weight apply_simple_current(const AlcoveCtx& ctx, CharacterStore& store,
                                   const CenterElement& z, const Weight& gamma) {
    require(ctx.contains(gamma), "weight " + gamma.str() + " is outside the alcove");
    if (z.id == 0) return gamma;
    Weight corner = ctx.level * z.ell;
    FusionVector fv = fusion_product(ctx, store, corner, gamma);
    ensure(fv.coeffs.size() == 1 && fv.coeffs.front().second == 1,
           "fusion with " + corner.str() + " is not invertible");
    return fv.coeffs.front().first;
}

} // namespace alcove
