#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "alcove/errors.hpp"
#include "alcove/rational.hpp"

namespace alcove {

namespace poly {

// Dense polynomials over the rationals, lowest degree first.
using Poly = std::vector<Rat>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly x_pow_minus_one(long long n) {
    Poly p(static_cast<std::size_t>(n) + 1, Rat(0));
    p[0] = -1;
    p.back() = 1;
    return p;
}

// Exact division; the remainder must vanish.
inline Poly divide_exact(Poly num, const Poly& den) {
    ensure(!den.empty(), "division by the zero polynomial");
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size()) {
        Rat f = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        trim(num);
        if (num.empty()) break;
    }
    ensure(num.empty(), "polynomial division left a remainder");
    trim(q);
    return q;
}

inline Poly remainder(Poly num, const Poly& den) {
    while (num.size() >= den.size()) {
        Rat f = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        trim(num);
    }
    return num;
}

} // namespace poly

// Shared immutable data for Q(zeta_N): the cyclotomic polynomial and the
// reductions of zeta^k onto the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class CyclotomicField {
  public:
    static std::shared_ptr<const CyclotomicField> get(long long n) {
        static std::mutex mu;
        static std::map<long long, std::shared_ptr<const CyclotomicField>> cache;
        require(n >= 1, "cyclotomic order must be positive");
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        auto field = std::shared_ptr<const CyclotomicField>(new CyclotomicField(n));
        cache.emplace(n, field);
        return field;
    }

    long long order() const { return n_; }
    std::size_t degree() const { return degree_; }
    const poly::Poly& modulus() const { return modulus_; }

    // zeta^k on the power basis, for 0 <= k < power_count().
    const std::vector<Rat>& power(long long k) const { return powers_[static_cast<std::size_t>(k)]; }
    long long power_count() const { return static_cast<long long>(powers_.size()); }

  private:
    explicit CyclotomicField(long long n) : n_(n) {
        modulus_ = cyclotomic_poly(n);
        degree_ = modulus_.size() - 1;
        // Enough reduced powers for one convolution and for conjugation.
        const long long count = std::max<long long>(n + 1, 2 * static_cast<long long>(degree_));
        powers_.reserve(static_cast<std::size_t>(count));
        std::vector<Rat> cur(degree_, Rat(0));
        cur[0] = 1;
        powers_.push_back(cur);
        for (long long k = 1; k < count; ++k) {
            // multiply by x and reduce by the monic modulus
            Rat top = cur.empty() ? Rat(0) : cur.back();
            for (std::size_t i = cur.size(); i-- > 1;) cur[i] = cur[i - 1];
            if (!cur.empty()) cur[0] = 0;
            if (top != 0)
                for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * modulus_[i];
            powers_.push_back(cur);
        }
    }

    static poly::Poly cyclotomic_poly(long long n) {
        static std::mutex mu;
        static std::map<long long, poly::Poly> memo;
        std::lock_guard<std::mutex> lock(mu);
        std::function<const poly::Poly&(long long)> rec = [&](long long m) -> const poly::Poly& {
            auto it = memo.find(m);
            if (it != memo.end()) return it->second;
            poly::Poly p = poly::x_pow_minus_one(m);
            for (long long d = 1; d < m; ++d) {
                if (m % d != 0) continue;
                p = poly::divide_exact(std::move(p), rec(d));
            }
            return memo.emplace(m, std::move(p)).first->second;
        };
        return rec(n);
    }

    long long n_;
    std::size_t degree_;
    poly::Poly modulus_;
    std::vector<std::vector<Rat>> powers_;
};

// An element of Q(zeta_N) in canonical form: coefficients on the power basis
// after reduction modulo the N-th cyclotomic polynomial, so equality of
// values is equality of coefficient lists.
class Cyclotomic {
  public:
    Cyclotomic() : Cyclotomic(Rat(0), 1) {}
    explicit Cyclotomic(const Rat& value, long long order = 1)
        : field_(CyclotomicField::get(order)), c_(field_->degree(), Rat(0)) {
        c_[0] = value; // phi(N) >= 1, so the basis always contains 1
    }

    static Cyclotomic zero(long long order) { return Cyclotomic(Rat(0), order); }
    static Cyclotomic one(long long order) { return Cyclotomic(Rat(1), order); }

    // zeta_N^k
    static Cyclotomic root_of_unity(long long order, long long k) {
        Cyclotomic z(Rat(0), order);
        k %= order;
        if (k < 0) k += order;
        z.c_ = z.field_->power(k);
        return z;
    }

    long long order() const { return field_->order(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        ensure(a.order() == b.order(), "cyclotomic order mismatch");
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        ensure(a.order() == b.order(), "cyclotomic order mismatch");
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        ensure(a.order() == b.order(), "cyclotomic order mismatch");
        Cyclotomic r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        ensure(a.order() == b.order(), "cyclotomic order mismatch");
        const std::size_t d = a.c_.size();
        Cyclotomic r = Cyclotomic::zero(a.order());
        if (d == 0) return r;
        std::vector<Rat> conv(2 * d - 1, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        for (std::size_t k = 0; k < conv.size(); ++k) {
            if (conv[k] == 0) continue;
            if (k < d) {
                r.c_[k] += conv[k];
            } else {
                const auto& pw = a.field_->power(static_cast<long long>(k));
                for (std::size_t i = 0; i < d; ++i) r.c_[i] += conv[k] * pw[i];
            }
        }
        return r;
    }
    friend Cyclotomic operator*(const Rat& s, const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    // Galois conjugation zeta -> zeta^{-1} (complex conjugation).
    Cyclotomic conj() const {
        Cyclotomic r = Cyclotomic::zero(order());
        const long long n = order();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const long long k = (n - static_cast<long long>(i)) % n;
            const auto& pw = field_->power(k);
            for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] += c_[i] * pw[t];
        }
        return r;
    }

    // Multiplicative inverse via the extended Euclidean algorithm against the
    // cyclotomic modulus.
    Cyclotomic inverse() const {
        ensure(!is_zero(), "inverse of zero");
        poly::Poly r0 = field_->modulus();
        poly::Poly r1(c_.begin(), c_.end());
        poly::trim(r1);
        poly::Poly s0{}, s1{Rat(1)};
        while (!r1.empty() && r1.size() > 1) {
            // quotient of r0 by r1
            poly::Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, Rat(0));
            poly::Poly rem = r0;
            while (rem.size() >= r1.size()) {
                Rat f = rem.back() / r1.back();
                std::size_t shift = rem.size() - r1.size();
                q[shift] = f;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
                poly::trim(rem);
            }
            poly::trim(q);
            // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
            poly::Poly qs1(q.size() + s1.size(), Rat(0));
            if (!q.empty() && !s1.empty()) {
                qs1.assign(q.size() + s1.size() - 1, Rat(0));
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
            } else {
                qs1.clear();
            }
            poly::Poly s2 = s0;
            if (s2.size() < qs1.size()) s2.resize(qs1.size(), Rat(0));
            for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
            poly::trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        ensure(!r1.empty(), "element shares a factor with the modulus");
        // r1 is a nonzero constant g with s1 * this == g (mod modulus)
        Cyclotomic inv = Cyclotomic::zero(order());
        poly::Poly scaled = poly::remainder(std::move(s1), field_->modulus());
        for (std::size_t i = 0; i < scaled.size(); ++i) inv.c_[i] = scaled[i] / r1[0];
        return inv;
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    std::complex<double> to_complex() const {
        const double angle = 2.0 * 3.14159265358979323846 / static_cast<double>(order());
        std::complex<double> zeta(std::cos(angle), std::sin(angle));
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * zeta + std::complex<double>(rat_to_double(c_[i]), 0.0);
        return acc;
    }

  private:
    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rat> c_;
};

} // namespace alcove
