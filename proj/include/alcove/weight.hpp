#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "alcove/errors.hpp"

namespace alcove {

// A weight in the fundamental-weight (Dynkin label) basis.  Entries are
// arbitrary integers; the weight is dominant iff all labels are >= 0.
struct Weight {
    std::vector<long long> labels;

    Weight() = default;
    explicit Weight(std::vector<long long> l) : labels(std::move(l)) {}
    Weight(std::initializer_list<long long> l) : labels(l) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<long long>(rank, 0)); }
    static Weight fundamental(std::size_t rank, std::size_t i, long long mult = 1) {
        Weight w = zero(rank);
        w.labels.at(i) = mult;
        return w;
    }

    std::size_t rank() const { return labels.size(); }
    long long operator[](std::size_t i) const { return labels[i]; }
    long long& operator[](std::size_t i) { return labels[i]; }

    bool is_zero() const {
        return std::all_of(labels.begin(), labels.end(), [](long long x) { return x == 0; });
    }
    bool is_dominant() const {
        return std::all_of(labels.begin(), labels.end(), [](long long x) { return x >= 0; });
    }
    long long label_sum() const {
        return std::accumulate(labels.begin(), labels.end(), 0LL);
    }

    friend Weight operator+(const Weight& a, const Weight& b) {
        ensure(a.rank() == b.rank(), "weight rank mismatch");
        Weight r = a;
        for (std::size_t i = 0; i < r.rank(); ++i) r.labels[i] += b.labels[i];
        return r;
    }
    friend Weight operator-(const Weight& a, const Weight& b) {
        ensure(a.rank() == b.rank(), "weight rank mismatch");
        Weight r = a;
        for (std::size_t i = 0; i < r.rank(); ++i) r.labels[i] -= b.labels[i];
        return r;
    }
    friend Weight operator-(const Weight& a) {
        Weight r = a;
        for (auto& x : r.labels) x = -x;
        return r;
    }
    friend Weight operator*(long long n, const Weight& a) {
        Weight r = a;
        for (auto& x : r.labels) x *= n;
        return r;
    }
    friend bool operator==(const Weight& a, const Weight& b) { return a.labels == b.labels; }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
    friend bool operator<(const Weight& a, const Weight& b) { return a.labels < b.labels; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(labels[i]);
        }
        return s + ")";
    }
};

// Graded lexicographic order: by label sum, then lexicographically.
// This is the canonical alcove / serialization order.
inline bool graded_lex_less(const Weight& a, const Weight& b) {
    long long sa = a.label_sum(), sb = b.label_sum();
    if (sa != sb) return sa < sb;
    return a.labels < b.labels;
}

struct WeightHash {
    std::size_t operator()(const Weight& w) const {
        std::size_t h = 1469598103934665603ull;
        for (long long x : w.labels) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace alcove
