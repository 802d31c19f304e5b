#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include <unistd.h>

#include "json.hpp"

#include "alcove/root_system.hpp"

namespace alcove {

// Dominant weights of the irreducible representation V_lambda with their
// multiplicities; the full character is the W-invariant extension.
struct CharacterTable {
    Weight highest;
    std::map<Weight, long long> entries;

    long long multiplicity_of_dominant(const Weight& mu) const {
        auto it = entries.find(mu);
        return it == entries.end() ? 0 : it->second;
    }
};

namespace detail {

// Dominant mu with lambda - mu in the nonnegative rational span of the simple
// roots, i.e. (mu, lambda_j) <= (lambda, lambda_j) for every j.  Saturation
// plus the root-lattice test makes these exactly the dominant weights of
// V_lambda.
inline std::vector<Weight> dominant_weight_candidates(const RootSystem& rs, const Weight& lambda) {
    const int r = rs.rank();
    std::vector<Rat> bound(r);
    for (int j = 0; j < r; ++j) bound[j] = rs.inner(lambda, Weight::fundamental(r, j));

    std::vector<Weight> out;
    std::vector<long long> labels(r, 0);
    std::vector<std::vector<Rat>> partial(r + 1, std::vector<Rat>(r, Rat(0)));

    auto fits = [&](int depth) {
        for (int j = 0; j < r; ++j)
            if (partial[depth + 1][j] > bound[j]) return false;
        return true;
    };

    std::function<void(int)> rec = [&](int t) {
        if (t == r) {
            Weight mu{labels};
            if (rs.root_coords(lambda - mu)) out.push_back(std::move(mu));
            return;
        }
        for (long long v = 0;; ++v) {
            labels[t] = v;
            for (int j = 0; j < r; ++j)
                partial[t + 1][j] = partial[t][j] + rat(v) * rs.gram[t][j];
            if (!fits(t)) break;
            rec(t + 1);
        }
        labels[t] = 0;
    };
    rec(0);
    return out;
}

} // namespace detail

// Weyl dimension formula, exact.
inline Rat weyl_dimension(const RootSystem& rs, const Weight& lambda) {
    require(lambda.is_dominant(), "weight must be dominant");
    Rat dim = 1;
    Weight lr = lambda + rs.rho;
    for (const auto& pr : rs.positive_roots) dim *= rs.inner(lr, pr.weight) / rs.inner(rs.rho, pr.weight);
    return dim;
}

// Freudenthal recursion over the dominant weights of V_lambda.
inline CharacterTable dominant_character(const RootSystem& rs, const Weight& lambda) {
    require(lambda.is_dominant(), "character of a non-dominant highest weight");
    const int r = rs.rank();

    auto candidates = detail::dominant_weight_candidates(rs, lambda);
    // Depth = height of lambda - mu; the recursion descends from lambda.
    std::vector<std::pair<long long, Weight>> by_depth;
    by_depth.reserve(candidates.size());
    for (auto& mu : candidates) {
        auto coords = rs.root_coords(lambda - mu);
        ensure(coords.has_value(), "candidate outside the root lattice");
        long long depth = 0;
        for (long long c : *coords) {
            ensure(c >= 0, "candidate above the highest weight");
            depth += c;
        }
        by_depth.emplace_back(depth, std::move(mu));
    }
    std::sort(by_depth.begin(), by_depth.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return a.second < b.second;
              });
    ensure(!by_depth.empty() && by_depth.front().second == lambda, "highest weight missing");

    CharacterTable table;
    table.highest = lambda;
    table.entries[lambda] = 1;

    const Weight lrho = lambda + rs.rho;
    const Rat casimir_top = rs.inner(lrho, lrho);

    // Per-root data reused across the recursion.
    std::vector<std::vector<Rat>> root_pairing(rs.positive_roots.size(), std::vector<Rat>(r));
    for (std::size_t a = 0; a < rs.positive_roots.size(); ++a)
        for (int i = 0; i < r; ++i)
            root_pairing[a][i] = rs.inner(Weight::fundamental(r, i), rs.positive_roots[a].weight);

    for (const auto& [depth, mu] : by_depth) {
        if (depth == 0) continue;
        auto cmu = rs.root_coords(lambda - mu);
        Rat rhs = 0;
        for (std::size_t a = 0; a < rs.positive_roots.size(); ++a) {
            const auto& pr = rs.positive_roots[a];
            long long jmax = -1; // largest j with lambda - mu - j*alpha still descending
            for (int i = 0; i < r; ++i) {
                if (pr.coords[static_cast<std::size_t>(i)] == 0) continue;
                long long q = (*cmu)[static_cast<std::size_t>(i)] / pr.coords[static_cast<std::size_t>(i)];
                jmax = jmax < 0 ? q : std::min(jmax, q);
            }
            if (jmax <= 0) continue;
            Rat mu_alpha = 0;
            for (int i = 0; i < r; ++i)
                if (mu[static_cast<std::size_t>(i)] != 0)
                    mu_alpha += rat(mu[static_cast<std::size_t>(i)]) * root_pairing[a][i];
            Weight up = mu;
            for (long long j = 1; j <= jmax; ++j) {
                up = up + pr.weight;
                auto fold = to_dominant(rs, up);
                auto it = table.entries.find(fold.dominant);
                if (it == table.entries.end()) continue;
                rhs += (mu_alpha + rat(j) * pr.norm2) * rat(it->second);
            }
        }
        if (rhs == 0) continue;
        Weight mrho = mu + rs.rho;
        Rat divisor = casimir_top - rs.inner(mrho, mrho);
        ensure(divisor > 0, "Freudenthal divisor must be positive below the highest weight");
        Rat m = 2 * rhs / divisor;
        ensure(rat_is_integer(m) && m > 0, "Freudenthal multiplicity must be a positive integer");
        table.entries[mu] = rat_to_ll(m);
    }
    return table;
}

// Multiplicity of an arbitrary weight mu in V_lambda (W-invariance).
inline long long weight_multiplicity(const RootSystem& rs, const CharacterTable& table, const Weight& mu) {
    return table.multiplicity_of_dominant(to_dominant(rs, mu).dominant);
}

// ---- Weyl orbit iteration --------------------------------------------------
//
// Enumerates the orbit of a dominant weight without a visited set: every
// non-dominant orbit element has a unique parent s_i(mu) at the lowest
// negative label, so the orbit is a tree rooted at the dominant element.

template <typename Visit>
void orbit_visit(const RootSystem& rs, const Weight& delta, Visit&& visit) {
    require(delta.is_dominant(), "orbit enumeration starts at a dominant weight");
    const int r = rs.rank();
    const auto& cartan = rs.cartan;

    std::vector<std::vector<int>> adjacent(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j && cartan[i][j] != 0) adjacent[i].push_back(j);

    const std::size_t max_depth = rs.positive_roots.size() + 2;
    std::vector<std::vector<long long>> stack(max_depth, std::vector<long long>(r));
    std::vector<int> next_child(max_depth, 0);

    stack[0] = delta.labels;
    next_child[0] = 0;
    visit(stack[0]);
    std::size_t top = 0;
    for (;;) {
        bool descended = false;
        for (int i = next_child[top]; i < r; ++i) {
            const auto& w = stack[top];
            if (w[i] <= 0) continue;
            bool canonical = true;
            for (int j = 0; j < i; ++j) {
                if (w[j] - w[i] * cartan[i][j] < 0) {
                    canonical = false;
                    break;
                }
            }
            if (!canonical) continue;
            next_child[top] = i + 1;
            ensure(top + 1 < max_depth, "orbit tree deeper than the longest Weyl word");
            auto& child = stack[top + 1];
            child = w;
            const long long c = child[i];
            for (int j = 0; j < r; ++j) child[j] -= c * cartan[i][j];
            ++top;
            next_child[top] = 0;
            visit(child);
            descended = true;
            break;
        }
        if (descended) continue;
        if (top == 0) break;
        --top;
    }
}

inline long long orbit_size(const RootSystem& rs, const Weight& delta) {
    long long n = 0;
    orbit_visit(rs, delta, [&](const std::vector<long long>&) { ++n; });
    return n;
}

// Full dimension from the dominant table, as a cross-check against the Weyl
// dimension formula.
inline long long character_dimension(const RootSystem& rs, const CharacterTable& table) {
    long long dim = 0;
    for (const auto& [mu, mult] : table.entries) dim += orbit_size(rs, mu) * mult;
    return dim;
}

// ---- persistent cache -------------------------------------------------------

inline constexpr int kCharacterCacheVersion = 1;

inline std::string character_cache_filename(const RootSystem& rs, const Weight& lambda) {
    std::string name = rs.algebra.str();
    for (long long x : lambda.labels) name += "_" + std::to_string(x);
    return name + ".json";
}

inline void cache_store(const std::filesystem::path& dir, const RootSystem& rs,
                        const CharacterTable& table) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json doc;
    doc["version"] = kCharacterCacheVersion;
    doc["family"] = std::string(1, static_cast<char>(rs.algebra.family));
    doc["rank"] = rs.algebra.rank;
    doc["highest"] = table.highest.labels;
    auto& entries = doc["entries"] = nlohmann::json::array();
    for (const auto& [mu, mult] : table.entries) entries.push_back({mu.labels, mult});

    const fs::path target = dir / character_cache_filename(rs, table.highest);
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << doc.dump();
    }
    fs::rename(tmp, target); // atomic on POSIX
}

// Returns nullopt on missing, corrupt, or version-mismatched files.
inline std::optional<CharacterTable> cache_load(const std::filesystem::path& dir,
                                                const RootSystem& rs, const Weight& lambda) {
    namespace fs = std::filesystem;
    const fs::path target = dir / character_cache_filename(rs, lambda);
    std::error_code ec;
    if (!fs::exists(target, ec)) return std::nullopt;
    try {
        std::ifstream in(target);
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("version").get<int>() != kCharacterCacheVersion) return std::nullopt;
        if (doc.at("family").get<std::string>() != std::string(1, static_cast<char>(rs.algebra.family)))
            return std::nullopt;
        if (doc.at("rank").get<int>() != rs.algebra.rank) return std::nullopt;
        if (doc.at("highest").get<std::vector<long long>>() != lambda.labels) return std::nullopt;
        CharacterTable table;
        table.highest = lambda;
        for (const auto& e : doc.at("entries")) {
            Weight mu{e.at(0).get<std::vector<long long>>()};
            long long mult = e.at(1).get<long long>();
            if (mu.rank() != lambda.rank() || mult <= 0) return std::nullopt;
            table.entries[std::move(mu)] = mult;
        }
        if (table.multiplicity_of_dominant(lambda) != 1) return std::nullopt;
        return table;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// In-memory character store with an optional disk cache behind it.  Reads
// tolerate missing or corrupt files; writes go through a temp file + rename.
class CharacterStore {
  public:
    CharacterStore() = default;
    explicit CharacterStore(std::filesystem::path cache_dir) : dir_(std::move(cache_dir)) {}

    std::shared_ptr<const CharacterTable> get(const RootSystem& rs, const Weight& lambda) {
        require(lambda.is_dominant(), "character of a non-dominant highest weight");
        const std::string key = rs.algebra.str() + ":" + lambda.str();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = mem_.find(key);
            if (it != mem_.end()) return it->second;
        }
        std::shared_ptr<const CharacterTable> table;
        if (dir_) {
            if (auto loaded = cache_load(*dir_, rs, lambda))
                table = std::make_shared<CharacterTable>(std::move(*loaded));
        }
        if (!table) {
            table = std::make_shared<CharacterTable>(dominant_character(rs, lambda));
            if (dir_) {
                try {
                    cache_store(*dir_, rs, *table);
                } catch (const std::exception&) {
                    // cache is best effort; computation already succeeded
                }
            }
        }
        std::lock_guard<std::mutex> lock(mu_);
        return mem_.emplace(key, std::move(table)).first->second;
    }

    const std::optional<std::filesystem::path>& cache_dir() const { return dir_; }

  private:
    std::optional<std::filesystem::path> dir_;
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const CharacterTable>> mem_;
};

} // namespace alcove
