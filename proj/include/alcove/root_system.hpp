#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "alcove/algebra.hpp"
#include "alcove/rational.hpp"
#include "alcove/weight.hpp"

namespace alcove {

namespace detail {

// Cartan matrix entries <alpha_i, alpha_j^vee>, rows i, columns j,
// simple roots numbered as in Humphreys.
inline std::vector<std::vector<long long>> cartan_matrix(const AlgebraId& id) {
    const int r = id.rank;
    std::vector<std::vector<long long>> c(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) c[i][i] = 2;
    auto link = [&](int i, int j, long long cij = -1, long long cji = -1) {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    switch (id.family) {
        case Family::A:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1);
            break;
        case Family::B: // alpha_r short
            for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
            link(r - 2, r - 1, -2, -1);
            break;
        case Family::C: // alpha_r long
            for (int i = 0; i + 2 < r; ++i) link(i, i + 1);
            link(r - 2, r - 1, -1, -2);
            break;
        case Family::D:
            for (int i = 0; i + 3 < r; ++i) link(i, i + 1);
            link(r - 3, r - 2);
            link(r - 3, r - 1);
            break;
        case Family::E:
            // chain 1-3-4-5-6(-7)(-8), node 2 attached to node 4
            link(0, 2);
            link(2, 3);
            link(3, 4);
            link(4, 5);
            if (r >= 7) link(5, 6);
            if (r >= 8) link(6, 7);
            link(1, 3);
            break;
        case Family::F: // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            link(0, 1);
            link(1, 2, -2, -1);
            link(2, 3);
            break;
        case Family::G: // alpha_1 short, alpha_2 long
            link(0, 1, -1, -3);
            break;
    }
    return c;
}

inline std::size_t expected_positive_roots(const AlgebraId& id) {
    const std::size_t l = static_cast<std::size_t>(id.rank);
    switch (id.family) {
        case Family::A: return l * (l + 1) / 2;
        case Family::B:
        case Family::C: return l * l;
        case Family::D: return l * (l - 1);
        case Family::E: return id.rank == 6 ? 36 : id.rank == 7 ? 63 : 120;
        case Family::F: return 24;
        case Family::G: return 6;
    }
    return 0;
}

} // namespace detail

struct PositiveRoot {
    Weight weight;                     // labels <alpha, alpha_j^vee>
    std::vector<long long> coords;     // coefficients on simple roots
    Rat norm2;                         // (alpha, alpha)
};

struct CenterElement {
    int id = 0;            // 0 is the identity
    int fw_index = -1;     // 0-based fundamental weight index, -1 for the identity
    Weight ell;            // ell(z); the zero weight for the identity
};

// The center Z(G) of the simply connected group, presented through the map
// ell into fundamental weights: z acts on V_gamma by exp(2*pi*i*(gamma, ell(z))).
struct CenterMap {
    std::vector<int> order_structure;            // cyclic factor orders, e.g. {4} or {2,2}
    std::vector<CenterElement> elements;         // elements[0] is the identity
    std::vector<std::vector<int>> mult;          // mult[a][b] = id of z_a * z_b

    std::size_t size() const { return elements.size(); }
    int element_order(int a) const {
        int x = a, n = 1;
        while (x != 0) {
            x = mult[x][a];
            ++n;
        }
        return n;
    }
};

// Immutable exact data for one simple Lie type, normalized so that the
// highest root theta satisfies (theta, theta) = 2.
struct RootSystem {
    AlgebraId algebra;
    std::vector<std::vector<long long>> cartan;    // rows are simple roots in the label basis
    std::vector<std::vector<Rat>> gram;            // (lambda_i, lambda_j)
    std::vector<Rat> simple_norm2_half;            // d_i = (alpha_i, alpha_i)/2
    std::vector<PositiveRoot> positive_roots;
    std::vector<Weight> simple_roots;
    Weight rho;
    Weight theta;                                  // dominant long root
    Weight beta;                                   // dominant short root (= theta when simply laced)
    long long dual_coxeter = 0;
    std::vector<bool> long_simple;
    bool simply_laced = false;

    std::vector<long long> theta_pairing;          // (lambda_i, theta), always integers
    std::vector<long long> alpha_theta;            // (alpha_i, theta), always integers
    long long gram_denominator = 1;                // lcm of gram entry denominators
    std::vector<std::vector<Rat>> cartan_inv_t;    // (C^T)^{-1}, for root-lattice coordinates

    int rank() const { return algebra.rank; }

    // Coordinates of w on the simple roots, or nullopt when w is not in the
    // root lattice.  w = sum_i coords[i] * alpha_i.
    std::optional<std::vector<long long>> root_coords(const Weight& w) const {
        std::vector<long long> out(static_cast<std::size_t>(rank()));
        for (int i = 0; i < rank(); ++i) {
            Rat c = 0;
            for (int j = 0; j < rank(); ++j) c += cartan_inv_t[i][j] * rat(w[static_cast<std::size_t>(j)]);
            if (!rat_is_integer(c)) return std::nullopt;
            out[static_cast<std::size_t>(i)] = rat_to_ll(c);
        }
        return out;
    }

    Rat inner(const Weight& mu, const Weight& nu) const {
        require(mu.rank() == static_cast<std::size_t>(rank()) &&
                    nu.rank() == static_cast<std::size_t>(rank()),
                "weight rank does not match algebra rank");
        Rat total = 0;
        for (int i = 0; i < rank(); ++i) {
            if (mu[i] == 0) continue;
            Rat row = 0;
            for (int j = 0; j < rank(); ++j) {
                if (nu[j] == 0) continue;
                row += gram[i][j] * rat(nu[j]);
            }
            total += row * rat(mu[i]);
        }
        return total;
    }

    Rat norm2(const Weight& mu) const { return inner(mu, mu); }

    // Integer pairing (mu, theta); theta is long so theta^vee = theta.
    long long level(const Weight& mu) const {
        long long s = 0;
        for (int i = 0; i < rank(); ++i) s += mu[i] * theta_pairing[i];
        return s;
    }

    // Simple reflection s_i in the label basis.
    void reflect(std::vector<long long>& labels, int i) const {
        const long long c = labels[i];
        if (c == 0) return;
        for (int j = 0; j < rank(); ++j) labels[j] -= c * cartan[i][j];
    }
};

struct DominantFold {
    Weight dominant;
    int parity = 1;       // (-1)^(number of reflections); +1 by convention on walls
    bool on_wall = false; // the orbit is stabilized by some reflection
};

// Unique dominant representative of the classical Weyl orbit of mu,
// by repeated simple reflections at the lowest negative label.
inline DominantFold to_dominant(const RootSystem& rs, const Weight& mu) {
    DominantFold out;
    std::vector<long long> v = mu.labels;
    require(v.size() == static_cast<std::size_t>(rs.rank()), "weight rank does not match algebra rank");
    int parity = 1;
    for (;;) {
        int neg = -1;
        for (int i = 0; i < rs.rank(); ++i) {
            if (v[i] < 0) {
                neg = i;
                break;
            }
        }
        if (neg < 0) break;
        rs.reflect(v, neg);
        parity = -parity;
    }
    out.on_wall = std::any_of(v.begin(), v.end(), [](long long x) { return x == 0; });
    out.parity = out.on_wall ? 1 : parity;
    out.dominant = Weight(std::move(v));
    return out;
}

inline Rat inner_product(const RootSystem& rs, const Weight& mu, const Weight& nu) {
    return rs.inner(mu, nu);
}

inline RootSystem build_root_system(const AlgebraId& id_in) {
    AlgebraId id = make_algebra(id_in.family, id_in.rank);
    const int r = id.rank;
    RootSystem rs;
    rs.algebra = id;
    rs.cartan = detail::cartan_matrix(id);

    // Symmetrizer d_i with d_i * C[i][j] = d_j * C[j][i]; normalized below so
    // that long roots have squared length 2.
    std::vector<Rat> d(r, Rat(0));
    d[0] = 1;
    std::vector<int> todo{0};
    while (!todo.empty()) {
        int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < r; ++j) {
            if (i == j || rs.cartan[i][j] == 0 || d[j] != 0) continue;
            d[j] = d[i] * rat(rs.cartan[j][i]) / rat(rs.cartan[i][j]);
            todo.push_back(j);
        }
    }
    Rat dmax = *std::max_element(d.begin(), d.end());
    for (auto& x : d) {
        x /= dmax;
        ensure(x > 0, "symmetrizer must be positive");
    }
    rs.simple_norm2_half = d;
    rs.long_simple.resize(r);
    for (int i = 0; i < r; ++i) rs.long_simple[i] = (d[i] == 1);
    rs.simply_laced = std::all_of(d.begin(), d.end(), [](const Rat& x) { return x == 1; });

    // Gram matrix from G * C^T = diag(d): invert C^T over the rationals.
    {
        std::vector<std::vector<Rat>> m(r, std::vector<Rat>(2 * r, Rat(0)));
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) m[i][j] = rat(rs.cartan[j][i]); // C^T
            m[i][r + i] = 1;
        }
        for (int col = 0; col < r; ++col) {
            int pivot = -1;
            for (int row = col; row < r; ++row)
                if (m[row][col] != 0) {
                    pivot = row;
                    break;
                }
            ensure(pivot >= 0, "Cartan matrix is singular");
            std::swap(m[col], m[pivot]);
            Rat p = m[col][col];
            for (int j = 0; j < 2 * r; ++j) m[col][j] /= p;
            for (int row = 0; row < r; ++row) {
                if (row == col || m[row][col] == 0) continue;
                Rat f = m[row][col];
                for (int j = 0; j < 2 * r; ++j) m[row][j] -= f * m[col][j];
            }
        }
        rs.cartan_inv_t.assign(r, std::vector<Rat>(r, Rat(0)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) rs.cartan_inv_t[i][j] = m[i][r + j];
        rs.gram.assign(r, std::vector<Rat>(r, Rat(0)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) rs.gram[i][j] = d[i] * m[i][r + j];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                ensure(rs.gram[i][j] == rs.gram[j][i], "gram matrix must be symmetric");
    }
    rs.gram_denominator = 1;
    for (const auto& row : rs.gram)
        for (const auto& x : row)
            rs.gram_denominator = lcm_ll(rs.gram_denominator, x.get_den().get_si());

    rs.simple_roots.reserve(r);
    for (int i = 0; i < r; ++i)
        rs.simple_roots.emplace_back(std::vector<long long>(rs.cartan[i].begin(), rs.cartan[i].end()));
    rs.rho = Weight(std::vector<long long>(r, 1));

    // Close the simple roots under root strings, layer by layer in height.
    {
        std::map<std::vector<long long>, std::vector<long long>> roots; // labels -> coords
        std::vector<std::vector<long long>> layer;
        for (int i = 0; i < r; ++i) {
            std::vector<long long> coords(r, 0);
            coords[i] = 1;
            roots[rs.simple_roots[i].labels] = coords;
            layer.push_back(rs.simple_roots[i].labels);
        }
        while (!layer.empty()) {
            std::vector<std::vector<long long>> next;
            for (const auto& labels : layer) {
                for (int i = 0; i < r; ++i) {
                    // p = how far the alpha_i string continues downward
                    long long p = 0;
                    std::vector<long long> down = labels;
                    for (;;) {
                        for (int j = 0; j < r; ++j) down[j] -= rs.cartan[i][j];
                        if (!roots.count(down)) break;
                        ++p;
                    }
                    if (p - labels[static_cast<std::size_t>(i)] <= 0) continue;
                    std::vector<long long> up = labels;
                    for (int j = 0; j < r; ++j) up[j] += rs.cartan[i][j];
                    auto coords = roots[labels];
                    coords[static_cast<std::size_t>(i)] += 1;
                    if (roots.emplace(up, coords).second) next.push_back(up);
                }
            }
            layer = std::move(next);
        }
        for (auto& [labels, coords] : roots) {
            PositiveRoot pr;
            pr.weight = Weight(labels);
            pr.coords = coords;
            Rat n2 = 0;
            for (int i = 0; i < r; ++i) n2 += rat(coords[static_cast<std::size_t>(i)]) *
                                               rat(labels[static_cast<std::size_t>(i)]) * d[i];
            pr.norm2 = n2;
            rs.positive_roots.push_back(std::move(pr));
        }
        ensure(rs.positive_roots.size() == detail::expected_positive_roots(id),
               "unexpected positive root count for " + id.str());
    }

    // Dominant roots: theta (long) and beta (short); equal when simply laced.
    {
        std::vector<const PositiveRoot*> dominant;
        std::set<Rat> lengths;
        for (const auto& pr : rs.positive_roots) {
            lengths.insert(pr.norm2);
            if (pr.weight.is_dominant()) dominant.push_back(&pr);
        }
        ensure(lengths.size() == (rs.simply_laced ? 1u : 2u), "unexpected root length spectrum");
        ensure(dominant.size() == (rs.simply_laced ? 1u : 2u), "unexpected dominant root count");
        const PositiveRoot* th = dominant[0];
        const PositiveRoot* be = dominant[0];
        for (const auto* pr : dominant) {
            if (pr->norm2 > th->norm2) th = pr;
            if (pr->norm2 < be->norm2) be = pr;
        }
        rs.theta = th->weight;
        rs.beta = be->weight;
        ensure(th->norm2 == 2, "normalization (theta,theta) = 2 failed");
    }

    rs.theta_pairing.resize(r);
    rs.alpha_theta.resize(r);
    for (int i = 0; i < r; ++i) {
        rs.theta_pairing[i] = rat_to_ll(rs.inner(Weight::fundamental(r, i), rs.theta));
        rs.alpha_theta[i] = rat_to_ll(rs.inner(rs.simple_roots[i], rs.theta));
        ensure(rs.theta_pairing[i] >= 1, "fundamental weight with nonpositive level");
    }
    rs.dual_coxeter = rat_to_ll(rs.inner(rs.rho, rs.theta)) + 1;
    return rs;
}

// ---- center of the simply connected group --------------------------------

inline CenterMap center(const RootSystem& rs) {
    const int r = rs.rank();
    CenterMap cm;
    cm.elements.push_back(CenterElement{0, -1, Weight::zero(r)});
    for (int i = 0; i < r; ++i) {
        if (rs.theta_pairing[i] == 1 && rs.long_simple[i])
            cm.elements.push_back(CenterElement{static_cast<int>(cm.elements.size()), i,
                                                Weight::fundamental(r, i)});
    }

    // |Z(G)| = det(Cartan) = index of the root lattice in the weight lattice.
    {
        std::vector<std::vector<Rat>> m(r, std::vector<Rat>(r));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m[i][j] = rat(rs.cartan[i][j]);
        Rat det = 1;
        for (int col = 0; col < r; ++col) {
            int pivot = -1;
            for (int row = col; row < r; ++row)
                if (m[row][col] != 0) {
                    pivot = row;
                    break;
                }
            ensure(pivot >= 0, "Cartan matrix is singular");
            if (pivot != col) {
                std::swap(m[col], m[pivot]);
                det = -det;
            }
            det *= m[col][col];
            for (int row = col + 1; row < r; ++row) {
                if (m[row][col] == 0) continue;
                Rat f = m[row][col] / m[col][col];
                for (int j = col; j < r; ++j) m[row][j] -= f * m[col][j];
            }
        }
        ensure(Rat(static_cast<long>(cm.elements.size())) == det,
               "center size does not match det(Cartan) for " + rs.algebra.str());
    }

    // Multiplication through the pairing characters: ell(z z') is the unique
    // candidate weight with (lambda_t, ell(z)) + (lambda_t, ell(z')) integral shifts.
    auto pairing_vector = [&](const Weight& w) {
        std::vector<Rat> v(r);
        for (int t = 0; t < r; ++t) v[t] = rat_mod(rs.inner(Weight::fundamental(r, t), w), Rat(1));
        return v;
    };
    std::vector<std::vector<Rat>> chars;
    chars.reserve(cm.size());
    for (const auto& e : cm.elements) chars.push_back(pairing_vector(e.ell));

    const int n = static_cast<int>(cm.size());
    cm.mult.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            std::vector<Rat> sum(r);
            for (int t = 0; t < r; ++t) sum[t] = rat_mod(chars[a][t] + chars[b][t], Rat(1));
            int found = -1;
            for (int c = 0; c < n; ++c) {
                if (chars[c] == sum) {
                    ensure(found < 0, "center pairing characters are not distinct");
                    found = c;
                }
            }
            ensure(found >= 0, "center is not closed under multiplication");
            cm.mult[a][b] = found;
        }
    }

    int max_order = 1;
    for (int a = 0; a < n; ++a) max_order = std::max(max_order, cm.element_order(a));
    if (max_order == n) {
        cm.order_structure = {n};
    } else {
        ensure(n == 4 && max_order == 2, "unrecognized center group structure");
        cm.order_structure = {2, 2};
    }
    return cm;
}

inline Rat center_pairing(const RootSystem& rs, const Weight& gamma, const CenterElement& z) {
    return rs.inner(gamma, z.ell);
}

// All subgroups, each as a sorted list of element ids (identity included).
inline std::vector<std::vector<int>> subgroups_of_center(const CenterMap& cm) {
    const int n = static_cast<int>(cm.size());
    auto close = [&](std::set<int> s) {
        s.insert(0);
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> cur(s.begin(), s.end());
            for (int a : cur)
                for (int b : cur)
                    if (s.insert(cm.mult[a][b]).second) changed = true;
        }
        return s;
    };
    std::set<std::set<int>> subs;
    subs.insert(close({}));
    for (int a = 0; a < n; ++a) subs.insert(close({a}));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::set<int>> cur(subs.begin(), subs.end());
        for (const auto& s1 : cur) {
            for (const auto& s2 : cur) {
                std::set<int> u = s1;
                u.insert(s2.begin(), s2.end());
                if (subs.insert(close(std::move(u))).second) changed = true;
            }
        }
    }
    std::vector<std::vector<int>> out;
    for (const auto& s : subs) out.emplace_back(s.begin(), s.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace alcove
