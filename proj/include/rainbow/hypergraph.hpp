#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/configuration.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rational.hpp"

namespace rainbow {

/// One sorted index set per part.
using SubsetTuple = std::vector<std::vector<std::size_t>>;

/// (d+1)-partite hypergraph: every edge takes exactly one vertex per part.
class PartiteHypergraph {
public:
    PartiteHypergraph() = default;

    PartiteHypergraph(std::vector<std::size_t> part_sizes, std::vector<std::vector<std::size_t>> edges)
        : part_sizes_(std::move(part_sizes)), edges_(std::move(edges)) {
        if (part_sizes_.size() < 2) throw InputError("hypergraph needs at least two parts");
        for (const auto& e : edges_) {
            if (e.size() != part_sizes_.size())
                throw InputError("edge must have exactly one vertex per part");
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] >= part_sizes_[i]) throw InputError("edge vertex index out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw InputError("duplicate edge");
    }

    const std::vector<std::size_t>& part_sizes() const { return part_sizes_; }
    const std::vector<std::vector<std::size_t>>& edges() const { return edges_; }
    std::size_t parts() const { return part_sizes_.size(); }
    std::size_t edge_total() const { return edges_.size(); }

    bool contains(const std::vector<std::size_t>& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// Full parts {0..n_i-1}.
    SubsetTuple full_tuple() const {
        SubsetTuple s(part_sizes_.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i].resize(part_sizes_[i]);
            std::iota(s[i].begin(), s[i].end(), std::size_t{0});
        }
        return s;
    }

    friend bool operator==(const PartiteHypergraph&, const PartiteHypergraph&) = default;

private:
    std::vector<std::size_t> part_sizes_;
    std::vector<std::vector<std::size_t>> edges_;
};

inline void check_subset_tuple(const PartiteHypergraph& H, const SubsetTuple& S) {
    if (S.size() != H.parts()) throw InputError("subset tuple needs one subset per part");
    for (std::size_t i = 0; i < S.size(); ++i) {
        for (std::size_t k = 0; k < S[i].size(); ++k) {
            if (S[i][k] >= H.part_sizes()[i]) throw InputError("subset index out of range");
            if (k > 0 && S[i][k - 1] >= S[i][k]) throw InputError("subsets must be sorted and duplicate-free");
        }
    }
}

namespace detail {

inline std::vector<std::vector<char>> membership(const PartiteHypergraph& H, const SubsetTuple& S) {
    std::vector<std::vector<char>> in(H.parts());
    for (std::size_t i = 0; i < H.parts(); ++i) {
        in[i].assign(H.part_sizes()[i], 0);
        for (std::size_t v : S[i]) in[i][v] = 1;
    }
    return in;
}

inline std::uint64_t count_induced(const PartiteHypergraph& H, const std::vector<std::vector<char>>& in) {
    std::uint64_t count = 0;
    for (const auto& e : H.edges()) {
        bool inside = true;
        for (std::size_t i = 0; i < e.size() && inside; ++i) inside = in[i][e[i]];
        count += inside;
    }
    return count;
}

}  // namespace detail

/// e(S_1, ..., S_{d+1}): edges with every vertex in its part's subset.
inline std::uint64_t edge_count(const PartiteHypergraph& H, const SubsetTuple& S) {
    check_subset_tuple(H, S);
    return detail::count_induced(H, detail::membership(H, S));
}

struct AveragingSides {
    Rational lhs;  ///< e(S) / prod |S_i|
    Rational rhs;  ///< mean of e(T) / prod |T_i| over all t_i-subsets T_i of S_i
};

/// Both sides of the subset-averaging identity by full enumeration.
inline AveragingSides averaging_identity_sides(const PartiteHypergraph& H, const SubsetTuple& S,
                                               const std::vector<std::size_t>& t,
                                               double gate = 1e7) {
    check_subset_tuple(H, S);
    if (t.size() != S.size()) throw InputError("need one t_i per part");
    double combos = 1;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i].empty()) throw InputError("subsets must be nonempty");
        if (t[i] < 1 || t[i] > S[i].size()) throw InputError("need 1 <= t_i <= |S_i|");
        combos *= binomial_estimate(S[i].size(), t[i]);
    }
    if (combos > gate) throw GateError("averaging identity: subset enumeration exceeds budget");

    AveragingSides out;
    Integer size_product = 1;
    for (const auto& s : S) size_product *= static_cast<unsigned long>(s.size());
    out.lhs = Rational(Integer(static_cast<unsigned long>(edge_count(H, S))), size_product);
    out.lhs.canonicalize();

    // enumerate every t_i-subset of each S_i
    std::vector<std::vector<std::vector<std::size_t>>> choices(S.size());
    std::vector<std::size_t> choice_counts;
    for (std::size_t i = 0; i < S.size(); ++i) {
        for_each_combination(S[i].size(), t[i], [&](const std::vector<std::size_t>& idx) {
            std::vector<std::size_t> sub;
            for (std::size_t k : idx) sub.push_back(S[i][k]);
            choices[i].push_back(std::move(sub));
            return true;
        });
        choice_counts.push_back(choices[i].size());
    }
    Integer t_product = 1, combo_total = 1;
    for (std::size_t i = 0; i < S.size(); ++i) {
        t_product *= static_cast<unsigned long>(t[i]);
        combo_total *= static_cast<unsigned long>(choices[i].size());
    }
    Integer edge_sum = 0;
    SubsetTuple T(S.size());
    for_each_product(choice_counts, [&](const std::vector<std::size_t>& pick) {
        for (std::size_t i = 0; i < S.size(); ++i) T[i] = choices[i][pick[i]];
        edge_sum += static_cast<unsigned long>(detail::count_induced(H, detail::membership(H, T)));
        return true;
    });
    out.rhs = Rational(edge_sum, t_product * combo_total);
    out.rhs.canonicalize();
    return out;
}

inline bool averaging_identity_check(const PartiteHypergraph& H, const SubsetTuple& S,
                                     const std::vector<std::size_t>& t, double gate = 1e7) {
    const AveragingSides sides = averaging_identity_sides(H, S, t, gate);
    return sides.lhs == sides.rhs;
}

// ---------------------------------------------------------------------------
// Density functional e / s^(d+1 - eps^(2d))

struct DensityValue {
    std::uint64_t edge_count = 0;
    std::uint64_t size = 0;
    Rational exponent;  ///< d+1 - eps^(2d)
};

inline Rational density_exponent(std::size_t parts, const Rational& epsilon) {
    if (sgn(epsilon) <= 0 || epsilon >= Rational(1, 2)) throw InputError("epsilon must lie in (0, 1/2)");
    const std::size_t d = parts - 1;
    return Rational(static_cast<unsigned long>(parts)) - pow_rational(epsilon, 2 * d);
}

/// Exact sign of a - b. Compares e1/s1^c against e2/s2^c by raising both
/// sides to the exponent's denominator.
inline int compare(const DensityValue& a, const DensityValue& b) {
    if (a.exponent != b.exponent) throw InputError("density values with different exponents");
    if (a.edge_count == 0 || b.edge_count == 0) {
        const bool za = a.edge_count == 0, zb = b.edge_count == 0;
        return za && zb ? 0 : (za ? -1 : 1);
    }
    if (a.size == b.size) return a.edge_count < b.edge_count ? -1 : (a.edge_count > b.edge_count ? 1 : 0);
    const Integer& p = a.exponent.get_num();
    const Integer& q = a.exponent.get_den();
    if (!p.fits_ulong_p() || !q.fits_ulong_p())
        throw GateError("density exponent too fine for exact comparison at this dimension");
    // sign(e1^q s2^p - e2^q s1^p) = sign((e1/e2)^q - (s1/s2)^p)
    Rational e_ratio(Integer(static_cast<unsigned long>(a.edge_count)),
                     Integer(static_cast<unsigned long>(b.edge_count)));
    Rational s_ratio(Integer(static_cast<unsigned long>(a.size)), Integer(static_cast<unsigned long>(b.size)));
    e_ratio.canonicalize();
    s_ratio.canonicalize();
    return compare_powers(e_ratio, q.get_ui(), s_ratio, p.get_ui());
}

inline bool operator<(const DensityValue& a, const DensityValue& b) { return compare(a, b) < 0; }
inline bool operator==(const DensityValue& a, const DensityValue& b) { return compare(a, b) == 0; }

inline DensityValue density_value(const PartiteHypergraph& H, const SubsetTuple& S, const Rational& epsilon) {
    check_subset_tuple(H, S);
    for (const auto& s : S)
        if (s.size() != S[0].size()) throw InputError("density_value needs equal-size subsets");
    if (S[0].empty()) throw InputError("density_value needs nonempty subsets");
    return {edge_count(H, S), S[0].size(), density_exponent(H.parts(), epsilon)};
}

// ---------------------------------------------------------------------------
// Dense extraction

namespace detail {

inline void require_equal_parts(const PartiteHypergraph& H) {
    for (std::size_t s : H.part_sizes())
        if (s != H.part_sizes()[0]) throw InputError("extraction needs equal part sizes");
    if (H.part_sizes()[0] == 0) throw InputError("extraction needs nonempty parts");
}

// Edges grouped by their first d coordinates.
inline std::map<std::vector<std::size_t>, std::vector<std::size_t>> edges_by_prefix(const PartiteHypergraph& H) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> m;
    for (const auto& e : H.edges()) m[std::vector<std::size_t>(e.begin(), e.end() - 1)].push_back(e.back());
    return m;
}

// Degrees of last-part vertices into the product of the prefix subsets.
inline std::vector<std::uint64_t> last_part_degrees(
    const PartiteHypergraph& H, const std::map<std::vector<std::size_t>, std::vector<std::size_t>>& by_prefix,
    const SubsetTuple& prefix) {
    std::vector<std::uint64_t> deg(H.part_sizes().back(), 0);
    std::vector<std::size_t> sizes;
    for (const auto& s : prefix) sizes.push_back(s.size());
    std::vector<std::size_t> key(prefix.size());
    for_each_product(sizes, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) key[i] = prefix[i][idx[i]];
        if (auto it = by_prefix.find(key); it != by_prefix.end())
            for (std::size_t v : it->second) ++deg[v];
        return true;
    });
    return deg;
}

inline double exact_extraction_units(const std::vector<std::size_t>& sizes) {
    const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
    double units = 0;
    for (std::size_t s = 1; s <= smallest; ++s) {
        double p = 1;
        for (std::size_t i = 0; i + 1 < sizes.size(); ++i) p *= binomial_estimate(sizes[i], s);
        units += p;
    }
    return units;
}

struct Ranked {
    SubsetTuple tuple;
    DensityValue value;
};

}  // namespace detail

/// Number of prefix enumerations extract_dense_exact would perform.
inline double exact_extraction_cost(const PartiteHypergraph& H) {
    return detail::exact_extraction_units(H.part_sizes());
}

/// The `count` best equal-size tuples under (density desc, lexicographic asc).
/// Parts may differ in size; s then ranges up to the smallest part.
///
/// For fixed subsets of the first d parts, the best last subset of size s is
/// the s highest-degree vertices (smallest indices on ties), so only the
/// first d parts are enumerated. Candidates are therefore the prefix-optimal
/// tuples; the first one is the global maximizer.
inline std::vector<SubsetTuple> rank_dense_exact(const PartiteHypergraph& H, const Rational& epsilon,
                                                 std::size_t count, double gate = 1e7) {
    const auto& sizes = H.part_sizes();
    if (*std::min_element(sizes.begin(), sizes.end()) == 0) throw InputError("extraction needs nonempty parts");
    const Rational exponent = density_exponent(H.parts(), epsilon);
    const std::size_t d = H.parts() - 1, last_size = sizes.back();
    const std::size_t smallest = *std::min_element(sizes.begin(), sizes.end());
    if (exact_extraction_cost(H) > gate)
        throw GateError("exact extraction exceeds budget; use local search");
    if (count == 0) return {};
    const auto by_prefix = detail::edges_by_prefix(H);

    auto lex_less = [](const detail::Ranked& a, const detail::Ranked& b) { return a.tuple < b.tuple; };
    std::vector<detail::Ranked> pool;
    for (std::size_t s = 1; s <= smallest; ++s) {
        std::vector<std::vector<std::vector<std::size_t>>> subsets(d);
        std::vector<std::size_t> counts;
        for (std::size_t i = 0; i < d; ++i) {
            for_each_combination(sizes[i], s, [&](const std::vector<std::size_t>& idx) {
                subsets[i].push_back(idx);
                return true;
            });
            counts.push_back(subsets[i].size());
        }
        std::vector<detail::Ranked> best_for_size;  // sorted: edges desc, lex asc
        SubsetTuple prefix(d);
        for_each_product(counts, [&](const std::vector<std::size_t>& pick) {
            for (std::size_t i = 0; i < d; ++i) prefix[i] = subsets[i][pick[i]];
            const auto deg = detail::last_part_degrees(H, by_prefix, prefix);
            std::vector<std::size_t> order(last_size);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
            std::vector<std::size_t> last(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
            std::sort(last.begin(), last.end());
            std::uint64_t e = 0;
            for (std::size_t v : last) e += deg[v];

            detail::Ranked cand{prefix, {e, s, exponent}};
            cand.tuple.push_back(std::move(last));
            auto better = [&](const detail::Ranked& x, const detail::Ranked& y) {
                if (x.value.edge_count != y.value.edge_count) return x.value.edge_count > y.value.edge_count;
                return lex_less(x, y);
            };
            if (best_for_size.size() == count && !better(cand, best_for_size.back())) return true;
            auto pos = std::upper_bound(best_for_size.begin(), best_for_size.end(), cand, better);
            best_for_size.insert(pos, std::move(cand));
            if (best_for_size.size() > count) best_for_size.pop_back();
            return true;
        });
        for (auto& c : best_for_size) pool.push_back(std::move(c));
    }
    std::stable_sort(pool.begin(), pool.end(), [&](const detail::Ranked& x, const detail::Ranked& y) {
        const int c = compare(x.value, y.value);
        return c != 0 ? c > 0 : lex_less(x, y);
    });
    std::vector<SubsetTuple> out;
    for (std::size_t i = 0; i < pool.size() && i < count; ++i) out.push_back(pool[i].tuple);
    return out;
}

/// The equal-size tuple maximizing e / s^(d+1 - eps^(2d)); ties go to the
/// lexicographically smallest tuple.
inline SubsetTuple extract_dense_exact(const PartiteHypergraph& H, const Rational& epsilon, double gate = 1e7) {
    return rank_dense_exact(H, epsilon, 1, gate).front();
}

/// Seeded hill climbing from the full parts. Moves: drop the minimum-degree
/// vertex of every part at once, or swap one vertex of a part for an outside
/// one. Only strict improvements are accepted.
inline SubsetTuple extract_dense_local(const PartiteHypergraph& H, const Rational& epsilon, std::uint64_t seed) {
    detail::require_equal_parts(H);
    const Rational exponent = density_exponent(H.parts(), epsilon);
    const std::size_t parts = H.parts(), n = H.part_sizes()[0];
    std::mt19937_64 rng(seed);
    auto shuffle = [&](std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
    };

    SubsetTuple S = H.full_tuple();
    std::vector<std::vector<char>> in = detail::membership(H, S);
    // degree inside S for members, and for outsiders the number of edges in
    // which they are the only vertex outside S
    auto degrees = [&]() {
        std::vector<std::vector<std::uint64_t>> deg(parts, std::vector<std::uint64_t>(n, 0));
        for (const auto& e : H.edges()) {
            std::size_t outside = 0, where = 0;
            for (std::size_t i = 0; i < parts; ++i)
                if (!in[i][e[i]]) {
                    ++outside;
                    where = i;
                }
            if (outside == 0)
                for (std::size_t i = 0; i < parts; ++i) ++deg[i][e[i]];
            else if (outside == 1)
                ++deg[where][e[where]];
        }
        return deg;
    };
    std::uint64_t e = detail::count_induced(H, in);

    while (true) {
        auto deg = degrees();
        bool moved = false;
        const std::size_t s = S[0].size();
        if (s > 1) {
            SubsetTuple next = S;
            std::vector<std::size_t> removed(parts);
            for (std::size_t i = 0; i < parts; ++i) {
                auto it = std::min_element(S[i].begin(), S[i].end(),
                                           [&](std::size_t x, std::size_t y) { return deg[i][x] < deg[i][y]; });
                removed[i] = *it;
                next[i].erase(next[i].begin() + (it - S[i].begin()));
            }
            auto next_in = detail::membership(H, next);
            const std::uint64_t e_next = detail::count_induced(H, next_in);
            if (compare(DensityValue{e_next, s - 1, exponent}, DensityValue{e, s, exponent}) > 0) {
                S = std::move(next);
                in = std::move(next_in);
                e = e_next;
                moved = true;
            }
        }
        if (!moved) {
            std::vector<std::size_t> part_order(parts);
            std::iota(part_order.begin(), part_order.end(), std::size_t{0});
            shuffle(part_order);
            for (std::size_t i : part_order) {
                std::vector<std::size_t> members = S[i], outsiders;
                for (std::size_t v = 0; v < n; ++v)
                    if (!in[i][v]) outsiders.push_back(v);
                shuffle(members);
                shuffle(outsiders);
                for (std::size_t v : members) {
                    for (std::size_t u : outsiders) {
                        if (deg[i][u] > deg[i][v]) {
                            e = e - deg[i][v] + deg[i][u];
                            in[i][v] = 0;
                            in[i][u] = 1;
                            std::replace(S[i].begin(), S[i].end(), v, u);
                            std::sort(S[i].begin(), S[i].end());
                            moved = true;
                            break;
                        }
                    }
                    if (moved) break;
                }
                if (moved) break;
            }
        }
        if (!moved) return S;
    }
}

// ---------------------------------------------------------------------------
// Property (ii): every choice of ceil(eps s)-subsets spans an edge

enum class PropertyStatus { Ok, Counterexample, SampledOk };

inline std::string to_string(PropertyStatus s) {
    switch (s) {
        case PropertyStatus::Ok: return "ok";
        case PropertyStatus::Counterexample: return "counterexample";
        case PropertyStatus::SampledOk: return "sampled";
    }
    return "?";
}

struct PropertyResult {
    PropertyStatus status = PropertyStatus::Ok;
    std::size_t subset_size = 0;
    SubsetTuple counterexample;
};

inline std::size_t ceil_fraction_of(const Rational& epsilon, std::size_t s) {
    const Rational x = epsilon * static_cast<unsigned long>(s);
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return static_cast<std::size_t>(c.get_ui());
}

/// Exhaustive by default. When the enumeration exceeds `gate` it either
/// throws GateError or, with allow_sampling, checks `samples` seeded random
/// choices and reports SampledOk.
inline PropertyResult verify_property_ii(const PartiteHypergraph& H, const SubsetTuple& S, const Rational& epsilon,
                                         double gate = 1e7, bool allow_sampling = false,
                                         std::size_t samples = 10000, std::uint64_t seed = 0) {
    check_subset_tuple(H, S);
    if (sgn(epsilon) <= 0 || epsilon >= Rational(1, 2)) throw InputError("epsilon must lie in (0, 1/2)");
    for (const auto& s : S)
        if (s.size() != S[0].size() || s.empty()) throw InputError("property (ii) needs equal nonempty subsets");
    const std::size_t parts = H.parts(), d = parts - 1, s = S[0].size();
    PropertyResult out;
    out.subset_size = std::max<std::size_t>(1, ceil_fraction_of(epsilon, s));
    const std::size_t k = out.subset_size;
    const auto by_prefix = detail::edges_by_prefix(H);

    double units = 1;
    for (std::size_t i = 0; i < d; ++i) units *= binomial_estimate(s, k);
    if (units <= gate) {
        std::vector<std::vector<std::size_t>> picks;
        for_each_combination(s, k, [&](const std::vector<std::size_t>& idx) {
            picks.push_back(idx);
            return true;
        });
        SubsetTuple prefix(d);
        for_each_product(std::vector<std::size_t>(d, picks.size()), [&](const std::vector<std::size_t>& pick) {
            for (std::size_t i = 0; i < d; ++i) {
                prefix[i].clear();
                for (std::size_t x : picks[pick[i]]) prefix[i].push_back(S[i][x]);
            }
            const auto deg = detail::last_part_degrees(H, by_prefix, prefix);
            std::vector<std::size_t> zero;
            for (std::size_t v : S[d])
                if (deg[v] == 0 && zero.size() < k) zero.push_back(v);
            if (zero.size() == k) {
                out.status = PropertyStatus::Counterexample;
                out.counterexample = prefix;
                out.counterexample.push_back(zero);
                return false;
            }
            return true;
        });
        return out;
    }
    if (!allow_sampling) throw GateError("property (ii) enumeration exceeds budget");
    std::mt19937_64 rng(seed);
    SubsetTuple Q(parts);
    for (std::size_t r = 0; r < samples; ++r) {
        for (std::size_t i = 0; i < parts; ++i) {
            std::vector<std::size_t> pool = S[i];
            for (std::size_t j = 0; j < k; ++j) std::swap(pool[j], pool[j + uniform_below(rng, pool.size() - j)]);
            Q[i].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(Q[i].begin(), Q[i].end());
        }
        if (edge_count(H, Q) == 0) {
            out.status = PropertyStatus::Counterexample;
            out.counterexample = Q;
            return out;
        }
    }
    out.status = PropertyStatus::SampledOk;
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json hypergraph_to_json(const PartiteHypergraph& H) {
    return {{"part_sizes", H.part_sizes()}, {"edges", H.edges()}};
}

inline PartiteHypergraph hypergraph_from_json(const nlohmann::json& j) {
    try {
        return PartiteHypergraph(j.at("part_sizes").get<std::vector<std::size_t>>(),
                                 j.at("edges").get<std::vector<std::vector<std::size_t>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError("parse", std::string("malformed hypergraph: ") + e.what());
    }
}

/// Hypergraph of rainbow tuples whose simplex strictly contains p.
inline PartiteHypergraph containment_hypergraph(const ColoredConfiguration& cfg,
                                                const std::vector<std::vector<std::size_t>>& tuples) {
    std::vector<std::size_t> sizes;
    for (const auto& c : cfg.colors) sizes.push_back(c.size());
    return PartiteHypergraph(sizes, tuples);
}

}  // namespace rainbow
