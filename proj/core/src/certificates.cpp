#include "folab/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "folab/census.hpp"
#include "folab/error.hpp"
#include "folab/isomorphism.hpp"
#include "folab/random.hpp"

namespace folab {

using nlohmann::json;

const char* to_string(CertKind k) {
    switch (k) {
    case CertKind::ExtensionLower: return "ExtensionLower";
    case CertKind::LemmaY: return "LemmaY";
    case CertKind::DetD0: return "DetD0";
    case CertKind::Half: return "Half";
    case CertKind::Lupper: return "Lupper";
    case CertKind::Comps: return "Comps";
    }
    return "?";
}

const char* to_string(Metric m) {
    switch (m) {
    case Metric::D: return "D";
    case Metric::D0: return "D0";
    case Metric::D1: return "D1";
    case Metric::D2: return "D2";
    }
    return "?";
}

const char* to_string(Relation r) {
    switch (r) {
    case Relation::Ge: return ">=";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    }
    return "?";
}

namespace {

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> all) {
    for (E e : all)
        if (s == to_string(e)) return e;
    throw InvalidArgument("unknown certificate field value '" + s + "'");
}

double binom(double n, double k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Calls f on every k-subset of `pool` (as a vector, ascending positions).
template <class F>
bool for_each_subset(const std::vector<Vertex>& pool, std::size_t k, F&& f) {
    if (k > pool.size()) return true;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Vertex> pick(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) pick[i] = pool[idx[i]];
        if (!f(pick)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Certificate make(CertKind kind, Metric m, Relation r, std::size_t value, json witness) {
    Certificate c{kind, m, r, value, std::move(witness), "exact"};
    return c;
}

} // namespace

json to_json(const VertexSet& s) { return json(s.members()); }

VertexSet vertex_set_from_json(const json& j, std::size_t universe) {
    VertexSet s(universe);
    for (const auto& v : j) {
        const auto x = v.get<std::int64_t>();
        if (x < 0 || static_cast<std::size_t>(x) >= universe) throw InvalidArgument("vertex out of range in witness");
        s.insert(static_cast<Vertex>(x));
    }
    return s;
}

json to_json(const Certificate& c) {
    return json{{"kind", to_string(c.kind)}, {"metric", to_string(c.metric)}, {"rel", to_string(c.rel)},
                {"value", c.value},          {"witness", c.witness},          {"mode", c.mode}};
}

Certificate certificate_from_json(const json& j) {
    Certificate c{};
    c.kind = parse_enum<CertKind>(j.at("kind").get<std::string>(),
                                  {CertKind::ExtensionLower, CertKind::LemmaY, CertKind::DetD0, CertKind::Half,
                                   CertKind::Lupper, CertKind::Comps});
    c.metric = parse_enum<Metric>(j.at("metric").get<std::string>(), {Metric::D, Metric::D0, Metric::D1, Metric::D2});
    c.rel = parse_enum<Relation>(j.at("rel").get<std::string>(), {Relation::Ge, Relation::Le, Relation::Eq});
    c.value = j.at("value").get<std::size_t>();
    c.witness = j.at("witness");
    c.mode = j.value("mode", "exact");
    return c;
}

// ---- extension property ----

double extension_work(std::size_t n, std::size_t k) {
    const double words = static_cast<double>((n + 63) / 64);
    double total = 0.0;
    for (std::size_t j = 1; j <= k; ++j) total += binom(static_cast<double>(n), static_cast<double>(j)) * std::ldexp(1.0, static_cast<int>(j));
    return total * words;
}

namespace {

struct ExtensionSearch {
    const Graph& g;
    std::size_t k;
    VertexSet a, b;
    bool failed = false;

    void rec(Vertex start, std::size_t used, const VertexSet& cand) {
        for (Vertex v = start; v < g.order() && !failed; ++v) {
            for (int in_a = 1; in_a >= 0 && !failed; --in_a) {
                VertexSet next = in_a ? (cand & g.neighbors(v)) : (cand - g.neighbors(v));
                next.erase(v);
                (in_a ? a : b).insert(v);
                if (next.empty()) {
                    failed = true;
                    return;
                }
                if (used + 1 < k) rec(v + 1, used + 1, next);
                if (!failed) (in_a ? a : b).erase(v);
            }
        }
    }
};

bool satisfies(const Graph& g, const VertexSet& a, const VertexSet& b) {
    VertexSet cand = ~(a | b);
    a.for_each([&](Vertex v) { cand &= g.neighbors(v); });
    b.for_each([&](Vertex v) { cand -= g.neighbors(v); });
    return !cand.empty();
}

} // namespace

ExtensionResult has_extension_property(const Graph& g, std::size_t k, std::size_t samples, std::uint64_t seed) {
    ExtensionResult out;
    const std::size_t n = g.order();
    if (k == 0) return out;
    if (extension_work(n, k) <= kExtensionWorkCap) {
        ExtensionSearch s{g, k, VertexSet(n), VertexSet(n)};
        s.rec(0, 0, VertexSet::full(n));
        if (s.failed) {
            out.holds = false;
            out.violation = std::pair{s.a, s.b};
        }
        return out;
    }
    if (samples == 0)
        throw CapExceeded("extension property: exhaustive check for k=" + std::to_string(k) + " on " +
                          std::to_string(n) + " vertices exceeds the work cap");
    out.mode = "sampled";
    Rng rng(seed);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t t = 0; t < samples; ++t) {
        const std::size_t j = 1 + static_cast<std::size_t>(rng() % std::min(k, n));
        for (std::size_t i = 0; i < j; ++i) std::swap(perm[i], perm[i + rng() % (n - i)]);
        VertexSet a(n), b(n);
        for (std::size_t i = 0; i < j; ++i) (rng() & 1 ? a : b).insert(perm[i]);
        if (!satisfies(g, a, b)) {
            out.holds = false;
            out.violation = std::pair{a, b};
            return out;
        }
    }
    return out;
}

Certificate extension_lower_bound(const Graph& g, std::size_t k_max) {
    std::size_t k = 0;
    bool capped = false;
    while (k < k_max) {
        if (extension_work(g.order(), k + 1) > kExtensionWorkCap) {
            capped = true;
            break;
        }
        if (!has_extension_property(g, k + 1).holds) break;
        ++k;
    }
    return make(CertKind::ExtensionLower, Metric::D, Relation::Ge, k + 2, json{{"k", k}, {"capped", capped}});
}

// ---- similarity ----

namespace {

// Trace of every vertex on X, as one comparable key per vertex.
std::vector<VertexSet> traces(const Graph& g, const VertexSet& x) {
    std::vector<VertexSet> t(g.order());
    for (Vertex v = 0; v < g.order(); ++v) t[v] = g.neighbors(v) & x;
    return t;
}

// Indices of vertices outside X grouped by equal trace, each group ascending.
std::vector<std::vector<Vertex>> outside_groups(const Graph& g, const VertexSet& x) {
    const std::size_t n = g.order();
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < n; ++v)
        if (!x.contains(v)) outside.push_back(v);
    std::vector<std::vector<Vertex>> groups;
    if (x.count() <= 64) {
        const auto xs = x.members();
        std::vector<std::pair<std::uint64_t, Vertex>> keys;
        keys.reserve(outside.size());
        for (Vertex v : outside) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (g.adjacent(v, xs[i])) key |= std::uint64_t{1} << i;
            keys.emplace_back(key, v);
        }
        std::sort(keys.begin(), keys.end());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i == 0 || keys[i].first != keys[i - 1].first) groups.emplace_back();
            groups.back().push_back(keys[i].second);
        }
    } else {
        const auto t = traces(g, x);
        std::sort(outside.begin(), outside.end(), [&](Vertex a, Vertex b) {
            return t[a] != t[b] ? t[a] < t[b] : a < b;
        });
        for (std::size_t i = 0; i < outside.size(); ++i) {
            if (i == 0 || t[outside[i]] != t[outside[i - 1]]) groups.emplace_back();
            groups.back().push_back(outside[i]);
        }
    }
    return groups;
}

} // namespace

SimilarityPartition similarity_partition(const Graph& g, const VertexSet& x) {
    if (x.universe() != g.order()) throw InvalidArgument("vertex set does not belong to the graph");
    SimilarityPartition p{x, {}};
    x.for_each([&](Vertex v) { p.classes.emplace_back(g.order(), std::initializer_list<Vertex>{v}); });
    for (const auto& grp : outside_groups(g, x)) p.classes.emplace_back(g.order(), std::span<const Vertex>(grp));
    std::sort(p.classes.begin(), p.classes.end(), [](const VertexSet& a, const VertexSet& b) {
        return a.first() < b.first();
    });
    return p;
}

VertexSet sifted(const Graph& g, const VertexSet& x) {
    if (x.universe() != g.order()) throw InvalidArgument("vertex set does not belong to the graph");
    VertexSet s = x;
    for (const auto& grp : outside_groups(g, x))
        if (grp.size() == 1) s.insert(grp[0]);
    return s;
}

bool is_sieve(const Graph& g, const VertexSet& x) { return sifted(g, x).count() == g.order(); }

std::optional<Certificate> lemmaY_bound(const Graph& g, const VertexSet& x) {
    const VertexSet y = sifted(g, x);
    if (!is_sieve(g, y)) return std::nullopt;
    return make(CertKind::LemmaY, Metric::D1, Relation::Le, x.count() + 3, json{{"X", to_json(x)}, {"Y", to_json(y)}});
}

namespace {

struct SieveScore {
    std::size_t twice, once, classes;
    auto operator<=>(const SieveScore&) const = default;
};

SieveScore score(const Graph& g, const VertexSet& x) {
    const VertexSet y = sifted(g, x);
    return {sifted(g, y).count(), y.count(), x.count() + outside_groups(g, x).size()};
}

VertexSet greedy_sieve(const Graph& g, VertexSet x) {
    const std::size_t n = g.order();
    while (sifted(g, sifted(g, x)).count() < n) {
        Vertex best = static_cast<Vertex>(n);
        SieveScore best_score{};
        for (Vertex v = 0; v < n; ++v) {
            if (x.contains(v)) continue;
            VertexSet t = x;
            t.insert(v);
            const SieveScore s = score(g, t);
            if (best == n || s > best_score) {
                best = v;
                best_score = s;
            }
        }
        x.insert(best);
    }
    auto members = x.members();
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        VertexSet t = x;
        t.erase(*it);
        if (sifted(g, sifted(g, t)).count() == n) x = t;
    }
    return x;
}

} // namespace

VertexSet search_small_sieve(const Graph& g, const SieveSearch& opts) {
    const std::size_t n = g.order();
    VertexSet best = greedy_sieve(g, VertexSet(n));
    if (n == 0) return best;
    Rng rng(opts.seed);
    for (std::size_t r = 0; r < opts.restarts; ++r) {
        VertexSet start(n);
        start.insert(static_cast<Vertex>(rng() % n));
        VertexSet x = greedy_sieve(g, start);
        if (x.count() < best.count() || (x.count() == best.count() && x < best)) best = x;
    }
    return best;
}

std::optional<Certificate> detD0_bound(const Graph& g, const VertexSet& x) {
    if (g.order() > 256 && x.count() > 12)
        throw CapExceeded("DetD0: induced-copy search refused for n > 256 with |X| > 12");
    if (!is_sieve(g, x)) return std::nullopt;
    const Graph gx = g.induced(x);
    if (has_nontrivial_automorphism(gx)) return std::nullopt;
    if (count_induced_embeddings(gx, g, 2) != 1) return std::nullopt;
    return make(CertKind::DetD0, Metric::D0, Relation::Le, x.count() + 2, json{{"X", to_json(x)}});
}

// ---- S_u(W) ----

VertexSet sifted_u(const Graph& g, const VertexSet& w, std::size_t u) {
    const std::size_t n = g.order();
    if (w.universe() != n) throw InvalidArgument("vertex set does not belong to the graph");
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < n; ++v)
        if (!w.contains(v)) pool.push_back(v);
    if (binom(static_cast<double>(pool.size()), static_cast<double>(u)) > kSiftedUCap)
        throw CapExceeded("S_u(W): " + std::to_string(u) + "-subsets of " + std::to_string(pool.size()) +
                          " vertices exceed the enumeration cap");
    VertexSet out(n);
    for_each_subset(pool, u, [&](const std::vector<Vertex>& pick) {
        VertexSet z = w;
        for (Vertex v : pick) z.insert(v);
        out |= sifted(g, z) - z;
        return true;
    });
    return out;
}

VertexSet sifted_u_sampled(const Graph& g, const VertexSet& w, std::size_t u, std::size_t samples,
                           std::uint64_t seed) {
    const std::size_t n = g.order();
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < n; ++v)
        if (!w.contains(v)) pool.push_back(v);
    VertexSet out(n);
    if (u > pool.size()) return out;
    Rng rng(seed);
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t i = 0; i < u; ++i) std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
        VertexSet z = w;
        for (std::size_t i = 0; i < u; ++i) z.insert(pool[i]);
        out |= sifted(g, z) - z;
    }
    return out;
}

namespace {

bool distinct_traces(const Graph& g, const VertexSet& y, const VertexSet& w) {
    std::vector<VertexSet> seen;
    y.for_each([&](Vertex v) { seen.push_back(g.neighbors(v) & w); });
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

} // namespace

std::optional<Certificate> lemma_half_bound(const Graph& g, const VertexSet& w, std::size_t u) {
    const VertexSet y = sifted_u(g, w, u);
    if (!is_sieve(g, y | w)) return std::nullopt;
    if (!distinct_traces(g, y, w)) return std::nullopt;
    return make(CertKind::Half, Metric::D2, Relation::Le, u + w.count() + 4,
                json{{"W", to_json(w)}, {"u", u}, {"Y", to_json(y)}});
}

std::optional<VertexSet> half_recipe_w(const Graph& g, const VertexSet& a) {
    const VertexSet y = sifted_u(g, a, a.count());
    const auto part = similarity_partition(g, a | y);
    std::optional<Vertex> x;
    for (const auto& c : part.classes) {
        const std::size_t s = c.count();
        if (s == 1) continue;
        if (s > 2 || x) return std::nullopt;
        x = c.first();
    }
    VertexSet w = a;
    if (x) w.insert(*x);
    return w;
}

// ---- recursive upper bound ----

std::optional<Certificate> best_upper_certificate(const Graph& g, const SieveSearch& opts) {
    const std::size_t n = g.order();
    std::optional<Certificate> best;
    auto consider = [&](std::optional<Certificate> c) {
        if (c && (!best || c->value < best->value)) best = std::move(c);
    };
    if (n <= 12) {
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), Vertex{0});
        for (std::size_t s = 0; s <= n; ++s) {
            if (best && best->value <= s + 2) break;
            for_each_subset(all, s, [&](const std::vector<Vertex>& pick) {
                const VertexSet x(n, std::span<const Vertex>(pick));
                consider(detD0_bound(g, x));
                consider(lemmaY_bound(g, x));
                return !(best && best->value <= s + 2);
            });
        }
        return best;
    }
    const VertexSet x = search_small_sieve(g, opts);
    consider(lemmaY_bound(g, x));
    if (is_sieve(g, x) && (n <= 256 || x.count() <= 12)) consider(detD0_bound(g, x));
    return best;
}

namespace {

std::vector<std::vector<Vertex>> tuples_of_length(std::size_t n, std::size_t len) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
            cur.push_back(v);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

// Residual vertex set V_x (host labels).
VertexSet residual_set(const Graph& g, const std::vector<Vertex>& xs) {
    VertexSet s = VertexSet::full(g.order());
    for (Vertex x : xs) {
        s &= g.neighbors(x);
        s.erase(x);
    }
    return s;
}

// Conditions 3a, 3b and 4; returns the failing condition name or "".
std::string structural_conditions(const Graph& g, std::size_t l, json& witness) {
    for (std::size_t i = 0; i + 1 <= l; ++i) {
        for (const auto& xs : tuples_of_length(g.order(), i)) {
            const auto vx = residual_set(g, xs).members();
            for (Vertex y : vx) {
                auto xy = xs;
                xy.push_back(y);
                const VertexSet vxy = residual_set(g, xy);
                const Graph gxy = g.induced(vxy);
                for (Vertex z : vx) {
                    if (z == y) continue;
                    auto xyz = xy;
                    xyz.push_back(z);
                    const VertexSet u = residual_set(g, xyz);
                    const Graph gxyz = g.induced(u);
                    if (count_induced_embeddings(gxyz, gxy, 2) != 1) {
                        witness = {{"x", xs}, {"y", y}, {"z", z}};
                        return "condition 3a";
                    }
                    auto xz = xs;
                    xz.push_back(z);
                    const VertexSet vxz_rest = residual_set(g, xz) - u;
                    std::vector<VertexSet> other;
                    vxz_rest.for_each([&](Vertex w) { other.push_back(g.neighbors(w) & u); });
                    std::sort(other.begin(), other.end());
                    bool found = false;
                    (vxy - u).for_each([&](Vertex v) {
                        if (found) return;
                        const VertexSet t = g.neighbors(v) & u;
                        found = !std::binary_search(other.begin(), other.end(), t);
                    });
                    if (!found) {
                        witness = {{"x", xs}, {"y", y}, {"z", z}};
                        return "condition 3b";
                    }
                    for (Vertex w : vx) {
                        if (w == y || w == z) continue;
                        auto xw = xs;
                        xw.push_back(w);
                        if (induced_embeds(gxyz, g.induced(residual_set(g, xw)))) {
                            witness = {{"x", xs}, {"y", y}, {"z", z}, {"w", w}};
                            return "condition 4";
                        }
                    }
                }
            }
        }
    }
    return "";
}

std::vector<std::vector<Vertex>> condition1_tuples(std::size_t n, std::size_t l) {
    std::vector<std::vector<Vertex>> out;
    if (l >= 1) out = tuples_of_length(n, l - 1);
    auto more = tuples_of_length(n, l);
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

void check_lupper_pre(const Graph& g, std::size_t l, std::size_t l0) {
    if (l > 2) throw CapExceeded("lupper: tuple enumeration is limited to l <= 2");
    if (g.order() > 64) throw CapExceeded("lupper: tuple enumeration is limited to 64 vertices");
    if (l0 < 3) throw InvalidArgument("lupper: l0 must be at least 3");
}

} // namespace

namespace {

struct ResidualCert {
    std::vector<Vertex> tuple;
    std::optional<Certificate> sub;
};

std::vector<ResidualCert> condition1_residuals(const Graph& g, std::size_t l, const SieveSearch& opts) {
    std::vector<ResidualCert> out;
    for (auto& xs : condition1_tuples(g.order(), l)) {
        auto sub = best_upper_certificate(g.induced(residual_set(g, xs)), opts);
        out.push_back({std::move(xs), std::move(sub)});
    }
    return out;
}

LupperResult finish_lupper(const Graph& g, std::size_t l, std::size_t l0, const std::vector<ResidualCert>& residuals) {
    LupperResult out;
    json subs = json::array();
    for (const auto& r : residuals) {
        if (!r.sub || r.sub->value > l0) {
            out.failed = "condition 1";
            out.witness = {{"tuple", r.tuple}, {"best", r.sub ? json(r.sub->value) : json(nullptr)}};
            return out;
        }
        subs.push_back({{"tuple", r.tuple}, {"certificate", to_json(*r.sub)}});
    }
    if (l >= 2) {
        json w;
        const std::string failed = structural_conditions(g, l, w);
        if (!failed.empty()) {
            out.failed = failed;
            out.witness = w;
            return out;
        }
    }
    out.certificate = make(CertKind::Lupper, Metric::D, Relation::Le, l + l0,
                           json{{"l", l}, {"l0", l0}, {"residuals", subs}});
    return out;
}

} // namespace

LupperResult lupper_check(const Graph& g, std::size_t l, std::size_t l0, const SieveSearch& opts) {
    check_lupper_pre(g, l, l0);
    return finish_lupper(g, l, l0, condition1_residuals(g, l, opts));
}

LupperResult lupper_auto(const Graph& g, std::size_t l, const SieveSearch& opts) {
    check_lupper_pre(g, l, 3);
    const auto residuals = condition1_residuals(g, l, opts);
    std::size_t l0 = 3;
    for (const auto& r : residuals)
        if (r.sub) l0 = std::max(l0, r.sub->value);
    return finish_lupper(g, l, l0, residuals);
}

// ---- very sparse graphs ----

std::optional<Certificate> comps_check(const Graph& g) {
    if (g.size() == 0)
        return make(CertKind::Comps, Metric::D, Relation::Eq, g.order() + 1, json{{"edgeless", true}});
    const auto census = component_census(g);
    const std::size_t t1 = census.t(1);
    json classes = json::array();
    for (const auto& c : census.classes) {
        if (c.multiplicity + c.order > t1 + 1) return std::nullopt;
        classes.push_back({{"key", c.key}, {"multiplicity", c.multiplicity}, {"order", c.order}});
    }
    return make(CertKind::Comps, Metric::D, Relation::Eq, t1 + 2,
                json{{"edgeless", false}, {"t1", t1}, {"classes", classes}});
}

// ---- re-verification ----

std::string verify_certificate(const Graph& g, const Certificate& c) {
    if (c.mode != "exact") return "only exact certificates verify";
    const std::size_t n = g.order();
    const json& w = c.witness;
    try {
        switch (c.kind) {
        case CertKind::ExtensionLower: {
            const auto k = w.at("k").get<std::size_t>();
            if (c.metric != Metric::D || c.rel != Relation::Ge || c.value != k + 2) return "bound does not match k + 2";
            if (!has_extension_property(g, k).holds) return "extension property fails";
            return "";
        }
        case CertKind::LemmaY: {
            const VertexSet x = vertex_set_from_json(w.at("X"), n);
            const VertexSet y = vertex_set_from_json(w.at("Y"), n);
            if (c.metric != Metric::D1 || c.rel != Relation::Le || c.value != x.count() + 3)
                return "bound does not match |X| + 3";
            if (sifted(g, x) != y) return "Y is not S(X)";
            if (!is_sieve(g, y)) return "S(Y) is not V";
            return "";
        }
        case CertKind::DetD0: {
            const VertexSet x = vertex_set_from_json(w.at("X"), n);
            if (c.metric != Metric::D0 || c.rel != Relation::Le || c.value != x.count() + 2)
                return "bound does not match |X| + 2";
            if (!is_sieve(g, x)) return "d1: X is not a sieve";
            const Graph gx = g.induced(x);
            if (has_nontrivial_automorphism(gx)) return "d2: G[X] has a nontrivial automorphism";
            if (count_induced_embeddings(gx, g, 2) != 1) return "d3: G[X] has another induced copy";
            return "";
        }
        case CertKind::Half: {
            const VertexSet wset = vertex_set_from_json(w.at("W"), n);
            const auto u = w.at("u").get<std::size_t>();
            const VertexSet y = vertex_set_from_json(w.at("Y"), n);
            if (c.metric != Metric::D2 || c.rel != Relation::Le || c.value != u + wset.count() + 4)
                return "bound does not match u + |W| + 4";
            if (sifted_u(g, wset, u) != y) return "Y is not S_u(W)";
            if (!is_sieve(g, y | wset)) return "Y u W is not a sieve";
            if (!distinct_traces(g, y, wset)) return "two Y vertices share a W-neighbourhood";
            return "";
        }
        case CertKind::Lupper: {
            const auto l = w.at("l").get<std::size_t>();
            const auto l0 = w.at("l0").get<std::size_t>();
            if (c.metric != Metric::D || c.rel != Relation::Le || c.value != l + l0) return "bound does not match l + l0";
            check_lupper_pre(g, l, l0);
            std::set<std::vector<Vertex>> covered;
            for (const auto& r : w.at("residuals")) {
                auto xs = r.at("tuple").get<std::vector<Vertex>>();
                const Graph res = g.induced(residual_set(g, xs));
                const Certificate sub = certificate_from_json(r.at("certificate"));
                if (sub.kind != CertKind::LemmaY && sub.kind != CertKind::DetD0) return "unsupported sub-certificate";
                if (sub.value > l0) return "sub-certificate exceeds l0";
                if (auto err = verify_certificate(res, sub); !err.empty()) return "sub-certificate: " + err;
                covered.insert(std::move(xs));
            }
            for (const auto& xs : condition1_tuples(n, l))
                if (!covered.count(xs)) return "condition 1: residual not covered";
            if (l >= 2) {
                json dummy;
                if (auto f = structural_conditions(g, l, dummy); !f.empty()) return f;
            }
            return "";
        }
        case CertKind::Comps: {
            auto fresh = comps_check(g);
            if (!fresh) return "component condition fails";
            if (fresh->value != c.value || c.rel != Relation::Eq || c.metric != Metric::D) return "bound mismatch";
            return "";
        }
        }
    } catch (const nlohmann::json::exception& e) {
        return std::string("malformed witness: ") + e.what();
    }
    return "unknown kind";
}

} // namespace folab
