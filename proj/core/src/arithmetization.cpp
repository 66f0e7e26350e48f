#include "folab/arithmetization.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "folab/error.hpp"
#include "folab/random.hpp"

namespace folab {

using nlohmann::json;

namespace {

Triple sorted(Vertex a, Vertex b, Vertex c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

Pair sorted(Vertex a, Vertex b) { return a < b ? Pair{a, b} : Pair{b, a}; }

double choose3(std::size_t m) { return m < 3 ? 0.0 : static_cast<double>(m) * (m - 1) * (m - 2) / 6.0; }

template <class F>
void for_each_triple(const std::vector<Vertex>& ground, F&& f) {
    const std::size_t m = ground.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) f(ground[i], ground[j], ground[k]);
}

// Triple membership as a bit string over the lexicographic triple order.
std::vector<bool> triple_bits(const Graph& g, const std::vector<Vertex>& ground, const VertexSet& excl, Vertex w) {
    std::vector<bool> bits;
    bits.reserve(static_cast<std::size_t>(choose3(ground.size())));
    const VertexSet base = g.neighbors(w) - excl;
    for (std::size_t i = 0; i < ground.size(); ++i) {
        const VertexSet bi = base & g.neighbors(ground[i]);
        for (std::size_t j = i + 1; j < ground.size(); ++j) {
            const VertexSet bij = bi & g.neighbors(ground[j]);
            for (std::size_t k = j + 1; k < ground.size(); ++k)
                bits.push_back(!bij.intersects(g.neighbors(ground[k])));
        }
    }
    return bits;
}

} // namespace

bool Hypergraph3::contains(Vertex a, Vertex b, Vertex c) const { return triples.count(sorted(a, b, c)) > 0; }

std::set<Pair> Hypergraph3::link(Vertex a) const {
    std::set<Pair> out;
    for (const auto& t : triples) {
        if (t[0] == a) out.insert({t[1], t[2]});
        else if (t[1] == a) out.insert({t[0], t[2]});
        else if (t[2] == a) out.insert({t[0], t[1]});
    }
    return out;
}

std::set<Vertex> Hypergraph3::link(Vertex a, Vertex b) const {
    std::set<Vertex> out;
    for (const auto& t : triples) {
        const bool ha = std::find(t.begin(), t.end(), a) != t.end();
        const bool hb = std::find(t.begin(), t.end(), b) != t.end();
        if (!ha || !hb || a == b) continue;
        for (Vertex v : t)
            if (v != a && v != b) out.insert(v);
    }
    return out;
}

Hypergraph3 hypergraph_of_witness(const Graph& g, const VertexSet& ground, const VertexSet& excl, Vertex w) {
    if (ground.universe() != g.order() || excl.universe() != g.order() || w >= g.order())
        throw InvalidArgument("hypergraph: vertex data does not belong to the graph");
    if (excl.contains(w)) throw InvalidArgument("hypergraph: the witness lies in the excluded set");
    if (choose3(ground.count()) > static_cast<double>(kTripleCap))
        throw CapExceeded("hypergraph: too many triples on a ground set of " + std::to_string(ground.count()));
    Hypergraph3 h{ground.members(), {}};
    const auto bits = triple_bits(g, h.ground, excl, w);
    std::size_t idx = 0;
    for_each_triple(h.ground, [&](Vertex a, Vertex b, Vertex c) {
        if (bits[idx++]) h.triples.insert({a, b, c});
    });
    return h;
}

VertexSet compute_B(const Graph& g, const VertexSet& w, const VertexSet& a) {
    const std::size_t n = g.order();
    VertexSet out(n);
    if (a.count() < 4) return out;
    const VertexSet wa = w | a;
    std::map<VertexSet, std::vector<Vertex>> by_trace;
    for (Vertex z = 0; z < n; ++z)
        if (!wa.contains(z)) by_trace[g.neighbors(z) & a].push_back(z);
    for (const auto& [trace, zs] : by_trace)
        if (zs.size() == 1 && trace.count() == 4) out.insert(zs[0]);
    return out;
}

bool is_universal(const Graph& g, const VertexSet& w, const VertexSet& a) {
    const double triples = choose3(a.count());
    if (triples > static_cast<double>(kUniversalTripleCap))
        throw CapExceeded("universality: C(|A|,3) = " + std::to_string(static_cast<std::size_t>(triples)) +
                          " exceeds the enumeration cap");
    const VertexSet wa = w | a;
    const auto ground = a.members();
    std::unordered_set<std::uint64_t> seen;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (wa.contains(v)) continue;
        const auto bits = triple_bits(g, ground, wa, v);
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) code |= std::uint64_t{1} << i;
        seen.insert(code);
    }
    return seen.size() == (std::size_t{1} << static_cast<std::size_t>(triples));
}

bool is_splitting(const Graph& g, const VertexSet& w, const VertexSet& a, const VertexSet& b) {
    if (choose3(b.count()) > static_cast<double>(kTripleCap))
        throw CapExceeded("splitting: too many triples on B");
    const VertexSet wab = w | a | b;
    const auto ground = b.members();
    std::set<std::vector<bool>> seen;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (wab.contains(v)) continue;
        if (!seen.insert(triple_bits(g, ground, wab, v)).second) return false;
    }
    return true;
}

std::vector<std::string> size_advisories(std::size_t n, std::size_t a_size, bool universal, std::size_t b_size,
                                         bool splitting, double slack) {
    std::vector<std::string> out;
    const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    if (universal && std::pow(static_cast<double>(a_size), 3) > ln_n * slack)
        out.push_back("A is universal but |A|^3 is large compared to ln n");
    if (splitting && std::pow(static_cast<double>(b_size), 3) < ln_n / slack)
        out.push_back("B is splitting but |B|^3 is small compared to ln n");
    return out;
}

// ---- targets ----

TargetHypergraphs target_hypergraphs(std::size_t s) {
    if (s < 1) throw InvalidArgument("target hypergraphs need s >= 1");
    TargetHypergraphs t;
    t.s = s;
    for (std::size_t i = 1; i <= s; ++i) {
        t.h1.insert(sorted(t.x(i), t.y(i), t.z(i)));
        t.h2.insert(t.x(i));
        t.h3.insert(t.y(i));
        for (std::size_t j = 1; j <= s; ++j) {
            if (i <= j) t.h4.insert(sorted(t.x(i), t.y(j)));
            if (i + j <= s) t.h5.insert(sorted(t.x(i), t.y(j), t.z(i + j)));
            if (i * j <= s) t.h6.insert(sorted(t.x(i), t.y(j), t.z(i * j)));
        }
        if (i < 64 && (std::size_t{1} << i) <= s) t.h7.insert(sorted(t.x(i), t.y(std::size_t{1} << i)));
    }
    return t;
}

// ---- verification ----

namespace {

struct LabelSpace {
    const TargetHypergraphs& t;
    std::size_t s;
    // position -> (class, index); class 'a', 'b', 'x', 'y', 'z'
    char cls(Vertex p) const {
        if (p == 0) return 'a';
        if (p == 1) return 'b';
        if (p <= 1 + s) return 'x';
        if (p <= 1 + 2 * s) return 'y';
        return 'z';
    }
    std::size_t idx(Vertex p) const {
        if (p <= 1) return 0;
        return (p - 2) % s + 1;
    }
};

std::string show(const LabelSpace& ls, Vertex p) {
    const char c = ls.cls(p);
    if (c == 'a' || c == 'b') return std::string(1, c);
    return std::string(1, c) + std::to_string(ls.idx(p));
}

std::string show(const LabelSpace& ls, const Triple& t) {
    return "{" + show(ls, t[0]) + "," + show(ls, t[1]) + "," + show(ls, t[2]) + "}";
}

std::string show(const LabelSpace& ls, const Pair& p) { return "{" + show(ls, p[0]) + "," + show(ls, p[1]) + "}"; }

template <class Set>
std::string set_diff(const LabelSpace& ls, const Set& got, const Set& want) {
    for (const auto& e : got)
        if (!want.count(e)) return "unexpected " + show(ls, e);
    for (const auto& e : want)
        if (!got.count(e)) return "missing " + show(ls, e);
    return "";
}

struct Checker {
    const TargetHypergraphs& t;
    LabelSpace ls;
    std::size_t s;
    std::set<Triple> h1, h5, h6;
    std::set<Vertex> v2, v3;
    std::set<Pair> v4, v7;

    bool in5(std::size_t i, std::size_t j, std::size_t k) const {
        return k >= 1 && k <= s && h5.count(sorted(t.x(i), t.y(j), t.z(k)));
    }
    bool in6(std::size_t i, std::size_t j, std::size_t k) const {
        return k >= 1 && k <= s && h6.count(sorted(t.x(i), t.y(j), t.z(k)));
    }
    // z-indices k with {x_i, y_j, z_k} in the table
    std::vector<std::size_t> zs(const std::set<Triple>& h, std::size_t i, std::size_t j) const {
        std::vector<std::size_t> out;
        for (std::size_t k = 1; k <= s; ++k)
            if (h.count(sorted(t.x(i), t.y(j), t.z(k)))) out.push_back(k);
        return out;
    }

    std::string one_factor() const {
        std::vector<int> cover(3 * s + 2, 0);
        for (const auto& tr : h1)
            for (Vertex p : tr) ++cover[p];
        if (cover[0] || cover[1]) return "a or b lies in a triple";
        for (Vertex p = 2; p < cover.size(); ++p)
            if (cover[p] != 1) return show(ls, p) + " is covered " + std::to_string(cover[p]) + " times";
        return set_diff(ls, h1, t.h1);
    }

    std::string splitting() const {
        for (const auto& tr : h1) {
            int c2 = 0, c3 = 0;
            Vertex p2 = 0, p3 = 0;
            for (Vertex p : tr) {
                if (v2.count(p)) ++c2, p2 = p;
                if (v3.count(p)) ++c3, p3 = p;
            }
            if (c2 != 1 || c3 != 1 || p2 == p3) return "triple " + show(ls, tr) + " is not split once";
        }
        if (auto d = set_diff(ls, v2, t.h2); !d.empty()) return "x-class: " + d;
        if (auto d = set_diff(ls, v3, t.h3); !d.empty()) return "y-class: " + d;
        return "";
    }

    std::string order() const {
        for (const auto& p : v4)
            if (!((ls.cls(p[0]) == 'x' && ls.cls(p[1]) == 'y'))) return "pair " + show(ls, p) + " is not an x-y pair";
        std::vector<std::set<std::size_t>> nb(s + 1);
        for (const auto& p : v4) nb[ls.idx(p[0])].insert(ls.idx(p[1]));
        for (std::size_t i = 1; i <= s; ++i) {
            if (!nb[i].count(i)) return "y" + std::to_string(i) + " is not in N(x" + std::to_string(i) + ")";
            for (std::size_t j = i + 1; j <= s; ++j) {
                const bool ij = std::includes(nb[i].begin(), nb[i].end(), nb[j].begin(), nb[j].end());
                const bool ji = std::includes(nb[j].begin(), nb[j].end(), nb[i].begin(), nb[i].end());
                if (!(ij || ji) || nb[i] == nb[j])
                    return "N(x" + std::to_string(i) + ") and N(x" + std::to_string(j) + ") do not form a chain";
            }
        }
        return set_diff(ls, v4, t.h4);
    }

    std::string addition() const {
        for (std::size_t i = 1; i <= s; ++i)
            for (std::size_t j = 1; j <= s; ++j)
                if (zs(h5, i, j).size() > 1) return "x" + std::to_string(i) + "+y" + std::to_string(j) + " is ambiguous";
        if (s >= 2 && !in5(1, 1, 2)) return "x1+y1 is not z2";
        for (std::size_t i = 1; i < s; ++i)
            if (!in5(i, 1, i + 1)) return "x" + std::to_string(i) + "+y1 is not its successor";
        for (std::size_t i = 1; i <= s; ++i)
            for (std::size_t j = 1; j <= s; ++j)
                for (std::size_t k : zs(h5, i, j)) {
                    if (j < s && k < s && !in5(i, j + 1, k + 1)) return "successor closure fails";
                    if (j > 1 && k > 1 && !in5(i, j - 1, k - 1)) return "predecessor closure fails";
                }
        return set_diff(ls, h5, t.h5);
    }

    std::string multiplication() const {
        for (std::size_t i = 1; i <= s; ++i)
            for (std::size_t j = 1; j <= s; ++j)
                if (zs(h6, i, j).size() > 1) return "x" + std::to_string(i) + "*y" + std::to_string(j) + " is ambiguous";
        for (std::size_t i = 1; i <= s; ++i)
            for (std::size_t k = 1; k <= s; ++k)
                if (in6(i, 1, k) != (i == k)) return "x" + std::to_string(i) + "*y1 is not x" + std::to_string(i);
        for (std::size_t i = 1; i <= s; ++i)
            for (std::size_t j = 1; j < s; ++j)
                for (std::size_t k : zs(h6, i, j)) {
                    // x + z through the addition table, z read as its partner y_k
                    const auto sum = zs(h5, i, k);
                    for (std::size_t k2 = 1; k2 <= s; ++k2) {
                        const bool want = std::find(sum.begin(), sum.end(), k2) != sum.end();
                        if (in6(i, j + 1, k2) != want)
                            return "x" + std::to_string(i) + "*y" + std::to_string(j + 1) + " breaks the recursion";
                    }
                }
        return set_diff(ls, h6, t.h6);
    }

    std::string exponentiation() const {
        std::vector<std::vector<std::size_t>> ys(s + 1);
        for (const auto& p : v7) {
            if (ls.cls(p[0]) != 'x' || ls.cls(p[1]) != 'y') return "pair " + show(ls, p) + " is not an x-y pair";
            ys[ls.idx(p[0])].push_back(ls.idx(p[1]));
        }
        for (std::size_t i = 1; i <= s; ++i)
            if (ys[i].size() > 1) return "2^x" + std::to_string(i) + " is ambiguous";
        if (s >= 2 && (ys[1].size() != 1 || ys[1][0] != 2)) return "2^x1 is not y2";
        for (std::size_t i = 1; i < s; ++i)
            for (std::size_t j : ys[i]) {
                const auto dbl = zs(h5, j, j);
                for (std::size_t j2 = 1; j2 <= s; ++j2) {
                    const bool want = std::find(dbl.begin(), dbl.end(), j2) != dbl.end();
                    const bool got = std::find(ys[i + 1].begin(), ys[i + 1].end(), j2) != ys[i + 1].end();
                    if (want != got) return "2^x" + std::to_string(i + 1) + " is not 2^x" + std::to_string(i) + " doubled";
                }
            }
        return set_diff(ls, v7, t.h7);
    }
};

} // namespace

WitnessVerification verify_witnesses(const Graph& g, const VertexSet& w, const VertexSet& a,
                                     const ArithLabeling& labels, const ArithWitnesses& wit) {
    const std::size_t s = labels.s();
    if (s < 1 || labels.y.size() != s || labels.z.size() != s)
        throw InvalidArgument("labelling needs s >= 1 and equal x, y, z lengths");
    if (a.count() != 3 * s + 2) throw InvalidArgument("labelling does not match |A| = 3s + 2");
    // host -> label position
    std::vector<Vertex> pos(g.order(), static_cast<Vertex>(-1));
    std::vector<Vertex> host;
    host.push_back(labels.a);
    host.push_back(labels.b);
    for (const auto* v : {&labels.x, &labels.y, &labels.z}) host.insert(host.end(), v->begin(), v->end());
    for (std::size_t p = 0; p < host.size(); ++p) {
        const Vertex h = host[p];
        if (h >= g.order() || !a.contains(h) || pos[h] != static_cast<Vertex>(-1))
            throw InvalidArgument("labelling is not a bijection onto A");
        pos[h] = static_cast<Vertex>(p);
    }
    const auto target = target_hypergraphs(s);
    Checker c{target, {target, s}, s, {}, {}, {}, {}, {}, {}, {}};
    const VertexSet excl = w | a;
    std::array<std::set<Triple>, 7> hs;
    for (std::size_t i = 0; i < 7; ++i) {
        for (const auto& tr : hypergraph_of_witness(g, a, excl, wit[i]).triples)
            hs[i].insert(sorted(pos[tr[0]], pos[tr[1]], pos[tr[2]]));
    }
    auto view = [&](std::size_t i) { return Hypergraph3{{}, hs[i]}; };
    c.h1 = hs[0];
    c.v2 = view(1).link(0, 1);
    c.v3 = view(2).link(0, 1);
    c.v4 = view(3).link(0);
    c.h5 = hs[4];
    c.h6 = hs[5];
    c.v7 = view(6).link(0);

    WitnessVerification out;
    auto run = [&](const char* name, std::string detail) {
        ClauseCheck cc{name, detail.empty(), std::move(detail)};
        if (!cc.ok && out.ok) {
            out.ok = false;
            out.failed_clause = name;
        }
        out.clauses.push_back(std::move(cc));
    };
    run("1-Factor", c.one_factor());
    run("Splitting the 1-Factor", c.splitting());
    run("Creating <=", c.order());
    run("addition", c.addition());
    run("multiplication", c.multiplication());
    run("exponentiation", c.exponentiation());
    return out;
}

// ---- fixture ----

ArithFixture build_fixture(std::size_t s, std::uint64_t seed) {
    if (s < 1 || s > kMaxFixtureS) throw InvalidArgument("fixture needs 1 <= s <= 8");
    const auto t = target_hypergraphs(s);
    const std::size_t m = 3 * s + 2;
    // layout before shuffling: W 0..3, A positions 4.., witnesses, blockers
    const Vertex a0 = 4;
    const Vertex w0 = static_cast<Vertex>(a0 + m);
    std::vector<Vertex> positions(m);
    std::iota(positions.begin(), positions.end(), Vertex{0});

    struct Blocker {
        Triple t;
        std::vector<std::size_t> witnesses;
    };
    std::vector<Blocker> blockers;
    for_each_triple(positions, [&](Vertex p, Vertex q, Vertex r) {
        const Triple tr{p, q, r};
        const bool has_a = p == 0, has_ab = p == 0 && q == 1;
        auto rest = [&](Vertex skip) {
            std::vector<Vertex> v;
            for (Vertex x : tr)
                if (x != skip) v.push_back(x);
            return v;
        };
        std::vector<std::size_t> need;
        if (!t.h1.count(tr)) need.push_back(0);
        if (has_ab && !t.h2.count(r)) need.push_back(1);
        if (has_ab && !t.h3.count(r)) need.push_back(2);
        if (has_a) {
            const auto v = rest(0);
            if (!t.h4.count({v[0], v[1]})) need.push_back(3);
        }
        if (!t.h5.count(tr)) need.push_back(4);
        if (!t.h6.count(tr)) need.push_back(5);
        if (has_a) {
            const auto v = rest(0);
            if (!t.h7.count({v[0], v[1]})) need.push_back(6);
        }
        if (!need.empty()) blockers.push_back({tr, std::move(need)});
    });

    const std::size_t n = w0 + 7 + blockers.size();
    if (n > kMaxOrder) throw CapExceeded("fixture exceeds the graph order limit");
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    Rng rng(derive_seed({seed, s}));
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
    // labels are assigned to A in a seeded order as well
    std::vector<Vertex> label_of(m);
    std::iota(label_of.begin(), label_of.end(), Vertex{0});
    for (std::size_t i = m - 1; i > 0; --i) std::swap(label_of[i], label_of[rng() % (i + 1)]);
    auto host_of_pos = [&](Vertex p) { return perm[a0 + label_of[p]]; };

    ArithFixture f;
    GraphBuilder b(n);
    f.w = VertexSet(n);
    f.a = VertexSet(n);
    for (Vertex i = 0; i < 4; ++i) f.w.insert(perm[i]);
    for (Vertex p = 0; p < m; ++p) {
        f.a.insert(host_of_pos(p));
        for (Vertex i = 0; i < 4; ++i) b.add_edge(perm[i], host_of_pos(p));
    }
    for (std::size_t i = 0; i < 7; ++i) f.witnesses[i] = perm[w0 + i];
    for (std::size_t k = 0; k < blockers.size(); ++k) {
        const Vertex z = perm[w0 + 7 + k];
        for (Vertex p : blockers[k].t) {
            b.add_edge(z, host_of_pos(p));
            f.wiring.push_back({z, host_of_pos(p)});
        }
        for (std::size_t i : blockers[k].witnesses) {
            b.add_edge(z, f.witnesses[i]);
            f.wiring.push_back({z, f.witnesses[i]});
        }
    }
    f.graph = std::move(b).build();
    f.labels.a = host_of_pos(t.a());
    f.labels.b = host_of_pos(t.b());
    for (std::size_t i = 1; i <= s; ++i) {
        f.labels.x.push_back(host_of_pos(t.x(i)));
        f.labels.y.push_back(host_of_pos(t.y(i)));
        f.labels.z.push_back(host_of_pos(t.z(i)));
    }
    return f;
}

// ---- digits and depth ----

int digit(std::uint64_t x, std::uint64_t d, std::uint64_t s) {
    if (x < 1 || x > s) throw InvalidArgument("digit needs 1 <= x <= s");
    if (d < 1) throw InvalidArgument("digits are counted from 1");
    if (d == 1) {
        for (std::uint64_t h = 1; h + h <= s; ++h)
            if (h + h == x) return 0;
        return 1;
    }
    // powers of two that exist in the model {1..s}
    auto power = [&](std::uint64_t e) -> std::uint64_t {
        if (e >= 63) return 0;
        const std::uint64_t v = std::uint64_t{1} << e;
        return v <= s ? v : 0;
    };
    const std::uint64_t half = power(d - 1), full = power(d);
    if (half == 0 || x < half) return 0;
    if (full != 0) {
        for (std::uint64_t q = 1; q <= s / full; ++q) {
            const std::uint64_t qd = q * full;
            if (qd == x) return 0;
            if (qd < x && x - qd < half) return 0;
        }
    }
    return 1;
}

std::size_t number_depth(std::uint64_t x, std::size_t c) {
    if (x <= 2) return c;
    const std::size_t m = static_cast<std::size_t>(std::bit_width(x));
    std::size_t best = number_depth(m, c);
    for (std::uint64_t d = 1; d <= m; ++d) best = std::max(best, number_depth(d, c));
    return c + best;
}

std::size_t describe_depth(std::uint64_t x, std::uint64_t s, std::size_t c) {
    if (x < 1 || x > s) throw InvalidArgument("describe_depth needs 1 <= x <= s");
    return std::max(number_depth(x, c), number_depth(s, c));
}

json arith_report(const ArithFixture& f, const WitnessVerification& v) {
    json clauses = json::array();
    for (const auto& c : v.clauses) clauses.push_back({{"clause", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    const VertexSet b = compute_B(f.graph, f.w, f.a);
    return json{{"s", f.labels.s()},
                {"order", f.graph.order()},
                {"A", f.a.count()},
                {"B", b.count()},
                {"blockers", f.graph.order() - 4 - f.a.count() - 7},
                {"ok", v.ok},
                {"failed_clause", v.failed_clause},
                {"clauses", clauses},
                {"describe_depth", describe_depth(f.labels.s(), f.labels.s())}};
}

} // namespace folab
