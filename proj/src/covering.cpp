#include "strongmeans/covering.hpp"

#include <algorithm>
#include <numeric>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "strongmeans/errors.hpp"
#include "strongmeans/rng.hpp"

namespace sm {

namespace {

struct Group {
    std::vector<std::size_t> members;
    std::int64_t lo, hi;
};

std::vector<Group> sweep(const std::vector<ScaledInterval>& arcs) {
    if (arcs.empty()) return {};
    const std::int64_t S = arcs.front().scale;
    std::vector<std::size_t> order(arcs.size());
    std::iota(order.begin(), order.end(), 0);
    for (const auto& a : arcs)
        if (a.full()) return {{order, 0, S}};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return arcs[i].lo < arcs[j].lo; });
    std::vector<Group> g;
    for (std::size_t i : order) {
        if (!g.empty() && arcs[i].lo <= g.back().hi) {
            g.back().members.push_back(i);
            g.back().hi = std::max(g.back().hi, arcs[i].hi);
        } else {
            g.push_back({{i}, arcs[i].lo, arcs[i].hi});
        }
    }
    while (g.size() > 1 && g.back().hi >= g.front().lo + S) {
        g.back().hi = std::max(g.back().hi, g.front().hi + S);
        g.back().members.insert(g.back().members.end(), g.front().members.begin(), g.front().members.end());
        g.erase(g.begin());
    }
    for (auto& x : g) {
        std::sort(x.members.begin(), x.members.end());
        if (x.hi - x.lo >= S) {
            x.lo = 0;
            x.hi = S;
        }
    }
    std::sort(g.begin(), g.end(), [](const Group& a, const Group& b) { return a.members.front() < b.members.front(); });
    return g;
}

void require_nonadjacent(const std::vector<DyadicInterval>& G, int jmax) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            if (overlaps(G[i], G[j]) || adjacent(G[i], G[j], jmax))
                throw PreconditionError("family is not pairwise disjoint and nonadjacent");
}

void require_nonadjacent(const std::vector<DyadicCube>& G, int jmax) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            if (overlaps(G[i], G[j]) || adjacent(G[i], G[j], jmax))
                throw PreconditionError("family is not pairwise disjoint and nonadjacent");
}

std::size_t find(std::vector<std::size_t>& p, std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

std::vector<std::size_t> largest_members(const std::vector<DyadicCube>& originals, const std::vector<std::size_t>& comp) {
    int best = originals[comp.front()].level;
    for (std::size_t i : comp) best = std::min(best, originals[i].level);
    std::vector<std::size_t> out;
    for (std::size_t i : comp)
        if (originals[i].level == best) out.push_back(i);
    return out;
}

bool free_spot(const std::vector<ScaledBox>& taken, const ScaledBox& b) {
    for (const auto& t : taken)
        if (boxes_touch(t, b)) return false;
    return true;
}

}  // namespace

std::vector<std::vector<DyadicInterval>> partition_nonadjacent(const std::vector<DyadicInterval>& G, int jmax) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            if (overlaps(G[i], G[j])) throw PreconditionError("partition_nonadjacent: intervals overlap");
    std::vector<std::size_t> order(G.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<ScaledInterval> arcs;
    for (const auto& I : G) arcs.push_back(to_arc(I, jmax));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return arcs[a].lo < arcs[b].lo; });
    std::vector<int> color(G.size(), -1);
    int ncolors = 0;
    for (std::size_t i : order) {
        bool used[3] = {false, false, false};
        for (std::size_t j = 0; j < G.size(); ++j)
            if (j != i && color[j] >= 0 && torus_distance_ticks(arcs[i], arcs[j]) == 0) used[color[j]] = true;
        int c = 0;
        while (used[c]) ++c;
        color[i] = c;
        ncolors = std::max(ncolors, c + 1);
    }
    std::vector<std::vector<DyadicInterval>> out(static_cast<std::size_t>(ncolors));
    for (std::size_t i = 0; i < G.size(); ++i) out[static_cast<std::size_t>(color[i])].push_back(G[i]);
    return out;
}

DilatedFamily dilated_components(const std::vector<DyadicInterval>& G, Factor c, int jmax) {
    require_nonadjacent(G, jmax);
    DilatedFamily fam;
    std::vector<ScaledInterval> arcs;
    for (const auto& I : G) {
        fam.originals.push_back({I.level, {I.index}});
        arcs.push_back(dilate(I, c, jmax));
        fam.dilates.push_back({{arcs.back()}});
    }
    for (auto& g : sweep(arcs)) fam.components.push_back(std::move(g.members));
    return fam;
}

DilatedFamily dilated_components_cubes(const std::vector<DyadicCube>& G, Factor c, int jmax) {
    require_nonadjacent(G, jmax);
    DilatedFamily fam;
    fam.originals = G;
    for (const auto& Q : G) fam.dilates.push_back(dilate(Q, c, jmax));
    const std::size_t n = G.size();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (boxes_touch(fam.dilates[i], fam.dilates[j])) p[find(p, i)] = find(p, j);
    std::vector<std::vector<std::size_t>> byroot(n);
    for (std::size_t i = 0; i < n; ++i) byroot[find(p, i)].push_back(i);
    for (auto& comp : byroot)
        if (!comp.empty()) fam.components.push_back(std::move(comp));
    std::sort(fam.components.begin(), fam.components.end());
    return fam;
}

bool chain_check(const DyadicInterval& I1, const DyadicInterval& I2, const DyadicInterval& I3, int jmax) {
    const DyadicInterval t[3] = {I1, I2, I3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (overlaps(t[i], t[j]) || adjacent(t[i], t[j], jmax))
                throw NotAChain("chain cells must be disjoint and nonadjacent");
    const auto a = dilate(I1, kNineEighths, jmax);
    const auto b = dilate(I2, kNineEighths, jmax);
    const auto c = dilate(I3, kNineEighths, jmax);
    if (torus_distance_ticks(a, b) != 0 || torus_distance_ticks(b, c) != 0)
        throw NotAChain("bridge does not meet both ends");
    if (intersects(a, c)) throw NotAChain("outer dilates intersect");
    return b.length() > std::min(a.length(), c.length());
}

CoveringResult verify_covering(const std::vector<DyadicInterval>& G, int jmax) {
    require_nonadjacent(G, jmax);
    CoveringResult r;
    std::vector<ScaledInterval> arcs;
    std::vector<DyadicCube> originals;
    for (const auto& I : G) {
        arcs.push_back(dilate(I, kNineEighths, jmax));
        originals.push_back({I.level, {I.index}});
    }
    const auto groups = sweep(arcs);
    r.components = groups.size();
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        r.largest_component = std::max(r.largest_component, g.members.size());
        const ScaledInterval hull{g.lo, g.hi, arcs.front().scale};
        bool ok = false, literal = false;
        for (std::size_t i : largest_members(originals, g.members)) {
            ok = ok || arc_contains(dilate(G[i], {9, 2}, jmax), hull);
            literal = literal || arc_contains(dilate(G[i], {4, 1}, jmax), hull);
        }
        if (!ok) {
            r.holds = false;
            r.violating.push_back(gi);
        }
        if (!literal) ++r.literal_violations;
    }
    return r;
}

CoveringResult verify_covering_cubes(const std::vector<DyadicCube>& G, int jmax) {
    const auto fam = dilated_components_cubes(G, kNineEighths, jmax);
    CoveringResult r;
    r.components = fam.components.size();
    for (std::size_t ci = 0; ci < fam.components.size(); ++ci) {
        const auto& comp = fam.components[ci];
        r.largest_component = std::max(r.largest_component, comp.size());
        bool ok = false, literal = false;
        for (std::size_t i : largest_members(G, comp)) {
            const auto big = dilate(G[i], {9, 2}, jmax);
            const auto lit = dilate(G[i], {4, 1}, jmax);
            bool all = true, all_lit = true;
            for (std::size_t k : comp) {
                all = all && box_contains(big, fam.dilates[k]);
                all_lit = all_lit && box_contains(lit, fam.dilates[k]);
            }
            ok = ok || all;
            literal = literal || all_lit;
        }
        if (!ok) {
            r.holds = false;
            r.violating.push_back(ci);
        }
        if (!literal) ++r.literal_violations;
    }
    return r;
}

ChainStats enumerate_chains(int max_level, int jmax) {
    std::vector<DyadicInterval> all;
    for (int j = 0; j <= max_level; ++j)
        for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) all.push_back({j, k});
    const std::size_t n = all.size();
    std::vector<ScaledInterval> raw(n), dil(n);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i] = to_arc(all[i], jmax);
        dil[i] = dilate(all[i], kNineEighths, jmax);
    }
    auto separated = [&](std::size_t i, std::size_t j) { return torus_distance_ticks(raw[i], raw[j]) > 0; };
    std::vector<ChainStats> per(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::size_t> cand;
        for (std::size_t x = 0; x < n; ++x)
            if (x != b && separated(x, b) && torus_distance_ticks(dil[x], dil[b]) == 0) cand.push_back(x);
        for (std::size_t u = 0; u < cand.size(); ++u)
            for (std::size_t v = u + 1; v < cand.size(); ++v) {
                const std::size_t x = cand[u], y = cand[v];
                if (!separated(x, y) || intersects(dil[x], dil[y])) continue;
                ++per[b].chains;
                if (!chain_check(all[x], all[b], all[y], jmax)) ++per[b].exceptions;
            }
    }
    ChainStats total;
    for (const auto& s : per) {
        total.chains += s.chains;
        total.exceptions += s.exceptions;
    }
    return total;
}

std::vector<DyadicInterval> random_family_1d(std::uint64_t seed, int J, int max_count, int jmax) {
    std::vector<DyadicCube> cubes = random_family_cubes(seed, 1, J, max_count, jmax);
    std::vector<DyadicInterval> out;
    for (const auto& q : cubes) out.push_back(q.axis(0));
    return out;
}

std::vector<DyadicCube> random_family_cubes(std::uint64_t seed, int d, int J, int max_count, int jmax) {
    boost::random::mt19937_64 rng(seed);
    auto uni = [&](std::int64_t a, std::int64_t b) { return boost::random::uniform_int_distribution<std::int64_t>(a, b)(rng); };
    const int target = static_cast<int>(uni(1, max_count));
    std::vector<DyadicCube> fam;
    std::vector<ScaledBox> taken;
    for (int attempt = 0; attempt < 50 * target && static_cast<int>(fam.size()) < target; ++attempt) {
        DyadicCube q;
        q.index.assign(static_cast<std::size_t>(d), 0);
        bool near = false;
        if (!fam.empty() && uni(0, 9) < 7) {
            const DyadicCube& p = fam[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(fam.size()) - 1))];
            if (p.level + 4 <= J) {
                near = true;
                q.level = static_cast<int>(uni(p.level + 4, J));
                const int r = q.level - p.level;
                const std::int64_t m = std::int64_t{1} << (r - 4);
                const std::int64_t side = std::int64_t{1} << q.level;
                const int a = static_cast<int>(uni(0, d - 1));
                for (int i = 0; i < d; ++i) {
                    const std::int64_t pi = p.index[static_cast<std::size_t>(i)];
                    std::int64_t idx;
                    if (i == a) {
                        const std::int64_t n = uni(1, m + 1);
                        idx = uni(0, 1) ? ((pi + 1) << r) + n : (pi << r) - 1 - n;
                    } else {
                        idx = uni((pi << r) - m - 1, ((pi + 1) << r) + m);
                    }
                    q.index[static_cast<std::size_t>(i)] = ((idx % side) + side) % side;
                }
            }
        }
        if (!near) {
            q.level = static_cast<int>(uni(1, J));
            for (auto& v : q.index) v = uni(0, (std::int64_t{1} << q.level) - 1);
        }
        const ScaledBox b = to_box(q, jmax);
        if (!free_spot(taken, b)) continue;
        taken.push_back(b);
        fam.push_back(std::move(q));
    }
    return fam;
}

namespace {

template <class Family, class Verify>
CoveringSuiteResult run_suite(std::uint64_t seed, std::uint64_t trials, Family make, Verify verify) {
    std::vector<CoveringSuiteResult> per(trials);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
        const auto fam = make(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const CoveringResult r = verify(fam);
        auto& s = per[static_cast<std::size_t>(t)];
        s.families = 1;
        s.violations = r.violating.size();
        s.literal_violations = r.literal_violations;
        s.components = r.components;
        s.max_component = r.largest_component;
        s.families_with_merges = 0;
        if (r.largest_component > 1) s.families_with_merges = 1;
    }
    CoveringSuiteResult total;
    for (const auto& s : per) {
        total.families += s.families;
        total.violations += s.violations;
        total.literal_violations += s.literal_violations;
        total.components += s.components;
        total.families_with_merges += s.families_with_merges;
        total.max_component = std::max(total.max_component, s.max_component);
    }
    return total;
}

}  // namespace

CoveringSuiteResult covering_suite_1d(std::uint64_t seed, std::uint64_t trials, int J, int max_count, int jmax) {
    return run_suite(
        seed, trials,
        [&](std::uint64_t s) {
            boost::random::mt19937_64 rng(s);
            const int j = boost::random::uniform_int_distribution<int>(std::min(4, J), J)(rng);
            return random_family_1d(rng(), j, max_count, jmax);
        },
        [&](const std::vector<DyadicInterval>& f) { return verify_covering(f, jmax); });
}

CoveringSuiteResult covering_suite_cubes(std::uint64_t seed, std::uint64_t trials, int d, int J, int max_count,
                                         int jmax) {
    return run_suite(
        seed, trials,
        [&](std::uint64_t s) {
            boost::random::mt19937_64 rng(s);
            const int j = boost::random::uniform_int_distribution<int>(std::min(4, J), J)(rng);
            return random_family_cubes(rng(), d, j, max_count, jmax);
        },
        [&](const std::vector<DyadicCube>& f) { return verify_covering_cubes(f, jmax); });
}

}  // namespace sm
