#include "badger/tree.hpp"

#include <algorithm>
#include <functional>

namespace badger {

TreeFamily TreeFamily::single_root(const RatInterval& root) {
    TreeFamily t;
    t.levels.push_back({TreeNode{root, -1}});
    return t;
}

TreeCheckResult check_tree_like(const TreeFamily& t) {
    TreeCheckResult res;
    auto fail = [&](int cond, int level, long index, std::string detail) {
        res.ok = false;
        res.condition = cond;
        res.level = level;
        res.index = index;
        res.detail = std::move(detail);
        return res;
    };
    for (int n = 0; n <= t.depth(); ++n) {
        const auto& lvl = t.levels[static_cast<std::size_t>(n)];
        for (std::size_t a = 0; a < lvl.size(); ++a) {
            if (!(lvl[a].iv.width() > 0)) return fail(1, n, static_cast<long>(a), "zero length");
            for (std::size_t b = a + 1; b < lvl.size(); ++b) {
                // closed intervals may share at most one point
                const RatInterval& x = lvl[a].iv;
                const RatInterval& y = lvl[b].iv;
                if (x.intersects(y)) {
                    Rat lo = rat_max(x.lo, y.lo), hi = rat_min(x.hi, y.hi);
                    if (lo < hi)
                        return fail(2, n, static_cast<long>(a),
                                    "overlap with index " + std::to_string(b));
                }
            }
            if (n > 0) {
                int par = lvl[a].parent;
                const auto& up = t.levels[static_cast<std::size_t>(n - 1)];
                if (par < 0 || par >= static_cast<int>(up.size()) ||
                    !up[static_cast<std::size_t>(par)].iv.contains(lvl[a].iv))
                    return fail(3, n, static_cast<long>(a), "not inside a parent interval");
            }
        }
        if (n > 0) {
            std::vector<char> has_child(t.levels[static_cast<std::size_t>(n - 1)].size(), 0);
            for (const auto& node : lvl)
                if (node.parent >= 0) has_child[static_cast<std::size_t>(node.parent)] = 1;
            for (std::size_t pidx = 0; pidx < has_child.size(); ++pidx)
                if (!has_child[pidx]) return fail(4, n - 1, static_cast<long>(pidx), "childless");
        }
    }
    return res;
}

MarkedTree::MarkedTree(int r0, int depth, bool all_marked) : r0_(r0), depth_(depth) {
    if (r0 < 1 || depth < 0) throw std::invalid_argument("MarkedTree: bad shape");
    long w = 1;
    for (int l = 0; l <= depth; ++l) {
        marks_.emplace_back(static_cast<std::size_t>(w), all_marked ? 1 : 0);
        w *= r0;
    }
    marks_[0][0] = 1;  // root always in T
}

long MarkedTree::width(int level) const {
    return static_cast<long>(marks_.at(static_cast<std::size_t>(level)).size());
}

bool MarkedTree::marked(int level, long index) const {
    return marks_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(index)) != 0;
}

void MarkedTree::set_marked(int level, long index, bool v) {
    if (level == 0) throw std::invalid_argument("MarkedTree: root mark is fixed");
    marks_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(index)) = v ? 1 : 0;
}

void MarkedTree::close_downward() {
    for (int l = 1; l <= depth_; ++l)
        for (long i = 0; i < width(l); ++i)
            if (!marked(l - 1, i / r0_)) marks_[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] = 0;
}

bool MarkedTree::t_is_subtree() const {
    if (!marked(0, 0)) return false;
    for (int l = 1; l <= depth_; ++l)
        for (long i = 0; i < width(l); ++i)
            if (marked(l, i) && !marked(l - 1, i / r0_)) return false;
    return true;
}

namespace {

// avoid(level, idx) relative to total depth; memoized per node
struct AvoidSolver {
    const MarkedTree& mt;
    int r, depth;
    std::vector<std::vector<signed char>> memo;  // -1 unknown, 0 false, 1 true

    AvoidSolver(const MarkedTree& m, int r_, int depth_) : mt(m), r(r_), depth(depth_) {
        for (int l = 0; l <= depth; ++l)
            memo.emplace_back(static_cast<std::size_t>(mt.width(l)), -1);
    }

    bool avoid(int level, long idx) {
        signed char& slot = memo[static_cast<std::size_t>(level)][static_cast<std::size_t>(idx)];
        if (slot >= 0) return slot != 0;
        bool result;
        if (!mt.marked(level, idx)) {
            result = true;
        } else if (level == depth) {
            result = false;
        } else {
            int cnt = 0;
            for (int b = 0; b < mt.r0(); ++b)
                if (avoid(level + 1, idx * mt.r0() + b)) ++cnt;
            result = cnt >= r;
        }
        slot = result ? 1 : 0;
        return result;
    }
};

}  // namespace

UbiquityVerdict check_ubiquity(const MarkedTree& mt, int r, int depth) {
    if (r < 1 || r > mt.r0()) throw std::domain_error("check_ubiquity: need 1 <= r <= r0");
    if (depth < 0 || depth > mt.depth())
        throw std::domain_error("check_ubiquity: depth beyond the built tree");
    if (!mt.t_is_subtree())
        throw std::invalid_argument("check_ubiquity: T must be an ancestor-closed subtree");
    AvoidSolver solver(mt, r, depth);
    UbiquityVerdict v;
    v.ubiquitous = !solver.avoid(0, 0);
    if (!v.ubiquitous) {
        // smallest generation an r-regular subtree can fully escape T
        for (int d = 0; d <= depth; ++d) {
            if (!ubiquity_oracle_dp(mt, r, d)) { v.witness_generation = d; break; }
        }
    }
    return v;
}

bool ubiquity_oracle_dp(const MarkedTree& mt, int r, int depth) {
    // f_d(u) = exists r-regular subtree of depth exactly d below u with every
    // depth-d leaf unmarked; ubiquitous iff no d <= depth has f_d(root)
    for (int d = 0; d <= depth; ++d) {
        std::vector<std::vector<char>> f(static_cast<std::size_t>(d) + 1);
        for (int l = d; l >= 0; --l) {
            f[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(mt.width(l)), 0);
            for (long i = 0; i < mt.width(l); ++i) {
                if (l == d) {
                    f[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] = !mt.marked(l, i);
                } else {
                    int cnt = 0;
                    for (int b = 0; b < mt.r0(); ++b)
                        if (f[static_cast<std::size_t>(l) + 1]
                             [static_cast<std::size_t>(i * mt.r0() + b)])
                            ++cnt;
                    f[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] = cnt >= r;
                }
            }
        }
        if (f[0][0]) return false;
    }
    return true;
}

bool ubiquity_oracle_exhaustive(const MarkedTree& mt, int r, int depth) {
    // enumerate child-subset choices node by node (DFS over a worklist); a
    // subtree is a witness if some generation <= depth misses T entirely
    std::vector<long> combo;  // subset choice per internal node, in BFS order
    std::vector<std::vector<long>> subsets;
    {
        std::vector<long> idx(static_cast<std::size_t>(r), 0);
        std::function<void(int, int)> gen = [&](int start, int chosen) {
            if (chosen == r) {
                long code = 0;
                for (int t = 0; t < r; ++t) code = code * mt.r0() + idx[static_cast<std::size_t>(t)];
                subsets.push_back(
                    std::vector<long>(idx.begin(), idx.begin() + r));
                return;
            }
            for (int b = start; b < mt.r0(); ++b) {
                idx[static_cast<std::size_t>(chosen)] = b;
                gen(b + 1, chosen + 1);
            }
        };
        gen(0, 0);
    }
    // recursive expansion over levels
    std::function<bool(std::vector<long>&, int)> expand = [&](std::vector<long>& nodes,
                                                              int level) -> bool {
        // witness found if every node at this generation is unmarked
        bool all_out = true;
        for (long u : nodes)
            if (mt.marked(level, u)) { all_out = false; break; }
        if (all_out) return true;
        if (level == depth) return false;
        // choose a subset per node; iterate the cross product
        std::vector<std::size_t> pick(nodes.size(), 0);
        while (true) {
            std::vector<long> next;
            for (std::size_t t = 0; t < nodes.size(); ++t)
                for (long b : subsets[pick[t]]) next.push_back(nodes[t] * mt.r0() + b);
            if (expand(next, level + 1)) return true;
            std::size_t pos = 0;
            while (pos < pick.size()) {
                if (++pick[pos] < subsets.size()) break;
                pick[pos] = 0;
                ++pos;
            }
            if (pos == pick.size()) return false;
        }
    };
    std::vector<long> root{0};
    return !expand(root, 0);
}

IndexTree extract_regular(const MarkedTree& mt, int r, int depth) {
    UbiquityVerdict v = check_ubiquity(mt, r, depth);
    if (!v.ubiquitous)
        throw std::domain_error("extract_regular: T lacks r-ubiquity (escape at generation " +
                                std::to_string(v.witness_generation) + ")");
    int keep = mt.r0() - r + 1;
    AvoidSolver solver(mt, r, depth);
    IndexTree out;
    out.r0 = mt.r0();
    out.degree = keep;
    out.depth = depth;
    out.nodes.assign(static_cast<std::size_t>(depth) + 1, {});
    std::function<void(int, long)> select = [&](int level, long idx) {
        out.nodes[static_cast<std::size_t>(level)].push_back(idx);
        if (level == depth) return;
        int taken = 0;
        for (int b = 0; b < mt.r0() && taken < keep; ++b) {
            long ch = idx * mt.r0() + b;
            if (!solver.avoid(level + 1, ch)) {
                select(level + 1, ch);
                ++taken;
            }
        }
        if (taken < keep)
            throw std::logic_error("extract_regular: fewer viable children than guaranteed");
    };
    select(0, 0);
    for (auto& lvl : out.nodes) std::sort(lvl.begin(), lvl.end());
    return out;
}

bool verify_regular_subtree(const IndexTree& it, const MarkedTree& mt) {
    if (it.nodes.empty() || it.nodes[0] != std::vector<long>{0}) return false;
    for (int l = 0; l <= it.depth; ++l) {
        const auto& lvl = it.nodes[static_cast<std::size_t>(l)];
        for (long u : lvl) {
            if (u < 0 || u >= mt.width(l)) return false;
            if (!mt.marked(l, u)) return false;  // must sit inside T
        }
        if (l > 0) {
            const auto& up = it.nodes[static_cast<std::size_t>(l - 1)];
            for (long u : lvl)
                if (!std::binary_search(up.begin(), up.end(), u / it.r0)) return false;
            // every selected parent has exactly `degree` selected children
            for (long pnode : up) {
                int cnt = 0;
                for (long u : lvl)
                    if (u / it.r0 == pnode) ++cnt;
                if (cnt != it.degree) return false;
            }
        }
    }
    return true;
}

namespace {

// children[level][idx] = indices into level+1 with that parent
std::vector<std::vector<std::vector<int>>> child_table(const LevelFamily& fam) {
    std::vector<std::vector<std::vector<int>>> ch(fam.levels.size());
    for (std::size_t n = 0; n + 1 < fam.levels.size(); ++n) {
        ch[n].assign(fam.levels[n].intervals.size(), {});
        const auto& next = fam.levels[n + 1].intervals;
        for (int c = 0; c < static_cast<int>(next.size()); ++c)
            ch[n][static_cast<std::size_t>(next[static_cast<std::size_t>(c)].parent)].push_back(c);
    }
    return ch;
}

}  // namespace

ExtractedForest extract_practical(const LevelFamily& fam) {
    const int depth = fam.depth();
    auto children = child_table(fam);
    auto good_roots_at = [&](int g, std::vector<std::vector<char>>& good) {
        good.assign(fam.levels.size(), {});
        for (int n = depth; n >= 0; --n) {
            const auto& lvl = fam.level(n);
            good[static_cast<std::size_t>(n)].assign(lvl.intervals.size(), 0);
            for (std::size_t i = 0; i < lvl.intervals.size(); ++i) {
                if (!lvl.intervals[i].in_j) continue;
                if (n == depth) {
                    good[static_cast<std::size_t>(n)][i] = 1;
                    continue;
                }
                int cnt = 0;
                for (int c : children[static_cast<std::size_t>(n)][i])
                    if (good[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(c)]) ++cnt;
                good[static_cast<std::size_t>(n)][i] = cnt >= g;
            }
        }
        int roots = 0;
        for (char v : good[0]) roots += v != 0;
        return roots;
    };

    for (int g : {16, 8, 4, 2, 1}) {
        if (g > 1 && !exact_log(Rat(fam.params.R), Rat(g)))
            continue;  // degree must keep log_R(g) rational for the handoff
        std::vector<std::vector<char>> good;
        long roots = good_roots_at(g, good);
        if (roots == 0) continue;

        ExtractedForest out;
        out.degree = g;
        out.root_count = roots;
        out.forest.levels.assign(fam.levels.size(), {});
        // select lexicographically first g good children per selected node
        std::vector<int> frontier;  // indices into fam level n, selected
        std::vector<int> forest_index_of(fam.level(0).intervals.size(), -1);
        for (std::size_t i = 0; i < good[0].size(); ++i) {
            if (!good[0][i]) continue;
            forest_index_of[i] = static_cast<int>(out.forest.levels[0].size());
            out.forest.levels[0].push_back(
                TreeNode{fam.level(0).intervals[i].iv, -1});
            frontier.push_back(static_cast<int>(i));
        }
        for (int n = 0; n < depth; ++n) {
            std::vector<int> next_frontier;
            std::vector<int> next_index_of(fam.level(n + 1).intervals.size(), -1);
            for (int fi = 0; fi < static_cast<int>(frontier.size()); ++fi) {
                int src = frontier[static_cast<std::size_t>(fi)];
                int taken = 0;
                for (int c : children[static_cast<std::size_t>(n)][static_cast<std::size_t>(src)]) {
                    if (taken == g) break;
                    if (!good[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(c)]) continue;
                    next_index_of[static_cast<std::size_t>(c)] =
                        static_cast<int>(out.forest.levels[static_cast<std::size_t>(n) + 1].size());
                    out.forest.levels[static_cast<std::size_t>(n) + 1].push_back(TreeNode{
                        fam.level(n + 1).intervals[static_cast<std::size_t>(c)].iv, fi});
                    next_frontier.push_back(c);
                    ++taken;
                }
                if (taken != g) throw std::logic_error("extract_practical: degree bookkeeping");
            }
            frontier = std::move(next_frontier);
        }
        return out;
    }
    throw std::logic_error("extract_practical: no surviving chains (family empty?)");
}

std::optional<UbiquityCounter> lemma11_counter(const LevelFamily& fam, int degree) {
    const int depth = fam.depth();
    auto children = child_table(fam);
    // degree-regular subfamily of the full I-tree, survivors ignored
    std::vector<std::vector<char>> good(fam.levels.size());
    for (int n = depth; n >= 0; --n) {
        const auto& lvl = fam.level(n);
        good[static_cast<std::size_t>(n)].assign(lvl.intervals.size(), 0);
        for (std::size_t i = 0; i < lvl.intervals.size(); ++i) {
            if (n == depth) {
                good[static_cast<std::size_t>(n)][i] = 1;
                continue;
            }
            int cnt = 0;
            for (int c : children[static_cast<std::size_t>(n)][i])
                if (good[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(c)]) ++cnt;
            good[static_cast<std::size_t>(n)][i] = cnt >= degree;
        }
    }
    int root = -1;
    for (std::size_t i = 0; i < good[0].size(); ++i)
        if (good[0][i]) { root = static_cast<int>(i); break; }
    if (root < 0) return std::nullopt;

    UbiquityCounter uc;
    std::vector<int> frontier{root};
    const Params& p = fam.params;
    Rat beta_eps = p.beta - p.epsilon;
    long prev = -1;
    for (int n = 0; n <= depth; ++n) {
        long f_n = 0;
        for (int idx : frontier)
            if (fam.level(n).intervals[static_cast<std::size_t>(idx)].in_j) ++f_n;
        uc.f.push_back(f_n);
        if (n > 0) {
            bool ok;
            if (prev == 0) ok = true;
            else
                ok = cmp_rat_vs_pow(Rat(f_n) / Rat(prev), Rat(p.R), beta_eps.get_num().get_si(),
                                    beta_eps.get_den().get_si()) >= 0;
            uc.ratio_ok.push_back(ok);
        }
        prev = f_n;
        if (n == depth) break;
        std::vector<int> next;
        for (int idx : frontier) {
            int taken = 0;
            for (int c : children[static_cast<std::size_t>(n)][static_cast<std::size_t>(idx)]) {
                if (taken == degree) break;
                if (good[static_cast<std::size_t>(n) + 1][static_cast<std::size_t>(c)]) {
                    next.push_back(c);
                    ++taken;
                }
            }
        }
        frontier = std::move(next);
    }
    return uc;
}

TreeMeasure::TreeMeasure(TreeFamily forest, long R, int n0, int degree, PowerLawCert cert)
    : forest_(std::move(forest)), R_(R), n0_(n0), degree_(degree), cert_(std::move(cert)) {
    if (forest_.levels.empty() || forest_.levels[0].empty())
        throw std::invalid_argument("TreeMeasure: empty forest");
    floor_ = forest_.levels.back().front().iv.width();
    norm_a_ = 0;
    for (const TreeNode& r : forest_.levels[0]) norm_a_ += r.iv.width();
}

RatInterval TreeMeasure::hull() const {
    Rat lo = forest_.levels[0].front().iv.lo;
    Rat hi = forest_.levels[0].front().iv.hi;
    for (const TreeNode& r : forest_.levels[0]) {
        lo = rat_min(lo, r.iv.lo);
        hi = rat_max(hi, r.iv.hi);
    }
    return RatInterval(lo, hi);
}

Rat TreeMeasure::node_mass(int level, long index) const {
    int cur = static_cast<int>(index);
    for (int l = level; l > 0; --l)
        cur = forest_.levels[static_cast<std::size_t>(l)][static_cast<std::size_t>(cur)].parent;
    Rat a = forest_.levels[0][static_cast<std::size_t>(cur)].iv.width();
    return a / norm_a_ / pow_int(Rat(degree_), level);
}

std::optional<Rat> TreeMeasure::support_point_in(const RatInterval& window) const {
    const auto& deepest = forest_.levels.back();
    for (std::size_t i = 0; i < deepest.size(); ++i) {
        if (!deepest[i].iv.intersects(window)) continue;
        Rat center = deepest[i].iv.mid();
        if (window.contains(center)) return center;
        // clamp onto the overlap; within the resolution floor of true support
        RatInterval overlap = intersect(deepest[i].iv, window);
        return center < overlap.lo ? overlap.lo : overlap.hi;
    }
    return std::nullopt;
}

MassBounds TreeMeasure::mass_bounds(const RatInterval& window, int depth) const {
    int level = std::min<int>(depth, forest_.depth());
    MassBounds mb{Rat(0), Rat(0)};
    const auto& lvl = forest_.levels[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < lvl.size(); ++i) {
        if (!lvl[i].iv.intersects(window)) continue;
        Rat m = node_mass(level, static_cast<long>(i));
        mb.upper += m;
        if (window.contains(lvl[i].iv)) mb.lower += m;
    }
    return mb;
}

std::vector<Rat> TreeMeasure::support_net(const RatInterval& window, const Rat& delta) const {
    if (delta <= 0) throw std::domain_error("support_net: delta must be positive");
    int level = -1;
    for (int l = 0; l <= forest_.depth(); ++l) {
        if (forest_.levels[static_cast<std::size_t>(l)].front().iv.width() <= delta) {
            level = l;
            break;
        }
    }
    if (level < 0)
        throw std::runtime_error("TreeMeasure::support_net: requested spacing " + rat_str(delta) +
                                 " is below the built resolution floor " + rat_str(floor_));
    std::vector<Rat> net;
    for (const TreeNode& node : forest_.levels[static_cast<std::size_t>(level)]) {
        Rat c = node.iv.mid();
        if (window.contains(c)) net.push_back(c);
    }
    std::sort(net.begin(), net.end());
    return net;
}

namespace {

PowerLawCert appendix_cert(const TreeFamily& forest, long R, int degree) {
    Exponent beta = Exponent::log_of(Rat(R), Rat(degree));
    RatInterval benc = beta.enclosure(make_rat(1, 1u << 20));
    Rat suma(0), wmin(0), wmax(0);
    bool first = true;
    for (const TreeNode& r : forest.levels[0]) {
        Rat w = r.iv.width();
        suma += w;
        if (first || w < wmin) wmin = w;
        if (first || w > wmax) wmax = w;
        first = false;
    }
    // b1 = min |root|^{1-beta} / (sum * degree), rounded down
    // b2 = 3 max |root|^{1-beta} * degree / sum, rounded up
    auto pow1mb = [&](const Rat& x) {
        // enclosure of x^{1-beta} via the beta enclosure endpoints
        Rat e_lo = Rat(1) - benc.hi, e_hi = Rat(1) - benc.lo;
        RatInterval a = pow_enclosure(x, e_lo.get_num().get_si(), e_lo.get_den().get_si(),
                                      make_rat(1, 1u << 20));
        RatInterval b = pow_enclosure(x, e_hi.get_num().get_si(), e_hi.get_den().get_si(),
                                      make_rat(1, 1u << 20));
        return RatInterval(rat_min(a.lo, b.lo), rat_max(a.hi, b.hi));
    };
    Rat b1 = pow1mb(wmin).lo / (suma * Rat(degree));
    Rat b2 = Rat(3) * pow1mb(wmax).hi * Rat(degree) / suma;
    return PowerLawCert(std::move(beta), std::move(b1), std::move(b2));
}

void validate_width_law(const TreeFamily& forest, long R, int degree) {
    for (int n = 0; n <= forest.depth(); ++n) {
        const auto& lvl = forest.levels[static_cast<std::size_t>(n)];
        if (lvl.empty()) throw std::invalid_argument("limit_measure: empty level");
        Rat w0 = forest.levels[0].front().iv.width();
        for (const TreeNode& node : lvl) {
            if (n > 0) {
                const TreeNode& par =
                    forest.levels[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(node.parent)];
                if (node.iv.width() * Rat(R) != par.iv.width())
                    throw std::invalid_argument(
                        "limit_measure: width law |I| = |parent|/R fails at level " +
                        std::to_string(n));
            } else if (node.iv.width() != w0) {
                throw std::invalid_argument("limit_measure: roots must share one width");
            }
        }
        if (n > 0) {
            // regularity: every previous-level node has exactly `degree` children
            std::vector<int> cnt(forest.levels[static_cast<std::size_t>(n - 1)].size(), 0);
            for (const TreeNode& node : lvl) ++cnt[static_cast<std::size_t>(node.parent)];
            for (int c : cnt)
                if (c != degree)
                    throw std::invalid_argument("limit_measure: forest is not regular of degree " +
                                                std::to_string(degree));
        }
    }
}

}  // namespace

TreeMeasure limit_measure(const TreeFamily& forest, long R, int n0, int degree) {
    if (degree < 2)
        throw std::domain_error(
            "limit_measure: degree must be >= 2 (a degree-1 family carries no power law; see "
            "limit_measure_with_substrate)");
    validate_width_law(forest, R, degree);
    return TreeMeasure(forest, R, n0, degree, appendix_cert(forest, R, degree));
}

TreeMeasure limit_measure_with_substrate(const TreeFamily& forest, long R, int n0, int degree,
                                         const PowerLawCert& substrate) {
    validate_width_law(forest, R, degree);
    if (degree >= 2) return TreeMeasure(forest, R, n0, degree, appendix_cert(forest, R, degree));
    return TreeMeasure(forest, R, n0, degree, substrate);
}

BetaC beta_c(const Params& p, const Rat& tol) {
    BetaC out;
    // gamma R = ceil((b1/20b2) R^beta)
    Rat coef = p.b1 / (Rat(20) * p.b2);
    RatInterval rb = pow_enclosure(Rat(p.R), p.beta.get_num().get_si(), p.beta.get_den().get_si(),
                                   make_rat(1, 1u << 20));
    Int g = rat_ceil(coef * rb.hi);
    while (g > 1 && cmp_rat_vs_pow(Rat(g - 1) / coef, Rat(p.R), p.beta.get_num().get_si(),
                                   p.beta.get_den().get_si()) >= 0)
        --g;
    while (cmp_rat_vs_pow(Rat(g) / coef, Rat(p.R), p.beta.get_num().get_si(),
                          p.beta.get_den().get_si()) < 0)
        ++g;
    out.gamma_r = g;
    out.value = g == 1 ? RatInterval::point(Rat(0)) : log_enclosure(Rat(p.R), Rat(g), tol);
    RatInterval lg = log_enclosure(Rat(p.R), Rat(20) * p.b2 / p.b1, tol);
    out.lower_bound = RatInterval(p.beta - lg.hi, p.beta - lg.lo);
    return out;
}

}  // namespace badger
