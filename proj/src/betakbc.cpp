#include "arrdual/betakbc.hpp"

#include "arrdual/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace arrdual::betakbc {

using geometry::Chamber;
using geometry::EdgeGeom;
using geometry::LinearConstraint;
using matroid::bit;
using matroid::contains;

namespace {

bool affine_nonempty(const AffineArrangement& a, Mask s) {
    return a.mat.rank(s | bit(a.chart_index())) == a.mat.rank(s) + 1;
}

bool is_frame(const AffineArrangement& a, Mask s) {
    return a.mat.rank(s) == matroid::popcount(s) && affine_nonempty(a, s);
}

// Minimal dependent sets with nonempty affine intersection; element indices
// restricted to the affine hyperplanes.
std::vector<Mask> affine_circuits(const AffineArrangement& a) {
    const int n = a.hyperplanes();
    const int k = a.dim;
    std::vector<Mask> out;
    std::function<void(int, int, Mask)> rec = [&](int start, int size, Mask acc) {
        if (size >= 2) {
            int r = a.mat.rank(acc);
            if (r == size - 1 && affine_nonempty(a, acc)) {
                bool minimal = true;
                for (int e = 0; e < n && minimal; ++e)
                    if (contains(acc, e) && a.mat.rank(acc & ~bit(e)) != size - 1) minimal = false;
                if (minimal) out.push_back(acc);
                return;  // supersets of a dependent set are never circuits
            }
            if (r < size - 1) return;
        }
        if (size > k) return;
        for (int e = start; e < n; ++e) rec(e + 1, size + 1, acc | bit(e));
    };
    rec(0, 0, 0);
    return out;
}

// Broken circuit: circuit minus its greatest element. Feeds the fallback
// collection used where the exact form-space model is not built; on
// arrangements in general position it agrees with the volume-maximizing
// selection.
std::vector<Mask> broken_circuits(const AffineArrangement& a) {
    std::vector<Mask> bc;
    for (Mask c : affine_circuits(a)) {
        int greatest = 63 - std::countl_zero(c);
        bc.push_back(c & ~bit(greatest));
    }
    return bc;
}

std::vector<int> mask_to_list(Mask m, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (contains(m, i)) out.push_back(i);
    return out;
}

// Parametric slice of an edge with a chamber closure: emptiness, dimension
// and an exact relative-interior point.
struct EdgeChamberSlice {
    bool empty = true;
    int dim = -1;
    std::vector<Rational> rel_interior;
};

EdgeChamberSlice edge_chamber_slice(const AffineArrangement& a, const Chamber& ch,
                                    const EdgeGeom& edge) {
    EdgeChamberSlice out;
    const int d = edge.dim;
    const int n = a.hyperplanes();

    std::vector<LinearConstraint> weak;
    for (int j = 0; j < n; ++j) {
        LinearConstraint c;
        c.strict = false;
        c.coeff.resize(d);
        bool zero_row = true;
        for (int m = 0; m < d; ++m) {
            Rational g = 0;
            for (int i = 0; i < a.dim; ++i) g += a.forms[j].gradient[i] * edge.directions[m][i];
            if (contains(ch.sign_mask, j)) g = -g;
            c.coeff[m] = g;
            if (g != 0) zero_row = false;
        }
        Rational v = geometry::evaluate(a.forms[j], edge.point);
        if (contains(ch.sign_mask, j)) v = -v;
        c.constant = v;
        if (zero_row) {
            if (v < 0) return out;  // the whole edge is on the wrong side
            continue;
        }
        weak.push_back(std::move(c));
    }
    if (d == 0) {
        for (const auto& c : weak)
            if (c.constant < 0) return out;
        out.empty = false;
        out.dim = 0;
        out.rel_interior = edge.point;
        return out;
    }
    if (!geometry::fourier_motzkin_feasible(weak, d)) return out;

    // implicit equalities: constraints that cannot be made strict
    std::vector<size_t> implicit;
    for (size_t i = 0; i < weak.size(); ++i) {
        std::vector<LinearConstraint> test = weak;
        test[i].strict = true;
        if (!geometry::fourier_motzkin_feasible(std::move(test), d)) implicit.push_back(i);
    }
    exactla::ExactMatrix eq(static_cast<int>(implicit.size()), d);
    for (size_t r = 0; r < implicit.size(); ++r)
        for (int m = 0; m < d; ++m) eq(static_cast<int>(r), m) = weak[implicit[r]].coeff[m];
    int eq_rank = implicit.empty() ? 0 : exactla::rank(eq);

    // relative-interior witness: implicit constraints pinned to equality,
    // the rest strict
    std::vector<LinearConstraint> rel = weak;
    std::set<size_t> implicit_set(implicit.begin(), implicit.end());
    const size_t original = rel.size();
    for (size_t i = 0; i < original; ++i) {
        if (implicit_set.count(i)) {
            LinearConstraint flip = rel[i];
            for (auto& v : flip.coeff) v = -v;
            flip.constant = -flip.constant;
            rel.push_back(std::move(flip));
        } else {
            rel[i].strict = true;
        }
    }
    std::vector<Rational> t;
    if (!geometry::fourier_motzkin_feasible(std::move(rel), d, &t))
        throw Error("relative interior of a nonempty face not found");

    out.empty = false;
    out.dim = d - eq_rank;
    out.rel_interior.assign(a.dim, Rational(0));
    for (int i = 0; i < a.dim; ++i) {
        out.rel_interior[i] = edge.point[i];
        for (int m = 0; m < d; ++m) out.rel_interior[i] += edge.directions[m][i] * t[m];
    }
    return out;
}

// Hyperplanes cutting out the flag edge L^i: the basis tuple is consumed
// from its largest member downward, so L^i keeps the k-i smallest entries.
Mask level_mask(const OrderedBasis& b, int level) {
    Mask m = 0;
    int keep = static_cast<int>(b.hyperplanes.size()) - level;
    for (int i = 0; i < keep; ++i) m |= bit(b.hyperplanes[i]);
    return m;
}

}  // namespace

namespace {

OrderedBasis make_basis(const AffineArrangement& a, const ChamberComplex& cc, Mask m) {
    OrderedBasis b;
    b.hyperplanes = mask_to_list(m, a.hyperplanes());
    auto edge = geometry::edge_geometry(a, m);
    if (!edge || edge->dim != 0) throw Error("basis tuple does not cut out a vertex");
    b.vertex_flat = edge->flat;
    for (int vid = 0; vid < static_cast<int>(cc.vertices.size()); ++vid)
        if (cc.vertices[vid].point == edge->point) { b.vertex_id = vid; break; }
    if (b.vertex_id < 0) throw Error("basis vertex missing from the vertex table");
    return b;
}

std::vector<Mask> all_frames(const AffineArrangement& a) {
    const int n = a.hyperplanes();
    const int k = a.dim;
    std::vector<Mask> frames;
    if (k > n) return frames;
    std::vector<int> tuple(k);
    std::iota(tuple.begin(), tuple.end(), 0);
    while (true) {
        Mask m = 0;
        for (int v : tuple) m |= bit(v);
        if (is_frame(a, m)) frames.push_back(m);
        int i = k - 1;
        while (i >= 0 && tuple[i] == n - k + i) --i;
        if (i < 0) break;
        ++tuple[i];
        for (int j = i + 1; j < k; ++j) tuple[j] = tuple[j - 1] + 1;
    }
    return frames;
}

// Fallback collection used beyond the exactly modeled dimensions:
// no-broken-circuit frames whose members all admit a larger replacement.
std::vector<Mask> nbc_filter_collection(const AffineArrangement& a) {
    const int n = a.hyperplanes();
    std::vector<Mask> bcs = broken_circuits(a);
    std::vector<Mask> nbc;
    std::set<Mask> nbc_set;
    for (Mask m : all_frames(a)) {
        bool clean = true;
        for (Mask bc : bcs)
            if ((m & bc) == bc) { clean = false; break; }
        if (clean) {
            nbc.push_back(m);
            nbc_set.insert(m);
        }
    }
    std::vector<Mask> kept;
    for (Mask m : nbc) {
        bool keep = true;
        for (int h = 0; h < n && keep; ++h) {
            if (!contains(m, h)) continue;
            bool replaceable = false;
            for (int r = h + 1; r < n && !replaceable; ++r) {
                if (contains(m, r)) continue;
                replaceable = nbc_set.count((m & ~bit(h)) | bit(r)) > 0;
            }
            keep = replaceable;
        }
        if (keep) kept.push_back(m);
    }
    return kept;
}

// Exact model of the space the period functionals see: wedge products of the
// weighted logarithmic 1-forms modulo the relations that hold pointwise
// (parallel pairs vanish, pencil triples satisfy the three-term relation)
// and the Stokes relations dlogU ^ eta. Coordinates are rational.
struct FormSpace {
    int dim = 0;  // quotient dimension
    // quotient coordinates of each candidate frame's form
    std::vector<std::vector<exactla::Rational>> coords;
};

int symbol_index_pair(int n, int i, int j) {  // i < j
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

FormSpace build_form_space(const AffineArrangement& a, const std::vector<Mask>& frames,
                           const std::vector<Rational>& weights) {
    const int n = a.hyperplanes();
    const int k = a.dim;
    const int chart = a.chart_index();

    int symbols;
    std::vector<std::vector<Rational>> relations;
    std::vector<std::vector<Rational>> raw;  // candidate vectors over the symbols

    if (k == 1) {
        symbols = n;
        std::vector<Rational> stokes(symbols);
        for (int j = 0; j < n; ++j) stokes[j] = weights[j];
        relations.push_back(std::move(stokes));
        for (Mask f : frames) {
            std::vector<Rational> v(symbols);
            Mask flat = geometry::edge_geometry(a, f)->flat;
            for (int x = 0; x < n; ++x)
                if (contains(flat, x)) v[x] = weights[x];
            raw.push_back(std::move(v));
        }
    } else if (k == 2) {
        symbols = n * (n - 1) / 2;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Mask m = bit(i) | bit(j);
                if (a.mat.rank(m) == 2 && a.mat.rank(m | bit(chart)) == 2) {
                    // parallel hyperplanes: the product vanishes identically
                    std::vector<Rational> rel(symbols);
                    rel[symbol_index_pair(n, i, j)] = 1;
                    relations.push_back(std::move(rel));
                }
            }
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                for (int z = y + 1; z < n; ++z) {
                    if (a.mat.rank(bit(x) | bit(y) | bit(z)) != 2) continue;
                    std::vector<Rational> rel(symbols);
                    rel[symbol_index_pair(n, x, y)] = 1;
                    rel[symbol_index_pair(n, x, z)] = -1;
                    rel[symbol_index_pair(n, y, z)] = 1;
                    relations.push_back(std::move(rel));
                }
        for (int m = 0; m < n; ++m) {
            std::vector<Rational> rel(symbols);
            for (int j = 0; j < n; ++j) {
                if (j == m) continue;
                if (j < m)
                    rel[symbol_index_pair(n, j, m)] += weights[j];
                else
                    rel[symbol_index_pair(n, m, j)] -= weights[j];
            }
            relations.push_back(std::move(rel));
        }
        for (Mask f : frames) {
            // omega(vertex flat) ^ omega(smallest member's hyperplane)
            std::vector<int> t = mask_to_list(f, n);
            int head = t[0];
            Mask flat = geometry::edge_geometry(a, f)->flat;
            std::vector<Rational> v(symbols);
            for (int x = 0; x < n; ++x) {
                if (!contains(flat, x) || x == head) continue;
                Rational c = weights[x] * weights[head];
                if (x < head)
                    v[symbol_index_pair(n, x, head)] += c;
                else
                    v[symbol_index_pair(n, head, x)] -= c;
            }
            raw.push_back(std::move(v));
        }
    } else {
        return {};  // no exact model; caller falls back
    }

    // row-reduce the relations, then reduce every candidate modulo them and
    // read quotient coordinates off the non-pivot columns
    exactla::ExactMatrix rel(static_cast<int>(relations.size()), symbols);
    for (size_t r = 0; r < relations.size(); ++r)
        for (int c = 0; c < symbols; ++c) rel(static_cast<int>(r), c) = relations[r][c];
    std::vector<int> pivot_col;
    {
        int rows = rel.rows();
        int r = 0;
        for (int c = 0; c < symbols && r < rows; ++c) {
            int pivot = -1;
            for (int i = r; i < rows; ++i)
                if (rel(i, c) != 0) { pivot = i; break; }
            if (pivot < 0) continue;
            if (pivot != r)
                for (int j = 0; j < symbols; ++j) std::swap(rel(pivot, j), rel(r, j));
            Rational inv = Rational(1) / rel(r, c);
            for (int j = c; j < symbols; ++j) rel(r, j) *= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || rel(i, c) == 0) continue;
                Rational fct = rel(i, c);
                for (int j = c; j < symbols; ++j) rel(i, j) -= fct * rel(r, j);
            }
            pivot_col.push_back(c);
            ++r;
        }
    }
    std::vector<bool> is_pivot(symbols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    FormSpace fs;
    fs.dim = symbols - static_cast<int>(pivot_col.size());
    for (auto& v : raw) {
        for (size_t p = 0; p < pivot_col.size(); ++p) {
            int c = pivot_col[p];
            if (v[c] == 0) continue;
            Rational fct = v[c];
            for (int j = 0; j < symbols; ++j) v[j] -= fct * rel(static_cast<int>(p), j);
        }
        std::vector<Rational> q;
        q.reserve(fs.dim);
        for (int c = 0; c < symbols; ++c)
            if (!is_pivot[c]) q.push_back(v[c]);
        fs.coords.push_back(std::move(q));
    }
    return fs;
}

Rational subset_det(const FormSpace& fs, const std::vector<int>& subset) {
    const int beta = static_cast<int>(subset.size());
    exactla::ExactMatrix m(beta, fs.dim);
    for (int r = 0; r < beta; ++r)
        for (int c = 0; c < fs.dim; ++c) m(r, c) = fs.coords[subset[r]][c];
    if (fs.dim != beta) return 0;
    return exactla::det(m);
}

}  // namespace

std::vector<OrderedBasis> betakbc_bases(const AffineArrangement& a, const ChamberComplex& cc,
                                        const std::vector<Rational>& weights) {
    const int k = a.dim;
    const long long beta = static_cast<long long>(cc.bounded_ids.size());
    if (beta == 0) return {};
    if (static_cast<int>(weights.size()) != a.hyperplanes())
        throw DimensionError("one weight per hyperplane is required");
    for (const Rational& w : weights)
        if (w <= 0) throw DomainError("weights must be positive");

    std::vector<Mask> frames = all_frames(a);
    std::vector<Mask> chosen;

    FormSpace fs = build_form_space(a, frames, weights);
    if (!fs.coords.empty() || (k <= 2 && frames.empty())) {
        if (fs.dim != beta)
            throw ConstructionFailureError("form space dimension " + std::to_string(fs.dim) +
                                           " disagrees with the bounded chamber count " +
                                           std::to_string(beta));
        const int t = static_cast<int>(frames.size());
        // candidates listed in ascending mask order; a collection is compared
        // lexicographically through its sorted tuple sequence, so subsets of
        // larger indices compare greater
        double log_choose = 0;
        for (int i = 0; i < beta; ++i) log_choose += std::log2(double(t - i) / (i + 1));
        std::vector<int> best;
        Rational best_abs = 0;
        if (log_choose <= 19) {
            Rational max_abs = 0;
            std::vector<std::vector<int>> argmax;
            std::vector<int> idx(beta);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == static_cast<int>(beta)) {
                    Rational d = exactla::abs(subset_det(fs, idx));
                    if (d == 0) return;
                    if (d > max_abs) {
                        max_abs = d;
                        argmax.clear();
                    }
                    if (d == max_abs) argmax.push_back(idx);
                    return;
                }
                for (int i = start; i < t; ++i) {
                    idx[depth] = i;
                    rec(i + 1, depth + 1);
                }
            };
            rec(0, 0);
            // among the maximizers take the lexicographically greatest
            // collection that admits an adjacency-respecting bijection
            std::sort(argmax.begin(), argmax.end(),
                      [](const std::vector<int>& x, const std::vector<int>& y) { return x > y; });
            for (const auto& candidate : argmax) {
                std::vector<OrderedBasis> trial;
                for (int i : candidate) trial.push_back(make_basis(a, cc, frames[i]));
                try {
                    chamber_bijection(a, cc, trial);
                } catch (const BijectionError&) {
                    continue;
                }
                best = candidate;
                best_abs = max_abs;
                break;
            }
        } else {
            // greedy spanning seed, then local volume ascent
            std::vector<int> idx;
            {
                exactla::ExactMatrix picked(0, fs.dim);
                for (int i = 0; i < t && static_cast<long long>(idx.size()) < beta; ++i) {
                    exactla::ExactMatrix row(1, fs.dim);
                    for (int c = 0; c < fs.dim; ++c) row(0, c) = fs.coords[i][c];
                    exactla::ExactMatrix trial = picked.vstack(row);
                    if (exactla::rank(trial) == trial.rows()) {
                        picked = std::move(trial);
                        idx.push_back(i);
                    }
                }
            }
            if (static_cast<long long>(idx.size()) != beta)
                throw ConstructionFailureError("candidate tuples do not span the form space");
            Rational cur = exactla::abs(subset_det(fs, idx));
            bool improved = true;
            while (improved) {
                improved = false;
                for (size_t pos = 0; pos < idx.size() && !improved; ++pos)
                    for (int cand = 0; cand < t && !improved; ++cand) {
                        if (std::find(idx.begin(), idx.end(), cand) != idx.end()) continue;
                        std::vector<int> alt = idx;
                        alt[pos] = cand;
                        std::sort(alt.begin(), alt.end());
                        Rational d = exactla::abs(subset_det(fs, alt));
                        if (d > cur) {
                            idx = alt;
                            cur = d;
                            improved = true;
                        }
                    }
            }
            best = idx;
            best_abs = cur;
        }
        if (best_abs == 0)
            throw ConstructionFailureError("no spanning collection of basis tuples exists");
        for (int i : best) chosen.push_back(frames[i]);
    } else {
        chosen = nbc_filter_collection(a);
    }

    std::vector<OrderedBasis> bases;
    for (Mask m : chosen) bases.push_back(make_basis(a, cc, m));
    std::sort(bases.begin(), bases.end());

    if (static_cast<long long>(bases.size()) != beta)
        throw ConstructionFailureError(
            "basis collection has " + std::to_string(bases.size()) + " tuples but " +
            std::to_string(beta) + " bounded chambers exist");
    return bases;
}

Flag flag_of(const AffineArrangement& a, const OrderedBasis& b) {
    Flag f;
    const int k = a.dim;
    for (int i = 0; i < k; ++i) {
        auto edge = geometry::edge_geometry(a, level_mask(b, i));
        if (!edge || edge->dim != i) throw Error("flag edge has unexpected dimension");
        f.edge_flats.push_back(edge->flat);
    }
    return f;
}

std::vector<LogForm> log_forms(const AffineArrangement& a, const std::vector<OrderedBasis>& bases) {
    std::vector<LogForm> forms;
    forms.reserve(bases.size());
    for (const auto& b : bases) {
        LogForm phi;
        phi.basis = b;
        phi.factor_flats = flag_of(a, b).edge_flats;
        forms.push_back(std::move(phi));
    }
    return forms;
}

bool flag_adjacent(const AffineArrangement& a, const ChamberComplex& cc, const OrderedBasis& b,
                   int chamber_id) {
    const Chamber& ch = cc.chambers.at(chamber_id);
    if (!ch.bounded) return false;
    if (!std::binary_search(ch.vertex_ids.begin(), ch.vertex_ids.end(), b.vertex_id))
        return false;
    const int k = a.dim;
    for (int i = 1; i < k; ++i) {
        auto edge = geometry::edge_geometry(a, level_mask(b, i));
        if (!edge) return false;
        EdgeChamberSlice slice = edge_chamber_slice(a, ch, *edge);
        if (slice.empty || slice.dim != i) return false;
    }
    return true;
}

namespace {

// Maximum bipartite matching size (Kuhn) over basis -> chamber candidates.
int matching_size(const std::vector<std::vector<int>>& adj, int right_count,
                  const std::vector<int>& forced) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> match_right(right_count, -1);
    for (int s = 0; s < n; ++s)
        if (forced[s] >= 0) match_right[forced[s]] = s;

    int matched = 0;
    for (int s = 0; s < n; ++s) {
        if (forced[s] >= 0) { ++matched; continue; }
        std::vector<bool> visited(right_count, false);
        std::function<bool(int)> augment = [&](int u) {
            for (int v : adj[u]) {
                if (visited[v]) continue;
                visited[v] = true;
                int owner = match_right[v];
                if (owner == -1 || (forced[owner] < 0 && augment(owner))) {
                    match_right[v] = u;
                    return true;
                }
            }
            return false;
        };
        if (augment(s)) ++matched;
    }
    return matched;
}

std::vector<std::vector<int>> adjacency_lists(const AffineArrangement& a,
                                              const ChamberComplex& cc,
                                              const std::vector<OrderedBasis>& bases) {
    std::vector<std::vector<int>> adj(bases.size());
    for (size_t s = 0; s < bases.size(); ++s)
        for (size_t c = 0; c < cc.bounded_ids.size(); ++c)
            if (flag_adjacent(a, cc, bases[s], cc.bounded_ids[c]))
                adj[s].push_back(static_cast<int>(c));
    return adj;
}

}  // namespace

std::vector<int> chamber_bijection(const AffineArrangement& a, const ChamberComplex& cc,
                                   const std::vector<OrderedBasis>& bases) {
    const int count = static_cast<int>(bases.size());
    if (count != static_cast<int>(cc.bounded_ids.size()))
        throw BijectionError("basis and bounded chamber counts differ");
    auto adj = adjacency_lists(a, cc, bases);

    std::vector<int> forced(count, -1);
    if (matching_size(adj, count, forced) != count)
        throw BijectionError("no adjacency-respecting perfect matching exists");
    std::vector<bool> taken(count, false);
    for (int s = 0; s < count; ++s) {
        bool placed = false;
        for (int c : adj[s]) {
            if (taken[c]) continue;
            forced[s] = c;
            if (matching_size(adj, count, forced) == count) {
                taken[c] = true;
                placed = true;
                break;
            }
            forced[s] = -1;
        }
        if (!placed) throw BijectionError("matching extension failed");
    }
    std::vector<int> result(count);
    for (int s = 0; s < count; ++s) result[s] = cc.bounded_ids[forced[s]];
    return result;
}

std::vector<int> random_chamber_matching(const AffineArrangement& a, const ChamberComplex& cc,
                                         const std::vector<OrderedBasis>& bases,
                                         std::mt19937_64& rng) {
    const int count = static_cast<int>(bases.size());
    auto adj = adjacency_lists(a, cc, bases);
    for (auto& list : adj) std::shuffle(list.begin(), list.end(), rng);

    std::vector<int> forced(count, -1);
    if (matching_size(adj, count, forced) != count)
        throw BijectionError("no adjacency-respecting perfect matching exists");
    std::vector<bool> taken(count, false);
    for (int s = 0; s < count; ++s) {
        for (int c : adj[s]) {
            if (taken[c]) continue;
            forced[s] = c;
            if (matching_size(adj, count, forced) == count) {
                taken[c] = true;
                break;
            }
            forced[s] = -1;
        }
        if (forced[s] < 0) throw BijectionError("matching extension failed");
    }
    std::vector<int> result(count);
    for (int s = 0; s < count; ++s) result[s] = cc.bounded_ids[forced[s]];
    return result;
}

int orientation(const AffineArrangement& a, const ChamberComplex& cc, int chamber_id,
                const OrderedBasis& b) {
    const Chamber& ch = cc.chambers.at(chamber_id);
    const int k = a.dim;
    if (!flag_adjacent(a, cc, b, chamber_id))
        throw DomainError("flag is not adjacent to the chamber");

    const auto& vertex = cc.vertices.at(b.vertex_id).point;
    exactla::ExactMatrix frame(k, k);
    for (int i = 1; i <= k; ++i) {
        std::vector<Rational> p;
        if (i == k) {
            p = ch.interior;
        } else {
            auto edge = geometry::edge_geometry(a, level_mask(b, i));
            EdgeChamberSlice slice = edge_chamber_slice(a, ch, *edge);
            if (slice.empty) throw DomainError("degenerate frame");
            p = slice.rel_interior;
        }
        for (int r = 0; r < k; ++r) frame(r, i - 1) = p[r] - vertex[r];
    }
    Rational d = exactla::det(frame);
    if (d == 0) throw DomainError("degenerate frame");
    return d > 0 ? 1 : -1;
}

Rational form_value(const AffineArrangement& a, const LogForm& phi,
                    const std::vector<Rational>& weights, const std::vector<Rational>& x) {
    const int k = a.dim;
    std::vector<Rational> values(a.hyperplanes());
    for (int j = 0; j < a.hyperplanes(); ++j) {
        values[j] = geometry::evaluate(a.forms[j], x);
        if (values[j] == 0) throw SingularEvaluationError("evaluation point lies on a hyperplane");
    }
    exactla::ExactMatrix rows(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < a.hyperplanes(); ++j) {
            if (!contains(phi.factor_flats[i], j)) continue;
            Rational w = weights.at(j) / values[j];
            for (int c = 0; c < k; ++c) rows(i, c) += w * a.forms[j].gradient[c];
        }
    }
    return exactla::det(rows);
}

}  // namespace arrdual::betakbc
