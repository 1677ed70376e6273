#include "arrdual/geometry.hpp"

#include "arrdual/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace arrdual::geometry {

using matroid::bit;
using matroid::contains;

Rational evaluate(const AffineForm& f, const std::vector<Rational>& x) {
    Rational v = f.constant;
    for (size_t i = 0; i < f.gradient.size(); ++i) v += f.gradient[i] * x[i];
    return v;
}

namespace {

// Re-bases the rows so the chart column becomes the last coordinate unit
// vector; every other column then reads off one affine form.
ExactMatrix chart_normal_form(const ExactMatrix& m) {
    const int rows = m.rows();
    const int chart = m.cols() - 1;
    int pivot = -1;
    for (int i = 0; i < rows; ++i)
        if (m(i, chart) != 0) { pivot = i; break; }
    if (pivot < 0) throw ChartError("chart functional vanishes on the subspace");
    ExactMatrix a = m;
    if (pivot != rows - 1)
        for (int j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rows - 1, j));
    Rational inv = Rational(1) / a(rows - 1, chart);
    for (int j = 0; j < a.cols(); ++j) a(rows - 1, j) *= inv;
    for (int i = 0; i < rows - 1; ++i) {
        if (a(i, chart) == 0) continue;
        Rational f = a(i, chart);
        for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(rows - 1, j);
    }
    return a;
}

AffineArrangement build_arrangement(const ExactMatrix& m, Side s) {
    AffineArrangement arr;
    arr.dim = m.rows() - 1;
    arr.side = s;
    arr.mat = matroid::Matroid::from_columns(m);
    ExactMatrix normal = chart_normal_form(m);
    const int n_forms = m.cols() - 1;
    arr.forms.reserve(n_forms);
    for (int j = 0; j < n_forms; ++j) {
        AffineForm f;
        f.gradient.resize(arr.dim);
        for (int i = 0; i < arr.dim; ++i) f.gradient[i] = normal(i, j);
        f.constant = normal(arr.dim, j);
        arr.forms.push_back(std::move(f));
    }
    return arr;
}

}  // namespace

AffineArrangement affine_forms(const DualPair& d, Side s) {
    return build_arrangement(d.matrix(s), s);
}

AffineArrangement arrangement_from_matrix(const ExactMatrix& m, Side s) {
    if (exactla::rank(m) != m.rows()) throw RankError("arrangement matrix must have full row rank");
    return build_arrangement(m, s);
}

namespace {

struct NormalizedConstraint {
    std::vector<Rational> coeff;
    Rational constant;
    bool strict;

    bool operator<(const NormalizedConstraint& o) const {
        if (coeff != o.coeff) return coeff < o.coeff;
        if (constant != o.constant) return constant < o.constant;
        return strict < o.strict;
    }
};

NormalizedConstraint normalize(const LinearConstraint& c) {
    NormalizedConstraint n{c.coeff, c.constant, c.strict};
    for (const Rational& v : n.coeff) {
        if (v == 0) continue;
        Rational s = exactla::abs(v);
        for (Rational& w : n.coeff) w /= s;
        n.constant /= s;
        return n;
    }
    if (n.constant != 0) {
        Rational s = exactla::abs(n.constant);
        n.constant /= s;
    }
    return n;
}

}  // namespace

bool fourier_motzkin_feasible(std::vector<LinearConstraint> constraints, int dim,
                              std::vector<Rational>* witness) {
    struct Level {
        std::vector<LinearConstraint> lowers;  // positive coefficient at the variable
        std::vector<LinearConstraint> uppers;  // negative coefficient
    };
    std::vector<Level> levels(dim);

    std::vector<LinearConstraint> current = std::move(constraints);
    for (int d = dim - 1; d >= 0; --d) {
        Level& level = levels[d];
        std::vector<LinearConstraint> passthrough;
        for (auto& c : current) {
            const Rational& a = c.coeff[d];
            if (a > 0)
                level.lowers.push_back(std::move(c));
            else if (a < 0)
                level.uppers.push_back(std::move(c));
            else
                passthrough.push_back(std::move(c));
        }
        std::set<NormalizedConstraint> seen;
        std::vector<LinearConstraint> next;
        auto push = [&](LinearConstraint c) {
            NormalizedConstraint n = normalize(c);
            if (seen.insert(n).second) next.push_back(std::move(c));
        };
        for (auto& c : passthrough) push(std::move(c));
        for (const auto& lo : level.lowers)
            for (const auto& up : level.uppers) {
                LinearConstraint c;
                c.coeff.resize(dim);
                Rational la = lo.coeff[d];   // > 0
                Rational ua = -up.coeff[d];  // > 0
                for (int i = 0; i < dim; ++i) c.coeff[i] = ua * lo.coeff[i] + la * up.coeff[i];
                c.coeff[d] = 0;
                c.constant = ua * lo.constant + la * up.constant;
                c.strict = lo.strict || up.strict;
                push(std::move(c));
            }
        current = std::move(next);
    }
    for (const auto& c : current) {
        if (c.strict ? !(c.constant > 0) : !(c.constant >= 0)) return false;
    }
    if (!witness) return true;

    witness->assign(dim, Rational(0));
    for (int d = 0; d < dim; ++d) {
        auto bound_value = [&](const LinearConstraint& c) {
            Rational acc = c.constant;
            for (int i = 0; i < d; ++i) acc += c.coeff[i] * (*witness)[i];
            return Rational(-acc / c.coeff[d]);
        };
        bool has_lo = false, has_up = false;
        Rational lo, up;
        for (const auto& c : levels[d].lowers) {
            Rational v = bound_value(c);
            if (!has_lo || v > lo) { lo = v; has_lo = true; }
        }
        for (const auto& c : levels[d].uppers) {
            Rational v = bound_value(c);
            if (!has_up || v < up) { up = v; has_up = true; }
        }
        Rational x;
        if (has_lo && has_up)
            x = (lo + up) / 2;
        else if (has_lo)
            x = lo + 1;
        else if (has_up)
            x = up - 1;
        (*witness)[d] = x;
    }
    return true;
}

std::string Chamber::sign_string(int n) const {
    std::string s(n, '+');
    for (int j = 0; j < n; ++j)
        if (contains(sign_mask, j)) s[j] = '-';
    return s;
}

namespace {

std::vector<LinearConstraint> sign_constraints(const AffineArrangement& a, std::uint32_t signs,
                                               bool strict) {
    std::vector<LinearConstraint> cons;
    cons.reserve(a.forms.size());
    for (int j = 0; j < a.hyperplanes(); ++j) {
        LinearConstraint c;
        c.coeff = a.forms[j].gradient;
        c.constant = a.forms[j].constant;
        c.strict = strict;
        if (contains(signs, j)) {
            for (Rational& v : c.coeff) v = -v;
            c.constant = -c.constant;
        }
        cons.push_back(std::move(c));
    }
    return cons;
}

bool recession_trivial(const AffineArrangement& a, std::uint32_t signs) {
    const int dim = a.dim;
    for (int axis = 0; axis < dim; ++axis) {
        for (int dir : {1, -1}) {
            // substitute v_axis = dir into the homogeneous weak system
            std::vector<LinearConstraint> cons;
            for (int j = 0; j < a.hyperplanes(); ++j) {
                LinearConstraint c;
                c.strict = false;
                c.coeff.reserve(dim - 1);
                Rational cst = 0;
                for (int i = 0; i < dim; ++i) {
                    Rational g = a.forms[j].gradient[i];
                    if (contains(signs, j)) g = -g;
                    if (i == axis)
                        cst += g * dir;
                    else
                        c.coeff.push_back(g);
                }
                c.constant = cst;
                cons.push_back(std::move(c));
            }
            if (fourier_motzkin_feasible(std::move(cons), dim - 1)) return false;
        }
    }
    return true;
}

std::vector<Rational> seed_point(const AffineArrangement& a) {
    for (int t = 2; t < 2 + 4 * (a.hyperplanes() + 1) * (a.dim + 1); ++t) {
        std::vector<Rational> p(a.dim);
        Rational v = Rational(1) / t;
        for (int i = 0; i < a.dim; ++i) {
            p[i] = v;
            v /= t;
        }
        bool clear = true;
        for (const auto& f : a.forms)
            if (evaluate(f, p) == 0) { clear = false; break; }
        if (clear) return p;
    }
    throw Error("failed to find a point off all hyperplanes");
}

std::vector<VertexInfo> enumerate_vertices(const AffineArrangement& a) {
    const int dim = a.dim;
    const int n = a.hyperplanes();
    std::vector<VertexInfo> out;
    std::map<std::vector<Rational>, int> seen;
    std::vector<int> subset(dim);
    for (int i = 0; i < dim; ++i) subset[i] = i;
    bool done = dim > n;
    while (!done) {
        ExactMatrix g(dim, dim);
        ExactMatrix rhs(dim, 1);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) g(r, c) = a.forms[subset[r]].gradient[c];
            rhs(r, 0) = -a.forms[subset[r]].constant;
        }
        if (exactla::det(g) != 0) {
            ExactMatrix sol = exactla::inverse(g).mul(rhs);
            std::vector<Rational> point(dim);
            for (int i = 0; i < dim; ++i) point[i] = sol(i, 0);
            if (!seen.count(point)) {
                VertexInfo v;
                v.point = point;
                for (int j = 0; j < n; ++j)
                    if (evaluate(a.forms[j], point) == 0) v.flat |= bit(j);
                seen.emplace(std::move(point), static_cast<int>(out.size()));
                out.push_back(std::move(v));
            }
        }
        // advance combination
        int i = dim - 1;
        while (i >= 0 && subset[i] == n - dim + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < dim; ++j) subset[j] = subset[j - 1] + 1;
    }
    return out;
}

}  // namespace

ChamberComplex chambers(const AffineArrangement& a) {
    if (a.dim > 3) throw UnsupportedError("chamber enumeration supports dimension <= 3");
    if (a.mat.rank(a.affine_mask()) != a.dim + 1)
        throw UnsupportedError("non-essential arrangement");

    ChamberComplex cc;
    cc.vertices = enumerate_vertices(a);

    std::vector<Rational> seed = seed_point(a);
    std::uint32_t seed_signs = 0;
    for (int j = 0; j < a.hyperplanes(); ++j)
        if (evaluate(a.forms[j], seed) < 0) seed_signs |= bit(j);

    std::map<std::uint32_t, std::vector<Rational>> found;
    found.emplace(seed_signs, seed);
    std::deque<std::uint32_t> queue{seed_signs};
    while (!queue.empty()) {
        std::uint32_t signs = queue.front();
        queue.pop_front();
        for (int j = 0; j < a.hyperplanes(); ++j) {
            std::uint32_t flipped = signs ^ bit(j);
            if (found.count(flipped)) continue;
            std::vector<Rational> witness;
            if (fourier_motzkin_feasible(sign_constraints(a, flipped, true), a.dim, &witness)) {
                found.emplace(flipped, std::move(witness));
                queue.push_back(flipped);
            }
        }
    }

    for (auto& [signs, witness] : found) {
        Chamber ch;
        ch.sign_mask = signs;
        ch.interior = witness;
        ch.bounded = recession_trivial(a, signs);
        if (ch.bounded) {
            for (int vid = 0; vid < static_cast<int>(cc.vertices.size()); ++vid) {
                const auto& v = cc.vertices[vid];
                bool inside = true;
                for (int j = 0; j < a.hyperplanes() && inside; ++j) {
                    Rational val = evaluate(a.forms[j], v.point);
                    if (contains(signs, j) ? val > 0 : val < 0) inside = false;
                }
                if (inside) ch.vertex_ids.push_back(vid);
            }
            // exact interior point: vertex average
            std::vector<Rational> avg(a.dim, Rational(0));
            for (int vid : ch.vertex_ids)
                for (int i = 0; i < a.dim; ++i) avg[i] += cc.vertices[vid].point[i];
            Rational inv = Rational(1) / static_cast<long long>(ch.vertex_ids.size());
            for (auto& v : avg) v *= inv;
            ch.interior = std::move(avg);
        }
        cc.chambers.push_back(std::move(ch));
    }

    std::sort(cc.chambers.begin(), cc.chambers.end(), [&](const Chamber& x, const Chamber& y) {
        return x.sign_string(a.hyperplanes()) < y.sign_string(a.hyperplanes());
    });
    for (int i = 0; i < static_cast<int>(cc.chambers.size()); ++i)
        if (cc.chambers[i].bounded) cc.bounded_ids.push_back(i);

    long long expected = matroid::beta_invariant(a.mat);
    if (static_cast<long long>(cc.bounded_ids.size()) != expected)
        throw Error("bounded chamber count " + std::to_string(cc.bounded_ids.size()) +
                    " disagrees with the beta invariant " + std::to_string(expected));
    return cc;
}

std::optional<EdgeGeom> edge_geometry(const AffineArrangement& a, Mask flat) {
    std::vector<int> idx;
    for (int j = 0; j < a.hyperplanes(); ++j)
        if (contains(flat, j)) idx.push_back(j);
    if (idx.empty()) return std::nullopt;

    const int rows = static_cast<int>(idx.size());
    ExactMatrix g(rows, a.dim);
    ExactMatrix aug(rows, a.dim + 1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < a.dim; ++c) {
            g(r, c) = a.forms[idx[r]].gradient[c];
            aug(r, c) = g(r, c);
        }
        aug(r, a.dim) = a.forms[idx[r]].constant;
    }
    int rg = exactla::rank(g);
    if (exactla::rank(aug) != rg) return std::nullopt;  // inconsistent

    // particular solution by RREF of [g | -constant]
    ExactMatrix rhs(rows, 1);
    for (int r = 0; r < rows; ++r) rhs(r, 0) = -a.forms[idx[r]].constant;
    ExactMatrix sys(rows, a.dim + 1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < a.dim; ++c) sys(r, c) = g(r, c);
        sys(r, a.dim) = rhs(r, 0);
    }
    // Gaussian elimination to echelon form, then back-substitute free = 0.
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < a.dim && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (sys(i, c) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j <= a.dim; ++j) std::swap(sys(pivot, j), sys(r, j));
        Rational inv = Rational(1) / sys(r, c);
        for (int j = c; j <= a.dim; ++j) sys(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sys(i, c) == 0) continue;
            Rational f = sys(i, c);
            for (int j = c; j <= a.dim; ++j) sys(i, j) -= f * sys(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    EdgeGeom edge;
    edge.flat = flat;
    edge.point.assign(a.dim, Rational(0));
    for (int p = 0; p < r; ++p) edge.point[pivot_col[p]] = sys(p, a.dim);

    ExactMatrix null_basis = exactla::nullspace_basis(g);
    for (int i = 0; i < null_basis.rows(); ++i) edge.directions.push_back(null_basis.row(i));
    edge.dim = null_basis.rows();
    return edge;
}

ExternalSupport external_support(const AffineArrangement& a, const ChamberComplex& cc,
                                 int chamber_id, int j) {
    const Chamber& ch = cc.chambers.at(chamber_id);
    if (!ch.bounded) throw DomainError("external support requires a bounded chamber");
    if (j < 0 || j >= a.hyperplanes()) throw DomainError("hyperplane index out of range");

    int sgn = contains(ch.sign_mask, j) ? -1 : 1;
    bool first = true;
    Rational best;
    std::vector<int> maximizers;
    for (int vid : ch.vertex_ids) {
        Rational v = evaluate(a.forms[j], cc.vertices[vid].point);
        if (sgn < 0) v = -v;  // |f^j| on the closure
        if (first || v > best) {
            best = v;
            maximizers.assign(1, vid);
            first = false;
        } else if (v == best) {
            maximizers.push_back(vid);
        }
    }
    if (first) throw DomainError("chamber has no vertices");

    ExternalSupport out;
    out.face_vertex_ids = maximizers;

    Mask flat = cc.vertices[maximizers.front()].flat;
    for (int vid : maximizers) flat &= cc.vertices[vid].flat;

    // dimension of the affine hull of the maximizers
    ExactMatrix diffs(static_cast<int>(maximizers.size()) - 1, a.dim);
    const auto& base = cc.vertices[maximizers.front()].point;
    for (size_t i = 1; i < maximizers.size(); ++i)
        for (int c = 0; c < a.dim; ++c)
            diffs(static_cast<int>(i) - 1, c) = cc.vertices[maximizers[i]].point[c] - base[c];
    out.face_dim = maximizers.size() > 1 ? exactla::rank(diffs) : 0;

    auto edge = edge_geometry(a, flat);
    if (!edge) throw Error("supporting edge unexpectedly empty");
    out.edge = *edge;
    if (out.edge.dim != out.face_dim)
        throw Error("supporting face dimension disagrees with its edge");
    return out;
}

long long parallelism_chamber_count(const AffineArrangement& a, const ChamberComplex& cc,
                                    const matroid::ParallelismRecord& p) {
    if (p.b != a.chart_index())
        throw DomainError("parallelism must be taken against the chart hyperplane");
    long long count = 0;
    for (int cid : cc.bounded_ids) {
        ExternalSupport s = external_support(a, cc, cid, p.a);
        if (s.edge.flat == p.flat) ++count;
    }
    return count;
}

}  // namespace arrdual::geometry
