#include "arrdual/periods.hpp"

#include "arrdual/errors.hpp"
#include "arrdual/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace arrdual::periods {

using betakbc::LogForm;
using betakbc::OrderedBasis;
using geometry::AffineArrangement;
using geometry::Chamber;
using geometry::ChamberComplex;
using matroid::bit;
using matroid::contains;
using matroid::popcount;

WeightSystem make_weights(std::vector<Rational> alphas) {
    WeightSystem w;
    Rational sum = 0;
    for (const Rational& a : alphas) {
        if (a <= 0) throw WeightDomainError("weights must be positive");
        sum += a;
    }
    w.alphas = std::move(alphas);
    w.alpha_infinity = -sum;
    return w;
}

int BranchAssignment::theta(int j, Mask flat) const {
    auto it = theta_pi.find({j, flat});
    if (it == theta_pi.end())
        throw DomainError("no branch assigned for hyperplane " + std::to_string(j));
    return it->second;
}

SideData build_side(const DualPair& d, Side s, const WeightSystem& w) {
    SideData sd;
    sd.side = s;
    sd.arr = geometry::affine_forms(d, s);
    sd.cc = geometry::chambers(sd.arr);
    sd.bases = betakbc::betakbc_bases(sd.arr, sd.cc, w.alphas);
    sd.forms = betakbc::log_forms(sd.arr, sd.bases);
    sd.chamber_of_basis = betakbc::chamber_bijection(sd.arr, sd.cc, sd.bases);
    sd.orientations.resize(sd.bases.size());
    for (size_t i = 0; i < sd.bases.size(); ++i)
        sd.orientations[i] =
            betakbc::orientation(sd.arr, sd.cc, sd.chamber_of_basis[i], sd.bases[i]);
    for (int cid : sd.cc.bounded_ids)
        for (int j = 0; j < sd.arr.hyperplanes(); ++j)
            sd.support[{cid, j}] = geometry::external_support(sd.arr, sd.cc, cid, j).edge.flat;
    return sd;
}

BranchAssignment special_branches(const SideData& sd, const WeightSystem& w) {
    if (static_cast<int>(w.alphas.size()) != sd.arr.hyperplanes())
        throw DimensionError("weight count does not match the arrangement");
    BranchAssignment ba;
    for (int cid : sd.cc.bounded_ids) {
        const Chamber& ch = sd.cc.chambers[cid];
        for (int j = 0; j < sd.arr.hyperplanes(); ++j) {
            Mask flat = sd.support_flat(cid, j);
            int theta = contains(ch.sign_mask, j) ? 1 : 0;  // pi when f^j < 0
            auto [it, fresh] = ba.theta_pi.emplace(std::make_pair(j, flat), theta);
            if (!fresh && it->second != theta)
                throw Error("sign of f^" + std::to_string(j) +
                            " is inconsistent across a supporting-edge group");
        }
    }
    return ba;
}

BranchAssignment associated_branches(const BranchAssignment& primal, const SideData& dual_sd) {
    const int n_forms = dual_sd.arr.hyperplanes();
    const int chart = dual_sd.arr.chart_index();
    const Mask full_j = bit(n_forms + 1) - 1;
    BranchAssignment ba;
    for (int cid : dual_sd.cc.bounded_ids) {
        const Chamber& ch = dual_sd.cc.chambers[cid];
        for (int j = 0; j < n_forms; ++j) {
            Mask dual_flat = dual_sd.support_flat(cid, j);
            Mask primal_flat = full_j & ~(dual_flat | bit(j) | bit(chart));
            if (!primal.has(j, primal_flat))
                throw DualityViolationError("dual supporting edge has no primal counterpart");
            int theta = 1 - primal.theta(j, primal_flat);
            int expected = contains(ch.sign_mask, j) ? 1 : 0;
            if (theta != expected)
                throw DualityViolationError("associated argument contradicts the sign of f_" +
                                            std::to_string(j));
            auto [it, fresh] = ba.theta_pi.emplace(std::make_pair(j, dual_flat), theta);
            if (!fresh && it->second != theta)
                throw DualityViolationError("inconsistent associated arguments in a group");
        }
    }
    return ba;
}

std::complex<double> critical_value(const SideData& sd, const WeightSystem& w,
                                    const BranchAssignment& ba, int j, Mask flat) {
    auto edge = geometry::edge_geometry(sd.arr, flat);
    if (!edge) throw DomainError("critical value of an empty edge");
    Rational value = geometry::evaluate(sd.arr.forms[j], edge->point);
    if (value == 0) throw DomainError("f^j vanishes on its supporting edge");
    double alpha = exactla::to_double(w.alphas.at(j));
    double modulus = std::exp(alpha * std::log(std::abs(exactla::to_double(value))));
    return std::polar(modulus, M_PI * alpha * ba.theta(j, flat));
}

double log_beta_function(const AffineArrangement& arr, const WeightSystem& w) {
    const int chart = arr.chart_index();
    matroid::BetaEngine engine(arr.mat);
    const Mask full = arr.mat.full_mask();
    double log_b = 0.0;
    for (Mask x = 1; x <= full; ++x) {
        if (!arr.mat.is_flat(x)) continue;
        if (arr.mat.rank(x) > arr.dim) continue;  // empty projective edge
        long long length = engine.beta_minor(full & ~x, x);
        if (length == 0) continue;
        long long width = engine.beta_minor(x, 0);
        if (width == 0) continue;
        Rational edge_weight = 0;
        for (int j = 0; j <= chart; ++j)
            if (contains(x, j)) edge_weight += w.weight(j);
        long long vol = length * width;
        if (contains(x, chart)) {
            if (!(1 - edge_weight > 0))
                throw WeightDomainError("gamma argument 1 - alpha(L) not positive");
            log_b -= vol * std::lgamma(1.0 - exactla::to_double(edge_weight));
        } else {
            if (!(edge_weight + 1 > 0))
                throw WeightDomainError("gamma argument alpha(L) + 1 not positive");
            log_b += vol * std::lgamma(1.0 + exactla::to_double(edge_weight));
        }
        if (x == full) break;
    }
    return log_b;
}

namespace {

struct FormsD {
    int dim = 0;
    int n = 0;
    std::vector<std::vector<double>> grad;
    std::vector<double> cst;
    std::vector<double> alpha;

    double value(int j, const double* x) const {
        double v = cst[j];
        for (int i = 0; i < dim; ++i) v += grad[j][i] * x[i];
        return v;
    }
};

FormsD to_doubles(const AffineArrangement& arr, const WeightSystem& w) {
    FormsD f;
    f.dim = arr.dim;
    f.n = arr.hyperplanes();
    f.grad.resize(f.n);
    f.cst.resize(f.n);
    f.alpha.resize(f.n);
    for (int j = 0; j < f.n; ++j) {
        f.grad[j].resize(f.dim);
        for (int i = 0; i < f.dim; ++i) f.grad[j][i] = exactla::to_double(arr.forms[j].gradient[i]);
        f.cst[j] = exactla::to_double(arr.forms[j].constant);
        f.alpha[j] = exactla::to_double(w.alphas[j]);
    }
    return f;
}

// Rows of the logarithmic determinant: row i sums alpha_j grad f^j / f^j over
// the hyperplanes through the i-th flag edge.
struct GEvaluator {
    const FormsD* forms = nullptr;
    std::vector<std::vector<int>> row_js;
    Mask incidence = 0;  // union of all factor flats (potential poles)

    double operator()(const double* fvals) const {
        const int k = forms->dim;
        double rows[2][2] = {{0, 0}, {0, 0}};
        for (int i = 0; i < k; ++i)
            for (int j : row_js[i]) {
                double s = forms->alpha[j] / fvals[j];
                for (int c = 0; c < k; ++c) rows[i][c] += s * forms->grad[j][c];
            }
        if (k == 1) return rows[0][0];
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    }
};

GEvaluator make_g(const FormsD& forms, const LogForm& phi) {
    GEvaluator g;
    g.forms = &forms;
    g.row_js.resize(forms.dim);
    for (int i = 0; i < forms.dim; ++i) {
        for (int j = 0; j < forms.n; ++j)
            if (contains(phi.factor_flats[i], j)) {
                g.row_js[i].push_back(j);
                g.incidence |= bit(j);
            }
    }
    return g;
}

class RuleCache {
public:
    const quadrature::Rule& get(int n, double a, double b) {
        auto key = std::make_tuple(n, a, b);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, quadrature::gauss_jacobi(n, a, b)).first;
        return it->second;
    }

private:
    std::map<std::tuple<int, double, double>, quadrature::Rule> cache_;
};

struct CellResult {
    double value = 0;
    double est = 0;
};

// ---------- one-dimensional chambers ----------

struct Interval1 {
    double x0, x1;
    int depth;
    CellResult res;
};

struct Chamber1D {
    double left, right;       // exact endpoints (as doubles)
    double exp_left, exp_right;  // Jacobi exponents at the endpoints
};

double integrate_interval(const FormsD& forms, const GEvaluator& g, const Chamber1D& ch,
                          double x0, double x1, int degree, RuleCache& rules) {
    bool left_active = x0 == ch.left;
    bool right_active = x1 == ch.right;
    double a = right_active ? ch.exp_right : 0.0;
    double b = left_active ? ch.exp_left : 0.0;
    const quadrature::Rule& rule = rules.get(degree, a, b);
    double hw = 0.5 * (x1 - x0);
    double mid = 0.5 * (x0 + x1);
    double sum = 0;
    double fvals[32];
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = mid + hw * rule.nodes[q];
        double logmag = 0;
        for (int j = 0; j < forms.n; ++j) {
            fvals[j] = forms.value(j, &x);
            logmag += forms.alpha[j] * std::log(std::abs(fvals[j]));
        }
        if (left_active) logmag -= ch.exp_left * std::log(x - ch.left);
        if (right_active) logmag -= ch.exp_right * std::log(ch.right - x);
        sum += rule.weights[q] * std::exp(logmag) * g(fvals);
    }
    double scale = hw;
    if (left_active) scale *= std::pow(hw, ch.exp_left);
    if (right_active) scale *= std::pow(hw, ch.exp_right);
    return sum * scale;
}

// ---------- two-dimensional chambers ----------

struct Triangle {
    double ax, ay;     // fan apex (vertex average)
    double bx, by;     // outer edge endpoints
    double cx, cy;
    double jac;        // |det(B-A, C-A)|
    double edge_exp;   // Jacobi exponent on the outer edge (u = 1)
};

struct Cell2 {
    int tri;
    double u0, u1, v0, v1;
    int depth;
    CellResult res;
};

double integrate_box(const FormsD& forms, const GEvaluator& g, const Triangle& t, double u0,
                     double u1, double v0, double v1, int degree, RuleCache& rules) {
    bool edge_active = u1 == 1.0;
    const quadrature::Rule& ru = rules.get(degree, edge_active ? t.edge_exp : 0.0, 0.0);
    const quadrature::Rule& rv = rules.get(degree, 0.0, 0.0);
    double uh = 0.5 * (u1 - u0), um = 0.5 * (u0 + u1);
    double vh = 0.5 * (v1 - v0), vm = 0.5 * (v0 + v1);
    double sum = 0;
    double fvals[32];
    for (size_t qa = 0; qa < ru.nodes.size(); ++qa) {
        double u = um + uh * ru.nodes[qa];
        double one_minus_u = 1.0 - u;
        double row = 0;
        for (size_t qb = 0; qb < rv.nodes.size(); ++qb) {
            double v = vm + vh * rv.nodes[qb];
            double x[2];
            x[0] = t.ax + u * ((1 - v) * (t.bx - t.ax) + v * (t.cx - t.ax));
            x[1] = t.ay + u * ((1 - v) * (t.by - t.ay) + v * (t.cy - t.ay));
            double logmag = 0;
            for (int j = 0; j < forms.n; ++j) {
                fvals[j] = forms.value(j, x);
                logmag += forms.alpha[j] * std::log(std::abs(fvals[j]));
            }
            if (edge_active) logmag -= t.edge_exp * std::log(one_minus_u);
            row += rv.weights[qb] * std::exp(logmag) * g(fvals) * u;
        }
        sum += ru.weights[qa] * row;
    }
    double scale = uh * vh * t.jac;
    if (edge_active) scale *= std::pow(uh, t.edge_exp);
    return sum * scale;
}

// Orders polygon vertices counterclockwise around an interior point, exactly.
std::vector<int> cyclic_order(const ChamberComplex& cc, const Chamber& ch,
                              const std::vector<Rational>& center) {
    std::vector<int> ids = ch.vertex_ids;
    auto angle_less = [&](int va, int vb) {
        Rational ax = cc.vertices[va].point[0] - center[0];
        Rational ay = cc.vertices[va].point[1] - center[1];
        Rational bx = cc.vertices[vb].point[0] - center[0];
        Rational by = cc.vertices[vb].point[1] - center[1];
        auto half = [](const Rational& x, const Rational& y) {
            return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
        };
        int ha = half(ax, ay), hb = half(bx, by);
        if (ha != hb) return ha < hb;
        return ax * by - ay * bx > 0;
    };
    std::sort(ids.begin(), ids.end(), angle_less);
    return ids;
}

struct EntryIntegral {
    double value = 0;
    double est = 0;
};

EntryIntegral integrate_chamber(const AffineArrangement& arr, const ChamberComplex& cc,
                                int chamber_id, const FormsD& forms, const GEvaluator& g,
                                const QuadSpec& quad, RuleCache& rules) {
    const Chamber& ch = cc.chambers[chamber_id];
    const int lo_degree = std::max(4, quad.degree / 2);
    EntryIntegral out;

    auto face_exponent = [&](int j) {
        return forms.alpha[j] - (contains(g.incidence, j) ? 1.0 : 0.0);
    };

    if (arr.dim == 1) {
        if (ch.vertex_ids.size() != 2) throw Error("1D bounded chamber without two endpoints");
        int vl = ch.vertex_ids[0], vr = ch.vertex_ids[1];
        double xl = exactla::to_double(cc.vertices[vl].point[0]);
        double xr = exactla::to_double(cc.vertices[vr].point[0]);
        if (xl > xr) std::swap(vl, vr), std::swap(xl, xr);
        if (popcount(cc.vertices[vl].flat) != 1 || popcount(cc.vertices[vr].flat) != 1)
            throw Error("1D chamber endpoint on more than one hyperplane");
        int jl = std::countr_zero(cc.vertices[vl].flat);
        int jr = std::countr_zero(cc.vertices[vr].flat);
        Chamber1D c1{xl, xr, face_exponent(jl), face_exponent(jr)};

        std::vector<Interval1> cells{{xl, xr, 0, {}}};
        auto compute = [&](Interval1& cell) {
            double hi = integrate_interval(forms, g, c1, cell.x0, cell.x1, quad.degree, rules);
            double lo = integrate_interval(forms, g, c1, cell.x0, cell.x1, lo_degree, rules);
            cell.res = {hi, std::abs(hi - lo)};
        };
        compute(cells[0]);
        while (true) {
            double total = 0, err = 0;
            for (const auto& c : cells) { total += c.res.value; err += c.res.est; }
            double target = quad.target_rel * std::max(std::abs(total), 1e-4);
            if (err <= target) { out.value = total; out.est = err; return out; }
            int worst = -1;
            for (int i = 0; i < static_cast<int>(cells.size()); ++i)
                if (cells[i].depth < quad.max_subdiv &&
                    (worst < 0 || cells[i].res.est > cells[worst].res.est))
                    worst = i;
            if (worst < 0 || cells.size() > 4096)
                throw AccuracyError("1D quadrature did not reach the target", err);
            Interval1 parent = cells[worst];
            double mid = 0.5 * (parent.x0 + parent.x1);
            Interval1 left{parent.x0, mid, parent.depth + 1, {}};
            Interval1 right{mid, parent.x1, parent.depth + 1, {}};
            compute(left);
            compute(right);
            cells[worst] = left;
            cells.push_back(right);
        }
    }

    if (arr.dim != 2) throw UnsupportedError("period quadrature supports dimensions 1 and 2");

    std::vector<int> ring = cyclic_order(cc, ch, ch.interior);
    const int m = static_cast<int>(ring.size());
    std::vector<Triangle> tris;
    for (int i = 0; i < m; ++i) {
        int vb = ring[i];
        int vc = ring[(i + 1) % m];
        Mask shared = cc.vertices[vb].flat & cc.vertices[vc].flat;
        if (popcount(shared) != 1) throw Error("polygon edge not on exactly one hyperplane");
        int je = std::countr_zero(shared);
        Triangle t;
        t.ax = exactla::to_double(ch.interior[0]);
        t.ay = exactla::to_double(ch.interior[1]);
        t.bx = exactla::to_double(cc.vertices[vb].point[0]);
        t.by = exactla::to_double(cc.vertices[vb].point[1]);
        t.cx = exactla::to_double(cc.vertices[vc].point[0]);
        t.cy = exactla::to_double(cc.vertices[vc].point[1]);
        t.jac = std::abs((t.bx - t.ax) * (t.cy - t.ay) - (t.cx - t.ax) * (t.by - t.ay));
        t.edge_exp = face_exponent(je);
        tris.push_back(t);
    }

    std::vector<Cell2> cells;
    for (int i = 0; i < m; ++i) cells.push_back({i, 0, 1, 0, 1, 0, {}});
    auto compute = [&](Cell2& cell) {
        const Triangle& t = tris[cell.tri];
        double hi = integrate_box(forms, g, t, cell.u0, cell.u1, cell.v0, cell.v1, quad.degree,
                                  rules);
        double lo = integrate_box(forms, g, t, cell.u0, cell.u1, cell.v0, cell.v1, lo_degree,
                                  rules);
        cell.res = {hi, std::abs(hi - lo)};
    };
    for (auto& c : cells) compute(c);
    while (true) {
        double total = 0, err = 0;
        for (const auto& c : cells) { total += c.res.value; err += c.res.est; }
        double target = quad.target_rel * std::max(std::abs(total), 1e-4);
        if (err <= target) { out.value = total; out.est = err; return out; }
        int worst = -1;
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            if (cells[i].depth < quad.max_subdiv &&
                (worst < 0 || cells[i].res.est > cells[worst].res.est))
                worst = i;
        if (worst < 0 || cells.size() > 20000)
            throw AccuracyError("2D quadrature did not reach the target", err);
        Cell2 parent = cells[worst];
        double um = 0.5 * (parent.u0 + parent.u1);
        double vm = 0.5 * (parent.v0 + parent.v1);
        Cell2 child = parent;
        child.depth = parent.depth + 1;
        bool first = true;
        for (int iu = 0; iu < 2; ++iu)
            for (int iv = 0; iv < 2; ++iv) {
                Cell2 c = child;
                c.u0 = iu ? um : parent.u0;
                c.u1 = iu ? parent.u1 : um;
                c.v0 = iv ? vm : parent.v0;
                c.v1 = iv ? parent.v1 : vm;
                compute(c);
                if (first) {
                    cells[worst] = c;
                    first = false;
                } else {
                    cells.push_back(c);
                }
            }
    }
}

double chamber_phase(const SideData& sd, const WeightSystem& w, const BranchAssignment& ba,
                     int chamber_id) {
    double theta_sum = 0;
    for (int j = 0; j < sd.arr.hyperplanes(); ++j) {
        int t = ba.theta(j, sd.support_flat(chamber_id, j));
        if (t) theta_sum += exactla::to_double(w.alphas[j]);
    }
    return M_PI * theta_sum;
}

}  // namespace

double PeriodMatrix::max_error() const {
    double scale = 0;
    for (const auto& e : entries) scale = std::max(scale, std::abs(e));
    double worst = 0;
    for (double e : entry_error) worst = std::max(worst, e);
    return scale > 0 ? worst / scale : worst;
}

PeriodMatrix period_matrix_with_matching(const SideData& sd, const WeightSystem& w,
                                         const BranchAssignment& ba, const QuadSpec& quad,
                                         const std::vector<int>& chamber_of_basis) {
    const int beta = sd.beta();
    if (static_cast<int>(chamber_of_basis.size()) != beta)
        throw DimensionError("matching size does not equal beta");
    PeriodMatrix pm;
    pm.beta = beta;
    pm.degree = quad.degree;
    pm.entries.resize(static_cast<size_t>(beta) * beta);
    pm.entry_error.resize(pm.entries.size());
    pm.row_chambers = chamber_of_basis;

    FormsD forms = to_doubles(sd.arr, w);
    RuleCache rules;
    std::vector<GEvaluator> gs;
    gs.reserve(sd.forms.size());
    for (const LogForm& phi : sd.forms) gs.push_back(make_g(forms, phi));

    for (int s = 0; s < beta; ++s) {
        int cid = chamber_of_basis[s];
        int orient = betakbc::orientation(sd.arr, sd.cc, cid, sd.bases[s]);
        std::complex<double> phase = std::polar(1.0, chamber_phase(sd, w, ba, cid));
        for (int t = 0; t < beta; ++t) {
            EntryIntegral integral =
                integrate_chamber(sd.arr, sd.cc, cid, forms, gs[t], quad, rules);
            pm.entries[s * beta + t] = double(orient) * phase * integral.value;
            pm.entry_error[s * beta + t] = integral.est;
        }
    }
    return pm;
}

PeriodMatrix period_matrix(const SideData& sd, const WeightSystem& w, const BranchAssignment& ba,
                           const QuadSpec& quad) {
    return period_matrix_with_matching(sd, w, ba, quad, sd.chamber_of_basis);
}

DetResult det_pm(const PeriodMatrix& pm) {
    const int n = pm.beta;
    std::vector<std::complex<double>> a = pm.entries;
    DetResult out;
    out.value = 1.0;
    double max_piv = 0, min_piv = 0;
    for (int c = 0; c < n; ++c) {
        int pivot = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a[i * n + c]) > std::abs(a[pivot * n + c])) pivot = i;
        if (pivot != c) {
            for (int j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[c * n + j]);
            out.value = -out.value;
        }
        std::complex<double> p = a[c * n + c];
        double mag = std::abs(p);
        if (mag == 0) { out.value = 0; out.condition = std::numeric_limits<double>::infinity(); return out; }
        max_piv = std::max(max_piv, mag);
        min_piv = (c == 0) ? mag : std::min(min_piv, mag);
        out.value *= p;
        for (int i = c + 1; i < n; ++i) {
            std::complex<double> f = a[i * n + c] / p;
            for (int j = c; j < n; ++j) a[i * n + j] -= f * a[c * n + j];
        }
    }
    out.condition = (n > 0 && min_piv > 0) ? max_piv / min_piv : 1.0;
    return out;
}

bool ComparisonReport::pass(double tol) const {
    return std::abs(modulus_ratio - 1.0) <= tol && std::abs(phase_diff_mod_pi) <= tol;
}

namespace {

ComparisonReport compare(std::complex<double> lhs, double rhs_log_modulus, double rhs_phase,
                         double quad_error) {
    ComparisonReport r;
    r.lhs = lhs;
    r.rhs_log_modulus = rhs_log_modulus;
    r.rhs_phase = rhs_phase;
    r.modulus_ratio = std::abs(lhs) / std::exp(rhs_log_modulus);
    r.phase_diff = std::remainder(std::arg(lhs) - rhs_phase, 2 * M_PI);
    r.phase_diff_mod_pi = std::remainder(std::arg(lhs) - rhs_phase, M_PI);
    r.quad_error = quad_error;
    return r;
}

}  // namespace

ComparisonReport verify_evaluation(const SideData& sd, const WeightSystem& w,
                                   const BranchAssignment& ba, const QuadSpec& quad) {
    PeriodMatrix pm = period_matrix(sd, w, ba, quad);
    DetResult det = det_pm(pm);

    const int chart = sd.arr.chart_index();
    const Mask full = sd.arr.mat.full_mask();
    matroid::BetaEngine engine(sd.arr.mat);

    double log_modulus = log_beta_function(sd.arr, w);
    double phase = 0;
    for (const auto& [key, theta] : ba.theta_pi) {
        auto [j, flat] = key;
        long long length = engine.beta_minor(full & ~flat, flat);
        long long width = engine.beta_minor(flat | bit(j) | bit(chart), 0);
        long long vol = length * width;
        if (vol == 0) continue;
        auto edge = geometry::edge_geometry(sd.arr, flat);
        Rational value = geometry::evaluate(sd.arr.forms[j], edge->point);
        double alpha = exactla::to_double(w.alphas[j]);
        log_modulus += vol * alpha * std::log(std::abs(exactla::to_double(value)));
        if (theta) phase += vol * alpha * M_PI;
    }
    return compare(det.value, log_modulus, phase, pm.max_error());
}

MainReport verify_main(const DualPair& d, const WeightSystem& w, const QuadSpec& quad) {
    SideData primal = build_side(d, Side::primal, w);
    SideData dual = build_side(d, Side::dual, w);

    BranchAssignment ba_primal = special_branches(primal, w);
    BranchAssignment ba_dual = associated_branches(ba_primal, dual);

    PeriodMatrix pm_primal = period_matrix(primal, w, ba_primal, quad);
    PeriodMatrix pm_dual = period_matrix(dual, w, ba_dual, quad);

    MainReport report;
    report.det_primal = det_pm(pm_primal).value;
    report.det_dual = det_pm(pm_dual).value;

    const long long beta = primal.beta();
    double sum_alpha = 0, log_modulus = 0;
    for (const Rational& a : w.alphas) {
        double ad = exactla::to_double(a);
        sum_alpha += ad;
        log_modulus += std::lgamma(ad + 1.0);
    }
    log_modulus -= std::lgamma(sum_alpha + 1.0);
    log_modulus *= beta;
    double phase = M_PI * beta * sum_alpha;

    report.comparison = compare(report.det_primal * report.det_dual, log_modulus, phase,
                                std::max(pm_primal.max_error(), pm_dual.max_error()));
    return report;
}

}  // namespace arrdual::periods
