#include "arrdual/dual_pair.hpp"

#include "arrdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace arrdual::dualpair {

using matroid::bit;
using matroid::contains;
using matroid::Mask;

namespace {

bool columns_proportional(const ExactMatrix& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.rows(); ++j)
            if (m(i, a) * m(j, b) != m(j, a) * m(i, b)) return false;
    return true;
}

void check_columns(const ExactMatrix& m, bool dual_side) {
    for (int a = 0; a < m.cols(); ++a) {
        bool zero = true;
        for (int i = 0; i < m.rows(); ++i)
            if (m(i, a) != 0) { zero = false; break; }
        if (zero)
            throw InadmissibleError(std::string("zero column ") + std::to_string(a) + " on " +
                                        (dual_side ? "dual" : "primal") + " side",
                                    a, a, dual_side);
    }
    for (int a = 0; a < m.cols(); ++a)
        for (int b = a + 1; b < m.cols(); ++b)
            if (columns_proportional(m, a, b))
                throw InadmissibleError("proportional columns (" + std::to_string(a) + ", " +
                                            std::to_string(b) + ") on " +
                                            (dual_side ? "dual" : "primal") + " side",
                                        a, b, dual_side);
}

std::vector<int> complement_sorted(const std::vector<int>& subset, int total) {
    std::vector<int> out;
    out.reserve(total - subset.size());
    size_t p = 0;
    for (int i = 0; i < total; ++i) {
        if (p < subset.size() && subset[p] == i) { ++p; continue; }
        out.push_back(i);
    }
    return out;
}

std::vector<int> all_rows(int count) {
    std::vector<int> r(count);
    for (int i = 0; i < count; ++i) r[i] = i;
    return r;
}

void next_combination(std::vector<int>& c, int total, bool& done) {
    int size = static_cast<int>(c.size());
    int i = size - 1;
    while (i >= 0 && c[i] == total - size + i) --i;
    if (i < 0) { done = true; return; }
    ++c[i];
    for (int j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
}

// RREF row basis of the row space.
ExactMatrix row_basis(const ExactMatrix& m) {
    ExactMatrix a = m;
    const int rows = a.rows();
    const int cols = a.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
        Rational inv = Rational(1) / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return a.select_rows(all_rows(r));
}

}  // namespace

AnnihilatorParts derive_annihilator(const ExactMatrix& b) {
    AnnihilatorParts parts;
    parts.completion = exactla::complete_to_square(b);
    parts.detB = exactla::det(parts.completion);
    ExactMatrix dual_basis = exactla::inverse(parts.completion).transpose();
    std::vector<int> tail;
    for (int i = b.rows(); i < b.cols(); ++i) tail.push_back(i);
    parts.C = dual_basis.select_rows(tail);
    return parts;
}

AdmissiblePair make_pair(const ExactMatrix& b, int k) {
    const int N = b.cols() - 1;
    const int n = N - 1 - k;
    if (b.rows() != k + 1) throw NotAPairError("matrix must have k+1 rows");
    if (N < 3) throw NotAPairError("at least four columns are required (N >= 3)");
    if (k < 1 || n < 1) throw NotAPairError("dimensions must satisfy 1 <= k, n <= N-2");
    if (exactla::rank(b) != k + 1) throw NotAPairError("matrix is rank deficient");
    check_columns(b, false);
    AnnihilatorParts parts = derive_annihilator(b);
    check_columns(parts.C, true);
    AdmissiblePair pair;
    pair.k = k;
    pair.n = n;
    pair.N = N;
    pair.B = b;
    pair.completion = std::move(parts.completion);
    return pair;
}

DualPair dualize(const AdmissiblePair& p) {
    DualPair d;
    d.primal = p;
    ExactMatrix dual_basis = exactla::inverse(p.completion).transpose();
    std::vector<int> tail;
    for (int i = p.k + 1; i <= p.N; ++i) tail.push_back(i);
    d.C = dual_basis.select_rows(tail);
    d.detB = exactla::det(p.completion);
    return d;
}

matroid::Matroid side_matroid(const DualPair& d, Side s) {
    return matroid::Matroid::from_columns(d.matrix(s));
}

Rational vertex_value(const DualPair& d, Side s, const std::vector<int>& vertex_flat, int j) {
    const ExactMatrix& m = d.matrix(s);
    const int dim = d.dim(s);
    const int N = d.hyperplanes();
    if (static_cast<int>(vertex_flat.size()) != dim)
        throw DomainError("vertex flat must have exactly dim entries");
    for (size_t i = 0; i < vertex_flat.size(); ++i) {
        if (vertex_flat[i] < 0 || vertex_flat[i] >= N)
            throw DomainError("vertex flat index outside the affine hyperplanes");
        if (i > 0 && vertex_flat[i - 1] >= vertex_flat[i])
            throw DomainError("vertex flat must be strictly increasing");
    }
    if (j < 0 || j >= N) throw DomainError("hyperplane index outside range");
    if (std::binary_search(vertex_flat.begin(), vertex_flat.end(), j))
        throw DomainError("hyperplane index lies in the vertex flat");

    std::vector<int> rows = all_rows(dim + 1);
    std::vector<int> denom_cols = vertex_flat;
    denom_cols.push_back(N);
    Rational denom = exactla::minor(m, rows, denom_cols);
    if (denom == 0) throw VertexAtInfinityError("vertex lies on the chart hyperplane");

    int insert_pos = 0;
    while (insert_pos < dim && vertex_flat[insert_pos] < j) ++insert_pos;
    std::vector<int> numer_cols = vertex_flat;
    numer_cols.insert(numer_cols.begin() + insert_pos, j);
    Rational numer = exactla::minor(m, rows, numer_cols);

    Rational value = numer / denom;
    if ((dim + insert_pos) % 2 != 0) value = -value;
    return value;
}

CheckReport check_minor_identity(const DualPair& d) {
    const int N = d.hyperplanes();
    const int k = d.primal.k;
    CheckReport report;
    std::vector<int> L(k + 1);
    for (int i = 0; i <= k; ++i) L[i] = i;
    std::vector<int> rows_b = all_rows(k + 1);
    std::vector<int> rows_c = all_rows(N - k);
    bool done = false;
    while (!done) {
        Rational bl = exactla::minor(d.primal.B, rows_b, L);
        std::vector<int> comp = complement_sorted(L, N + 1);
        Rational cl = exactla::minor(d.C, rows_c, comp);
        // sigma = 1 + ... + (k+1) + sum of 1-based column labels of L
        long long sigma = static_cast<long long>(k + 1) * (k + 2) / 2;
        for (int l : L) sigma += l + 1;
        Rational rhs = d.detB * cl;
        if (sigma % 2 != 0) rhs = -rhs;
        if (bl != rhs) {
            report.pass = false;
            std::ostringstream os;
            os << "minor identity fails at columns {";
            for (size_t i = 0; i < L.size(); ++i) os << (i ? "," : "") << L[i];
            os << "}: B[L]=" << exactla::to_string(bl) << " rhs=" << exactla::to_string(rhs);
            report.detail = os.str();
            return report;
        }
        next_combination(L, N + 1, done);
    }
    report.detail = "all complementary minors match";
    return report;
}

namespace {

// Lexicographically first k-subset Y of the affine hyperplanes defining a
// vertex on the edge of `flat` away from the chart: rank(Y) = k, the chart
// minor is nonzero, and the flat lies in the closure of Y.
std::vector<int> vertex_on_edge(const DualPair& d, const matroid::Matroid& m, Mask flat) {
    const int N = d.hyperplanes();
    const int k = d.primal.k;
    std::vector<int> rows = all_rows(k + 1);
    std::vector<int> y(k);
    for (int i = 0; i < k; ++i) y[i] = i;
    bool done = false;
    while (!done) {
        Mask ymask = 0;
        for (int v : y) ymask |= bit(v);
        if (m.rank(ymask) == k) {
            std::vector<int> cols = y;
            cols.push_back(N);
            if (exactla::minor(d.primal.B, rows, cols) != 0 &&
                (m.closure(ymask) & flat) == flat) {
                return y;
            }
        }
        next_combination(y, N, done);
    }
    return {};
}

}  // namespace

CheckReport product_minus_one(const DualPair& d, const matroid::ParallelismRecord& p) {
    const int N = d.hyperplanes();
    CheckReport report;
    if (p.b != N) throw DomainError("parallelism must be taken against the chart hyperplane");
    matroid::Matroid m = side_matroid(d, Side::primal);
    if (!m.is_flat(p.flat) || contains(p.flat, p.a) || contains(p.flat, p.b) ||
        m.rank(bit(p.a) | bit(p.b)) != 2 ||
        m.rank(p.flat | bit(p.a) | bit(p.b)) != m.rank(p.flat) + 1)
        throw DomainError("triple is not a parallelism of the primal matroid");

    std::vector<int> y = vertex_on_edge(d, m, p.flat);
    if (y.empty())
        throw DegenerateParallelismError("no vertex on the edge off the chart hyperplane");

    // complementary dual vertex: J minus (Y + {a, chart})
    std::vector<int> used = y;
    used.push_back(p.a);
    used.push_back(N);
    std::sort(used.begin(), used.end());
    std::vector<int> y_dual = complement_sorted(used, N + 1);

    Rational primal_value = vertex_value(d, Side::primal, y, p.a);
    Rational dual_value = vertex_value(d, Side::dual, y_dual, p.a);
    Rational product = primal_value * dual_value;
    report.pass = product == -1;
    std::ostringstream os;
    os << "f^" << p.a << " = " << exactla::to_string(primal_value) << ", f_" << p.a << " = "
       << exactla::to_string(dual_value) << ", product = " << exactla::to_string(product);
    report.detail = os.str();
    return report;
}

PluckerVector plucker(const DualPair& d, Side s) {
    const ExactMatrix& m = d.matrix(s);
    PluckerVector v;
    v.side = s;
    v.tuple_size = d.dim(s) + 1;
    v.ambient = d.hyperplanes() + 1;
    std::vector<int> rows = all_rows(v.tuple_size);
    std::vector<int> tuple(v.tuple_size);
    for (int i = 0; i < v.tuple_size; ++i) tuple[i] = i;
    bool done = false;
    while (!done) {
        v.coords[tuple] = exactla::minor(m, rows, tuple);
        next_combination(tuple, v.ambient, done);
    }
    return v;
}

PluckerVector delta(const PluckerVector& v) {
    PluckerVector out;
    out.side = other(v.side);
    out.ambient = v.ambient;
    out.tuple_size = v.ambient - v.tuple_size;
    for (const auto& [tuple, value] : v.coords) {
        std::vector<int> comp = complement_sorted(tuple, v.ambient);
        long long sigma = static_cast<long long>(v.tuple_size) * (v.tuple_size + 1) / 2;
        for (int l : tuple) sigma += l + 1;
        out.coords[comp] = (sigma % 2 == 0) ? value : Rational(-value);
    }
    return out;
}

bool projectively_equal(const PluckerVector& a, const PluckerVector& b) {
    if (a.tuple_size != b.tuple_size || a.ambient != b.ambient) return false;
    if (a.coords.size() != b.coords.size()) return false;
    const std::vector<int>* ref = nullptr;
    for (const auto& [tuple, value] : a.coords) {
        if (value != 0 || b.coords.at(tuple) != 0) { ref = &tuple; break; }
    }
    if (!ref) return false;  // both identically zero: not projective points
    const Rational& a0 = a.coords.at(*ref);
    const Rational& b0 = b.coords.at(*ref);
    if (a0 == 0 || b0 == 0) return false;
    for (const auto& [tuple, value] : a.coords)
        if (value * b0 != b.coords.at(tuple) * a0) return false;
    return true;
}

bool WeakLocalization::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const matroid::DualityCheck& c) { return c.pass; });
}

WeakLocalization weak_localize(const DualPair& d, Mask flat) {
    matroid::Matroid m = side_matroid(d, Side::primal);
    const int total = m.size();
    if (flat == 0 || flat == m.full_mask() || !m.is_flat(flat))
        throw DomainError("weak localization requires a proper nonempty flat");

    std::vector<int> inside;
    std::vector<int> outside;
    for (int j = 0; j < total; ++j) (contains(flat, j) ? inside : outside).push_back(j);

    WeakLocalization out;
    // sigma: basis of { t : t B_X = 0 } gives the subspace cut out by the
    // flat; its functionals are the remaining columns of (basis * B).
    ExactMatrix bx_t = d.primal.B.select_columns(inside).transpose();
    ExactMatrix t_basis = exactla::nullspace_basis(bx_t);
    out.sigma.ground = outside;
    out.sigma.coords = t_basis.mul(d.primal.B).select_columns(outside);

    // sigma': image of the dual subspace in the quotient by the coordinates
    // of the flat, i.e. the remaining columns of C with a row basis.
    out.sigma_dual.ground = outside;
    ExactMatrix cx = d.C.select_columns(outside);
    out.sigma_dual.coords = row_basis(cx);

    auto add_check = [&out](const std::string& name, bool pass, const std::string& detail) {
        out.checks.push_back({name, pass, pass ? "" : detail});
    };

    bool weak_ok = true;
    for (int j = 0; j < static_cast<int>(outside.size()) && weak_ok; ++j) {
        bool zero_sigma = true;
        for (int i = 0; i < out.sigma.coords.rows(); ++i)
            if (out.sigma.coords(i, j) != 0) { zero_sigma = false; break; }
        bool zero_dual = true;
        for (int i = 0; i < cx.rows(); ++i)
            if (cx(i, j) != 0) { zero_dual = false; break; }
        weak_ok = !zero_sigma && !zero_dual;
    }
    add_check("weak_admissibility", weak_ok, "a restricted functional vanished identically");

    ExactMatrix product = out.sigma.coords.mul(out.sigma_dual.coords.transpose());
    bool annihilates = product.is_zero() &&
                       exactla::rank(out.sigma.coords) + exactla::rank(cx) ==
                           static_cast<int>(outside.size());
    add_check("annihilator_relation", annihilates, "sigma' is not the annihilator of sigma");

    matroid::Matroid sigma_matroid = matroid::Matroid::from_columns(out.sigma.coords);
    matroid::Matroid contracted = m.contract(flat);
    bool sigma_matches = true;
    Mask sub_full = sigma_matroid.full_mask();
    for (Mask s = 0; s <= sub_full && sigma_matches; ++s) {
        sigma_matches = sigma_matroid.rank(s) == contracted.rank(s);
        if (s == sub_full) break;
    }
    add_check("sigma_matroid_is_contraction", sigma_matches, "matroid of sigma differs from M/X");

    matroid::Matroid dual_matroid = matroid::Matroid::from_columns(cx);
    matroid::Matroid deleted_dual = m.dual().remove(flat);
    bool dual_matches = true;
    for (Mask s = 0; s <= sub_full && dual_matches; ++s) {
        dual_matches = dual_matroid.rank(s) == deleted_dual.rank(s);
        if (s == sub_full) break;
    }
    add_check("sigma_dual_matroid_is_deletion", dual_matches,
              "matroid of sigma' differs from M' - X");
    return out;
}

}  // namespace arrdual::dualpair
