#include "arrdual/matroid.hpp"

#include "arrdual/errors.hpp"

#include <algorithm>
#include <sstream>

namespace arrdual::matroid {

int RankOracle::rank(Mask subset) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(subset);
        if (it != memo_.end()) return it->second;
    }
    int r = compute(subset);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(subset, r);
    return r;
}

namespace {

class ColumnRank final : public RankOracle {
public:
    explicit ColumnRank(ExactMatrix m) : m_(std::move(m)) {}
    int size() const override { return m_.cols(); }

protected:
    int compute(Mask subset) const override {
        std::vector<int> cols;
        for (int j = 0; j < m_.cols(); ++j)
            if (contains(subset, j)) cols.push_back(j);
        if (cols.empty()) return 0;
        return exactla::rank(m_.select_columns(cols));
    }

private:
    ExactMatrix m_;
};

class MinorRank final : public RankOracle {
public:
    MinorRank(std::shared_ptr<const RankOracle> parent, std::vector<int> map,
              Mask contracted, int contracted_rank)
        : parent_(std::move(parent)),
          map_(std::move(map)),
          contracted_(contracted),
          contracted_rank_(contracted_rank) {}

    int size() const override { return static_cast<int>(map_.size()); }

protected:
    int compute(Mask subset) const override {
        Mask parent_set = contracted_;
        for (size_t i = 0; i < map_.size(); ++i)
            if (contains(subset, static_cast<int>(i))) parent_set |= bit(map_[i]);
        return parent_->rank(parent_set) - contracted_rank_;
    }

private:
    std::shared_ptr<const RankOracle> parent_;
    std::vector<int> map_;
    Mask contracted_;
    int contracted_rank_;
};

class DualRank final : public RankOracle {
public:
    explicit DualRank(std::shared_ptr<const RankOracle> parent) : parent_(std::move(parent)) {
        full_ = parent_->size() == 64 ? ~Mask{0} : (bit(parent_->size()) - 1);
        full_rank_ = parent_->rank(full_);
    }
    int size() const override { return parent_->size(); }

protected:
    int compute(Mask subset) const override {
        return popcount(subset) + parent_->rank(full_ & ~subset) - full_rank_;
    }

private:
    std::shared_ptr<const RankOracle> parent_;
    Mask full_ = 0;
    int full_rank_ = 0;
};

}  // namespace

int Matroid::rank(Mask subset) const {
    if (!oracle_) return 0;
    if (subset & ~full_mask()) throw DomainError("subset outside ground set");
    return oracle_->rank(subset);
}

Mask Matroid::closure(Mask subset) const {
    int r = rank(subset);
    Mask cl = subset;
    for (int j = 0; j < size(); ++j) {
        if (contains(subset, j)) continue;
        if (rank(subset | bit(j)) == r) cl |= bit(j);
    }
    return cl;
}

Matroid Matroid::from_columns(const ExactMatrix& m) {
    if (m.cols() > 62) throw DomainError("ground sets beyond 62 elements unsupported");
    std::vector<int> labels(m.cols());
    for (int j = 0; j < m.cols(); ++j) labels[j] = j;
    return Matroid(std::make_shared<ColumnRank>(m), std::move(labels));
}

Matroid Matroid::dual() const {
    return Matroid(std::make_shared<DualRank>(oracle_), labels_);
}

Matroid Matroid::contract(Mask x) const {
    if (x == 0 || x == full_mask()) throw DomainError("contraction set must be proper and nonempty");
    if (x & ~full_mask()) throw DomainError("contraction set outside ground set");
    std::vector<int> map;
    std::vector<int> labels;
    for (int j = 0; j < size(); ++j)
        if (!contains(x, j)) {
            map.push_back(j);
            labels.push_back(labels_[j]);
        }
    return Matroid(std::make_shared<MinorRank>(oracle_, std::move(map), x, oracle_->rank(x)),
                   std::move(labels));
}

Matroid Matroid::remove(Mask x) const {
    if (x == 0 || x == full_mask()) throw DomainError("deletion set must be proper and nonempty");
    if (x & ~full_mask()) throw DomainError("deletion set outside ground set");
    std::vector<int> map;
    std::vector<int> labels;
    for (int j = 0; j < size(); ++j)
        if (!contains(x, j)) {
            map.push_back(j);
            labels.push_back(labels_[j]);
        }
    return Matroid(std::make_shared<MinorRank>(oracle_, std::move(map), 0, 0), std::move(labels));
}

long long TuttePolynomial::evaluate(long long x, long long y) const {
    long long total = 0;
    for (const auto& [ij, c] : coeff) {
        long long term = c;
        for (int p = 0; p < ij.first; ++p) term *= x;
        for (int p = 0; p < ij.second; ++p) term *= y;
        total += term;
    }
    return total;
}

TuttePolynomial TuttePolynomial::swapped_variables() const {
    TuttePolynomial out;
    for (const auto& [ij, c] : coeff) out.coeff[{ij.second, ij.first}] = c;
    return out;
}

std::string TuttePolynomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second;
        if (it->first.first) os << " x^" << it->first.first;
        if (it->first.second) os << " y^" << it->first.second;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

TuttePolynomial tutte_scalar(long long c) {
    TuttePolynomial t;
    if (c) t.coeff[{0, 0}] = c;
    return t;
}

TuttePolynomial tutte_add(const TuttePolynomial& a, const TuttePolynomial& b) {
    TuttePolynomial out = a;
    for (const auto& [ij, c] : b.coeff) {
        auto [it, fresh] = out.coeff.emplace(ij, c);
        if (!fresh && (it->second += c) == 0) out.coeff.erase(it);
    }
    return out;
}

TuttePolynomial tutte_shift(const TuttePolynomial& a, int dx, int dy) {
    TuttePolynomial out;
    for (const auto& [ij, c] : a.coeff) out.coeff[{ij.first + dx, ij.second + dy}] = c;
    return out;
}

// Deletion-contraction state: elements of `present` are still live, the
// elements of `contracted` have been contracted. The canonical memo key
// replaces `contracted` by its closure, which determines the minor exactly.
class TutteEngine {
public:
    explicit TutteEngine(const Matroid& m) : m_(m) {}

    TuttePolynomial run(Mask present, Mask contracted) {
        if (present == 0) return tutte_scalar(1);
        auto key = std::make_pair(present, m_.closure(contracted));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        int e = std::countr_zero(present);
        Mask rest = present & ~bit(e);
        int rc = m_.rank(contracted);
        bool loop = m_.rank(contracted | bit(e)) == rc;
        TuttePolynomial result;
        if (loop) {
            result = tutte_shift(run(rest, contracted), 0, 1);
        } else {
            int full_minor = m_.rank(present | contracted) - rc;
            int without_e = m_.rank(rest | contracted) - rc;
            bool isthmus = without_e == full_minor - 1;
            if (isthmus)
                result = tutte_shift(run(rest, contracted | bit(e)), 1, 0);
            else
                result = tutte_add(run(rest, contracted), run(rest, contracted | bit(e)));
        }
        memo_.emplace(key, result);
        return result;
    }

private:
    const Matroid& m_;
    std::map<std::pair<Mask, Mask>, TuttePolynomial> memo_;
};

}  // namespace

TuttePolynomial tutte(const Matroid& m) {
    TutteEngine engine(m);
    return engine.run(m.full_mask(), 0);
}

long long BetaEngine::beta_minor(Mask present, Mask contracted) {
    if (present == 0) return 0;
    auto key = std::make_pair(present, m_.closure(contracted));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    int e = std::countr_zero(present);
    Mask rest = present & ~bit(e);
    int rc = m_.rank(contracted);
    long long result;
    if (m_.rank(contracted | bit(e)) == rc) {
        // loop: T = y T', no x^1 y^0 term survives
        result = 0;
    } else {
        int full_minor = m_.rank(present | contracted) - rc;
        int without_e = m_.rank(rest | contracted) - rc;
        if (without_e == full_minor - 1) {
            // isthmus: T = x T(M/e), so b10 = b00(M/e), zero unless M/e is empty
            result = (rest == 0) ? 1 : 0;
        } else {
            result = beta_minor(rest, contracted) + beta_minor(rest, contracted | bit(e));
        }
    }
    memo_.emplace(key, result);
    return result;
}

long long beta_invariant(const Matroid& m) {
    BetaEngine engine(m);
    return engine.beta();
}

std::vector<FlatRecord> flats(const Matroid& m) {
    const Mask full = m.full_mask();
    BetaEngine engine(m);
    std::vector<FlatRecord> out;
    for (Mask x = 1; x <= full; ++x) {
        if (!m.is_flat(x)) continue;
        FlatRecord rec;
        rec.flat = x;
        rec.length = (x == full) ? 0 : engine.beta_minor(full & ~x, x);
        rec.width = engine.beta_minor(x, 0);
        rec.volume = rec.length * rec.width;
        rec.spacious = rec.volume != 0;
        out.push_back(rec);
    }
    return out;
}

std::vector<ParallelismRecord> parallelisms(const Matroid& m) {
    const Mask full = m.full_mask();
    const int n = m.size();
    BetaEngine engine(m);
    std::vector<ParallelismRecord> out;
    for (Mask x = 1; x <= full; ++x) {
        if (!m.is_flat(x)) continue;
        long long length = (x == full) ? 0 : engine.beta_minor(full & ~x, x);
        int rx = m.rank(x);
        for (int a = 0; a < n; ++a) {
            if (contains(x, a)) continue;
            for (int b = 0; b < n; ++b) {
                if (b == a || contains(x, b)) continue;
                if (m.rank(bit(a) | bit(b)) != 2) continue;
                if (m.rank(x | bit(a) | bit(b)) != rx + 1) continue;
                ParallelismRecord rec;
                rec.flat = x;
                rec.a = a;
                rec.b = b;
                rec.width = engine.beta_minor(x | bit(a) | bit(b), 0);
                rec.volume = length * rec.width;
                out.push_back(rec);
            }
        }
    }
    return out;
}

bool DualityReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const DualityCheck& c) { return c.pass; });
}

namespace {

std::string mask_str(Mask m, int n) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if (contains(m, i)) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(i);
        }
    return s + "}";
}

}  // namespace

DualityReport verify_duality_suite(const Matroid& m) {
    DualityReport report;
    const Mask full = m.full_mask();
    const int n = m.size();
    Matroid md = m.dual();

    {
        DualityCheck c{"tutte_swap", true, ""};
        TuttePolynomial tm = tutte(m);
        TuttePolynomial td = tutte(md);
        if (tm != td.swapped_variables()) {
            c.pass = false;
            c.detail = "T(M;x,y)=" + tm.str() + " vs T(M';y,x)=" + td.swapped_variables().str();
        }
        report.checks.push_back(c);
    }
    {
        DualityCheck c{"corank_nullity_complement", true, ""};
        for (Mask x = 0; x <= full && c.pass; ++x) {
            if (m.corank(x) != md.nullity(full & ~x)) {
                c.pass = false;
                c.detail = "fails at X=" + mask_str(x, n);
            }
            if (x == full) break;
        }
        report.checks.push_back(c);
    }
    {
        DualityCheck c{"contraction_deletion_dual", true, ""};
        for (Mask x = 1; x < full && c.pass; ++x) {
            Matroid mc = m.contract(x);
            Matroid dd = md.remove(x).dual();
            Mask sub_full = mc.full_mask();
            for (Mask s = 0; s <= sub_full; ++s) {
                if (mc.rank(s) != dd.rank(s)) {
                    c.pass = false;
                    c.detail = "M/X vs (M'-X)' differ at X=" + mask_str(x, n);
                    break;
                }
                if (s == sub_full) break;
            }
        }
        report.checks.push_back(c);
    }
    {
        DualityCheck c{"volume_duality_flats", true, ""};
        BetaEngine em(m);
        BetaEngine ed(md);
        for (Mask x = 1; x <= full && c.pass; ++x) {
            if (x == full) break;
            int size_x = popcount(x);
            if (size_x <= 1 || size_x >= n - 1) continue;
            if (!m.is_flat(x)) continue;
            long long l = em.beta_minor(full & ~x, x);
            long long w = em.beta_minor(x, 0);
            if (l * w == 0) continue;  // only spacious flats dualize
            Mask xc = full & ~x;
            if (!md.is_flat(xc)) {
                c.pass = false;
                c.detail = "complement of spacious flat " + mask_str(x, n) + " not a flat in M'";
                break;
            }
            long long ld = ed.beta_minor(x, xc);
            long long wd = ed.beta_minor(xc, 0);
            if (l != wd || w != ld || l * w != ld * wd) {
                c.pass = false;
                c.detail = "volume duality fails at X=" + mask_str(x, n);
            }
        }
        report.checks.push_back(c);
    }
    {
        DualityCheck c{"volume_duality_parallelisms", true, ""};
        BetaEngine em(m);
        BetaEngine ed(md);
        for (const ParallelismRecord& p : parallelisms(m)) {
            if (popcount(p.flat) >= n - 2) continue;
            if (m.corank(full & ~(bit(p.a) | bit(p.b))) != 0) continue;
            if (p.volume == 0) continue;
            Mask ab = bit(p.a) | bit(p.b);
            Mask xhat = full & ~(p.flat | ab);
            // dual triple must be a parallelism in M'
            bool dual_par = md.is_flat(xhat) && md.rank(ab) == 2 &&
                            md.rank(xhat | ab) == md.rank(xhat) + 1;
            if (!dual_par) {
                c.pass = false;
                c.detail = "dual triple not a parallelism at X=" + mask_str(p.flat, n);
                break;
            }
            long long l = em.beta_minor(full & ~p.flat, p.flat);
            long long wd_triple = ed.beta_minor(xhat | ab, 0);
            long long ld = ed.beta_minor(full & ~xhat, xhat);
            if (l != wd_triple || p.width != ld || p.volume != ld * wd_triple) {
                c.pass = false;
                c.detail = "parallelism volume duality fails at X=" + mask_str(p.flat, n);
                break;
            }
        }
        report.checks.push_back(c);
    }
    {
        DualityCheck c{"singleton_length_sum", true, ""};
        if (n >= 2) {
            long long b10 = beta_invariant(m);
            BetaEngine em(m);
            BetaEngine ed(md);
            for (int e = 0; e < n && c.pass; ++e) {
                Mask x = bit(e);
                if (!m.is_flat(x)) continue;
                // the statement splits T(M) at e, so e must be neither a
                // loop nor an isthmus
                if (m.is_loop(e) || m.is_isthmus(e)) continue;
                long long l = em.beta_minor(full & ~x, x);
                if (md.is_flat(x)) {
                    long long ld = ed.beta_minor(full & ~x, x);
                    if (l + ld != b10) {
                        c.pass = false;
                        c.detail = "l_M + l_M' != b10 at e=" + std::to_string(e);
                    }
                } else if (l != b10) {
                    c.pass = false;
                    c.detail = "l_M != b10 at non-dual-flat e=" + std::to_string(e);
                }
            }
        }
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace arrdual::matroid
