#pragma once

#include "arrdual/exact_matrix.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arrdual::matroid {

using exactla::ExactMatrix;

// Subsets of the ground set as bitmasks over positions 0..n-1.
using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline bool contains(Mask m, int i) { return (m >> i) & 1; }

// Memoizing rank oracle; implementations are immutable, the memo table is
// internally synchronized so concurrent queries are safe.
class RankOracle {
public:
    virtual ~RankOracle() = default;
    int rank(Mask subset) const;
    virtual int size() const = 0;

protected:
    virtual int compute(Mask subset) const = 0;

private:
    mutable std::unordered_map<Mask, int> memo_;
    mutable std::mutex mu_;
};

class Matroid {
public:
    Matroid() = default;

    int size() const { return oracle_ ? oracle_->size() : 0; }
    Mask full_mask() const { return size() == 64 ? ~Mask{0} : (bit(size()) - 1); }
    const std::vector<int>& labels() const { return labels_; }

    int rank(Mask subset) const;
    int rank() const { return rank(full_mask()); }
    int corank(Mask subset) const { return rank() - rank(subset); }
    int nullity(Mask subset) const { return popcount(subset) - rank(subset); }

    Mask closure(Mask subset) const;
    bool is_flat(Mask subset) const { return closure(subset) == subset; }
    bool is_loop(int e) const { return rank(bit(e)) == 0; }
    bool is_isthmus(int e) const { return rank(full_mask() & ~bit(e)) == rank() - 1; }

    Matroid dual() const;
    Matroid contract(Mask x) const;
    Matroid remove(Mask x) const;  // deletion M - x

    static Matroid from_columns(const ExactMatrix& m);

private:
    Matroid(std::shared_ptr<const RankOracle> oracle, std::vector<int> labels)
        : oracle_(std::move(oracle)), labels_(std::move(labels)) {}

    std::shared_ptr<const RankOracle> oracle_;
    std::vector<int> labels_;
};

inline Matroid matroid_from_columns(const ExactMatrix& m) { return Matroid::from_columns(m); }

struct TuttePolynomial {
    // (i, j) -> coefficient of x^i y^j; zero coefficients are absent.
    std::map<std::pair<int, int>, long long> coeff;

    long long coefficient(int i, int j) const {
        auto it = coeff.find({i, j});
        return it == coeff.end() ? 0 : it->second;
    }
    long long evaluate(long long x, long long y) const;
    TuttePolynomial swapped_variables() const;
    bool operator==(const TuttePolynomial&) const = default;
    std::string str() const;
};

// Tutte polynomial by deletion-contraction (loop factor y, isthmus factor x),
// memoized on (remaining set, closure of contracted set).
TuttePolynomial tutte(const Matroid& m);

// Shares one deletion-contraction memo across many minor queries of the same
// matroid; used for the discrete length/width/volume calculus where b^{10} of
// hundreds of related minors is needed.
class BetaEngine {
public:
    explicit BetaEngine(const Matroid& m) : m_(m) {}

    // b^{10} of (M restricted to present+contracted) / contracted.
    long long beta_minor(Mask present, Mask contracted);
    long long beta() { return beta_minor(m_.full_mask(), 0); }

private:
    const Matroid& m_;
    std::map<std::pair<Mask, Mask>, long long> memo_;
};

long long beta_invariant(const Matroid& m);

struct FlatRecord {
    Mask flat = 0;
    long long length = 0;  // b^{10} of M/X (0 for X = J by convention)
    long long width = 0;   // b^{10} of M restricted to X
    long long volume = 0;
    bool spacious = false;
};

// All flats X with |X| >= 1, each with discrete length/width/volume.
std::vector<FlatRecord> flats(const Matroid& m);

struct ParallelismRecord {
    Mask flat = 0;
    int a = -1;
    int b = -1;
    long long width = 0;   // b^{10} of M restricted to X + {a,b}
    long long volume = 0;  // length(X) * width
};

// All ordered triples (X, a, b) with X a flat, a,b outside X, rank{a,b} = 2
// and rank(X + {a,b}) = rank(X) + 1.
std::vector<ParallelismRecord> parallelisms(const Matroid& m);

struct DualityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DualityReport {
    std::vector<DualityCheck> checks;
    bool all_pass() const;
};

// Exhaustive comparison of a matroid against its dual: Tutte swap,
// corank/nullity complementation, contraction/deletion duality, volume
// duality of spacious flats and parallelisms, and the singleton length sum.
DualityReport verify_duality_suite(const Matroid& m);

}  // namespace arrdual::matroid
