#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fss/field.hpp"
#include "fss/linalg.hpp"
#include "fss/matrix.hpp"

namespace fss {

inline Matrix reduced(const Field& F, Matrix m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = F.reduce(m.at(i, j));
    return m;
}

// A based filtered cochain complex over an exact field.  Each degree n
// carries an ordered list of integer weights, one per basis vector, and
// F_p A^n is the span of the degree-n basis vectors of weight <= p.  The
// differential d_n : A^n -> A^{n+1} has one column per degree-n basis
// vector; it must preserve the filtration (every nonzero entry has row
// weight <= column weight) and square to zero.
class BasedFilteredComplex {
  public:
    BasedFilteredComplex(Field field, int n_min, std::vector<std::vector<long>> weights,
                         std::vector<Matrix> diffs)
        : field_(std::move(field)), n_min_(n_min), weights_(std::move(weights)), d_(std::move(diffs)) {
        if (d_.size() != weights_.size())
            throw input_error("complex: one differential per stored degree required");
        for (size_t k = 0; k < d_.size(); ++k) {
            int next = (k + 1 < weights_.size()) ? int(weights_[k + 1].size()) : 0;
            if (d_[k].rows() != next || d_[k].cols() != int(weights_[k].size()))
                throw input_error("complex: differential shape mismatch in degree " +
                                  std::to_string(n_min_ + int(k)));
            d_[k] = reduced(field_, d_[k]);
        }
    }

    static BasedFilteredComplex empty(const Field& field) {
        return BasedFilteredComplex(field, 0, {}, {});
    }

    const Field& field() const { return field_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_min_ + int(weights_.size()) - 1; }
    bool in_window(int n) const { return n >= n_min() && n <= n_max(); }

    int rank(int n) const { return in_window(n) ? int(weights_[n - n_min_].size()) : 0; }

    const std::vector<long>& weights(int n) const {
        static const std::vector<long> none;
        return in_window(n) ? weights_[n - n_min_] : none;
    }
    long weight(int n, int i) const { return weights(n).at(i); }

    Matrix d(int n) const {
        if (in_window(n)) return d_[n - n_min_];
        return Matrix(rank(n + 1), rank(n));
    }

    bool operator==(const BasedFilteredComplex& o) const {
        return field_.id() == o.field_.id() && n_min_ == o.n_min_ && weights_ == o.weights_ &&
               d_ == o.d_;
    }
    bool operator!=(const BasedFilteredComplex& o) const { return !(*this == o); }

    int total_rank() const {
        int t = 0;
        for (const auto& w : weights_) t += int(w.size());
        return t;
    }

    // Least / greatest weight present anywhere; nullopt when the complex is zero.
    std::optional<long> min_weight() const {
        std::optional<long> m;
        for (const auto& ws : weights_)
            for (long w : ws)
                if (!m || w < *m) m = w;
        return m;
    }
    std::optional<long> max_weight() const {
        std::optional<long> m;
        for (const auto& ws : weights_)
            for (long w : ws)
                if (!m || w > *m) m = w;
        return m;
    }

  private:
    Field field_;
    int n_min_;
    std::vector<std::vector<long>> weights_;
    std::vector<Matrix> d_;
};

// Span of the degree-n basis vectors of weight <= p. The coordinate
// columns are already in canonical echelon form.
inline Subspace filtration_subspace(const BasedFilteredComplex& A, long p, int n) {
    int r = A.rank(n);
    const auto& ws = A.weights(n);
    std::vector<int> cols;
    for (int j = 0; j < r; ++j)
        if (ws[j] <= p) cols.push_back(j);
    Matrix basis(r, int(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) basis.at(cols[c], int(c)) = 1;
    return Subspace{r, basis};
}

inline std::vector<std::string> validate(const BasedFilteredComplex& A) {
    std::vector<std::string> bad;
    const Field& F = A.field();
    for (int n = A.n_min(); n <= A.n_max(); ++n) {
        Matrix dn = A.d(n);
        for (int i = 0; i < dn.rows(); ++i)
            for (int j = 0; j < dn.cols(); ++j)
                if (dn.at(i, j) != 0 && A.weight(n + 1, i) > A.weight(n, j))
                    bad.push_back("d raises weight at degree " + std::to_string(n) + " entry (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        if (A.rank(n + 2) > 0 && A.rank(n) > 0 && !mul(F, A.d(n + 1), dn).is_zero())
            bad.push_back("d*d != 0 out of degree " + std::to_string(n));
    }
    return bad;
}

// A degree-0 filtration-preserving chain map.  Maps are stored per degree
// with shape rank_target(n) x rank_source(n); degrees without a stored
// matrix act as zero.
class FilteredMorphism {
  public:
    FilteredMorphism(BasedFilteredComplex source, BasedFilteredComplex target,
                     std::map<int, Matrix> maps)
        : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
        if (!(source_.field().id() == target_.field().id()))
            throw input_error("morphism: source and target fields differ");
        for (auto& [n, m] : maps_) {
            if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n))
                throw input_error("morphism: map shape mismatch in degree " + std::to_string(n));
            m = reduced(source_.field(), m);
        }
    }

    const BasedFilteredComplex& source() const { return source_; }
    const BasedFilteredComplex& target() const { return target_; }
    const Field& field() const { return source_.field(); }

    Matrix map(int n) const {
        auto it = maps_.find(n);
        if (it != maps_.end()) return it->second;
        return Matrix(target_.rank(n), source_.rank(n));
    }

    // Degrees outside [n_min, n_max] carry only zero-rank spaces.
    int n_min() const { return std::min(source_.n_min(), target_.n_min()); }
    int n_max() const { return std::max(source_.n_max(), target_.n_max()); }

  private:
    BasedFilteredComplex source_, target_;
    std::map<int, Matrix> maps_;
};

inline std::vector<std::string> validate_morphism(const FilteredMorphism& f) {
    std::vector<std::string> bad;
    const Field& F = f.field();
    const auto& A = f.source();
    const auto& B = f.target();
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        Matrix fn = f.map(n);
        for (int i = 0; i < fn.rows(); ++i)
            for (int j = 0; j < fn.cols(); ++j)
                if (fn.at(i, j) != 0 && B.weight(n, i) > A.weight(n, j))
                    bad.push_back("map raises weight at degree " + std::to_string(n) + " entry (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        if (!sub(F, mul(F, B.d(n), fn), mul(F, f.map(n + 1), A.d(n))).is_zero())
            bad.push_back("chain condition fails out of degree " + std::to_string(n));
    }
    return bad;
}

inline FilteredMorphism identity_morphism(const BasedFilteredComplex& A) {
    std::map<int, Matrix> maps;
    for (int n = A.n_min(); n <= A.n_max(); ++n)
        if (A.rank(n) > 0) maps.emplace(n, Matrix::identity(A.rank(n)));
    return FilteredMorphism(A, A, std::move(maps));
}

inline FilteredMorphism zero_morphism(const BasedFilteredComplex& A, const BasedFilteredComplex& B) {
    return FilteredMorphism(A, B, {});
}

inline FilteredMorphism make_morphism(const BasedFilteredComplex& A, const BasedFilteredComplex& B,
                                      std::map<int, Matrix> maps) {
    return FilteredMorphism(A, B, std::move(maps));
}

inline FilteredMorphism compose(const FilteredMorphism& g, const FilteredMorphism& f) {
    if (f.target() != g.source()) throw input_error("compose: middle objects differ");
    const Field& F = f.field();
    std::map<int, Matrix> maps;
    for (int n = std::min(f.n_min(), g.n_min()); n <= std::max(f.n_max(), g.n_max()); ++n) {
        Matrix m = mul(F, g.map(n), f.map(n));
        if (m.rows() > 0 && m.cols() > 0) maps.emplace(n, std::move(m));
    }
    return FilteredMorphism(f.source(), g.target(), std::move(maps));
}

inline bool morphisms_equal(const FilteredMorphism& f, const FilteredMorphism& g) {
    if (f.source() != g.source() || f.target() != g.target()) return false;
    const Field& F = f.field();
    for (int n = std::min(f.n_min(), g.n_min()); n <= std::max(f.n_max(), g.n_max()); ++n)
        if (!sub(F, f.map(n), g.map(n)).is_zero()) return false;
    return true;
}

inline FilteredMorphism morphism_sum(const FilteredMorphism& f, const FilteredMorphism& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw input_error("morphism_sum: shape mismatch");
    const Field& F = f.field();
    std::map<int, Matrix> maps;
    for (int n = std::min(f.n_min(), g.n_min()); n <= std::max(f.n_max(), g.n_max()); ++n) {
        Matrix m = add(F, f.map(n), g.map(n));
        if (m.rows() > 0 && m.cols() > 0) maps.emplace(n, std::move(m));
    }
    return FilteredMorphism(f.source(), f.target(), std::move(maps));
}

inline FilteredMorphism morphism_scale(const Scalar& c, const FilteredMorphism& f) {
    const Field& F = f.field();
    std::map<int, Matrix> maps;
    for (int n = f.n_min(); n <= f.n_max(); ++n) {
        Matrix m = scale(F, c, f.map(n));
        if (m.rows() > 0 && m.cols() > 0) maps.emplace(n, std::move(m));
    }
    return FilteredMorphism(f.source(), f.target(), std::move(maps));
}

}  // namespace fss
