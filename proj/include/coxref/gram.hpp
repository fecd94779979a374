#pragma once

#include <numeric>
#include <vector>

#include "coxref/coxeter_matrix.hpp"
#include "coxref/linalg.hpp"
#include "coxref/number_field.hpp"

namespace coxref {

/// Conductor N of the field Q(2cos(π/N)) holding every Gram entry of `cm`.
/// Labels 2 and 3 (and ∞) give rational entries and do not contribute.
inline int field_conductor(const CoxeterMatrix& cm) {
  int n = 2;
  for (int i = 0; i < cm.rank(); ++i)
    for (int j = i + 1; j < cm.rank(); ++j) {
      int m = cm(i, j);
      if (m != kInf && m >= 4) n = std::lcm(n, m);
    }
  return n;
}

/// The bilinear form B(e_i,e_j) = -cos(π/m_ij), with -1 for m_ij = ∞.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(const CoxeterMatrix& cm)
      : field_(NumberField::get(field_conductor(cm))), doubled_(field_, cm.rank()) {
    for (int i = 0; i < cm.rank(); ++i)
      for (int j = 0; j < cm.rank(); ++j) {
        auto slot = doubled_.entry(i, j);
        if (i == j) {
          slot[0] = 2;
        } else if (cm.is_infinite(i, j)) {
          slot[0] = -2;
        } else {
          auto c = field_->two_cos_pi_over(cm(i, j));
          for (std::size_t t = 0; t < c.size(); ++t) slot[t] = -c[t];
        }
      }
  }

  const FieldPtr& field() const { return field_; }
  int rank() const { return doubled_.size(); }

  ExactScalar operator()(int i, int j) const { return Rational(1, 2) * doubled_.scalar(i, j); }

  /// 2B, whose entries lie in Z[θ].
  const ZMatrix& doubled() const { return doubled_; }

  ZMatrix doubled_submatrix(const Subset& subset) const {
    ZMatrix out(field_, static_cast<int>(subset.size()));
    for (std::size_t a = 0; a < subset.size(); ++a)
      for (std::size_t b = 0; b < subset.size(); ++b) {
        auto src = doubled_.entry(subset[a], subset[b]);
        std::copy(src.begin(), src.end(), out.entry(static_cast<int>(a), static_cast<int>(b)).begin());
      }
    return out;
  }

 private:
  FieldPtr field_;
  ZMatrix doubled_;
};

inline GramMatrix gram_matrix(const CoxeterMatrix& cm) { return GramMatrix(cm); }

/// Exact (positives, negatives, zeros) of B.
inline Inertia gram_signature(const GramMatrix& gm) { return symmetric_inertia(gm.doubled()); }

inline Inertia gram_signature(const GramMatrix& gm, const Subset& subset) {
  return symmetric_inertia(gm.doubled_submatrix(subset));
}

}  // namespace coxref
