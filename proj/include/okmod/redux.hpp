#pragma once
#include "okmod/ideal.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace okmod {

// a basis of an ideal with what is needed to read off coordinates:
// basis rows = L / den, coordinates of x = (x * den) * adj / det
struct IdealBasis {
    IntMatrix L;
    Int den;
    IntMatrix adj;
    Int det;
};

// reduced (and HNF) bases of ideals, keyed by the canonical ideal; safe for
// concurrent use
class ReducedBasisCache {
  public:
    std::shared_ptr<const IdealBasis> reduced(const NumberField &K, const FractionalIdeal &a);
    std::shared_ptr<const IdealBasis> hermite(const FractionalIdeal &a);
    size_t size() const;

  private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const IdealBasis>> red_, her_;
};

using PseudoRow = std::vector<FieldElement>;

// alpha - result in a; coordinates of the result on the reduced basis of a
// lie in (-1/2, 1/2]
FieldElement reduce_mod_ideal(const NumberField &K, const FieldElement &alpha,
                              const FractionalIdeal &a, ReducedBasisCache *cache = nullptr);

// same on the HNF basis with coordinates in [0, 1): a canonical residue
FieldElement reduce_canonical(const NumberField &K, const FieldElement &alpha,
                              const FractionalIdeal &a, ReducedBasisCache *cache = nullptr);

// (row, a) -> (row', a') with a row = a' row', a' integral of small norm
struct NormalizedRow {
    PseudoRow row;
    FractionalIdeal ideal;
    FieldElement scale; // row' = scale * row
};
NormalizedRow normalize_row(const NumberField &K, const PseudoRow &row, const FractionalIdeal &a);

} // namespace okmod
