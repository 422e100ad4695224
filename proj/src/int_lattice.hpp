#pragma once

#include "help2p/arith.hpp"

#include <optional>
#include <vector>

namespace help2p::detail {

using IntVector = std::vector<Integer>;

// Sublattice of Z^dim cut out by linear congruences and equalities, kept as a
// list of basis columns.
class LatticeBuilder {
public:
    explicit LatticeBuilder(std::size_t dim);

    // Keeps v with row . v = 0 (mod modulus).
    void add_congruence(const IntVector& row, const Integer& modulus);
    // Keeps v with row . v = 0.
    void add_equality(const IntVector& row);

    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& basis() const { return columns_; }

private:
    void hermite_reduce();

    std::size_t dim_;
    std::vector<IntVector> columns_;
};

// Integer points x with (x, 1) in the lattice: x = offset + sum z_i generators[i].
struct AffineLattice {
    IntVector offset;
    std::vector<IntVector> generators;  // linearly independent
};

// Slices a lattice in Z^(d+1) at last coordinate 1; nullopt if the slice is empty.
std::optional<AffineLattice> slice_last_coordinate(const std::vector<IntVector>& columns, std::size_t dim);

// LLL with delta = 99/100 over exact rationals; columns stay a basis of the same lattice.
void lll_reduce(std::vector<IntVector>& columns);

// Shortens `offset` modulo the lattice spanned by `columns` (Babai nearest plane).
void reduce_offset(IntVector& offset, const std::vector<IntVector>& columns);

}  // namespace help2p::detail
