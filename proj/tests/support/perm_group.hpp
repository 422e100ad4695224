#pragma once

#include "help2p/character_table.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace help2p::testing {

using Perm = std::vector<int>;
using Complex = std::complex<double>;

// A small permutation group with its character table computed from scratch:
// class sums, eigenvectors of the class algebra (floating point), then exact
// values recovered from rounded eigenvalue multiplicities.
struct BruteGroup {
    std::string name;
    std::vector<Perm> elements;                 // elements[0] is the identity
    std::vector<std::vector<int>> product;      // product[a][b] = index of a*b
    std::vector<int> inverse;
    std::vector<std::size_t> class_of;          // element -> class index
    std::vector<int> representative;            // class -> element
    std::vector<std::vector<Complex>> numeric;  // character -> class -> value
    std::unique_ptr<CharacterTable> table;

    int order_of(int element) const;
    int power(int element, std::int64_t e) const;
};

BruteGroup brute_force(const std::string& name, int degree, const std::vector<Perm>& generators);

BruteGroup symmetric_group(int n);
BruteGroup alternating_group(int n);
BruteGroup cyclic_group(int n);
BruteGroup trivial_group();

// Multiplicity of exp(2 pi i k / o(g)) as an eigenvalue of g in the
// representation affording character chi, read off the regular representation:
// rank(e_chi * P) / chi(1) with P the spectral projector of left multiplication.
int regular_rep_multiplicity(const BruteGroup& g, std::size_t chi, int element, std::int64_t k);

}  // namespace help2p::testing
