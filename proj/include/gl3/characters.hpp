#pragma once

#include <vector>

#include "gl3/arith.hpp"
#include "gl3/numeric.hpp"

namespace gl3 {

// Dirichlet character mod a prime M with chi(g) = e(k/(M-1)), g the smallest
// primitive root. Values are tabulated at construction.
class DirichletCharacter {
public:
    DirichletCharacter() = default;
    DirichletCharacter(i64 M, i64 k);

    i64 modulus() const { return M_; }
    i64 index() const { return k_; }
    Residue generator() const { return {g_, M_}; }
    bool is_principal() const { return k_ == 0; }
    bool is_primitive() const { return k_ != 0; }

    cplx operator()(i64 n) const { return table_[static_cast<std::size_t>(mod(n, M_))]; }
    // discrete log of a unit n mod M with respect to the generator
    i64 log(i64 n) const;
    DirichletCharacter conj() const;
    const std::vector<cplx>& table() const { return table_; }

private:
    i64 M_ = 1, k_ = 0, g_ = 1;
    std::vector<i64> log_;
    std::vector<cplx> table_;
};

DirichletCharacter build_character(i64 M, i64 k);
cplx evaluate(const DirichletCharacter& chi, i64 n);
cplx gauss_sum(const DirichletCharacter& chi);

}  // namespace gl3
