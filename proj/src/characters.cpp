#include "gl3/characters.hpp"
#include "gl3/errors.hpp"

#include <string>

namespace gl3 {

DirichletCharacter::DirichletCharacter(i64 M, i64 k) : M_(M), k_(k) {
    if (M < 2 || !is_prime(static_cast<u64>(M)))
        throw DomainError("build_character: modulus " + std::to_string(M) + " is not prime");
    if (k < 0 || k >= M - 1)
        throw DomainError("build_character: index " + std::to_string(k) + " outside [0, M-1)");
    g_ = primitive_root(static_cast<u64>(M)).value;
    log_.assign(static_cast<std::size_t>(M), -1);
    table_.assign(static_cast<std::size_t>(M), cplx(0, 0));
    i64 x = 1;
    for (i64 j = 0; j < M - 1; ++j) {
        log_[x] = j;
        // exact angle k*j/(M-1) reduced mod 1 before the trig call
        table_[x] = e_frac(static_cast<i64>((static_cast<__int128>(k) * j) % (M - 1)), M - 1);
        x = static_cast<i64>(mulmod(static_cast<u64>(x), static_cast<u64>(g_), static_cast<u64>(M)));
    }
}

i64 DirichletCharacter::log(i64 n) const {
    i64 r = log_[static_cast<std::size_t>(mod(n, M_))];
    if (r < 0) throw DomainError("DirichletCharacter::log: argument not a unit");
    return r;
}

DirichletCharacter DirichletCharacter::conj() const {
    return DirichletCharacter(M_, k_ == 0 ? 0 : (M_ - 1) - k_);
}

DirichletCharacter build_character(i64 M, i64 k) { return DirichletCharacter(M, k); }

cplx evaluate(const DirichletCharacter& chi, i64 n) { return chi(n); }

cplx gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw DomainError("gauss_sum: principal character is not primitive");
    const i64 M = chi.modulus();
    cplx s = 0;
    for (i64 a = 1; a < M; ++a) s += chi(a) * e_frac(a, M);
    return s;
}

}  // namespace gl3
