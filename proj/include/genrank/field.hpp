#pragma once

#include <cstdint>

namespace genrank {

using Residue = std::int64_t;

class PrimeField {
public:
    // Largest accepted characteristic; keeps int64 dot products exact before reduction.
    static constexpr Residue max_characteristic = Residue{1} << 20;

    explicit PrimeField(Residue characteristic = 2);

    Residue characteristic() const { return p_; }

    Residue reduce(Residue x) const {
        Residue r = x % p_;
        return r < 0 ? r + p_ : r;
    }
    Residue add(Residue a, Residue b) const { return reduce(a + b); }
    Residue sub(Residue a, Residue b) const { return reduce(a - b); }
    Residue mul(Residue a, Residue b) const { return reduce(a * b); }
    Residue neg(Residue a) const { return reduce(-a); }
    Residue inv(Residue a) const;
    Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    Residue p_;
};

bool is_prime(Residue n);

}  // namespace genrank
