#include "genrank/field.hpp"

#include <string>

#include "genrank/error.hpp"

namespace genrank {

bool is_prime(Residue n) {
    if (n < 2) return false;
    for (Residue d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(Residue characteristic) : p_(characteristic) {
    if (!is_prime(characteristic))
        throw InputError("field characteristic " + std::to_string(characteristic) + " is not prime");
    if (characteristic >= max_characteristic)
        throw InputError("field characteristic " + std::to_string(characteristic) + " exceeds 2^20");
}

Residue PrimeField::inv(Residue a) const {
    a = reduce(a);
    if (a == 0) throw std::domain_error("inverse of zero");
    Residue result = 1, base = a, e = p_ - 2;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

}  // namespace genrank
