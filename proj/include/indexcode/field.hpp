#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "indexcode/errors.hpp"

namespace indexcode {

// Exact arithmetic in GF(q) for small prime powers. Supported orders are all
// primes up to 251 and the prime powers 4, 8, 9, 16, 25, 27.
//
// Elements are integers 0..q-1. For an extension field GF(p^k) the integer
// encodes the coefficients of a degree-<k polynomial over GF(p) in base p,
// least-significant digit = constant term. The modulus polynomial is fixed
// per order so encodings are reproducible:
//
//   GF(4):  x^2 + x + 1        GF(16): x^4 + x + 1
//   GF(8):  x^3 + x + 1        GF(25): x^2 + 2
//   GF(9):  x^2 + 1            GF(27): x^3 + 2x + 1
//
// Fields are immutable after construction and cheap to copy (the tables are
// shared). Two Field values compare equal iff they have the same order.
class Field {
public:
    static Field make(int q);

    static bool supported(int q);

    int q() const { return data_->q; }
    int characteristic() const { return data_->p; }
    int degree() const { return data_->k; }

    // Modulus polynomial coefficients, constant term first, leading 1 last.
    // Empty for prime fields.
    const std::vector<int>& modulus() const { return data_->modulus; }

    int add(int a, int b) const
    {
        check(a);
        check(b);
        if (data_->k == 1)
            return (a + b) % data_->q;
        return data_->add_table[a * data_->q + b];
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int neg(int a) const
    {
        check(a);
        if (data_->k == 1)
            return a == 0 ? 0 : data_->q - a;
        return data_->neg_table[a];
    }

    int mul(int a, int b) const
    {
        check(a);
        check(b);
        if (a == 0 || b == 0)
            return 0;
        if (data_->k == 1)
            return (a * b) % data_->q;
        return data_->exp_table[(data_->log_table[a] + data_->log_table[b]) % (data_->q - 1)];
    }

    int inv(int a) const
    {
        check(a);
        if (a == 0)
            fail(ErrorKind::divide_by_zero, "inverse of zero");
        return data_->inv_table[a];
    }

    int div(int a, int b) const { return mul(a, inv(b)); }

    int pow(int a, long long e) const
    {
        check(a);
        if (e == 0)
            return 1;
        if (a == 0)
            return 0;
        int result = 1;
        int base = a;
        unsigned long long n = static_cast<unsigned long long>(e);
        while (n > 0) {
            if (n & 1)
                result = mul(result, base);
            base = mul(base, base);
            n >>= 1;
        }
        return result;
    }

    bool operator==(const Field& o) const { return data_->q == o.data_->q; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    struct Data {
        int q = 0;
        int p = 0;
        int k = 0;
        std::vector<int> modulus;
        std::vector<std::uint8_t> add_table; // extension fields only, q*q entries
        std::vector<std::uint8_t> neg_table;
        std::vector<std::uint8_t> inv_table;
        std::vector<std::uint8_t> log_table; // log[a] for a != 0
        std::vector<std::uint8_t> exp_table; // exp[i] = g^i, i in 0..q-2
    };

    explicit Field(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    void check(int a) const
    {
        if (a < 0 || a >= data_->q)
            fail(ErrorKind::invalid_param,
                 "element " + std::to_string(a) + " out of range for GF(" +
                     std::to_string(data_->q) + ")");
    }

    std::shared_ptr<const Data> data_;
};

namespace detail {

inline bool is_small_prime(int n)
{
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

struct ExtensionSpec {
    int q;
    int p;
    int k;
    std::vector<int> modulus; // constant term first
};

inline const std::vector<ExtensionSpec>& extension_specs()
{
    static const std::vector<ExtensionSpec> specs = {
        {4, 2, 2, {1, 1, 1}},     // x^2 + x + 1
        {8, 2, 3, {1, 1, 0, 1}},  // x^3 + x + 1
        {9, 3, 2, {1, 0, 1}},     // x^2 + 1
        {16, 2, 4, {1, 1, 0, 0, 1}}, // x^4 + x + 1
        {25, 5, 2, {2, 0, 1}},    // x^2 + 2
        {27, 3, 3, {1, 2, 0, 1}}, // x^3 + 2x + 1
    };
    return specs;
}

// Digit-wise (coefficient-wise) ops on the base-p integer encoding.
inline int digits_add(int a, int b, int p, int k)
{
    int result = 0;
    int weight = 1;
    for (int i = 0; i < k; ++i) {
        const int da = (a / weight) % p;
        const int db = (b / weight) % p;
        result += ((da + db) % p) * weight;
        weight *= p;
    }
    return result;
}

inline int digits_neg(int a, int p, int k)
{
    int result = 0;
    int weight = 1;
    for (int i = 0; i < k; ++i) {
        const int d = (a / weight) % p;
        result += (d == 0 ? 0 : p - d) * weight;
        weight *= p;
    }
    return result;
}

// Polynomial multiplication of encoded elements modulo the modulus polynomial.
inline int poly_mul(int a, int b, const ExtensionSpec& spec)
{
    const int p = spec.p;
    const int k = spec.k;
    std::array<int, 16> prod{}; // degree < 2k-1, k <= 4
    std::array<int, 8> da{}, db{};
    for (int i = 0; i < k; ++i) {
        da[i] = a % p;
        a /= p;
        db[i] = b % p;
        b /= p;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    // Reduce: x^k = -(modulus without leading term).
    for (int d = 2 * k - 2; d >= k; --d) {
        const int coeff = prod[d];
        if (coeff == 0)
            continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i) {
            const int m = spec.modulus[i];
            if (m != 0)
                prod[d - k + i] = (prod[d - k + i] + coeff * (p - m)) % p;
        }
    }
    int result = 0;
    int weight = 1;
    for (int i = 0; i < k; ++i) {
        result += prod[i] * weight;
        weight *= p;
    }
    return result;
}

} // namespace detail

inline bool Field::supported(int q)
{
    if (q <= 251 && detail::is_small_prime(q))
        return true;
    for (const auto& spec : detail::extension_specs())
        if (spec.q == q)
            return true;
    return false;
}

inline Field Field::make(int q)
{
    if (!supported(q))
        fail(ErrorKind::unsupported_order,
             "GF(" + std::to_string(q) + ") is not supported (primes <= 251 and 4, 8, 9, 16, 25, 27)");

    auto data = std::make_shared<Data>();
    data->q = q;

    if (detail::is_small_prime(q)) {
        data->p = q;
        data->k = 1;
        data->inv_table.assign(q, 0);
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if ((a * b) % q == 1) {
                    data->inv_table[a] = static_cast<std::uint8_t>(b);
                    break;
                }
        return Field(std::move(data));
    }

    const detail::ExtensionSpec* spec = nullptr;
    for (const auto& s : detail::extension_specs())
        if (s.q == q)
            spec = &s;
    data->p = spec->p;
    data->k = spec->k;
    data->modulus = spec->modulus;

    data->add_table.assign(q * q, 0);
    data->neg_table.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        data->neg_table[a] = static_cast<std::uint8_t>(detail::digits_neg(a, spec->p, spec->k));
        for (int b = 0; b < q; ++b)
            data->add_table[a * q + b] =
                static_cast<std::uint8_t>(detail::digits_add(a, b, spec->p, spec->k));
    }

    // Find the smallest multiplicative generator and fill log/antilog tables.
    data->log_table.assign(q, 0);
    data->exp_table.assign(q - 1, 0);
    for (int g = 2; g < q; ++g) {
        int x = 1;
        int order = 0;
        do {
            x = detail::poly_mul(x, g, *spec);
            ++order;
        } while (x != 1);
        if (order == q - 1) {
            x = 1;
            for (int i = 0; i < q - 1; ++i) {
                data->exp_table[i] = static_cast<std::uint8_t>(x);
                data->log_table[x] = static_cast<std::uint8_t>(i);
                x = detail::poly_mul(x, g, *spec);
            }
            break;
        }
    }

    data->inv_table.assign(q, 0);
    for (int a = 1; a < q; ++a)
        data->inv_table[a] = data->exp_table[(q - 1 - data->log_table[a]) % (q - 1)];

    return Field(std::move(data));
}

} // namespace indexcode
