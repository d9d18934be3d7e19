#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "indexcode/errors.hpp"
#include "indexcode/field.hpp"
#include "indexcode/instance.hpp"
#include "indexcode/linalg.hpp"
#include "indexcode/rational.hpp"

namespace indexcode {

// Coding-gain bracket computed from the has-set sizes alone: with L the
// largest and ell the smallest has set, the gain n/OPT lies in
// [n/(n-ell), L+1], equivalently ceil(n/(L+1)) <= OPT <= n-ell.
struct BoundsReport {
    int n = 0;
    int max_has = 0; // L
    int min_has = 0; // ell
    Rational gain_lower;
    Rational gain_upper;
    int opt_lower = 0;
    int opt_upper = 0;
};

inline BoundsReport gain_bounds(const Instance& inst)
{
    const NormalizedInstance norm = normalize(inst);
    const Instance& ni = norm.instance;
    if (ni.clients.empty())
        fail(ErrorKind::degenerate_instance, "no clients");
    BoundsReport r;
    r.n = ni.num_packets;
    std::size_t max_has = 0;
    std::size_t min_has = ni.clients.front().has.size();
    for (const Client& c : ni.clients) {
        max_has = std::max(max_has, c.has.size());
        min_has = std::min(min_has, c.has.size());
    }
    r.max_has = static_cast<int>(max_has);
    r.min_has = static_cast<int>(min_has);
    if (r.min_has >= r.n)
        fail(ErrorKind::degenerate_instance, "every client already has every packet");
    r.gain_lower = Rational(r.n, r.n - r.min_has);
    r.gain_upper = Rational(r.max_has + 1);
    r.opt_lower = (r.n + r.max_has) / (r.max_has + 1); // ceil(n / (L+1))
    r.opt_upper = r.n - r.min_has;
    return r;
}

// Shrinks every has set to the instance minimum by deleting the largest
// elements, and re-expands wants to the complement. A solution for the
// degraded instance also solves the original.
inline Instance degrade_to_min_has(const Instance& inst)
{
    const NormalizedInstance norm = normalize(inst);
    const Instance& ni = norm.instance;
    if (ni.clients.empty())
        fail(ErrorKind::degenerate_instance, "no clients");
    std::size_t min_has = ni.clients.front().has.size();
    for (const Client& c : ni.clients)
        min_has = std::min(min_has, c.has.size());
    Instance out;
    out.num_packets = ni.num_packets;
    for (const Client& c : ni.clients) {
        std::vector<int> has(c.has.begin(), c.has.begin() + min_has);
        std::vector<int> wants;
        for (int p = 0; p < ni.num_packets; ++p)
            if (!std::binary_search(has.begin(), has.end(), p))
                wants.push_back(p);
        out.clients.emplace_back(std::move(wants), std::move(has));
    }
    return out;
}

// Constructive (n - ell)-transmission solution over the smallest supported
// prime q >= n: the rows are the Vandermonde powers (j^i) for i = 0 ..
// n-ell-1 and column nodes j = 0..n-1. Distinct nodes make every maximal
// minor nonsingular, so the row space together with any ell unit vectors
// spans the whole space; every client decodes whatever it wants.
inline std::pair<Field, Matrix> mds_solution(const Instance& inst)
{
    const NormalizedInstance norm = normalize(inst);
    const Instance& ni = norm.instance;
    if (ni.clients.empty())
        fail(ErrorKind::degenerate_instance, "no clients");
    const int n = ni.num_packets;
    std::size_t min_has = ni.clients.front().has.size();
    for (const Client& c : ni.clients)
        min_has = std::min(min_has, c.has.size());

    int q = std::max(n, 2);
    while (q <= 251 && !detail::is_small_prime(q))
        ++q;
    if (q > 251)
        fail(ErrorKind::unsupported_order,
             "no supported prime field of order >= " + std::to_string(n));
    const Field field = Field::make(q);

    const int rows = n - static_cast<int>(min_has);
    Matrix m(field, rows, n);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < n; ++j)
            m.set(i, j, field.pow(j, i));
    return {field, m};
}

// --- BoundsReport JSON --------------------------------------------------

inline nlohmann::ordered_json to_json(const BoundsReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["max_has"] = r.max_has;
    j["min_has"] = r.min_has;
    j["gain_lower"] = {{"num", r.gain_lower.num()}, {"den", r.gain_lower.den()}};
    j["gain_upper"] = {{"num", r.gain_upper.num()}, {"den", r.gain_upper.den()}};
    j["opt_lower"] = r.opt_lower;
    j["opt_upper"] = r.opt_upper;
    return j;
}

} // namespace indexcode
