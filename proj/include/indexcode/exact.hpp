#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "indexcode/errors.hpp"
#include "indexcode/field.hpp"
#include "indexcode/instance.hpp"
#include "indexcode/linalg.hpp"

namespace indexcode {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

enum class SolveStatus { exact, budget_exceeded };

inline const char* to_string(SolveStatus s)
{
    return s == SolveStatus::exact ? "exact" : "budget_exceeded";
}

// Result of a minimum-transmission search over one field.
//
// status == exact: opt is the true minimum and witness is a feasible
// encoding matrix with opt linearly independent rows.
// status == budget_exceeded: opt is the best proven upper bound (witness
// still feasible with opt rows) and proven_lower_bound the best lower bound.
struct SolveResult {
    int q = 0;
    int opt = 0;
    Matrix witness;
    BigUint subspaces_examined = 0;
    SolveStatus status = SolveStatus::exact;
    int proven_lower_bound = 0;
};

struct ClientVerdict {
    int orig_client = 0;
    int want = 0; // original packet index
    bool satisfied = false;
    std::vector<int> decoding; // coefficients over phi's rows, for satisfied clients
};

struct VerifyReport {
    bool all_satisfied = true;
    std::vector<ClientVerdict> clients; // one entry per (client, wanted packet)
};

namespace detail {

// Finds x with x * A = target (row-vector combination), if one exists.
inline std::optional<std::vector<int>> solve_row_combination(const Matrix& a,
                                                             const std::vector<int>& target)
{
    const Field& f = a.field();
    const std::size_t m = a.rows();
    // Solve A^T x^T = target^T by eliminating the augmented system.
    Matrix aug(f, a.cols(), m + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug.set(j, i, a.at(i, j));
    for (std::size_t j = 0; j < a.cols(); ++j)
        aug.set(j, m, target[j]);
    const RrefResult r = rref(aug);
    std::vector<int> x(m, 0);
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
        if (r.pivot_cols[i] == m)
            return std::nullopt; // inconsistent
        x[r.pivot_cols[i]] = r.matrix.at(i, m);
    }
    return x;
}

// Satisfaction check used by the reference enumeration: client (want w,
// has set H) is served by subspace S iff the unit vector e_w lies in the
// span of S's rows with the H columns zeroed out.
struct MaskedClient {
    int want = 0;
    std::vector<std::uint8_t> has_mask; // 1 where the client holds the packet
    std::uint64_t want_bit = 0;         // GF(2) fast path
    std::uint64_t keep_bits = 0;
};

inline bool serves(const Matrix& basis, const MaskedClient& c)
{
    const Field& f = basis.field();
    const std::size_t n = basis.cols();
    if (f.q() == 2 && n <= 64) {
        gf2::Basis b;
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            std::uint64_t row = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (basis.at(i, j))
                    row |= std::uint64_t{1} << j;
            b.insert(row & c.keep_bits);
        }
        return b.contains(c.want_bit);
    }
    Matrix masked(f, 0, n);
    std::vector<std::uint8_t> row(n);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            row[j] = c.has_mask[j] ? 0 : static_cast<std::uint8_t>(basis.at(i, j));
        masked.append_row(row);
    }
    std::vector<int> want_vec(n, 0);
    want_vec[c.want] = 1;
    return in_span(want_vec, masked);
}

inline std::vector<MaskedClient> masked_clients(const Instance& normalized)
{
    std::vector<MaskedClient> out;
    const std::size_t n = normalized.num_packets;
    for (const Client& c : normalized.clients) {
        MaskedClient mc;
        mc.want = c.wants[0];
        mc.has_mask.assign(n, 0);
        for (int p : c.has)
            mc.has_mask[p] = 1;
        if (n <= 64) {
            mc.want_bit = std::uint64_t{1} << mc.want;
            mc.keep_bits = ~std::uint64_t{0};
            for (int p : c.has)
                mc.keep_bits &= ~(std::uint64_t{1} << p);
            if (n < 64)
                mc.keep_bits &= (std::uint64_t{1} << n) - 1;
        }
        out.push_back(std::move(mc));
    }
    return out;
}

} // namespace detail

// Per-client decodability check: client with wanted packet w is satisfied
// iff e_w lies in span(rows of phi) + span{e_j : j in has}. Multi-want
// clients are split first; phi's columns must match the normalized packet
// count.
inline VerifyReport verify_solution(const Instance& inst, const Matrix& phi)
{
    const NormalizedInstance norm = normalize(inst);
    if (phi.cols() != static_cast<std::size_t>(norm.instance.num_packets))
        fail(ErrorKind::dimension_mismatch,
             "solution has " + std::to_string(phi.cols()) + " columns, normalized instance has " +
                 std::to_string(norm.instance.num_packets) + " packets");
    const Field& f = phi.field();
    const std::size_t n = phi.cols();

    VerifyReport report;
    for (std::size_t i = 0; i < norm.instance.clients.size(); ++i) {
        const Client& c = norm.instance.clients[i];
        ClientVerdict verdict;
        verdict.orig_client = norm.map.client_origin[i].first;
        verdict.want = norm.map.client_origin[i].second;

        // Stack phi on top of the has-set unit vectors and express e_w.
        Matrix stacked = phi;
        std::vector<std::uint8_t> unit(n, 0);
        for (int p : c.has) {
            unit[p] = 1;
            stacked.append_row(unit);
            unit[p] = 0;
        }
        std::vector<int> target(n, 0);
        target[c.wants[0]] = 1;
        const auto combo = detail::solve_row_combination(stacked, target);
        verdict.satisfied = combo.has_value();
        if (combo)
            verdict.decoding.assign(combo->begin(), combo->begin() + phi.rows());
        report.all_satisfied = report.all_satisfied && verdict.satisfied;
        report.clients.push_back(std::move(verdict));
    }
    (void)f;
    return report;
}

namespace detail {

// --- Exact solve via the orthogonal-complement formulation -------------
//
// A subspace S of GF(q)^n serves every client iff its orthogonal
// complement D = S-perp contains only "invisible" vectors: z such that
// every client whose wanted coordinate is nonzero in z also sees a nonzero
// coordinate inside its has set. (Taking complements turns the span
// condition e_w in S + <has units> into exactly that per-vector property.)
// Hence OPT(q) = n - max{dim D : every vector of D is invisible}, and the
// search runs over subspaces of the invisible set instead of over all
// subspaces of dimension k. The set is scanned once (q^n encodings) and
// the maximisation is a depth-first search over monic representatives in
// ascending encoding order, so results and witnesses are deterministic.

constexpr std::uint64_t kDualSpaceCap = std::uint64_t{1} << 22;

class DualSearch {
public:
    DualSearch(const Field& field, const Instance& normalized, int dim_cap, const BigUint& budget)
        : field_(field), q_(field.q()), n_(normalized.num_packets), dim_cap_(dim_cap),
          budget_(budget)
    {
        pow_q_.assign(n_ + 1, 1);
        for (int j = 0; j < n_; ++j)
            pow_q_[j + 1] = pow_q_[j] * static_cast<std::uint64_t>(q_);
        build_invisible_set(normalized);
        // Largest dimension a subspace of the invisible set could have,
        // counting projective points.
        points_cap_ = 0;
        while (points_cap_ < n_ &&
               (pow_q_[points_cap_ + 1] - 1) / static_cast<std::uint64_t>(q_ - 1) <=
                   reps_.size())
            ++points_cap_;
        stop_dim_ = std::min(dim_cap_, points_cap_);
    }

    // Runs the search; returns true if it completed within budget.
    bool run()
    {
        std::vector<std::uint64_t> basis;
        std::vector<std::uint64_t> span{0};
        dfs(basis, span, 0);
        return !exceeded_;
    }

    int best_dim() const { return best_dim_; }
    const std::vector<std::uint64_t>& best_basis() const { return best_basis_; }
    const BigUint& nodes() const { return nodes_; }

    std::vector<int> decode(std::uint64_t v) const
    {
        std::vector<int> out(n_);
        for (int j = 0; j < n_; ++j) {
            out[j] = static_cast<int>(v % q_);
            v /= q_;
        }
        return out;
    }

private:
    void build_invisible_set(const Instance& normalized)
    {
        const std::uint64_t space = pow_q_[n_];
        in_set_.assign(space, false);
        in_set_[0] = true;
        if (q_ == 2) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> cl; // (want bit, has mask)
            for (const Client& c : normalized.clients) {
                std::uint64_t mask = 0;
                for (int p : c.has)
                    mask |= std::uint64_t{1} << p;
                cl.emplace_back(std::uint64_t{1} << c.wants[0], mask);
            }
            for (std::uint64_t v = 1; v < space; ++v) {
                bool ok = true;
                for (const auto& [wbit, hmask] : cl)
                    if ((v & wbit) != 0 && (v & hmask) == 0) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    in_set_[v] = true;
                    reps_.push_back(v);
                }
            }
            return;
        }
        std::vector<int> digits(n_);
        for (std::uint64_t v = 1; v < space; ++v) {
            std::uint64_t t = v;
            int lowest_nonzero = -1;
            for (int j = 0; j < n_; ++j) {
                digits[j] = static_cast<int>(t % q_);
                t /= q_;
                if (digits[j] != 0 && lowest_nonzero < 0)
                    lowest_nonzero = j;
            }
            bool ok = true;
            for (const Client& c : normalized.clients) {
                if (digits[c.wants[0]] == 0)
                    continue;
                bool sees = false;
                for (int p : c.has)
                    if (digits[p] != 0) {
                        sees = true;
                        break;
                    }
                if (!sees) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            in_set_[v] = true;
            // Monic representative: lowest nonzero coordinate equals 1.
            if (digits[lowest_nonzero] == 1)
                reps_.push_back(v);
        }
    }

    std::uint64_t vec_add(std::uint64_t a, std::uint64_t b) const
    {
        if (q_ == 2)
            return a ^ b;
        std::uint64_t out = 0;
        for (int j = 0; j < n_; ++j) {
            const int da = static_cast<int>((a / pow_q_[j]) % q_);
            const int db = static_cast<int>((b / pow_q_[j]) % q_);
            out += static_cast<std::uint64_t>(field_.add(da, db)) * pow_q_[j];
        }
        return out;
    }

    std::uint64_t vec_scale(std::uint64_t a, int c) const
    {
        if (c == 1)
            return a;
        std::uint64_t out = 0;
        for (int j = 0; j < n_; ++j) {
            const int da = static_cast<int>((a / pow_q_[j]) % q_);
            out += static_cast<std::uint64_t>(field_.mul(da, c)) * pow_q_[j];
        }
        return out;
    }

    void dfs(std::vector<std::uint64_t>& basis, const std::vector<std::uint64_t>& span,
             std::size_t start)
    {
        if (exceeded_ || done_)
            return;
        nodes_ += 1;
        if (nodes_ > budget_) {
            exceeded_ = true;
            return;
        }
        if (static_cast<int>(basis.size()) > best_dim_) {
            best_dim_ = static_cast<int>(basis.size());
            best_basis_ = basis;
        }
        if (best_dim_ >= stop_dim_) {
            done_ = true;
            return;
        }
        for (std::size_t idx = start; idx < reps_.size(); ++idx) {
            if (static_cast<int>(basis.size() + (reps_.size() - idx)) <= best_dim_)
                break; // not enough generators left to improve
            const std::uint64_t z = reps_[idx];
            if (std::binary_search(span.begin(), span.end(), z))
                continue;
            // The whole extended span must stay inside the invisible set.
            std::vector<std::uint64_t> extra;
            extra.reserve(span.size() * (q_ - 1));
            bool ok = true;
            for (int c = 1; c < q_ && ok; ++c) {
                const std::uint64_t cz = vec_scale(z, c);
                for (std::uint64_t v : span) {
                    const std::uint64_t w = vec_add(cz, v);
                    if (!in_set_[w]) {
                        ok = false;
                        break;
                    }
                    extra.push_back(w);
                }
            }
            if (!ok)
                continue;
            std::vector<std::uint64_t> merged;
            merged.reserve(span.size() + extra.size());
            std::sort(extra.begin(), extra.end());
            std::merge(span.begin(), span.end(), extra.begin(), extra.end(),
                       std::back_inserter(merged));
            basis.push_back(z);
            dfs(basis, merged, idx + 1);
            basis.pop_back();
            if (exceeded_ || done_)
                return;
        }
    }

    const Field& field_;
    int q_;
    int n_;
    int dim_cap_;
    int points_cap_ = 0;
    int stop_dim_ = 0;
    BigUint budget_;
    BigUint nodes_ = 0;
    bool exceeded_ = false;
    bool done_ = false;
    std::vector<std::uint64_t> pow_q_;
    std::vector<bool> in_set_;
    std::vector<std::uint64_t> reps_;
    int best_dim_ = 0;
    std::vector<std::uint64_t> best_basis_;
};

inline Matrix identity_matrix(const Field& f, std::size_t n)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

} // namespace detail

// Number of transmissions needed with no coding at all: every packet that
// anyone wants goes out plainly.
inline int no_coding_baseline(const Instance& inst)
{
    std::vector<bool> wanted(inst.num_packets, false);
    int count = 0;
    for (const Client& c : inst.clients)
        for (int p : c.wants)
            if (!wanted[p]) {
                wanted[p] = true;
                ++count;
            }
    return count;
}

// Minimum number of transmissions over GF(q), with a deterministic witness.
//
// The instance is normalized first; lower bounds come from the largest
// original wants set and from ceil(n / (L+1)) where L is the largest has
// set. When q^n fits in memory the solve runs the orthogonal-complement
// search (exact, fast even when the optimum is close to n); otherwise it
// falls back to scanning canonical subspaces of dimension k = k_lo, k_lo+1,
// ... and charges each examined subspace against the budget.
inline SolveResult opt_q(const Instance& inst, int q, const BigUint& budget = kDefaultBudget)
{
    const Field field = Field::make(q);
    const NormalizedInstance norm = normalize(inst);
    const Instance& ni = norm.instance;
    const int n = ni.num_packets;

    SolveResult result;
    result.q = q;
    result.witness = Matrix(field, 0, n);

    if (ni.clients.empty()) {
        result.opt = 0;
        result.proven_lower_bound = 0;
        return result;
    }

    std::size_t max_wants = 1;
    for (const Client& c : inst.clients)
        max_wants = std::max(max_wants, c.wants.size());
    std::size_t max_has = 0;
    for (const Client& c : ni.clients)
        max_has = std::max(max_has, c.has.size());
    const int k_lo = std::max<int>(
        static_cast<int>(max_wants),
        static_cast<int>((n + max_has) / (max_has + 1))); // ceil(n / (L+1))

    bool overflow = false;
    std::uint64_t space = 1;
    for (int j = 0; j < n; ++j) {
        if (space > detail::kDualSpaceCap / static_cast<std::uint64_t>(q)) {
            overflow = true;
            break;
        }
        space *= static_cast<std::uint64_t>(q);
    }

    if (!overflow && space <= detail::kDualSpaceCap) {
        detail::DualSearch search(field, ni, n - k_lo, budget);
        const bool complete = search.run();
        result.subspaces_examined = search.nodes();
        const int dim = search.best_dim();
        result.opt = n - dim;
        Matrix dual(field, 0, n);
        for (std::uint64_t v : search.best_basis()) {
            const std::vector<int> coords = search.decode(v);
            std::vector<std::uint8_t> row(coords.begin(), coords.end());
            dual.append_row(row);
        }
        result.witness = nullspace(dual);
        if (complete) {
            result.status = SolveStatus::exact;
            result.proven_lower_bound = result.opt;
        } else {
            result.status = SolveStatus::budget_exceeded;
            result.proven_lower_bound = k_lo;
        }
    } else {
        const auto clients = detail::masked_clients(ni);
        BigUint examined = 0;
        bool solved = false;
        for (int k = k_lo; k <= n && !solved; ++k) {
            const BigUint count = gaussian_binomial(n, k, q);
            if (examined + count > budget) {
                result.opt = n;
                result.witness = detail::identity_matrix(field, n);
                result.subspaces_examined = examined;
                result.status = SolveStatus::budget_exceeded;
                result.proven_lower_bound = k;
                return result;
            }
            SubspaceIter iter(n, k, field, count);
            while (auto basis = iter.next()) {
                examined += 1;
                bool all = true;
                for (const auto& c : clients)
                    if (!detail::serves(*basis, c)) {
                        all = false;
                        break;
                    }
                if (all) {
                    result.opt = k;
                    result.witness = std::move(*basis);
                    result.subspaces_examined = examined;
                    result.status = SolveStatus::exact;
                    result.proven_lower_bound = k;
                    solved = true;
                    break;
                }
            }
        }
        if (!solved)
            fail(ErrorKind::internal, "subspace scan ended without a feasible solution");
    }

    if (!verify_solution(ni, result.witness).all_satisfied)
        fail(ErrorKind::internal, "solver produced an infeasible witness");
    return result;
}

struct MultiResult {
    std::map<int, SolveResult> per_field;
    bool min_valid = false;
    int min_opt = 0;
    int argmin_q = 0; // smallest field order achieving the minimum
};

// Runs opt_q over each listed field and reports the minimum over the
// tested fields only; this brackets, but never claims, the minimum over
// all finite fields.
inline MultiResult opt_multi(const Instance& inst, const std::vector<int>& fields,
                             const BigUint& budget = kDefaultBudget)
{
    if (fields.empty())
        fail(ErrorKind::invalid_param, "field list must not be empty");
    MultiResult out;
    for (int q : fields) {
        if (out.per_field.count(q))
            continue;
        out.per_field.emplace(q, opt_q(inst, q, budget));
    }
    for (const auto& [q, res] : out.per_field) {
        if (res.status != SolveStatus::exact)
            continue;
        if (!out.min_valid || res.opt < out.min_opt) {
            out.min_valid = true;
            out.min_opt = res.opt;
            out.argmin_q = q;
        }
    }
    return out;
}

// --- Solution JSON ------------------------------------------------------
// {"q": int, "opt": int, "vectors": [[int,...],...], "status":
//  "exact"|"budget_exceeded", "subspaces_examined": string(decimal)}
// plus "proven_lower_bound" when the budget ran out.

inline nlohmann::ordered_json to_json(const SolveResult& r)
{
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["opt"] = r.opt;
    j["vectors"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.witness.rows(); ++i)
        j["vectors"].push_back(r.witness.row_vec(i));
    j["status"] = to_string(r.status);
    j["subspaces_examined"] = r.subspaces_examined.str();
    if (r.status == SolveStatus::budget_exceeded)
        j["proven_lower_bound"] = r.proven_lower_bound;
    return j;
}

// Reads an encoding matrix out of a solution-like JSON object: accepts the
// solver's "vectors" key or the standalone matrix key "rows".
inline Matrix solution_matrix_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("q"))
        fail(ErrorKind::parse, "solution JSON needs q");
    if (!j["q"].is_number_integer())
        fail(ErrorKind::parse, "q must be an integer");
    const char* key = j.contains("vectors") ? "vectors" : "rows";
    if (!j.contains(key) || !j[key].is_array())
        fail(ErrorKind::parse, "solution JSON needs a vectors (or rows) array");
    const Field f = Field::make(j["q"].get<int>());
    std::vector<std::vector<int>> rows;
    for (const auto& jr : j[key]) {
        if (!jr.is_array())
            fail(ErrorKind::parse, "each vector must be an array");
        std::vector<int> row;
        for (const auto& e : jr) {
            if (!e.is_number_integer())
                fail(ErrorKind::parse, "vector entries must be integers");
            const int v = e.get<int>();
            if (v < 0 || v >= f.q())
                fail(ErrorKind::parse, "vector entry out of range for GF(" +
                                           std::to_string(f.q()) + ")");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        return Matrix(f, 0, 0);
    return Matrix::from_rows(f, rows);
}

} // namespace indexcode
