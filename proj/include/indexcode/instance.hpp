#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "indexcode/errors.hpp"
#include "indexcode/rng.hpp"

namespace indexcode {

// One receiver: the packets it demands and the packets it already holds.
// Both sets are kept sorted and duplicate-free.
struct Client {
    std::vector<int> wants;
    std::vector<int> has;

    Client() = default;
    Client(std::vector<int> w, std::vector<int> h) : wants(std::move(w)), has(std::move(h))
    {
        canonicalize(wants);
        canonicalize(has);
    }

    bool operator==(const Client& o) const { return wants == o.wants && has == o.has; }

private:
    static void canonicalize(std::vector<int>& v)
    {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
};

// A broadcast coding problem: n packets and a list of clients. Packet and
// client indices are 0-based everywhere (files, APIs, reports).
struct Instance {
    int num_packets = 0;
    std::vector<Client> clients;
    std::string note;

    bool operator==(const Instance& o) const
    {
        return num_packets == o.num_packets && clients == o.clients && note == o.note;
    }
};

enum class ViolationKind {
    index_out_of_range,
    want_has_overlap,
    empty_wants,
    unwanted_packet,
};

struct Violation {
    ViolationKind kind;
    int client = -1; // -1 when not client-specific
    int packet = -1;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool canonical() const { return violations.empty(); }

    // True when the only violations are unwanted packets, which normalize()
    // repairs by dropping the packets.
    bool normalizable() const
    {
        for (const auto& v : violations)
            if (v.kind != ViolationKind::unwanted_packet)
                return false;
        return true;
    }
};

inline ValidationReport validate(const Instance& inst)
{
    ValidationReport report;
    const int n = inst.num_packets;
    std::vector<bool> wanted(std::max(n, 0), false);
    for (std::size_t i = 0; i < inst.clients.size(); ++i) {
        const Client& c = inst.clients[i];
        for (int p : c.wants)
            if (p < 0 || p >= n)
                report.violations.push_back({ViolationKind::index_out_of_range, static_cast<int>(i), p,
                                             "wants index out of range"});
            else
                wanted[p] = true;
        for (int p : c.has)
            if (p < 0 || p >= n)
                report.violations.push_back({ViolationKind::index_out_of_range, static_cast<int>(i), p,
                                             "has index out of range"});
        if (c.wants.empty())
            report.violations.push_back(
                {ViolationKind::empty_wants, static_cast<int>(i), -1, "client wants nothing"});
        for (int p : c.wants)
            if (std::binary_search(c.has.begin(), c.has.end(), p))
                report.violations.push_back({ViolationKind::want_has_overlap, static_cast<int>(i), p,
                                             "packet both wanted and held"});
    }
    for (int p = 0; p < n; ++p)
        if (!wanted[p])
            report.violations.push_back(
                {ViolationKind::unwanted_packet, -1, p, "packet wanted by no client"});
    return report;
}

// Records how normalize() relabeled things: new client i came from
// client_origin[i] = (original client, original packet it wants), and
// packet_map[p] is the new index of original packet p (-1 if dropped).
struct NormalizeMap {
    std::vector<std::pair<int, int>> client_origin;
    std::vector<int> packet_map;
};

struct NormalizedInstance {
    Instance instance;
    NormalizeMap map;
};

// Splits every client into one client per wanted packet (same has set) and
// drops packets nobody wants, reindexing densely. Normalizing twice is the
// identity (up to the trivial mapping).
inline NormalizedInstance normalize(const Instance& inst)
{
    const ValidationReport report = validate(inst);
    if (!report.normalizable())
        fail(ErrorKind::invalid_instance, report.violations.front().message);

    NormalizedInstance out;
    out.map.packet_map.assign(inst.num_packets, -1);
    std::vector<bool> wanted(inst.num_packets, false);
    for (const Client& c : inst.clients)
        for (int p : c.wants)
            wanted[p] = true;
    int next = 0;
    for (int p = 0; p < inst.num_packets; ++p)
        if (wanted[p])
            out.map.packet_map[p] = next++;
    out.instance.num_packets = next;
    out.instance.note = inst.note;

    for (std::size_t i = 0; i < inst.clients.size(); ++i) {
        const Client& c = inst.clients[i];
        std::vector<int> has;
        for (int p : c.has)
            if (out.map.packet_map[p] >= 0)
                has.push_back(out.map.packet_map[p]);
        for (int w : c.wants) {
            out.instance.clients.emplace_back(std::vector<int>{out.map.packet_map[w]}, has);
            out.map.client_origin.emplace_back(static_cast<int>(i), w);
        }
    }
    return out;
}

inline bool is_normalized(const Instance& inst)
{
    for (const Client& c : inst.clients)
        if (c.wants.size() != 1)
            return false;
    return true;
}

// The two worked instances: four packets with six pair-demanding clients,
// and the seven-packet instance whose optimum depends on the field
// characteristic. Has sets are the complements of the wants sets.
inline Instance builtin(const std::string& name)
{
    auto complement_instance = [](int n, std::vector<std::vector<int>> wants, std::string note) {
        Instance inst;
        inst.num_packets = n;
        inst.note = std::move(note);
        for (auto& w : wants) {
            std::vector<int> has;
            for (int p = 0; p < n; ++p)
                if (std::find(w.begin(), w.end(), p) == w.end())
                    has.push_back(p);
            inst.clients.emplace_back(std::move(w), std::move(has));
        }
        return inst;
    };
    if (name == "table1")
        return complement_instance(
            4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
            "four packets, six clients, each wanting a pair and holding the rest");
    if (name == "table2")
        return complement_instance(
            7,
            {{0}, {1}, {2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}, {3, 4, 5}},
            "seven packets, ten clients; optimum is 3 over odd characteristic, larger over even");
    fail(ErrorKind::unknown_builtin, "no builtin named '" + name + "'");
}

struct HasSpec {
    enum class Mode { fixed_card, include_prob };
    Mode mode = Mode::fixed_card;
    int fixed_card = 0;
    double include_prob = 0.0;

    static HasSpec fixed(int d) { return HasSpec{Mode::fixed_card, d, 0.0}; }
    static HasSpec prob(double p) { return HasSpec{Mode::include_prob, 0, p}; }
};

// Random instance with n clients, client i wanting exactly packet i and a
// has set drawn from the other n-1 packets: either a uniform d-subset or
// each packet independently with probability p. Client i's choices come
// from the derived stream derive_seed(seed, i), so the content does not
// depend on generation order.
inline Instance gen_random(int n, const HasSpec& spec, std::uint64_t seed)
{
    if (n < 1)
        fail(ErrorKind::invalid_param, "need at least one packet");
    if (spec.mode == HasSpec::Mode::fixed_card && (spec.fixed_card < 0 || spec.fixed_card > n - 1))
        fail(ErrorKind::invalid_param, "has-set cardinality must be in 0..n-1");
    if (spec.mode == HasSpec::Mode::include_prob &&
        (spec.include_prob < 0.0 || spec.include_prob > 1.0))
        fail(ErrorKind::invalid_param, "inclusion probability must be in [0,1]");

    Instance inst;
    inst.num_packets = n;
    for (int i = 0; i < n; ++i) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        std::vector<int> pool;
        pool.reserve(n - 1);
        for (int p = 0; p < n; ++p)
            if (p != i)
                pool.push_back(p);
        std::vector<int> has;
        if (spec.mode == HasSpec::Mode::fixed_card) {
            // Partial Fisher-Yates: the first d slots become the sample.
            for (int t = 0; t < spec.fixed_card; ++t) {
                const std::size_t j = t + rng.below(pool.size() - t);
                std::swap(pool[t], pool[j]);
                has.push_back(pool[t]);
            }
        } else {
            for (int p : pool)
                if (rng.unit_double() < spec.include_prob)
                    has.push_back(p);
        }
        inst.clients.emplace_back(std::vector<int>{i}, std::move(has));
    }
    return inst;
}

// --- Instance JSON (normative schema) ---------------------------------
// {"num_packets": int, "clients": [{"wants": [int,...], "has": [int,...]},
//  ...], "note": string?}  -- fields serialized in this order.

inline nlohmann::ordered_json to_json(const Instance& inst)
{
    nlohmann::ordered_json j;
    j["num_packets"] = inst.num_packets;
    j["clients"] = nlohmann::ordered_json::array();
    for (const Client& c : inst.clients) {
        nlohmann::ordered_json jc;
        jc["wants"] = c.wants;
        jc["has"] = c.has;
        j["clients"].push_back(std::move(jc));
    }
    if (!inst.note.empty())
        j["note"] = inst.note;
    return j;
}

inline std::string serialize(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline Instance instance_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("num_packets") || !j.contains("clients"))
        fail(ErrorKind::parse, "instance JSON needs num_packets and clients");
    if (!j["num_packets"].is_number_integer())
        fail(ErrorKind::parse, "num_packets must be an integer");
    Instance inst;
    inst.num_packets = j["num_packets"].get<int>();
    if (inst.num_packets < 0)
        fail(ErrorKind::parse, "num_packets must be nonnegative");
    if (!j["clients"].is_array())
        fail(ErrorKind::parse, "clients must be an array");
    auto read_set = [&](const nlohmann::json& arr, const char* what, std::size_t client) {
        if (!arr.is_array())
            fail(ErrorKind::parse, std::string(what) + " must be an array (client " +
                                       std::to_string(client) + ")");
        std::vector<int> out;
        for (const auto& e : arr) {
            if (!e.is_number_integer())
                fail(ErrorKind::parse, std::string(what) + " entries must be integers (client " +
                                           std::to_string(client) + ")");
            const int p = e.get<int>();
            if (p < 0 || p >= inst.num_packets)
                fail(ErrorKind::parse, std::string(what) + " index " + std::to_string(p) +
                                           " out of range (client " + std::to_string(client) + ")");
            out.push_back(p);
        }
        return out;
    };
    std::size_t idx = 0;
    for (const auto& jc : j["clients"]) {
        if (!jc.is_object() || !jc.contains("wants") || !jc.contains("has"))
            fail(ErrorKind::parse, "client " + std::to_string(idx) + " needs wants and has");
        inst.clients.emplace_back(read_set(jc["wants"], "wants", idx), read_set(jc["has"], "has", idx));
        ++idx;
    }
    if (j.contains("note")) {
        if (!j["note"].is_string())
            fail(ErrorKind::parse, "note must be a string");
        inst.note = j["note"].get<std::string>();
    }
    return inst;
}

inline Instance parse_instance(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::parse, e.what());
    }
    return instance_from_json(j);
}

} // namespace indexcode
