#ifndef OWP_VERIFY_HPP
#define OWP_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

#include "owp/cycle_factor.hpp"
#include "owp/graph.hpp"

namespace owp {

// Outcome of checking a claimed decomposition. On rejection, `reason`
// identifies the first violation and, where meaningful, a witness edge.
struct VerificationReport {
    bool ok = false;
    std::string reason;
    int factor_index = -1;
    Edge witness{0, 1};
    bool has_witness = false;

    static VerificationReport accept() {
        VerificationReport r;
        r.ok = true;
        r.reason = "ok";
        return r;
    }
    static VerificationReport reject(std::string why, int idx = -1) {
        VerificationReport r;
        r.ok = false;
        r.reason = std::move(why);
        r.factor_index = idx;
        return r;
    }
    static VerificationReport reject_edge(std::string why, Edge e, int idx = -1) {
        VerificationReport r = reject(std::move(why), idx);
        r.witness = e;
        r.has_witness = true;
        return r;
    }
};

// Accepts iff the factors are pairwise edge-disjoint, their union is exactly
// the host edge set, every factor is a spanning 2-regular subgraph of the
// host, and the multiset of cycle types matches the spec.
inline VerificationReport verify_decomposition(const HostGraph& host,
                                               const std::vector<CycleFactor>& factors,
                                               const FactorSpec& spec) {
    spec.validate(host.n);
    if (int(factors.size()) != spec.factor_total())
        return VerificationReport::reject(
            "factor count " + std::to_string(factors.size()) + " != spec total " +
            std::to_string(spec.factor_total()));

    EdgeSet covered(host.n);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const CycleFactor& f = factors[i];
        if (f.n != host.n)
            return VerificationReport::reject("factor order mismatch", int(i));
        try {
            f.validate();
        } catch (const std::invalid_argument& ex) {
            return VerificationReport::reject(std::string("malformed factor: ") + ex.what(),
                                              int(i));
        }
        for (const Edge& e : f.edges()) {
            if (!host.edges.has(e))
                return VerificationReport::reject_edge("edge not in host", e, int(i));
            if (covered.has(e))
                return VerificationReport::reject_edge("edge covered twice", e, int(i));
            covered.add(e);
        }
    }
    if (!(covered == host.edges)) {
        EdgeSet missing = host.edges;
        missing -= covered;
        Edge w = missing.edges().front();
        return VerificationReport::reject_edge("host edge not covered", w);
    }

    std::map<CycleType, int> want, got;
    for (const auto& e : spec.entries) want[e.first] += e.second;
    for (const auto& f : factors) ++got[cycle_type_of(f)];
    if (want != got) {
        for (const auto& [t, m] : got) {
            auto it = want.find(t);
            if (it == want.end() || it->second != m)
                return VerificationReport::reject("cycle type multiset mismatch at type {" +
                                                  t.to_string() + "}");
        }
        return VerificationReport::reject("cycle type multiset mismatch");
    }
    return VerificationReport::accept();
}

} // namespace owp

#endif
