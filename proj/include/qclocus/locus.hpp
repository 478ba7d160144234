#pragma once

#include <future>
#include <mutex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qclocus/heights.hpp"
#include "qclocus/padic.hpp"
#include "qclocus/reduction.hpp"
#include "qclocus/residues.hpp"
#include "qclocus/torsion.hpp"

namespace qclocus {

/// Why a torsion point was rejected from the locus.
struct RejectionReason {
    enum class Kind { MembershipFailed, ValuationFailed } kind;
    Int prime; // set for ValuationFailed
    std::string str() const {
        if (kind == Kind::MembershipFailed) return "membership-failed";
        return "valuation-failed(" + prime.get_str() + ")";
    }
};

struct LocusDecision {
    bool member = false;
    HstValue hst;
    std::optional<RejectionReason> reason;
    // consulted primes with their valuations and value sets
    std::vector<std::tuple<Int, Rational, ValueSet>> witness;
};

/// Caches the minimal model, its bad primes and the W^st sets so per-point
/// decisions do not recompute them.
class LocusContext {
public:
    explicit LocusContext(const WeierstrassModel& e) : e_(e) {
        auto [emin, T] = minimal_model(e);
        emin_ = std::make_unique<WeierstrassModel>(emin);
        to_minimal_ = T;
        delta_min_ = emin.invariants().delta;
        for (auto& [p, v] : factor_integer(delta_min_.num())) bad_primes_.push_back(p);
    }

    const WeierstrassModel& model() const { return e_; }
    const WeierstrassModel& minimal() const { return *emin_; }
    const ModelTransform& transform_to_minimal() const { return to_minimal_; }
    const Rational& delta_min() const { return delta_min_; }
    const std::vector<Int>& bad_primes() const { return bad_primes_; }

    ValueSet w_st_at(const Int& ell) const {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = wst_cache_.find(ell);
            if (it != wst_cache_.end()) return it->second;
        }
        ReductionProfile profile = tate_local(*emin_, ell);
        long good_count = 1;
        if (profile.type.cls == KodairaType::Class::I0 && ell < 5)
            good_count = count_affine_smooth_points_mod_l(*emin_, ell);
        ValueSet base = w_min(profile, good_count, ell);
        ValueSet shifted;
        for (const auto& v : base) shifted.insert(v + Rational(profile.v_delta_min, 12));
        std::lock_guard<std::mutex> lock(mutex_);
        return wst_cache_.emplace(ell, std::move(shifted)).first->second;
    }

private:
    WeierstrassModel e_;
    std::unique_ptr<WeierstrassModel> emin_;
    ModelTransform to_minimal_;
    Rational delta_min_;
    std::vector<Int> bad_primes_;
    mutable std::mutex mutex_;
    mutable std::map<Int, ValueSet> wst_cache_;
};

/// The stable-height membership test: (i) the stable height lies in
/// Q (x) Q^x, and (ii) its valuation at every prime lies in W_ell^st.
/// Criterion (ii) only needs checking on the bad primes, the support of the
/// rational part, and {2, 3}: everywhere else both sides are {0} and 0.
inline LocusDecision point_in_locus(const LocusContext& ctx, const CurvePoint& q, long order) {
    LocusDecision out;
    out.hst = hst_of_point(ctx.model(), q, order);
    if (!out.hst.rational_part.has_value()) {
        out.member = false;
        out.reason = RejectionReason{RejectionReason::Kind::MembershipFailed, Int(0)};
        return out;
    }
    std::set<Int> primes{Int(2), Int(3)};
    for (const auto& p : ctx.bad_primes()) primes.insert(p);
    for (const auto& [p, e] : out.hst.rational_part->entries()) primes.insert(p);
    for (const auto& ell : primes) {
        Rational v = out.hst.rational_part->exponent(ell);
        const ValueSet& w = ctx.w_st_at(ell);
        out.witness.emplace_back(ell, v, w);
        if (w.find(v) == w.end()) {
            out.member = false;
            out.reason = RejectionReason{RejectionReason::Kind::ValuationFailed, ell};
            return out;
        }
    }
    out.member = true;
    return out;
}

inline LocusDecision point_in_locus(const WeierstrassModel& e, const CurvePoint& q, long order) {
    LocusContext ctx(e);
    return point_in_locus(ctx, q, order);
}

struct LocusEntry {
    TorsionPoint torsion;
    LocusDecision decision;
};

struct LocusReport {
    WeierstrassModel curve;
    long n_max;
    long degree_max;
    std::vector<LocusEntry> members;
    std::vector<LocusEntry> rejected;
    bool complete_within_bounds = true; // never a global completeness claim
    bool galois_stable = true;

    LocusReport(const WeierstrassModel& e, long nm, long dm) : curve(e), n_max(nm), degree_max(dm) {}
};

/// Full locus run: enumerate torsion within the bounds and decide each point.
/// Conjugate points (same tower presentation and order) must decide alike;
/// the report records that check.
inline LocusReport locus_compute(const WeierstrassModel& e, long n_max, long degree_max, int jobs = 1) {
    LocusContext ctx(e);
    auto torsion = torsion_enumerate(e, n_max, degree_max);
    LocusReport report(e, n_max, degree_max);

    std::vector<LocusDecision> decisions(torsion.size());
    if (jobs > 1 && torsion.size() > 1) {
        std::vector<std::future<LocusDecision>> futures;
        futures.reserve(torsion.size());
        for (const auto& tp : torsion)
            futures.push_back(std::async(std::launch::async,
                                         [&ctx, &tp] { return point_in_locus(ctx, tp.point, tp.order); }));
        for (size_t i = 0; i < futures.size(); ++i) decisions[i] = futures[i].get();
    } else {
        for (size_t i = 0; i < torsion.size(); ++i) decisions[i] = point_in_locus(ctx, torsion[i].point, torsion[i].order);
    }

    // Galois stability: conjugate points share the exact order, the minimal
    // polynomial of the x-coordinate, and the shape of the y-extension, and
    // negation pairs points with equal stable heights, so every point sharing
    // this key must decide identically.
    std::map<std::tuple<long, std::string, bool>, std::set<bool>> orbit_outcomes;
    for (size_t i = 0; i < torsion.size(); ++i) {
        std::string xpoly = tower_minimal_polynomial(torsion[i].point.x()).str();
        orbit_outcomes[{torsion[i].order, xpoly, torsion[i].tower->has_quadratic_layer()}].insert(
            decisions[i].member);
        LocusEntry entry{torsion[i], decisions[i]};
        if (decisions[i].member)
            report.members.push_back(std::move(entry));
        else
            report.rejected.push_back(std::move(entry));
    }
    for (auto& [key, outcomes] : orbit_outcomes)
        if (outcomes.size() > 1) report.galois_stable = false;
    return report;
}

struct QpMemberStatus {
    const LocusEntry* entry;
    std::optional<long> embedding_count; // nullopt = undecided
};

struct QpReport {
    Int prime;
    std::vector<QpMemberStatus> embeddable;
    std::vector<QpMemberStatus> non_embeddable;
    std::vector<QpMemberStatus> undecided;
};

/// Q_p picture of the locus members: counts embeddings of each member's
/// coordinate field into Q_p via Hensel lifting, escalating precision up to
/// the budget and reporting undecided beyond it.
inline QpReport qp_report(const LocusReport& report, const Int& p, long precision_budget) {
    if (!is_prime(p)) throw ContractError("qp_report: modulus must be prime");
    QpReport out;
    out.prime = p;
    for (const auto& entry : report.members) {
        QpMemberStatus st{&entry, std::nullopt};
        st.embedding_count = count_tower_embeddings(entry.torsion.tower, p, precision_budget);
        if (!st.embedding_count.has_value())
            out.undecided.push_back(st);
        else if (*st.embedding_count > 0)
            out.embeddable.push_back(st);
        else
            out.non_embeddable.push_back(st);
    }
    return out;
}

} // namespace qclocus
