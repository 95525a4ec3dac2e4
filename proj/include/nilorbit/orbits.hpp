#pragma once

#include "nilorbit/stratification.hpp"

namespace nilorbit {

/// Flow parameters (s_1,t_1,...,s_r,t_r) attached to an index set: s_i flows
/// along Z_{j_i}, t_i along Z_{k_i}.
struct FlowSchedule {
    IndexSet I;
    std::vector<Rational> params;
};

/// E_I(s_1,t_1,...,s_r,t_r; l): the co-adjoint flows of the written word
/// exp(s_1 Z_{j_1}) exp(t_1 Z_{k_1}) ... exp(s_r Z_{j_r}) exp(t_r Z_{k_r})
/// applied to l; the left factor acts last.
Covector flow(const Covector &l, const FlowSchedule &schedule);

/// One elementary co-adjoint flow Ad*(exp(param Z_label)).
struct AppliedFlow {
    unsigned label;
    Rational param;
};

Covector apply_flows(const Covector &l, const std::vector<AppliedFlow> &seq);

/// Undoes apply_flows: the same sequence reversed with negated parameters.
std::vector<AppliedFlow> inverse_flows(const std::vector<AppliedFlow> &seq);

/// The unique representative of Ad*(G)l in the Pukanszky section of its
/// layer. `applied` records the elementary flows that carried l there, in
/// application order (step s: first along Z_{k_s} zeroing the coordinate at
/// j_s, then along Z_{j_s} zeroing the coordinate at k_s). `schedule` holds
/// the same parameters in (s_1,t_1,...) slots.
struct SectionPoint {
    Covector l_section;
    IndexSet I;
    FlowSchedule schedule;
    std::vector<AppliedFlow> applied;
};

/// Sequential exact affine solves in the Ludwig-Zahir step order. Every
/// solve recomputes its slope at the current point; after each one, all
/// previously zeroed labelled coordinates are checked to still vanish.
/// Throws SectionSolveInvariantViolation if a solve target is not affine in
/// the flow parameter or an earlier zero is disturbed.
SectionPoint section_point(const Covector &l);

/// True iff both covectors lie on the same co-adjoint orbit: equal index
/// sets and exactly equal section representatives.
bool same_orbit(const Covector &l, const Covector &lp);

/// Orbit parametrization through the layer of l: the orbit of any l' in the
/// layer is { sum_i p_i(l',z) Z_i^* : z in R^d }. At the m-th smallest label
/// of I the entry is literally z_m; the other entries are rational in l and
/// polynomial in z, with denominators nonvanishing on the layer.
struct OrbitChart {
    IndexSet I;
    std::vector<unsigned> z_labels;  // ascending: z_m sits at z_labels[m-1]
    std::vector<RatFunction> p;      // over variables l1..ln,z1..zd
};

OrbitChart orbit_chart(const AlgebraPtr &algebra, const Covector &l);

/// Evaluates the chart at (l, z), exactly.
Covector chart_eval(const OrbitChart &chart, const Covector &l,
                    const std::vector<Rational> &z);

} // namespace nilorbit
