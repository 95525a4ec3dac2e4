#include "nilorbit/orbits.hpp"

#include <algorithm>

#include "nilorbit/errors.hpp"

namespace nilorbit {

namespace {

// Coefficients of t -> <mu, Ad(exp -t Z_F) Z_T> as an exact polynomial:
// coefficient of t^m is ((-1)^m/m!) <mu, ad(Z_F)^m Z_T>.
std::vector<Rational> flow_coordinate_poly(const Covector &mu, unsigned axis,
                                           unsigned target) {
    const auto &alg = mu.algebra();
    std::vector<Rational> coeffs;
    Vector chain = Vector::basis(alg, target);
    Vector f = Vector::basis(alg, axis);
    Rational fact(1);
    int sign = 1;
    for (std::size_t m = 0;; ++m) {
        if (m > 0) {
            chain = bracket(f, chain);
            fact *= Rational(static_cast<long>(m));
            sign = -sign;
        }
        if (chain.is_zero()) break;
        Rational c = pairing(mu, chain) / fact;
        coeffs.push_back(sign < 0 ? -c : c);
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    return coeffs;
}

Covector single_flow(const Covector &mu, unsigned axis, const Rational &param) {
    return coadjoint(Vector::basis(mu.algebra(), axis).scaled(param), mu);
}

} // namespace

Covector apply_flows(const Covector &l, const std::vector<AppliedFlow> &seq) {
    Covector cur = l;
    for (const auto &f : seq) cur = single_flow(cur, f.label, f.param);
    return cur;
}

std::vector<AppliedFlow> inverse_flows(const std::vector<AppliedFlow> &seq) {
    std::vector<AppliedFlow> inv;
    inv.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it)
        inv.push_back(AppliedFlow{it->label, -it->param});
    return inv;
}

Covector flow(const Covector &l, const FlowSchedule &schedule) {
    const std::size_t r = schedule.I.step_count();
    if (schedule.params.size() != 2 * r)
        throw Error(ErrorKind::arity_mismatch, "flow schedule arity mismatch");
    // Rightmost factor of the word acts first: t_r, s_r, ..., t_1, s_1.
    Covector cur = l;
    for (std::size_t s = r; s-- > 0;) {
        cur = single_flow(cur, schedule.I.pairs[s].second, schedule.params[2 * s + 1]);
        cur = single_flow(cur, schedule.I.pairs[s].first, schedule.params[2 * s]);
    }
    return cur;
}

SectionPoint section_point(const Covector &l) {
    IndexSet I = index_of(l);
    const std::size_t r = I.step_count();

    SectionPoint out{l, I, FlowSchedule{I, std::vector<Rational>(2 * r)}, {}};
    Covector cur = l;
    std::vector<unsigned> zeroed;

    auto solve_and_apply = [&](unsigned axis, unsigned target) -> Rational {
        auto poly = flow_coordinate_poly(cur, axis, target);
        if (poly.size() > 2)
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "section solve: coordinate at label " + std::to_string(target) +
                            " is not affine in the flow parameter along Z_" +
                            std::to_string(axis));
        Rational offset = poly.empty() ? Rational(0) : poly[0];
        Rational slope = poly.size() > 1 ? poly[1] : Rational(0);
        if (slope.is_zero())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "section solve: zero slope at label " + std::to_string(target) +
                            " flowing along Z_" + std::to_string(axis));
        Rational param = solve_affine(slope, offset, Rational(0));
        cur = single_flow(cur, axis, param);
        if (!cur.coords()[target - 1].is_zero())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "section solve: affine solve failed to zero label " +
                            std::to_string(target));
        for (unsigned z : zeroed)
            if (!cur.coords()[z - 1].is_zero())
                throw Error(ErrorKind::section_solve_invariant_violation,
                            "section solve: previously zeroed label " + std::to_string(z) +
                                " was disturbed while zeroing label " +
                                std::to_string(target));
        zeroed.push_back(target);
        out.applied.push_back(AppliedFlow{axis, param});
        return param;
    };

    for (std::size_t s = 0; s < r; ++s) {
        auto [j, k] = I.pairs[s];
        out.schedule.params[2 * s + 1] = solve_and_apply(k, j); // t_s zeroes label j_s
        out.schedule.params[2 * s] = solve_and_apply(j, k);     // s_s zeroes label k_s
    }

    out.l_section = cur;
    return out;
}

bool same_orbit(const Covector &l, const Covector &lp) {
    require_same_algebra(l.algebra(), lp.algebra());
    if (index_of(l) != index_of(lp)) return false;
    return section_point(l).l_section == section_point(lp).l_section;
}

namespace {

using SymCovector = std::vector<RatFunction>;

// <mu, v> for an exact rational vector v.
RatFunction sym_pair_vector(const SymCovector &mu, const RatVector &v,
                            const std::vector<std::string> &vars) {
    RatFunction s = RatFunction::constant(vars, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero() && !mu[i].is_zero())
            s = s + mu[i] * RatFunction::constant(vars, v[i]);
    return s;
}

// Ad*(exp(tau Z_axis)) mu with a symbolic parameter.
SymCovector sym_single_flow(const AlgebraPtr &alg, const SymCovector &mu,
                            unsigned axis, const RatFunction &tau,
                            const std::vector<std::string> &vars) {
    const std::size_t n = alg->dim();
    SymCovector out(n, RatFunction::constant(vars, Rational(0)));
    Vector f = Vector::basis(alg, axis);
    for (unsigned i = 1; i <= n; ++i) {
        Vector chain = Vector::basis(alg, i);
        RatFunction acc = RatFunction::constant(vars, Rational(0));
        RatFunction tau_pow = RatFunction::constant(vars, Rational(1));
        Rational fact(1);
        int sign = 1;
        for (std::size_t m = 0;; ++m) {
            if (m > 0) {
                chain = bracket(f, chain);
                fact *= Rational(static_cast<long>(m));
                sign = -sign;
                tau_pow = tau_pow * tau;
            }
            if (chain.is_zero()) break;
            RatVector coords = chain.coords();
            Rational scale = (sign < 0 ? -fact.inverse() : fact.inverse());
            for (auto &c : coords) c *= scale;
            RatFunction term = sym_pair_vector(mu, coords, vars);
            if (!term.is_zero()) acc = acc + term * tau_pow;
        }
        out[i - 1] = acc;
    }
    return out;
}

struct SymSolveSpec {
    unsigned axis;   // flow along Z_axis
    unsigned target; // zeroes / matches the coordinate at this label
};

} // namespace

OrbitChart orbit_chart(const AlgebraPtr &algebra, const Covector &l) {
    require_same_algebra(algebra, l.algebra());
    IndexSet I = index_of(l);
    const std::size_t n = algebra->dim();
    const std::size_t r = I.step_count();
    const std::size_t d = 2 * r;

    std::vector<unsigned> z_labels = I.sorted_labels();

    // Variable ring: l1..ln, z1..zd, then elimination parameters w1..wd.
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= n; ++i) vars.push_back("l" + std::to_string(i));
    for (std::size_t i = 1; i <= d; ++i) vars.push_back("z" + std::to_string(i));
    for (std::size_t i = 1; i <= d; ++i) vars.push_back("w" + std::to_string(i));
    auto lvar = [&](unsigned label) { return RatFunction::variable(vars, label - 1); };
    auto zvar = [&](std::size_t m) { return RatFunction::variable(vars, n + m); };
    auto wvar = [&](std::size_t m) { return RatFunction::variable(vars, n + d + m); };

    if (r == 0) {
        // Point orbit: constants, no z variables.
        OrbitChart chart{I, {}, {}};
        std::vector<std::string> lz_vars(vars.begin(), vars.begin() + n);
        for (std::size_t i = 0; i < n; ++i)
            chart.p.push_back(RatFunction::variable(lz_vars, i));
        return chart;
    }

    // Solve order of the numeric section: per step, first along Z_k zeroing
    // label j, then along Z_j zeroing label k.
    std::vector<SymSolveSpec> solves;
    for (const auto &[j, k] : I.pairs) {
        solves.push_back(SymSolveSpec{k, j});
        solves.push_back(SymSolveSpec{j, k});
    }

    // Phase 1: symbolic section point of the generic layer element.
    SymCovector mu(n, RatFunction::constant(vars, Rational(0)));
    for (unsigned i = 1; i <= n; ++i) mu[i - 1] = lvar(i);

    std::vector<unsigned> zeroed;
    for (const auto &sv : solves) {
        // coordinate at target after flowing by tau: c0 + c1*tau + ... must be
        // affine with c1 != 0 identically on the layer.
        SymCovector probe = sym_single_flow(algebra, mu, sv.axis,
                                            wvar(0), vars); // reuse w1 as probe var
        const RatFunction &coord = probe[sv.target - 1];
        // collect in the probe variable
        auto num_by_pow = coord.num().collect(n + d + 0);
        if (coord.den().uses_var(n + d + 0) ||
            (!num_by_pow.empty() && num_by_pow.rbegin()->first > 1))
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "symbolic section: coordinate at label " +
                            std::to_string(sv.target) + " not affine along Z_" +
                            std::to_string(sv.axis));
        MultiPoly c0 = num_by_pow.count(0) ? num_by_pow[0] : MultiPoly(vars);
        MultiPoly c1 = num_by_pow.count(1) ? num_by_pow[1] : MultiPoly(vars);
        if (c1.is_zero())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "symbolic section: zero slope at label " +
                            std::to_string(sv.target));
        RatFunction tau = -(RatFunction(c0) / RatFunction(c1));
        mu = sym_single_flow(algebra, mu, sv.axis, tau, vars);
        if (!mu[sv.target - 1].is_zero())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "symbolic section: solve failed to zero label " +
                            std::to_string(sv.target));
        for (unsigned z : zeroed)
            if (!mu[z - 1].is_zero())
                throw Error(ErrorKind::section_solve_invariant_violation,
                            "symbolic section: previously zeroed label " +
                                std::to_string(z) + " disturbed");
        zeroed.push_back(sv.target);
    }

    // Phase 2: flow back out of the section with free parameters, applied in
    // the inverse order of the section solves.
    SymCovector chi = mu;
    for (std::size_t m = solves.size(); m-- > 0;)
        chi = sym_single_flow(algebra, chi, solves[m].axis, wvar(m), vars);

    // Phase 3: triangular elimination w_m -> z, in solve order. The m-th
    // equation matches the coordinate at the m-th solve target with the z
    // variable of that label's ascending position.
    auto z_position = [&](unsigned label) -> std::size_t {
        return static_cast<std::size_t>(
            std::lower_bound(z_labels.begin(), z_labels.end(), label) -
            z_labels.begin());
    };
    for (std::size_t m = 0; m < solves.size(); ++m) {
        const std::size_t wi = n + d + m;
        const RatFunction &eq = chi[solves[m].target - 1];
        auto by_pow = eq.num().collect(wi);
        if (eq.den().uses_var(wi) || (!by_pow.empty() && by_pow.rbegin()->first > 1))
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "chart elimination: coordinate at label " +
                            std::to_string(solves[m].target) +
                            " not affine in its flow parameter");
        MultiPoly a0 = by_pow.count(0) ? by_pow[0] : MultiPoly(vars);
        MultiPoly a1 = by_pow.count(1) ? by_pow[1] : MultiPoly(vars);
        if (a1.is_zero())
            throw Error(ErrorKind::section_solve_invariant_violation,
                        "chart elimination: zero slope at label " +
                            std::to_string(solves[m].target));
        RatFunction z = zvar(z_position(solves[m].target));
        // (a0 + a1 w)/den = z  =>  w = (z*den - a0)/a1
        RatFunction w_solution =
            (z * RatFunction(eq.den()) - RatFunction(a0)) / RatFunction(a1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i + 1 == solves[m].target) {
                // Substitution makes this coordinate exactly z; verify, then
                // store the reduced form (content normalization does not
                // cancel the common polynomial factor itself).
                RatFunction honest = chi[i].substituted(wi, w_solution);
                if (!honest.equivalent(z))
                    throw Error(ErrorKind::section_solve_invariant_violation,
                                "chart elimination: solved coordinate is not the "
                                "chart variable");
                chi[i] = z;
            } else if (chi[i].num().uses_var(wi) || chi[i].den().uses_var(wi)) {
                chi[i] = chi[i].substituted(wi, w_solution);
            }
        }
    }

    // No elimination parameter may survive.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < d; ++m)
            if (chi[i].num().uses_var(n + d + m) || chi[i].den().uses_var(n + d + m))
                throw Error(ErrorKind::section_solve_invariant_violation,
                            "chart elimination left a free flow parameter");

    // Project down to the l,z variable ring.
    std::vector<std::string> lz_vars(vars.begin(), vars.begin() + n + d);
    std::vector<std::size_t> idmap(n + 2 * d);
    for (std::size_t i = 0; i < n + d; ++i) idmap[i] = i;
    for (std::size_t m = 0; m < d; ++m) idmap[n + d + m] = 0; // unused by now
    OrbitChart chart{I, z_labels, {}};
    for (std::size_t i = 0; i < n; ++i)
        chart.p.push_back(chi[i].reindexed(lz_vars, idmap));
    return chart;
}

Covector chart_eval(const OrbitChart &chart, const Covector &l,
                    const std::vector<Rational> &z) {
    if (z.size() != chart.z_labels.size())
        throw Error(ErrorKind::arity_mismatch, "chart evaluation z arity mismatch");
    std::vector<Rational> point = l.coords();
    point.insert(point.end(), z.begin(), z.end());
    RatVector coords;
    coords.reserve(l.algebra()->dim());
    for (const auto &p : chart.p) coords.push_back(p.eval(point));
    return Covector(l.algebra(), std::move(coords));
}

} // namespace nilorbit
