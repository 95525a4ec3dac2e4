#include "nilorbit/harmonic.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "nilorbit/errors.hpp"

namespace nilorbit {

SkewForm skew_form(const Covector &l, std::vector<unsigned> labels) {
    const std::size_t d = labels.size();
    RatMatrix m(d, d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) {
            Rational v = pairing(l, bracket(Vector::basis(l.algebra(), labels[a]),
                                            Vector::basis(l.algebra(), labels[b])));
            m.at(a, b) = v;
            m.at(b, a) = -v;
        }
    return SkewForm{l, std::move(labels), std::move(m)};
}

namespace {

Rational pfaffian_rec(const RatMatrix &m, std::vector<std::size_t> rows) {
    if (rows.empty()) return Rational(1);
    Rational sum(0);
    const std::size_t first = rows[0];
    for (std::size_t jj = 1; jj < rows.size(); ++jj) {
        const Rational &a = m.at(first, rows[jj]);
        if (a.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(rows.size() - 2);
        for (std::size_t t = 1; t < rows.size(); ++t)
            if (t != jj) rest.push_back(rows[t]);
        Rational term = a * pfaffian_rec(m, std::move(rest));
        // expansion along the first remaining row: sign (-1)^j with the
        // column offset counted inside the submatrix
        if (jj % 2 == 0) term = -term;
        sum += term;
    }
    return sum;
}

} // namespace

Rational pfaffian(const RatMatrix &skew) {
    if (skew.rows() != skew.cols())
        throw Error(ErrorKind::odd_size, "pfaffian of non-square matrix");
    if (skew.rows() % 2 != 0)
        throw Error(ErrorKind::odd_size, "pfaffian of odd-sized matrix");
    std::vector<std::size_t> rows(skew.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return pfaffian_rec(skew, std::move(rows));
}

Rational pfaffian(const Covector &l, const std::vector<unsigned> &labels) {
    return pfaffian(skew_form(l, labels).matrix);
}

std::complex<double> character(const Covector &l, const Vector &x) {
    double phase = -pairing(l, x).to_double();
    return {std::cos(phase), std::sin(phase)};
}

bool is_heisenberg3(const NilpotentLieAlgebra &alg) {
    if (alg.dim() != 3) return false;
    StructureMap expected;
    expected[{1, 2, 3}] = Rational(1);
    return alg.structure() == expected;
}

TestFunction::TestFunction(std::array<double, 3> center, double width,
                           std::vector<Monomial> prefactor)
    : center_(center), width_(width), prefactor_(std::move(prefactor)) {
    if (!(width_ > 0.0))
        throw Error(ErrorKind::parse, "test function width must be positive");
    if (prefactor_.empty())
        prefactor_.push_back(Monomial{0, 0, 0, 1.0});
}

double TestFunction::operator()(double x1, double x2, double x3) const {
    const double d1 = x1 - center_[0], d2 = x2 - center_[1], d3 = x3 - center_[2];
    double poly = 0.0;
    for (const auto &m : prefactor_) {
        double t = m.coeff;
        for (unsigned e = 0; e < m.e1; ++e) t *= d1;
        for (unsigned e = 0; e < m.e2; ++e) t *= d2;
        for (unsigned e = 0; e < m.e3; ++e) t *= d3;
        poly += t;
    }
    const double r2 = d1 * d1 + d2 * d2 + d3 * d3;
    return poly * std::exp(-r2 / (2.0 * width_ * width_));
}

unsigned TestFunction::degree() const {
    unsigned d = 0;
    for (const auto &m : prefactor_) d = std::max(d, m.e1 + m.e2 + m.e3);
    return d;
}

TestFunction TestFunction::scaled(double factor) const {
    auto pf = prefactor_;
    for (auto &m : pf) m.coeff *= factor;
    return TestFunction(center_, width_, std::move(pf));
}

TestFunction TestFunction::shifted(const std::array<double, 3> &delta) const {
    return TestFunction({center_[0] + delta[0], center_[1] + delta[1], center_[2] + delta[2]},
                        width_, prefactor_);
}

TestFunction TestFunction::parse(const std::string &spec) {
    auto fail = [&]() -> void {
        throw Error(ErrorKind::parse, "bad test function spec: '" + spec +
                                          "' (expected gaussian:cx,cy,cz:w:e1,e2,e3,c;...)");
    };
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = spec.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(spec.substr(start));
            break;
        }
        parts.push_back(spec.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts.size() != 4 || parts[0] != "gaussian") fail();

    auto parse_doubles = [&](const std::string &s, char sep) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, sep)) {
            try {
                std::size_t used = 0;
                out.push_back(std::stod(tok, &used));
                if (used != tok.size()) fail();
            } catch (const std::logic_error &) {
                fail();
            }
        }
        return out;
    };

    auto c = parse_doubles(parts[1], ',');
    if (c.size() != 3) fail();
    auto w = parse_doubles(parts[2], ',');
    if (w.size() != 1) fail();

    std::vector<Monomial> monos;
    std::stringstream ss(parts[3]);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        auto v = parse_doubles(tok, ',');
        if (v.size() != 4) fail();
        if (v[0] < 0 || v[1] < 0 || v[2] < 0 || v[0] > 8 || v[1] > 8 || v[2] > 8) fail();
        monos.push_back(Monomial{static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1]),
                                 static_cast<unsigned>(v[2]), v[3]});
    }
    if (monos.empty()) fail();
    return TestFunction({c[0], c[1], c[2]}, w[0], std::move(monos));
}

std::string TestFunction::str() const {
    std::ostringstream os;
    os << "gaussian:" << center_[0] << "," << center_[1] << "," << center_[2] << ":" << width_
       << ":";
    for (std::size_t i = 0; i < prefactor_.size(); ++i) {
        if (i) os << ";";
        os << prefactor_[i].e1 << "," << prefactor_[i].e2 << "," << prefactor_[i].e3 << ","
           << prefactor_[i].coeff;
    }
    return os.str();
}

std::array<double, 3> h3_multiply(const NilpotentLieAlgebra &alg,
                                  const std::array<double, 3> &x,
                                  const std::array<double, 3> &y) {
    // BCH truncated at degree 2, exact on step-2 algebras.
    std::array<double, 3> out{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
    for (const auto &[key, coeff] : alg.structure()) {
        auto [i, j, k] = key;
        double br = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1];
        out[k - 1] += 0.5 * coeff.to_double() * br;
    }
    return out;
}

namespace {

void require_h3(const NilpotentLieAlgebra &alg) {
    if (!is_heisenberg3(alg))
        throw Error(ErrorKind::not_heisenberg,
                    "operation requires the Heisenberg algebra h3 ([Z1,Z2]=Z3)");
}

} // namespace

std::complex<double> kernel_value(const TestFunction &f, const Covector &l,
                                  const std::array<double, 3> &G,
                                  const std::array<double, 3> &U,
                                  const QuadratureSpec &p2_quad,
                                  const QuadratureSpec &q_quad) {
    require_h3(*l.algebra());
    if (l.coords()[2].is_zero())
        throw Error(ErrorKind::not_generic_layer, "kernel requires l3 != 0");
    const double l2 = l.coords()[1].to_double();
    const double l3 = l.coords()[2].to_double();
    const auto &alg = *l.algebra();
    const std::array<double, 3> u_inv{-U[0], -U[1], -U[2]};

    const double W = f.space_window();
    const auto &c = f.center();

    // Window in p2 so that the second product coordinate covers the envelope.
    // For fixed p2 the third product coordinate is p3 + shear(p2) with unit
    // slope, so the inner integral is taken over the shifted envelope window.
    std::array<double, 3> probe = h3_multiply(alg, h3_multiply(alg, G, {0.0, 0.0, 0.0}), u_inv);
    const double p2_center = c[1] - probe[1];

    std::vector<double> p2n, p2w, qn, qw;
    composite_nodes(p2_quad, p2_center - W, p2_center + W, p2n, p2w);

    std::complex<double> outer = 0.0;
    for (std::size_t i = 0; i < p2n.size(); ++i) {
        const double p2 = p2n[i];
        std::array<double, 3> base = h3_multiply(alg, h3_multiply(alg, G, {0.0, p2, 0.0}), u_inv);
        const double shear = base[2]; // third coordinate at p3 = 0
        composite_nodes(q_quad, c[2] - W - shear, c[2] + W - shear, qn, qw);
        std::complex<double> inner = 0.0;
        for (std::size_t k = 0; k < qn.size(); ++k) {
            const double p3 = qn[k];
            const double fv = f(base[0], base[1], shear + p3);
            const double phase = -(l2 * p2 + l3 * p3);
            inner += qw[k] * fv * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        outer += p2w[i] * inner;
    }
    return outer;
}

KernelSample kernel_of(const TestFunction &f, const Covector &l, const KernelGrid &grid,
                       const QuadratureSpec &p2_quad, const QuadratureSpec &q_quad) {
    require_h3(*l.algebra());
    if (l.coords()[2].is_zero())
        throw Error(ErrorKind::not_generic_layer,
                    "kernel sampling requires the generic layer (l3 != 0)");
    if (grid.count < 1 || grid.a_max < grid.a_min)
        throw Error(ErrorKind::arity_mismatch, "bad kernel grid");

    KernelSample sample{l, {}, {}, 0.0};
    sample.grid.reserve(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        double a = grid.count == 1
                       ? grid.a_min
                       : grid.a_min + (grid.a_max - grid.a_min) * i / (grid.count - 1);
        sample.grid.push_back(a);
    }

    auto eval_matrix = [&](const QuadratureSpec &p2q, const QuadratureSpec &qq) {
        std::vector<std::vector<std::complex<double>>> values(grid.count);
        for (int i = 0; i < grid.count; ++i) {
            values[i].resize(grid.count);
            for (int j = 0; j < grid.count; ++j)
                values[i][j] = kernel_value(f, l, {sample.grid[i], 0.0, 0.0},
                                            {sample.grid[j], 0.0, 0.0}, p2q, qq);
        }
        return values;
    };

    sample.values = eval_matrix(p2_quad, q_quad);
    auto refined = eval_matrix(p2_quad.scaled(2), q_quad.scaled(2));
    double err = 0.0;
    for (int i = 0; i < grid.count; ++i)
        for (int j = 0; j < grid.count; ++j)
            err = std::max(err, std::abs(refined[i][j] - sample.values[i][j]));
    sample.quad_error = err;
    sample.values = std::move(refined);
    return sample;
}

const double kKappaH3 = 1.0 / (4.0 * M_PI * M_PI);

namespace {

struct TracePlan {
    std::vector<double> p2n, p2w; // p2 nodes over the enveloped window
    std::vector<double> qn, qw;   // envelope window in the third coordinate
    std::vector<std::complex<double>> u_transform; // sum_u w_u e^{i u p2_j}
    std::vector<std::vector<double>> f_table;      // [p2][q] plain f values
    double g1 = 0, g2 = 0, g3 = 0;
};

// Kernel evaluations along the trace diagonal factor through
//   F(lambda; g*x_a, x_a) = e^{i lambda g3}
//       int dp2 e^{i lambda (a + g1/2) p2} F3(g1, p2 + g2, lambda),
//   F3(x1, y, lambda) = int dq f(x1, y, q) e^{-i lambda q},
// an exact reformulation of the P(l)-integral (substitution along the unit-
// slope sheared coordinate). The trace integral over the coset parameter a
// is taken in the scaled variable u = lambda (a + g1/2), which makes the
// integrand's support independent of lambda; the Jacobian contributes the
// 1/|lambda| below. f-evaluations are independent of both u and lambda and
// are tabulated once per sample point.
TracePlan make_trace_plan(const TestFunction &f, const std::array<double, 3> &g,
                          const InversionConfig &cfg, double u_halfwidth) {
    TracePlan plan;
    plan.g1 = g[0];
    plan.g2 = g[1];
    plan.g3 = g[2];
    const double W = f.space_window();
    const auto &c = f.center();

    composite_nodes(cfg.p2_quad, c[1] - g[1] - W, c[1] - g[1] + W, plan.p2n, plan.p2w);
    composite_nodes(cfg.q_quad, c[2] - W, c[2] + W, plan.qn, plan.qw);

    std::vector<double> un, uw;
    composite_nodes(cfg.u_quad, -u_halfwidth, u_halfwidth, un, uw);
    plan.u_transform.resize(plan.p2n.size());
    for (std::size_t j = 0; j < plan.p2n.size(); ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t t = 0; t < un.size(); ++t) {
            const double ph = un[t] * plan.p2n[j];
            s += uw[t] * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        plan.u_transform[j] = s;
    }

    plan.f_table.resize(plan.p2n.size());
    for (std::size_t j = 0; j < plan.p2n.size(); ++j) {
        plan.f_table[j].resize(plan.qn.size());
        for (std::size_t k = 0; k < plan.qn.size(); ++k)
            plan.f_table[j][k] = f(g[0], plan.p2n[j] + g[1], plan.qn[k]);
    }
    return plan;
}

// tr(pi_l(g)^{-1} o op_F) at l = lambda Z3*, times |lambda| (the Jacobian of
// the u substitution cancels against the Pfaffian weight later).
std::complex<double> scaled_trace(const TracePlan &plan, double lambda) {
    const std::size_t np = plan.p2n.size(), nq = plan.qn.size();
    std::vector<std::complex<double>> q_phase(nq);
    for (std::size_t k = 0; k < nq; ++k) {
        const double ph = -lambda * plan.qn[k];
        q_phase[k] = plan.qw[k] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
        std::complex<double> f3 = 0.0;
        const auto &row = plan.f_table[j];
        for (std::size_t k = 0; k < nq; ++k) f3 += row[k] * q_phase[k];
        acc += plan.p2w[j] * plan.u_transform[j] * f3;
    }
    const double ph = lambda * plan.g3;
    return acc * std::complex<double>(std::cos(ph), std::sin(ph));
}

struct SampleEval {
    std::complex<double> rf;
    double cut_integrand; // |integrand| at the lambda cutoff
};

SampleEval eval_sample(const TestFunction &f, const std::array<double, 3> &g,
                       const InversionConfig &cfg, double lambda_max, double u_halfwidth) {
    TracePlan plan = make_trace_plan(f, g, cfg, u_halfwidth);

    std::vector<double> ln, lw;
    composite_nodes(cfg.lambda_quad, cfg.lambda_min, lambda_max, ln, lw);

    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < ln.size(); ++i) {
        const double lambda = ln[i];
        // |Pf| at lambda Z3* is |lambda|; the trace carries the matching
        // 1/|lambda| from the u substitution.
        std::complex<double> tp = scaled_trace(plan, lambda) / lambda;
        std::complex<double> tm = scaled_trace(plan, -lambda) / lambda;
        acc += lw[i] * lambda * (tp + tm);
    }

    SampleEval out;
    out.rf = kKappaH3 * acc;
    out.cut_integrand =
        kKappaH3 * (std::abs(scaled_trace(plan, cfg.lambda_min)) +
                    std::abs(scaled_trace(plan, -cfg.lambda_min)));
    return out;
}

} // namespace

InversionResult invert_h3(const TestFunction &f, const AlgebraPtr &h3,
                          const std::vector<std::array<double, 3>> &points,
                          const InversionConfig &config) {
    require_h3(*h3);
    if (points.empty())
        throw Error(ErrorKind::arity_mismatch, "no sample points");
    if (!(config.lambda_min > 0))
        throw Error(ErrorKind::arity_mismatch, "lambda_min must be positive");

    const double lambda_max =
        config.lambda_max > 0 ? config.lambda_max : f.freq_window();
    const double u_halfwidth =
        config.u_halfwidth > 0 ? config.u_halfwidth : f.freq_window();
    if (lambda_max <= config.lambda_min)
        throw Error(ErrorKind::arity_mismatch, "empty lambda range");

    InversionConfig refined = config;
    refined.lambda_quad = config.lambda_quad.scaled(2);
    refined.u_quad = config.u_quad.scaled(2);
    refined.p2_quad = config.p2_quad.scaled(2);
    refined.q_quad = config.q_quad.scaled(2);

    InversionResult result;
    result.kappa = kKappaH3;
    result.samples.resize(points.size());
    std::vector<double> errs(points.size(), 0.0);
    std::vector<double> cuts(points.size(), 0.0);

    auto run_one = [&](std::size_t i) {
        SampleEval base = eval_sample(f, points[i], config, lambda_max, u_halfwidth);
        SampleEval fine = eval_sample(f, points[i], refined, lambda_max, u_halfwidth);
        InversionSample s;
        s.g = points[i];
        s.f_value = f(points[i]);
        s.rf = fine.rf;
        s.abs_error = std::abs(fine.rf - s.f_value);
        errs[i] = std::abs(fine.rf - base.rf);
        cuts[i] = fine.cut_integrand;
        result.samples[i] = s;
    };

    const unsigned threads = std::max(1u, config.threads);
    if (threads <= 1 || points.size() < 2) {
        for (std::size_t i = 0; i < points.size(); ++i) run_one(i);
    } else {
        unsigned nt = std::min<unsigned>(threads, points.size());
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < points.size(); i += nt) run_one(i);
            });
        for (auto &th : pool) th.join();
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
        result.quad_error_estimate = std::max(result.quad_error_estimate, errs[i]);
        // Contribution bound of the excluded neighborhood of lambda = 0,
        // estimated by the integrand value at the cut times its width.
        result.truncation_bound =
            std::max(result.truncation_bound, cuts[i] * 2.0 * config.lambda_min);
    }

    if (config.tolerance > 0 &&
        result.quad_error_estimate + result.truncation_bound > config.tolerance) {
        std::ostringstream os;
        os << "requested tolerance " << config.tolerance
           << " unreachable at the given grid sizes; achieved error estimate "
           << result.quad_error_estimate + result.truncation_bound;
        throw Error(ErrorKind::quadrature_budget_exceeded, os.str());
    }
    return result;
}

} // namespace nilorbit
