#pragma once

#include <array>
#include <complex>

#include "nilorbit/algebra.hpp"
#include "nilorbit/quadrature.hpp"

namespace nilorbit {

/// Skew pairing matrix <l,[Z_i,Z_j]> over a list of basis labels.
struct SkewForm {
    Covector l;
    std::vector<unsigned> labels;
    RatMatrix matrix;
};

SkewForm skew_form(const Covector &l, std::vector<unsigned> labels);

/// Exact Pfaffian by recursive expansion along the first row.
/// Pf(empty) = 1; throws OddSize on odd dimensions.
Rational pfaffian(const RatMatrix &skew);
Rational pfaffian(const Covector &l, const std::vector<unsigned> &labels);

/// chi_l at exp(x): e^{-i<l,x>} evaluated in floating point.
std::complex<double> character(const Covector &l, const Vector &x);

/// True iff the algebra is the catalog Heisenberg h3: dim 3, [Z1,Z2] = Z3.
bool is_heisenberg3(const NilpotentLieAlgebra &alg);

/// Gaussian with polynomial prefactor on R^3 (exponential coordinates):
///   f(x) = P(x - center) * exp(-|x - center|^2 / (2 width^2)).
class TestFunction {
  public:
    struct Monomial {
        unsigned e1 = 0, e2 = 0, e3 = 0;
        double coeff = 0.0;
    };

    TestFunction(std::array<double, 3> center, double width, std::vector<Monomial> prefactor);

    /// "gaussian:cx,cy,cz:width:e1,e2,e3,coeff[;e1,e2,e3,coeff...]"
    static TestFunction parse(const std::string &spec);
    std::string str() const;

    double operator()(double x1, double x2, double x3) const;
    double operator()(const std::array<double, 3> &x) const { return (*this)(x[0], x[1], x[2]); }

    const std::array<double, 3> &center() const { return center_; }
    double width() const { return width_; }
    const std::vector<Monomial> &prefactor() const { return prefactor_; }
    unsigned degree() const;

    TestFunction scaled(double factor) const;
    TestFunction shifted(const std::array<double, 3> &delta) const;

    /// Half-width of the spatial integration window around the center, and
    /// of the frequency window; both follow the Gaussian envelope with an
    /// allowance for the polynomial degree.
    double space_window() const { return (7.0 + degree()) * width_; }
    double freq_window() const { return (7.0 + degree()) / width_; }

  private:
    std::array<double, 3> center_;
    double width_;
    std::vector<Monomial> prefactor_;
};

/// Group product on H3 in exponential coordinates via the degree-2 BCH
/// truncation (exact for step-2 algebras), with the bracket taken from the
/// algebra's structure constants.
std::array<double, 3> h3_multiply(const NilpotentLieAlgebra &alg,
                                  const std::array<double, 3> &x,
                                  const std::array<double, 3> &y);

/// Operator kernel F(l,G,U) = int_{P(l)} f(G h U^{-1}) chi_l(h) dh over
/// P(l) = exp span{Z2,Z3}, for arbitrary group elements G,U in exponential
/// coordinates. Requires the Heisenberg algebra and l3 != 0.
std::complex<double> kernel_value(const TestFunction &f, const Covector &l,
                                  const std::array<double, 3> &G,
                                  const std::array<double, 3> &U,
                                  const QuadratureSpec &p2_quad,
                                  const QuadratureSpec &q_quad);

struct KernelGrid {
    double a_min = -3.0;
    double a_max = 3.0;
    int count = 7;
};

struct KernelSample {
    Covector l;
    std::vector<double> grid;
    std::vector<std::vector<std::complex<double>>> values; // [row g][col u]
    double quad_error; // order-doubling estimate, max over entries
};

/// Kernel matrix F(l, exp(a_i Z1), exp(a_j Z1)) over the coset grid.
KernelSample kernel_of(const TestFunction &f, const Covector &l, const KernelGrid &grid,
                       const QuadratureSpec &p2_quad = {6, 14},
                       const QuadratureSpec &q_quad = {6, 14});

struct InversionConfig {
    double lambda_min = 1e-10;
    double lambda_max = 0.0;  // 0: derived from the test function
    double u_halfwidth = 0.0; // 0: derived from the test function
    QuadratureSpec lambda_quad{8, 20};
    QuadratureSpec u_quad{8, 20};
    QuadratureSpec p2_quad{8, 20};
    QuadratureSpec q_quad{8, 20};
    double tolerance = 0.0; // >0: enforce via QuadratureBudgetExceeded
    unsigned threads = 1;
};

struct InversionSample {
    std::array<double, 3> g;
    double f_value = 0.0;
    std::complex<double> rf;
    double abs_error = 0.0; // |rf - f(g)|
};

struct InversionResult {
    std::vector<InversionSample> samples;
    double kappa = 0.0;
    double quad_error_estimate = 0.0; // panel-doubling, max over samples
    double truncation_bound = 0.0;    // lambda cutoff contribution bound
};

/// Normalization constant of the Fourier inversion on H3 with Lebesgue
/// measure in exponential coordinates on G, P(l) and the section; calibrated
/// once against the brute-force oracle on the standard Gaussian at g = e.
extern const double kKappaH3;

/// Fourier inversion round trip: for each sample point g computes
///   R(F)(g) = kappa * int_{lambda_min<=|lambda|<=lambda_max}
///             tr(pi_l(g)^{-1} o op_{F(l)}) |Pf(lambda)| dlambda,
/// with l = lambda Z3*, the trace evaluated as int F(l, g.x, x) dx over the
/// coset line, and compares against f(g).
InversionResult invert_h3(const TestFunction &f, const AlgebraPtr &h3,
                          const std::vector<std::array<double, 3>> &points,
                          const InversionConfig &config = {});

} // namespace nilorbit
