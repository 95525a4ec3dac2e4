#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nilorbit/algebra.hpp"

namespace nilorbit {

/// One step of the Ludwig-Zahir descent. Labels are the surviving original
/// basis indices (1-based); X and Y are the current-basis vectors at the
/// positions labelled k and j, c = <l,[X,Y]> != 0, and next_basis is the
/// adapted basis of the codimension-one ideal (Y-pairing annihilated).
struct LZStep {
    unsigned j_label = 0;
    unsigned k_label = 0;
    Vector X, Y;
    Rational c;
    std::vector<unsigned> next_labels;
    std::vector<Vector> next_basis;
};

struct LZTrace {
    Covector l;
    std::vector<LZStep> steps;
    std::vector<std::pair<unsigned, unsigned>> index_pairs; // ((j_1,k_1),...)
    Subspace polarization;
    Subspace stabilizer;
};

/// Stabilizer {U : <l,[U,Z_j]> = 0 for all j}, the kernel of the skew matrix
/// B_l with entries <l,[Z_i,Z_j]>.
Subspace stabilizer(const Covector &l);

/// Skew matrix B_l over the full basis.
RatMatrix skew_matrix(const Covector &l);

/// Largest ideal of the algebra contained in s, via the decreasing fixpoint
/// a_0 = s, a_{t+1} = {X in a_t : [Z_i,X] in a_t for all i}.
Subspace maximal_ideal_in(const Subspace &s);

/// Full Ludwig-Zahir run at l. Empty step list exactly when l annihilates
/// all brackets; the final adapted basis spans the polarization.
LZTrace ludwig_zahir(const Covector &l);

/// Vergne polarization sum_k g_k(l_k) with g_k = span{Z_k..Z_n} and
/// g_k(l_k) = {U in g_k : <l,[U,g_k]> = 0}.
Subspace vergne_polarization(const Covector &l);

struct CrosscheckReport {
    bool agree = false;
    Subspace lz_polarization;
    Subspace vergne;
};

/// True iff the Ludwig-Zahir polarization equals the Vergne polarization as
/// canonical subspaces; the report carries both bases.
CrosscheckReport crosscheck_polarizations(const Covector &l);

} // namespace nilorbit
