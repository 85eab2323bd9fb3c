#pragma once

#include <string>
#include <vector>

#include "twwc/rational.hpp"

namespace twwc {

enum class Sense { lt, le, gt, ge };

const char* sense_str(Sense s);
Sense sense_from_str(const std::string& s);

// One linear inequality: coef . x  (sense)  rhs.
template <class S>
struct LinIneqT {
  std::vector<S> coef;
  Sense sense = Sense::le;
  S rhs{};
};

// A named-variable inequality system. Projection results are returned in a
// canonical form: senses in {<, <=}, rows scaled canonically, duplicates and
// same-direction dominated rows removed.
template <class S>
struct LinearSystemT {
  std::vector<std::string> vars;
  std::vector<LinIneqT<S>> ineqs;
};

using LinIneq = LinIneqT<Rational>;
using LinearSystem = LinearSystemT<Rational>;
using LinIneqD = LinIneqT<double>;
using LinearSystemD = LinearSystemT<double>;

// Fourier-Motzkin projection eliminating the named variables in order.
// Combining a strict with a weak inequality yields a strict one. Rows whose
// coefficients all vanish are kept only when unsatisfiable (they mark an
// infeasible system); trivially true constant rows are dropped.
LinearSystem fourier_motzkin(const LinearSystem& sys, const std::vector<std::string>& eliminate);
LinearSystemD fourier_motzkin(const LinearSystemD& sys, const std::vector<std::string>& eliminate);

// Eliminates every variable and checks the surviving constant constraints.
bool system_feasible(const LinearSystem& sys);
bool system_feasible(const LinearSystemD& sys);

// Canonical row normalization (exposed for exact fixture comparison).
LinearSystem canonicalize(const LinearSystem& sys);
LinearSystemD canonicalize(const LinearSystemD& sys);

// Set equality of canonical rows (vars must match; row order ignored).
bool systems_equal(const LinearSystem& a, const LinearSystem& b);

}  // namespace twwc
