#pragma once

#include <map>
#include <vector>

#include "iso/graded.hpp"
#include "iso/jets.hpp"

namespace iso {

struct HomologicalSolution {
  JetSeries generator;  // S, no radial terms
  JetSeries resonant;   // K, the radial (b1 == b2) part of R
};

// Solves {S, H_2} + R = K for a homogeneous R of degree >= 3 with
// S_beta = R_beta / lambda_beta, lambda_beta = 2 pi i (b1 - b2).
HomologicalSolution homological_solve(const JetSeries& r);

// exp(ad_S) f = f + {S, f} + {S, {S, f}}/2! + ..., truncated at f's order.
// S must not contain monomials of degree < 3 (the series then terminates).
JetSeries lie_transform(const JetSeries& generator, const JetSeries& f);

struct NormalFormResult {
  int order = 0;
  JetSeries normal_form{2};
  // generators[j] has degree j + 3 (possibly zero)
  std::vector<JetSeries> generators;
  // c[d] = coefficient of (z zbar)^{d+1} in the normal form, 2(d+1) <= order
  std::map<int, GradedCoefficient> c;
};

// Degree-by-degree Birkhoff normalization up to total degree `order`.
// H must be normalized and truncated at order >= `order`.
NormalFormResult birkhoff_normal_form(const JetSeries& h, int order);

struct NormalFormVerdict {
  bool isochronous = false;
  std::vector<GradedCoefficient> c;  // c_1, c_2, ... with 2(d+1) <= order
};

NormalFormVerdict is_isochronous_nf(const JetSeries& h, int order);

}  // namespace iso
