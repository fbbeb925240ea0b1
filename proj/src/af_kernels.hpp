#pragma once

namespace cb::detail {

// Adds cur * exp(i * (a*cos_phi[j] + b*sin_phi[j] + c)) to the (re, im) accumulators for
// j in [0, n). Phases are reduced mod 2*pi before the trig calls; scratch must hold n
// doubles. Compiled separately so the loops vectorize against libmvec.
void accumulate_af_row(const double* cos_phi, const double* sin_phi, int n, double a, double b,
                       double c, double cur, double* scratch, double* re, double* im);

}  // namespace cb::detail
