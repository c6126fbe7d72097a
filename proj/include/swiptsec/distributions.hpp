#pragma once

// Distribution laws of the effective SNRs: the main link is Gamma, the
// eavesdropper side is either the max (non-cooperative) or the sum
// (cooperative) of n_eves i.i.d. Gamma variables.

#include "swiptsec/channel.hpp"
#include "swiptsec/specfun.hpp"

namespace swiptsec {

struct LinkDistributions {
    specfun::GammaShapeRate main;        // law of chi_s
    specfun::GammaShapeRate eve_single;  // law of one chi_e
    int n_eves;
    EveMode mode;
};

LinkDistributions make_link_distributions(const SystemParams& p, EveMode mode,
                                          CoeffConvention conv = CoeffConvention::Rederived);

double main_cdf(const LinkDistributions& d, double x);
double main_pdf(const LinkDistributions& d, double x);

// Max of n_eves i.i.d. single-eavesdropper SNRs.
double eve_max_cdf(const LinkDistributions& d, double x);
double eve_max_pdf(const LinkDistributions& d, double x);

// Sum of n_eves i.i.d. single-eavesdropper SNRs: Gamma with stacked shape.
double eve_sum_cdf(const LinkDistributions& d, double x);
double eve_sum_pdf(const LinkDistributions& d, double x);

// Dispatch on d.mode; ln variant feeds log-domain integrands.
double eve_cdf(const LinkDistributions& d, double x);
double eve_pdf(const LinkDistributions& d, double x);
double ln_eve_pdf(const LinkDistributions& d, double x);

}  // namespace swiptsec
