#pragma once

#include "grv/types.hpp"

#include <cstdint>
#include <vector>

namespace grv {

/// Data-generating processes that tie vulnerability to the adversarial gap
/// in closed form. The simple variants fix the attributes (topology case)
/// or the aggregation counts (attribute case).
enum class SyntheticKind {
    topology_aware,
    topology_aware_simple,
    attribute_aware,
    attribute_aware_simple,
};

struct SyntheticModel {
    SyntheticKind kind = SyntheticKind::topology_aware;
    Index n = 1000;       // nodes aggregated per sample
    Index c = 4;          // attribute dimension
    double p = 0.7;       // Bernoulli parameter; count fraction in the simple
                          // attribute case (p_count = round(p * n/2))
    double sigma = 1.0;
    Vector mu;            // length c; attribute-aware cases only
};

/// One Monte-Carlo draw, reduced to the aggregate the analysis needs.
struct TheorySample {
    Vector h;             // a' x (recentered in the simple topology case)
    int y = 0;            // +-1
    double a_mean = 0.0;  // fraction of active entries in a
};

std::vector<TheorySample> generate(const SyntheticModel& model, Index count,
                                   std::uint64_t seed);

/// sgn[h' theta] classifier family; theta is unit-norm, the downstream
/// classifiers are z and -z.
struct LinearEncoderHypothesis {
    Vector theta;         // unit L2 norm
    double q_norm = 2.0;  // dual norm used in the Hoelder worst case
};

/// Fraction of samples with y * (h' theta) * classifier_sign <= rho * ||theta||_q.
double adv_risk(const std::vector<TheorySample>& samples,
                const LinearEncoderHypothesis& hypothesis, double rho,
                int classifier_sign = +1);

/// Sign (+1 for f1, -1 for f2) minimizing empirical AdvRisk_rho; ties to +1.
int best_classifier_sign(const std::vector<TheorySample>& samples,
                         const LinearEncoderHypothesis& hypothesis, double rho);

/// AdvRisk_rho - AdvRisk_0 for the given classifier; >= 0.
double adversarial_gap(const std::vector<TheorySample>& samples,
                       const LinearEncoderHypothesis& hypothesis, double rho,
                       int classifier_sign = +1);

/// Monte-Carlo GRV of the sign encoder: benign output entropy minus the
/// smaller entropy of the two extreme shifted output distributions. Bits.
double empirical_grv_linear(const std::vector<TheorySample>& samples,
                            const LinearEncoderHypothesis& hypothesis, double rho);

/// Binary entropy in bits; 0 log 0 := 0. Throws on input outside [0,1].
double binary_entropy(double theta);

struct TheoremReport {
    double grv_mc = 0.0;
    double ag_mc = 0.0;
    double predicted_grv = 0.0;   // exact cases; upper bound for simple kinds
    double predicted_grv_lower = 0.0;  // simple kinds only
    double abs_gap = 0.0;
    bool sandwich = false;        // simple kinds check the two-sided bound
    bool sandwich_holds = false;
};

/// Evaluates measured GRV against the gap-based prediction at the given
/// radius using the best downstream classifier.
TheoremReport check_theorem_relation(const SyntheticModel& model,
                                     const LinearEncoderHypothesis& hypothesis,
                                     double rho, Index samples, std::uint64_t seed);

struct RiskBound {
    double value = 0.0;   // clamped to [0,1]
    bool clamped_high = false;
    bool clamped_low = false;
};

/// 1 - (mi - grv + ln 2) / ln(num_classes); natural logs, clamped to [0,1].
RiskBound downstream_risk_bound(double mi_estimate, double grv, int num_classes);

} // namespace grv
