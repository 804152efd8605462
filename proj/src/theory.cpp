#include "grv/theory.hpp"

#include "grv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grv {

std::vector<TheorySample> generate(const SyntheticModel& model, Index count,
                                   std::uint64_t seed) {
    if (model.n < 1 || model.sigma <= 0.0)
        throw std::invalid_argument("generate: invalid model");
    const bool attribute_kind = model.kind == SyntheticKind::attribute_aware ||
                                model.kind == SyntheticKind::attribute_aware_simple;
    if (attribute_kind && model.mu.size() != model.c)
        throw std::invalid_argument("generate: mu length must equal c");
    if ((model.kind == SyntheticKind::topology_aware ||
         model.kind == SyntheticKind::attribute_aware) &&
        (model.p <= 0.0 || model.p >= 1.0))
        throw std::invalid_argument("generate: need 0 < p < 1");

    auto rng = make_rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double n_real = static_cast<double>(model.n);

    std::vector<TheorySample> samples;
    samples.reserve(count);
    for (Index s = 0; s < count; ++s) {
        TheorySample sample;
        sample.y = coin(rng) ? +1 : -1;
        const double y = static_cast<double>(sample.y);

        switch (model.kind) {
            case SyntheticKind::topology_aware: {
                std::binomial_distribution<Index> binom(model.n, 0.5 + y * (model.p - 0.5));
                const double r = static_cast<double>(binom(rng));
                sample.a_mean = r / n_real;
                sample.h = Vector(model.c);
                const double scale = std::sqrt(r) * model.sigma;
                for (Index j = 0; j < model.c; ++j) sample.h(j) = scale * gauss(rng);
                break;
            }
            case SyntheticKind::topology_aware_simple: {
                std::binomial_distribution<Index> binom(model.n, 0.5 + y * (model.p - 0.5));
                const double r = static_cast<double>(binom(rng));
                sample.a_mean = r / n_real;
                // x = 1_c and the encoder recenters by 0.5 n.
                sample.h = Vector::Constant(model.c, r - 0.5 * n_real);
                break;
            }
            case SyntheticKind::attribute_aware: {
                std::binomial_distribution<Index> binom(model.n, 0.5);
                const double r = static_cast<double>(binom(rng));
                sample.a_mean = r / n_real;
                sample.h = Vector(model.c);
                const double scale = std::sqrt(r) * model.sigma;
                for (Index j = 0; j < model.c; ++j)
                    sample.h(j) = r * y * model.mu(j) + scale * gauss(rng);
                break;
            }
            case SyntheticKind::attribute_aware_simple: {
                // Fixed aggregation counts: n0 draws from the +mu population
                // and n1 from the -mu population, p_count + q_count = n/2.
                const Index half = model.n / 2;
                const Index quarter = model.n / 4;
                const Index p_count = static_cast<Index>(std::llround(model.p * half));
                const Index q_count = half - p_count;
                const Index n0 = quarter + sample.y * (p_count - quarter);
                const Index n1 = quarter + sample.y * (q_count - quarter);
                if (n0 < 0 || n1 < 0)
                    throw std::invalid_argument("generate: infeasible counts");
                const double diff = static_cast<double>(n0 - n1);
                const double total = static_cast<double>(n0 + n1);
                sample.a_mean = total / n_real;
                sample.h = Vector(model.c);
                const double scale = std::sqrt(total) * model.sigma;
                for (Index j = 0; j < model.c; ++j)
                    sample.h(j) = diff * model.mu(j) + scale * gauss(rng);
                break;
            }
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

namespace {

double dual_norm(const LinearEncoderHypothesis& hypothesis) {
    const double q = hypothesis.q_norm;
    if (q == 2.0) return hypothesis.theta.norm();
    if (std::isinf(q)) return hypothesis.theta.cwiseAbs().maxCoeff();
    return std::pow(hypothesis.theta.cwiseAbs().array().pow(q).sum(), 1.0 / q);
}

} // namespace

double adv_risk(const std::vector<TheorySample>& samples,
                const LinearEncoderHypothesis& hypothesis, double rho,
                int classifier_sign) {
    if (rho < 0.0) throw std::invalid_argument("adv_risk: rho must be >= 0");
    const double threshold = rho * dual_norm(hypothesis);
    std::size_t vulnerable = 0;
    for (const auto& sample : samples) {
        const double margin = static_cast<double>(sample.y * classifier_sign) *
                              sample.h.dot(hypothesis.theta);
        if (margin <= threshold) ++vulnerable;
    }
    return static_cast<double>(vulnerable) / static_cast<double>(samples.size());
}

int best_classifier_sign(const std::vector<TheorySample>& samples,
                         const LinearEncoderHypothesis& hypothesis, double rho) {
    return adv_risk(samples, hypothesis, rho, +1) <= adv_risk(samples, hypothesis, rho, -1)
               ? +1
               : -1;
}

double adversarial_gap(const std::vector<TheorySample>& samples,
                       const LinearEncoderHypothesis& hypothesis, double rho,
                       int classifier_sign) {
    return adv_risk(samples, hypothesis, rho, classifier_sign) -
           adv_risk(samples, hypothesis, 0.0, classifier_sign);
}

double empirical_grv_linear(const std::vector<TheorySample>& samples,
                            const LinearEncoderHypothesis& hypothesis, double rho) {
    const double threshold = rho * dual_norm(hypothesis);
    std::size_t benign = 0, shifted_down = 0, shifted_up = 0;
    for (const auto& sample : samples) {
        const double projected = sample.h.dot(hypothesis.theta);
        if (projected >= 0.0) ++benign;
        if (projected >= threshold) ++shifted_down;
        if (projected >= -threshold) ++shifted_up;
    }
    const double count = static_cast<double>(samples.size());
    const double benign_entropy = binary_entropy(static_cast<double>(benign) / count);
    const double worst_entropy =
        std::min(binary_entropy(static_cast<double>(shifted_down) / count),
                 binary_entropy(static_cast<double>(shifted_up) / count));
    return benign_entropy - worst_entropy;
}

double binary_entropy(double theta) {
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("binary_entropy: argument outside [0,1]");
    double h = 0.0;
    if (theta > 0.0) h -= theta * std::log2(theta);
    if (theta < 1.0) h -= (1.0 - theta) * std::log2(1.0 - theta);
    return h;
}

TheoremReport check_theorem_relation(const SyntheticModel& model,
                                     const LinearEncoderHypothesis& hypothesis,
                                     double rho, Index count, std::uint64_t seed) {
    const auto samples = generate(model, count, seed);
    const int sign = best_classifier_sign(samples, hypothesis, rho);

    TheoremReport report;
    report.ag_mc = adversarial_gap(samples, hypothesis, rho, sign);
    report.grv_mc = empirical_grv_linear(samples, hypothesis, rho);

    switch (model.kind) {
        case SyntheticKind::topology_aware:
            report.predicted_grv = 1.0 - binary_entropy(0.5 + report.ag_mc);
            report.abs_gap = std::abs(report.grv_mc - report.predicted_grv);
            break;
        case SyntheticKind::attribute_aware:
            report.predicted_grv = 1.0 - binary_entropy(0.5 - report.ag_mc);
            report.abs_gap = std::abs(report.grv_mc - report.predicted_grv);
            break;
        case SyntheticKind::topology_aware_simple:
        case SyntheticKind::attribute_aware_simple:
            report.sandwich = true;
            report.predicted_grv_lower = 1.0 - binary_entropy(0.5 - 0.5 * report.ag_mc);
            report.predicted_grv = 1.0 - binary_entropy(0.5 - report.ag_mc);
            report.abs_gap = std::max({0.0, report.predicted_grv_lower - report.grv_mc,
                                       report.grv_mc - report.predicted_grv});
            report.sandwich_holds = report.abs_gap == 0.0;
            break;
    }
    return report;
}

RiskBound downstream_risk_bound(double mi_estimate, double grv, int num_classes) {
    if (num_classes < 2)
        throw std::invalid_argument("downstream_risk_bound: need num_classes >= 2");
    const double raw =
        1.0 - (mi_estimate - grv + std::log(2.0)) / std::log(static_cast<double>(num_classes));
    RiskBound bound;
    bound.clamped_high = raw > 1.0;
    bound.clamped_low = raw < 0.0;
    bound.value = std::clamp(raw, 0.0, 1.0);
    return bound;
}

} // namespace grv
