#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tfim/cumulants.hpp"
#include "tfim/spectral.hpp"

namespace tfim {

/// Exact law P(n), n = 0..M, of the number of defect pairs over M modes.
class DefectDistribution {
 public:
  DefectDistribution() = default;
  /// Throws std::invalid_argument on negative entries or a sum off 1 by > 1e-10.
  explicit DefectDistribution(std::vector<double> probabilities);

  std::span<const double> probabilities() const noexcept { return probabilities_; }
  std::size_t size() const noexcept { return probabilities_.size(); }
  double operator[](std::size_t n) const { return probabilities_[n]; }

  /// Mean and second/third central moments of P(n).
  CumulantTriple cumulants() const;

 private:
  std::vector<double> probabilities_;
};

/// Shot-count histogram of sampled pair numbers.
struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  std::vector<double> frequencies() const;
  CumulantTriple cumulants() const;
};

/// kappa1 = sum p, kappa2 = sum p(1-p), kappa3 = sum p(1-p)(1-2p).
CumulantTriple cumulants_from_profile(std::span<const double> p);
CumulantTriple cumulants_from_profile(const ExcitationProfile& profile);

/// Kinks are twice the pairs, so kappa_q scales by 2^q. Throws
/// InvalidStateError when the input is already in the kink convention.
CumulantTriple to_kinks(const CumulantTriple& pairs);

/// Poisson-binomial law by sequential convolution of Bernoulli factors.
DefectDistribution distribution_from_profile(std::span<const double> p);
DefectDistribution distribution_from_profile(const ExcitationProfile& profile);

/// Uniform double in [0, 1) keyed by (seed, shot, mode). Stateless, so draws
/// do not depend on evaluation order.
double keyed_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t mode) noexcept;

/// Draws `shots` independent realisations of the per-mode Bernoulli outcomes.
/// Throws std::invalid_argument for shots == 0.
Histogram sample_histogram(std::span<const double> p, std::uint64_t shots, std::uint64_t seed,
                           unsigned threads = 0);
Histogram sample_histogram(const ExcitationProfile& profile, std::uint64_t shots,
                           std::uint64_t seed, unsigned threads = 0);

/// Normal density with mean kappa1 and variance kappa2 at n = 0..support-1,
/// renormalised over that support. Throws std::invalid_argument if kappa2 <= 0.
DefectDistribution gaussian_reference(double kappa1, double kappa2, std::size_t support);

struct DistributionDistance {
  double total_variation = 0.0;
  double kolmogorov = 0.0;
};

/// Shorter input is zero-padded.
DistributionDistance distribution_distance(std::span<const double> p, std::span<const double> q);

struct CumulantRatios {
  double variance;  // kappa2 / kappa1
  double skewness;  // kappa3 / kappa1
};

/// Ratios within the triple's own convention: for kinks this yields
/// 2 kappa2/kappa1 and 4 kappa3/kappa1 in pair cumulants. Throws
/// UndefinedRatioError for kappa1 = 0.
CumulantRatios cumulant_ratios(const CumulantTriple& triple);

}  // namespace tfim
