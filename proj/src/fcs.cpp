#include "tfim/fcs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tfim/errors.hpp"
#include "tfim/parallel.hpp"

namespace tfim {
namespace {

constexpr double kFlushBelow = 1e-300;

std::uint64_t splitmix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CumulantTriple central_moments(std::span<const double> weights) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    total += weights[n];
    mean += static_cast<double>(n) * weights[n];
  }
  mean /= total;
  double m2 = 0.0;
  double m3 = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    m2 += d * d * weights[n];
    m3 += d * d * d * weights[n];
  }
  return {mean, m2 / total, m3 / total, Convention::pairs};
}

}  // namespace

DefectDistribution::DefectDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw std::invalid_argument("distribution entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("distribution does not sum to 1 (sum = " + std::to_string(sum) +
                                ")");
  }
}

CumulantTriple DefectDistribution::cumulants() const { return central_moments(probabilities_); }

std::vector<double> Histogram::frequencies() const {
  std::vector<double> f(counts.size());
  for (std::size_t n = 0; n < counts.size(); ++n) {
    f[n] = static_cast<double>(counts[n]) / static_cast<double>(shots);
  }
  return f;
}

CumulantTriple Histogram::cumulants() const { return central_moments(frequencies()); }

CumulantTriple cumulants_from_profile(std::span<const double> p) {
  CumulantTriple c;
  for (double pk : p) {
    const double variance = pk * (1.0 - pk);
    c.kappa1 += pk;
    c.kappa2 += variance;
    c.kappa3 += variance * (1.0 - 2.0 * pk);
  }
  return c;
}

CumulantTriple cumulants_from_profile(const ExcitationProfile& profile) {
  return cumulants_from_profile(profile.probabilities());
}

CumulantTriple to_kinks(const CumulantTriple& pairs) {
  if (pairs.convention != Convention::pairs) {
    throw InvalidStateError("cumulants are already in the kink convention");
  }
  return {2.0 * pairs.kappa1, 4.0 * pairs.kappa2, 8.0 * pairs.kappa3, Convention::kinks};
}

DefectDistribution distribution_from_profile(std::span<const double> p) {
  std::vector<double> order(p.begin(), p.end());
  std::sort(order.begin(), order.end(), std::greater<>());

  std::vector<double> dist(order.size() + 1, 0.0);
  dist[0] = 1.0;
  std::size_t top = 0;
  for (double pk : order) {
    const double qk = 1.0 - pk;
    ++top;
    dist[top] = dist[top - 1] * pk;
    for (std::size_t n = top - 1; n > 0; --n) {
      dist[n] = dist[n] * qk + dist[n - 1] * pk;
      if (dist[n] < kFlushBelow) dist[n] = 0.0;
    }
    dist[0] *= qk;
    if (dist[0] < kFlushBelow) dist[0] = 0.0;
    if (dist[top] < kFlushBelow) dist[top] = 0.0;
  }
  return DefectDistribution(std::move(dist));
}

DefectDistribution distribution_from_profile(const ExcitationProfile& profile) {
  return distribution_from_profile(profile.probabilities());
}

double keyed_uniform(std::uint64_t seed, std::uint64_t shot, std::uint64_t mode) noexcept {
  const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ shot) ^ (mode * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Histogram sample_histogram(std::span<const double> p, std::uint64_t shots, std::uint64_t seed,
                           unsigned threads) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const std::size_t modes = p.size();
  const std::size_t workers =
      std::min<std::size_t>(resolve_threads(threads), static_cast<std::size_t>(shots));
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(modes + 1, 0));
  const std::uint64_t chunk = (shots + workers - 1) / workers;
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t w) {
    const std::uint64_t lo = w * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(shots, lo + chunk);
    auto& local = partial[w];
    for (std::uint64_t shot = lo; shot < hi; ++shot) {
      std::size_t n = 0;
      for (std::size_t m = 0; m < modes; ++m) {
        if (keyed_uniform(seed, shot, m) < p[m]) ++n;
      }
      ++local[n];
    }
  });

  Histogram h{std::vector<std::uint64_t>(modes + 1, 0), shots, seed};
  for (const auto& local : partial) {
    for (std::size_t n = 0; n <= modes; ++n) h.counts[n] += local[n];
  }
  return h;
}

Histogram sample_histogram(const ExcitationProfile& profile, std::uint64_t shots,
                           std::uint64_t seed, unsigned threads) {
  return sample_histogram(profile.probabilities(), shots, seed, threads);
}

DefectDistribution gaussian_reference(double kappa1, double kappa2, std::size_t support) {
  if (!(kappa2 > 0.0)) throw std::invalid_argument("Gaussian reference needs kappa2 > 0");
  if (support == 0) throw std::invalid_argument("Gaussian reference needs a nonempty support");
  std::vector<double> density(support);
  for (std::size_t n = 0; n < support; ++n) {
    const double d = static_cast<double>(n) - kappa1;
    density[n] = std::exp(-0.5 * d * d / kappa2);
  }
  const double total = std::accumulate(density.begin(), density.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::invalid_argument("Gaussian reference has no mass on the support");
  }
  for (double& v : density) v /= total;
  return DefectDistribution(std::move(density));
}

DistributionDistance distribution_distance(std::span<const double> p, std::span<const double> q) {
  const std::size_t size = std::max(p.size(), q.size());
  DistributionDistance d;
  double cdf_p = 0.0;
  double cdf_q = 0.0;
  for (std::size_t n = 0; n < size; ++n) {
    const double pn = n < p.size() ? p[n] : 0.0;
    const double qn = n < q.size() ? q[n] : 0.0;
    d.total_variation += std::abs(pn - qn);
    cdf_p += pn;
    cdf_q += qn;
    d.kolmogorov = std::max(d.kolmogorov, std::abs(cdf_p - cdf_q));
  }
  d.total_variation *= 0.5;
  return d;
}

CumulantRatios cumulant_ratios(const CumulantTriple& triple) {
  if (triple.kappa1 == 0.0) {
    throw UndefinedRatioError("cumulant ratios are undefined for kappa1 = 0");
  }
  return {triple.kappa2 / triple.kappa1, triple.kappa3 / triple.kappa1};
}

}  // namespace tfim
