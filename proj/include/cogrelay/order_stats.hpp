#pragma once
// Reference laws of the selected channel gains.  With unit-mean exponential
// fading and n backlogged secondaries, each selection policy induces simple
// order-statistic distributions for the relay link, the own link, and the
// interference gain; these serve as ground truth for the sampling code.
//
//   best-link selection: the own link is the max of n exponentials, the relay
//   link the max of the remaining n-1 (independent vector), and the
//   interference gain h_r[s*] stays a plain exponential because s* is chosen
//   from the other vector.
//
//   best-relay selection: roles swap (relay = max of n, own = max of n-1),
//   and the interference gain becomes an equally-weighted mixture of the
//   lower n-1 order statistics of the relay vector.

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "cogrelay/numerics.hpp"
#include "cogrelay/params.hpp"

namespace cogrelay {

enum class LinkKind { Relay, Own, Interference };

inline const char* to_string(LinkKind link) {
  switch (link) {
    case LinkKind::Relay: return "relay";
    case LinkKind::Own: return "own";
    case LinkKind::Interference: return "interference";
  }
  throw std::invalid_argument("to_string: bad LinkKind");
}

struct PdfSpec {
  SelectionPolicy policy = SelectionPolicy::BSL;
  LinkKind link = LinkKind::Own;
  std::size_t n_su = 2;
};

namespace detail {

// Max of m unit exponentials.
inline double max_law_pdf(std::size_t m, double h) {
  return static_cast<double>(m) * std::exp(-h) *
         std::pow(-std::expm1(-h), static_cast<double>(m - 1));
}

inline double max_law_cdf(std::size_t m, double h) {
  return std::pow(-std::expm1(-h), static_cast<double>(m));
}

// Interference gain under best-relay selection: s* is drawn from the other
// n-1 secondaries, so h_r[s*] is equally likely to be any of the n-1 lower
// order statistics of the relay vector.
inline double bpl_interference_pdf(std::size_t n, double h) {
  const double one_minus = -std::expm1(-h);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    sum += binomial(n - 1, k - 1) *
           std::exp(-h * static_cast<double>(n - k + 1)) *
           std::pow(one_minus, static_cast<double>(k - 1));
  }
  return static_cast<double>(n) / static_cast<double>(n - 1) * sum;
}

inline double bpl_interference_cdf(std::size_t n, double h) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= n - 1; ++k) {
    const double outer = binomial(n - 1, k - 1);
    for (std::size_t j = 0; j <= k - 1; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const double d = static_cast<double>(n - k + 1 + j);
      sum += outer * binomial(k - 1, j) * sign * (-std::expm1(-h * d)) / d;
    }
  }
  return static_cast<double>(n) / static_cast<double>(n - 1) * sum;
}

}  // namespace detail

inline void validate(const PdfSpec& spec) {
  if (spec.n_su < 2)
    throw std::invalid_argument("PdfSpec: n_su must be at least 2");
}

inline double pdf(const PdfSpec& spec, double h) {
  validate(spec);
  if (h < 0.0) throw std::domain_error("pdf: gain must be non-negative");
  const std::size_t n = spec.n_su;
  if (spec.policy == SelectionPolicy::BSL) {
    switch (spec.link) {
      case LinkKind::Own: return detail::max_law_pdf(n, h);
      case LinkKind::Relay: return detail::max_law_pdf(n - 1, h);
      case LinkKind::Interference: return std::exp(-h);
    }
  } else {
    switch (spec.link) {
      case LinkKind::Relay: return detail::max_law_pdf(n, h);
      case LinkKind::Own: return detail::max_law_pdf(n - 1, h);
      case LinkKind::Interference: return detail::bpl_interference_pdf(n, h);
    }
  }
  throw std::invalid_argument("pdf: bad LinkKind");
}

inline double cdf(const PdfSpec& spec, double h) {
  validate(spec);
  if (h < 0.0) throw std::domain_error("cdf: gain must be non-negative");
  const std::size_t n = spec.n_su;
  if (spec.policy == SelectionPolicy::BSL) {
    switch (spec.link) {
      case LinkKind::Own: return detail::max_law_cdf(n, h);
      case LinkKind::Relay: return detail::max_law_cdf(n - 1, h);
      case LinkKind::Interference: return -std::expm1(-h);
    }
  } else {
    switch (spec.link) {
      case LinkKind::Relay: return detail::max_law_cdf(n, h);
      case LinkKind::Own: return detail::max_law_cdf(n - 1, h);
      case LinkKind::Interference: return detail::bpl_interference_cdf(n, h);
    }
  }
  throw std::invalid_argument("cdf: bad LinkKind");
}

}  // namespace cogrelay
