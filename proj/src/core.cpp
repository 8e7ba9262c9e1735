#include "rbmtail/core.hpp"

#include <algorithm>
#include <cmath>

namespace rbmtail {

Sample make_sample(std::span<const double> raw, std::optional<std::size_t> cap) {
  Sample out;
  out.n_raw_ = raw.size();
  out.values_.reserve(raw.size());
  for (double x : raw) {
    if (!std::isfinite(x)) {
      throw DomainError("make_sample: non-finite observation");
    }
    if (x > 0.0) {
      out.values_.push_back(x);
    } else {
      ++out.n_dropped_;
    }
  }
  std::sort(out.values_.begin(), out.values_.end());
  if (cap) {
    if (*cap == 0) {
      throw DomainError("make_sample: cap must be positive");
    }
    if (out.values_.size() > *cap) {
      out.n_capped_ = out.values_.size() - *cap;
      out.values_.erase(out.values_.begin(),
                        out.values_.begin() + static_cast<std::ptrdiff_t>(out.n_capped_));
    }
  }
  if (out.values_.size() < 2) {
    throw EmptyAfterFiltering("fewer than 2 positive observations after filtering (" +
                              std::to_string(out.values_.size()) + " left of " +
                              std::to_string(out.n_raw_) + ")");
  }
  return out;
}

std::vector<double> Sample::top_log_spacings() const {
  const std::size_t n = values_.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double hi = values_[n - i];
    const double lo = values_[n - i - 1];
    // Exact difference for close neighbours, so ties give exactly 0.
    d[i - 1] = std::log1p((hi - lo) / lo);
  }
  return d;
}

double k_of_s(std::size_t s, std::size_t n) {
  if (s < 2 || s > n) {
    throw DomainError("k_of_s: need 2 <= s <= n (s=" + std::to_string(s) +
                      ", n=" + std::to_string(n) + ")");
  }
  return 2.0 * static_cast<double>(n) / static_cast<double>(s);
}

std::size_t s_of_k(double k, std::size_t n) {
  if (!(k > 0.0) || !std::isfinite(k) || n < 2) {
    throw DomainError("s_of_k: need k > 0 and n >= 2");
  }
  const double s = std::round(2.0 * static_cast<double>(n) / k);
  return static_cast<std::size_t>(std::clamp(s, 2.0, static_cast<double>(n)));
}

std::string to_string(EstimatorId id) {
  switch (id) {
    case EstimatorId::rbm:
      return "rbm";
    case EstimatorId::hill:
      return "hill";
    case EstimatorId::smoohill:
      return "smoohill";
  }
  return "unknown";
}

TailEstimate TailEstimate::at(double gamma_hat, double k_hat, std::optional<std::size_t> s_hat) {
  TailEstimate t;
  t.gamma_hat = gamma_hat;
  t.k_hat = k_hat;
  t.s_hat = s_hat;
  t.std_error = gamma_hat / std::sqrt(k_hat);
  return t;
}

void SecondOrderModel::validate() const {
  if (!(gamma > 0.0)) throw DomainError("SecondOrderModel: gamma must be > 0");
  if (!(rho <= 0.0)) throw DomainError("SecondOrderModel: rho must be <= 0");
  if (!std::isfinite(lambda)) throw DomainError("SecondOrderModel: lambda must be finite");
}

}  // namespace rbmtail
