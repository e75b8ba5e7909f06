#pragma once

#include <cstddef>

#include "qamc/branch.hpp"

namespace qamc {

/// Symmetric 2x2 covariance of (Re, Im).
struct Covariance2 {
  double re_re = 0.0;
  double re_im = 0.0;
  double im_im = 0.0;

  double trace() const { return re_re + im_im; }
};

/// One-pass mean and covariance of complex observations (Welford), with an
/// exact pairwise merge (Chan et al.) for combining partial accumulators.
class Moments2 {
 public:
  void add(Complex z) {
    ++count_;
    const double n = static_cast<double>(count_);
    const double dx = z.real() - mean_re_;
    const double dy = z.imag() - mean_im_;
    mean_re_ += dx / n;
    mean_im_ += dy / n;
    const double dx2 = z.real() - mean_re_;
    const double dy2 = z.imag() - mean_im_;
    m_re_re_ += dx * dx2;
    m_im_im_ += dy * dy2;
    m_re_im_ += dx * dy2;
  }

  void merge(const Moments2& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double dx = other.mean_re_ - mean_re_;
    const double dy = other.mean_im_ - mean_im_;
    m_re_re_ += other.m_re_re_ + dx * dx * na * nb / n;
    m_im_im_ += other.m_im_im_ + dy * dy * na * nb / n;
    m_re_im_ += other.m_re_im_ + dx * dy * na * nb / n;
    mean_re_ += dx * nb / n;
    mean_im_ += dy * nb / n;
    count_ += other.count_;
  }

  std::size_t count() const { return count_; }
  Complex mean() const { return {mean_re_, mean_im_}; }

  /// Unbiased (count - 1) covariance; zero for fewer than two observations.
  Covariance2 covariance() const {
    if (count_ < 2) return {};
    const double d = static_cast<double>(count_ - 1);
    return {m_re_re_ / d, m_re_im_ / d, m_im_im_ / d};
  }

 private:
  std::size_t count_ = 0;
  double mean_re_ = 0.0;
  double mean_im_ = 0.0;
  double m_re_re_ = 0.0;
  double m_im_im_ = 0.0;
  double m_re_im_ = 0.0;
};

}  // namespace qamc
