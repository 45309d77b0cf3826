#include "specinv/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specinv {

Gauge::Gauge(GroupPtr group, std::vector<Elem> gens, bool normalized, BfsCaps caps, bool zero)
    : group_(std::move(group)),
      gens_(std::move(gens)),
      normalized_(normalized),
      caps_(caps),
      zero_(zero) {
  Elem e = group_->identity();
  length_[e] = 0;
  spheres_.push_back({e});
}

Gauge Gauge::word_gauge(GroupPtr group, bool normalized, BfsCaps caps) {
  auto gens = group->generators();
  return Gauge(std::move(group), std::move(gens), normalized, caps, false);
}

Gauge Gauge::word_gauge(GroupPtr group, std::vector<Elem> generating_set, bool normalized,
                        BfsCaps caps) {
  if (generating_set.empty()) fail(ErrorKind::config, "word_gauge: empty generating set");
  for (const auto& g : generating_set) {
    group->validate(g);
    if (std::find(generating_set.begin(), generating_set.end(), group->inverse(g)) ==
        generating_set.end())
      fail(ErrorKind::config, "word_gauge: generating set is not symmetric");
  }
  return Gauge(std::move(group), std::move(generating_set), normalized, caps, false);
}

Gauge Gauge::zero_gauge(GroupPtr group) {
  auto gens = group->generators();
  return Gauge(std::move(group), std::move(gens), false, {}, true);
}

std::uint32_t Gauge::try_expand_to(std::uint32_t radius) {
  while (expanded_radius() < radius && !exhausted_) {
    if (expanded_radius() >= caps_.radius_cap) break;
    std::vector<Elem> next;
    for (const Elem& g : spheres_.back()) {
      for (const Elem& s : gens_) {
        Elem h = group_->mul(g, s);
        auto [it, inserted] = length_.try_emplace(h, static_cast<std::int64_t>(spheres_.size()));
        if (inserted) next.push_back(std::move(h));
      }
    }
    if (next.empty()) {
      exhausted_ = true;
      break;
    }
    if (length_.size() > caps_.element_budget) {
      for (const Elem& g : next) length_.erase(g);
      break;
    }
    spheres_.push_back(std::move(next));
  }
  return expanded_radius();
}

std::int64_t Gauge::raw(const Elem& g) {
  group_->validate(g);
  if (zero_) return 0;
  auto it = length_.find(g);
  while (it == length_.end()) {
    std::uint32_t before = expanded_radius();
    if (before >= caps_.radius_cap)
      fail(ErrorKind::gauge_overflow,
           "word gauge: radius cap " + std::to_string(caps_.radius_cap) + " reached");
    if (try_expand_to(before + 1) == before) {
      if (exhausted_)
        fail(ErrorKind::domain, "word gauge: element outside the generated subgroup");
      fail(ErrorKind::gauge_overflow,
           "word gauge: element budget " + std::to_string(caps_.element_budget) + " reached");
    }
    it = length_.find(g);
  }
  return it->second;
}

const std::vector<Elem>& Gauge::sphere(std::uint32_t r) const {
  if (r >= spheres_.size()) fail(ErrorKind::domain, "sphere: radius not expanded");
  return spheres_[r];
}

std::vector<Elem> Gauge::ball(std::uint32_t r) {
  if (try_expand_to(r) < r && !exhausted_)
    fail(ErrorKind::gauge_overflow, "ball: cap reached before radius " + std::to_string(r));
  std::vector<Elem> out;
  for (std::uint32_t k = 0; k <= std::min<std::uint32_t>(r, expanded_radius()); ++k)
    out.insert(out.end(), spheres_[k].begin(), spheres_[k].end());
  return out;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  double den = n * sxx - sx * sx;
  f.slope = den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    f.sse += r * r;
  }
  return f;
}

}  // namespace

GrowthReport ball_sizes(Gauge& gauge, std::uint32_t n_max) {
  GrowthReport rep;
  std::uint32_t reached = std::min(gauge.try_expand_to(n_max), n_max);
  rep.truncated = reached < n_max && !gauge.exhausted();
  std::int64_t total = 0;
  for (std::uint32_t r = 0; r <= reached; ++r) {
    total += static_cast<std::int64_t>(gauge.sphere(r).size());
    rep.sizes.push_back(total);
  }
  for (std::uint32_t r = reached + 1; gauge.exhausted() && r <= n_max; ++r)
    rep.sizes.push_back(total);  // finite group: ball saturates
  std::uint32_t hi = static_cast<std::uint32_t>(rep.sizes.size()) - 1;
  std::uint32_t lo = std::max<std::uint32_t>(1, hi / 2);
  rep.window_lo = lo;
  rep.window_hi = hi;
  if (hi < lo + 2) {
    rep.classification = "inconclusive";
    return rep;
  }
  std::vector<double> logn, n_lin, logsz;
  for (std::uint32_t r = lo; r <= hi; ++r) {
    logn.push_back(std::log(static_cast<double>(r)));
    n_lin.push_back(static_cast<double>(r));
    logsz.push_back(std::log(static_cast<double>(rep.sizes[r])));
  }
  LineFit poly = least_squares(logn, logsz);
  LineFit expo = least_squares(n_lin, logsz);
  if (expo.sse < poly.sse) {
    rep.classification = "exponential";
    rep.rate = std::exp(expo.slope);
    rep.degree = poly.slope;
  } else {
    rep.classification = "polynomial";
    rep.degree = poly.slope;
    rep.rate = std::exp(expo.slope);
  }
  return rep;
}

DominationReport gauge_dominates(Gauge& gamma, Gauge& sigma, const std::vector<Elem>& sample,
                                 int d_cap, double c_cap) {
  if (sample.empty()) fail(ErrorKind::domain, "gauge_dominates: empty sample");
  DominationReport rep;
  for (int d = 0; d <= d_cap; ++d) {
    double worst = 0.0;
    Elem worst_elem = gamma.group()->identity();
    for (const Elem& g : sample) {
      double num = static_cast<double>(gamma.raw(g));
      double den = std::pow(1.0 + static_cast<double>(sigma.raw(g)), d);
      double ratio = num / den;
      if (ratio > worst) {
        worst = ratio;
        worst_elem = g;
      }
    }
    double c = std::ceil(worst);
    if (c < 1.0) c = 1.0;
    if (c <= c_cap) {
      rep.dominated = true;
      rep.degree = d;
      rep.constant = c;
      rep.worst_ratio = worst;
      return rep;
    }
    if (d == d_cap) {
      rep.witness = worst_elem;
      rep.worst_ratio = worst;
    }
  }
  rep.dominated = false;
  rep.degree = d_cap;
  rep.constant = c_cap;
  return rep;
}

DominationReport gauge_dominates(Gauge& gamma, Gauge& sigma, std::uint32_t radius, int d_cap,
                                 double c_cap) {
  return gauge_dominates(gamma, sigma, gamma.ball(radius), d_cap, c_cap);
}

GaugeAxiomReport check_gauge_axioms(Gauge& gauge, std::uint32_t radius, std::size_t pairs,
                                    Rng& rng) {
  if (pairs == 0) fail(ErrorKind::config, "need at least one pair");
  const Group& group = *gauge.group();
  auto ball = gauge.ball(radius);
  gauge.try_expand_to(2 * radius);  // products of two ball elements stay resolvable

  GaugeAxiomReport rep;
  rep.pairs = pairs;
  rep.identity_ok = gauge.raw(group.identity()) == 0;
  rep.symmetric = true;
  rep.subadditive = true;
  double worst = -std::numeric_limits<double>::infinity();
  auto last = static_cast<std::int64_t>(ball.size()) - 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Elem& g = ball[static_cast<std::size_t>(rng.uniform_int(0, last))];
    const Elem& h = ball[static_cast<std::size_t>(rng.uniform_int(0, last))];
    std::int64_t tg = gauge.raw(g);
    std::int64_t th = gauge.raw(h);
    if (gauge.raw(group.inverse(g)) != tg) rep.symmetric = false;
    auto defect = static_cast<double>(gauge.raw(group.mul(g, h)) - tg - th);
    if (defect > worst) {
      worst = defect;
      rep.witness_g = g;
      rep.witness_h = h;
    }
    if (defect > 0.0) rep.subadditive = false;
  }
  rep.max_defect = worst;
  rep.pass = rep.identity_ok && rep.symmetric && rep.subadditive;
  return rep;
}

}  // namespace specinv
