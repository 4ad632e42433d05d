#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpplab/errors.hpp"
#include "vpplab/rng.hpp"

namespace vpplab {

// Scalar distribution described in profile files. Kinds:
//   point            {value}
//   uniform          {lo, hi}
//   normal           {mean, stddev} optionally {lo, hi} truncation
//   lognormal        {mu, sigma} optionally {floor, cap} (floor/cap applied by clamping)
//   exp_shifted      {min, mean_excess}   min + Exp(mean_excess)
//   uniform_int      {lo, hi} inclusive
//   mixture          {components: [{weight, dist}...]}
class Dist {
 public:
  Dist() : kind_("point"), a_(0), b_(0) {}

  static Dist point(double v) { return Dist("point", v, 0); }
  static Dist uniform(double lo, double hi) { return Dist("uniform", lo, hi); }
  static Dist normal(double mean, double stddev) { return Dist("normal", mean, stddev); }
  static Dist truncated_normal(double mean, double stddev, double lo, double hi) {
    Dist d("normal", mean, stddev);
    d.lo_ = lo;
    d.hi_ = hi;
    d.truncated_ = true;
    return d;
  }
  static Dist lognormal(double mu, double sigma, double floor = 0.0, double cap = 0.0) {
    Dist d("lognormal", mu, sigma);
    d.lo_ = floor;
    d.hi_ = cap;
    d.truncated_ = floor > 0.0 || cap > 0.0;
    return d;
  }
  static Dist exp_shifted(double min, double mean_excess) {
    return Dist("exp_shifted", min, mean_excess);
  }
  static Dist uniform_int(long lo, long hi) {
    return Dist("uniform_int", static_cast<double>(lo), static_cast<double>(hi));
  }
  static Dist mixture(std::vector<std::pair<double, Dist>> components) {
    Dist d("mixture", 0, 0);
    d.components_ = std::move(components);
    double w = 0;
    for (auto& c : d.components_) w += c.first;
    if (w <= 0) throw ProfileError("mixture weights must sum to a positive value");
    for (auto& c : d.components_) c.first /= w;
    return d;
  }

  double sample(Rng& rng) const {
    if (kind_ == "point") return a_;
    if (kind_ == "uniform") return rng.uniform(a_, b_);
    if (kind_ == "normal") {
      if (truncated_) return rng.truncated_normal(a_, b_, lo_, hi_);
      return rng.normal(a_, b_);
    }
    if (kind_ == "lognormal") {
      double x = std::exp(rng.normal(a_, b_));
      if (truncated_) {
        if (lo_ > 0.0 && x < lo_) x = lo_;
        if (hi_ > 0.0 && x > hi_) x = hi_;
      }
      return x;
    }
    if (kind_ == "exp_shifted") return a_ + rng.exponential(b_);
    if (kind_ == "uniform_int") {
      long lo = static_cast<long>(a_), hi = static_cast<long>(b_);
      return static_cast<double>(lo + static_cast<long>(rng.below(static_cast<uint64_t>(hi - lo + 1))));
    }
    if (kind_ == "mixture") {
      double u = rng.uniform01();
      double acc = 0;
      for (auto& c : components_) {
        acc += c.first;
        if (u < acc) return c.second.sample(rng);
      }
      return components_.back().second.sample(rng);
    }
    throw ProfileError("unknown distribution kind: " + kind_);
  }

  // Smallest value the distribution can produce (used by profile validation).
  double support_min() const {
    if (kind_ == "point") return a_;
    if (kind_ == "uniform" || kind_ == "uniform_int") return a_;
    if (kind_ == "normal") return truncated_ ? lo_ : -1e300;
    if (kind_ == "lognormal") return truncated_ && lo_ > 0 ? lo_ : 0.0;
    if (kind_ == "exp_shifted") return a_;
    if (kind_ == "mixture") {
      double m = 1e300;
      for (auto& c : components_) m = std::min(m, c.second.support_min());
      return m;
    }
    return -1e300;
  }

  double support_max() const {
    if (kind_ == "point") return a_;
    if (kind_ == "uniform" || kind_ == "uniform_int") return b_;
    if (kind_ == "normal") return truncated_ ? hi_ : 1e300;
    if (kind_ == "lognormal") return truncated_ && hi_ > 0 ? hi_ : 1e300;
    if (kind_ == "exp_shifted") return 1e300;
    if (kind_ == "mixture") {
      double m = -1e300;
      for (auto& c : components_) m = std::max(m, c.second.support_max());
      return m;
    }
    return 1e300;
  }

  double mean() const {
    if (kind_ == "point") return a_;
    if (kind_ == "uniform") return 0.5 * (a_ + b_);
    if (kind_ == "uniform_int") return 0.5 * (a_ + b_);
    if (kind_ == "normal") return a_;  // ignores truncation shift
    if (kind_ == "lognormal") return std::exp(a_ + 0.5 * b_ * b_);
    if (kind_ == "exp_shifted") return a_ + b_;
    if (kind_ == "mixture") {
      double m = 0;
      for (auto& c : components_) m += c.first * c.second.mean();
      return m;
    }
    return 0;
  }

  const std::string& kind() const { return kind_; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = kind_;
    if (kind_ == "point") {
      j["value"] = a_;
    } else if (kind_ == "uniform") {
      j["lo"] = a_;
      j["hi"] = b_;
    } else if (kind_ == "uniform_int") {
      j["lo"] = static_cast<long>(a_);
      j["hi"] = static_cast<long>(b_);
    } else if (kind_ == "normal") {
      j["mean"] = a_;
      j["stddev"] = b_;
      if (truncated_) {
        j["lo"] = lo_;
        j["hi"] = hi_;
      }
    } else if (kind_ == "lognormal") {
      j["mu"] = a_;
      j["sigma"] = b_;
      if (lo_ > 0) j["floor"] = lo_;
      if (hi_ > 0) j["cap"] = hi_;
    } else if (kind_ == "exp_shifted") {
      j["min"] = a_;
      j["mean_excess"] = b_;
    } else if (kind_ == "mixture") {
      auto arr = nlohmann::json::array();
      for (auto& c : components_) {
        arr.push_back({{"weight", c.first}, {"dist", c.second.to_json()}});
      }
      j["components"] = arr;
    }
    return j;
  }

  static Dist from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point") return point(j.at("value").get<double>());
    if (kind == "uniform") return uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "uniform_int")
      return uniform_int(j.at("lo").get<long>(), j.at("hi").get<long>());
    if (kind == "normal") {
      if (j.contains("lo"))
        return truncated_normal(j.at("mean").get<double>(), j.at("stddev").get<double>(),
                                j.at("lo").get<double>(), j.at("hi").get<double>());
      return normal(j.at("mean").get<double>(), j.at("stddev").get<double>());
    }
    if (kind == "lognormal")
      return lognormal(j.at("mu").get<double>(), j.at("sigma").get<double>(),
                       j.value("floor", 0.0), j.value("cap", 0.0));
    if (kind == "exp_shifted")
      return exp_shifted(j.at("min").get<double>(), j.at("mean_excess").get<double>());
    if (kind == "mixture") {
      std::vector<std::pair<double, Dist>> comps;
      for (auto& c : j.at("components"))
        comps.emplace_back(c.at("weight").get<double>(), from_json(c.at("dist")));
      return mixture(std::move(comps));
    }
    throw ProfileError("unknown distribution kind: " + kind);
  }

 private:
  Dist(std::string kind, double a, double b) : kind_(std::move(kind)), a_(a), b_(b) {}

  std::string kind_;
  double a_ = 0, b_ = 0;
  double lo_ = 0, hi_ = 0;
  bool truncated_ = false;
  std::vector<std::pair<double, Dist>> components_;
};

}  // namespace vpplab
