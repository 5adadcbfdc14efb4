#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nc11/coding.hpp"
#include "nc11/error.hpp"
#include "nc11/instance.hpp"
#include "nc11/routing.hpp"

namespace nc11 {

// Exact rational, always reduced with a positive denominator.
class Fraction {
 public:
  constexpr Fraction(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw ContractError("fraction with zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Fraction operator+(Fraction a, Fraction b) {
    return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend constexpr Fraction operator-(Fraction a, Fraction b) { return a + Fraction(-b.num_, b.den_); }
  friend constexpr Fraction operator*(Fraction a, Fraction b) {
    return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend constexpr bool operator==(const Fraction&, const Fraction&) = default;
  friend constexpr std::strong_ordering operator<=>(Fraction a, Fraction b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  static constexpr __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static constexpr Fraction make(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim) throw DomainError("fraction overflows 64 bits");
    return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

// Lower bounds on conventional and coded power for a routed and coded instance.
struct BoundReport {
  Watts conventional_lower = 0.0;
  Watts nc_lower_pairs = 0.0;
  Watts nc_lower_characteristic = 0.0;
  std::vector<int> h_min;              // per demand
  std::vector<int> h_hat;              // shared hops with the coding partner
  std::vector<double> h_characteristic;  // h_min - h_hat / 4
  double h_characteristic_avg = 0.0;
  Gbps volume_avg = 0.0;
};

namespace detail {

inline std::vector<int> min_hops(const Instance& inst) {
  std::vector<int> out;
  out.reserve(inst.demands.size());
  for (const Demand& d : inst.demands) out.push_back(min_hop_count(inst.topology, d.source, d.dest));
  return out;
}

}  // namespace detail

// 2k * sum_d V^d * h_min^d
inline Watts bound_conventional(const Instance& inst) {
  auto h = detail::min_hops(inst);
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) sum += inst.demands[i].volume * h[i];
  return 2.0 * inst.power.slope() * sum;
}

// The pair term uses the mean of the two volumes, which reduces to the common
// volume when the instance is uniform. V and h~ in the final bound are means
// over the demand set.
inline BoundReport bound_nc(const Instance& inst, const CodingAssignment& assignment) {
  const double k = inst.power.slope();
  const std::size_t n = inst.demands.size();
  BoundReport r;
  r.h_min = detail::min_hops(inst);
  r.h_hat.assign(n, 0);
  for (const auto& p : assignment.pairs) {
    if (p.d1 >= n || p.d2 >= n) throw ContractError("assignment references an unknown demand");
    r.h_hat[p.d1] = r.h_hat[p.d2] = p.shared_hops();
  }

  double volume_hops = 0.0;
  double volume_sum = 0.0;
  double h_tilde_sum = 0.0;
  r.h_characteristic.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = inst.demands[i].volume;
    volume_hops += v * r.h_min[i];
    volume_sum += v;
    r.h_characteristic[i] = r.h_min[i] - r.h_hat[i] / 4.0;
    h_tilde_sum += r.h_characteristic[i];
  }
  double pair_term = 0.0;
  for (const auto& p : assignment.pairs) {
    pair_term += 0.5 * (inst.demands[p.d1].volume + inst.demands[p.d2].volume) * p.shared_hops();
  }

  r.conventional_lower = 2.0 * k * volume_hops;
  r.nc_lower_pairs = std::max(0.0, k * (2.0 * volume_hops - pair_term));
  if (n > 0) {
    r.volume_avg = volume_sum / static_cast<double>(n);
    r.h_characteristic_avg = h_tilde_sum / static_cast<double>(n);
    r.nc_lower_characteristic = std::max(
        0.0, 2.0 * k * static_cast<double>(n) * r.volume_avg * r.h_characteristic_avg);
  }
  return r;
}

struct ClosedForm {
  Watts p_conventional = 0.0;
  Watts p_nc = 0.0;
  Fraction savings;
};

namespace detail {

inline void require_size(int n) {
  if (n < 3) {
    throw DomainError("closed forms need at least 3 nodes (got " + std::to_string(n) +
                      "); smaller networks have no two disjoint paths to protect with");
  }
}

inline void require_volume(Gbps v) {
  if (!(v >= 0.0)) throw DomainError("volume must be non-negative");
}

}  // namespace detail

// Savings of the optimally coded full mesh: 1/6 for odd n, (n-2)/(6(n-1)) for even n.
inline Fraction mesh_savings(int n) {
  detail::require_size(n);
  return n % 2 == 1 ? Fraction(1, 6) : Fraction(n - 2, 6 * static_cast<std::int64_t>(n - 1));
}

inline ClosedForm mesh_power(int n, Gbps volume, const PowerParams& params = {}) {
  detail::require_size(n);
  detail::require_volume(volume);
  validate_power(params);
  const double k = params.slope();
  const double pairs = static_cast<double>(n) * (n - 1);
  ClosedForm out;
  out.p_conventional = 3.0 * k * volume * pairs;
  out.savings = mesh_savings(n);
  out.p_nc = n % 2 == 1 ? 2.5 * k * volume * pairs
                        : k * volume * n * (5.0 * n - 4.0) / 2.0;
  return out;
}

// Gap between odd and even mesh savings: 1/(6(n-1)).
inline Fraction mesh_fluctuation(int n) {
  detail::require_size(n);
  return Fraction(1, 6 * static_cast<std::int64_t>(n - 1));
}

enum class RingClass { odd1, odd2, even1, even2 };

inline std::string to_string(RingClass c) {
  switch (c) {
    case RingClass::odd1: return "odd1";
    case RingClass::odd2: return "odd2";
    case RingClass::even1: return "even1";
    case RingClass::even2: return "even2";
  }
  return "?";
}

inline RingClass ring_classify(int n) {
  detail::require_size(n);
  if (n % 2 == 1) return ((n - 1) / 2) % 2 == 1 ? RingClass::odd1 : RingClass::odd2;
  return ((n - 2) / 2) % 2 == 1 ? RingClass::even1 : RingClass::even2;
}

// Total shared hops of the protection-protection coding on an all-pairs ring.
inline std::int64_t ring_shared_hops(int n) {
  const RingClass c = ring_classify(n);
  const std::int64_t m = n;
  switch (c) {
    case RingClass::odd1: return m * (m - 3) * (3 * m - 1) / 8;
    case RingClass::odd2: return 3 * m * (m - 1) * (m - 1) / 8;
    case RingClass::even1: return m * m * (3 * m - 8) / 8;
    case RingClass::even2: return m * (m - 2) * (3 * m - 2) / 8;
  }
  return 0;
}

// Working plus protection hops of all-pairs 1+1 on a ring: n^3 - n^2.
inline std::int64_t ring_total_hops(int n) {
  detail::require_size(n);
  const std::int64_t m = n;
  return m * m * m - m * m;
}

inline ClosedForm ring_power(int n, Gbps volume, const PowerParams& params = {}) {
  detail::require_volume(volume);
  validate_power(params);
  const std::int64_t total = ring_total_hops(n);
  const std::int64_t shared = ring_shared_hops(n);
  const double kv = params.slope() * volume;
  ClosedForm out;
  out.p_conventional = kv * static_cast<double>(total);
  out.p_nc = kv * static_cast<double>(total - shared);
  out.savings = Fraction(shared, total);
  return out;
}

namespace detail {

// Volume of an instance the closed forms can describe, or a DomainError.
inline Gbps closed_form_volume(const Instance& inst, bool ring) {
  const int n = inst.topology.node_count();
  require_size(n);
  if (!is_uniform_all_pairs(inst)) {
    throw DomainError("closed forms apply only to uniform all-pairs demands");
  }
  const Topology expected = ring ? generate_ring(n, 0.0).topology : generate_full_mesh(n, 0.0).topology;
  if (!(inst.topology == expected)) {
    throw DomainError(std::string("topology is not a ") + (ring ? "ring" : "full mesh") +
                      " in canonical node order");
  }
  return inst.demands.front().volume;
}

}  // namespace detail

inline ClosedForm mesh_power(const Instance& inst) {
  return mesh_power(inst.topology.node_count(), detail::closed_form_volume(inst, false), inst.power);
}

inline ClosedForm ring_power(const Instance& inst) {
  return ring_power(inst.topology.node_count(), detail::closed_form_volume(inst, true), inst.power);
}

}  // namespace nc11
