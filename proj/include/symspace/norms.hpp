#ifndef SYMSPACE_NORMS_HPP
#define SYMSPACE_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include "symspace/gfun.hpp"
#include "symspace/step_function.hpp"

namespace symspace {

// Lorentz norm: sum over the blocks of x* of x*_i (phi(t_i) - phi(t_{i-1})).
template <WeightFunction Phi>
double lorentz_norm(const StepFunction& x, const Phi& phi) {
  const StepFunction xs = rearrange(x);
  detail::CompensatedSum s;
  double prev = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double cur = phi.at(xs.right(i));
    if (xs.values()[i] != 0.0) s.add(xs.values()[i] * (cur - prev));
    prev = cur;
  }
  return s.value();
}

// sup_i x*_i psi(t_i): for increasing psi the sup over a block of x* sits at
// its right end.
template <WeightFunction Psi>
double quasi_norm(const StepFunction& x, const Psi& psi) {
  const StepFunction xs = rearrange(x);
  double m = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs.values()[i] != 0.0) m = std::max(m, xs.values()[i] * psi.at(xs.right(i)));
  return m;
}

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  int refinement = 0;  // log-spaced samples per segment
};

namespace detail {

template <class T>
struct is_tilde : std::false_type {};
template <class F>
struct is_tilde<Tilde<F>> : std::true_type {};

}  // namespace detail

// Marcinkiewicz norm sup_t A(t)/theta(t), A(t) = int_0^t x*.
//
// A is linear on every block of x*, so the objective is examined at each
// block end, at `refinement` log-spaced interior points, and at the interior
// stationary point when theta is a power.  For theta = t/psi the objective is
// written as psi(t) * (A(t)/t), and A(t_i)/t_i >= x*_i is enforced, which
// keeps quasi_norm(x, psi) <= marcinkiewicz_norm(x, tilde(psi)) free of
// rounding.
template <WeightFunction Theta>
SupResult marcinkiewicz_norm(const StepFunction& x, const Theta& theta, int refinement = 64) {
  const StepFunction xs = rearrange(x);
  SupResult best;
  best.refinement = refinement;
  const auto power = power_exponent_of(theta);

  auto objective = [&](double t, double a_of_t, double floor_avg) {
    if constexpr (detail::is_tilde<Theta>::value) {
      const double avg = std::max(a_of_t / t, floor_avg);
      return theta.base().at(Breakpoint(t)) * avg;
    } else {
      return a_of_t / theta.at(Breakpoint(t));
    }
  };
  auto consider = [&](double f, double t) {
    if (f > best.value) {
      best.value = f;
      best.argmax = t;
    }
  };

  detail::CompensatedSum area;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double v = xs.values()[i];
    const double lo = xs.left(i).value();
    const Breakpoint hi_bp = xs.right(i);
    const double hi = hi_bp.value();
    const double a_lo = area.value();
    area.add(v * xs.lengths()[i]);
    if (v == 0.0) break;  // A is flat from here and theta increases
    const double a_hi = area.value();

    // block end (dyadic tag kept for exact evaluation)
    if constexpr (detail::is_tilde<Theta>::value)
      consider(theta.base().at(hi_bp) * std::max(a_hi / hi, v), hi);
    else
      consider(a_hi / theta.at(hi_bp), hi);

    const double beta = a_lo - v * lo;  // A(t) = v t + beta on this block
    const double start = lo > 0.0 ? lo : hi * std::exp2(-16.0);
    for (int r = 1; r <= refinement; ++r) {
      const double t = start * std::pow(hi / start, static_cast<double>(r) / (refinement + 1));
      if (t <= lo || t >= hi) continue;
      consider(objective(t, v * t + beta, v), t);
    }
    if (power && *power < 1.0 && *power > 0.0 && beta > 0.0) {
      const double a = *power;
      const double t = a * beta / (v * (1.0 - a));
      if (t > lo && t < hi) consider(objective(t, v * t + beta, v), t);
    }
  }
  return best;
}

}  // namespace symspace

#endif  // SYMSPACE_NORMS_HPP
