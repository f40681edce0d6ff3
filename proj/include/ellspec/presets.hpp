#pragma once

#include <vector>

#include "ellspec/specialization/injectivity.hpp"

// The two worked surfaces used throughout the tools and tests.

namespace ellspec::presets {

struct Surface {
  FunctionCurve curve;
  SubgroupSpec subgroup;
};

/// y^2 = x^3 - t^2 x + t^2 with M = <(t, t), (0, t)>, torsion-free.
inline Surface rank_two_surface() {
  RatFn t = RatFn::t();
  FunctionCurve e(-(t * t), t * t);
  SubgroupSpec m{{e.point(t, t), e.point(RatFn(0), t)}, {}, true};
  return {e, m};
}

inline FunctionCurve rank_four_curve() {
  RatFn t = RatFn::t();
  return FunctionCurve(-(t * t + RatFn(27)), RatFn(10) * t * t + RatFn(48) * t + RatFn(90));
}

/// The rank-four surface with the rank-two subgroup <(t+3, 4t+6), (9, t+24)>.
inline Surface rank_four_surface() {
  RatFn t = RatFn::t();
  FunctionCurve e = rank_four_curve();
  SubgroupSpec m{{e.point(t + RatFn(3), RatFn(4) * t + RatFn(6)), e.point(RatFn(9), t + RatFn(24))},
                 {},
                 true};
  return {e, m};
}

/// Full Mordell-Weil basis of the rank-four surface.
inline Surface rank_four_full() {
  RatFn t = RatFn::t();
  FunctionCurve e = rank_four_curve();
  SubgroupSpec m{{e.point(RatFn(9), t + RatFn(24)), e.point(RatFn(6), RatFn(2) * t + RatFn(12)),
                  e.point(RatFn(1), RatFn(3) * t + RatFn(8)),
                  e.point(t + RatFn(3), RatFn(4) * t + RatFn(6))},
                 {},
                 true};
  return {e, m};
}

}  // namespace ellspec::presets
