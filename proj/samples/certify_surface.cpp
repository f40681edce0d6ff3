// Library walk-through: declare a surface and a subgroup, certify a few
// parameters, and follow one inconclusive case down to its witness.

#include <iostream>

#include "ellspec/presets.hpp"
#include "ellspec/specialization/injectivity.hpp"

int main() {
  using namespace ellspec;

  RatFn t = RatFn::t();
  FunctionCurve e(-(t * t), t * t);  // y^2 = x^3 - t^2 x + t^2
  SubgroupSpec m{{e.point(t, t), e.point(RatFn(0), t)}, {}, /*saturation_asserted=*/true};

  InjectivityChecker checker(e, m, 2);
  std::cout << "coset representatives:";
  for (const auto& p : checker.representatives()) std::cout << " " << p;
  std::cout << "\n";
  for (const auto& p : checker.excluded().points()) {
    std::cout << "excluded " << p.t0 << " (" << to_string(p.reason) << ")\n";
  }

  for (int t0 : {5, 27}) std::cout << to_record(checker.check(Rational(t0))) << "\n";

  // A Q with 2Q = (27, 27) on the fibre at 27 explains the failed certificate.
  RationalCurve e27 = specialize_curve(e, Rational(27));
  auto halves = n_division_points(e27, e27.point(Rational(27), Rational(27)), 2);
  for (const auto& q : halves) std::cout << "2*" << render(q) << " = (27/1,27/1)\n";

  ScanSummary s = scan(checker, 3, 200);
  std::cout << s.summary_line() << "\n";
  return 0;
}
