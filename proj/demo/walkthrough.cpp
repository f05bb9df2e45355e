// Tour of the library: constants, a Ness minimum, an orbit descent and a
// Hodge bound report.

#include <iostream>

#include "nilcurv/nilcurv.hpp"

int main() {
  using namespace nilcurv;

  const Partition lambda = Partition::parse("6,4,2,1");
  std::cout << "lambda = (" << lambda.to_string() << "), conjugate (" << conjugate_partition(lambda).to_string()
            << ")\n";
  std::cout << "C_lambda = " << c_constant(lambda) << " = D of the conjugate " << d_constant(Composition(conjugate_partition(lambda)))
            << '\n';
  std::cout << young_diagram(lambda);

  const Partition mu = Partition::parse("3,1");
  std::cout << "\nK(X^(3,1)) = " << k_value(standard_nilpotent(mu)) << ", C = " << c_constant(mu).to_double() << '\n';

  Rng rng = stream_for(42, 0);
  const ComplexMatrix a = conjugate_by(random_conjugator(4, rng), standard_nilpotent(mu));
  std::cout << "K at a random conjugate: " << k_value(a) << '\n';
  const MinimizeResult r = minimize_k_over_orbit(a, MinimizeOptions{});
  std::cout << "after descent: " << r.min_estimate << " in " << r.iterations << " iterations, rigidity residual "
            << r.rigidity.residual << '\n';

  const Composition hodge_row = Composition::parse("2,4,2,4,3,2");
  std::cout << "\nR = (" << hodge_row.to_string() << ")\n" << generalized_young_diagram(hodge_row);
  std::cout << "column runs " << format_set_partition(conjugate_set_partition(hodge_row)) << ", R^t = ("
            << conjugate_composition(hodge_row).to_string() << ")\n";

  const BoundReport report = make_bound_report(HodgeVector::parse("1,4,4,1"));
  std::cout << "\nquintic-type (1,4,4,1): sharp " << report.sharp_bound << ", closed form " << *report.general_bound
            << ", domain " << report.domain.group_name() << " / " << report.domain.isotropy_name() << '\n';
  return 0;
}
