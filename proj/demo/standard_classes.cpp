// Walks through a few classes: representatives, sums, duals and invariants.

#include <iostream>

#include "iotahat.hpp"

using namespace iotahat;

int main() {
  std::cout << "Brieskorn table\n";
  for (int i = 1; i <= 4; ++i) {
    const BrieskornEntry e = brieskorn(i);
    std::cout << "  " << e.label << "  rep " << format_params(representative(x_complex(i))) << "  pivot "
              << pivot_on_class(x_complex(i)) << "\n";
  }

  std::cout << "self-dual example: rep " << format_params(representative(self_dual_complex())) << "\n";

  const Params a = parse_params("(-,-1)"), b = parse_params("(-,-2)");
  const Params s = group_sum(a, b);
  std::cout << format_params(a) << " + " << format_params(b) << " = " << format_params(s) << "\n";
  std::cout << "  phi_1 " << phi(1, s) << ", phi_2 " << phi(2, s) << ", pivot " << pivot(s) << "\n";
  std::cout << "  negation " << format_params(group_neg(s)) << "\n";

  // The trace records every candidate the greedy search tried.
  const RepresentativeTrace trace = s_invariants(tensor(build(a), build(a)));
  std::cout << "trace for " << format_params(a) << " + " << format_params(a) << ":";
  for (int x : trace.symbols) std::cout << " " << x;
  std::cout << "  (" << trace.log.size() << " probes, bound " << trace.search_bound << ")\n";

  const Params p = parse_params("(-,3)"), q = parse_params("(+,-2)");
  const int c = order_compare(p, q);
  std::cout << format_params(p) << (c < 0 ? " < " : c > 0 ? " > " : " = ") << format_params(q) << "\n";
  return 0;
}
