// Prints G-signature defects def(p, q) for small primes, with the Dedekind-sum check,
// and the per-group contributions used by the p = 5 and p = 7 censuses.

#include <k3sym/census.hpp>

#include <iomanip>
#include <iostream>

using namespace k3sym;

int main() {
  for (long p : {3L, 5L, 7L, 11L}) {
    std::cout << "p = " << p << "\n";
    for (long q = 1; q < p; ++q) {
      Rational d = signature_defect(p, q);
      Rational dd = Rational(-4 * p) * dedekind_sum(q, p);
      std::cout << "  def(" << p << "," << q << ") = " << std::setw(6) << d.str() << "   -4p s(q,p) = " << dd.str()
                << (d == dd ? "" : "  MISMATCH") << "\n";
    }
  }
  for (long p : {5L, 7L}) {
    std::cout << "\ngroup types, p = " << p << "\n";
    for (const auto& f : group_facts(p)) {
      std::cout << "  " << std::setw(4) << f.pattern.name << "  chi " << f.chi << "  defect " << f.defect.str() << "\n";
      for (long k = 1; k <= (p - 1) / 2; ++k)
        std::cout << "      k=" << k << "  sign " << std::setw(9) << embed_real(f.sign[k]).text << "  spin "
                  << std::setw(9) << embed_real(f.spin[k]).text << "\n";
    }
  }
}
