// Walkthrough: load a small tensor, estimate its spectral norm along both
// routes, print the full bound report, and cross-check against the exact
// grid oracle when the shape allows it.

#include <iostream>
#include <string>

#include "trinorm/trinorm.hpp"

int main(int argc, char** argv) {
  const std::string path =
      argc > 1 ? argv[1] : std::string(DEMO_DATA_DIR) + "/sample_2x2x3.txt";
  const trinorm::Tensor3 A = trinorm::load_tensor(path);
  std::cout << "tensor = " << path << " (" << A.d1() << "x" << A.d2() << "x" << A.d3() << ")\n";

  const trinorm::SpectralEstimate est = trinorm::spectral_norm(A);
  std::cout << "estimate = " << trinorm::format_double(est.value)
            << "  (rank-one fit " << trinorm::format_double(est.hopm_route)
            << ", eigenvalue route " << trinorm::format_double(est.meig_route) << ")\n\n";

  const trinorm::BoundsReport report = trinorm::build_report(A);
  std::cout << trinorm::render_report(report) << "\n";

  if (A.d1() == 2 && A.d2() == 2) {
    const trinorm::OracleResult oracle = trinorm::grid_oracle_2x2(A);
    std::cout << "grid oracle = " << trinorm::format_double(oracle.value) << " +/- "
              << trinorm::format_double(oracle.slack) << "\n";
  }
  std::cout << "all verdicts pass = " << (report.all_pass() ? "yes" : "no") << "\n";
  return 0;
}
