// Walkthrough: labels, degree and covering lifts of a marked code.

#include <iostream>

#include "sgs1/labels.hpp"
#include "sgs1/lift.hpp"
#include "sgs1/parse.hpp"

int main() {
  using namespace sgs1;

  // A trefoil with one cut mark: degree 1, one crossing picks up label -1.
  MarkedGaussCode code = parse_code("*O1+ M+ U2+ O3+ U1+ O2+ U3+");
  LabeledDiagram d = compute_labels(code);

  std::cout << "code: " << format_code(code);
  std::cout << "degree: " << d.degrees[0] << "\n";
  for (const auto& [id, label] : d.crossing_labels)
    std::cout << "crossing " << id << ": label " << label << ", parity "
              << parity(d, id) << "\n";

  // A degree-0 two-mark diagram and a window of its line cover.
  MarkedGaussCode flat = parse_code("*U1+ M+ O1+ M-");
  CoveringLink cover = lift_degree0(compute_labels(flat), -1, 2);
  std::cout << "\nlift of " << format_code(flat) << "over sheets [-1, 2]:\n"
            << format_cover(cover);
  std::cout << "omitted at the window boundary: " << cover.dropped.size()
            << " crossings\n";

  // The same diagram wrapped twice lifts along the 2-fold cover instead.
  MarkedGaussCode wrapped = parse_code("*M+ M+");
  CoveringLink cyc = lift_cyclic(compute_labels(wrapped), 2);
  std::cout << "\n2-fold cover of " << format_code(wrapped)
            << format_cover(cyc);
  return 0;
}
