#pragma once

#include <string>
#include <vector>

#include "p1/asymptotics.hpp"
#include "p1/ode.hpp"

namespace p1 {

enum class TableKind { tritronquee, pole00 };

struct TableRow {
  int n = 1;
  double r_asym = 0, b_asym = 0, r_num = 0, b_num = 0;
  double rel_r = 0, rel_b = 0;  // (asym - num) / asym
};

struct ZeroTable {
  TableKind kind = TableKind::tritronquee;
  StokesInput input;
  std::vector<TableRow> rows;
};

// Positive zeros on the plus side with index 1..n_max, from ode-core.
//  tritronquee: algebraic seed at t = -20, s1 = i.
//  pole00: Laurent seed about (p, H) = (0, 0) at t = 0.5, s1 = -2 i cos(pi/5).
std::vector<ZeroDatum> table_zeros(TableKind kind, int n_max, const IntegratorOptions& opts = {});
StokesInput table_input(TableKind kind);

ZeroTable zero_table(TableKind kind, int n_max = 5, const IntegratorOptions& opts = {});
inline ZeroTable table1(int n_max = 5, const IntegratorOptions& opts = {}) {
  return zero_table(TableKind::tritronquee, n_max, opts);
}
inline ZeroTable table2(int n_max = 5, const IntegratorOptions& opts = {}) {
  return zero_table(TableKind::pole00, n_max, opts);
}

// Predictions with alpha_11(C0) replaced by the segment integral from z1 to
// z1 + cutoff. Diagnostic only.
std::vector<ZeroPrediction> predictions_truncated_alpha11(const StokesInput& in, int n_max,
                                                          double cutoff = 5000);

// n,r_asym,b_asym,r_num,b_num,rel_r,rel_b
std::string table_csv(const ZeroTable& t);

}  // namespace p1
