#include "p1/tables.hpp"

#include <cmath>
#include <numbers>

#include "p1/error.hpp"
#include "p1/format.hpp"

namespace p1 {

StokesInput table_input(TableKind kind) {
  return kind == TableKind::tritronquee ? stokes_input_direct({0, 1})
                                        : stokes_input_direct({0, -2 * std::cos(std::numbers::pi / 5)});
}

std::vector<ZeroDatum> table_zeros(TableKind kind, int n_max, const IntegratorOptions& opts) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  // extend the horizon until n_max plus-side zeros are found; the spacing shrinks like t^(-1/4)
  for (double t_end = 4.0 * n_max + 4;; t_end *= 1.5) {
    const Trajectory tr = kind == TableKind::tritronquee ? integrate(seed_tritronquee(-20), t_end, opts)
                                                         : integrate_from_pole({0, 0}, 0.5, t_end, opts);
    std::vector<ZeroDatum> out;
    for (const auto& z : find_zeros(tr))
      if (z.side == Side::plus && z.index >= 1 && z.index <= n_max) out.push_back(z);
    if (static_cast<int>(out.size()) >= n_max) {
      out.resize(static_cast<std::size_t>(n_max));
      return out;
    }
    if (t_end > 1e3) throw Error(ErrorCode::InvalidArgument, "zeros not found below t = 1000");
  }
}

ZeroTable zero_table(TableKind kind, int n_max, const IntegratorOptions& opts) {
  ZeroTable t;
  t.kind = kind;
  t.input = table_input(kind);
  const auto pred = predict_zeros(t.input, 1, n_max, Side::plus);
  const auto num = table_zeros(kind, n_max, opts);
  for (int i = 0; i < n_max; ++i) {
    const auto& p = pred[static_cast<std::size_t>(i)];
    const auto& z = num[static_cast<std::size_t>(i)];
    TableRow row;
    row.n = i + 1;
    row.r_asym = p.r_hat;
    row.b_asym = p.b_hat;
    row.r_num = z.r;
    row.b_num = z.b;
    row.rel_r = (p.r_hat - z.r) / p.r_hat;
    row.rel_b = (p.b_hat - z.b) / p.b_hat;
    t.rows.push_back(row);
  }
  return t;
}

std::vector<ZeroPrediction> predictions_truncated_alpha11(const StokesInput& in, int n_max, double cutoff) {
  const auto& K = constants();
  AlphaSet a = K.at_C0;
  a.alpha11 = alpha11_segment(K.C0, cubic_roots(K.C0).z1 + cutoff);
  std::vector<ZeroPrediction> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(predict_zero(in, n, Side::plus, a, K.C0));
  return out;
}

std::string table_csv(const ZeroTable& t) {
  std::string out = "n,r_asym,b_asym,r_num,b_num,rel_r,rel_b\n";
  for (const auto& r : t.rows)
    out += csv_row({std::to_string(r.n), fmt(r.r_asym), fmt(r.b_asym), fmt(r.r_num), fmt(r.b_num), fmt(r.rel_r),
                    fmt(r.rel_b)});
  return out;
}

}  // namespace p1
