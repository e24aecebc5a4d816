#include "pebble/lp/build.hpp"

#include <set>

namespace pebble::lp {

void check_program_args(const Rational& c, const std::vector<std::size_t>& D, std::size_t k) {
  if (k < 2) throw InvalidInput("k must be >= 2");
  if (!(c > 0) || !(c < Rational(static_cast<long>(k)))) throw InvalidInput("c must satisfy 0 < c < k");
  for (auto d : D) {
    if (d < 1 || d + 1 > k) throw InvalidInput("device " + std::to_string(d) + " outside 1..k-1");
  }
}

std::vector<std::vector<std::size_t>> symbolic_snapshots(const std::vector<std::size_t>& D, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> s(k);
  for (std::size_t j = 0; j < k; ++j) s[j] = j;
  out.push_back(s);
  for (std::size_t n = 1; n <= D.size(); ++n) {
    s.erase(s.begin() + static_cast<long>(D[n - 1] - 1));
    s.push_back(t_var(k, n));
    out.push_back(s);
  }
  return out;
}

namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

// lo <= hi, tightened by the margin: lo - hi <= -margin.
void order_row(LinearProgram& lp, const std::string& id, std::size_t lo, std::size_t hi, const Rational& lo_coeff,
               const Rational& margin) {
  lp.add_row(id, Terms{{lo, lo_coeff}, {hi, Rational(-1)}}, Relation::LessEq, -margin);
}

}  // namespace

LinearProgram build_L(const Rational& c, const std::vector<std::size_t>& D, std::size_t k, const BuildOptions& opt) {
  check_program_args(c, D, k);
  const std::size_t N = D.size();
  const Rational K(static_cast<long>(k));
  const Rational qc = K / (K - c);
  const Rational b = c / K;
  const Rational one(1);

  LinearProgram lp;
  for (std::size_t j = 1; j <= k; ++j) lp.add_variable("T0_" + std::to_string(j));
  for (std::size_t n = 1; n <= N; ++n) lp.add_variable("t_" + std::to_string(n));
  const std::size_t Tk = k - 1;

  // (a) ordering and normalisation
  if (sgn(opt.strict_margin) > 0) lp.add_row("pos", Terms{{0, Rational(-1)}}, Relation::LessEq, -opt.strict_margin);
  for (std::size_t j = 1; j < k; ++j) order_row(lp, "mono:T0_" + std::to_string(j), j - 1, j, one, opt.strict_margin);
  for (std::size_t n = 1; n <= N; ++n) {
    const std::size_t prev = n == 1 ? Tk : t_var(k, n - 1);
    order_row(lp, "mono:t_" + std::to_string(n), prev, t_var(k, n), one, opt.strict_margin);
  }
  lp.add_row("norm", Terms{{Tk, one}}, Relation::Equal, one);

  // (b) subgeometry: t_n <= q_c t_{n-1}
  for (std::size_t n = 1; n <= N; ++n) {
    const std::size_t prev = n == 1 ? Tk : t_var(k, n - 1);
    lp.add_row("sub:" + std::to_string(n), Terms{{t_var(k, n), one}, {prev, -qc}}, Relation::LessEq, 0);
  }

  // (c) supergeometry over two steps
  if (opt.property5) {
    for (std::size_t n = 1; n + 2 <= N; ++n) {
      order_row(lp, "p5:" + std::to_string(n), t_var(k, n), t_var(k, n + 2), qc, opt.strict_margin);
    }
  }

  // (d) the initial snapshot
  if (opt.initial_compliance) {
    for (std::size_t j = 1; j <= k; ++j) {
      Terms row{{j - 1, one}};
      if (j >= 2) row.emplace_back(j - 2, Rational(-1));
      row.emplace_back(Tk, -b);
      lp.add_row("init:" + std::to_string(j), std::move(row), Relation::LessEq, 0);
    }
  }

  // (e) the interval merged by each update
  const auto snaps = symbolic_snapshots(D, k);
  for (std::size_t n = 1; n <= N; ++n) {
    const auto& s = snaps[n];
    const std::size_t d = D[n - 1];
    Terms row{{s[d - 1], one}};
    if (d >= 2) row.emplace_back(s[d - 2], Rational(-1));
    row.emplace_back(t_var(k, n), -b);
    lp.add_row("merge:" + std::to_string(n), std::move(row), Relation::LessEq, 0);
  }

  // Property 6 where a snapshot has t_n directly below t_{n+3}.
  if (opt.property6) {
    std::set<std::size_t> done;
    for (const auto& s : snaps) {
      for (std::size_t j = 0; j + 1 < k; ++j) {
        if (s[j] < k || s[j + 1] != s[j] + 3) continue;
        const std::size_t n = s[j] - k + 1;
        if (!done.insert(n).second) continue;
        order_row(lp, "p6:" + std::to_string(n), s[j], s[j + 1], qc * qc, opt.strict_margin);
      }
    }
  }
  return lp;
}

LinearProgram build_Lstar(const Rational& c, const Rational& q, const std::vector<std::size_t>& D, std::size_t k,
                          const BuildOptions& opt) {
  if (!(q > 1)) throw InvalidInput("q must exceed 1");
  if (D.empty()) throw InvalidInput("period must be non-empty");
  LinearProgram lp = build_L(c, D, k, opt);
  Rational qm(1);
  for (std::size_t i = 0; i < D.size(); ++i) qm *= q;
  const auto Sm = symbolic_snapshots(D, k).back();
  for (std::size_t j = 0; j < k; ++j) {
    lp.add_row("per:" + std::to_string(j + 1), Terms{{Sm[j], Rational(1)}, {j, -qm}}, Relation::Equal, 0);
  }
  if (opt.cyclic_property5 && opt.property5) {
    const std::size_t m = D.size();
    const Rational K(static_cast<long>(k));
    const Rational qc = K / (K - c);
    // q_c t_n <= t_{n+2} where t_{n+2} lies in a later period:
    // t_j = q^{m e} t_r with j - 1 = e m + (r - 1).
    for (std::size_t n = 1; n <= m; ++n) {
      const std::size_t j = n + 2;
      if (j <= m) continue;
      const std::size_t e = (j - 1) / m, r = (j - 1) % m + 1;
      Rational scale(1);
      for (std::size_t i = 0; i < e; ++i) scale *= qm;
      lp.add_row("p5w:" + std::to_string(n), Terms{{t_var(k, n), qc}, {t_var(k, r), -scale}}, Relation::LessEq,
                 -opt.strict_margin);
    }
  }
  return lp;
}

}  // namespace pebble::lp
