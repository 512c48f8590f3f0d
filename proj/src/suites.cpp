#include "sdg/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

namespace sdg {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

using CheckFn = std::function<std::optional<std::string>(Rng&)>;

struct Runner {
  Report& report;
  const SuiteConfig& cfg;

  void check(const std::string& id, const std::string& anchor,
             const CheckFn& fn) {
    Rng rng(cfg.seed ^ fnv1a(id));
    CheckResult r;
    r.id = id;
    r.anchor = anchor;
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto witness = fn(rng);
      r.status = witness ? CheckResult::Status::Fail : CheckResult::Status::Pass;
      if (witness) r.witness = *witness;
    } catch (const std::exception& e) {
      r.status = CheckResult::Status::Fail;
      r.witness = std::string("exception: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    report.checks.push_back(std::move(r));
  }

  // Negative control: fn returns nullopt when the deliberate corruption was
  // caught (recorded as an expected failure), a witness string otherwise.
  void negative(const std::string& id, const std::string& anchor,
                const CheckFn& fn) {
    Rng rng(cfg.seed ^ fnv1a(id));
    CheckResult r;
    r.id = id;
    r.anchor = anchor;
    auto t0 = std::chrono::steady_clock::now();
    try {
      auto witness = fn(rng);
      r.status = witness ? CheckResult::Status::Fail
                         : CheckResult::Status::ExpectedFail;
      if (witness) r.witness = *witness;
    } catch (const std::exception& e) {
      r.status = CheckResult::Status::Fail;
      r.witness = std::string("exception: ") + e.what();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    report.checks.push_back(std::move(r));
  }
};

std::optional<std::string> fail_with(const std::string& msg) { return msg; }
std::optional<std::string> pass() { return std::nullopt; }

WeilElement random_element(const SigPtr& sig, Rng& rng, std::int64_t range) {
  WeilElement x = WeilElement::zero(sig);
  for (const auto& m : sig->basis())
    if (rng.uniform(0, 2) != 0)
      x = x + WeilElement::monomial(sig, m, rng.rational(range));
  return x;
}

std::vector<Rational> random_point(unsigned n, Rng& rng, std::int64_t range) {
  std::vector<Rational> p;
  for (unsigned i = 0; i < n; ++i) p.push_back(rng.rational(range));
  return p;
}

std::vector<Rational> affine_weights(unsigned m, Rng& rng, std::int64_t range) {
  std::vector<Rational> mu;
  Rational s = 0;
  for (unsigned j = 0; j + 1 < m; ++j) {
    mu.push_back(rng.rational(range));
    s += mu.back();
  }
  mu.push_back(1 - s);
  return mu;
}

struct MonadSample {
  SigPtr sig;
  Vec base;
  PointTuple pts;
};

MonadSample sample_monad(unsigned n, unsigned m, Rng& rng, std::int64_t range) {
  auto sig = sampling_algebra(n, m);
  Vec base = Vec::from_rationals(sig, random_point(n, rng, range));
  GenCursor cur{sig, 0};
  auto pts = sample_generic(IStructureKind::SecondOrder, base, m, cur, rng, range);
  return {sig, base, pts};
}

RatTensor3 random_tensor(unsigned n, Rng& rng, std::int64_t range) {
  RatTensor3 B(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned k = 0; k < n; ++k) B.at(i, j, k) = rng.rational(range);
  return B;
}

// ---------------------------------------------------------------- weil ----

void suite_weil(Runner& r) {
  const auto& cfg = r.cfg;

  r.check("weil_ring_axioms", "commutative ring laws of the base algebra",
          [&](Rng& rng) -> std::optional<std::string> {
            auto sig = make_algebra(3, 3, {{0, 1}});
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto x = random_element(sig, rng, cfg.range);
              auto y = random_element(sig, rng, cfg.range);
              auto z = random_element(sig, rng, cfg.range);
              if ((x * y) * z != x * (y * z) || x * y != y * x ||
                  x * (y + z) != x * y + x * z)
                return fail_with("x=" + x.to_string() + " y=" + y.to_string() +
                                 " z=" + z.to_string());
            }
            return pass();
          });

  r.check("weil_augmentation_nilpotent",
          "products of cap-many augmentation elements vanish",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned cap : {2u, 3u, 4u}) {
              auto sig = make_algebra(3, cap);
              for (unsigned t = 0; t < cfg.trials; ++t) {
                auto prod = WeilElement::constant(sig, 1);
                for (unsigned i = 0; i < cap; ++i) {
                  auto x = random_element(sig, rng, cfg.range);
                  x = x - WeilElement::constant(sig, x.constant_term());
                  prod = prod * x;
                }
                if (!prod.is_zero()) return fail_with(prod.to_string());
              }
            }
            return pass();
          });

  r.check("weil_invert_two_sided", "units invert exactly both ways",
          [&](Rng& rng) -> std::optional<std::string> {
            auto sig = make_algebra(3, 4, {{1, 2}});
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto x = random_element(sig, rng, cfg.range);
              if (x.constant_term() == 0)
                x = x + WeilElement::constant(sig, rng.uniform(1, 99));
              auto one = WeilElement::constant(sig, 1);
              if (x * x.invert() != one || x.invert() * x != one)
                return fail_with(x.to_string());
            }
            return pass();
          });

  r.check("weil_quotient_consistency",
          "no forbidden monomial survives multiplication",
          [&](Rng& rng) -> std::optional<std::string> {
            auto sig = make_algebra(4, 3, {{0, 1}, {2, 2}});
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto x = random_element(sig, rng, cfg.range) *
                       random_element(sig, rng, cfg.range);
              for (const auto& [m, c] : x.terms())
                if (m.divisible_by_pair(0, 1) || m.divisible_by_pair(2, 2) ||
                    c == 0)
                  return fail_with(m.to_string());
            }
            return pass();
          });
}

// -------------------------------------------------------------- spaces ----

void suite_spaces(Runner& r) {
  const auto& cfg = r.cfg;
  const unsigned n = cfg.dim;

  r.check("spaces_restriction_closure",
          "reindexed neighbour tuples stay neighbours",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto s = sample_monad(n, 3, rng, cfg.range);
              PointTuple tuple = s.pts;
              std::vector<std::vector<std::size_t>> maps = {
                  {0}, {2, 2}, {1, 0}, {2, 0, 1}, {0, 0, 2, 1}};
              for (const auto& h : maps) {
                PointTuple re;
                for (auto ix : h) re.push_back(tuple[ix]);
                if (!in_istructure(IStructureKind::SecondOrder, re))
                  return fail_with("reindexing broke membership");
              }
            }
            return pass();
          });

  r.check("spaces_firstorder_contained",
          "first-order tuples are nil-square and second-order",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = block_algebra(3);
              Vec base(sig, n);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::FirstOrder, base, 3,
                                        cur, rng, cfg.range);
              if (!in_istructure(IStructureKind::NilSquare, pts) ||
                  !in_istructure(IStructureKind::SecondOrder, pts))
                return fail_with("containment failed");
            }
            return pass();
          });

  r.check("spaces_nilsquare_strictly_larger",
          "stored alternating witness: nil-square but not first-order",
          [&](Rng&) -> std::optional<std::string> {
            auto w = witness_nilsquare_not_firstorder();
            if (!in_istructure(IStructureKind::NilSquare, w.tuple))
              return fail_with("witness not nil-square");
            if (in_istructure(IStructureKind::FirstOrder, w.tuple))
              return fail_with("witness unexpectedly first-order");
            return pass();
          });

  r.check("spaces_nilsquare_not_secondorder",
          "stored monad triple escapes the second-order structure",
          [&](Rng&) -> std::optional<std::string> {
            auto w = witness_nilsquare_not_secondorder();
            if (!in_istructure(IStructureKind::NilSquare, w.tuple))
              return fail_with("witness not nil-square");
            if (in_istructure(IStructureKind::SecondOrder, w.tuple))
              return fail_with("witness unexpectedly second-order");
            // the three-point slice cannot separate the structures
            PointTuple slice(w.tuple.begin(), w.tuple.end() - 1);
            if (!in_istructure(IStructureKind::SecondOrder, slice))
              return fail_with("three-point slice should be second-order");
            return pass();
          });

  r.check("spaces_product_structure",
          "paired neighbour tuples live in the product structure",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto s = sample_monad(n, 4, rng, cfg.range);
              PointTuple paired = {Vec::concat(s.pts[0], s.pts[1]),
                                   Vec::concat(s.pts[2], s.pts[3])};
              if (!in_istructure(IStructureKind::SecondOrder, paired))
                return fail_with("pairing left the structure");
            }
            return pass();
          });

  r.check("spaces_sampler_membership", "plumbing",
          [&](Rng& rng) -> std::optional<std::string> {
            for (auto kind : {IStructureKind::NilSquare,
                              IStructureKind::FirstOrder,
                              IStructureKind::SecondOrder}) {
              auto sig = kind == IStructureKind::SecondOrder
                             ? sampling_algebra(n, 3)
                             : block_algebra(3);
              Vec base(sig, n);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(kind, base, 3, cur, rng, cfg.range);
              if (!in_istructure(kind, pts)) return fail_with("sampler broke");
            }
            return pass();
          });
}

// ------------------------------------------------------------ calculus ----

void suite_calculus(Runner& r) {
  const auto& cfg = r.cfg;

  r.check("calculus_affine_extraction",
          "first-order coefficients are read exactly",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              // f(x, y) = (x*y, a*x + b*y + c)
              Rational a = rng.rational(100), b = rng.rational(100),
                       c = rng.rational(100);
              PolyMap f{2, 2, [a, b, c](const Vec& v) {
                          Vec out(v.signature(), 2);
                          out[0] = v[0] * v[1];
                          out[1] = v[0] * a + v[1] * b +
                                   WeilElement::constant(v.signature(), c);
                          return out;
                        },
                        {}};
              auto base = random_point(2, rng, 100);
              auto ext = extract_affine(f, base);
              if (ext.value[0] != base[0] * base[1] ||
                  ext.derivative.at(0, 0) != base[1] ||
                  ext.derivative.at(0, 1) != base[0] ||
                  ext.derivative.at(1, 0) != a || ext.derivative.at(1, 1) != b)
                return fail_with("hand derivative mismatch");
            }
            return pass();
          });

  r.check("calculus_quadratic_taylor",
          "second-order Taylor identity holds exactly on monad points",
          [&](Rng& rng) -> std::optional<std::string> {
            PolyMap f{2, 2, [](const Vec& v) {
                        Vec out(v.signature(), 2);
                        out[0] = v[0] * v[0] * v[1] + v[1] * rat(3);
                        out[1] = v[0] * v[1] - v[0] * v[0] * v[0];
                        return out;
                      },
                      {}};
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto base = random_point(2, rng, 50);
              auto ext = extract_quadratic(f, base);
              auto sig = sampling_algebra(2, 1);
              Vec P0 = Vec::from_rationals(sig, base);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, P0, 1,
                                        cur, rng, cfg.range);
              Vec d = pts[0] - P0;
              Vec lhs = f.eval(pts[0]) - f.eval(P0);
              Vec rhs = ext.derivative.apply(d) +
                        ext.second_derivative.apply(d, d) * rat(1, 2);
              if (lhs != rhs) return fail_with(d.to_string());
            }
            return pass();
          });

  r.check("calculus_binary_roundtrip",
          "two-argument normal form re-evaluates exactly",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned deg : {0u, 1u, 2u}) {
              for (unsigned t = 0; t < cfg.trials; ++t) {
                auto B = random_tensor(2, rng, cfg.range);
                Rational c0 = deg >= 1 ? rng.rational(cfg.range) : rat(0);
                BinaryPolyMap m{
                    2, 2, [B, c0, deg](const Vec& v, const Vec& w) {
                      Vec out(v.signature(), 2);
                      if (deg >= 1) out = v + w;
                      out[0] = out[0] + WeilElement::constant(v.signature(), c0);
                      if (deg >= 2) out = out + B.apply(v, w);
                      return out;
                    }};
                auto rep = extract_binary_quadratic(m);
                auto sig = make_algebra(4, 3);
                for (unsigned w = 0; w < cfg.trials; ++w) {
                  Vec x(sig, 2), y(sig, 2);
                  for (unsigned i = 0; i < 2; ++i) {
                    x[i] = WeilElement::generator(sig, i) *
                           rng.rational(cfg.range);
                    y[i] = WeilElement::generator(sig, 2 + i) *
                           rng.rational(cfg.range);
                  }
                  if (m.eval(x, y) != rep.eval(x, y))
                    return fail_with("re-evaluation mismatch");
                }
              }
            }
            return pass();
          });

  r.check("calculus_structure_preservation",
          "chart maps preserve the three neighbour structures",
          [&](Rng& rng) -> std::optional<std::string> {
            PolyMap f{2, 2, [](const Vec& v) {
                        Vec out(v.signature(), 2);
                        out[0] = v[0] * v[1] + v[0];
                        out[1] = v[1] * v[1] - v[0] * rat(2);
                        return out;
                      },
                      {}};
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto s = sample_monad(2, 3, rng, cfg.range);
              PointTuple img;
              for (const auto& p : s.pts) img.push_back(f.eval(p));
              if (!in_istructure(IStructureKind::SecondOrder, img))
                return fail_with("second-order image left the structure");
            }
            auto w = witness_nilsquare_not_firstorder();
            PointTuple img;
            for (const auto& p : w.tuple) img.push_back(f.eval(p));
            if (!in_istructure(IStructureKind::NilSquare, img))
              return fail_with("nil-square image left the structure");
            return pass();
          });

  r.check("calculus_firstorder_affine_maps",
          "maps commute with affine combinations of first-order tuples",
          [&](Rng& rng) -> std::optional<std::string> {
            PolyMap f{2, 2, [](const Vec& v) {
                        Vec out(v.signature(), 2);
                        out[0] = v[0] * v[0] + v[1];
                        out[1] = v[0] * v[1] * rat(5, 3);
                        return out;
                      },
                      {}};
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = block_algebra(3);
              Vec base = Vec::from_rationals(sig, random_point(2, rng, 50));
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::FirstOrder, base, 3,
                                        cur, rng, cfg.range);
              auto mu = affine_weights(3, rng, 9);
              Vec comb = pts[0] * mu[0] + pts[1] * mu[1] + pts[2] * mu[2];
              Vec lhs = f.eval(comb);
              Vec rhs = f.eval(pts[0]) * mu[0] + f.eval(pts[1]) * mu[1] +
                        f.eval(pts[2]) * mu[2];
              if (lhs != rhs) return fail_with("affine map identity failed");
            }
            return pass();
          });
}

// ---------------------------------------------------------- connection ----

void suite_connection(Runner& r) {
  const auto& cfg = r.cfg;
  const unsigned n = cfg.dim;

  r.check("connection_lambda_unit_laws",
          "parallelogram completion fixes its degenerate arguments",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto g = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 2, rng, cfg.range);
              auto mode = NeighbourCheck::SecondOrder;
              if (lambda_apply(g, s.base, s.pts[0], s.base, mode) != s.pts[0] ||
                  lambda_apply(g, s.base, s.base, s.pts[1], mode) != s.pts[1])
                return fail_with("degenerate lambda mismatch");
            }
            return pass();
          });

  r.check("connection_torsion_modes_agree",
          "iterated-lambda torsion equals the antisymmetric chart form",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto g = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 2, rng, cfg.range);
              auto mode = NeighbourCheck::SecondOrder;
              Vec def = torsion(g, s.base, s.pts[0], s.pts[1],
                                TorsionMode::Definitional, mode);
              Vec chart = torsion(g, s.base, s.pts[0], s.pts[1],
                                  TorsionMode::Chart, mode);
              if (def != chart) return fail_with("torsion modes disagree");
              Vec sym = torsion(g.symmetrized(), s.base, s.pts[0], s.pts[1],
                                TorsionMode::Chart, mode);
              if (sym != s.base) return fail_with("symmetric torsion nonzero");
            }
            return pass();
          });

  r.check("connection_torsion_first_order",
          "torsion deviations are first-order neighbours",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto g = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 2, rng, cfg.range);
              Vec tau = torsion(g, s.base, s.pts[0], s.pts[1],
                                TorsionMode::Chart, NeighbourCheck::SecondOrder);
              Vec dev = tau - s.base;
              if (!in_D(dev) || !in_DN1(dev, dev))
                return fail_with("torsion deviation too large");
            }
            return pass();
          });

  r.check("connection_log_exp_inverse",
          "second-order log and exp invert each other on the monad",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto gbar =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 1, rng, cfg.range);
              Vec v = log_point(gbar, s.base, s.pts[0]);
              if (exp_point(gbar, s.base, v) != s.pts[0])
                return fail_with("exp(log) mismatch");
              Vec w = s.pts[0] - s.base;
              if (log_point(gbar, s.base, exp_point(gbar, s.base, w)) != w)
                return fail_with("log(exp) mismatch");
            }
            return pass();
          });

  r.check("connection_iaffine_projection",
          "basis weights project onto the tuple entries",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto gbar =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 3, rng, cfg.range);
              for (unsigned k = 0; k < 3; ++k) {
                std::vector<Rational> mu(3, 0);
                mu[k] = 1;
                if (iaffine_combination(gbar, s.base, mu, s.pts) != s.pts[k])
                  return fail_with("projection weight failed");
              }
            }
            return pass();
          });

  r.check("connection_iaffine_base_independent",
          "affine combinations do not depend on the admissible base",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto gbar =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 3, rng, cfg.range);
              auto mu = affine_weights(3, rng, 9);
              Vec a = iaffine_combination(gbar, s.base, mu, s.pts);
              Vec b = iaffine_combination(gbar, s.pts[0], mu, s.pts);
              if (a != b) return fail_with("base point leaked");
            }
            return pass();
          });

  r.check("connection_iaffine_neighbourhood",
          "affine combinations extend the tuple inside the structure",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto gbar =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 3, rng, cfg.range);
              PointTuple ext = s.pts;
              for (int c = 0; c < 3; ++c)
                ext.push_back(iaffine_combination(
                    gbar, s.base, affine_weights(3, rng, 9), s.pts));
              if (!in_monad_structure(IStructureKind::SecondOrder, s.base, ext))
                return fail_with("image left the structure");
            }
            return pass();
          });

  r.check("connection_midpoint_transport",
          "two-point midpoint matches the exp/log route",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto gbar =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 2, rng, cfg.range);
              std::vector<Rational> half = {rat(1, 2), rat(1, 2)};
              Vec lhs = iaffine_combination(gbar, s.base, half, s.pts);
              Vec vmid = (log_point(gbar, s.base, s.pts[0]) +
                          log_point(gbar, s.base, s.pts[1])) *
                         rat(1, 2);
              if (lhs != exp_point(gbar, s.base, vmid))
                return fail_with("midpoint mismatch");
            }
            return pass();
          });

  r.check("connection_json_deterministic", "plumbing",
          [&](Rng& rng) -> std::optional<std::string> {
            auto g = ConnectionSymbol::random(n, 2, rng, 50);
            auto round = ConnectionSymbol::from_json_text(g.to_json_text());
            if (!(round == g)) return fail_with("JSON round trip changed data");
            return pass();
          });
}

// -------------------------------------------------------------- igroup ----

void suite_igroup(Runner& r) {
  const auto& cfg = r.cfg;
  const unsigned n = cfg.dim;

  r.check("igroup_d2_axioms",
          "bilinear deformations of addition satisfy the group axioms",
          [&](Rng& rng) -> std::optional<std::string> {
            IGroupOnD2 g(n, random_tensor(n, rng, cfg.range));
            auto rep = verify_igroup_axioms(g, rng.uniform(0, 1 << 30),
                                            cfg.trials, cfg.range);
            for (const auto& e : rep.entries)
              if (!e.pass) return fail_with(e.name + ": " + e.witness);
            return pass();
          });

  r.check("igroup_monad_axioms",
          "connection-induced monad groups satisfy the group axioms",
          [&](Rng& rng) -> std::optional<std::string> {
            auto conn = ConnectionSymbol::random(n, 2, rng, 50);
            auto rep =
                verify_igroup_axioms(conn, random_point(n, rng, cfg.range),
                                     rng.uniform(0, 1 << 30), cfg.trials,
                                     cfg.range);
            for (const auto& e : rep.entries)
              if (!e.pass) return fail_with(e.name + ": " + e.witness);
            return pass();
          });

  r.check("igroup_classification_roundtrip",
          "the group law determines its bilinear map uniquely",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto B = random_tensor(n, rng, cfg.range);
              IGroupOnD2 g(n, B);
              BinaryPolyMap law{n, n, [&g](const Vec& v, const Vec& w) {
                                  return g.mul(v, w, false);
                                }};
              if (!(extract_B(law) == B)) return fail_with("tensor changed");
            }
            return pass();
          });

  r.check("bch_equals_chart_product",
          "the affine-combination route equals the chart group law",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned d : {2u, 3u, 4u}) {
              for (unsigned t = 0; t < cfg.trials; ++t) {
                auto conn = ConnectionSymbol::random(d, 2, rng, 50);
                auto s = sample_monad(d, 2, rng, cfg.range);
                MonadGroup mg(conn, s.base, cfg.strict);
                if (mg.mul(s.pts[0], s.pts[1]) !=
                    mg.mul_bch(s.pts[0], s.pts[1]))
                  return fail_with("dim " + std::to_string(d));
              }
            }
            return pass();
          });

  r.check("igroup_transport_equals_chart",
          "the exp/log transport route equals the chart group law",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned d : {2u, 3u, 4u}) {
              for (unsigned t = 0; t < cfg.trials; ++t) {
                auto conn = ConnectionSymbol::random(d, 2, rng, 50);
                auto s = sample_monad(d, 2, rng, cfg.range);
                MonadGroup mg(conn, s.base, cfg.strict);
                if (mg.mul(s.pts[0], s.pts[1]) !=
                    mg.mul_transport(s.pts[0], s.pts[1]))
                  return fail_with("dim " + std::to_string(d));
              }
            }
            return pass();
          });

  r.check("igroup_commutator_equals_bracket",
          "the group commutator is the bracket of points",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto conn = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 2, rng, cfg.range);
              MonadGroup mg(conn, s.base, cfg.strict);
              if (mg.commutator(s.pts[0], s.pts[1]) !=
                  mg.lie_bracket_points(s.pts[0], s.pts[1]))
                return fail_with("commutator mismatch");
            }
            return pass();
          });

  r.check("igroup_torsion_bracket_reflection",
          "the bracket is the reflected torsion",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto conn = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 2, rng, cfg.range);
              MonadGroup mg(conn, s.base, cfg.strict);
              Vec tau = torsion(conn, s.base, s.pts[0], s.pts[1],
                                TorsionMode::Chart, NeighbourCheck::SecondOrder);
              if (mg.lie_bracket_points(s.pts[0], s.pts[1]) - s.base !=
                  -(tau - s.base))
                return fail_with("reflection identity failed");
            }
            return pass();
          });

  r.check("igroup_bracket_alternating_bilinear",
          "the bracket alternates and is linear against combinations",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto conn = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 3, rng, cfg.range);
              MonadGroup mg(conn, s.base, cfg.strict);
              const Vec& Q = s.pts[0];
              Vec br = mg.lie_bracket_points(Q, s.pts[1]);
              Vec rb = mg.lie_bracket_points(s.pts[1], Q);
              if (br - s.base != -(rb - s.base))
                return fail_with("not alternating");
              if (mg.lie_bracket_points(Q, Q) != s.base)
                return fail_with("diagonal bracket nonzero");
              std::vector<Rational> lam = {rng.rational(9), rng.rational(9)};
              PointTuple rest = {s.pts[1], s.pts[2]};
              Vec comb = ilinear_combination(conn.symmetrized(), s.base, lam,
                                             rest, cfg.strict);
              Vec lhs = mg.lie_bracket_points(Q, comb);
              Vec rhs = s.base +
                        (mg.lie_bracket_points(Q, rest[0]) - s.base) * lam[0] +
                        (mg.lie_bracket_points(Q, rest[1]) - s.base) * lam[1];
              if (lhs != rhs) return fail_with("not linear in the second slot");
              if (!in_D(br - s.base))
                return fail_with("bracket left the first-order monad");
              if (mg.lie_bracket_points(Q, br) != s.base)
                return fail_with("third-order bracket nonzero");
            }
            return pass();
          });

  r.check("igroup_inverse_point_reflection",
          "inversion is the linear point reflection in the base",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto conn = ConnectionSymbol::random(n, 2, rng, 50);
              auto s = sample_monad(n, 1, rng, cfg.range);
              MonadGroup mg(conn, s.base, cfg.strict);
              Vec reflected = ilinear_combination(
                  conn.symmetrized(), s.base, {rat(-1)}, {s.pts[0]}, cfg.strict);
              if (mg.inv(s.pts[0]) != reflected)
                return fail_with("reflection mismatch");
            }
            return pass();
          });

  r.check("igroup_abelian_iff_symmetric",
          "the law commutes exactly when the symbol is symmetric at the base",
          [&](Rng& rng) -> std::optional<std::string> {
            // every bilinear map on a one-dimensional space is symmetric
            const unsigned dim = std::max(2u, n);
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto raw = ConnectionSymbol::random(dim, 2, rng, 50);
              auto sym = raw.symmetrized();
              // symmetric symbol plus a constant antisymmetric part: the
              // bracket tensor at any base is that part, never zero
              auto skew = sym;
              skew.add_coeff_term(0, 0, 1, Monomial::unit(dim), rat(1));
              skew.add_coeff_term(0, 1, 0, Monomial::unit(dim), rat(-1));
              for (const auto* conn : {&raw, &sym, &skew}) {
                auto s = sample_monad(dim, 2, rng, cfg.range);
                MonadGroup mg(*conn, s.base, cfg.strict);
                bool commutes = mg.mul(s.pts[0], s.pts[1]) ==
                                mg.mul(s.pts[1], s.pts[0]);
                if (commutes != mg.bracket_tensor().is_zero())
                  return fail_with("equivalence broke at trial " +
                                   std::to_string(t));
              }
              // deterministic non-commuting witness along the first two axes
              auto sig = sampling_algebra(dim, 2);
              Vec base(sig, dim);
              Vec Q = base, R = base;
              Q[0] = WeilElement::generator(sig, 0);
              R[1] = WeilElement::generator(sig, dim);
              MonadGroup mg(skew, base, cfg.strict);
              if (mg.mul(Q, R) == mg.mul(R, Q))
                return fail_with("skewed symbol commuted");
            }
            return pass();
          });

  r.check("igroup_base_point_obstruction",
          "torsion measures the base-point dependence exactly",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned m : {2u, 3u}) {
              for (unsigned t = 0; t < cfg.trials; ++t) {
                auto conn = ConnectionSymbol::random(n, 2, rng, 50);
                auto s = sample_monad(n, m + 2, rng, cfg.range);
                Vec P = s.pts[0], Q = s.pts[1];
                PointTuple pts(s.pts.begin() + 2, s.pts.end());
                auto mu = affine_weights(m, rng, 9);
                auto b = base_point_change(conn, P, Q, mu, pts, cfg.strict);
                if (b.lhs != b.rhs) return fail_with("obstruction identity");
              }
            }
            return pass();
          });

  r.check("igroup_base_point_symmetric_independent",
          "symmetric symbols give base-point independence outright",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto conn =
                  ConnectionSymbol::random(n, 2, rng, 50).symmetrized();
              auto s = sample_monad(n, 4, rng, cfg.range);
              auto mu = affine_weights(2, rng, 9);
              auto b = base_point_change(conn, s.pts[0], s.pts[1], mu,
                                         {s.pts[2], s.pts[3]}, cfg.strict);
              if (!b.correction.is_zero())
                return fail_with("correction should vanish");
              if (b.lhs != b.at_q) return fail_with("bases disagree");
            }
            return pass();
          });

  if (cfg.negative_controls) {
    r.negative("igroup_negative_injected_a0",
               "corrupted law with a constant term is rejected",
               [&](Rng& rng) -> std::optional<std::string> {
                 auto B = random_tensor(n, rng, cfg.range);
                 IGroupOnD2 g(n, B);
                 BinaryPolyMap law{n, n, [&g](const Vec& v, const Vec& w) {
                                     Vec out = g.mul(v, w, false);
                                     out[0] = out[0] +
                                              WeilElement::constant(
                                                  v.signature(), rat(1, 7));
                                     return out;
                                   }};
                 try {
                   extract_B(law);
                   return fail_with("corruption went undetected");
                 } catch (const error& e) {
                   std::string msg = e.what();
                   if (msg.find("a0") == std::string::npos)
                     return fail_with("wrong diagnostic: " + msg);
                   return pass();
                 }
               });

    r.negative("igroup_negative_injected_A2",
               "corrupted law with a quadratic self-term is rejected",
               [&](Rng& rng) -> std::optional<std::string> {
                 auto B = random_tensor(n, rng, cfg.range);
                 IGroupOnD2 g(n, B);
                 BinaryPolyMap law{n, n, [&g](const Vec& v, const Vec& w) {
                                     Vec out = g.mul(v, w, false);
                                     out[0] = out[0] + v[0] * v[0] * rat(3);
                                     return out;
                                   }};
                 try {
                   extract_B(law);
                   return fail_with("corruption went undetected");
                 } catch (const error& e) {
                   std::string msg = e.what();
                   if (msg.find("A2") == std::string::npos)
                     return fail_with("wrong diagnostic: " + msg);
                   return pass();
                 }
               });

    r.negative("igroup_negative_transposed_correction",
               "transposing the torsion correction breaks the identity",
               [&](Rng&) -> std::optional<std::string> {
                 // deterministic torsionful configuration: a constant
                 // antisymmetric symbol and axis-aligned points
                 const unsigned dim = std::max(2u, n);
                 auto conn = ConnectionSymbol::zero(dim, 2);
                 conn.add_coeff_term(0, 0, 1, Monomial::unit(dim), rat(1));
                 conn.add_coeff_term(0, 1, 0, Monomial::unit(dim), rat(-1));
                 auto sig = sampling_algebra(dim, 4);
                 Vec base(sig, dim);
                 Vec P = base, Q = base, P1 = base, P2 = base;
                 P[0] = WeilElement::generator(sig, 0);
                 P1[1] = WeilElement::generator(sig, dim);
                 P2[0] = WeilElement::generator(sig, 2 * dim);
                 std::vector<Rational> mu = {rat(2, 3), rat(1, 3)};
                 auto b = base_point_change(conn, P, Q, mu, {P1, P2},
                                            cfg.strict);
                 if (b.correction.is_zero())
                   return fail_with("expected a nonzero correction");
                 if (b.lhs != b.rhs)
                   return fail_with("oriented correction did not match");
                 if (b.lhs == b.at_q - b.correction)
                   return fail_with("transposed correction also matched");
                 return pass();
               });
  }
}

// ------------------------------------------------------------ liegroup ----

void suite_liegroup(Runner& r) {
  const auto& cfg = r.cfg;
  MatrixGroup g = parse_group(cfg.group);
  const unsigned d = g.chart_dim();

  r.check("liegroup_matrix_inverse", "exact inverse through the Neumann series",
          [&](Rng& rng) -> std::optional<std::string> {
            auto sig = make_algebra(4, 3);
            for (unsigned t = 0; t < cfg.trials; ++t) {
              MatrixElement m = MatrixElement::identity(g, sig);
              auto slots = g.kind == MatrixGroupKind::GL
                               ? [&] {
                                   std::vector<std::pair<unsigned, unsigned>> s;
                                   for (unsigned i = 0; i < g.n; ++i)
                                     for (unsigned j = 0; j < g.n; ++j)
                                       s.push_back({i, j});
                                   return s;
                                 }()
                               : std::vector<std::pair<unsigned, unsigned>>{
                                     {0, 1}, {1, 2}, {0, 2}};
              for (auto [i, j] : slots)
                for (unsigned k = 0; k < 4; ++k)
                  if (rng.uniform(0, 2) == 0)
                    m.at(i, j) = m.at(i, j) + WeilElement::generator(sig, k) *
                                                  rng.rational(cfg.range);
              if (!(mat_mul(m, mat_inv(m)) ==
                    MatrixElement::identity(g, sig)))
                return fail_with(m.to_string());
            }
            return pass();
          });

  r.check("liegroup_lambda_left_product",
          "left translation connection multiplies at the identity",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = sampling_algebra(d, 2);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, e, 2, cur,
                                        rng, cfg.range);
              auto E = from_chart(g, e);
              auto Q = from_chart(g, pts[0]);
              auto R = from_chart(g, pts[1]);
              if (!(canonical_lambda(ConnectionSide::Left, E, Q, R,
                                     NeighbourCheck::SecondOrder) ==
                    mat_mul(Q, R)))
                return fail_with("left lambda is not the product");
              if (!(canonical_lambda(ConnectionSide::Left, E, Q, E,
                                     NeighbourCheck::SecondOrder) == Q))
                return fail_with("degenerate lambda mismatch");
            }
            return pass();
          });

  r.check("liegroup_symbol_extraction_routes",
          "polynomial family and exact inverse give the same symbol",
          [&](Rng& rng) -> std::optional<std::string> {
            auto family = extract_connection_symbol(g, ConnectionSide::Left);
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = sampling_algebra(d, 1);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, e, 1, cur,
                                        rng, cfg.range);
              auto exact = connection_symbol_at(g, ConnectionSide::Left,
                                                from_chart(g, pts[0]));
              if (!(exact == family.eval_at(pts[0])))
                return fail_with("symbol routes disagree");
            }
            return pass();
          });

  r.check("liegroup_monad_mul_is_matrix_mul",
          "the induced monad group multiplies like the matrix group",
          [&](Rng& rng) -> std::optional<std::string> {
            auto conn = extract_connection_symbol(g, ConnectionSide::Left);
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = sampling_algebra(d, 2);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, e, 2, cur,
                                        rng, cfg.range);
              MonadGroup mg(conn, e, cfg.strict);
              Vec prod = to_chart(
                  mat_mul(from_chart(g, pts[0]), from_chart(g, pts[1])));
              if (mg.mul(pts[0], pts[1]) != prod)
                return fail_with("chart route mismatch");
              if (mg.mul_bch(pts[0], pts[1]) != prod)
                return fail_with("affine route mismatch");
              if (mg.mul_transport(pts[0], pts[1]) != prod)
                return fail_with("transport route mismatch");
            }
            return pass();
          });

  r.check("liegroup_monad_inv_is_matrix_inv",
          "the induced inverse is the matrix inverse",
          [&](Rng& rng) -> std::optional<std::string> {
            auto conn = extract_connection_symbol(g, ConnectionSide::Left);
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = sampling_algebra(d, 1);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, e, 1, cur,
                                        rng, cfg.range);
              MonadGroup mg(conn, e, cfg.strict);
              if (mg.inv(pts[0]) != to_chart(mat_inv(from_chart(g, pts[0]))))
                return fail_with("inverse mismatch");
            }
            return pass();
          });

  r.check("liegroup_tangent_bracket_commutator",
          "the tangent bracket is the matrix commutator",
          [&](Rng& rng) -> std::optional<std::string> {
            auto sig = make_algebra(1, 3);
            Vec e = chart_identity(g, sig);
            auto oracle = [&](const Vec& v1, const Vec& v2) {
              auto m1 = from_chart(g, v1), m2 = from_chart(g, v2);
              if (g.kind == MatrixGroupKind::Heisenberg)
                for (unsigned i = 0; i < 3; ++i) {
                  m1.at(i, i) = WeilElement::zero(sig);
                  m2.at(i, i) = WeilElement::zero(sig);
                }
              auto ab = mat_mul(m1, m2), ba = mat_mul(m2, m1);
              MatrixElement c(g, sig);
              for (unsigned i = 0; i < g.n; ++i)
                for (unsigned j = 0; j < g.n; ++j)
                  c.at(i, j) = ab.at(i, j) - ba.at(i, j);
              if (g.kind == MatrixGroupKind::GL) return to_chart(c);
              Vec out(sig, 3);
              out[0] = c.at(0, 1);
              out[1] = c.at(1, 2);
              out[2] = c.at(0, 2);
              return out;
            };
            for (unsigned i = 0; i < d; ++i)
              for (unsigned j = 0; j < d; ++j) {
                Vec v1(sig, d), v2(sig, d);
                v1[i] = WeilElement::constant(sig, 1);
                v2[j] = WeilElement::constant(sig, 1);
                auto br = tangent_bracket(g, {e, v1}, {e, v2});
                if (br.principal != oracle(v1, v2))
                  return fail_with("basis pair " + std::to_string(i) + "," +
                                   std::to_string(j));
              }
            for (unsigned t = 0; t < cfg.trials; ++t) {
              Vec v1(sig, d), v2(sig, d);
              for (unsigned i = 0; i < d; ++i) {
                v1[i] = WeilElement::constant(sig, rng.rational(cfg.range));
                v2[i] = WeilElement::constant(sig, rng.rational(cfg.range));
              }
              auto br = tangent_bracket(g, {e, v1}, {e, v2});
              if (br.principal != oracle(v1, v2))
                return fail_with("random pair at trial " + std::to_string(t));
            }
            return pass();
          });

  r.check("liegroup_tangent_transport_iso",
          "exp/log carries the tangent group law onto the monad",
          [&](Rng& rng) -> std::optional<std::string> {
            auto conn = extract_connection_symbol(g, ConnectionSide::Left);
            auto gbar = conn.symmetrized();
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = sampling_algebra(d, 2);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::SecondOrder, e, 2, cur,
                                        rng, cfg.range);
              MonadGroup mg(conn, e, cfg.strict);
              Vec t1 = log_point(gbar, e, pts[0]);
              Vec t2 = log_point(gbar, e, pts[1]);
              Vec bch = t1 + t2 + mg.bracket_tensor().apply(t1, t2) * rat(1, 2);
              if (log_point(gbar, e, mg.mul(pts[0], pts[1])) != bch)
                return fail_with("transported law mismatch");
              if (log_point(gbar, e, mg.inv(pts[0])) != -t1)
                return fail_with("transported inverse mismatch");
            }
            return pass();
          });

  r.check("liegroup_firstorder_additive",
          "first-order neighbour pairs of the identity multiply additively",
          [&](Rng& rng) -> std::optional<std::string> {
            for (unsigned t = 0; t < cfg.trials; ++t) {
              auto sig = block_algebra(2);
              Vec e = chart_identity(g, sig);
              GenCursor cur{sig, 0};
              auto pts = sample_generic(IStructureKind::FirstOrder, e, 2, cur,
                                        rng, cfg.range);
              Vec prod = to_chart(
                  mat_mul(from_chart(g, pts[0]), from_chart(g, pts[1])));
              if (prod != pts[0] + pts[1] - e)
                return fail_with("first-order product is not the sum");
            }
            return pass();
          });

  r.check("liegroup_nilsquare_axiom_failure",
          "stored witness: nil-square neighbourhood axiom fails at dim > 2",
          [&](Rng&) -> std::optional<std::string> {
            auto w = nilsquare_group_failure_witness();
            Vec e = chart_identity(gl(3), w.sig);
            Vec p = to_chart(w.P), q = to_chart(w.Q), rr = to_chart(w.R);
            if (!in_istructure(IStructureKind::NilSquare, {e, p, q, rr}))
              return fail_with("witness tuple is not nil-square");
            Vec pq = to_chart(mat_mul(w.P, w.Q));
            if (in_istructure(IStructureKind::NilSquare, {pq, rr}))
              return fail_with("expected neighbourhood violation did not occur");
            if (!in_D(pq - e)) return fail_with("closure in the monad broke");
            return pass();
          });

  r.check("liegroup_jacobi_nilsquare",
          "cyclic bracket sums vanish on nil-square monad triples",
          [&](Rng&) -> std::optional<std::string> {
            auto data = witness_nilsquare_not_secondorder();
            auto g3 = gl(3);
            auto embed = [&](const Vec& c3) {
              MatrixElement m = MatrixElement::identity(g3, data.sig);
              m.at(0, 1) = c3[0];
              m.at(1, 2) = c3[1];
              m.at(2, 0) = c3[2];
              return to_chart(m);
            };
            Vec P = embed(data.tuple[1] - data.tuple[0]);
            Vec Q = embed(data.tuple[2] - data.tuple[0]);
            Vec R = embed(data.tuple[3] - data.tuple[0]);
            Vec e = chart_identity(g3, data.sig);
            auto conn = extract_connection_symbol(g3, ConnectionSide::Left);
            MonadGroup mg(conn, e, cfg.strict);
            Vec qr = mg.lie_bracket_points(Q, R);
            if ((qr - e).is_zero()) return fail_with("degenerate bracket");
            Vec sum = (mg.lie_bracket_points(P, qr) - e) +
                      (mg.lie_bracket_points(Q, mg.lie_bracket_points(R, P)) - e) +
                      (mg.lie_bracket_points(R, mg.lie_bracket_points(P, Q)) - e);
            if (!sum.is_zero()) return fail_with(sum.to_string());
            return pass();
          });
}

}  // namespace

const std::vector<std::string>& all_suite_names() {
  static const std::vector<std::string> names = {
      "weil", "spaces", "calculus", "connection", "igroup", "liegroup"};
  return names;
}

MatrixGroup parse_group(const std::string& name) {
  if (name == "gl2") return gl(2);
  if (name == "gl3") return gl(3);
  if (name == "heisenberg") return heisenberg();
  throw error("unknown group: " + name + " (expected gl2, gl3 or heisenberg)");
}

Report run_suites(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw error("trials must be at least 1");
  if (cfg.dim < 1) throw error("dim must be at least 1");
  parse_group(cfg.group);

  std::vector<std::string> selected =
      cfg.suites.empty() ? all_suite_names() : cfg.suites;
  for (const auto& s : selected)
    if (std::find(all_suite_names().begin(), all_suite_names().end(), s) ==
        all_suite_names().end())
      throw error("unknown suite: " + s);

  Report report;
  std::ostringstream suites_joined;
  for (std::size_t i = 0; i < selected.size(); ++i)
    suites_joined << (i ? "," : "") << selected[i];
  report.config = {{"seed", std::to_string(cfg.seed)},
                   {"trials", std::to_string(cfg.trials)},
                   {"dim", std::to_string(cfg.dim)},
                   {"range", std::to_string(cfg.range)},
                   {"suites", suites_joined.str()},
                   {"group", cfg.group},
                   {"strict", cfg.strict ? "true" : "false"},
                   {"negative_controls", cfg.negative_controls ? "true" : "false"}};
  Runner runner{report, cfg};
  for (const auto& s : selected) {
    if (s == "weil") suite_weil(runner);
    if (s == "spaces") suite_spaces(runner);
    if (s == "calculus") suite_calculus(runner);
    if (s == "connection") suite_connection(runner);
    if (s == "igroup") suite_igroup(runner);
    if (s == "liegroup") suite_liegroup(runner);
  }
  return report;
}

}  // namespace sdg
