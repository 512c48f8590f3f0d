#include "sdg/connection.hpp"

#include <json.hpp>
#include <sstream>

namespace sdg {

ConnectionSymbol::ConnectionSymbol(unsigned dim, unsigned degree)
    : n_(dim), degree_(degree) {
  if (dim < 1) throw error("connection symbol needs dimension >= 1");
  gamma_.assign(std::size_t(n_) * n_ * n_, Poly(n_));
}

void ConnectionSymbol::set_coeff(unsigned i, unsigned j, unsigned k, Poly p) {
  if (p.nvars() != n_) throw error("coefficient polynomial arity mismatch");
  if (p.degree() > degree_) throw error("coefficient degree exceeds bound");
  gamma_.at((std::size_t(i) * n_ + j) * n_ + k) = std::move(p);
  refresh_symmetry();
}

void ConnectionSymbol::add_coeff_term(unsigned i, unsigned j, unsigned k,
                                      const Monomial& m, const Rational& c) {
  if (m.degree() > degree_) throw error("coefficient degree exceeds bound");
  gamma_.at((std::size_t(i) * n_ + j) * n_ + k).add(m, c);
  refresh_symmetry();
}

void ConnectionSymbol::refresh_symmetry() {
  symmetric_ = true;
  for (unsigned i = 0; i < n_ && symmetric_; ++i)
    for (unsigned j = 0; j < n_ && symmetric_; ++j)
      for (unsigned k = j; k < n_; ++k)
        if (!(coeff(i, j, k) == coeff(i, k, j))) {
          symmetric_ = false;
          break;
        }
}

ConnectionSymbol ConnectionSymbol::random(unsigned dim, unsigned degree,
                                          Rng& rng, std::int64_t range) {
  ConnectionSymbol g(dim, degree);
  std::vector<Monomial> monos;
  monos.push_back(Monomial::unit(dim));
  if (degree >= 1)
    for (unsigned v = 0; v < dim; ++v) monos.push_back(Monomial::var(dim, v));
  if (degree >= 2)
    for (unsigned v = 0; v < dim; ++v)
      for (unsigned w = v; w < dim; ++w)
        monos.push_back(Monomial::var(dim, v) * Monomial::var(dim, w));
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j)
      for (unsigned k = 0; k < dim; ++k) {
        Poly p(dim);
        for (const auto& m : monos)
          if (rng.uniform(0, 2) == 0) p.add(m, rng.rational(range));
        g.gamma_[(std::size_t(i) * dim + j) * dim + k] = p;
      }
  g.refresh_symmetry();
  return g;
}

ConnectionSymbol ConnectionSymbol::constant(const RatTensor3& gamma) {
  if (gamma.out_dim() != gamma.in_dim())
    throw error("connection tensor must be square");
  ConnectionSymbol g(gamma.in_dim(), 2);
  for (unsigned i = 0; i < g.n_; ++i)
    for (unsigned j = 0; j < g.n_; ++j)
      for (unsigned k = 0; k < g.n_; ++k)
        if (gamma.at(i, j, k) != 0)
          g.gamma_[(std::size_t(i) * g.n_ + j) * g.n_ + k] =
              Poly::constant(g.n_, gamma.at(i, j, k));
  g.refresh_symmetry();
  return g;
}

ConnectionSymbol ConnectionSymbol::symmetrized() const {
  ConnectionSymbol g(n_, degree_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      for (unsigned k = 0; k < n_; ++k)
        g.gamma_[(std::size_t(i) * n_ + j) * n_ + k] =
            (coeff(i, j, k) + coeff(i, k, j)) * rat(1, 2);
  g.refresh_symmetry();
  return g;
}

ConnectionSymbol ConnectionSymbol::conjugated() const {
  ConnectionSymbol g(n_, degree_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      for (unsigned k = 0; k < n_; ++k)
        g.gamma_[(std::size_t(i) * n_ + j) * n_ + k] = coeff(i, k, j);
  g.refresh_symmetry();
  return g;
}

WeilTensor3 ConnectionSymbol::eval_at(const Vec& P) const {
  if (P.dim() != n_) throw error("base point dimension mismatch");
  WeilTensor3 t(n_, n_);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      for (unsigned k = 0; k < n_; ++k) {
        const Poly& p = coeff(i, j, k);
        if (!p.is_zero()) t.at(i, j, k) = p.eval(P);
      }
  return t;
}

ConnectionSymbol ConnectionSymbol::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(std::string("connection JSON parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw error("connection JSON must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "dim" && key != "degree" && key != "coeffs")
      throw error("unknown field in connection JSON: " + key);
  }
  try {
    if (!doc.contains("dim") || !doc["dim"].is_number_unsigned())
      throw error("connection JSON needs an unsigned \"dim\"");
    if (!doc.contains("degree") || !doc["degree"].is_number_unsigned())
      throw error("connection JSON needs an unsigned \"degree\"");
    unsigned dim = doc["dim"].get<unsigned>();
    unsigned degree = doc["degree"].get<unsigned>();
    ConnectionSymbol g(dim, degree);
    if (!doc.contains("coeffs") || !doc["coeffs"].is_array())
      throw error("connection JSON needs a \"coeffs\" array");
    for (const auto& entry : doc["coeffs"]) {
      if (!entry.is_array() || entry.size() != 5)
        throw error("coeff entry must be [i, j, k, [alpha...], \"p/q\"]");
      unsigned i = entry[0].get<unsigned>();
      unsigned j = entry[1].get<unsigned>();
      unsigned k = entry[2].get<unsigned>();
      if (i >= dim || j >= dim || k >= dim)
        throw error("coeff entry index out of range");
      if (!entry[3].is_array() || entry[3].size() != dim)
        throw error("coeff multi-index must list one exponent per coordinate");
      Monomial m(dim);
      for (unsigned v = 0; v < dim; ++v) {
        unsigned e = entry[3][v].get<unsigned>();
        m = m * Monomial::var(dim, v, e);
      }
      if (!entry[4].is_string())
        throw error("coeff value must be a \"p/q\" string");
      g.add_coeff_term(i, j, k, m, rat_parse(entry[4].get<std::string>()));
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("malformed connection JSON: ") + e.what());
  }
}

std::string ConnectionSymbol::to_json_text() const {
  nlohmann::ordered_json doc;
  doc["dim"] = n_;
  doc["degree"] = degree_;
  auto coeffs = nlohmann::ordered_json::array();
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j)
      for (unsigned k = 0; k < n_; ++k)
        for (const auto& [m, c] : coeff(i, j, k).terms()) {
          auto alpha = nlohmann::ordered_json::array();
          for (unsigned v = 0; v < n_; ++v) alpha.push_back(m.exp(v));
          coeffs.push_back(
              nlohmann::ordered_json::array({i, j, k, alpha, rat_str(c)}));
        }
  doc["coeffs"] = coeffs;
  return doc.dump(2);
}

namespace {

void require_neighbours(const ConnectionSymbol& gamma, const Vec& P,
                        const Vec& Q, const Vec& S, NeighbourCheck check) {
  if (P.dim() != gamma.dim() || Q.dim() != gamma.dim() || S.dim() != gamma.dim())
    throw error("point dimension mismatch");
  switch (check) {
    case NeighbourCheck::None:
      return;
    case NeighbourCheck::NilSquare:
      if (!in_D(Q - P) || !in_D(S - P))
        throw error("arguments are not nil-square neighbours of the base");
      return;
    case NeighbourCheck::SecondOrder:
      if (!in_Dtilde2(Q - P, S - P))
        throw error("arguments are not an admissible second-order pair");
      return;
  }
}

}  // namespace

Vec lambda_apply(const ConnectionSymbol& gamma, const Vec& P, const Vec& Q,
                 const Vec& S, NeighbourCheck check) {
  require_neighbours(gamma, P, Q, S, check);
  WeilTensor3 g = gamma.eval_at(P);
  return Q + S - P + g.apply(Q - P, S - P);
}

Vec torsion(const ConnectionSymbol& gamma, const Vec& P, const Vec& Q,
            const Vec& R, TorsionMode mode, NeighbourCheck check) {
  if (mode == TorsionMode::Definitional) {
    Vec mid = lambda_apply(gamma, P, Q, R, check);
    return lambda_apply(gamma, mid, Q, R, check);
  }
  require_neighbours(gamma, P, Q, R, check);
  WeilTensor3 g = gamma.eval_at(P);
  Vec q = Q - P, r = R - P;
  return P - (g.apply(q, r) - g.apply(r, q));
}

Vec log_point(const WeilTensor3& gbar, const Vec& P, const Vec& Q,
              bool strict) {
  Vec q = Q - P;
  if (strict && !in_D2(q))
    throw error("argument lies outside the second-order monad of the base");
  return q - gbar.apply(q, q) * rat(1, 2);
}

Vec exp_point(const WeilTensor3& gbar, const Vec& P, const Vec& v,
              bool strict) {
  if (strict && !in_D2(v))
    throw error("principal part lies outside the second-order disc");
  return P + v + gbar.apply(v, v) * rat(1, 2);
}

namespace {

const ConnectionSymbol& require_symmetric(const ConnectionSymbol& g) {
  if (!g.is_symmetric())
    throw error("operation requires a symmetric connection symbol");
  return g;
}

}  // namespace

Vec log_point(const ConnectionSymbol& gbar, const Vec& P, const Vec& Q,
              bool strict) {
  return log_point(require_symmetric(gbar).eval_at(P), P, Q, strict);
}

Vec exp_point(const ConnectionSymbol& gbar, const Vec& P, const Vec& v,
              bool strict) {
  return exp_point(require_symmetric(gbar).eval_at(P), P, v, strict);
}

Vec iaffine_combination(const ConnectionSymbol& gbar, const Vec& P,
                        const std::vector<Rational>& weights,
                        const PointTuple& points, bool strict) {
  require_symmetric(gbar);
  if (weights.size() != points.size())
    throw error("weight/point count mismatch");
  if (points.empty()) throw error("affine combination of an empty tuple");
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (total != 1) throw error("affine weights must sum to 1");
  if (strict && !in_monad_structure(IStructureKind::SecondOrder, P, points))
    throw error("tuple is not second-order infinitesimally close to the base");

  Vec s = points[0] * weights[0];
  for (std::size_t j = 1; j < points.size(); ++j)
    s = s + points[j] * weights[j];

  WeilTensor3 g = gbar.eval_at(P);
  Vec corr = g.apply(s - P, s - P);
  for (std::size_t j = 0; j < points.size(); ++j) {
    Vec d = points[j] - P;
    corr = corr - g.apply(d, d) * weights[j];
  }
  return s + corr * rat(1, 2);
}

Vec ilinear_combination(const ConnectionSymbol& gbar, const Vec& base,
                        const std::vector<Rational>& weights,
                        const PointTuple& points, bool strict) {
  Rational total = 0;
  for (const auto& w : weights) total += w;
  PointTuple ext = points;
  ext.push_back(base);
  std::vector<Rational> wext = weights;
  wext.push_back(1 - total);
  return iaffine_combination(gbar, base, wext, ext, strict);
}

}  // namespace sdg
