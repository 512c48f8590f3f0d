#include "sdg/weil.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sdg {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  auto slash = s.find('/');
  try {
    mpz_class num(slash == std::string::npos ? s : s.substr(0, slash));
    mpz_class den(slash == std::string::npos ? std::string("1")
                                             : s.substr(slash + 1));
    if (den == 0) throw error("rational with zero denominator: " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw error("malformed rational literal: " + s);
  }
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Monomial Monomial::operator*(const Monomial& o) const {
  if (nvars() != o.nvars()) throw error("monomial arity mismatch");
  Monomial r = *this;
  for (unsigned i = 0; i < nvars(); ++i)
    r.exps_[i] = static_cast<std::uint8_t>(r.exps_[i] + o.exps_[i]);
  return r;
}

Monomial Monomial::div_pair(unsigned a, unsigned b) const {
  Monomial r = *this;
  r.exps_.at(a)--;
  r.exps_.at(b)--;
  return r;
}

std::string Monomial::to_string() const {
  if (is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < nvars(); ++i) {
    if (!exps_[i]) continue;
    if (!first) os << "*";
    first = false;
    os << "e" << (i + 1);
    if (exps_[i] > 1) os << "^" << unsigned(exps_[i]);
  }
  return os.str();
}

namespace {

void enumerate_monomials(unsigned k, unsigned max_deg,
                         const std::function<void(const Monomial&)>& sink) {
  std::vector<std::uint8_t> exps(k, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i == k) {
      Monomial m(k);
      for (unsigned j = 0; j < k; ++j)
        m = m * Monomial::var(k, j, exps[j]);
      sink(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      exps[i] = static_cast<std::uint8_t>(e);
      rec(i + 1, left - e);
    }
    exps[i] = 0;
  };
  rec(0, max_deg);
}

// Union-find with a sign carried on every edge and a per-class zero flag.
struct SignedUnionFind {
  std::vector<int> parent, rank_, sign;  // sign relative to parent
  std::vector<char> zero;

  explicit SignedUnionFind(std::size_t n)
      : parent(n), rank_(n, 0), sign(n, 1), zero(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }

  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 1};
    auto [root, s] = find(parent[x]);
    parent[x] = root;
    sign[x] *= s;
    return {root, sign[x]};
  }

  void mark_zero(int x) { zero[find(x).first] = 1; }
  bool is_zero(int x) { return zero[find(x).first]; }

  void unite(int x, int y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) {
      // x = sx * root, y = sy * root and x = s * y; inconsistent signs force
      // the whole class to zero.
      if (sx != s * sy) zero[rx] = 1;
      return;
    }
    bool z = zero[rx] || zero[ry];
    if (rank_[rx] < rank_[ry]) {
      std::swap(rx, ry);
      std::swap(sx, sy);
      std::swap(x, y);
      // x = s * y still holds with roles swapped since s is its own inverse.
    }
    parent[ry] = rx;
    sign[ry] = sx * s * sy;
    if (rank_[rx] == rank_[ry]) rank_[rx]++;
    zero[rx] = z;
  }
};

}  // namespace

bool AlgebraSignature::forbidden_divides(const Monomial& m) const {
  for (const auto& [a, b] : forbidden_)
    if (m.divisible_by_pair(a, b)) return true;
  return false;
}

void AlgebraSignature::build_alias_table() {
  std::vector<Monomial> all;
  std::map<Monomial, int> index;
  enumerate_monomials(k_, cap_ - 1, [&](const Monomial& m) {
    index.emplace(m, static_cast<int>(all.size()));
    all.push_back(m);
  });

  SignedUnionFind uf(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (forbidden_divides(all[i])) uf.mark_zero(static_cast<int>(i));

  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& al : aliases_) {
      if (!all[i].divisible_by_pair(al.a, al.b)) continue;
      Monomial img = all[i].div_pair(al.a, al.b) *
                     Monomial::var(k_, al.c) * Monomial::var(k_, al.d);
      uf.unite(static_cast<int>(i), index.at(img), al.sign);
    }
  }

  // Canonical representative: the least monomial of each nonzero class.
  std::map<int, int> rep_of_root;
  for (std::size_t i = 0; i < all.size(); ++i) {
    int root = uf.find(static_cast<int>(i)).first;
    auto it = rep_of_root.find(root);
    if (it == rep_of_root.end() || all[i] < all[it->second])
      rep_of_root[root] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    int x = static_cast<int>(i);
    if (uf.is_zero(x)) continue;
    auto [root, s] = uf.find(x);
    int rep = rep_of_root.at(root);
    int rep_sign = uf.find(rep).second;
    norm_.emplace(all[i], std::make_pair(s * rep_sign, all[rep]));
  }
}

std::optional<std::pair<int, Monomial>> AlgebraSignature::normalize(
    const Monomial& m) const {
  if (m.nvars() != k_) throw error("monomial arity does not match signature");
  if (m.degree() >= cap_) return std::nullopt;
  if (aliases_.empty()) {
    if (forbidden_divides(m)) return std::nullopt;
    return std::make_pair(1, m);
  }
  auto it = norm_.find(m);
  if (it == norm_.end()) return std::nullopt;
  return it->second;
}

std::vector<Monomial> AlgebraSignature::basis() const {
  std::vector<Monomial> out;
  enumerate_monomials(k_, cap_ - 1, [&](const Monomial& m) {
    auto n = normalize(m);
    if (n && n->second == m && n->first == 1) out.push_back(m);
  });
  std::sort(out.begin(), out.end());
  return out;
}

SigPtr make_algebra(unsigned k, unsigned cap,
                    const std::set<std::pair<unsigned, unsigned>>& forbidden,
                    const std::vector<QuadraticAlias>& aliases) {
  if (k < 1) throw error("algebra needs at least one generator");
  if (cap < 1) throw error("cap must be at least 1");
  auto sig = std::shared_ptr<AlgebraSignature>(new AlgebraSignature());
  sig->k_ = k;
  sig->cap_ = cap;
  for (auto [a, b] : forbidden) {
    if (a >= k || b >= k) throw error("forbidden pair references invalid generator");
    sig->forbidden_.emplace(std::min(a, b), std::max(a, b));
  }
  for (auto al : aliases) {
    if (al.a >= k || al.b >= k || al.c >= k || al.d >= k)
      throw error("alias references invalid generator");
    if (al.sign != 1 && al.sign != -1) throw error("alias sign must be +-1");
    sig->aliases_.push_back(al);
  }
  if (!sig->aliases_.empty()) sig->build_alias_table();
  return sig;
}

WeilElement WeilElement::constant(const SigPtr& sig, const Rational& c) {
  WeilElement x(sig);
  x.add_term(Monomial::unit(sig->generators()), c);
  return x;
}

WeilElement WeilElement::generator(const SigPtr& sig, unsigned i) {
  if (i >= sig->generators()) throw error("generator index out of range");
  return monomial(sig, Monomial::var(sig->generators(), i), 1);
}

WeilElement WeilElement::monomial(const SigPtr& sig, const Monomial& m,
                                  const Rational& c) {
  WeilElement x(sig);
  x.add_term(m, c);
  return x;
}

void WeilElement::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto n = sig_->normalize(m);
  if (!n) return;
  Rational v = n->first < 0 ? Rational(-c) : c;
  auto [it, inserted] = terms_.emplace(n->second, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

const SigPtr& WeilElement::common_sig(const WeilElement& a,
                                      const WeilElement& b) {
  // Signature-less elements are exact zeros and combine with anything.
  if (a.sig_ == b.sig_) return a.sig_;
  if (!a.sig_ && a.terms_.empty()) return b.sig_;
  if (!b.sig_ && b.terms_.empty()) return a.sig_;
  throw error("signature mismatch between algebra elements");
}

Rational WeilElement::constant_term() const {
  if (!sig_) return 0;
  return coeff(Monomial::unit(sig_->generators()));
}

Rational WeilElement::coeff(const Monomial& m) const {
  if (!sig_) return 0;
  auto n = sig_->normalize(m);
  if (!n) throw error("monomial outside basis: " + m.to_string());
  auto it = terms_.find(n->second);
  if (it == terms_.end()) return 0;
  return n->first < 0 ? Rational(-it->second) : it->second;
}

WeilElement WeilElement::operator+(const WeilElement& o) const {
  WeilElement r(common_sig(*this, o));
  r.terms_ = sig_ ? terms_ : o.terms_;
  if (!sig_) return r;
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = r.terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

WeilElement WeilElement::operator-() const {
  WeilElement r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

WeilElement WeilElement::operator-(const WeilElement& o) const {
  return *this + (-o);
}

WeilElement WeilElement::operator*(const WeilElement& o) const {
  WeilElement r(common_sig(*this, o));
  if (terms_.empty() || o.terms_.empty()) return r;
  const unsigned cap = r.sig_->cap();
  for (const auto& [ma, ca] : terms_) {
    const unsigned da = ma.degree();
    if (da >= cap) continue;
    for (const auto& [mb, cb] : o.terms_) {
      if (da + mb.degree() >= cap) continue;  // truncated before any work
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

WeilElement WeilElement::operator*(const Rational& c) const {
  if (c == 0) return WeilElement::zero(sig_ ? sig_ : SigPtr{});
  WeilElement r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

bool WeilElement::operator==(const WeilElement& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (sig_ != o.sig_) return false;
  return terms_ == o.terms_;
}

WeilElement WeilElement::invert() const {
  if (!sig_) throw error("cannot invert element without signature");
  Rational c = constant_term();
  if (c == 0) throw error("element with zero constant term is not a unit");
  // x = c (1 + m); x^-1 = c^-1 (1 - m + m^2 - ...), truncated by nilpotency.
  WeilElement one = constant(sig_, 1);
  WeilElement m = *this * Rational(1 / c) - one;
  WeilElement acc = one, pow = one;
  for (unsigned i = 1; i < sig_->cap(); ++i) {
    pow = pow * m;
    if (pow.is_zero()) break;
    acc = (i % 2) ? acc - pow : acc + pow;
  }
  return acc * Rational(1 / c);
}

std::string WeilElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_unit()) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << "*";
      os << m.to_string();
    }
  }
  return os.str();
}

Vec::Vec(SigPtr sig, unsigned dim) : sig_(std::move(sig)) {
  if (dim < 1) throw error("vector dimension must be at least 1");
  e_.assign(dim, WeilElement::zero(sig_));
}

Vec::Vec(SigPtr sig, std::vector<WeilElement> entries)
    : sig_(std::move(sig)), e_(std::move(entries)) {
  if (e_.empty()) throw error("vector dimension must be at least 1");
  for (auto& x : e_)
    if (x.signature() && x.signature() != sig_)
      throw error("vector entry over foreign signature");
}

Vec Vec::from_rationals(const SigPtr& sig, const std::vector<Rational>& r) {
  Vec v(sig, static_cast<unsigned>(r.size()));
  for (unsigned i = 0; i < v.dim(); ++i)
    v[i] = WeilElement::constant(sig, r[i]);
  return v;
}

Vec Vec::operator+(const Vec& o) const {
  if (dim() != o.dim()) throw error("vector dimension mismatch");
  Vec r = *this;
  for (unsigned i = 0; i < dim(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  if (dim() != o.dim()) throw error("vector dimension mismatch");
  Vec r = *this;
  for (unsigned i = 0; i < dim(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Vec Vec::operator-() const {
  Vec r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Vec Vec::operator*(const Rational& c) const {
  Vec r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

Vec Vec::operator*(const WeilElement& c) const {
  Vec r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

bool Vec::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

Vec Vec::concat(const Vec& a, const Vec& b) {
  if (a.signature() != b.signature()) throw error("signature mismatch");
  std::vector<WeilElement> entries(a.e_);
  entries.insert(entries.end(), b.e_.begin(), b.e_.end());
  return Vec(a.sig_, std::move(entries));
}

std::string Vec::to_string() const {
  std::ostringstream os;
  os << "(";
  for (unsigned i = 0; i < dim(); ++i) {
    if (i) os << ", ";
    os << e_[i].to_string();
  }
  os << ")";
  return os.str();
}

}  // namespace sdg
