#include "kissbound/certify.hpp"

#include "kissbound/symmetry.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <stdexcept>

namespace kissbound {

namespace {

std::string timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::map<Monomial, std::size_t> basis_index(const std::vector<Monomial>& basis) {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

// Multiplier index of an isotypic block name "R<j>.<iso>", or -1.
int isotypic_multiplier(const std::string& name) {
  if (name.size() < 4 || name[0] != 'R') return -1;
  const auto dot = name.find('.');
  if (dot == std::string::npos) return -1;
  return std::stoi(name.substr(1, dot - 1));
}

int multiplier_degree(const ProblemMetadata& meta, int index) {
  for (const auto& m : meta.multipliers) {
    if (m.index == index) return m.degree;
  }
  throw std::out_of_range("metadata lacks multiplier " + std::to_string(index));
}

// Columns are the coordinates of `vectors` on `basis`.
std::vector<std::vector<Real>> coordinates(const std::vector<const RealPolynomial*>& vectors,
                                           const std::map<Monomial, std::size_t>& index, std::size_t dim) {
  std::vector<std::vector<Real>> cols;
  for (const auto* p : vectors) {
    std::vector<Real> col(dim, Real(0));
    for (const auto& [m, c] : p->terms()) col.at(index.at(m)) = c;
    cols.push_back(std::move(col));
  }
  return cols;
}

// out += U X U^T.
void add_congruence(RealMatrix& out, const std::vector<std::vector<Real>>& u, const RealMatrix& x) {
  const std::size_t n = out.dim();
  const std::size_t m = x.dim();
  std::vector<std::vector<Real>> ux(n, std::vector<Real>(m, Real(0)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t l = 0; l < m; ++l) {
      Real acc = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (u[k][a] != 0) acc += u[k][a] * x(k, l);
      }
      ux[a][l] = acc;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Real acc = 0;
      for (std::size_t l = 0; l < m; ++l) {
        if (u[l][b] != 0) acc += ux[a][l] * u[l][b];
      }
      out(a, b) += acc;
    }
  }
}

}  // namespace

Solution expand_blocks(const Solution& sol, const ProblemMetadata& meta) {
  if (meta.config.mode == Formulation::Monomial) return sol;
  ScopedPrecision precision(meta.config.precision_bits);

  Solution out = sol;
  out.layout.clear();
  out.raw_blocks.clear();
  std::vector<int> done;
  for (const auto& info : sol.layout) {
    const int j = isotypic_multiplier(info.name);
    if (j < 0) {
      out.layout.push_back(info);
      if (info.kind == BlockKind::Psd) out.raw_blocks.emplace(info.name, sol.raw_blocks.at(info.name));
      continue;
    }
    if (std::find(done.begin(), done.end(), j) != done.end()) continue;
    done.push_back(j);

    const int degree = multiplier_degree(meta, j);
    const auto monomials = monomials_up_to(static_cast<unsigned>(degree));
    const auto index = basis_index(monomials);
    const SymmetryAdaptedBasis basis = symmetry_adapted_basis(static_cast<unsigned>(degree));
    std::vector<const RealPolynomial*> trv, alt, first, second;
    for (const auto& p : basis.trivial) trv.push_back(&p);
    for (const auto& p : basis.alternating) alt.push_back(&p);
    for (const auto& [e1, e2] : basis.standard) {
      first.push_back(&e1);
      second.push_back(&e2);
    }

    RealMatrix full(monomials.size());
    auto take = [&](std::size_t iso, const std::vector<const RealPolynomial*>& vecs,
                    const std::vector<const RealPolynomial*>* partner) {
      const std::string name = r_block_name(j, iso);
      const auto it = sol.raw_blocks.find(name);
      if (vecs.empty()) {
        if (it != sol.raw_blocks.end()) throw std::invalid_argument("unexpected block " + name);
        return;
      }
      if (it == sol.raw_blocks.end()) throw std::invalid_argument("solution lacks block " + name);
      if (it->second.dim() != vecs.size()) {
        throw std::invalid_argument("block " + name + " has dimension " + std::to_string(it->second.dim()) +
                                    ", basis has " + std::to_string(vecs.size()));
      }
      const RealMatrix x = sol.block(name);
      add_congruence(full, coordinates(vecs, index, monomials.size()), x);
      if (partner) add_congruence(full, coordinates(*partner, index, monomials.size()), x);
    };
    take(0, trv, nullptr);
    take(1, alt, nullptr);
    take(2, first, &second);

    for (std::size_t i = 0; i < full.dim(); ++i) full(i, i) -= sol.lambda_shift;
    const std::string name = r_block_name(j);
    out.layout.push_back({name, monomials.size(), BlockKind::Psd});
    out.raw_blocks.emplace(name, full.symmetrized());
  }
  return out;
}

std::optional<RealMatrix> cholesky(const RealMatrix& x) {
  const std::size_t n = x.dim();
  RealMatrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real pivot = x(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0)) return std::nullopt;
    l(j, j) = boost::multiprecision::sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      Real s = x(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

CholeskyFloor cholesky_floor(const RealMatrix& x, unsigned precision_bits) {
  ScopedPrecision precision(precision_bits);
  CholeskyFloor result;
  if (x.dim() == 0) return result;
  Real least = x(0, 0);
  for (std::size_t i = 1; i < x.dim(); ++i) least = std::min(least, Real(x(i, i)));
  if (!(least > 0)) return result;

  // Largest power of two not exceeding the least diagonal entry.
  Real lambda = 1;
  mpfr_mul_2si(lambda.backend().data(), lambda.backend().data(), mpfr_get_exp(least.backend().data()) - 1, MPFR_RNDN);

  for (unsigned step = 0; step <= precision_bits; ++step) {
    RealMatrix shifted = x;
    for (std::size_t i = 0; i < x.dim(); ++i) shifted(i, i) -= lambda;
    if (auto l = cholesky(shifted)) {
      result.ok = true;
      result.lambda = lambda;
      result.lower = std::move(*l);
      return result;
    }
    lambda /= 2;
  }
  return result;
}

RationalMatrix rationalize(const RealMatrix& lower, const Real& lambda) {
  const std::size_t n = lower.dim();
  RationalMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) l(i, j) = to_rational(lower(i, j));
  }
  const Rational lam = to_rational(lambda);
  RationalMatrix x(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k <= j; ++k) {
        if (l(i, k) != 0 && l(j, k) != 0) acc += l(i, k) * l(j, k);
      }
      if (i == j) acc += lam;
      x(i, j) = acc;
      x(j, i) = acc;
    }
  }
  return x;
}

RationalMatrix symmetrize_gram(const RationalMatrix& r, const std::vector<Monomial>& basis) {
  if (r.dim() != basis.size()) throw std::invalid_argument("symmetrize_gram: dimension mismatch");
  const auto index = basis_index(basis);
  RationalMatrix acc(r.dim());
  for (const auto& sigma : Permutation::all()) {
    std::vector<std::size_t> image(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) image[i] = index.at(sigma.apply(basis[i]));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (r(i, j) != 0) acc(image[i], image[j]) += r(i, j);
      }
    }
  }
  for (std::size_t i = 0; i < acc.dim(); ++i) {
    for (std::size_t j = 0; j < acc.dim(); ++j) acc(i, j) /= 6;
  }
  return acc;
}

Polynomial gram_polynomial(const RationalMatrix& r, const std::vector<Monomial>& basis) {
  if (r.dim() != basis.size()) throw std::invalid_argument("gram_polynomial: dimension mismatch");
  Polynomial p;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    for (std::size_t j = 0; j < r.dim(); ++j) p.add_term(basis[i] * basis[j], r(i, j));
  }
  return p;
}

Rational RationalSolution::objective() const {
  Rational total = 1;
  for (const auto& a_k : a) total += a_k;
  total += blocks.at("B")(0, 0);
  const RationalMatrix& f0 = blocks.at(f_block_name(0));
  for (std::size_t i = 0; i < f0.dim(); ++i) {
    for (std::size_t j = 0; j < f0.dim(); ++j) total += f0(i, j);
  }
  return total;
}

namespace {

// <S, F> for a symmetric rational F, with S given by `entry(i, j)`.
template <class Entry>
Polynomial pair_with(const RationalMatrix& f, Entry&& entry) {
  Polynomial acc;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    for (std::size_t j = i; j < f.dim(); ++j) {
      if (f(i, j) == 0) continue;
      const Rational w = i == j ? f(i, j) : Rational(2 * f(i, j));
      acc += entry(i, j) * w;
    }
  }
  return acc;
}

}  // namespace

Residuals residual(const RationalSolution& sol, const ProblemMetadata& meta) {
  const int d = meta.config.d;
  const RationalMatrix& b = sol.blocks.at("B");
  Residuals r;

  Polynomial ri(Rational(1));
  for (int k = 1; k <= d; ++k) ri += meta.jacobi.at(static_cast<std::size_t>(k - 1)) * sol.a.at(static_cast<std::size_t>(k - 1));
  ri += Polynomial(Rational(2 * b(0, 1) + b(1, 1)));
  Polynomial rii(b(1, 1));
  for (int k = 0; k <= d; ++k) {
    const PolyMatrix& s = meta.s_matrices.at(static_cast<std::size_t>(k));
    const RationalMatrix& f = sol.blocks.at(f_block_name(k));
    if (f.dim() != s.dim()) throw std::invalid_argument("block " + f_block_name(k) + " does not match S_k");
    ri += pair_with(f, [&](std::size_t i, std::size_t j) { return s.at(i, j).restrict_to_diagonal(); }) * Rational(3);
    rii += pair_with(f, [&](std::size_t i, std::size_t j) { return s.at(i, j); });
  }
  ri += gram_polynomial(sol.blocks.at("Q0"), monomials_up_to(static_cast<unsigned>(d), 1));
  ri += meta.interval * gram_polynomial(sol.blocks.at("Q1"), monomials_up_to(static_cast<unsigned>(d - 1), 1));

  for (const auto& mult : meta.multipliers) {
    const Polynomial gram =
        gram_polynomial(sol.blocks.at(r_block_name(mult.index)), monomials_up_to(static_cast<unsigned>(mult.degree)));
    rii += mult.index == 0 ? gram : meta.invariants.at(static_cast<std::size_t>(mult.index - 1)) * gram;
  }
  r.constraint_i = std::move(ri);
  r.constraint_ii = std::move(rii);
  return r;
}

std::pair<Monomial, Monomial> canonical_split(const Monomial& m) {
  unsigned remaining = (m.degree() + 1) / 2;
  Monomial first;
  for (std::size_t i = 0; i < 3; ++i) {
    const unsigned take = std::min(remaining, m[i]);
    first.exponents[i] = static_cast<std::uint16_t>(take);
    remaining -= take;
  }
  return {first, m / first};
}

Absorption absorb(const Polynomial& r, const std::vector<Monomial>& basis, const Rational& lambda_floor) {
  const auto index = basis_index(basis);
  Absorption out;
  out.correction = RationalMatrix(basis.size());
  for (const auto& [m, c] : r.terms()) {
    const auto [m1, m2] = canonical_split(m);
    const auto i1 = index.find(m1);
    const auto i2 = index.find(m2);
    if (i1 == index.end() || i2 == index.end()) {
      throw std::logic_error("residual monomial " + m.to_string() + " exceeds the absorbing basis");
    }
    if (i1->second == i2->second) {
      out.correction(i1->second, i1->second) += c;
    } else {
      const Rational half = c / 2;
      out.correction(i1->second, i2->second) += half;
      out.correction(i2->second, i1->second) += half;
    }
  }
  out.norm_squared = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (out.correction(i, j) != 0) out.norm_squared += out.correction(i, j) * out.correction(i, j);
    }
  }
  out.ok = lambda_floor >= 0 && out.norm_squared <= lambda_floor * lambda_floor;
  return out;
}

std::string to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Certified: return "certified";
    case CertStatus::PdFailed: return "pd-failed";
    case CertStatus::NormTestFailed: return "norm-test-failed";
    case CertStatus::MetadataMismatch: return "metadata-mismatch";
    case CertStatus::SanityEnvelopeFailed: return "sanity-envelope-failed";
  }
  return "unknown";
}

namespace {

Rational max_abs_coefficient(const Polynomial& p) {
  Rational best = 0;
  for (const auto& [m, c] : p.terms()) best = std::max(best, Rational(abs(c)));
  return best;
}

std::string check_layout(const Solution& sol, const ProblemMetadata& meta) {
  if (sol.layout.size() != meta.blocks.size()) return "solution and metadata disagree on the block count";
  for (std::size_t i = 0; i < meta.blocks.size(); ++i) {
    const auto& a = sol.layout[i];
    const auto& b = meta.blocks[i];
    if (a.name != b.name || a.dim != b.dim || a.kind != b.kind) {
      return "block " + std::to_string(i + 1) + " is " + a.name + " in the solution but " + b.name + " in the metadata";
    }
  }
  const auto d = static_cast<std::size_t>(meta.config.d);
  if (meta.jacobi.size() != d || meta.s_matrices.size() != d + 1) return "metadata polynomial data does not match d";
  for (std::size_t k = 0; k <= d; ++k) {
    const auto idx = meta.find_block(f_block_name(static_cast<int>(k)));
    if (!idx || meta.blocks[*idx].dim != meta.s_matrices[k].dim()) return "block F" + std::to_string(k) + " does not match S_k";
  }
  for (const char* name : {"B", "a", "Q0", "Q1"}) {
    if (!meta.find_block(name)) return std::string("metadata lacks block ") + name;
  }
  return {};
}

}  // namespace

CertifiedBound certify(const Solution& sol, const ProblemMetadata& meta, const CertifyOptions& options) {
  ScopedPrecision precision(options.precision_bits);
  CertifiedBound cert;
  cert.n = meta.config.n;
  cert.d = meta.config.d;
  cert.cos_theta = meta.config.cos_theta;
  cert.solver_objective = sol.objective();
  cert.problem_sha256 = meta.problem_sha256;
  cert.solution_sha256 = options.solution_sha256;
  cert.timestamp = timestamp_now();

  if (auto problem = check_layout(sol, meta); !problem.empty()) {
    cert.status = CertStatus::MetadataMismatch;
    cert.message = problem;
    return cert;
  }
  Solution expanded;
  try {
    expanded = expand_blocks(sol, meta);
  } catch (const std::exception& e) {
    cert.status = CertStatus::MetadataMismatch;
    cert.message = e.what();
    return cert;
  }

  const int d = meta.config.d;
  RationalSolution exact;
  std::vector<std::string> failed;
  for (const auto& info : expanded.layout) {
    if (info.kind != BlockKind::Psd) continue;
    const CholeskyFloor floor = cholesky_floor(expanded.block(info.name), options.precision_bits);
    BlockFloor record{info.name, info.dim, floor.ok, floor.ok ? to_rational(floor.lambda) : Rational(0)};
    cert.audit.floors.push_back(record);
    if (!floor.ok) {
      const bool from_isotypic = meta.config.mode == Formulation::Reduced && info.name[0] == 'R';
      failed.push_back(from_isotypic ? info.name + " (expanded from its isotypic blocks)" : info.name);
      continue;
    }
    RationalMatrix x = rationalize(floor.lower, floor.lambda);
    if (info.name[0] == 'R') {
      const int j = std::stoi(info.name.substr(1));
      x = symmetrize_gram(x, monomials_up_to(static_cast<unsigned>(multiplier_degree(meta, j))));
    }
    exact.blocks.emplace(info.name, std::move(x));
  }
  if (!failed.empty()) {
    cert.status = CertStatus::PdFailed;
    cert.message = "not numerically positive definite: ";
    for (std::size_t i = 0; i < failed.size(); ++i) cert.message += (i ? ", " : "") + failed[i];
    return cert;
  }

  for (const auto& value : expanded.a()) {
    Rational q = to_rational(value);
    if (q < 0) {
      q = 0;
      ++cert.audit.clipped_scalars;
    }
    exact.a.push_back(q);
  }

  auto floor_of = [&](const std::string& name) {
    for (const auto& f : cert.audit.floors) {
      if (f.name == name) return f.lambda;
    }
    throw std::logic_error("no floor recorded for " + name);
  };
  const Residuals before = residual(exact, meta);
  const Absorption fix_i = absorb(before.constraint_i, monomials_up_to(static_cast<unsigned>(d), 1), floor_of("Q0"));
  const Absorption fix_ii = absorb(before.constraint_ii, monomials_up_to(static_cast<unsigned>(d)), floor_of("R0"));
  cert.audit.families.push_back(
      {"i", "Q0", fix_i.norm_squared, floor_of("Q0"), fix_i.ok, max_abs_coefficient(before.constraint_i)});
  cert.audit.families.push_back(
      {"ii", "R0", fix_ii.norm_squared, floor_of("R0"), fix_ii.ok, max_abs_coefficient(before.constraint_ii)});
  if (!fix_i.ok || !fix_ii.ok) {
    cert.status = CertStatus::NormTestFailed;
    for (const auto& fam : cert.audit.families) {
      if (fam.ok) continue;
      if (!cert.message.empty()) cert.message += "; ";
      Real norm = boost::multiprecision::sqrt(to_real(fam.norm_squared));
      cert.message += "constraint (" + fam.family + "): ||A|| = " + to_decimal(norm, 6) + " exceeds lambda(" +
                      fam.absorbing_block + ") = " + to_decimal(to_real(fam.lambda), 6);
    }
    cert.message += "; re-solve with a larger lambda_min or a more precise solver";
    return cert;
  }

  exact.blocks.at("Q0") -= fix_i.correction;
  exact.blocks.at("R0") -= fix_ii.correction;
  const Residuals after = residual(exact, meta);
  if (!after.constraint_i.is_zero() || !after.constraint_ii.is_zero()) {
    throw std::logic_error("absorption left a nonzero residual");
  }

  const Rational bound = exact.objective();
  const Real weight = Real(d + 2);
  const Real envelope = cert.solver_objective - 10 * meta.lambda_shift * weight -
                        boost::multiprecision::abs(cert.solver_objective) * Real("1e-12");
  if (to_real(bound) < envelope) {
    cert.status = CertStatus::SanityEnvelopeFailed;
    cert.message = "certified bound " + to_decimal(bound, 12) + " is implausibly far below the solver objective " +
                   to_decimal(cert.solver_objective, 12);
    return cert;
  }
  cert.status = CertStatus::Certified;
  cert.bound = bound;
  cert.bound_decimal = to_decimal(bound, 30, true);
  if (options.reconstructed) *options.reconstructed = std::move(exact);
  return cert;
}

std::string report_to_json(const CertifiedBound& cert) {
  using nlohmann::json;
  ScopedPrecision precision(kDefaultPrecisionBits);
  json j;
  j["n"] = cert.n;
  j["d"] = cert.d;
  j["cos_theta"] = to_string(cert.cos_theta);
  j["status"] = to_string(cert.status);
  j["message"] = cert.message;
  j["certified_bound_rational"] = cert.bound ? json(to_string(*cert.bound)) : json(nullptr);
  j["certified_bound_decimal"] = cert.bound ? json(cert.bound_decimal) : json(nullptr);
  j["solver_objective"] = to_decimal(cert.solver_objective, 30);
  json floors = json::object();
  for (const auto& f : cert.audit.floors) floors[f.name] = f.ok ? json(to_decimal(f.lambda, 20)) : json("failed");
  j["lambda_per_block"] = floors;
  json norms = json::object();
  for (const auto& fam : cert.audit.families) {
    const Real norm = boost::multiprecision::sqrt(to_real(fam.norm_squared));
    norms[fam.family] = {{"absorbing_block", fam.absorbing_block},
                         {"norm", to_decimal(norm, 20)},
                         {"lambda", to_decimal(fam.lambda, 20)},
                         {"max_residual_coefficient", to_decimal(fam.max_coefficient, 20)},
                         {"passed", fam.ok}};
  }
  j["residual_norms"] = norms;
  j["clipped_scalars"] = cert.audit.clipped_scalars;
  j["provenance"] = {{"problem_sha256", cert.problem_sha256},
                     {"solution_sha256", cert.solution_sha256},
                     {"timestamp", cert.timestamp}};
  return j.dump(2) + "\n";
}

}  // namespace kissbound
