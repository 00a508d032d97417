// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "kissbound/pipeline.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace kissbound;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

Polynomial gram_form(const RationalMatrix& x, const std::vector<Monomial>& basis) {
  Polynomial p;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[i] * basis[j], x(i, j));
  }
  return p;
}

std::string decimal(const Real& x, int digits = 12) { return to_decimal(x, digits); }
std::string decimal(const Rational& x, int digits = 12) { return to_fixed(x, digits); }

// ---------------------------------------------------------------- 1

Outcome block_dimensions() {
  std::ostringstream note;
  for (unsigned d = 1; d <= 16; ++d) {
    const SymmetryAdaptedBasis basis = symmetry_adapted_basis(d);
    const CharacterCounts oracle = character_counts(d);
    if (basis.a() + basis.b() + 2 * basis.c() != binomial(d + 3, 3)) {
      return fail("a + b + 2c != C(d+3,3) at d = " + std::to_string(d));
    }
    if (static_cast<long>(basis.a()) != oracle.trivial || static_cast<long>(basis.b()) != oracle.alternating ||
        static_cast<long>(basis.c()) != oracle.standard) {
      return fail("multiplicities disagree with the character table at d = " + std::to_string(d));
    }
    if (d == 15) {
      note << "d=15: (" << basis.a() << ", " << basis.b() << ", " << basis.c() << "), C(18,3) = " << binomial(18, 3);
      if (basis.a() != 174 || basis.b() != 102 || basis.c() != 270 || binomial(18, 3) != 816) return fail(note.str());
    }
  }
  return {true, "d = 1..16 exact; " + note.str()};
}

// ---------------------------------------------------------------- 2

Outcome s_matrix_invariance() {
  std::size_t entries = 0;
  for (int n = 3; n <= 9; ++n) {
    const SdpShape shape{n, 6, Rational(1, 2)};
    for (int k = 0; k <= 6; ++k) {
      const PolyMatrix s = s_matrix(k, shape);
      for (std::size_t i = 0; i < s.dim(); ++i) {
        for (std::size_t j = 0; j < s.dim(); ++j) {
          ++entries;
          if (!fixed_by_all(s.at(i, j))) {
            return fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") of S_" + std::to_string(k) +
                        " for n = " + std::to_string(n) + " moves");
          }
        }
      }
    }
  }
  return {true, std::to_string(entries) + " entries fixed by all six permutations"};
}

// ---------------------------------------------------------------- 3

Outcome membership_equivalence() {
  std::mt19937_64 rng(31337);
  std::ostringstream note;
  for (const Rational& c : {frac(1, 2), frac(0, 1), frac(-1, 4)}) {
    const DeltaSystem sys = delta_system(c);
    std::vector<std::array<Rational, 3>> boundary{
        {c, c, c},       {-1, -1, 1},     {c, c, 1},       {-1, c, -c},     {c, -1, -c},
        {-1, -1, -1},    {0, 0, 1},       {0, 0, -1},      {c, 0, 0},       {-1, 0, 0},
        {1, 1, 1},       {c, c, 2 * c * c - 1}, {c, -1, c},   {-1, c, c},      {c, c, -1},
        {0, c, -1},      {-1, -1, c},     {1, 0, 0},       {c, frac(1, 1), c}, {-1, 1, -1}};
    std::size_t inside = 0;
    std::size_t total = 0;
    auto agree = [&](const std::array<Rational, 3>& p) {
      const bool via_g = delta_membership(p, sys, DeltaVia::G);
      inside += via_g;
      ++total;
      return via_g == delta_membership(p, sys, DeltaVia::S);
    };
    for (const auto& p : boundary) {
      if (!agree(p)) return fail("boundary triple disagrees for cos_theta = " + to_string(c));
    }
    for (int trial = 0; trial < 100000; ++trial) {
      const std::array<Rational, 3> p{random_unit(rng, 1000), random_unit(rng, 1000), random_unit(rng, 1000)};
      if (!agree(p)) {
        return fail("(" + to_string(p[0]) + ", " + to_string(p[1]) + ", " + to_string(p[2]) +
                    ") disagrees for cos_theta = " + to_string(c));
      }
    }
    note << "cos " << to_string(c) << ": " << inside << "/" << total << " inside; ";
  }
  return {true, note.str()};
}

// ---------------------------------------------------------------- 4

Outcome jacobi_correctness() {
  const std::array<Rational, 3> one{1, 0, 0};
  for (int n = 3; n <= 10; ++n) {
    for (int k = 0; k <= 12; ++k) {
      if (jacobi(k, n).evaluate(one) != 1) return fail("P_" + std::to_string(k) + "^" + std::to_string(n) + "(1) != 1");
    }
  }
  const Polynomial weight = Polynomial(Rational(1)) - Polynomial::variable(0) * Polynomial::variable(0);
  for (int j = 0; j <= 8; ++j) {
    for (int k = 0; k < j; ++k) {
      if (integrate_unit_interval(jacobi(j, 5) * jacobi(k, 5) * weight) != 0) {
        return fail("n = 5 integral of P_" + std::to_string(j) + " P_" + std::to_string(k) + " is nonzero");
      }
    }
  }
  return {true, "P(1) = 1 for k <= 12, n <= 10; 36 vanishing integrals for n = 5"};
}

// ---------------------------------------------------------------- live solves (5, 6, 9)

struct LiveRun {
  CertifiedBound cert;
  double seconds = 0;
  std::string error;
};

LiveRun live(const fs::path& root, int d, Formulation mode) {
  JobSpec job;
  job.n = 3;
  job.d = d;
  job.cos_theta = "1/2";
  job.lambda_min = "1e-8";
  job.mode = mode;
  job.out_dir = root;
  job.solver.command = std::string(KISSBOUND_SOLVER_SHIM) + " -ds {in} -o {out} -p {param}";
  job.solver.timeout_seconds = 900;
  LiveRun r;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.cert = cmd_all(job);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Outcome desk_scale(const LiveRun& r) {
  if (!r.error.empty()) return fail(r.error);
  std::ostringstream note;
  note << "status " << to_string(r.cert.status) << ", solver objective " << decimal(r.cert.solver_objective);
  if (!r.cert.certified()) return fail(note.str() + ", " + r.cert.message);
  const Rational& bound = *r.cert.bound;
  const Real gap = abs(to_real(bound) - r.cert.solver_objective);
  note << ", bound " << r.cert.bound_decimal.substr(0, 16) << ", |B - obj| = " << decimal(gap, 3) << ", "
       << static_cast<int>(r.seconds) << " s";
  const bool ok = bound >= 12 && bound <= frac(136, 10) && gap <= Real("1e-5") && r.seconds < 900;
  return {ok, note.str()};
}

Outcome formulation_equivalence(const std::map<std::pair<int, Formulation>, LiveRun>& runs) {
  std::ostringstream note;
  bool ok = true;
  for (int d : {3, 4}) {
    const LiveRun& reduced = runs.at({d, Formulation::Reduced});
    const LiveRun& monomial = runs.at({d, Formulation::Monomial});
    if (!reduced.error.empty() || !monomial.error.empty()) return fail(reduced.error + monomial.error);
    const Real diff = abs(reduced.cert.solver_objective - monomial.cert.solver_objective);
    note << "d=" << d << ": " << decimal(reduced.cert.solver_objective) << " vs "
         << decimal(monomial.cert.solver_objective) << " (diff " << decimal(diff, 3) << "); ";
    ok = ok && diff <= Real("1e-6");
  }
  return {ok, note.str()};
}

Outcome monotonicity(const std::map<std::pair<int, Formulation>, LiveRun>& runs) {
  std::ostringstream note;
  std::optional<Rational> previous;
  bool ok = true;
  for (int d : {3, 4, 5}) {
    const LiveRun& r = runs.at({d, Formulation::Reduced});
    if (!r.error.empty() || !r.cert.certified()) return fail("d = " + std::to_string(d) + " did not certify");
    note << "d=" << d << ": " << r.cert.bound_decimal.substr(0, 14) << "; ";
    if (previous && *r.cert.bound > *previous + frac(1, 1000000)) ok = false;
    previous = r.cert.bound;
  }
  return {ok, note.str()};
}

// ---------------------------------------------------------------- 7

Outcome adversarial() {
  std::ostringstream note;
  // (a) exactly feasible synthetic solution
  {
    const ProblemMetadata meta = fixture_metadata(fixture_config(3, Formulation::Monomial));
    ScopedPrecision precision(meta.config.precision_bits);
    const SyntheticSolution syn = make_synthetic(fixture_solution(meta), meta);
    RationalSolution rebuilt;
    CertifyOptions options;
    options.reconstructed = &rebuilt;
    const CertifiedBound cert = certify(syn.solution, meta, options);
    if (!cert.certified()) return fail("(a) synthetic solution: " + cert.message);
    if (*cert.bound != syn.objective) return fail("(a) bound differs from the synthetic objective");
    if (!residual(rebuilt, meta).constraint_i.is_zero() || !residual(rebuilt, meta).constraint_ii.is_zero()) {
      return fail("(a) reconstructed solution has a nonzero residual");
    }
    note << "(a) bound == objective exactly; ";
  }
  // (b) a -1e-6 eigenvalue in every PSD block, both formulations
  std::size_t injected = 0;
  for (auto mode : {Formulation::Monomial, Formulation::Reduced}) {
    const ProblemMetadata meta = fixture_metadata(fixture_config(3, mode));
    ScopedPrecision precision(meta.config.precision_bits);
    const Solution sol = fixture_solution(meta);
    for (const auto& info : sol.layout) {
      if (info.kind != BlockKind::Psd) continue;
      Solution bad = sol;
      RealMatrix x = sol.block(info.name);
      for (std::size_t i = 0; i < x.dim(); ++i) {
        x(0, i) = 0;
        x(i, 0) = 0;
      }
      x(0, 0) = Real("-1e-6");
      // Stored blocks are unshifted; the certifier adds lambda_shift back.
      for (std::size_t i = 0; i < info.dim; ++i) x(i, i) -= sol.lambda_shift;
      bad.raw_blocks[info.name] = x;
      const CertifiedBound cert = certify(bad, meta);
      const std::string expected = info.name.substr(0, info.name.find('.'));
      if (cert.status != CertStatus::PdFailed || cert.bound || cert.message.find(expected) == std::string::npos) {
        return fail("(b) block " + info.name + " gave " + to_string(cert.status) + ": " + cert.message);
      }
      ++injected;
    }
  }
  note << "(b) " << injected << " blocks each named in a pd-failed result; ";
  // (c) residual inflated above lambda
  for (const char* target : {"Q1", "R1"}) {
    const ProblemMetadata meta = fixture_metadata(fixture_config(3, Formulation::Monomial));
    ScopedPrecision precision(meta.config.precision_bits);
    Solution sol = fixture_solution(meta);
    sol.raw_blocks.at(target)(0, 0) += Real("1e-2");
    const CertifiedBound cert = certify(sol, meta);
    if (cert.status != CertStatus::NormTestFailed || cert.bound) {
      return fail(std::string("(c) inflating ") + target + " gave " + to_string(cert.status));
    }
  }
  note << "(c) inflated Q1 and R1 give norm-test-failed";
  return {true, note.str()};
}

// ---------------------------------------------------------------- 8

Outcome absorption_soundness() {
  std::mt19937_64 rng(4242);
  const auto basis = monomials_up_to(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial r = random_polynomial(rng, 8, 1 + static_cast<std::size_t>(trial % 60));
    const Absorption a = absorb(r, basis, Rational(1));
    if (gram_form(a.correction, basis) != r) return fail("trial " + std::to_string(trial) + " does not reconstruct");
    Rational norm = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) norm += a.correction(i, j) * a.correction(i, j);
    }
    if (a.norm_squared != norm) return fail("trial " + std::to_string(trial) + " has an inexact norm");
  }
  return {true, "100 residuals of degree <= 8 reconstruct exactly with exact Frobenius norms"};
}

}  // namespace

int main() {
  ScopedPrecision precision(kDefaultPrecisionBits);
  const fs::path root = scratch_dir("acceptance");
  fs::remove_all(root);
  fs::create_directories(root);

  int failures = 0;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " -- " << o.detail << std::endl;
  };

  report(1, "block-dimension identity", block_dimensions);
  report(2, "S3 invariance of s_matrix", s_matrix_invariance);
  report(3, "membership via g equals membership via s", membership_equivalence);
  report(4, "Jacobi correctness", jacobi_correctness);

  std::map<std::pair<int, Formulation>, LiveRun> runs;
  for (int d : {3, 4, 5}) runs[{d, Formulation::Reduced}] = live(root, d, Formulation::Reduced);
  for (int d : {3, 4}) runs[{d, Formulation::Monomial}] = live(root, d, Formulation::Monomial);

  report(5, "desk-scale end to end (n=3, d=5, lambda 1e-8)", [&] { return desk_scale(runs.at({5, Formulation::Reduced})); });
  report(6, "reduced and monomial formulations agree", [&] { return formulation_equivalence(runs); });
  report(7, "certifier adversarial suite", adversarial);
  report(8, "absorption soundness", absorption_soundness);
  report(9, "monotonicity in d", [&] { return monotonicity(runs); });

  std::cout << render_table(collect_reports(root), true);
  fs::remove_all(root);
  return failures == 0 ? 0 : 1;
}
