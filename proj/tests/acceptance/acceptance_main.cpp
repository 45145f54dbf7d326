// Acceptance checks. One line per criterion: PASS, FAIL or SKIP.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "brute.hpp"
#include "fixtures.hpp"
#include "lapeig/bench.hpp"
#include "lapeig/ic0.hpp"
#include "lapeig/kernels.hpp"
#include "lapeig/pcg.hpp"
#include "lapeig/rng.hpp"
#include "lapeig/spectral.hpp"
#include "lapeig/vector_ops.hpp"
#include "oracle.hpp"
#include "solve.hpp"

using namespace lapeig;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
struct Failures {
  int count = 0;
  std::ostringstream first;

  void add(const std::string& what) {
    if (count++ < 3) first << (count > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& ok_detail) const {
    if (count == 0) return {Verdict::pass, ok_detail};
    return {Verdict::fail, std::to_string(count) + " failures: " + first.str()};
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string name_of(SolverKind s) { return std::string(to_string(s)); }

const SolverKind kSolvers[] = {SolverKind::dacg, SolverKind::jd, SolverKind::irlm};

std::vector<Index> neig_list(Index n) {
  std::set<Index> s;
  for (Index k : {1, 5, 20}) s.insert(std::min<Index>(k, n - 1));
  return {s.begin(), s.end()};
}

struct CorpusRun {
  std::string name;
  SolverKind solver;
  Index neig;
  double delta;
  CsrMatrix l;
  SolveResult result;
};

EigenPairSet dense_pairs(const CsrMatrix& l) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(l));
  EigenPairSet p;
  for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k) {
    p.values.push_back(es.eigenvalues()(k));
    const Eigen::VectorXd v = es.eigenvectors().col(k);
    p.vectors.emplace_back(v.data(), v.data() + v.size());
    p.residuals.push_back(0.0);
  }
  return p;
}

Eigen::MatrixXd dense_of(const PinvApprox& p, Index n) {
  const Vector m = materialize(p, n);
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      m.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

std::string label(const CorpusRun& r) {
  return r.name + "/" + name_of(r.solver) + "/neig=" + std::to_string(r.neig);
}

// Shared by criteria 1-3: every solver on every corpus graph at delta = 1e-6.
std::vector<CorpusRun> g_runs;
double g_corpus_seconds = 0.0;

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  Failures fail;
  for (const auto& [name, g] : fixtures::corpus()) {
    const CsrMatrix l = fixtures::laplacian(g);
    const Vector ref = oracle::positive_eigenvalues(l);
    for (Index neig : neig_list(l.n())) {
      for (SolverKind s : kSolvers) {
        CorpusRun r{name, s, neig, 1e-6, l, fixtures::solve(s, l, neig, 1e-6)};
        if (!r.result.report.converged || r.result.pairs.size() != neig) {
          fail.add(label(r) + " " + std::string(to_string(r.result.report.status)));
        } else {
          for (Index i = 0; i < neig; ++i) {
            const double rel = std::abs(r.result.pairs.values[i] - ref[i]) / ref[i];
            if (rel > 1e-5) fail.add(label(r) + fmt(" value %g rel err %.3g", double(i), rel));
          }
        }
        g_runs.push_back(std::move(r));
      }
    }
  }
  g_corpus_seconds = seconds_since(t0);
  if (g_corpus_seconds >= 10.0) fail.add(fmt("took %.2f s", g_corpus_seconds));
  return fail.outcome(std::to_string(g_runs.size()) + " runs" + fmt(", %.2f s", g_corpus_seconds));
}

Outcome residual_contract() {
  Failures fail;
  Index checked = 0;
  auto check = [&](const CorpusRun& r) {
    const Vector res = verify_residuals(r.l, r.result.pairs);
    for (Index i = 0; i < res.size(); ++i, ++checked)
      if (!(res[i] <= r.delta)) fail.add(label(r) + fmt(" delta %g residual %.3g", r.delta, res[i]));
  };
  for (const auto& r : g_runs) check(r);
  for (const auto& [name, g] : fixtures::corpus()) {
    const CsrMatrix l = fixtures::laplacian(g);
    for (Index neig : neig_list(l.n())) {
      for (SolverKind s : kSolvers) {
        CorpusRun r{name, s, neig, 1e-3, l, fixtures::solve(s, l, neig, 1e-3)};
        if (!r.result.report.converged) fail.add(label(r) + " delta 1e-3 not converged");
        check(r);
      }
    }
  }
  return fail.outcome(std::to_string(checked) + " pairs");
}

Outcome orthogonality() {
  Failures fail;
  double worst_gram = 0.0, worst_kernel = 0.0;
  for (const auto& r : g_runs) {
    const double gram = fixtures::max_gram_offdiag(r.result.pairs);
    const double ker = fixtures::max_kernel_overlap(r.result.pairs);
    worst_gram = std::max(worst_gram, gram);
    worst_kernel = std::max(worst_kernel, ker);
    if (gram > 1e-8) fail.add(label(r) + fmt(" gram %.3g", gram));
    if (ker > 1e-8) fail.add(label(r) + fmt(" kernel %.3g", ker));
  }
  return fail.outcome(fmt("max gram %.2g, max kernel overlap %.2g", worst_gram, worst_kernel));
}

CsrMatrix tridiagonal_spd(Index n, Rng& rng) {
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) {
    t.push_back({i, i, 2.5 + rng.uniform()});
    if (i + 1 < n) {
      const double w = -(0.2 + rng.uniform());
      t.push_back({i, i + 1, w});
      t.push_back({i + 1, i, w});
    }
  }
  return CsrMatrix::from_triplets(n, t, true);
}

Outcome ic0_exactness() {
  Failures fail;
  Rng rng(17);
  std::vector<CsrMatrix> cases;
  for (Index n : {1, 2, 3, 10, 50, 200}) cases.push_back(tridiagonal_spd(n, rng));
  // path Laplacians plus a diagonal shift
  for (Index n : {4, 30}) {
    const CsrMatrix p = fixtures::laplacian(fixtures::path(n));
    std::vector<Triplet> t;
    for (Index i = 0; i < n; ++i)
      for (Index k = p.row_ptr()[i]; k < p.row_ptr()[i + 1]; ++k)
        t.push_back({i, p.col_idx()[k], p.values()[k] + (p.col_idx()[k] == i ? 0.1 : 0.0)});
    cases.push_back(CsrMatrix::from_triplets(n, t, true));
  }
  Index max_its = 0;
  double max_diff = 0.0;
  for (const CsrMatrix& a : cases) {
    const Ic0Factor f = ic0_factorize(a);
    if (f.shift() != 0.0) fail.add(fmt("n=%g shifted", double(a.n())));
    const double diff = (oracle::cholesky(a) - oracle::dense(f.lower())).cwiseAbs().maxCoeff();
    max_diff = std::max(max_diff, diff);
    if (diff > 1e-14) fail.add(fmt("n=%g factor differs by %.3g", double(a.n()), diff));
    MvpCounter c;
    const Vector b = rng.vector(a.n());
    const PcgOutcome out =
        pcg_solve(matrix_operator(a, c), preconditioner_operator(f), b, {1e-10, 100}, {});
    max_its = std::max(max_its, out.iterations);
    if (!out.converged || out.iterations > 2)
      fail.add(fmt("n=%g pcg took %g iterations", double(a.n()), double(out.iterations)));
  }
  return fail.outcome(fmt("%g matrices, max diff %.2g, max pcg its %g", double(cases.size()), max_diff,
                          double(max_its)));
}

// Every connected graph on n labelled nodes with unit weights.
std::vector<EdgeList> all_connected(Index n) {
  std::vector<std::pair<Index, Index>> slots;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<EdgeList> out;
  for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1ul) e.push_back({slots[s].first, slots[s].second, 1.0});
    EdgeList g(n, std::move(e));
    if (connected_components(g).count == 1) out.push_back(std::move(g));
  }
  return out;
}

EdgeList random_small(Index n, Rng& rng) {
  std::vector<Edge> e;
  const double p = 0.2 + 0.7 * rng.uniform();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (rng.uniform() < p) e.push_back({i, j, 0.1 + 2 * rng.uniform()});
  // keep it connected with a random spanning path
  for (Index i = 1; i < n; ++i) {
    const Index j = rng.below(i);
    const bool present = std::any_of(e.begin(), e.end(), [&](const Edge& x) { return x.i == j && x.j == i; });
    if (!present) e.push_back({j, i, 0.1 + 2 * rng.uniform()});
  }
  return EdgeList(n, std::move(e));
}

Outcome partition_relaxation() {
  const auto t0 = Clock::now();
  Failures fail;
  std::vector<EdgeList> graphs;
  for (Index n = 2; n <= 5; ++n)
    for (auto& g : all_connected(n)) graphs.push_back(std::move(g));
  const std::size_t exhaustive = graphs.size();
  Rng rng(5);
  for (Index n = 6; n <= 10; ++n)
    for (int k = 0; k < 40; ++k) graphs.push_back(random_small(n, rng));

  Index splits = 0;
  for (const EdgeList& g : graphs) {
    const CsrMatrix l = build_laplacian(g);
    const Index n = l.n();
    const FiedlerResult fr = fiedler(l, SolverKind::jd, 1e-10);
    EigenPairSet pairs;
    pairs.values = {fr.lambda2};
    pairs.vectors = {fr.vector};
    pairs.residuals = {fr.residual};
    MvpCounter c;
    for (Index n1 = 1; n1 < n; ++n1, ++splits) {
      const Index n2 = n - n1;
      const RelaxedPartition r = partition_relaxed(pairs, n1, n2);
      const double cut = fixtures::brute_min_cut(l, n1);
      if (r.value > cut * (1 + 1e-9))
        fail.add(fmt("n=%g n1=%g bound %.17g", double(n), double(n1), r.value) + fmt(" > cut %.17g", cut));
      const double sum = std::accumulate(r.x.begin(), r.x.end(), 0.0);
      const double e1 = std::abs(sum - (double(n1) - double(n2)) / 2);
      const double e2 = std::abs(dot(r.x, r.x) - double(n) / 4);
      if (e1 > 1e-10 || e2 > 1e-10) fail.add(fmt("n=%g constraints off by %.3g, %.3g", double(n), e1, e2));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 5.0) fail.add(fmt("took %.2f s", secs));
  return fail.outcome(std::to_string(graphs.size()) + " graphs (" + std::to_string(exhaustive) +
                      " exhaustive), " + std::to_string(splits) + " splits" + fmt(", %.2f s", secs));
}

Outcome pseudoinverse() {
  Failures fail;
  Rng rng(8);
  std::vector<fixtures::Named> small;
  for (auto& f : fixtures::corpus())
    if (f.graph.n_nodes() <= 100) small.push_back(f);
  small.push_back({"random100", fixtures::random_connected(100, 150, 21)});
  double worst = 0.0;
  for (const auto& [name, g] : small) {
    const CsrMatrix l = fixtures::laplacian(g);
    const Index n = l.n();
    const EigenPairSet pairs = dense_pairs(l);
    const PinvApprox t = make_truncated(pairs, n - 1);
    const Eigen::MatrixXd gplus = oracle::pseudoinverse(l);
    for (int k = 0; k < 5; ++k) {
      const Vector v = rng.vector(n);
      const double d = (oracle::to_eigen(pinv_apply(t, v)) - gplus * oracle::to_eigen(v)).cwiseAbs().maxCoeff();
      worst = std::max(worst, d);
      if (d > 1e-8) fail.add(name + fmt(" action differs by %.3g", d));
    }
  }

  Index compared = 0;
  for (const auto& [name, g] : fixtures::corpus()) {
    const CsrMatrix l = fixtures::laplacian(g);
    const Index n = l.n();
    const SolveResult r = fixtures::solve(SolverKind::jd, l, std::min<Index>(10, n - 1), 1e-8);
    if (!r.report.converged) {
      fail.add(name + " solve failed");
      continue;
    }
    const Eigen::MatrixXd gplus = oracle::pseudoinverse(l);
    const double lmax = estimate_lambda_max(l);
    for (Index k : {2, 5, 10}) {
      if (k > n - 1) continue;
      const double sigma = choose_sigma(SigmaPolicy::midpoint, r.pairs, k, lmax);
      const double es = (gplus - dense_of(make_shifted(r.pairs, k, sigma), n)).norm();
      const double et = (gplus - dense_of(make_truncated(r.pairs, k), n)).norm();
      ++compared;
      if (!(es <= et)) fail.add(name + fmt(" k=%g shifted %.6g > truncated %.6g", double(k), es, et));
    }
  }
  return fail.outcome(fmt("full-rank max diff %.2g, %g shifted/truncated comparisons", worst, double(compared)));
}

Outcome mvp_trend() {
  const CsrMatrix l = fixtures::laplacian(fixtures::clustered_1000());
  std::uint64_t mvp[3];
  Failures fail;
  for (int i = 0; i < 3; ++i) {
    const SolveResult r = fixtures::solve(kSolvers[i], l, 20, 1e-6, 1);
    if (!r.report.converged) fail.add(name_of(kSolvers[i]) + " did not converge");
    mvp[i] = r.report.mvp;
  }
  const std::string detail =
      fmt("MVP dacg %g, jd %g, irlm %g", double(mvp[0]), double(mvp[1]), double(mvp[2]));
  if (!(mvp[1] <= mvp[2])) fail.add("jd > irlm: " + detail);
  if (!(mvp[0] > mvp[1])) fail.add("dacg <= jd: " + detail);
  return fail.outcome(detail);
}

Outcome determinism() {
  Failures fail;
  const EdgeList g = fixtures::random_connected(200, 400, 11);
  RunConfig cfg;
  cfg.neig = 5;
  cfg.seed = 42;
  const RunOutcome a = run(cfg, g);
  const RunOutcome b = run(cfg, g);
  cfg.parallel = true;
  const RunOutcome c = run(cfg, g);
  for (const RunOutcome* o : {&b, &c}) {
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
      const auto& x = a.runs[i];
      const auto& y = o->runs[i];
      const std::string who = name_of(x.report.solver) + (o == &c ? " (parallel)" : "");
      if (x.pairs.values != y.pairs.values) fail.add(who + " eigenvalues differ");
      if (x.report.mvp != y.report.mvp) fail.add(who + " MVP counts differ");
    }
  }
  for (SolverKind s : kSolvers) {
    const CsrMatrix l = fixtures::laplacian(fixtures::clustered_1000());
    const SolveResult x = fixtures::solve(s, l, 5, 1e-6, 3);
    const SolveResult y = fixtures::solve(s, l, 5, 1e-6, 3);
    if (x.pairs.values != y.pairs.values || x.report.mvp != y.report.mvp)
      fail.add(name_of(s) + " differs on the n=1000 fixture");
  }
  return fail.outcome("bitwise identical");
}

struct DatasetRow {
  const char* name;
  Index n;
  Index nnz;
  double anzr;
  double gap;
};

const DatasetRow kDatasets[] = {
    {"protein", 1453, 5344, 3.7, 7.28},
    {"internet", 22963, 119835, 5.2, 4.39},
    {"www", 325729, 2505945, 7.8, 23.25},
    {"dblp", 928498, 8628378, 9.3, 2.11},
};

Outcome dataset_statistics() {
  const char* dir = std::getenv("LAPEIG_DATASETS");
  if (dir == nullptr) return {Verdict::skip, "LAPEIG_DATASETS not set"};
  namespace fs = std::filesystem;
  Failures fail;
  int found = 0;
  for (const DatasetRow& row : kDatasets) {
    fs::path path;
    GraphFormat format = GraphFormat::edge_list;
    for (const auto& [ext, f] : {std::pair{".txt", GraphFormat::edge_list}, {".mtx", GraphFormat::matrix_market}}) {
      const fs::path p = fs::path(dir) / (std::string(row.name) + ext);
      if (fs::exists(p)) {
        path = p;
        format = f;
        break;
      }
    }
    if (path.empty()) continue;
    ++found;
    const EdgeList g = load_edge_list_file(path.string(), format, true);
    const GraphStats st = stats(g);
    if (st.n != row.n) fail.add(std::string(row.name) + fmt(" n %g, expected %g", double(st.n), double(row.n)));
    if (st.nnz != row.nnz)
      fail.add(std::string(row.name) + fmt(" nnz %g, expected %g", double(st.nnz), double(row.nnz)));
    if (std::round(st.anzr * 10) / 10 != row.anzr)
      fail.add(std::string(row.name) + fmt(" anzr %.3f, expected %.1f", st.anzr, row.anzr));
    RunConfig cfg;
    cfg.solvers = {SolverKind::jd};
    cfg.neig = 50;
    cfg.allow_disconnected = true;
    const RunOutcome out = run(cfg, g);
    if (!out.all_converged()) {
      fail.add(std::string(row.name) + " eigensolve failed");
      continue;
    }
    const double gap = gap_ratios(out.runs[0].pairs.values).gap;
    if (std::abs(gap - row.gap) > 0.005 * row.gap)
      fail.add(std::string(row.name) + fmt(" gap %.4f, expected %.2f", gap, row.gap));
  }
  if (found == 0) return {Verdict::skip, std::string("no datasets found in ") + dir};
  return fail.outcome(std::to_string(found) + " datasets");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"residual contract", residual_contract},
      {"orthogonality", orthogonality},
      {"IC(0) exactness", ic0_exactness},
      {"partition relaxation", partition_relaxation},
      {"pseudoinverse", pseudoinverse},
      {"solver MVP trend", mvp_trend},
      {"determinism", determinism},
      {"dataset statistics", dataset_statistics},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    ++id;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {Verdict::fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::fail ? "FAIL" : "SKIP";
    if (o.verdict == Verdict::fail) ++failed;
    std::printf("%s criterion %d (%s): %s\n", tag, id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
