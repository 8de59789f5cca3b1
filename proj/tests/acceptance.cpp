// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit 1 on any
// failure. Criteria can be selected by number on the command line; no
// arguments runs all of them. Every comparison is exact; the only numeric
// thresholds are the pinned wall-clock limits and the 99% witness rate.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "plab/equality.hpp"
#include "plab/errors.hpp"
#include "plab/generators.hpp"
#include "plab/json_io.hpp"
#include "plab/reconstruct.hpp"
#include "plab/suites.hpp"
#include "plab/witnesses.hpp"

using namespace plab;

namespace {

constexpr long kSuiteWallLimitMs = 60000;        // criterion 1: per suite, per n
constexpr long kReconstructionWallLimitMs = 120000; // criterion 6: whole suite
constexpr double kWitnessRateFloor = 0.99;       // criterion 5
constexpr long kProbeBudget = 500;               // criteria 1 and 5
constexpr long kCorruptionBudget = 10000;        // criterion 7

long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int worker_count() {
    if (const char* env = std::getenv("PRESERVER_LAB_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

bool same_up_to_scalar(const Matrix& t_rec, const Matrix& t) {
    Matrix q = inverse(t_rec) * t;
    Scalar mu = q.trace() / Scalar(q.dim());
    return !mu.is_zero() && q == Matrix::identity(q.dim()) * mu;
}

// --- criterion 1: every lemma suite at full volume ---

bool crit_suites(std::string& detail) {
    bool ok = true;
    long slowest_ms = -1;
    std::string slowest;
    for (const SuiteInfo& suite : suite_registry()) {
        for (int n : {3, 4, 5}) {
            SuiteParams p;
            p.n_values = {n};
            p.trials = 500;
            p.seed = 7;
            p.budget = kProbeBudget;
            p.workers = worker_count();
            RunReport rep = run_suite(suite, p);
            if (rep.passes != 500 || !rep.failures.empty()) {
                ok = false;
                detail += std::string("\n    ") + suite.name + " n=" + std::to_string(n) +
                          ": " + std::to_string(rep.passes) + "/500" +
                          (rep.failures.empty()
                               ? ""
                               : " first failure: " + rep.failures.front().dump());
            }
            if (rep.wall_time_ms >= kSuiteWallLimitMs) {
                ok = false;
                detail += std::string("\n    ") + suite.name + " n=" + std::to_string(n) +
                          " took " + std::to_string(rep.wall_time_ms) + " ms (limit " +
                          std::to_string(kSuiteWallLimitMs) + ")";
            }
            if (rep.wall_time_ms > slowest_ms) {
                slowest_ms = rep.wall_time_ms;
                slowest = std::string(suite.name) + " n=" + std::to_string(n);
            }
        }
    }
    if (ok)
        detail = "20 suites x n in {3,4,5}, 500/500 each, slowest " + slowest + " at " +
                 std::to_string(slowest_ms) + " ms";
    return ok;
}

// --- criterion 2: the three-way orthogonality equivalence ---

bool crit_orthogonality(std::string& detail) {
    Rng rng(20250716);
    long equiv_checked = 0, overlap_checked = 0;
    for (int n : {3, 4, 5}) {
        for (int t = 0; t < 500; ++t) {
            Matrix p, q;
            if (t % 2 == 0) {
                // complementary blocks under one conjugation: orthogonal
                int r = 1 + (int)rng.pick(n - 1);
                int s = 1 + (int)rng.pick(n - r);
                Matrix c = random_invertible(n, rng), ci = inverse(c);
                Matrix dp = Matrix::zero(n), dq = Matrix::zero(n);
                for (int i = 0; i < r; ++i) dp.at(i, i) = Scalar(1);
                for (int i = 0; i < s; ++i) dq.at(r + i, r + i) = Scalar(1);
                p = c * dp * ci;
                q = c * dq * ci;
            } else {
                p = random_idempotent(n, 1 + (int)rng.pick(n - 1), rng);
                q = random_idempotent(n, 1 + (int)rng.pick(n - 1), rng);
            }
            Matrix j = jordan(p, q);
            bool s1 = is_orthogonal(p, q);
            bool s2 = j.is_zero();
            bool s3 = is_idempotent(-j);
            if (s3 && !s1) {
                detail = "negated-product idempotent without orthogonality at n=" +
                         std::to_string(n) + " trial " + std::to_string(t);
                return false;
            }
            if (s1 != s2 || s2 != s3) {
                detail = "statements diverged at n=" + std::to_string(n) + " trial " +
                         std::to_string(t);
                return false;
            }
            if (t % 2 == 0 && !s3) {
                detail = "orthogonal construction failed (iii) at n=" + std::to_string(n);
                return false;
            }
            ++equiv_checked;
        }
        for (int t = 0; t < 100; ++t) {
            // p's range inside q's: idempotent overlap, never orthogonal
            int r = 1 + (int)rng.pick(n - 1);
            Matrix c = random_invertible(n, rng), ci = inverse(c);
            Matrix dp = Matrix::zero(n), dq = Matrix::zero(n);
            for (int i = 0; i < r; ++i) dp.at(i, i) = Scalar(1);
            dq.set_block(0, 0, Matrix::identity(r));
            Matrix b(r, n - r);
            do {
                for (int i = 0; i < r; ++i)
                    for (int jj = 0; jj < n - r; ++jj) b.at(i, jj) = random_scalar(rng);
            } while (b.is_zero());
            dq.set_block(0, r, b);
            Matrix p = c * dp * ci, q = c * dq * ci;
            if (!is_idempotent(q)) {
                detail = "overlap construction lost idempotency";
                return false;
            }
            Matrix j = jordan(p, q);
            if (is_idempotent(-j) || is_orthogonal(p, q)) {
                detail = "overlap pair unexpectedly satisfied (iii) at n=" + std::to_string(n);
                return false;
            }
            ++overlap_checked;
        }
    }
    detail = std::to_string(equiv_checked) + " equivalence instances and " +
             std::to_string(overlap_checked) + " non-orthogonal refuters";
    return true;
}

// --- criterion 3: separating witnesses stay inside / outside the cone ---

bool crit_witnesses(std::string& detail) {
    Rng rng(20250717);
    long built = 0;
    for (int n : {3, 4, 6}) {
        for (int t = 0; t < 200; ++t) {
            Matrix a = random_square_zero(n, rng);
            Witness w = witness_square_zero(a);
            if (!is_idempotent(jordan(a, w.matrix)) ||
                is_idempotent(jordan(w.matrix, w.matrix))) {
                detail = "square-zero witness broke its contract at n=" + std::to_string(n);
                return false;
            }
            ++built;
        }
        for (int t = 0; t < 200; ++t) {
            Matrix a = random_involution(n, rng);
            Witness w = witness_involution(a);
            if (!is_idempotent(jordan(a, w.matrix)) ||
                is_idempotent(jordan(w.matrix, w.matrix))) {
                detail = "involution witness broke its contract at n=" + std::to_string(n);
                return false;
            }
            ++built;
        }
    }
    detail = std::to_string(built) + " witnesses, every product classified exactly";
    return true;
}

// --- criterion 4: Jordan blocks from the doubled-identity equation ---

bool crit_sylvester(std::string& detail) {
    long cases = 0;
    for (int k : {1, 2, 3}) {
        for (const Scalar& lam : default_lambda_set()) {
            Matrix j = jordan_block(k, lam);
            Matrix ji = inverse(j);
            Matrix x = solve_sylvester(ji, ji, Matrix::identity(k) * Scalar(2));
            if (x != j) {
                detail = "k=" + std::to_string(k) + " lambda=" + lam.str() +
                         " returned a different solution";
                return false;
            }
            ++cases;
        }
    }
    detail = std::to_string(cases) + " (k, lambda) cases recovered the block exactly";
    return true;
}

// --- criterion 5: black-box equality decisions ---

bool crit_equality(std::string& detail) {
    Rng rng(20250718);
    std::string rates;
    for (int n : {3, 4, 5}) {
        long found = 0;
        for (int t = 0; t < 300; ++t) {
            Matrix a = random_matrix(n, rng);
            Matrix b = a;
            switch (t % 3) {
                case 0: {
                    int pi = (int)rng.pick(n), pj = (int)rng.pick(n);
                    b.at(pi, pj) += Scalar(1 + (long)rng.pick(9));
                    break;
                }
                case 1: {
                    Vec u = random_nonzero_vec(n, rng);
                    b = a + outer(u, random_nonzero_vec(n, rng));
                    break;
                }
                default:
                    do b = random_matrix(n, rng);
                    while (b == a);
            }
            if (b == a) b.at(0, 0) += Scalar(1);
            try {
                DistinguishResult r = distinguish(a, b, kProbeBudget, rng);
                if (r.equal || !r.witness) {
                    detail = "distinguish claimed equality on a perturbed pair";
                    return false;
                }
                if (is_idempotent(jordan(a, *r.witness)) ==
                    is_idempotent(jordan(b, *r.witness))) {
                    detail = "witness failed re-validation at n=" + std::to_string(n);
                    return false;
                }
                ++found;
            } catch (const BudgetExhausted&) {
                // counted as a miss against the 99% floor
            }
        }
        if ((double)found < kWitnessRateFloor * 300.0) {
            detail = "witness rate " + std::to_string(found) + "/300 below floor at n=" +
                     std::to_string(n);
            return false;
        }
        for (int t = 0; t < 300; ++t) {
            Matrix a = random_matrix(n, rng);
            if (!equal_via_probes(a, a, kProbeBudget, rng)) {
                detail = "equal pair misreported at n=" + std::to_string(n);
                return false;
            }
        }
        rates += (rates.empty() ? "" : ", ") + std::to_string(found) + "/300 at n=" +
                 std::to_string(n);
    }
    detail = "witnesses " + rates + "; all equal pairs confirmed";
    return true;
}

// --- criterion 6: full reconstruction round trip ---

bool crit_reconstruction(std::string& detail) {
    Rng rng(20250719);
    long start = now_ms();
    long runs = 0, max_queries = 0;
    for (int n : {3, 4}) {
        for (int t = 0; t < 100; ++t) {
            int combo = t % 8;
            CanonicalMap orig{(combo & 1) ? Scalar(-1) : Scalar(1), random_invertible(n, rng),
                              (combo & 2) ? Diamond::Transpose : Diamond::Identity,
                              (combo & 4) ? Sigma::Conj : Sigma::Id, std::nullopt};
            MapOracle oracle = make_canonical(orig);
            ReconstructionResult res = reconstruct(oracle, 50, rng);
            long q = oracle.query_count();
            if (!res.agreement || res.residual_samples != 50) {
                detail = "agreement failed at n=" + std::to_string(n) + " combo " +
                         std::to_string(combo);
                return false;
            }
            if (res.map.lambda != orig.lambda || res.map.diamond != orig.diamond ||
                res.map.sigma != orig.sigma || !same_up_to_scalar(res.map.t, orig.t)) {
                detail = "recovered parameters differ at n=" + std::to_string(n) + " combo " +
                         std::to_string(combo);
                return false;
            }
            if (q > 5L * n * n + 50) {
                detail = "query budget exceeded: " + std::to_string(q) + " at n=" +
                         std::to_string(n);
                return false;
            }
            if (q > max_queries) max_queries = q;
            ++runs;
        }
    }
    long wall = now_ms() - start;
    if (wall >= kReconstructionWallLimitMs) {
        detail = "suite took " + std::to_string(wall) + " ms (limit " +
                 std::to_string(kReconstructionWallLimitMs) + ")";
        return false;
    }
    detail = std::to_string(runs) + " round trips, worst query count " +
             std::to_string(max_queries) + ", " + std::to_string(wall) + " ms";
    return true;
}

// --- criterion 7: every corruption mode is caught ---

bool crit_corruption(std::string& detail) {
    Rng rng(20250720);
    const CorruptionMode modes[] = {CorruptionMode::SwapTwoIdempotents,
                                    CorruptionMode::ScaleOneOutput,
                                    CorruptionMode::TransposeOneCell};
    const char* names[] = {"swap-two-idempotents", "scale-one-output", "transpose-one-cell"};
    for (int m = 0; m < 3; ++m) {
        long detected = 0;
        for (int inst = 0; inst < 50; ++inst) {
            MapOracle bad;
            for (;;) {
                int n = 3 + inst % 2;
                CanonicalMap base{rng.coin() ? Scalar(1) : Scalar(-1),
                                  random_invertible(n, rng),
                                  rng.coin() ? Diamond::Transpose : Diamond::Identity,
                                  rng.coin() ? Sigma::Conj : Sigma::Id, std::nullopt};
                try {
                    bad = make_corrupted(base, modes[m], rng);
                    break;
                } catch (const PreconditionError&) {
                    // base had no effective target for this mode; redraw the base
                }
            }
            auto pair = verify_preserving(bad, kCorruptionBudget, rng);
            if (pair) {
                const auto& [x, y] = *pair;
                if (is_idempotent(jordan(x, y)) ==
                    is_idempotent(jordan(bad(x), bad(y)))) {
                    detail = std::string(names[m]) + ": reported pair does not straddle";
                    return false;
                }
                ++detected;
                continue;
            }
            try {
                (void)reconstruct(bad, 50, rng);
            } catch (const StepViolation&) {
                ++detected;
                continue;
            }
            detail = std::string(names[m]) + ": instance " + std::to_string(inst) +
                     " went undetected";
            return false;
        }
        if (detected != 50) {
            detail = std::string(names[m]) + ": " + std::to_string(detected) + "/50";
            return false;
        }
    }
    detail = "3 modes x 50 instances, 150/150 detected within the probe budget";
    return true;
}

// --- criterion 8: scaled preservers reduce to proper ones ---

bool crit_alpha(std::string& detail) {
    Rng rng(20250721);
    const std::vector<Scalar> alphas = {Scalar(1, 2), Scalar(2), Scalar(-1, 2),
                                        Scalar(2) * Scalar::i()};
    long cases = 0;
    for (const Scalar& alpha : alphas) {
        for (Sigma sig : {Sigma::Id, Sigma::Conj}) {
            for (Diamond dia : {Diamond::Identity, Diamond::Transpose}) {
                std::string tag = "alpha=" + alpha.str() + " sigma=" + sigma_name(sig) +
                                  " diamond=" + diamond_name(dia);
                try {
                    Matrix t = random_invertible(3, rng);
                    CanonicalMap scaled = make_canonical_scaled(alpha, t, dia, sig);
                    MapOracle phi = make_canonical(scaled);
                    MapOracle psi = alpha_reduce(phi, alpha);
                    ReconstructionResult res = reconstruct(psi, 20, rng);
                    if (!res.agreement || res.map.lambda != Scalar(1) ||
                        res.map.sigma != sig || res.map.diamond != dia ||
                        !same_up_to_scalar(res.map.t, t)) {
                        detail = tag + ": reduced map did not reconstruct as proper";
                        return false;
                    }
                    // c_alpha read back from data: the ratio between the
                    // scaled box and the reconstructed proper map
                    Matrix probe = Matrix::unit(3, 0, 0);
                    Matrix lhs = phi(probe), rhs = res.map.apply(probe);
                    Scalar c;
                    bool set = false;
                    for (int i = 0; i < 3 && !set; ++i)
                        for (int j = 0; j < 3 && !set; ++j)
                            if (!rhs.at(i, j).is_zero()) {
                                c = lhs.at(i, j) / rhs.at(i, j);
                                set = true;
                            }
                    Scalar target = (sig == Sigma::Conj ? alpha.conj() : alpha) / alpha;
                    if (!set || c != scaled.lambda || c * c != target ||
                        scaled.lambda * scaled.lambda != target) {
                        detail = tag + ": recovered constant " + c.str() +
                                 " fails c^2 == sigma(alpha)/alpha";
                        return false;
                    }
                    ++cases;
                } catch (const Error& e) {
                    detail = tag + ": " + e.what();
                    return false;
                }
            }
        }
    }
    detail = std::to_string(cases) + " (alpha, sigma, diamond) cases, constants exact";
    return true;
}

struct Criterion {
    int id;
    const char* label;
    bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "lemma suites 500/500 at n in {3,4,5}", crit_suites},
    {2, "orthogonality equivalence and refuters", crit_orthogonality},
    {3, "square-zero and involution witnesses", crit_witnesses},
    {4, "Jordan-block Sylvester rigidity", crit_sylvester},
    {5, "equality oracle soundness and coverage", crit_equality},
    {6, "reconstruction round trip", crit_reconstruction},
    {7, "corruption detection", crit_corruption},
    {8, "alpha reduction to a proper preserver", crit_alpha},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        int id = std::atoi(argv[i]);
        if (id < 1 || id > 8) {
            std::fprintf(stderr, "usage: %s [criterion 1..8]...\n", argv[0]);
            return 2;
        }
        selected.push_back(id);
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        std::string detail;
        long start = now_ms();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("unhandled: ") + e.what();
        }
        long wall = now_ms() - start;
        std::printf("[%s] criterion %d: %s (%s; %ld ms)\n", ok ? "PASS" : "FAIL", c.id,
                    c.label, detail.c_str(), wall);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures ? 1 : 0;
}
