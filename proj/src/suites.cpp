#include "plab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "plab/generators.hpp"
#include "plab/json_io.hpp"
#include "plab/witnesses.hpp"

namespace plab {

SuiteFailure::SuiteFailure(const std::string& what, nlohmann::json instance_)
    : Error(what), instance(std::move(instance_)) {}

namespace {

using nlohmann::json;

// Collects the objects a trial draws; a failed check throws with the whole
// dump attached so the report alone suffices to replay the instance.
class Trial {
public:
    Trial(const char* suite, int n) { inst_["suite"] = suite; inst_["n"] = n; }

    void note(const char* key, const Matrix& m) { inst_[key] = matrix_to_json(m); }
    void note(const char* key, const Vec& v) { inst_[key] = vec_to_json(v); }
    void note(const char* key, const Scalar& s) { inst_[key] = scalar_to_json(s); }
    void note(const char* key, const char* s) { inst_[key] = s; }
    void note(const char* key, long v) { inst_[key] = v; }

    void require(bool ok, const std::string& what) const {
        if (!ok) throw SuiteFailure(what, inst_);
    }

private:
    json inst_;
};

Scalar nonzero_scalar(Rng& rng) {
    for (;;) {
        Scalar s = random_scalar(rng);
        if (!s.is_zero()) return s;
    }
}

// Nonzero scalar, biased towards the configured eigenvalue pool.
Scalar pool_lambda(const SuiteParams& params, Rng& rng) {
    if (!params.lambda_set.empty() && rng.coin()) {
        Scalar s = params.lambda_set[(size_t)rng.pick((long)params.lambda_set.size())];
        if (!s.is_zero()) return s;
    }
    return nonzero_scalar(rng);
}

Matrix random_rect(int r, int c, Rng& rng) {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = random_scalar(rng);
    return m;
}

Matrix random_rect_nonzero(int r, int c, Rng& rng) {
    for (;;) {
        Matrix m = random_rect(r, c, rng);
        if (!m.is_zero()) return m;
    }
}

// The linear map sending pre[j] to img[j]; the prescribed vectors must be
// independent and get completed to a basis with standard vectors, which are
// sent to fresh random images.
Matrix map_on_basis(int n, std::vector<Vec> pre, std::vector<Vec> img, Rng& rng) {
    for (int i = 0; i < n && (int)pre.size() < n; ++i) {
        std::vector<Vec> probe = pre;
        probe.push_back(basis_vec(n, i));
        if (rank(Matrix::from_rows(probe)) == (int)probe.size()) {
            pre.push_back(basis_vec(n, i));
            img.push_back(random_vec(n, rng));
        }
    }
    Matrix v(n, n), w(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            v.at(i, j) = pre[(size_t)j][(size_t)i];
            w.at(i, j) = img[(size_t)j][(size_t)i];
        }
    return w * inverse(v);
}

// Column-major unvec, matching the kron convention of the Sylvester solver.
Matrix unvec(const Vec& v, int nr, int nc) {
    Matrix m(nr, nc);
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nr; ++i) m.at(i, j) = v[(size_t)j * nr + i];
    return m;
}

// ---------------------------------------------------------------- suites --

void s_observation(int n, Rng& rng, const SuiteParams&) {
    Trial t("observation", n);
    auto check = [&](const Matrix& a, const Matrix& x, long flavor) {
        t.note("flavor", flavor);
        t.note("a", a);
        t.note("x", x);
        Matrix j = jordan(a, x);
        bool two_sided = is_idempotent(j) && is_idempotent(-j);
        t.require(two_sided == j.is_zero(),
                  "idempotency of both signs must pin the product to zero");
        ObservationTag tag = observation_split(a, x);
        t.require((tag == ObservationTag::ZeroProduct) == j.is_zero(),
                  "zero branch of the split disagrees with the product");
        t.require((tag == ObservationTag::NonzeroIdem) == is_nonzero_idempotent(j),
                  "idempotent branch of the split disagrees with the product");
        t.require((tag == ObservationTag::NotIdem) == !is_idempotent(j),
                  "complement branch of the split disagrees with the product");
        if (flavor == 1)
            t.require(tag == ObservationTag::ZeroProduct,
                      "orthogonal idempotents must have vanishing product");
        if (flavor == 2)
            t.require(tag == ObservationTag::NonzeroIdem,
                      "an idempotent against itself stays idempotent");
    };
    Matrix first = random_nonzero_matrix(n, rng);
    Matrix second = random_nonzero_matrix(n, rng);
    check(first, second, 0);
    {
        Matrix c = random_invertible(n, rng), ci = inverse(c);
        check(c * Matrix::unit(n, 0, 0) * ci, c * Matrix::unit(n, 1, 1) * ci, 1);
    }
    {
        Matrix p = random_idempotent(n, 1 + (int)rng.pick(n), rng);
        check(p, p, 2);
    }
}

void s_f_nonzero(int n, Rng& rng, const SuiteParams&) {
    Trial t("f-nonzero", n);
    Vec x = random_nonzero_vec(n, rng);
    Scalar fx = nonzero_scalar(rng);
    Vec f = random_functional_at(x, fx, rng);
    t.note("x", x);
    t.note("f", f);
    auto check = [&](const Matrix& a, long flavor, bool engineered) {
        t.note("flavor", flavor);
        t.note("a", a);
        RankOneOp op{x, f};
        t.require(lemma_f_nonzero(a, op),
                  "product idempotency must match the row/column condition");
        if (engineered)
            t.require(is_nonzero_idempotent(jordan(a, op.to_matrix())),
                      "engineered instance lost its idempotent product");
    };
    {
        // force a x = x / f(x)
        Matrix r = random_matrix(n, rng);
        Vec g = random_functional_at(x, Scalar(1), rng);
        Matrix a = r + outer(vec_sub(vec_scale(fx.inv(), x), r * x), g);
        check(a, 0, true);
    }
    {
        // force f a = f / f(x)
        Matrix r = random_matrix(n, rng);
        Vec y = random_functional_at(f, Scalar(1), rng); // f(y) = 1
        Matrix a = r + outer(y, vec_sub(vec_scale(fx.inv(), f), f * r));
        check(a, 1, true);
    }
    check(random_nonzero_matrix(n, rng), 2, false);
}

void s_f_zero(int n, Rng& rng, const SuiteParams&) {
    Trial t("f-zero", n);
    Vec x = random_nonzero_vec(n, rng);
    Vec f = random_annihilating_functional(x, rng);
    t.note("x", x);
    t.note("f", f);
    auto check = [&](const Matrix& a, long flavor, bool engineered) {
        t.note("flavor", flavor);
        t.note("a", a);
        RankOneOp op{x, f};
        t.require(lemma_f_zero(a, op),
                  "product idempotency must match the two-step functional condition");
        if (engineered)
            t.require(is_nonzero_idempotent(jordan(a, op.to_matrix())),
                      "engineered instance lost its idempotent product");
    };
    {
        // f(ax) = 2 and f(a^2 x) = 0 by basis prescription; f(x) = 0 makes
        // x and u automatically independent
        Vec u = random_functional_at(f, Scalar(2), rng);
        Vec w = random_annihilating_functional(f, rng);
        check(map_on_basis(n, {x, u}, {u, w}, rng), 0, true);
    }
    {
        // first step right, second step left to chance
        Vec u = random_functional_at(f, Scalar(2), rng);
        check(map_on_basis(n, {x, u}, {u, random_vec(n, rng)}, rng), 1, false);
    }
    check(random_nonzero_matrix(n, rng), 2, false);
}

void s_zero_jordan(int n, Rng& rng, const SuiteParams&) {
    Trial t("zero-jordan", n);
    Vec x = random_nonzero_vec(n, rng);
    Scalar fx = nonzero_scalar(rng);
    Vec f = random_functional_at(x, fx, rng);
    Vec g = random_functional_at(x, Scalar(1), rng);
    t.note("x", x);
    t.note("f", f);
    auto check = [&](const Matrix& a, long flavor) {
        t.note("flavor", flavor);
        t.note("a", a);
        t.require(lemma_zero_jordan(a, {x, f}),
                  "vanishing product must match the two-sided kernel condition");
        bool j0 = jordan(a, outer(x, f)).is_zero();
        t.require(j0 == (vec_is_zero(a * x) && vec_is_zero(f * a)),
                  "direct recomputation of the equivalence disagrees");
    };
    {
        // kill both sides: range misses f, kernel contains x
        Vec y = random_functional_at(f, Scalar(1), rng);
        Matrix left = Matrix::identity(n) - outer(y, f);
        Matrix right = Matrix::identity(n) - outer(x, g);
        for (;;) {
            Matrix a = left * random_matrix(n, rng) * right;
            if (a.is_zero()) continue;
            t.note("a", a);
            t.require(vec_is_zero(a * x) && vec_is_zero(f * a), "kernel construction broke");
            check(a, 0);
            break;
        }
    }
    {
        // one-sided: a x = 0 but f a unconstrained
        for (;;) {
            Matrix a = random_matrix(n, rng) * (Matrix::identity(n) - outer(x, g));
            if (a.is_zero()) continue;
            check(a, 1);
            break;
        }
    }
    check(random_nonzero_matrix(n, rng), 2);
}

void s_lambda_x(int n, Rng& rng, const SuiteParams& params) {
    Trial t("lambda-x", n);
    Vec x = random_nonzero_vec(n, rng);
    Scalar lam = pool_lambda(params, rng);
    Vec g = random_functional_at(x, Scalar(1), rng);
    t.note("x", x);
    t.note("lambda", lam);
    Matrix r = random_matrix(n, rng);
    Matrix a = r + outer(vec_sub(vec_scale(lam, x), r * x), g);
    t.note("a", a);
    t.require(a * x == vec_scale(lam, x), "eigenpair construction broke");
    t.require(eigen_probe(a, x, lam), "probe family must accept a genuine eigenpair");

    Scalar gamma = nonzero_scalar(rng);
    Vec y = random_nonzero_vec(n, rng);
    Matrix a2 = a + outer(vec_scale(gamma, y), g);
    t.note("a2", a2);
    bool direct2 = (a2 * x == vec_scale(lam, x));
    t.require(!direct2, "perturbation failed to move the image of x");
    t.require(eigen_probe(a2, x, lam) == direct2,
              "probe verdict must match the direct check on the perturbed operator");

    Matrix b = random_nonzero_matrix(n, rng);
    t.note("b", b);
    t.require(eigen_probe(b, x, lam) == (b * x == vec_scale(lam, x)),
              "probe verdict must match the direct check on a generic operator");
}

void s_a_zero(int n, Rng& rng, const SuiteParams&) {
    Trial t("a-zero", n);
    t.require(is_zero_via_probes(Matrix::zero(n)), "zero operator must pass the zero probes");
    Matrix a = random_nonzero_matrix(n, rng);
    t.note("a", a);
    t.require(!is_zero_via_probes(a), "nonzero operator slipped past the zero probes");
    int ci = (int)rng.pick(n), cj = (int)rng.pick(n);
    Matrix cell = Matrix::unit(n, ci, cj) * nonzero_scalar(rng);
    t.note("cell", cell);
    t.require(!is_zero_via_probes(cell), "single nonzero cell slipped past the zero probes");
}

void s_a_identity(int n, Rng& rng, const SuiteParams&) {
    Trial t("a-identity", n);
    Matrix id = Matrix::identity(n);
    t.require(is_identity_via_probes(id), "identity must pass the identity probes");
    Matrix a = random_nonzero_matrix(n, rng);
    t.note("a", a);
    t.require(is_identity_via_probes(a) == (a == id),
              "probe verdict must match direct comparison with the identity");
    Scalar lam = nonzero_scalar(rng);
    while (lam.is_one()) lam = nonzero_scalar(rng);
    t.note("lambda", lam);
    t.require(!is_identity_via_probes(id * lam), "scaled identity slipped past the probes");
    int ni = (int)rng.pick(n), nj = (int)rng.pick(n);
    Matrix near = id + Matrix::unit(n, ni, nj) * nonzero_scalar(rng);
    t.note("near", near);
    t.require(is_identity_via_probes(near) == (near == id),
              "single-cell change from the identity must flip the verdict");
}

void s_lemma_id(int n, Rng& rng, const SuiteParams&) {
    Trial t("lemma-id", n);
    if (rng.coin()) {
        Matrix a = random_square_zero(n, rng);
        t.note("branch", "square-zero");
        t.note("a", a);
        Witness w = witness_square_zero(a);
        t.note("b", w.matrix);
        t.require(rank(w.matrix) <= 2, "witness rank exceeds two");
        t.require(is_nonzero_idempotent(jordan(a, w.matrix)),
                  "product with the witness must be a nonzero idempotent");
        t.require(!is_idempotent(jordan(w.matrix, w.matrix)),
                  "witness against itself must not be idempotent");
    } else {
        Matrix a = random_involution(n, rng);
        t.note("branch", "involution");
        t.note("a", a);
        Witness w = witness_involution(a);
        t.note("b", w.matrix);
        t.require(rank(w.matrix) <= 2, "witness rank exceeds two");
        t.require(jordan(a, w.matrix).is_zero(),
                  "product with the witness must vanish for an involution");
        t.require(!is_idempotent(jordan(w.matrix, w.matrix)),
                  "witness against itself must not be idempotent");
    }
}

void s_pq_zero(int n, Rng& rng, const SuiteParams&) {
    Trial t("pq-zero", n);
    int r = 1 + (int)rng.pick(n - 1); // complement stays nonzero
    Matrix p = random_idempotent(n, r, rng);
    Matrix ip = Matrix::identity(n) - p;
    t.note("p", p);
    t.note("rank_p", (long)r);

    // every solution of a o (I-p) = 0, obtained as a kernel rather than
    // from the compressed form the lemma concludes
    Matrix id = Matrix::identity(n);
    Matrix sys = kron(id, ip) + kron(ip.transpose(), id);
    std::vector<Vec> ker = kernel_basis(sys);
    t.require((int)ker.size() == r * r, "solution space dimension is off");

    Matrix a = Matrix::zero(n);
    for (;;) {
        a = Matrix::zero(n);
        for (const Vec& kv : ker) a = a + unvec(kv, n, n) * random_scalar(rng);
        if (!a.is_zero()) break;
    }
    t.note("a", a);
    t.require(jordan(a, ip).is_zero(), "kernel combination must satisfy the hypothesis");
    t.require((a * ip).is_zero(), "a must kill the complement of the range");
    t.require(p * a == a, "a must map into the range of p");
    t.require(p * a * p == a, "a must equal its corner compression");
    if (r == 1) {
        Scalar lam = a.trace();
        t.note("lambda", lam);
        t.require(!lam.is_zero(), "nonzero a must sit on p with nonzero scale");
        t.require(a == p * lam, "rank-one case must be a scalar multiple of p");
        t.require(a * lam.inv() == p, "normalized a must be p itself");
    }
    // tightness: any bleed from the range into the complement breaks the
    // hypothesis (the product picks up exactly half the bleed)
    for (;;) {
        Matrix d = p * random_matrix(n, rng) * ip;
        if (d.is_zero()) continue;
        t.note("bleed", d);
        t.require(!jordan(a + d, ip).is_zero(), "off-corner bleed must break the hypothesis");
        break;
    }
}

void s_minus_p(int n, Rng& rng, const SuiteParams&) {
    Trial t("minus-p", n);
    long flavor = rng.pick(3);
    t.note("flavor", flavor);
    if (flavor < 2) {
        Vec x1 = random_nonzero_vec(n, rng);
        Vec f1 = random_functional_at(x1, Scalar(1), rng);
        Vec x2, f2;
        if (flavor == 0) {
            // f1(x2) = 0 branch
            x2 = random_annihilating_functional(f1, rng);
            f2 = random_functional_at(x2, Scalar(1), rng);
        } else {
            // f2(x1) = 0 branch; needs x2 independent of x1
            for (;;) {
                x2 = random_nonzero_vec(n, rng);
                if (rank(Matrix::from_rows({x1, x2})) == 2) break;
            }
            auto f0 = solve_functional({{x2, Scalar(1)}, {x1, Scalar(0)}}, n);
            f2 = *f0;
            for (const Vec& k : kernel_basis(Matrix::from_rows({x2, x1})))
                f2 = vec_add(f2, vec_scale(random_scalar(rng), k));
        }
        Matrix p = outer(x1, f1), q = outer(x2, f2);
        t.note("p", p);
        t.note("q", q);
        t.require(is_idempotent(p) && is_idempotent(q) && p != q,
                  "rank-one idempotent construction broke");
        t.require(is_idempotent(jordan(q, Matrix::identity(n) - p)),
                  "hypothesis must hold for a vanishing cross value");
        Witness w = witness_distinguish_idem(p, q);
        t.note("r", w.matrix);
        t.require(is_nonzero_idempotent(w.matrix) && rank(w.matrix) == 1,
                  "separator must be a rank-one idempotent");
        t.require(jordan(q, w.matrix).is_zero(), "separator must kill q");
        Matrix pj = jordan(p, w.matrix);
        t.require(!is_idempotent(pj), "separator must not commute into an idempotent with p");
        t.require(pj.trace() == Scalar(1, 2), "trace of p against the separator must be one half");
    } else {
        // random pair: whenever the hypothesis happens to hold, the cross
        // values must obey the dichotomy and the separator must exist
        Matrix p = random_idempotent(n, 1, rng);
        Matrix q = random_idempotent(n, 1, rng);
        t.note("p", p);
        t.note("q", q);
        if (p == q) return;
        if (!is_idempotent(jordan(q, Matrix::identity(n) - p))) return;
        RankOneOp fp = factor_rank_one(p), fq = factor_rank_one(q);
        t.require(dot(fp.f, fq.x).is_zero() || dot(fq.f, fp.x).is_zero(),
                  "hypothesis must force one vanishing cross value");
        Witness w = witness_distinguish_idem(p, q);
        t.require(jordan(q, w.matrix).is_zero() && !is_idempotent(jordan(p, w.matrix)),
                  "separator checks must hold on the random pair");
    }
}

void s_pq(int n, Rng& rng, const SuiteParams&) {
    Trial t("pq", n);
    int r = 1 + (int)rng.pick(n - 1);
    int s = 1 + (int)rng.pick(n - r);
    Matrix c = random_invertible(n, rng), ci = inverse(c);
    Matrix dp = Matrix::zero(n), dq = Matrix::zero(n);
    for (int i = 0; i < r; ++i) dp.at(i, i) = Scalar(1);
    for (int i = 0; i < s; ++i) dq.at(r + i, r + i) = Scalar(1);
    Matrix p = c * dp * ci, q = c * dq * ci;
    t.note("p", p);
    t.note("q", q);
    t.require(is_orthogonal(p, q), "complementary ranges must give an orthogonal pair");
    Matrix j = jordan(p, q);
    t.require(j.is_zero(), "orthogonal pair must have vanishing product");
    t.require(is_idempotent(-j), "negated product must be idempotent for an orthogonal pair");

    {
        // independent draws: the three statements must agree either way
        Matrix p2 = random_idempotent(n, 1 + (int)rng.pick(n - 1), rng);
        Matrix q2 = random_idempotent(n, 1 + (int)rng.pick(n - 1), rng);
        t.note("p2", p2);
        t.note("q2", q2);
        Matrix j2 = jordan(p2, q2);
        bool s1 = is_orthogonal(p2, q2);
        bool s2 = j2.is_zero();
        bool s3 = is_idempotent(-j2);
        t.require(s1 == s2 && s2 == s3, "the three orthogonality statements must agree");
    }
    {
        // deliberate overlap: q3 contains the range of p, so (iii) fails
        Matrix dq3 = Matrix::zero(n);
        dq3.set_block(0, 0, Matrix::identity(r));
        dq3.set_block(0, r, random_rect_nonzero(r, n - r, rng));
        Matrix q3 = c * dq3 * ci;
        t.note("q3", q3);
        t.require(is_idempotent(q3), "overlap construction must stay idempotent");
        Matrix j3 = jordan(p, q3);
        t.require(!is_orthogonal(p, q3), "overlap pair must not be orthogonal");
        t.require(!j3.is_zero(), "overlap product must not vanish");
        t.require(!is_idempotent(-j3), "negated product must fail for the overlap pair");
    }
}

void s_lem_x(int n, Rng& rng, const SuiteParams&) {
    Trial t("lem-x", n);
    int k = 1 + (int)rng.pick(std::min(3, n - 1));
    t.note("k", (long)k);
    Matrix a11 = Matrix::zero(k), x = Matrix::zero(k);
    for (;;) {
        a11 = random_rect(k, k, rng);
        try {
            x = solve_sylvester(a11, a11, Matrix::identity(k) * Scalar(2));
            break;
        } catch (const SpectraError&) {
            // corner spectrum met its own negative; redraw
        }
    }
    Matrix a = Matrix::zero(n);
    a.set_block(0, 0, a11);
    a.set_block(0, k, random_rect(k, n - k, rng));
    a.set_block(k, k, random_rect(n - k, n - k, rng));
    t.note("a", a);
    t.note("x", x);

    std::vector<Matrix> samples = corner_probe_family(n, k);
    Vec su = random_vec(k, rng), sv = random_vec(n - k, rng);
    samples.push_back(outer(su, sv));
    Vec snu = random_nonzero_vec(k, rng), snv = random_nonzero_vec(n - k, rng);
    samples.push_back(outer(snu, snv));

    auto implication = [&](const CornerReport& rep) {
        t.require(!rep.probes_all_idempotent || (rep.a21_zero && rep.corner_idem),
                  "probe acceptance must force the block conclusions");
    };
    CornerReport rep = corner_trace_check(a, x, k, samples);
    implication(rep);
    t.require(rep.probes_all_idempotent && rep.a21_zero && rep.corner_idem,
              "clean corner must pass every probe");

    Matrix bad = a;
    int bi = k + (int)rng.pick(n - k), bj = (int)rng.pick(k);
    bad.at(bi, bj) = nonzero_scalar(rng);
    t.note("bad", bad);
    CornerReport rep2 = corner_trace_check(bad, x, k, samples);
    implication(rep2);
    t.require(!rep2.a21_zero, "perturbation must land below the corner");
    t.require(!rep2.probes_all_idempotent, "probe family must catch the lower-left bleed");

    CornerReport rep3 = corner_trace_check(a, x * Scalar(2), k, samples);
    implication(rep3);
    t.require(!rep3.corner_idem, "scaled corner witness must fail the corner product");
    t.require(!rep3.probes_all_idempotent, "probe family must catch the scaled witness");
}

void s_corr_j1(int n, Rng& rng, const SuiteParams& params) {
    Trial t("corr-j1", n);
    Vec x = random_nonzero_vec(n, rng);
    Scalar lam = pool_lambda(params, rng);
    Vec g = random_functional_at(x, Scalar(1), rng);
    Matrix r = random_matrix(n, rng);
    Matrix a = r + outer(vec_sub(vec_scale(lam, x), r * x), g);
    t.note("x", x);
    t.note("lambda", lam);
    t.note("a", a);

    long flavor = rng.pick(3);
    t.note("flavor", flavor);
    Matrix b = Matrix::zero(n);
    if (flavor == 0) {
        // shift annihilating x: the eigenpair survives
        Vec h = random_annihilating_functional(x, rng);
        Scalar c = nonzero_scalar(rng);
        b = a + outer(vec_scale(c, random_nonzero_vec(n, rng)), h);
    } else if (flavor == 1) {
        // shift seen by x: the eigenpair breaks
        Scalar c = nonzero_scalar(rng);
        b = a + outer(vec_scale(c, random_nonzero_vec(n, rng)), g);
    } else {
        b = random_nonzero_matrix(n, rng);
    }
    t.note("b", b);

    bool da = (a * x == vec_scale(lam, x));
    bool db = (b * x == vec_scale(lam, x));
    t.require(da, "eigenpair construction broke");
    t.require(eigen_probe(a, x, lam) == da, "probe verdict must match the direct check on a");
    t.require(eigen_probe(b, x, lam) == db, "probe verdict must match the direct check on b");
    if (flavor == 0) t.require(db, "annihilating shift must preserve the eigenpair");
    if (flavor == 1) t.require(!db, "visible shift must break the eigenpair");
}

void s_corr_alg(int n, Rng& rng, const SuiteParams&) {
    Trial t("corr-alg", n);
    Vec x = random_nonzero_vec(n, rng);
    Vec g = random_functional_at(x, Scalar(1), rng);
    Matrix proj = Matrix::identity(n) - outer(x, g);
    Matrix a = Matrix::zero(n);
    for (;;) {
        a = random_matrix(n, rng) * proj;
        if (!a.is_zero()) break;
    }
    t.note("x", x);
    t.note("a", a);
    t.require(vec_is_zero(a * x), "kernel construction broke");

    std::vector<Vec> lk = kernel_basis(a.transpose());
    t.require(!lk.empty(), "rank-deficient operator must have a left kernel");
    Vec f = lk[(size_t)rng.pick((long)lk.size())];
    t.note("f", f);
    t.require(vec_is_zero(f * a), "left kernel functional broke");

    Matrix probe = outer(x, f);
    t.require(jordan(a, probe).is_zero(), "two-sided kernel pair must kill the product");
    t.require(observation_split(a, probe) == ObservationTag::ZeroProduct,
              "split must land on the zero branch");

    // the same probe separates any operator that moves x off the kernel
    for (;;) {
        Scalar c = nonzero_scalar(rng);
        Matrix b = a + outer(vec_scale(c, random_nonzero_vec(n, rng)), g);
        Matrix jb = jordan(b, probe);
        if (jb.is_zero()) continue; // doubly degenerate draw; take another
        t.note("b", b);
        t.require(!vec_is_zero(b * x), "perturbation must move x off the kernel");
        t.require(!(is_idempotent(jb) && is_idempotent(-jb)),
                  "probe must fail the two-sided test on the perturbed operator");
        break;
    }
}

void s_corr_d(int n, Rng& rng, const SuiteParams& params) {
    Trial t("corr-d", n);
    int p = 1 + (int)rng.pick(n);
    int q = (int)rng.pick(n - p + 1);
    Matrix a = random_tripotent(n, p, q, rng);
    t.note("a", a);
    TripotentParts parts = tripotent_decompose(a);
    t.require(parts.p - parts.q == a, "decomposition must recover the operator");
    t.require(parts.p + parts.q == a * a, "parts must sum to the square");
    t.require(is_idempotent(parts.p) && is_idempotent(parts.q), "parts must be idempotent");
    t.require((parts.p * parts.q).is_zero() && (parts.q * parts.p).is_zero(),
              "parts must be orthogonal");

    Scalar gamma = nonzero_scalar(rng);
    int di = (int)rng.pick(n), dj = (int)rng.pick(n);
    Matrix b = a + Matrix::unit(n, di, dj) * gamma;
    t.note("b", b);
    DistinguishResult res = distinguish(a, b, params.budget, rng, params.lambda_set);
    t.require(!res.equal && res.witness.has_value(), "changed tripotent must be separated");
    t.require(is_idempotent(jordan(a, *res.witness)) != is_idempotent(jordan(b, *res.witness)),
              "witness must separate in the idempotent test");
}

void s_lem_jk(int n, Rng& rng, const SuiteParams& params) {
    Trial t("lem-jk", n);
    int k = 1 + (int)rng.pick(std::min(3, n - 1));
    Scalar lam = pool_lambda(params, rng);
    t.note("k", (long)k);
    t.note("lambda", lam);
    Matrix jk = jordan_block(k, lam);
    Matrix jki = inverse(jk);
    Matrix x = solve_sylvester(jki, jki, Matrix::identity(k) * Scalar(2));
    t.require(x == jk, "half-trace equation at the inverse block must return the block");

    bool refused = false;
    try {
        solve_sylvester(jki, jki * Scalar(-1), random_rect(k, k, rng));
    } catch (const SpectraError&) {
        refused = true;
    }
    t.require(refused, "sign-flipped pair shares spectrum and must be refused");

    for (;;) {
        Matrix aa = random_rect(k, k, rng), bb = random_rect(k, k, rng);
        Matrix cc = random_rect(k, k, rng);
        try {
            Matrix xx = solve_sylvester(aa, bb, cc);
            t.require(aa * xx + xx * bb == cc, "returned solution must satisfy the equation");
            break;
        } catch (const SpectraError&) {
            // same-spectrum draw; take another
        }
    }

    // embedded corner probes built from the inverse block all land in the
    // nonzero idempotents, whatever sits to the right of the corner
    Matrix a = Matrix::zero(n);
    a.set_block(0, 0, jk);
    a.set_block(0, k, random_rect(k, n - k, rng));
    a.set_block(k, k, random_rect(n - k, n - k, rng));
    t.note("a", a);
    for (const Matrix& rs : corner_probe_family(n, k)) {
        Matrix probe = Matrix::zero(n);
        probe.set_block(0, 0, jki);
        probe.set_block(0, k, rs);
        t.require(is_nonzero_idempotent(jordan(a, probe)),
                  "corner probe must produce a nonzero idempotent");
    }
}

void s_jn_lambda(int n, Rng& rng, const SuiteParams& params) {
    Trial t("jn-lambda", n);
    int m = 2 + (int)rng.pick(std::min(n - 1, 4) - 1);
    Scalar lam = pool_lambda(params, rng);
    t.note("m", (long)m);
    t.note("lambda", lam);
    Matrix a = Matrix::zero(n);
    a.set_block(0, 0, jordan_block(m, lam));
    a.set_block(0, m, random_rect(m, n - m, rng));
    a.set_block(m, m, random_rect(n - m, n - m, rng));
    t.note("a", a);

    auto corner_probe = [&](int k, const Matrix& rs) {
        Matrix probe = Matrix::zero(n);
        probe.set_block(0, 0, inverse(jordan_block(k, lam)));
        probe.set_block(0, k, rs);
        return probe;
    };
    auto sweep_accepts = [&](const Matrix& op) {
        for (int k = 1; k <= m; ++k)
            for (const Matrix& rs : corner_probe_family(n, k))
                if (!is_nonzero_idempotent(jordan(op, corner_probe(k, rs)))) return false;
        return true;
    };
    t.require(sweep_accepts(a), "every nested corner probe must land in the nonzero idempotents");
    for (int extra = 0; extra < 2; ++extra) {
        Vec cu = random_vec(m, rng), cv = random_vec(n - m, rng);
        t.require(is_nonzero_idempotent(jordan(a, corner_probe(m, outer(cu, cv)))),
                  "random corner sample must land in the nonzero idempotents");
    }

    // a single-cell change inside the probed columns is always caught: by
    // the sweep itself, or by the separating engine on the rare residue
    int pi = (int)rng.pick(n), pj = (int)rng.pick(m);
    Matrix b = a + Matrix::unit(n, pi, pj) * nonzero_scalar(rng);
    t.note("b", b);
    if (sweep_accepts(b)) {
        DistinguishResult res = distinguish(a, b, params.budget, rng, params.lambda_set);
        t.require(!res.equal && res.witness.has_value(),
                  "changed operator must be separated when the corner sweep is blind");
    }
}

void s_jn_zero(int n, Rng& rng, const SuiteParams&) {
    Trial t("jn-zero", n);
    Scalar gamma = nonzero_scalar(rng);
    t.note("gamma", gamma);
    Matrix a = Matrix::zero(n);
    a.set_block(0, 0, jordan_block(3, Scalar(0)));
    Matrix kprobe = Matrix::diag([&] {
        Vec d((size_t)n, Scalar(0));
        d[0] = Scalar(1);
        d[1] = Scalar(-1);
        d[2] = Scalar(1);
        return d;
    }());
    if (n > 3) {
        int m = n - 3;
        Matrix a22 = (m >= 2 && rng.coin()) ? random_square_zero(m, rng) : Matrix(m, m);
        Vec f = random_vec(m, rng), g = random_vec(m, rng);
        Vec fa = f * a22;
        // third row forced so the probe's kill condition below has a solution
        Vec h = vec_scale(Scalar(-1), vec_add(g * a22, fa * a22));
        a.set_block(0, 3, Matrix::from_rows({f, g, h}));
        a.set_block(3, 3, a22);
        kprobe.set_block(0, 3, Matrix::from_rows({Vec((size_t)m, Scalar(0)),
                                                  vec_scale(Scalar(-1), f), vec_add(g, fa)}));
    }
    t.note("a", a);
    t.note("k", kprobe);
    t.require((a * a * a).is_zero(), "cube of the engineered operator must vanish");
    t.require(kprobe * kprobe * kprobe == kprobe, "probe must be tripotent");
    t.require(jordan(a, kprobe).is_zero(), "probe must kill the unperturbed operator");

    Matrix b = a + Matrix::unit(n, 0, 2) * gamma;
    t.note("b", b);
    Matrix jb = jordan(b, kprobe);
    t.require(!jb.is_zero(), "probe must see the corner change");
    t.require(!is_idempotent(jb) && !is_idempotent(-jb),
              "perturbed product must fall outside the idempotents both ways");

    if (rng.coin()) {
        // the whole configuration is similarity invariant
        Matrix s = random_invertible(n, rng), si = inverse(s);
        t.require(jordan(s * a * si, s * kprobe * si).is_zero(),
                  "conjugated probe must still kill the conjugated operator");
        t.require(!is_idempotent(jordan(s * b * si, s * kprobe * si)),
                  "conjugated probe must still see the change");
    }
}

void s_prop_1234(int n, Rng& rng, const SuiteParams&) {
    Trial t("prop-1234", n);
    long shape = rng.pick(3);
    Matrix a = random_nonzero_matrix(n, rng);
    if (shape == 1) {
        // nilpotent corner: exercises the short-frame and a^k x = 0 branches
        Matrix s = random_invertible(n, rng);
        Matrix core = Matrix::zero(n);
        core.set_block(0, 0, jordan_block(std::min(3, n), Scalar(0)));
        a = s * core * inverse(s);
    } else if (shape == 2) {
        Matrix s = random_invertible(n, rng);
        Matrix core = Matrix::zero(n);
        core.set_block(0, 0, jordan_block(std::min(4, n), rng.coin() ? Scalar(0) : nonzero_scalar(rng)));
        a = s * core * inverse(s);
    }
    Vec x = random_nonzero_vec(n, rng);
    t.note("a", a);
    t.note("x", x);

    long flavor = rng.pick(3);
    t.note("flavor", flavor);
    if (flavor == 0) {
        Prop1234Report rep = prop_1234_checks(a, a, x);
        t.require(!rep.disagreement_probe.has_value(), "an operator cannot disagree with itself");
        if (rep.case_tag >= 1) {
            t.require(rep.conclusion_holds, "self comparison must satisfy the expansion");
            if (rep.alpha) t.require(rep.alpha->is_zero(), "self expansion has no constant term");
            if (rep.gamma) t.require(rep.gamma->is_zero(), "self expansion has no quadratic term");
        }
        return;
    }
    Matrix b = Matrix::zero(n);
    if (flavor == 1) {
        // polynomial mimicry: either every probe agrees and the expansion is
        // pinned down, or some probe already separates the two
        b = a * a * random_scalar(rng) + a + Matrix::identity(n) * random_scalar(rng);
    } else {
        b = random_nonzero_matrix(n, rng);
    }
    t.note("b", b);
    Prop1234Report rep = prop_1234_checks(a, b, x);
    t.note("case", (long)rep.case_tag);
    if (rep.case_tag == 0) return; // frame too short to conclude anything
    if (rep.disagreement_probe) {
        Matrix w = *rep.disagreement_probe;
        t.note("probe", w);
        t.require(rank(w) == 1 && (w * w).is_zero(), "probe must be rank-one square-zero");
        t.require(is_nonzero_idempotent(jordan(a, w)) != is_nonzero_idempotent(jordan(b, w)),
                  "recorded probe must actually separate the sides");
    } else {
        t.require(rep.conclusion_holds, "agreement on the probes must pin down the expansion");
    }
}

void s_lem_operator(int n, Rng& rng, const SuiteParams& params) {
    Trial t("lem-operator", n);
    long flavor = rng.pick(3);
    t.note("flavor", flavor);
    if (flavor == 0) {
        Matrix a = random_nonzero_matrix(n, rng);
        t.note("a", a);
        t.require(equal_via_probes(a, a, params.budget, rng),
                  "identical operators must compare equal");
        return;
    }
    Matrix a = random_nonzero_matrix(n, rng);
    Matrix b = Matrix::zero(n);
    if (flavor == 1) {
        for (;;) {
            b = random_matrix(n, rng);
            if (b != a) break;
        }
    } else {
        int qi = (int)rng.pick(n), qj = (int)rng.pick(n);
        b = a + Matrix::unit(n, qi, qj) * nonzero_scalar(rng);
    }
    t.note("a", a);
    t.note("b", b);
    DistinguishResult res = distinguish(a, b, params.budget, rng, params.lambda_set);
    t.require(!res.equal && res.witness.has_value(), "distinct operators must be separated");
    t.require(res.probes <= params.budget, "probe count exceeded the budget");
    t.require(is_idempotent(jordan(a, *res.witness)) != is_idempotent(jordan(b, *res.witness)),
              "witness must separate in the idempotent test");
}

} // namespace

const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> reg{
        {"observation", 2, s_observation},
        {"f-nonzero", 2, s_f_nonzero},
        {"f-zero", 2, s_f_zero},
        {"zero-jordan", 2, s_zero_jordan},
        {"lambda-x", 2, s_lambda_x},
        {"a-zero", 2, s_a_zero},
        {"a-identity", 2, s_a_identity},
        {"lemma-id", 2, s_lemma_id},
        {"pq-zero", 2, s_pq_zero},
        {"minus-p", 3, s_minus_p},
        {"pq", 3, s_pq},
        {"lem-x", 3, s_lem_x},
        {"corr-j1", 3, s_corr_j1},
        {"corr-alg", 3, s_corr_alg},
        {"corr-d", 3, s_corr_d},
        {"lem-jk", 2, s_lem_jk},
        {"jn-lambda", 3, s_jn_lambda},
        {"jn-zero", 3, s_jn_zero},
        {"prop-1234", 3, s_prop_1234},
        {"lem-operator", 3, s_lem_operator},
    };
    return reg;
}

const SuiteInfo* find_suite(const std::string& name) {
    for (const SuiteInfo& s : suite_registry())
        if (name == s.name) return &s;
    return nullptr;
}

nlohmann::json run_report_to_json(const RunReport& r) {
    return nlohmann::json{{"command", r.command},   {"seed", r.seed},
                          {"n_values", r.n_values}, {"trials", r.trials},
                          {"passes", r.passes},     {"failures", r.failures},
                          {"wall_time_ms", r.wall_time_ms}};
}

RunReport run_suite(const SuiteInfo& suite, const SuiteParams& params) {
    auto start = std::chrono::steady_clock::now();
    RunReport rep;
    rep.command = std::string("verify-lemma ") + suite.name;
    rep.seed = params.seed;
    rep.n_values = params.n_values;
    const long per = params.trials;
    const long total = (long)params.n_values.size() * per;
    rep.trials = total;

    std::atomic<long> next{0};
    std::atomic<long> passes{0};
    std::mutex mu;
    std::vector<std::pair<long, nlohmann::json>> fails;

    auto worker = [&] {
        for (;;) {
            long idx = next.fetch_add(1);
            if (idx >= total) break;
            int n = params.n_values[(size_t)(idx / per)];
            std::uint64_t tseed = params.seed ^ (std::uint64_t)idx;
            Rng rng(tseed);
            try {
                suite.trial(n, rng, params);
                passes.fetch_add(1);
            } catch (const SuiteFailure& e) {
                nlohmann::json f{{"suite", suite.name}, {"n", n},
                                 {"trial", idx % per},  {"trial_seed", tseed},
                                 {"error", e.what()},   {"instance", e.instance}};
                std::lock_guard<std::mutex> lk(mu);
                fails.emplace_back(idx, std::move(f));
            } catch (const std::exception& e) {
                nlohmann::json f{{"suite", suite.name}, {"n", n},
                                 {"trial", idx % per},  {"trial_seed", tseed},
                                 {"error", e.what()}};
                std::lock_guard<std::mutex> lk(mu);
                fails.emplace_back(idx, std::move(f));
            }
        }
    };

    int nw = std::max(1, params.workers);
    if ((long)nw > total) nw = (int)total;
    std::vector<std::thread> pool;
    pool.reserve((size_t)nw - 1);
    for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    std::sort(fails.begin(), fails.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& f : fails) rep.failures.push_back(std::move(f.second));
    rep.passes = passes.load();
    rep.wall_time_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return rep;
}

} // namespace plab
