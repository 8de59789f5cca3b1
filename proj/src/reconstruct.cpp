#include "plab/reconstruct.hpp"

#include "plab/errors.hpp"
#include "plab/generators.hpp"
#include "plab/witnesses.hpp"

namespace plab {

Matrix CanonicalMap::apply(const Matrix& x) const {
    Matrix y = sigma == Sigma::Conj ? x.conj() : x;
    if (diamond == Diamond::Transpose) y = y.transpose();
    return t * y * inverse(t) * lambda;
}

Matrix MapOracle::operator()(const Matrix& x) const {
    if (x.dim() != n) throw DimensionError("oracle: input dimension mismatch");
    queries->fetch_add(1);
    Matrix out = eval(x);
    if (out.rows() != n || out.cols() != n) throw OracleError("oracle: output dimension mismatch");
    return out;
}

MapOracle make_canonical(const CanonicalMap& map) {
    int n = map.t.dim();
    if (rank(map.t) != n) throw PreconditionError("make_canonical: t singular");
    if (map.lambda.is_zero()) throw PreconditionError("make_canonical: lambda == 0");
    MapOracle o;
    o.n = n;
    o.eval = [map](const Matrix& x) { return map.apply(x); };
    return o;
}

CanonicalMap make_canonical_scaled(const Scalar& alpha, const Matrix& t, Diamond d, Sigma s) {
    if (alpha.is_zero()) throw PreconditionError("make_canonical_scaled: alpha == 0");
    Scalar c(1);
    if (s == Sigma::Conj) {
        // c = conj(r)/r for r = sqrt(2 alpha); equals conj(2 alpha)/|2 alpha|,
        // Gaussian rational exactly when |2 alpha| is rational
        Scalar two_alpha = alpha * Scalar(2);
        auto mod = rational_sqrt(two_alpha.norm());
        if (!mod)
            throw PreconditionError(
                "make_canonical_scaled: |2 alpha| irrational; scale constant leaves Q(i)");
        c = two_alpha.conj() / Scalar(*mod, mpq_class(0));
    }
    CanonicalMap m{c, t, d, s, alpha};
    // the defining constraint of the scale constant
    if (c * c != (s == Sigma::Conj ? alpha.conj() : alpha) / alpha)
        throw Error("make_canonical_scaled: c^2 != sigma(alpha)/alpha");
    return m;
}

MapOracle make_corrupted(const CanonicalMap& base, CorruptionMode mode, Rng& rng) {
    MapOracle clean = make_canonical(base);
    int n = clean.n;

    auto effective = [](const Matrix& was, const Matrix& now) {
        return now != was && now * now != now;
    };

    MapOracle o;
    o.n = n;
    switch (mode) {
        case CorruptionMode::SwapTwoIdempotents: {
            int i = (int)rng.pick(n), j = (int)rng.pick(n);
            while (j == i) j = (int)rng.pick(n);
            Matrix ei = Matrix::unit(n, i, i), ej = Matrix::unit(n, j, j);
            o.eval = [base, ei, ej](const Matrix& x) {
                if (x == ei) return base.apply(ej);
                if (x == ej) return base.apply(ei);
                return base.apply(x);
            };
            break;
        }
        case CorruptionMode::ScaleOneOutput: {
            int i = (int)rng.pick(n);
            Matrix ei = Matrix::unit(n, i, i);
            o.eval = [base, ei](const Matrix& x) {
                Matrix out = base.apply(x);
                if (x == ei) out = out * Scalar(2);
                return out;
            };
            break;
        }
        case CorruptionMode::TransposeOneCell: {
            // find a diagonal-unit image with an asymmetric off-diagonal pair
            // whose swap breaks idempotency
            for (int tries = 0; tries < 4 * n * n * n; ++tries) {
                int i = (int)rng.pick(n);
                Matrix ei = Matrix::unit(n, i, i);
                Matrix img = base.apply(ei);
                int r = (int)rng.pick(n), c = (int)rng.pick(n);
                if (r == c) continue;
                Matrix swapped = img;
                std::swap(swapped.at(r, c), swapped.at(c, r));
                if (!effective(img, swapped)) continue;
                o.eval = [base, ei, swapped](const Matrix& x) {
                    if (x == ei) return swapped;
                    return base.apply(x);
                };
                return o;
            }
            throw PreconditionError("make_corrupted: no effective cell swap for this base");
        }
    }
    return o;
}

namespace {

bool preserving_pair_ok(const MapOracle& oracle, const Matrix& a, const Matrix& b) {
    bool before = is_idempotent(jordan(a, b));
    bool after = is_idempotent(jordan(oracle(a), oracle(b)));
    return before == after;
}

} // namespace

std::optional<std::pair<Matrix, Matrix>> verify_preserving(const MapOracle& oracle,
                                                           long max_pairs, Rng& rng) {
    int n = oracle.n;
    long used = 0;
    auto check = [&](const Matrix& a, const Matrix& b) -> bool {
        if (used >= max_pairs) return false;
        ++used;
        return !preserving_pair_ok(oracle, a, b);
    };

    // structured sweep: exactly the pairs whose products straddle the
    // idempotent cone for canonical maps
    for (int i = 0; i < n; ++i) {
        Matrix ei = Matrix::unit(n, i, i);
        if (check(ei, ei)) return std::make_pair(ei, ei);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Matrix ej = Matrix::unit(n, j, j);
            Matrix eij = Matrix::unit(n, i, j);
            if (check(ei, ej)) return std::make_pair(ei, ej);
            if (check(ei, ei + eij)) return std::make_pair(ei, ei + eij);
            if (check(ei + eij, ej)) return std::make_pair(ei + eij, ej);
            if (check(eij, Matrix::unit(n, j, i)))
                return std::make_pair(eij, Matrix::unit(n, j, i));
        }
    }
    Matrix id = Matrix::identity(n);
    if (check(id, id)) return std::make_pair(id, id);

    while (used < max_pairs) {
        Matrix a, b;
        switch (rng.pick(4)) {
            case 0: {
                Matrix p = random_idempotent(n, (int)rng.int_in(1, n - 1), rng);
                a = p;
                b = id - p;
                break;
            }
            case 1: {
                a = random_tripotent(n, (int)rng.int_in(1, n - 1), 1, rng);
                b = random_matrix(n, rng);
                break;
            }
            case 2: {
                a = random_square_zero(n, rng);
                b = random_matrix(n, rng);
                break;
            }
            default:
                a = random_matrix(n, rng);
                b = random_matrix(n, rng);
        }
        if (check(a, b)) return std::make_pair(a, b);
    }
    return std::nullopt;
}

namespace {

// phi'(E11 + E1j) - phi'(E11) must be a scalar multiple of u1 (x) vj
// (diamond = identity) or uj (x) v1 (transpose). Returns that scalar.
std::optional<Scalar> match_cross(const Matrix& c, const Vec& u, const Vec& v) {
    Matrix pattern = outer(u, v);
    int n = c.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (pattern.at(i, j).is_zero()) {
                if (!c.at(i, j).is_zero()) return std::nullopt;
                continue;
            }
            Scalar rho = c.at(i, j) / pattern.at(i, j);
            if (pattern * rho == c) return rho;
            return std::nullopt;
        }
    return std::nullopt;
}

} // namespace

ReconstructionResult reconstruct(const MapOracle& oracle, long residual_samples, Rng& rng) {
    int n = oracle.n;
    if (n < 3) throw PreconditionError("reconstruct: n >= 3 required");
    Matrix id = Matrix::identity(n);

    // sign: oracle(I) = lambda I, oracle(-I) = -lambda I
    Matrix img_id = oracle(id);
    Scalar lambda;
    if (img_id == id)
        lambda = Scalar(1);
    else if (img_id == -id)
        lambda = Scalar(-1);
    else
        throw StepViolation("3", "oracle(I) is neither I nor -I");
    if (oracle(-id) != -img_id) throw StepViolation("3", "oracle(-I) inconsistent with oracle(I)");

    auto phi = [&](const Matrix& x) { return oracle(x) * lambda; };

    // diagonal unit images: rank-one idempotents, pairwise orthogonal
    std::vector<Matrix> p((size_t)n);
    std::vector<RankOneOp> factors((size_t)n);
    for (int i = 0; i < n; ++i) {
        p[i] = phi(Matrix::unit(n, i, i));
        if (!is_nonzero_idempotent(p[i]) || rank(p[i]) != 1)
            throw StepViolation("5", "diagonal unit image is not a rank-one idempotent");
        factors[i] = factor_rank_one(p[i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!is_orthogonal(p[i], p[j]))
                throw StepViolation("7", "diagonal unit images are not orthogonal");

    // cross probes pin the column scales and the diamond
    std::optional<Diamond> diamond;
    std::vector<Scalar> scale((size_t)n);
    scale[0] = Scalar(1);
    for (int j = 1; j < n; ++j) {
        Matrix c = phi(Matrix::unit(n, 0, 0) + Matrix::unit(n, 0, j)) - p[0];
        auto rho_id = match_cross(c, factors[0].x, factors[j].f);
        auto rho_tr = match_cross(c, factors[j].x, factors[0].f);
        if (rho_id && !rho_id->is_zero()) {
            if (diamond && *diamond != Diamond::Identity)
                throw StepViolation("9", "cross probes mix transpose and identity shapes");
            diamond = Diamond::Identity;
            scale[j] = rho_id->inv(); // c = (c1/cj) u1 (x) vj, column j gets uj / rho
        } else if (rho_tr && !rho_tr->is_zero()) {
            if (diamond && *diamond != Diamond::Transpose)
                throw StepViolation("9", "cross probes mix transpose and identity shapes");
            diamond = Diamond::Transpose;
            scale[j] = *rho_tr; // c = (cj/c1) uj (x) v1
        } else {
            throw StepViolation("9", "cross probe is not a scaled rank-one cross term");
        }
    }
    if (!diamond) throw StepViolation("9", "no cross probes"); // n >= 3 makes this unreachable

    Matrix t(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) t.at(i, j) = factors[j].x[i] * scale[j];
    // normalize: first nonzero entry in column-major order becomes 1
    [&] {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (!t.at(i, j).is_zero()) {
                    t = t * t.at(i, j).inv();
                    return;
                }
    }();
    if (rank(t) != n) throw StepViolation("7", "recovered frame is singular");

    // sigma: the image of i*E11 is sigma(i) * P1
    Matrix simg = phi(Matrix::unit(n, 0, 0) * Scalar::i());
    Sigma sigma;
    if (simg == p[0] * Scalar::i())
        sigma = Sigma::Id;
    else if (simg == p[0] * -Scalar::i())
        sigma = Sigma::Conj;
    else
        throw StepViolation("13", "image of i*E11 is not +-i times the base idempotent");

    ReconstructionResult res;
    res.map = CanonicalMap{lambda, t, *diamond, sigma, std::nullopt};
    res.residual_samples = residual_samples;
    res.agreement = true;

    // residual: structured probes from the tripotent/nilpotent walk, then
    // fresh random matrices
    std::vector<Matrix> residual_probes;
    for (int i = 0; i < n && (int)residual_probes.size() < 12; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            StepFamilies fam = step_families(n, i, j, Scalar(1), Scalar(2));
            residual_probes.push_back(fam.k_alpha);
            residual_probes.push_back(fam.n_lambda);
            residual_probes.push_back(fam.m_beta);
            break;
        }
    residual_probes.push_back(direct_sum(jordan_block(2, Scalar(1)), Matrix::zero(n - 2)));
    if (n > 3)
        residual_probes.push_back(direct_sum(jordan_block(3, Scalar(-1)), Matrix::zero(n - 3)));
    for (long k = 0; k < residual_samples; ++k) residual_probes.push_back(random_matrix(n, rng));

    for (const Matrix& x : residual_probes) {
        if (oracle(x) == res.map.apply(x)) continue;
        res.agreement = false;
        res.mismatch = x;
        Rng search(rng.next());
        res.counterexample = verify_preserving(oracle, 2000, search);
        break;
    }
    return res;
}

MapOracle alpha_reduce(const MapOracle& oracle, const Scalar& alpha) {
    if (alpha.is_zero()) throw PreconditionError("alpha_reduce: alpha == 0");

    // phi(i X) = sigma(i) phi(X), independent of lambda and T, so two probes
    // on any matrix with nonzero image decide the semilinearity. Diagonal
    // units never all vanish under an invertible conjugation.
    std::optional<Sigma> sig;
    for (int j = 0; j < oracle.n && !sig; ++j) {
        Matrix e = Matrix::unit(oracle.n, j, j);
        Matrix img = oracle(e);
        if (img.is_zero()) continue;
        Matrix img_i = oracle(e * Scalar::i());
        if (img_i == img * Scalar::i())
            sig = Sigma::Id;
        else if (img_i == img * -Scalar::i())
            sig = Sigma::Conj;
        else
            throw OracleError("alpha_reduce: box is not semilinear on a diagonal unit");
    }
    if (!sig) throw OracleError("alpha_reduce: box vanishes on every diagonal unit");

    // With s = sqrt(2 alpha), phi(X / s) = phi(X) / sigma(s), so the rescaled
    // map is (s / sigma(s)) phi. A linear box gives factor 1 for any s, square
    // root or not. A conjugating box gives s^2 / |s|^2 = 2 alpha / |2 alpha|,
    // a Gaussian rational exactly when norm(2 alpha) is a rational square.
    Scalar factor(1);
    if (*sig == Sigma::Conj) {
        Scalar two_alpha = alpha * Scalar(2);
        auto modulus = rational_sqrt(two_alpha.norm());
        if (!modulus)
            throw PreconditionError(
                "alpha_reduce: |2*alpha| with 2*alpha = " + two_alpha.str() +
                " is irrational, so the rescaled conjugating map has no exact "
                "Gaussian-rational coefficient; admissible alpha have rational-square "
                "norm(2*alpha) (e.g. 1/2, 2, -1/2, 9/2, 2i)");
        factor = two_alpha / Scalar(*modulus, mpq_class(0));
    }

    MapOracle out;
    out.n = oracle.n;
    out.queries = oracle.queries; // wrapper queries are oracle queries
    out.eval = [oracle, factor](const Matrix& x) {
        // bypass operator() so a wrapper call counts as one query, not two
        return oracle.eval(x) * factor;
    };
    return out;
}

const char* diamond_name(Diamond d) { return d == Diamond::Identity ? "id" : "transpose"; }
const char* sigma_name(Sigma s) { return s == Sigma::Id ? "id" : "conj"; }

} // namespace plab
