"""Dominant eigenpairs of the adjacency operator, three ways.

* power_dominant: deterministic baseline. Shifted power iteration with
  deflation; the positive spectral shift makes the iteration converge in
  algebraic order (the raw iteration stalls whenever the most negative
  eigenvalue matches the largest one in magnitude, which happens for any
  zero-diagonal two-node block).
* sketch_svd: sample l columns of A into C and read approximate
  eigenvectors off the left singular vectors of C; eigenvalue magnitudes
  come from rescaling the singular values by sqrt(n/l). An optional Gram
  route factors C^T C instead of C.
* nystrom: additionally restrict C to the sampled rows, eigendecompose
  that l x l block W, and lift back with C @ U_W @ pinv(D_W), rescaling
  eigenvalues by n/l and vectors by sqrt(l/n).

All methods return unit-norm columns, values sorted descending
algebraically (sketch_svd values are magnitudes; see its docstring), and
a deterministic sign convention: the entry of largest magnitude in each
vector is made positive, lowest index winning ties.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from numpy.typing import NDArray

from .errors import DegenerateSampleError, PowerIterationError
from .sampling import SampleIndexSet

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class PhaseTimes:
    """Wall-clock seconds spent building the sketch, factorizing, and
    assembling the returned eigenpairs."""

    sketch_s: float = 0.0
    decompose_s: float = 0.0
    reconstruct_s: float = 0.0

    @property
    def total_s(self) -> float:
        return self.sketch_s + self.decompose_s + self.reconstruct_s


@dataclass(eq=False)
class EigenApproximation:
    """k approximate eigenpairs plus provenance and timings.

    vectors : (n, k) unit-norm columns
    values : (k,) descending
    method : "power" | "sketch_svd" | "nystrom"
    sample : index set used by the randomized methods, None for power
    info : method diagnostics (iteration counts, rank flags, caveats, ...)
    """

    vectors: FloatArray
    values: FloatArray
    method: str
    sample: SampleIndexSet | None = None
    times: PhaseTimes = dataclass_field(default_factory=PhaseTimes)
    info: dict = dataclass_field(default_factory=dict)

    def __post_init__(self):
        v = np.ascontiguousarray(self.vectors, dtype=np.float64)
        w = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 2 or w.ndim != 1 or v.shape[1] != w.shape[0]:
            raise ValueError("vectors must be (n, k) and values (k,)")
        if self.sample is not None and not self.k <= self.sample.l <= v.shape[0]:
            raise ValueError("need k <= l <= n when a sample is present")
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "values", w)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def k(self) -> int:
        return self.vectors.shape[1]

    @property
    def leading(self) -> FloatArray:
        return self.vectors[:, 0]


def fix_signs(vectors: FloatArray) -> FloatArray:
    """In-place sign convention: largest-magnitude entry of each column
    made positive; np.argmax breaks ties at the lowest index."""
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        if v.size and v[np.argmax(np.abs(v))] < 0:
            np.negative(v, out=v)
    return vectors


def _normalize_columns(vectors: FloatArray) -> FloatArray:
    norms = np.linalg.norm(vectors, axis=0)
    safe = np.where(norms > 0, norms, 1.0)
    vectors /= safe
    return norms


# ---------------------------------------------------------------------------
# Deterministic baseline
# ---------------------------------------------------------------------------

def _power_stage(op, shift, basis, tol, max_iters, rng, pair):
    """One deflated stage of shifted power iteration.

    Returns (eigenvalue, vector, iterations, residual); raises
    PowerIterationError when the iterate-to-iterate residual has not
    dropped below tol within max_iters.
    """
    v = rng.standard_normal(op.n)
    if basis.shape[1]:
        v -= basis @ (basis.T @ v)
    v /= np.linalg.norm(v)
    residual = np.inf
    for it in range(1, max_iters + 1):
        u = op.matvec(v)
        u += shift * v
        if basis.shape[1]:
            u -= basis @ (basis.T @ u)
        norm = np.linalg.norm(u)
        if norm == 0.0:
            raise PowerIterationError(pair, float(residual), it)
        u /= norm
        residual = min(np.linalg.norm(u - v), np.linalg.norm(u + v))
        v = u
        if residual < tol:
            return float(v @ op.matvec(v)), v, it, float(residual)
    raise PowerIterationError(pair, float(residual), max_iters)


def power_dominant(
    op,
    k: int,
    tol: float = 1e-10,
    max_iters: int = 10_000,
    seed: int = 0,
) -> EigenApproximation:
    """Top-k eigenpairs (descending) by shifted power iteration.

    Iterates v <- (A + s I) v, so iterates converge to eigenpairs in
    algebraic order; deflation projects converged vectors out of every
    subsequent iterate. The first stage runs with a tiny tie-breaking
    shift and yields the dominant eigenvalue lam1, which for a symmetric
    nonnegative matrix is the spectral radius; s = 1.01 * lam1 therefore
    exceeds |lambda_min| and keeps every later deflated stage ordered,
    without the slowdown a loose Gershgorin shift would cost. (Should a
    generic symmetric input be negative-dominant, the first stage lands
    on that negative eigenvalue and is redone with the corrected shift.)
    Convergence is declared when successive normalized iterates differ
    by less than `tol` after sign alignment; eigenvalues are Rayleigh
    quotients on the unshifted operator.

    Raises PowerIterationError (with the last residual) when any pair
    fails to converge within `max_iters`.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if tol <= 0 or max_iters < 1:
        raise ValueError("tol must be positive and max_iters >= 1")
    n = op.n
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    t0 = time.perf_counter()
    radius = float(np.max(op.row_abs_sums())) if n else 0.0
    rng = np.random.default_rng(seed)
    if radius == 0.0:
        # Zero operator: every vector is an eigenvector of 0.
        vecs = np.eye(n, k)
        return EigenApproximation(
            vecs, np.zeros(k), "power",
            times=PhaseTimes(decompose_s=time.perf_counter() - t0),
            info={"shift": 0.0, "iterations": [0] * k, "residuals": [0.0] * k},
        )
    basis = np.zeros((n, 0))
    lam1, v1, it1, res1 = _power_stage(
        op, 2e-3 * radius, basis, tol, max_iters, rng, pair=0)
    if lam1 < 0.0:
        shift = 1.01 * (-lam1)
        lam1, v1, it1, res1 = _power_stage(
            op, shift, basis, tol, max_iters, rng, pair=0)
    else:
        shift = 1.01 * lam1 if lam1 > 0.0 else 2e-3 * radius
    values = [lam1]
    iterations = [it1]
    residuals = [res1]
    basis = v1[:, None].copy()
    for pair in range(1, k):
        lam, vec, its, res = _power_stage(
            op, shift, basis, tol, max_iters, rng, pair=pair)
        values.append(lam)
        iterations.append(its)
        residuals.append(res)
        basis = np.column_stack([basis, vec])
    values = np.asarray(values)
    order = np.argsort(-values, kind="stable")
    vectors = basis[:, order]
    values = values[order]
    fix_signs(vectors)
    return EigenApproximation(
        vectors, values, "power",
        times=PhaseTimes(decompose_s=time.perf_counter() - t0),
        info={"shift": shift, "iterations": iterations, "residuals": residuals},
    )


# ---------------------------------------------------------------------------
# Randomized path I: sketched SVD
# ---------------------------------------------------------------------------

def sketch_svd(
    op,
    sample: SampleIndexSet,
    k: int,
    gram: bool = False,
) -> EigenApproximation:
    """Approximate eigenpairs from the SVD of the column sketch C.

    With gram=False the thin SVD of C (n x l) is taken directly; with
    gram=True the l x l Gram matrix C^T C is eigendecomposed and left
    singular vectors are recovered as C w / sigma, which trades a second
    pass over C for an l-sized factorization.

    Returned values are sqrt(n/l) times the top singular values of C and
    therefore approximate eigenvalue *magnitudes* of A (the sketch of a
    symmetric indefinite matrix cannot see eigenvalue signs); the caveat
    is recorded as info["values_are_magnitudes"]. If rank(C) < k only the
    available pairs are returned and info["rank_deficient"] is set.
    """
    _check_sample(op, sample, k)
    n, l = op.n, sample.l
    t0 = time.perf_counter()
    sketch = op.columns(sample.indices)
    t1 = time.perf_counter()
    if gram:
        gmat = sketch.T @ sketch
        gvals, gvecs = np.linalg.eigh(gmat)
        gvals = gvals[::-1]
        gvecs = gvecs[:, ::-1]
        sigmas = np.sqrt(np.maximum(gvals, 0.0))
        t2 = time.perf_counter()
        rank = _rank_from_singulars(sigmas, (n, l))
        k_eff = min(k, rank)
        vectors = sketch @ (gvecs[:, :k_eff] / np.where(sigmas[:k_eff] > 0,
                                                        sigmas[:k_eff], 1.0))
        t3 = time.perf_counter()
    else:
        left, sigmas, _ = np.linalg.svd(sketch, full_matrices=False)
        t2 = time.perf_counter()
        rank = _rank_from_singulars(sigmas, (n, l))
        k_eff = min(k, rank)
        vectors = left[:, :k_eff].copy()
        t3 = time.perf_counter()
    values = np.sqrt(n / l) * sigmas[:k_eff]
    prenorm = _normalize_columns(vectors)
    fix_signs(vectors)
    return EigenApproximation(
        vectors, values, "sketch_svd", sample=sample,
        times=PhaseTimes(t1 - t0, t2 - t1, t3 - t2),
        info={
            "gram": gram,
            "rank": rank,
            "rank_deficient": k_eff < k,
            "values_are_magnitudes": True,
            "prenorm_column_norms": prenorm,
        },
    )


# ---------------------------------------------------------------------------
# Randomized path II: Nystrom
# ---------------------------------------------------------------------------

def nystrom(
    op,
    sample: SampleIndexSet,
    k: int,
    pinv_rtol: float = 1e-12,
) -> EigenApproximation:
    """Approximate eigenpairs from the sampled principal block.

    Builds C (n x l), restricts to W = C[J, :] (= the J x J principal
    block of A), eigendecomposes W, and lifts the top-k eigenvectors back
    to length n via sqrt(l/n) * C @ U_W @ pinv(D_W). Eigenvalues are
    rescaled by n/l. W eigenvalues with |d| <= pinv_rtol * max|d| are
    treated as zero in the pseudo-inverse; top-k entries lost this way
    are dropped with info["rank_deficient"] set. Lifted columns are
    renormalized to unit norm, the pre-normalization norms staying
    available as info["prenorm_column_norms"].

    Raises DegenerateSampleError when every eigenvalue of W falls below
    the cutoff (the sample then needs to be redrawn).
    """
    _check_sample(op, sample, k)
    if pinv_rtol <= 0:
        raise ValueError("pinv_rtol must be positive")
    n, l = op.n, sample.l
    t0 = time.perf_counter()
    sketch = op.columns(sample.indices)
    block = sketch[sample.indices, :]
    t1 = time.perf_counter()
    bvals, bvecs = np.linalg.eigh(block)
    t2 = time.perf_counter()
    bvals = bvals[::-1]
    bvecs = bvecs[:, ::-1]
    cutoff = pinv_rtol * np.max(np.abs(bvals))
    if not (np.abs(bvals) > cutoff).any():
        raise DegenerateSampleError(
            f"all {l} sampled eigenvalues below pseudo-inverse cutoff "
            f"{cutoff:.3e}; resample"
        )
    keep = np.flatnonzero(np.abs(bvals[:k]) > cutoff)
    k_eff = keep.size
    inv_d = 1.0 / bvals[keep]
    vectors = np.sqrt(l / n) * (sketch @ (bvecs[:, keep] * inv_d))
    values = (n / l) * bvals[keep]
    t3 = time.perf_counter()
    prenorm = _normalize_columns(vectors)
    fix_signs(vectors)
    return EigenApproximation(
        vectors, values, "nystrom", sample=sample,
        times=PhaseTimes(t1 - t0, t2 - t1, t3 - t2),
        info={
            "rank_deficient": k_eff < k,
            "pinv_cutoff": float(cutoff),
            "prenorm_column_norms": prenorm,
        },
    )


def _check_sample(op, sample: SampleIndexSet, k: int) -> None:
    if sample.n != op.n:
        raise ValueError(
            f"sample drawn over n={sample.n}, operator has n={op.n}"
        )
    if not 1 <= k <= sample.l:
        raise ValueError(f"need 1 <= k <= l, got k={k}, l={sample.l}")


def _rank_from_singulars(sigmas: FloatArray, shape: tuple[int, int]) -> int:
    if sigmas.size == 0 or sigmas[0] == 0.0:
        return 0
    cutoff = sigmas[0] * max(shape) * np.finfo(np.float64).eps
    return int(np.count_nonzero(sigmas > cutoff))
