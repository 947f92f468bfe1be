"""Explicit linear algebra for the matrix oracles.

Two arithmetic paths coexist:

* an exact path over Gaussian rationals (:class:`~periodlab.exactnum.QQi`),
  used for everything built from integers and fourth roots of unity — the J
  matrices, permutations, sl2 symmetric-power data, and integer-entry group
  models.  Identities on this path hold with zero tolerance.
* a float path over ``complex128`` with tolerance ``FLOAT_TOL = 1e-9``, used
  as soon as a construction needs other roots of unity or quaternion entries.

A :class:`Matrix` records which path produced it; mixing paths silently
downgrades to floats.  Null spaces are computed by a sparse row-reduction
over QQi on the exact path and by SVD on the float path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import TYPE_CHECKING, Iterable, Sequence, Union

import numpy as np

from .errors import (
    ConjugatorNotFoundError,
    OddPartError,
    OddSizeError,
    PeriodLabError,
    ShapeMismatchError,
    TwistedSegmentError,
)
from .exactnum import ONE, ZERO, QQi, qqi
from .param_core import Segment, WDParameter

if TYPE_CHECKING:  # pragma: no cover - typing only, avoids an import cycle
    from .group_models import Catalog

FLOAT_TOL = 1e-9


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """A dense matrix on either the exact (QQi) or the float path.

    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("data", "exact")

    def __init__(self, data: np.ndarray, exact: bool):
        self.data = data
        self.exact = exact

    # -- construction ---------------------------------------------------
    @staticmethod
    def from_rows(rows: Sequence[Sequence], exact: bool = True) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatchError("ragged rows")
        if exact:
            data = np.empty((nrows, ncols), dtype=object)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    data[i, j] = qqi(v)
        else:
            data = np.array(rows, dtype=complex).reshape(nrows, ncols)
        return Matrix(data, exact)

    @staticmethod
    def from_array(arr: np.ndarray) -> "Matrix":
        return Matrix(np.asarray(arr, dtype=complex), exact=False)

    @staticmethod
    def zeros(rows: int, cols: int, exact: bool = True) -> "Matrix":
        if exact:
            data = np.empty((rows, cols), dtype=object)
            data[...] = ZERO
            return Matrix(data, True)
        return Matrix(np.zeros((rows, cols), dtype=complex), False)

    @staticmethod
    def identity(n: int, exact: bool = True) -> "Matrix":
        m = Matrix.zeros(n, n, exact)
        for i in range(n):
            m.data[i, i] = ONE if exact else 1.0 + 0j
        return m

    # -- basic shape ------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- conversions ------------------------------------------------------
    def to_float(self) -> "Matrix":
        if not self.exact:
            return self
        return Matrix(self.as_complex(), exact=False)

    def as_complex(self) -> np.ndarray:
        if self.exact:
            out = np.empty(self.shape, dtype=complex)
            for i in range(self.rows):
                for j in range(self.cols):
                    out[i, j] = complex(self.data[i, j])
            return out
        return self.data

    # -- arithmetic -------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(
                f"cannot multiply {self.shape} by {other.shape}")
        if self.exact and other.exact:
            return Matrix(np.dot(self.data, other.data), True)
        return Matrix(self.as_complex() @ other.as_complex(), False)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} + {other.shape}")
        if self.exact and other.exact:
            return Matrix(self.data + other.data, True)
        return Matrix(self.as_complex() + other.as_complex(), False)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(-self.data if not self.exact else
                      np.vectorize(lambda v: -v, otypes=[object])(self.data),
                      self.exact)

    def scale(self, s) -> "Matrix":
        if self.exact:
            try:
                factor = qqi(s)
            except TypeError:
                pass
            else:
                return Matrix(
                    np.vectorize(lambda v: v * factor, otypes=[object])(
                        self.data), True)
        return Matrix(self.as_complex() * complex(s), False)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.data.T.copy(), self.exact)

    def conj(self) -> "Matrix":
        if self.exact:
            return Matrix(
                np.vectorize(lambda v: v.conjugate(), otypes=[object])(
                    self.data), True)
        return Matrix(self.data.conj(), False)

    def trace(self):
        return sum(self.data[i, i] for i in range(min(self.shape)))

    def kron(self, other: "Matrix") -> "Matrix":
        if self.exact and other.exact:
            return Matrix(np.kron(self.data, other.data), True)
        return Matrix(np.kron(self.as_complex(), other.as_complex()), False)

    # -- predicates --------------------------------------------------------
    def equals(self, other: "Matrix", tol: float = FLOAT_TOL) -> bool:
        if self.shape != other.shape:
            return False
        if self.exact and other.exact:
            return bool((self.data == other.data).all())
        return self.max_abs_diff(other) <= tol

    def max_abs_diff(self, other: "Matrix") -> float:
        d = self.as_complex() - other.as_complex()
        return float(np.abs(d).max()) if d.size else 0.0

    def max_abs(self) -> float:
        a = self.as_complex()
        return float(np.abs(a).max()) if a.size else 0.0

    def is_identity(self, tol: float = FLOAT_TOL) -> bool:
        if not self.is_square:
            return False
        return self.equals(Matrix.identity(self.rows, self.exact), tol)

    def is_invertible(self, tol: float = FLOAT_TOL) -> bool:
        if not self.is_square:
            return False
        if self.rows == 0:
            return True
        s = np.linalg.svd(self.as_complex(), compute_uv=False)
        return bool(s[-1] > tol * max(1.0, s[0]))

    def rank(self, tol: float = FLOAT_TOL) -> int:
        if self.exact:
            rows = [_dense_to_sparse_row(self.data[i]) for i in range(self.rows)]
            return len(_Rref(self.cols, rows).pivots)
        if self.data.size == 0:
            return 0
        s = np.linalg.svd(self.data, compute_uv=False)
        if s.size == 0 or s[0] == 0:
            return 0
        return int((s > tol * max(1.0, s[0])).sum())

    def __repr__(self) -> str:
        tag = "exact" if self.exact else "float"
        return f"Matrix({self.rows}x{self.cols}, {tag})"


def blockdiag(blocks: Sequence[Matrix]) -> Matrix:
    """Direct sum of square blocks; exact iff every block is."""
    exact = all(b.exact for b in blocks)
    n = sum(b.rows for b in blocks)
    out = Matrix.zeros(n, n, exact)
    at = 0
    for b in blocks:
        bb = b if exact else b.to_float()
        out.data[at:at + b.rows, at:at + b.cols] = bb.data
        at += b.rows
    return out


# ---------------------------------------------------------------------------
# null spaces


def _dense_to_sparse_row(row) -> dict[int, QQi]:
    return {j: v for j, v in enumerate(row) if v}


class _Rref:
    """Incremental reduced row echelon form over QQi with sparse rows."""

    def __init__(self, ncols: int, rows: Iterable[dict[int, QQi]] = ()):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, QQi]] = {}
        for row in rows:
            self.insert(dict(row))

    def insert(self, row: dict[int, QQi]) -> None:
        while row:
            c = min(row)
            if not row[c]:
                row.pop(c)
                continue
            piv = self.pivots.get(c)
            if piv is None:
                lead = row.pop(c)
                new_row = {c: ONE}
                new_row.update(
                    (cc, vv / lead) for cc, vv in row.items() if vv)
                # pivot columns in the tail must be eliminated too; existing
                # pivot rows only touch free columns, so one pass suffices
                for cc in [col for col in new_row if col != c
                           and col in self.pivots]:
                    factor = new_row.pop(cc)
                    for c2, v2 in self.pivots[cc].items():
                        if c2 == cc:
                            continue
                        cur = new_row.get(c2, ZERO) - factor * v2
                        if cur:
                            new_row[c2] = cur
                        else:
                            new_row.pop(c2, None)
                self.pivots[c] = new_row
                self._eliminate(c)
                return
            factor = row.pop(c)
            for cc, vv in piv.items():
                if cc == c:
                    continue
                cur = row.get(cc, ZERO) - factor * vv
                if cur:
                    row[cc] = cur
                else:
                    row.pop(cc, None)

    def _eliminate(self, new_col: int) -> None:
        new_row = self.pivots[new_col]
        for c, row in self.pivots.items():
            if c == new_col:
                continue
            factor = row.get(new_col)
            if not factor:
                continue
            row.pop(new_col)
            for cc, vv in new_row.items():
                if cc == new_col:
                    continue
                cur = row.get(cc, ZERO) - factor * vv
                if cur:
                    row[cc] = cur
                else:
                    row.pop(cc, None)

    def nullspace(self) -> list[list[QQi]]:
        """Basis of the solution space, one dense vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free:
            vec = [ZERO] * self.ncols
            vec[f] = ONE
            for c, row in self.pivots.items():
                coeff = row.get(f)
                if coeff:
                    vec[c] = -coeff
            basis.append(vec)
        return basis


def nullspace_exact(rows: Sequence[dict[int, QQi]], ncols: int) -> list[list[QQi]]:
    return _Rref(ncols, rows).nullspace()


def nullspace_float(a: np.ndarray, ncols: int, tol: float = FLOAT_TOL) -> np.ndarray:
    """Columns spanning the null space of ``a`` (shape ``(*, ncols)``)."""
    m = np.asarray(a, dtype=complex).reshape(-1, ncols)
    if m.shape[0] == 0 or not np.any(np.abs(m) > 0):
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    cutoff = tol * max(1.0, float(s[0]))
    rank = int((s > cutoff).sum())
    return vh[rank:].conj().T


# ---------------------------------------------------------------------------
# bilinear forms


class Symmetry(Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"
    NEITHER = "neither"


@dataclass(frozen=True)
class BilinearForm:
    """A square gram matrix with its symmetry classification."""

    gram: Matrix
    symmetry: Symmetry
    nondegenerate: bool


def classify_form(gram: Matrix, tol: float = FLOAT_TOL) -> BilinearForm:
    if not gram.is_square:
        raise ShapeMismatchError("bilinear forms need square gram matrices")
    gt = gram.T
    if gt.equals(gram, tol):
        sym = Symmetry.SYMMETRIC
    elif gt.equals(-gram, tol):
        sym = Symmetry.SKEW
    else:
        sym = Symmetry.NEITHER
    nondeg = gram.rank(tol) == gram.rows
    return BilinearForm(gram, sym, nondeg)


def _gram_of(j: Union[BilinearForm, Matrix]) -> Matrix:
    return j.gram if isinstance(j, BilinearForm) else j


# ---------------------------------------------------------------------------
# the J matrices and the pairing permutation


def antidiag_J(k: int) -> Matrix:
    """The k-by-k matrix with ones on the antidiagonal."""
    if k < 1:
        raise ValueError("k must be >= 1")
    m = Matrix.zeros(k, k)
    for i in range(k):
        m.data[i, k - 1 - i] = ONE
    return m


def symplectic_J(m: int) -> BilinearForm:
    """The standard skew form [[0, J], [-J, 0]] in even size m."""
    if m < 2 or m % 2:
        raise OddSizeError(f"symplectic form needs even size >= 2, got {m}")
    h = m // 2
    g = Matrix.zeros(m, m)
    for i in range(h):
        g.data[i, m - 1 - i] = ONE
        g.data[m - 1 - i, i] = -ONE
    return BilinearForm(g, Symmetry.SKEW, True)


def partition_J(partition: Sequence[int]) -> BilinearForm:
    """Direct sum of standard skew forms, one block per even part."""
    for part in partition:
        if part % 2 or part < 2:
            raise OddPartError(f"all parts must be even and >= 2, got {part}")
    g = blockdiag([symplectic_J(p).gram for p in partition])
    return BilinearForm(g, Symmetry.SKEW, True)


@dataclass(frozen=True)
class PermutationMap:
    """A bijection of {1..n}; ``images[j-1]`` is the image of j."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def inverse(self) -> "PermutationMap":
        inv = [0] * self.n
        for j, img in enumerate(self.images, start=1):
            inv[img - 1] = j
        return PermutationMap(tuple(inv))

    def matrix(self) -> Matrix:
        """Exact permutation matrix under the convention P[sigma(j), j] = 1."""
        m = Matrix.zeros(self.n, self.n)
        for j, img in enumerate(self.images, start=1):
            m.data[img - 1, j - 1] = ONE
        return m


def w_plus(n: int) -> PermutationMap:
    """The pairing permutation on {1..2n}: 2i-1 -> i and 2i -> 2n+1-i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    images = [0] * (2 * n)
    for i in range(1, n + 1):
        images[2 * i - 2] = i
        images[2 * i - 1] = 2 * n + 1 - i
    return PermutationMap(tuple(images))


def conjugator_for_partition(partition: Sequence[int]) -> PermutationMap:
    """A permutation P with P^-1 * J'_{2n} * P equal to the partition form.

    The pairing algorithm walks the positive entries (u, v), u < v, of the
    block form in order of u and sends the t-th pair to (t, 2n+1-t), the t-th
    symplectic pair of the single-block form.  The identity is verified by
    exact multiplication before returning; under the fixed convention
    P[sigma(j), j] = 1 it reduces to P^T J' P = J''.
    """
    target = partition_J(partition).gram
    m = target.rows
    pairs = []
    for u in range(m):
        for v in range(u + 1, m):
            if target.data[u, v] == 1:
                pairs.append((u + 1, v + 1))
    pairs.sort()
    n = m // 2
    images = [0] * m
    for t, (u, v) in enumerate(pairs, start=1):
        images[u - 1] = t
        images[v - 1] = m + 1 - t
    perm = PermutationMap(tuple(images))
    p = perm.matrix()
    conjugated = p.T @ symplectic_J(m).gram @ p
    if not conjugated.equals(target, tol=0):
        raise ConjugatorNotFoundError(
            f"pairing algorithm failed for partition {tuple(partition)}")
    return perm


# ---------------------------------------------------------------------------
# sl2 symmetric powers


@dataclass(frozen=True)
class Sl2Action:
    """The standard sl2 triple acting on the degree-(k-1) binary-form basis."""

    k: int
    e: Matrix
    f: Matrix
    h: Matrix


def sl2_sym_power_action(k: int) -> Sl2Action:
    """E, F, H on the basis x^{k-1}, x^{k-2}y, ..., y^{k-1}.

    With v_j = x^{k-1-j} y^j: E v_j = j v_{j-1}, F v_j = (k-1-j) v_{j+1},
    H v_j = (k-1-2j) v_j; [E, F] = H holds exactly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    e = Matrix.zeros(k, k)
    f = Matrix.zeros(k, k)
    h = Matrix.zeros(k, k)
    for j in range(k):
        if j > 0:
            e.data[j - 1, j] = QQi(j)
        if j < k - 1:
            f.data[j + 1, j] = QQi(k - 1 - j)
        h.data[j, j] = QQi(k - 1 - 2 * j)
    return Sl2Action(k, e, f, h)


def sl2_exp_e(k: int) -> Matrix:
    """exp(E) on the k-dimensional symmetric power; integer entries."""
    m = Matrix.identity(k)
    for j in range(k):
        for t in range(1, j + 1):
            m.data[j - t, j] = QQi(comb(j, t))
    return m


def sl2_exp_f(k: int) -> Matrix:
    """exp(F) on the k-dimensional symmetric power; integer entries."""
    m = Matrix.identity(k)
    for j in range(k):
        for t in range(1, k - j):
            m.data[j + t, j] = QQi(comb(k - 1 - j, t))
    return m


def invariant_form_sl2(k: int) -> BilinearForm:
    """The invariant form of the k-dimensional sl2 module, exactly.

    Solves X^T B + B X = 0 for X in {E, F, H}; the solution space is one
    dimensional, and the result is normalized so its first nonzero entry in
    row-major order is 1.  Symmetric for k odd, skew for k even.
    """
    action = sl2_sym_power_action(k)
    rows = []
    for x in (action.e, action.f, action.h):
        rows.extend(_lie_invariance_rows(x))
    basis = nullspace_exact(rows, k * k)
    if len(basis) != 1:
        raise PeriodLabError(
            f"internal: sl2 invariant-form space has dimension {len(basis)}, "
            f"expected 1 (k={k})")
    gram = _vec_to_matrix_exact(_normalize_exact(basis[0]), k)
    form = classify_form(gram, tol=0)
    if not form.nondegenerate or form.symmetry is Symmetry.NEITHER:
        raise PeriodLabError("internal: sl2 invariant form is not as expected")
    return form


def _lie_invariance_rows(x: Matrix) -> list[dict[int, QQi]]:
    """Sparse rows of the condition X^T B + B X = 0 on vec(B), row-major."""
    n = x.rows
    entries = [(p, q, x.data[p, q]) for p in range(n) for q in range(n)
               if x.data[p, q]]
    rows = []
    for i in range(n):
        for j in range(n):
            row: dict[int, QQi] = {}
            for p, ii, v in entries:
                # term (X^T B)[i, j] = sum_p X[p, i] B[p, j]
                if ii == i:
                    col = p * n + j
                    row[col] = row.get(col, ZERO) + v
            for q, jj, v in entries:
                # term (B X)[i, j] = sum_q B[i, q] X[q, j]
                if jj == j:
                    col = i * n + q
                    row[col] = row.get(col, ZERO) + v
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def _normalize_exact(vec: list[QQi]) -> list[QQi]:
    lead = next((v for v in vec if v), None)
    if lead is None:
        return vec
    return [v / lead for v in vec]


def _vec_to_matrix_exact(vec: list[QQi], n: int) -> Matrix:
    m = Matrix.zeros(n, n)
    for i in range(n):
        for j in range(n):
            m.data[i, j] = vec[i * n + j]
    return m


# ---------------------------------------------------------------------------
# form algebra and membership


_SIGN_OF_SYMMETRY = {Symmetry.SYMMETRIC: 1, Symmetry.SKEW: -1}


def kron_form(b1: BilinearForm, b2: BilinearForm) -> BilinearForm:
    """Kronecker product of forms; the symmetry sign multiplies."""
    gram = b1.gram.kron(b2.gram)
    s1 = _SIGN_OF_SYMMETRY.get(b1.symmetry)
    s2 = _SIGN_OF_SYMMETRY.get(b2.symmetry)
    if s1 is None or s2 is None:
        return classify_form(gram)
    sym = Symmetry.SYMMETRIC if s1 * s2 == 1 else Symmetry.SKEW
    return BilinearForm(gram, sym, b1.nondegenerate and b2.nondegenerate)


def is_in_sp(g: Matrix, j: Union[BilinearForm, Matrix],
             tol: float = FLOAT_TOL) -> bool:
    """Whether g preserves the form: g^T J g = J.

    Exact equality when both sides are exact; max-entry tolerance otherwise.
    """
    gram = _gram_of(j)
    if not g.is_square or g.shape != gram.shape:
        raise ShapeMismatchError(
            f"generator {g.shape} does not match form {gram.shape}")
    moved = g.T @ gram @ g
    if moved.exact and gram.exact:
        return moved.equals(gram, tol=0)
    return moved.max_abs_diff(gram) <= tol


# ---------------------------------------------------------------------------
# invariant forms of a generator set


def _generator_matrices(gens) -> list[Matrix]:
    if hasattr(gens, "generators"):
        return list(gens.generators)
    return list(gens)


def invariant_forms(gens, tol: float = FLOAT_TOL) -> list[BilinearForm]:
    """Basis of the space of forms B with g^T B g = B for all generators.

    Returns classified forms, symmetric basis elements first, each normalized
    so its first nonzero entry in row-major order is 1.  The solution space
    is closed under transposition, so it always splits into symmetric and
    skew parts.
    """
    mats = _generator_matrices(gens)
    if not mats:
        raise ValueError("invariant_forms needs at least one generator")
    n = mats[0].rows
    for m in mats:
        if not m.is_square or m.rows != n:
            raise ShapeMismatchError("generators must be square of equal size")
    working = [m for m in mats if not m.is_identity(tol)]
    exact = all(m.exact for m in working)

    if exact:
        rref = _Rref(n * n)
        for g in working:
            for row in _form_invariance_rows_exact(g):
                rref.insert(row)
        vecs = rref.nullspace()
        sym_vecs, skew_vecs = _split_transpose_exact(vecs, n)
        out = [
            classify_form(_vec_to_matrix_exact(v, n), tol=0)
            for v in sym_vecs + skew_vecs
        ]
        return out

    blocks = []
    eye = np.eye(n * n, dtype=complex)
    for g in working:
        gt = g.as_complex().T
        blocks.append(np.kron(gt, gt) - eye)
    if blocks:
        stacked = np.vstack(blocks)
    else:
        stacked = np.zeros((0, n * n), dtype=complex)
    basis = nullspace_float(stacked, n * n, tol)  # columns
    sym_vecs, skew_vecs = _split_transpose_float(basis, n, tol)
    out = []
    for v in sym_vecs + skew_vecs:
        out.append(classify_form(Matrix.from_array(v.reshape(n, n)), tol))
    return out


def _form_invariance_rows_exact(g: Matrix) -> list[dict[int, QQi]]:
    """Sparse rows of (g^T (x) g^T - I) vec(B) = 0, row-major vec."""
    n = g.rows
    cols_by_index = [
        [(p, g.data[p, i]) for p in range(n) if g.data[p, i]]
        for i in range(n)
    ]
    rows = []
    for i in range(n):
        col_i = cols_by_index[i]
        for j in range(n):
            row: dict[int, QQi] = {}
            for p, gpi in col_i:
                for q, gqj in cols_by_index[j]:
                    col = p * n + q
                    val = row.get(col, ZERO) + gpi * gqj
                    if val:
                        row[col] = val
                    else:
                        row.pop(col, None)
            diag = i * n + j
            val = row.get(diag, ZERO) - ONE
            if val:
                row[diag] = val
            else:
                row.pop(diag, None)
            if row:
                rows.append(row)
    return rows


def _transpose_vec_exact(vec: list[QQi], n: int) -> list[QQi]:
    return [vec[j * n + i] for i in range(n) for j in range(n)]


def _split_transpose_exact(vecs: list[list[QQi]], n: int):
    sym_rref = _Rref(n * n)
    skew_rref = _Rref(n * n)
    for v in vecs:
        vt = _transpose_vec_exact(v, n)
        sym_rref.insert(_dense_to_sparse_row(
            [a + b for a, b in zip(v, vt)]))
        skew_rref.insert(_dense_to_sparse_row(
            [a - b for a, b in zip(v, vt)]))
    sym = [_pivot_row_dense(sym_rref, c) for c in sorted(sym_rref.pivots)]
    skew = [_pivot_row_dense(skew_rref, c) for c in sorted(skew_rref.pivots)]
    return sym, skew


def _pivot_row_dense(rref: _Rref, col: int) -> list[QQi]:
    vec = [ZERO] * rref.ncols
    for c, v in rref.pivots[col].items():
        vec[c] = v
    return vec


def _split_transpose_float(basis: np.ndarray, n: int, tol: float):
    if basis.size == 0:
        return [], []
    perm = np.array([[j * n + i for j in range(n)] for i in range(n)]).ravel()
    vecs = basis.T  # rows
    sym_rows = vecs + vecs[:, perm]
    skew_rows = vecs - vecs[:, perm]
    return (_row_space_basis(sym_rows, tol), _row_space_basis(skew_rows, tol))


def _row_space_basis(rows: np.ndarray, tol: float) -> list[np.ndarray]:
    if rows.size == 0 or not np.any(np.abs(rows) > tol):
        return []
    _, s, vh = np.linalg.svd(rows)
    cutoff = tol * max(1.0, float(s[0]))
    rank = int((s > cutoff).sum())
    out = []
    for row in vh[:rank]:
        idx = next(i for i, v in enumerate(row) if abs(v) > cutoff)
        out.append(row / row[idx])
    return out


def find_nondegenerate_skew(forms: Sequence[BilinearForm],
                            tol: float = FLOAT_TOL) -> BilinearForm | None:
    """A nondegenerate skew form in the span of the given basis, if any.

    Tries each skew basis element, then deterministic integer combinations
    (all-ones, moment curves over small integers, and a seeded random
    family).  Nondegenerate combinations form a Zariski-open set, so when
    one exists these families find it; returns None when every attempt is
    degenerate.
    """
    skews = [f for f in forms if f.symmetry is Symmetry.SKEW]
    if not skews:
        return None
    for f in skews:
        if f.nondegenerate:
            return f
    d = len(skews)
    combos: list[tuple[int, ...]] = [(1,) * d]
    for t in range(-6, 7):
        if t in (0,):
            continue
        combos.append(tuple(t ** i for i in range(d)))
    rng = np.random.default_rng(20851)
    for _ in range(50):
        combos.append(tuple(int(c) for c in rng.integers(-9, 10, size=d)))
    for coeffs in combos:
        if not any(coeffs):
            continue
        gram = _integer_combination([f.gram for f in skews], coeffs)
        candidate = classify_form(gram, tol)
        if candidate.nondegenerate:
            return candidate
    return None


def _integer_combination(grams: Sequence[Matrix],
                         coeffs: Sequence[int]) -> Matrix:
    acc = grams[0].scale(coeffs[0])
    for g, c in zip(grams[1:], coeffs[1:]):
        acc = acc + g.scale(c)
    return acc


# ---------------------------------------------------------------------------
# symmetric powers of 2x2 matrices (used by the finite SL(2) stand-in)


def sym_power(m: Matrix, k: int) -> Matrix:
    """The action of a 2x2 matrix on the k-dimensional symmetric power.

    Basis x^{k-1}, x^{k-2}y, ..., y^{k-1}; column j holds the coefficients
    of (a x + c y)^{k-1-j} (b x + d y)^j for m = [[a, b], [c, d]].
    """
    if m.shape != (2, 2):
        raise ShapeMismatchError("sym_power expects a 2x2 matrix")
    if k < 1:
        raise ValueError("k must be >= 1")
    a, b = m.data[0, 0], m.data[0, 1]
    c, d = m.data[1, 0], m.data[1, 1]
    zero = ZERO if m.exact else 0j
    out = Matrix.zeros(k, k, m.exact)
    for j in range(k):
        left = _binomial_poly(a, c, k - 1 - j, zero)
        right = _binomial_poly(b, d, j, zero)
        col = [zero] * k
        for s, lv in enumerate(left):
            if lv == zero:
                continue
            for t, rv in enumerate(right):
                col[s + t] = col[s + t] + lv * rv
        for i in range(k):
            out.data[i, j] = col[i]
    return out


def _binomial_poly(x, y, power: int, zero):
    """Coefficients of (x*X + y*Y)^power by Y-degree."""
    coeffs = []
    for s in range(power + 1):
        term = zero + comb(power, s)
        for _ in range(power - s):
            term = term * x
        for _ in range(s):
            term = term * y
        coeffs.append(term)
    return coeffs


# ---------------------------------------------------------------------------
# realizations of parameters


@dataclass(frozen=True)
class RealizationRecipe:
    """How a generator set was assembled: segments, block spans, catalog."""

    segments: tuple[Segment, ...]
    spans: tuple[tuple[int, int], ...]
    catalog: "Catalog"


@dataclass(frozen=True)
class GeneratorSet:
    """Square invertible generators of a realized parameter."""

    dim: int
    generators: tuple[Matrix, ...]
    provenance: tuple[str, ...]
    exact: bool
    recipe: RealizationRecipe | None = None

    def __post_init__(self):
        if len(self.generators) != len(self.provenance):
            raise ValueError("one provenance tag per generator")
        for g in self.generators:
            if not g.is_square or g.rows != self.dim:
                raise ShapeMismatchError(
                    f"generator of shape {g.shape} in dimension {self.dim}")
            if not g.is_invertible():
                raise ValueError("generators must be invertible")


def realize(p: WDParameter, catalog: "Catalog") -> GeneratorSet:
    """Matrix generators for the image of an untwisted parameter.

    Each segment St(k, rho) contributes a block rho (x) S(k); a group
    element gamma acts as gamma (x) I_k simultaneously in every block whose
    label is modeled on gamma's group, and the unipotent pair exp(E), exp(F)
    acts as I_r (x) exp on every block at once.  Distinct model groups give
    independent generator families.
    """
    segs = p.segments
    if not segs:
        raise ValueError("cannot realize the empty parameter")
    models = []
    for s in segs:
        if s.twist != 0:
            raise TwistedSegmentError(
                f"segment {s.cuspidal.name} has twist {s.twist}; "
                f"realizations are defined for twist zero")
        models.append(catalog.model_for(s.cuspidal))
    spans = []
    at = 0
    for s in segs:
        spans.append((at, at + s.dim))
        at += s.dim
    n = at
    exact = all(m.exact for m in models)

    groups = []
    for m in models:
        if not any(g is m.group for g in groups):
            groups.append(m.group)

    generators: list[Matrix] = []
    provenance: list[str] = []
    for group in groups:
        for pos, element_index in enumerate(group.generator_idxs):
            blocks = []
            for s, m in zip(segs, models):
                if m.group is group:
                    blocks.append(
                        m.matrices[element_index].kron(
                            Matrix.identity(s.k, m.matrices[0].exact)))
                else:
                    blocks.append(Matrix.identity(s.dim, exact))
            g = blockdiag(blocks)
            if not g.is_identity():
                generators.append(g if g.exact == exact else g.to_float())
                provenance.append(f"group:{group.name}:{pos}")
    if any(s.k > 1 for s in segs):
        for tag, exp in (("sl2:exp_e", sl2_exp_e), ("sl2:exp_f", sl2_exp_f)):
            blocks = [
                Matrix.identity(s.cuspidal.dim).kron(exp(s.k)) for s in segs
            ]
            g = blockdiag(blocks)
            generators.append(g if exact else g.to_float())
            provenance.append(tag)
    if not generators:
        generators = [Matrix.identity(n, exact)]
        provenance = ["identity"]

    recipe = RealizationRecipe(tuple(segs), tuple(spans), catalog)
    return GeneratorSet(n, tuple(generators), tuple(provenance), exact, recipe)
