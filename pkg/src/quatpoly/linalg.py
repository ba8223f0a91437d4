"""Quaternion matrices, complex adjoint lifting, and realification.

A quaternion matrix A splits uniquely as A = A1 + A2*j with complex blocks
A1, A2; the lift chi(A) = [[A1, A2], [-conj(A2), conj(A1)]] is an injective
algebra homomorphism into 2n x 2n complex matrices, so spectra, norms and
inverses transfer back and forth.  Realification instead represents the
one-sided actions y -> A y and y -> y q as 4n x 4n real matrices; its rank
is the exact singularity oracle used throughout the stability checks.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .eigensolver import eig_complex, eigenvector, inverse_complex
from .errors import NonSquareError, PairingFailureError, SingularMatrixError
from .quaternion import (
    Quaternion,
    StandardEigenvalue,
    left_action_matrix,
    right_action_matrix,
)

__all__ = [
    "QuaternionMatrix",
    "qvec",
    "vec_entries",
    "vec4",
    "vec4_to_qvec",
    "complex_adjoint",
    "from_complex_adjoint_blocks",
    "chi_vector_to_qvec",
    "real_rep_left",
    "real_rep_right_scalar",
    "rank_decision",
    "eig_complex",
    "right_eigenvalues",
    "right_eigenpairs",
    "spectral_norm",
    "inverse",
]

# Pivot policy for the realified rank oracle: relative threshold on the
# infinity norm, with an undecided band one decade to either side.
RANK_PIVOT_REL = 1e-10
RANK_BAND = 10.0

# Single invertibility criterion: LU pivot threshold on the complex lift.
INVERTIBILITY_REL = 1e-12


def _coerce_entry(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(float(value))
    if isinstance(value, complex):
        return Quaternion.from_complex(value)
    raise TypeError(f"cannot interpret {value!r} as a quaternion entry")


class QuaternionMatrix:
    """Dense quaternion matrix stored as the complex pair A = A1 + A2*j."""

    __slots__ = ("a1", "a2")

    def __init__(self, a1, a2):
        a1 = np.array(a1, dtype=np.complex128)
        a2 = np.array(a2, dtype=np.complex128)
        if a1.ndim != 2 or a1.shape != a2.shape:
            raise ValueError("complex pair blocks must share a 2-D shape")
        self.a1 = a1
        self.a2 = a2

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QuaternionMatrix":
        qrows = [[_coerce_entry(v) for v in row] for row in rows]
        if not qrows or not qrows[0]:
            raise ValueError("matrix needs at least one row and one column")
        ncols = len(qrows[0])
        if any(len(row) != ncols for row in qrows):
            raise ValueError("rows have inconsistent lengths")
        a1 = np.array([[complex(q.w, q.x) for q in row] for row in qrows])
        a2 = np.array([[complex(q.y, q.z) for q in row] for row in qrows])
        return cls(a1, a2)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "QuaternionMatrix":
        return cls(np.zeros((n_rows, n_cols), dtype=np.complex128),
                   np.zeros((n_rows, n_cols), dtype=np.complex128))

    @classmethod
    def identity(cls, n: int) -> "QuaternionMatrix":
        return cls(np.eye(n, dtype=np.complex128),
                   np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QuaternionMatrix":
        qs = [_coerce_entry(v) for v in entries]
        n = len(qs)
        m = cls.zeros(n, n)
        for t, q in enumerate(qs):
            m.a1[t, t] = complex(q.w, q.x)
            m.a2[t, t] = complex(q.y, q.z)
        return m

    # -- shape and access -------------------------------------------------

    @property
    def n_rows(self) -> int:
        return self.a1.shape[0]

    @property
    def n_cols(self) -> int:
        return self.a1.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a1.shape

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_complex_pair(self.a1[i, j], self.a2[i, j])

    def to_rows(self) -> list[list[Quaternion]]:
        return [[self.entry(i, j) for j in range(self.n_cols)]
                for i in range(self.n_rows)]

    def copy(self) -> "QuaternionMatrix":
        return QuaternionMatrix(self.a1.copy(), self.a2.copy())

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.a1 + other.a1, self.a2 + other.a2)

    def __sub__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.a1 - other.a1, self.a2 - other.a2)

    def __neg__(self) -> "QuaternionMatrix":
        return QuaternionMatrix(-self.a1, -self.a2)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return QuaternionMatrix(self.a1 * other, self.a2 * other)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(
                f"shape mismatch for product: {self.shape} @ {other.shape}")
        # (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
        c1 = self.a1 @ other.a1 - self.a2 @ np.conj(other.a2)
        c2 = self.a1 @ other.a2 + self.a2 @ np.conj(other.a1)
        return QuaternionMatrix(c1, c2)

    def scale_left(self, q: Quaternion) -> "QuaternionMatrix":
        """Entrywise left multiplication q * a_ij."""
        q1, q2 = q.complex_pair()
        return QuaternionMatrix(q1 * self.a1 - q2 * np.conj(self.a2),
                                q1 * self.a2 + q2 * np.conj(self.a1))

    def scale_right(self, q: Quaternion) -> "QuaternionMatrix":
        """Entrywise right multiplication a_ij * q."""
        q1, q2 = q.complex_pair()
        return QuaternionMatrix(self.a1 * q1 - self.a2 * np.conj(q2),
                                self.a1 * q2 + self.a2 * np.conj(q1))

    def adjoint(self) -> "QuaternionMatrix":
        """Conjugate transpose."""
        return QuaternionMatrix(np.conj(self.a1).T, -self.a2.T)

    # -- metrics ------------------------------------------------------------

    def frobenius_norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.a1) ** 2 + np.abs(self.a2) ** 2)))

    def max_entry_modulus(self) -> float:
        if self.a1.size == 0:
            return 0.0
        return float(np.sqrt(np.max(np.abs(self.a1) ** 2 + np.abs(self.a2) ** 2)))

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_entry_modulus() <= tol

    def allclose(self, other: "QuaternionMatrix", tol: float = 1e-12) -> bool:
        return (self - other).max_entry_modulus() <= tol

    def __repr__(self) -> str:
        return f"QuaternionMatrix({self.n_rows}x{self.n_cols})"


def qvec(entries: Iterable) -> QuaternionMatrix:
    """Column vector from an iterable of quaternion-like entries."""
    return QuaternionMatrix.from_rows([[v] for v in entries])


def vec_entries(v: QuaternionMatrix) -> list[Quaternion]:
    if v.n_cols != 1:
        raise ValueError("expected a column vector")
    return [v.entry(i, 0) for i in range(v.n_rows)]


def vec4(v: QuaternionMatrix) -> np.ndarray:
    """Stack a quaternion column vector into 4n reals, (w, x, y, z) per entry."""
    if v.n_cols != 1:
        raise ValueError("expected a column vector")
    out = np.empty(4 * v.n_rows)
    c1 = v.a1[:, 0]
    c2 = v.a2[:, 0]
    out[0::4] = c1.real
    out[1::4] = c1.imag
    out[2::4] = c2.real
    out[3::4] = c2.imag
    return out


def vec4_to_qvec(arr: np.ndarray) -> QuaternionMatrix:
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 1 or arr.size % 4 != 0:
        raise ValueError("expected a flat real vector of length 4n")
    c1 = arr[0::4] + 1j * arr[1::4]
    c2 = arr[2::4] + 1j * arr[3::4]
    return QuaternionMatrix(c1.reshape(-1, 1), c2.reshape(-1, 1))


def complex_adjoint(a: QuaternionMatrix) -> np.ndarray:
    """The 2n x 2n complex lift [[A1, A2], [-conj(A2), conj(A1)]]."""
    if a.n_rows != a.n_cols:
        raise NonSquareError("complex adjoint is defined for square matrices")
    top = np.hstack([a.a1, a.a2])
    bottom = np.hstack([-np.conj(a.a2), np.conj(a.a1)])
    return np.vstack([top, bottom])


def from_complex_adjoint_blocks(m: np.ndarray, n: int) -> QuaternionMatrix:
    """Read a quaternion matrix back off the block structure of its lift."""
    return QuaternionMatrix(m[:n, :n], m[:n, n:])


def chi_vector_to_qvec(v: np.ndarray) -> QuaternionMatrix:
    """Map a lifted eigenvector [v1; v2] to the quaternion vector v1 - conj(v2)*j."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or v.size % 2 != 0:
        raise ValueError("expected a flat complex vector of even length")
    half = v.size // 2
    c1 = v[:half]
    c2 = -np.conj(v[half:])
    return QuaternionMatrix(c1.reshape(-1, 1), c2.reshape(-1, 1))


def real_rep_left(a: QuaternionMatrix) -> np.ndarray:
    """4n x 4n real matrix L with vec4(A y) = L vec4(y) for all y.

    Each construction is spot-checked against the direct product on a few
    fixed pseudo-random vectors.
    """
    if a.n_rows != a.n_cols:
        raise NonSquareError("realification is defined for square matrices")
    n = a.n_rows
    out = np.zeros((4 * n, 4 * n))
    for r in range(n):
        for c in range(n):
            out[4 * r:4 * r + 4, 4 * c:4 * c + 4] = left_action_matrix(a.entry(r, c))
    rng = np.random.default_rng(987654321)
    scale = max(a.frobenius_norm(), 1.0)
    for _ in range(10):
        y = vec4_to_qvec(rng.standard_normal(4 * n))
        if not np.allclose(out @ vec4(y), vec4(a @ y), rtol=0.0, atol=1e-10 * scale):
            raise RuntimeError("left realification failed its construction check")
    return out


def real_rep_right_scalar(q: Quaternion, n: int) -> np.ndarray:
    """Block-diagonal 4n x 4n real matrix R with vec4(y q) = R vec4(y)."""
    if n < 1:
        raise ValueError("vector length must be at least 1")
    return np.kron(np.eye(n), right_action_matrix(q))


def rank_decision(m: np.ndarray) -> tuple[str, np.ndarray | None]:
    """Tri-state rank decision for a real matrix by row reduction.

    Returns ("nonsingular", None), ("singular", kernel_vector) or
    ("unknown", None).  A column pivot below threshold/10 definitely marks a
    dependent column, above threshold*10 a sound pivot; anything inside the
    band is refused rather than guessed.
    """
    work = np.array(m, dtype=float)
    if work.ndim != 2:
        raise ValueError("expected a 2-D real matrix")
    n_rows, n_cols = work.shape
    scale = float(np.max(np.sum(np.abs(work), axis=1))) if work.size else 0.0
    if scale == 0.0:
        kernel = np.zeros(n_cols)
        kernel[0] = 1.0
        return "singular", kernel
    tau = RANK_PIVOT_REL * scale
    pivot_rows: list[tuple[int, int]] = []  # (row, pivot column)
    free_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            free_cols.extend(range(c, n_cols))
            break
        p_rel = int(np.argmax(np.abs(work[r:, c])))
        p_val = abs(work[r + p_rel, c])
        if p_val > RANK_BAND * tau:
            if p_rel != 0:
                work[[r, r + p_rel], :] = work[[r + p_rel, r], :]
            work[r, :] /= work[r, c]
            for rr in range(n_rows):
                if rr != r and work[rr, c] != 0.0:
                    work[rr, :] -= work[rr, c] * work[r, :]
            pivot_rows.append((r, c))
            r += 1
        elif p_val < tau / RANK_BAND:
            work[r:, c] = 0.0
            free_cols.append(c)
        else:
            return "unknown", None
    if not free_cols:
        return "nonsingular", None
    f = free_cols[0]
    kernel = np.zeros(n_cols)
    kernel[f] = 1.0
    for row, pc in pivot_rows:
        kernel[pc] = -work[row, f]
    return "singular", kernel


def _pairing_scale(a: QuaternionMatrix) -> float:
    # Frobenius norm of the lift: an operator-norm proxy that never
    # undershoots the spectral norm.
    return math.sqrt(2.0) * a.frobenius_norm()


def _pair_conjugates(vals: np.ndarray, tol: float) -> list[StandardEigenvalue]:
    count = vals.size
    if count % 2 != 0:
        raise PairingFailureError("odd number of eigenvalues cannot pair")
    used = np.zeros(count, dtype=bool)
    order = sorted(range(count), key=lambda t: (-abs(vals[t].imag), vals[t].real))
    out = []
    for t in order:
        if used[t]:
            continue
        used[t] = True
        target = np.conj(vals[t])
        best = -1
        best_dist = math.inf
        for s in range(count):
            if used[s]:
                continue
            d = abs(vals[s] - target)
            if d < best_dist:
                best_dist = d
                best = s
        if best < 0 or best_dist > max(tol, 5e-14):
            raise PairingFailureError(
                f"no conjugate partner for {vals[t]:.6g} within {tol:.3e} "
                f"(closest at {best_dist:.3e})")
        used[best] = True
        a, b = vals[t], vals[best]
        out.append(StandardEigenvalue(0.5 * (a.real + b.real),
                                      0.5 * abs(a.imag - b.imag)))
    return out


def right_eigenvalues(a: QuaternionMatrix) -> list[StandardEigenvalue]:
    """The n standard right eigenvalues of a square quaternion matrix.

    Eigenvalues of the complex lift come in conjugate pairs; each pair is
    merged into its representative with nonnegative imaginary part.  Output
    is sorted by (modulus, real part).
    """
    if a.n_rows != a.n_cols:
        raise NonSquareError("right eigenvalues are defined for square matrices")
    vals = eig_complex(complex_adjoint(a))
    standards = _pair_conjugates(vals, 1e-6 * _pairing_scale(a))
    standards.sort(key=lambda e: (e.modulus(), e.re, e.im))
    return standards


def right_eigenpairs(a: QuaternionMatrix) -> list[tuple[StandardEigenvalue, QuaternionMatrix]]:
    """Standard eigenvalues together with quaternion eigenvectors.

    Vectors are recovered from lifted eigenvectors through the mapping
    [v1; v2] -> v1 - conj(v2) j.
    """
    if a.n_rows != a.n_cols:
        raise NonSquareError("right eigenpairs are defined for square matrices")
    chi = complex_adjoint(a)
    vals = eig_complex(chi)
    standards = _pair_conjugates(vals, 1e-6 * _pairing_scale(a))
    standards.sort(key=lambda e: (e.modulus(), e.re, e.im))
    pairs = []
    for ev in standards:
        vec, _res = eigenvector(chi, ev.as_complex())
        pairs.append((ev, chi_vector_to_qvec(vec)))
    return pairs


def spectral_norm(a: QuaternionMatrix) -> float:
    """Largest singular value, computed through the Hermitian lift of A* A."""
    gram = a.adjoint() @ a
    vals = eig_complex(complex_adjoint(gram))
    if vals.size == 0:
        return 0.0
    return math.sqrt(max(0.0, float(np.max(vals.real))))


def inverse(a: QuaternionMatrix) -> QuaternionMatrix:
    """Inverse through LU on the complex lift.

    Raises SingularMatrixError when a pivot falls below
    1e-12 times the lift's Frobenius norm; this same threshold is the
    package-wide invertibility test.
    """
    if a.n_rows != a.n_cols:
        raise NonSquareError("inverse is defined for square matrices")
    chi = complex_adjoint(a)
    tol = INVERTIBILITY_REL * float(np.linalg.norm(chi))
    inv_chi = inverse_complex(chi, min_pivot=tol)
    return from_complex_adjoint_blocks(inv_chi, a.n_rows)


def is_invertible(a: QuaternionMatrix) -> bool:
    try:
        inverse(a)
    except SingularMatrixError:
        return False
    return True
