"""Multivariate right quaternion matrix polynomials in noncommuting letters.

Terms are (word, coefficient) pairs where a word is an ordered tuple of
variable indices; substituting quaternions multiplies the letters left to
right, so word order matters.  Stability over a finite probe set is decided
exactly through realification, one tuple at a time, and the quadratic and
cubic derivation rules turn multivariate stability into hyperstability of
the matching univariate polynomial.  The rules are one-directional: when
multivariate stability fails, the univariate verdict stays UNKNOWN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError, ZeroInOmegaError
from .linalg import (
    QuaternionMatrix,
    qvec,
    rank_decision,
    real_rep_left,
    real_rep_right_scalar,
    vec4_to_qvec,
)
from .quaternion import Quaternion
from .stability import HyperStatus, HyperVerdict, Region, RegionKind, StabilityStatus

Word = tuple[int, ...]


def _normalize_word(word: Sequence[int], k: int) -> Word:
    letters = tuple(int(v) for v in word)
    if any(v < 1 or v > k for v in letters):
        raise ValueError(f"word {letters} uses letters outside 1..{k}")
    return letters


@dataclass(frozen=True)
class MultiPolynomial:
    """sum over words w of A_w * w(t_1, ..., t_k)."""

    k: int
    terms: tuple[tuple[Word, QuaternionMatrix], ...]

    @classmethod
    def build(cls, k: int, terms) -> "MultiPolynomial":
        if k < 1:
            raise ValueError("need at least one variable")
        merged: dict[Word, QuaternionMatrix] = {}
        size = None
        for word, coeff in terms:
            word = _normalize_word(word, k)
            if coeff.n_rows != coeff.n_cols:
                raise ValueError("coefficients must be square")
            if size is None:
                size = coeff.n_rows
            elif coeff.n_rows != size:
                raise ValueError("coefficients must share one dimension")
            merged[word] = merged[word] + coeff if word in merged else coeff.copy()
        kept = tuple(sorted(((w, c) for w, c in merged.items() if not c.is_zero()),
                            key=lambda item: (len(item[0]), item[0])))
        if not kept:
            raise ValueError("polynomial needs at least one nonzero coefficient")
        return cls(k, kept)

    @property
    def size(self) -> int:
        return self.terms[0][1].n_rows

    @property
    def degree(self) -> int:
        return max(len(w) for w, _ in self.terms)


def eval_word(word: Sequence[int], mus: Sequence[Quaternion]) -> Quaternion:
    """Ordered left-to-right product of the substituted letters."""
    acc = Quaternion.ONE
    for letter in word:
        idx = int(letter) - 1
        if idx < 0 or idx >= len(mus):
            raise ValueError(f"letter {letter} outside 1..{len(mus)}")
        acc = acc * mus[idx]
    return acc


def eval_action_multi(p: MultiPolynomial, y, mus: Sequence[Quaternion]) -> QuaternionMatrix:
    """sum over terms of A_w y w(mu_1, ..., mu_k)."""
    if len(mus) != p.k:
        raise DimensionMismatchError(
            f"expected {p.k} substitution values, got {len(mus)}")
    v = y if isinstance(y, QuaternionMatrix) else qvec(y)
    if v.n_cols != 1 or v.n_rows != p.size:
        raise DimensionMismatchError(
            f"vector has shape {v.shape}, expected ({p.size}, 1)")
    acc = QuaternionMatrix.zeros(p.size, 1)
    for word, coeff in p.terms:
        acc = acc + (coeff @ v).scale_right(eval_word(word, mus))
    return acc


@dataclass
class MultiStabilityVerdict:
    status: StabilityStatus
    certificate: str
    witness_tuple: Optional[tuple[Quaternion, ...]] = None
    witness_vector: Optional[QuaternionMatrix] = None


def check_stability_multi(p: MultiPolynomial, omega: Region) -> MultiStabilityVerdict:
    """Exact stability over omega^k for a finite probe set omega.

    Every tuple is realified and rank-tested; the verdict reports the first
    singular tuple (in lexicographic tuple order) with a kernel vector, so
    the result is independent of any sharding of the loop.
    """
    if omega.kind is not RegionKind.FINITE_SET:
        raise ValueError("multivariate stability is decided over finite sets only")
    n = p.size
    lefts = [(word, real_rep_left(coeff)) for word, coeff in p.terms]
    undecided = False
    for tup in itertools.product(omega.points, repeat=p.k):
        op = np.zeros((4 * n, 4 * n))
        for word, left in lefts:
            op += left @ real_rep_right_scalar(eval_word(word, tup), n)
        status, kernel = rank_decision(op)
        if status == "singular":
            vec = vec4_to_qvec(kernel / np.linalg.norm(kernel))
            return MultiStabilityVerdict(StabilityStatus.NOT_STABLE,
                                         "realified-tuple-test",
                                         witness_tuple=tup,
                                         witness_vector=vec)
        if status == "unknown":
            undecided = True
    if undecided:
        return MultiStabilityVerdict(StabilityStatus.UNKNOWN,
                                     "realified-tuple-test-deadband")
    return MultiStabilityVerdict(StabilityStatus.STABLE, "realified-tuple-test")


def _require_zero_free(omega: Region) -> None:
    if any(q.modulus() <= 1e-12 for q in omega.points):
        raise ZeroInOmegaError("the probe set must not contain 0")


def _check_square_triple(*mats: QuaternionMatrix) -> int:
    size = mats[0].n_rows
    for m in mats:
        if m.n_rows != m.n_cols or m.n_rows != size:
            raise ValueError("coefficients must be square and share one dimension")
    return size


def derive_hyperstability_quadratic(a2: QuaternionMatrix, a1: QuaternionMatrix,
                                    a0: QuaternionMatrix, omega: Region,
                                    form: str) -> HyperVerdict:
    """Hyperstability of A_2 t^2 + A_1 t + A_0 from two-variable stability.

    Form "i" checks A_2 u^2 + A_1 v + A_0 over omega^2; form "ii" checks
    A_2 u v + A_1 v + A_0 and additionally requires 0 outside omega.  Only
    the positive direction transfers: anything short of STABLE returns
    UNKNOWN.
    """
    if form not in ("i", "ii"):
        raise ValueError("form must be 'i' or 'ii'")
    if omega.kind is not RegionKind.FINITE_SET:
        raise ValueError("derivation rules run over finite probe sets only")
    _check_square_triple(a2, a1, a0)
    if form == "ii":
        _require_zero_free(omega)
    lead_word: Word = (1, 1) if form == "i" else (1, 2)
    multi = MultiPolynomial.build(2, [(lead_word, a2), ((2,), a1), ((), a0)])
    verdict = check_stability_multi(multi, omega)
    certificate = f"multivariate-quadratic-{form}"
    if verdict.status is StabilityStatus.STABLE:
        return HyperVerdict(HyperStatus.HYPERSTABLE, certificate)
    return HyperVerdict(HyperStatus.UNKNOWN,
                        certificate + " (multivariate stability not established)",
                        details={"multivariate_status": verdict.status.value})


def derive_hyperstability_cubic(c3: QuaternionMatrix, c2: QuaternionMatrix,
                                c1: QuaternionMatrix, c0: QuaternionMatrix,
                                omega: Region, *,
                                leading: str = "literal") -> HyperVerdict:
    """Hyperstability of a cubic from stability of C_a v^3 + C_2 u v + C_1 u + C_0.

    The published form of the rule repeats the constant coefficient in the
    leading position; ``leading`` selects between that literal reading
    ("literal", C_a = C_0) and the plausible-typo reading ("a3", C_a = C_3).
    Requires 0 outside omega; one-directional like the quadratic rule.
    """
    if leading not in ("literal", "a3"):
        raise ValueError("leading must be 'literal' or 'a3'")
    if omega.kind is not RegionKind.FINITE_SET:
        raise ValueError("derivation rules run over finite probe sets only")
    _check_square_triple(c3, c2, c1, c0)
    _require_zero_free(omega)
    ca = c0 if leading == "literal" else c3
    multi = MultiPolynomial.build(2, [((2, 2, 2), ca), ((1, 2), c2),
                                      ((1,), c1), ((), c0)])
    verdict = check_stability_multi(multi, omega)
    certificate = f"multivariate-cubic-{leading}"
    if verdict.status is StabilityStatus.STABLE:
        return HyperVerdict(HyperStatus.HYPERSTABLE, certificate)
    return HyperVerdict(HyperStatus.UNKNOWN,
                        certificate + " (multivariate stability not established)",
                        details={"multivariate_status": verdict.status.value})
