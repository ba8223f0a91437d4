"""Shared random generators for the test suite (all seeded by callers)."""

import numpy as np

from quatpoly import (
    MatrixPolynomial,
    Quaternion,
    QuaternionMatrix,
    SingularMatrixError,
    inverse,
    qvec,
)


def random_quaternion(rng, scale=1.0):
    w, x, y, z = scale * rng.standard_normal(4)
    return Quaternion(w, x, y, z)


def random_unit_quaternion(rng):
    while True:
        q = random_quaternion(rng)
        m = q.modulus()
        if m > 1e-6:
            return q / m


def random_unit_imaginary(rng):
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return Quaternion(0.0, v[0] / n, v[1] / n, v[2] / n)


def random_qmatrix(rng, n, scale=1.0):
    return QuaternionMatrix.from_rows(
        [[random_quaternion(rng, scale) for _ in range(n)] for _ in range(n)])


def random_invertible_qmatrix(rng, n):
    while True:
        a = random_qmatrix(rng, n)
        try:
            inverse(a)
        except SingularMatrixError:
            continue
        return a


def random_polynomial(rng, n, m, invertible_ends=False):
    coeffs = [random_qmatrix(rng, n) for _ in range(m + 1)]
    if invertible_ends:
        coeffs[0] = random_invertible_qmatrix(rng, n)
        coeffs[-1] = random_invertible_qmatrix(rng, n)
    return MatrixPolynomial(coeffs)


def random_unit_qvec(rng, n):
    while True:
        raw = rng.standard_normal(4 * n)
        norm = np.linalg.norm(raw)
        if norm > 1e-9:
            entries = [Quaternion(*raw[4 * t:4 * t + 4] / norm) for t in range(n)]
            return qvec(entries)
