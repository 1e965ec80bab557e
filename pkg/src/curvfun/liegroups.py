"""Bi-invariant curvature of compact Lie groups from structure constants.

Given an orthonormal basis e_1..e_n of a Lie algebra with a bi-invariant
inner product, the structure constants alpha[i, j, k] = <[e_i, e_j], e_k>
are totally antisymmetric and the sectional curvature of the (e_i, e_j)
plane is K_ij = |[e_i, e_j]|^2 / 4 = sum_k alpha[i, j, k]^2 / 4.

Built-ins:

* ``su3()``  -- su(3) in the Gell-Mann basis e_a = i lambda_a / 2,
  orthonormal under <A, B> = -2 Re tr(AB).  Exact sectional matrix via
  symbolic commutators (entries are rationals even though some structure
  constants involve sqrt(3)).
* ``so4()``  -- so(4) in the product-aligned basis splitting it into two
  commuting so(3) factors, orthonormal under <X, Y> = -tr(XY).  Exact.
* ``so3()``  -- so(3) with <X, Y> = -tr(XY)/2, alpha = Levi-Civita.

The inner-product normalizations are chosen so the published sectional
values (entries 0, 1/16, 3/16, 1/4 for su(3); 1/4-blocks for so(4)) come
out exactly; each built-in records its scaling relative to the negative
Killing form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    BadDimensionError,
    NonOrthonormalFrameError,
    NotBiInvariantError,
    NotClosedError,
)
from .functionals import k_discrete, matching_sum, perm_sum

__all__ = [
    "LieAlgebra",
    "structure_constants",
    "biinvariant_sectional",
    "gamma_d_group",
    "rotate_algebra",
    "su3",
    "so4",
    "so3",
    "load_algebra",
    "builtin_algebra",
]

TOL = 1e-10


@dataclass
class LieAlgebra:
    """Structure constants of a metric Lie algebra in an orthonormal basis.

    ``alpha[i, j, k] = <[e_i, e_j], e_k>``.  ``k_exact`` holds the exact
    rational sectional matrix when the built-in construction provides one.
    """

    name: str
    alpha: np.ndarray
    k_exact: np.ndarray = field(default=None, repr=False)
    metric_note: str = ""

    @property
    def dim(self):
        return self.alpha.shape[0]

    def jacobi_residual(self):
        a = self.alpha
        r = (
            np.einsum("ijm,mkl->ijkl", a, a)
            + np.einsum("jkm,mil->ijkl", a, a)
            + np.einsum("kim,mjl->ijkl", a, a)
        )
        return float(np.max(np.abs(r)))

    def validate(self, tol=TOL):
        a = self.alpha
        if np.max(np.abs(a + np.swapaxes(a, 0, 1))) > tol:
            raise NotClosedError("structure constants not antisymmetric in (i, j)")
        if self.jacobi_residual() > tol:
            raise NotClosedError("Jacobi identity violated beyond tolerance")
        return self


def _total_antisymmetry_defect(alpha):
    return float(np.max(np.abs(alpha + np.swapaxes(alpha, 1, 2))))


def structure_constants(basis, inner, tol=TOL):
    """Structure constants of a matrix Lie algebra basis.

    ``basis`` is a sequence of square matrices, ``inner(A, B)`` the inner
    product.  The basis must be orthonormal under ``inner`` and closed
    under commutators: the residual of each commutator after projection
    back onto the span must vanish to ``tol``, else :class:`NotClosedError`.
    """
    n = len(basis)
    gram = np.array([[inner(basis[i], basis[j]) for j in range(n)] for i in range(n)], dtype=float)
    if np.max(np.abs(gram - np.eye(n))) > 1e-8:
        raise NonOrthonormalFrameError("basis is not orthonormal under the given inner product")
    alpha = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            br = basis[i] @ basis[j] - basis[j] @ basis[i]
            coeffs = np.array([inner(br, basis[k]) for k in range(n)])
            alpha[i, j] = coeffs
            resid = br - sum(coeffs[k] * basis[k] for k in range(n))
            if np.max(np.abs(resid)) > tol:
                raise NotClosedError(
                    "commutator [e_%d, e_%d] leaves the span (residual %.2e)"
                    % (i, j, float(np.max(np.abs(resid))))
                )
    return alpha


def biinvariant_sectional(algebra, i=None, j=None, tol=TOL):
    """Sectional curvature K_ij = sum_k alpha_ijk^2 / 4 (full matrix or entry).

    Requires total antisymmetry of alpha (the bi-invariance condition);
    raises :class:`NotBiInvariantError` otherwise.
    """
    alpha = algebra.alpha if isinstance(algebra, LieAlgebra) else np.asarray(algebra)
    if _total_antisymmetry_defect(alpha) > tol:
        raise NotBiInvariantError(
            "structure constants are not totally antisymmetric; metric is not bi-invariant"
        )
    k = np.einsum("ijk,ijk->ij", alpha, alpha) / 4.0
    if i is None:
        return k
    return float(k[i, j])


def sectional_exact(algebra):
    """Exact rational sectional matrix (built-ins only)."""
    if algebra.k_exact is None:
        raise ValueError("no exact sectional matrix available for %r" % algebra.name)
    return algebra.k_exact


def gamma_d_group(algebra, volume):
    """k_discrete of the (constant) sectional matrix times the group volume."""
    if algebra.dim % 2 != 0:
        raise BadDimensionError("even-dimensional algebra required, got %d" % algebra.dim)
    return k_discrete(biinvariant_sectional(algebra)) * volume


def pairing_sums_exact(algebra):
    """Exact (matching_sum, perm_sum) of the rational sectional matrix."""
    k = sectional_exact(algebra)
    return matching_sum(k), perm_sum(k)


def rotate_algebra(algebra, q):
    """Structure constants after the orthogonal change of basis e' = q e."""
    q = np.asarray(q, dtype=float)
    if np.max(np.abs(q @ q.T - np.eye(len(q)))) > 1e-8:
        raise NonOrthonormalFrameError("basis change must be orthogonal")
    alpha = np.einsum("ai,bj,ck,ijk->abc", q, q, q, algebra.alpha, optimize=True)
    return LieAlgebra(
        name="%s-rotated" % algebra.name,
        alpha=alpha,
        metric_note=algebra.metric_note,
    )


# -- built-ins ----------------------------------------------------------------


def _frac_mat(rows):
    return np.array([[Fraction(v) for v in row] for row in rows], dtype=object)


def _exact_structure(basis, inner):
    """Fraction-exact structure constants for rational matrix bases."""
    n = len(basis)
    for i in range(n):
        for j in range(n):
            want = Fraction(1) if i == j else Fraction(0)
            if inner(basis[i], basis[j]) != want:
                raise NonOrthonormalFrameError("exact basis not orthonormal")
    alpha = np.zeros((n, n, n), dtype=object)
    alpha[...] = Fraction(0)
    for i in range(n):
        for j in range(n):
            br = basis[i] @ basis[j] - basis[j] @ basis[i]
            for k in range(n):
                alpha[i, j, k] = inner(br, basis[k])
    return alpha


def _k_from_alpha_exact(alpha):
    n = alpha.shape[0]
    k = np.zeros((n, n), dtype=object)
    k[...] = Fraction(0)
    for i in range(n):
        for j in range(n):
            k[i, j] = sum((alpha[i, j, c] ** 2 for c in range(n)), Fraction(0)) / 4
    return k


@lru_cache(maxsize=None)
def so3():
    """so(3), orthonormal under <X, Y> = -tr(XY)/2; alpha = Levi-Civita."""
    z, o = Fraction(0), Fraction(1)
    l1 = _frac_mat([[z, z, z], [z, z, -o], [z, o, z]])
    l2 = _frac_mat([[z, z, o], [z, z, z], [-o, z, z]])
    l3 = _frac_mat([[z, -o, z], [o, z, z], [z, z, z]])

    def inner(a, b):
        return -sum((a @ b)[i, i] for i in range(3)) / 2

    alpha = _exact_structure([l1, l2, l3], inner)
    return LieAlgebra(
        name="so3",
        alpha=alpha.astype(float),
        k_exact=_k_from_alpha_exact(alpha),
        metric_note="inner product -tr(XY)/2; equals -Killing/2 for so(3)",
    )


@lru_cache(maxsize=None)
def so4():
    """so(4) in the basis aligned with its so(3) x so(3) splitting.

    A_i span one commuting so(3) factor and B_i the other; mixed brackets
    vanish, so mixed-plane sectional curvature is identically zero.
    Orthonormal under <X, Y> = -tr(XY) (which is -Killing/2 for so(4)).
    """

    def L(i, j):
        m = np.zeros((4, 4), dtype=object)
        m[...] = Fraction(0)
        m[i - 1, j - 1] = Fraction(1)
        m[j - 1, i - 1] = Fraction(-1)
        return m

    half = Fraction(1, 2)
    a1 = -half * (L(1, 4) + L(2, 3))
    a2 = half * (L(1, 3) - L(2, 4))
    a3 = -half * (L(1, 2) + L(3, 4))
    b1 = half * (L(1, 4) - L(2, 3))
    b2 = half * (L(1, 3) + L(2, 4))
    b3 = half * (L(3, 4) - L(1, 2))

    def inner(x, y):
        return -sum((x @ y)[i, i] for i in range(4))

    alpha = _exact_structure([a1, a2, a3, b1, b2, b3], inner)
    return LieAlgebra(
        name="so4",
        alpha=alpha.astype(float),
        k_exact=_k_from_alpha_exact(alpha),
        metric_note="inner product -tr(XY) = -Killing/2 for so(4)",
    )


@lru_cache(maxsize=None)
def su3():
    """su(3) in the basis e_a = i lambda_a / 2 (Gell-Mann matrices).

    Orthonormal under <A, B> = -2 Re tr(AB); this is 2/3 of -Killing/2
    (the Killing form of su(3) is 6 tr(XY) on anti-Hermitian matrices).
    Structure constants live in {0, +-1, +-1/2, +-sqrt(3)/2}; the exact
    sectional matrix is rational and computed symbolically.
    """
    import sympy as sp

    s3 = sp.sqrt(3)
    lam = [
        sp.Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        sp.Matrix([[0, -sp.I, 0], [sp.I, 0, 0], [0, 0, 0]]),
        sp.Matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        sp.Matrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        sp.Matrix([[0, 0, -sp.I], [0, 0, 0], [sp.I, 0, 0]]),
        sp.Matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        sp.Matrix([[0, 0, 0], [0, 0, -sp.I], [0, sp.I, 0]]),
        sp.Matrix([[1, 0, 0], [0, 1, 0], [0, 0, -2]]) / s3,
    ]
    basis = [sp.I * m / 2 for m in lam]

    def inner(a, b):
        return sp.simplify(sp.re(sp.trace(a * b))) * (-2)

    n = 8
    for i in range(n):
        for j in range(i, n):
            want = 1 if i == j else 0
            if sp.simplify(inner(basis[i], basis[j]) - want) != 0:
                raise NonOrthonormalFrameError("Gell-Mann basis failed orthonormality")
    alpha_sym = [[[None] * n for _ in range(n)] for _ in range(n)]
    alpha = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            br = basis[i] * basis[j] - basis[j] * basis[i]
            for k in range(n):
                val = sp.simplify(inner(br, basis[k]))
                alpha_sym[i][j][k] = val
                alpha[i, j, k] = float(val)
    k_exact = np.zeros((n, n), dtype=object)
    k_exact[...] = Fraction(0)
    for i in range(n):
        for j in range(n):
            val = sp.simplify(sum(alpha_sym[i][j][k] ** 2 for k in range(n)) / 4)
            val = sp.nsimplify(val, rational=True)
            k_exact[i, j] = Fraction(int(sp.numer(val)), int(sp.denom(val)))
    return LieAlgebra(
        name="su3",
        alpha=alpha,
        k_exact=k_exact,
        metric_note="inner product -2 Re tr(AB) = (2/3) * (-Killing/2) for su(3)",
    )


def builtin_algebra(name):
    table = {"su3": su3, "so4": so4, "so3": so3}
    if name not in table:
        raise ValueError("unknown built-in algebra %r" % name)
    return table[name]()


# -- JSON user algebras --------------------------------------------------------


def _matrix_from_json(rows):
    def entry(v):
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError("complex entries must be [re, im] pairs")
            return complex(v[0], v[1])
        return complex(v)

    return np.array([[entry(v) for v in row] for row in rows])


_INNER_PRODUCTS = {
    "neg_trace": lambda a, b: float(-np.trace(a @ b).real),
    "neg_half_trace": lambda a, b: float(-np.trace(a @ b).real / 2),
    "neg_two_re_trace": lambda a, b: float(-2 * np.trace(a @ b).real),
}


def load_algebra(path):
    """Load a Lie algebra from JSON.

    Two forms are accepted::

        {"name": ..., "basis": [matrix, ...], "inner": "neg_trace"}
        {"name": ..., "dimension": n,
         "structure_constants": [[i, j, k, value], ...]}   # 1-based indices

    Matrix entries may be numbers or ``[re, im]`` pairs.  Structure
    constants are completed by antisymmetry in (i, j): each listed
    ``alpha[i, j, k]`` also sets ``-alpha[j, i, k]``.
    """
    with open(path) as fh:
        data = json.load(fh)
    name = data.get("name", "user-algebra")
    if "basis" in data:
        basis = [_matrix_from_json(rows) for rows in data["basis"]]
        inner_name = data.get("inner", "neg_trace")
        if inner_name not in _INNER_PRODUCTS:
            raise ValueError("unknown inner product %r" % inner_name)
        alpha = structure_constants(basis, _INNER_PRODUCTS[inner_name])
        note = "inner product %s from user file" % inner_name
    elif "structure_constants" in data:
        n = int(data["dimension"])
        alpha = np.zeros((n, n, n))
        for item in data["structure_constants"]:
            i, j, k, v = item
            alpha[i - 1, j - 1, k - 1] = v
            alpha[j - 1, i - 1, k - 1] = -v
        note = "structure constants from user file (orthonormal basis assumed)"
    else:
        raise ValueError("algebra file needs either 'basis' or 'structure_constants'")
    return LieAlgebra(name=name, alpha=alpha, metric_note=note).validate()
