"""Forward-mode automatic differentiation to second and third order.

A :class:`Jet2` carries the value, gradient and Hessian of a scalar quantity
with respect to ``n`` chart variables; a :class:`Jet3` additionally carries
the symmetric third-derivative tensor (needed when a metric is induced by an
embedding, since the metric's second derivatives involve third derivatives of
the embedding).  Both are batched: every component has a leading axis of
``npoints`` so that whole quadrature grids are differentiated with numpy
arithmetic instead of per-point Python loops.

The arithmetic is dtype-generic.  With ``float64`` arrays it is the fast
path; with ``object`` arrays of :class:`fractions.Fraction` the same code
produces exact rational derivatives (used for the polynomial metrics where
reference values are exact).

Central finite differences are provided as an independent oracle
(:func:`finite_difference_jet`); they share no code with the jet classes.
"""

from __future__ import annotations

import numpy as np

from .errors import NonFiniteError

__all__ = [
    "Jet2",
    "Jet3",
    "variables",
    "second_jet",
    "finite_difference_jet",
    "sin",
    "cos",
    "exp",
    "sqrt",
    "log",
]


def _outer(a, b):
    # batched outer product: (N,n) x (N,n) -> (N,n,n)
    return a[:, :, None] * b[:, None, :]


def _sym3(g, h):
    # symmetrized grad (x) hess: (N,n) x (N,n,n) -> (N,n,n,n)
    return (
        g[:, :, None, None] * h[:, None, :, :]
        + g[:, None, :, None] * h[:, :, None, :]
        + g[:, None, None, :] * h[:, :, :, None]
    )


class Jet2:
    """Value, gradient and Hessian of a scalar, batched over points.

    Parameters
    ----------
    value : ndarray, shape (npoints,)
    grad : ndarray, shape (npoints, nvars)
    hess : ndarray, shape (npoints, nvars, nvars), symmetric
    """

    order = 2
    __array_priority__ = 100  # our dunders win over ndarray's

    def __init__(self, value, grad, hess):
        self.value = value
        self.grad = grad
        self.hess = hess

    @property
    def nvars(self):
        return self.grad.shape[1]

    def _like(self, value, grad, hess, third=None):
        return Jet2(value, grad, hess)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            out = [self.value + other.value, self.grad + other.grad, self.hess + other.hess]
            if self.order == 3:
                out.append(self.third + other.third)
            return self._like(*out)
        out = [self.value + other, self.grad, self.hess]
        if self.order == 3:
            out.append(self.third)
        return self._like(*out)

    __radd__ = __add__

    def __neg__(self):
        out = [-self.value, -self.grad, -self.hess]
        if self.order == 3:
            out.append(-self.third)
        return self._like(*out)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet2):
            a, b = self, other
            value = a.value * b.value
            grad = a.value[:, None] * b.grad + b.value[:, None] * a.grad
            hess = (
                a.value[:, None, None] * b.hess
                + b.value[:, None, None] * a.hess
                + _outer(a.grad, b.grad)
                + _outer(b.grad, a.grad)
            )
            if self.order == 3:
                third = (
                    a.value[:, None, None, None] * b.third
                    + b.value[:, None, None, None] * a.third
                    + _sym3(a.grad, b.hess)
                    + _sym3(b.grad, a.hess)
                )
                return self._like(value, grad, hess, third)
            return self._like(value, grad, hess)
        out = [self.value * other, self.grad * other, self.hess * other]
        if self.order == 3:
            out.append(self.third * other)
        return self._like(*out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other._reciprocal()
        return self * _invert_scalar(other)

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, int) and not isinstance(p, bool):
            if p == 0:
                return 1 + (self * 0)  # jet of the constant 1
            if p < 0:
                return (self ** (-p))._reciprocal()
            result = self
            for _ in range(p - 1):
                result = result * self
            return result
        return exp(log(self) * p)

    # -- composition with scalar functions ---------------------------------

    def _compose(self, d0, d1, d2, d3=None):
        """Chain rule for a scalar function with derivative values d0..d3."""
        value = d0
        grad = d1[:, None] * self.grad
        hess = d1[:, None, None] * self.hess + d2[:, None, None] * _outer(self.grad, self.grad)
        if self.order == 3:
            gg = _outer(self.grad, self.grad)
            third = (
                d1[:, None, None, None] * self.third
                + d2[:, None, None, None] * _sym3(self.grad, self.hess)
                + d3[:, None, None, None] * (gg[:, :, :, None] * self.grad[:, None, None, :])
            )
            return self._like(value, grad, hess, third)
        return self._like(value, grad, hess)

    def _reciprocal(self):
        v = self.value
        inv = _invert_array(v)
        inv2 = inv * inv
        d3 = (-6) * inv2 * inv2 if self.order == 3 else None
        return self._compose(inv, -inv2, 2 * inv2 * inv, d3)

    def __repr__(self):
        return "%s(npoints=%d, nvars=%d)" % (type(self).__name__, len(self.value), self.nvars)


class Jet3(Jet2):
    """Like :class:`Jet2` with the symmetric third-derivative tensor added.

    ``third`` has shape (npoints, nvars, nvars, nvars).
    """

    order = 3

    def __init__(self, value, grad, hess, third):
        super().__init__(value, grad, hess)
        self.third = third

    def _like(self, value, grad, hess, third=None):
        return Jet3(value, grad, hess, third)


def _invert_scalar(c):
    from fractions import Fraction

    if isinstance(c, (int, Fraction)):
        return Fraction(1, 1) / c
    return 1.0 / c


def _invert_array(v):
    if v.dtype == object:
        from fractions import Fraction

        return np.array([Fraction(1, 1) / x for x in v.ravel()], dtype=object).reshape(v.shape)
    return 1.0 / v


def variables(x, order=2):
    """Seed independent variables from chart points.

    Parameters
    ----------
    x : array_like, shape (npoints, nvars) or (nvars,)
        Chart coordinates.  dtype may be float or object (Fraction).
    order : int
        2 for :class:`Jet2`, 3 for :class:`Jet3`.

    Returns
    -------
    list of Jet2/Jet3, one per chart variable.
    """
    x = np.asarray(x)
    if x.ndim == 1:
        x = x[None, :]
    npts, n = x.shape
    dtype = x.dtype
    out = []
    for k in range(n):
        grad = np.zeros((npts, n), dtype=dtype)
        if dtype == object:
            grad[:, k] = 1
        else:
            grad[:, k] = 1.0
        hess = np.zeros((npts, n, n), dtype=dtype)
        if order == 2:
            out.append(Jet2(x[:, k].copy(), grad, hess))
        elif order == 3:
            third = np.zeros((npts, n, n, n), dtype=dtype)
            out.append(Jet3(x[:, k].copy(), grad, hess, third))
        else:
            raise ValueError("order must be 2 or 3")
    return out


def constant_jet(c, template):
    """A jet with constant value ``c`` and vanishing derivatives."""
    return template * 0 + c


def second_jet(field, x):
    """Value, gradient and Hessian of a scalar field at a single point.

    Parameters
    ----------
    field : callable
        Takes a list of jet variables (one per coordinate) and returns a jet
        (or a constant).
    x : array_like, shape (nvars,)

    Returns
    -------
    (value, gradient, hessian) : float, (nvars,) ndarray, (nvars, nvars) ndarray

    Raises
    ------
    NonFiniteError
        If any derivative is NaN or infinite.
    """
    x = np.asarray(x)
    jet = field(variables(x[None, :], order=2))
    if not isinstance(jet, Jet2):  # constant field
        z = np.zeros(len(x))
        return float(jet), z, np.zeros((len(x), len(x)))
    if jet.value.dtype != object:
        finite = (
            np.all(np.isfinite(jet.value))
            and np.all(np.isfinite(jet.grad))
            and np.all(np.isfinite(jet.hess))
        )
        if not finite:
            raise NonFiniteError("non-finite derivative at x=%r" % (x.tolist(),))
    return jet.value[0], jet.grad[0], jet.hess[0]


# -- scalar functions usable on jets, arrays and floats ---------------------


def _dispatch(x, fn, derivs):
    if isinstance(x, Jet2):
        v = fn(x.value)
        ds = derivs(x.value)
        d3 = ds[2] if x.order == 3 else None
        out = x._compose(v, ds[0], ds[1], d3)
        if out.value.dtype != object and not np.all(np.isfinite(out.value)):
            raise NonFiniteError("non-finite value in %s" % fn.__name__)
        return out
    return fn(x)


def sin(x):
    return _dispatch(x, np.sin, lambda v: (np.cos(v), -np.sin(v), -np.cos(v)))


def cos(x):
    return _dispatch(x, np.cos, lambda v: (-np.sin(v), -np.cos(v), np.sin(v)))


def exp(x):
    return _dispatch(x, np.exp, lambda v: (np.exp(v), np.exp(v), np.exp(v)))


def sqrt(x):
    def derivs(v):
        r = np.sqrt(v)
        return (0.5 / r, -0.25 / (r * v), 0.375 / (r * v * v))

    return _dispatch(x, np.sqrt, derivs)


def log(x):
    return _dispatch(x, np.log, lambda v: (1.0 / v, -1.0 / v**2, 2.0 / v**3))


# -- independent oracle ------------------------------------------------------


def finite_difference_jet(f, x, h=1e-5):
    """Central finite-difference (value, gradient, Hessian) of ``f`` at ``x``.

    ``f`` maps a plain coordinate vector to a float.  Used as an oracle
    against the hyper-dual path; shares no code with it.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    value = f(x)
    grad = np.zeros(n)
    hess = np.zeros((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        grad[i] = (f(x + e) - f(x - e)) / (2 * h)
        hess[i, i] = (f(x + e) - 2 * value + f(x - e)) / h**2
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            hess[i, j] = hess[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4 * h**2)
    return value, grad, hess
