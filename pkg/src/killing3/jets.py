"""Truncated bivariate jets: values plus partial derivatives in (r, theta).

A jet carries all partial derivatives up to total order 3 and supports exact
arithmetic (sums, products, quotients, elementary functions), so every
quantity assembled from analytic metric data -- Christoffel symbols, curvature,
spin coefficients, Cotton-York entries -- inherits machine-precision
derivatives without numerical differentiation.

Coefficients may be scalars or numpy arrays (a batch of points evaluated at
once), and may be real or complex.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import JetOrderError

MAX_ORDER = 3

#: multi-indices (i, j) meaning d^{i+j} f / dr^i dtheta^j, total order <= 3
INDEX = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]
K = len(INDEX)
_POS = {ij: k for k, ij in enumerate(INDEX)}


def _build_mul_table():
    # (fg)^(i,j) = sum C(i,a) C(j,b) f^(a,b) g^(i-a, j-b)
    m = np.zeros((K, K, K))
    for ko, (i, j) in enumerate(INDEX):
        for ka, (a, b) in enumerate(INDEX):
            if a <= i and b <= j:
                kb = _POS[(i - a, j - b)]
                m[ko, ka, kb] = comb(i, a) * comb(j, b)
    return m


_MUL = _build_mul_table()

# index shifts implementing d/dr and d/dtheta on the coefficient vector
_SHIFT_R = [_POS.get((i + 1, j), -1) for (i, j) in INDEX]
_SHIFT_T = [_POS.get((i, j + 1), -1) for (i, j) in INDEX]


class Jet2:
    """Value and partial derivatives of a scalar at a point of the (r, theta) plane.

    ``coeffs[k]`` holds the derivative for multi-index ``INDEX[k]``; entries with
    total order above ``order`` are not meaningful and are guarded by :meth:`d`.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=MAX_ORDER):
        self.coeffs = np.asarray(coeffs)
        self.order = int(order)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def constant(value, order=MAX_ORDER, batch_like=None):
        value = np.asarray(value)
        if batch_like is not None:
            value = np.broadcast_to(value, np.shape(batch_like)).copy()
        c = np.zeros((K,) + value.shape, dtype=value.dtype if value.dtype.kind in "fc" else float)
        c[0] = value
        return Jet2(c, order)

    @staticmethod
    def variable(value, slot, order=MAX_ORDER):
        """Coordinate jet: slot 'r' or 'theta'."""
        j = Jet2.constant(np.asarray(value, dtype=float), order)
        k = _POS[(1, 0)] if slot == "r" else _POS[(0, 1)]
        j.coeffs[k] = 1.0
        return j

    # -- accessors ----------------------------------------------------------

    def d(self, i, j):
        """Partial derivative d^{i+j}/dr^i dtheta^j; errors above the jet order."""
        if i + j > self.order:
            raise JetOrderError(f"derivative ({i},{j}) beyond jet order {self.order}")
        return self.coeffs[_POS[(i, j)]]

    @property
    def value(self):
        return self.coeffs[0]

    @property
    def d_r(self):
        return self.d(1, 0)

    @property
    def d_theta(self):
        return self.d(0, 1)

    @property
    def d_rr(self):
        return self.d(2, 0)

    @property
    def d_rtheta(self):
        return self.d(1, 1)

    @property
    def d_thetatheta(self):
        return self.d(0, 2)

    @property
    def d_rrr(self):
        return self.d(3, 0)

    @property
    def d_rrtheta(self):
        return self.d(2, 1)

    @property
    def d_rthetatheta(self):
        return self.d(1, 2)

    @property
    def d_thetathetatheta(self):
        return self.d(0, 3)

    # -- differentiation ----------------------------------------------------

    def deriv(self, slot):
        """The jet of df/dr or df/dtheta; one order lower."""
        if self.order < 1:
            raise JetOrderError("cannot differentiate an order-0 jet")
        shift = _SHIFT_R if slot == "r" else _SHIFT_T
        c = np.zeros_like(self.coeffs)
        for k, ks in enumerate(shift):
            if ks >= 0:
                c[k] = self.coeffs[ks]
        return Jet2(c, self.order - 1)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet2):
            return other
        return Jet2.constant(np.asarray(other), MAX_ORDER)

    @staticmethod
    def _align(a, b):
        # pad trailing batch axes so (10,) constants broadcast against (10, ...)
        while a.ndim < b.ndim:
            a = a[(...,) + (np.newaxis,)]
        while b.ndim < a.ndim:
            b = b[(...,) + (np.newaxis,)]
        return a, b

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self._align(self.coeffs, other.coeffs)
        return Jet2(a + b, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.coeffs, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.coeffs * np.asarray(other), self.order)
        c = np.einsum("oab,a...,b...->o...", _MUL, self.coeffs, other.coeffs)
        return Jet2(c, min(self.order, other.order))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.coeffs / np.asarray(other), self.order)
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        return self._coerce(other) * reciprocal(self)

    def conj(self):
        return Jet2(np.conj(self.coeffs), self.order)

    @property
    def real(self):
        return Jet2(np.real(self.coeffs), self.order)

    @property
    def imag(self):
        return Jet2(np.imag(self.coeffs), self.order)

    def __repr__(self):
        return f"Jet2(order={self.order}, value={self.value!r})"


#: spec-facing alias: a scalar value with its partials up to the declared order
ScalarJet = Jet2


def variables(r, theta, order=MAX_ORDER):
    """Coordinate jets (r, theta); accepts scalars or equally-shaped arrays."""
    return Jet2.variable(r, "r", order), Jet2.variable(theta, "theta", order)


def compose(f, derivs):
    """Univariate composition F(f) given [F(f0), F'(f0), F''(f0), F'''(f0)].

    Works because the fluctuation u = f - f(0,0) has no constant term, so the
    truncated Taylor polynomial of F reproduces all partials up to order 3.
    """
    u = Jet2(f.coeffs.copy(), f.order)
    u.coeffs[0] = np.zeros_like(u.coeffs[0])
    u2 = u * u
    out = Jet2.constant(derivs[0], f.order, batch_like=f.value) + u * derivs[1]
    out = out + u2 * (derivs[2] / 2.0)
    out = out + (u2 * u) * (derivs[3] / 6.0)
    out.order = f.order
    return out


def _fluctuation(f):
    # u = f / f0 - 1: value 0, derivative coefficients scaled to O(f'/f).
    # Keeps reciprocal/sqrt/log finite for huge |f0| where the raw Taylor
    # coefficients 1/f0^k underflow while the jet products overflow.
    u = f * (1.0 / f.value)
    u.coeffs[0] = np.zeros_like(u.coeffs[0])
    return u


def reciprocal(f):
    u = _fluctuation(f)
    u2 = u * u
    return (1.0 - u + u2 - u2 * u) * (1.0 / f.value)


def sqrt(f):
    u = _fluctuation(f)
    u2 = u * u
    return (1.0 + u * 0.5 - u2 * 0.125 + u2 * u * 0.0625) * np.sqrt(f.value)


def exp(f):
    v = np.exp(f.value)
    return compose(f, [v, v, v, v])


def log(f):
    u = _fluctuation(f)
    u2 = u * u
    return np.log(f.value) + u - u2 * 0.5 + u2 * u * (1.0 / 3.0)


def sin(f):
    s, c = np.sin(f.value), np.cos(f.value)
    return compose(f, [s, c, -s, -c])


def cos(f):
    s, c = np.sin(f.value), np.cos(f.value)
    return compose(f, [c, -s, -c, s])


def tan(f):
    t = np.tan(f.value)
    s2 = 1.0 + t * t  # sec^2
    return compose(f, [t, s2, 2 * t * s2, s2 * (4 * t * t + 2 * s2)])


def sinh(f):
    s, c = np.sinh(f.value), np.cosh(f.value)
    return compose(f, [s, c, s, c])


def cosh(f):
    s, c = np.sinh(f.value), np.cosh(f.value)
    return compose(f, [c, s, c, s])
