"""Scalar fields on the (r, theta) plane with jet evaluation.

Two provenances:

* ``analytic`` -- the field is an exact expression; jets come from jet
  arithmetic and are accurate to machine precision.
* ``grid`` -- the field is known only on a rectangular sample grid; jets come
  from the partial derivatives of a quintic tensor-product spline fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import RectBivariateSpline

from . import jets
from .errors import JetOrderError
from .jets import INDEX, K, MAX_ORDER, Jet2

ANALYTIC = "analytic"
GRID_SAMPLED = "grid"


@dataclass(frozen=True)
class ScalarField:
    """Evaluator mapping (r, theta) to a ScalarJet of the declared max order."""

    jet_fn: Callable = field(repr=False)
    max_order: int = MAX_ORDER
    provenance: str = ANALYTIC

    def jet(self, r, theta, order=None):
        if order is None:
            order = self.max_order
        if order > self.max_order:
            raise JetOrderError(
                f"order {order} requested from a max_order={self.max_order} field"
            )
        j = self.jet_fn(r, theta, order)
        j.order = order
        return j

    def value(self, r, theta):
        return self.jet(r, theta, 0).value

    def __call__(self, r, theta):
        return self.value(r, theta)


def from_expr(expr, max_order=MAX_ORDER):
    """Analytic field from a jet expression, e.g. ``lambda r, t: jets.sin(r) * t``."""

    def jet_fn(r, theta, order):
        jr, jt = jets.variables(r, theta, order)
        out = expr(jr, jt)
        if not isinstance(out, Jet2):
            out = Jet2.constant(np.asarray(out, dtype=float), order, batch_like=jr.value)
        return out

    return ScalarField(jet_fn, max_order, ANALYTIC)


def constant(value, max_order=MAX_ORDER):
    def jet_fn(r, theta, order):
        return Jet2.constant(float(value), order, batch_like=np.asarray(r, dtype=float))

    return ScalarField(jet_fn, max_order, ANALYTIC)


def from_grid(r_nodes, theta_nodes, values, max_order=MAX_ORDER):
    """Grid-sampled field; ``values[i, j]`` at ``(r_nodes[i], theta_nodes[j])``.

    A quintic spline supplies all partials up to order 3 directly; finite
    differencing an interpolant loses too much precision at third order.
    """
    r_nodes = np.asarray(r_nodes, dtype=float)
    theta_nodes = np.asarray(theta_nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    kx = min(5, len(r_nodes) - 1)
    ky = min(5, len(theta_nodes) - 1)
    if kx < max_order + 1 or ky < max_order + 1:
        raise ValueError("grid too coarse for the requested jet order")
    spline = RectBivariateSpline(r_nodes, theta_nodes, values, kx=kx, ky=ky, s=0)

    def jet_fn(r, theta, order):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        shape = np.broadcast_shapes(r.shape, theta.shape)
        rb = np.broadcast_to(r, shape).ravel()
        tb = np.broadcast_to(theta, shape).ravel()
        c = np.zeros((K,) + shape)
        for k, (i, j) in enumerate(INDEX):
            if i + j <= order:
                c[k] = spline.ev(rb, tb, dx=i, dy=j).reshape(shape)
        return Jet2(c, order)

    return ScalarField(jet_fn, max_order, GRID_SAMPLED)


def sample_to_grid(field_like, r_nodes, theta_nodes):
    """Sample an analytic field on a rectangular grid (for grid-path testing)."""
    rr, tt = np.meshgrid(np.asarray(r_nodes, float), np.asarray(theta_nodes, float),
                         indexing="ij")
    vals = field_like.jet(rr, tt, 0).value
    return from_grid(r_nodes, theta_nodes, vals)
