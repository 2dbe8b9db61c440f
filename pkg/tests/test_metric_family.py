import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from killing3 import fields, jets
from killing3.errors import BadParams, DomainError, UnknownCatalogName
from killing3.frame_calculus import Geometry
from killing3.metric_family import (CATALOG_NAMES, GRID_CSV_HEADER, MetricSpec,
                                    canonical_frame, catalog,
                                    frame_gram_residual, load_grid_csv,
                                    metric_components, to_grid_sampled)
from oracles import fd_twist


def test_catalog_names_complete():
    for name in CATALOG_NAMES:
        params = {"B": 0.0, "C": 1.0} if name == "cf_family" else None
        spec = catalog(name, params)
        assert spec.name == name


def test_unknown_catalog():
    with pytest.raises(UnknownCatalogName):
        catalog("torus")


def test_bad_params():
    with pytest.raises(BadParams):
        catalog("hopf", {"R": -2.0})
    with pytest.raises(BadParams):
        catalog("nil", {"radius": 1.0})


def test_flat_metric_is_euclidean():
    spec = catalog("flat")
    g = metric_components(spec, (0.4, 1.0)).matrix()
    np.testing.assert_allclose(g, np.eye(3), atol=1e-15)


def test_hopf_metric_components():
    # R=1 at r = pi/4: phi = 1/2, h = -1, so g_ttheta = -phi h = +1/2
    spec = catalog("hopf", {"R": 1.0})
    g = metric_components(spec, (np.pi / 4, 0.0)).matrix()
    expected = np.array([
        [1.0, 0.0, 0.5],
        [0.0, 1.0, 0.0],
        [0.5, 0.0, 0.5],
    ])
    np.testing.assert_allclose(g, expected, atol=1e-14)


def test_nil_metric_components():
    # omega0 = 1 at r = 2: phi = 1, h = -2
    spec = catalog("nil", {"omega0": 1.0})
    g = metric_components(spec, (2.0, 0.3)).matrix()
    expected = np.array([
        [1.0, 0.0, 2.0],
        [0.0, 1.0, 0.0],
        [2.0, 0.0, 5.0],
    ])
    np.testing.assert_allclose(g, expected, atol=1e-14)


def test_frame_gram_on_all_catalogs():
    for name in ("flat", "hopf", "nil", "hyperbolic"):
        spec = catalog(name)
        for p in [(0.3, 0.0), (0.9, 2.5), (1.2, -1.0)]:
            assert frame_gram_residual(spec, p) < 1e-12


def test_canonical_frame_hopf():
    spec = catalog("hopf", {"R": 1.0})
    fr = canonical_frame(spec, (np.pi / 4, 0.0))
    np.testing.assert_allclose(fr.T, [1.0, 0.0, 0.0])
    np.testing.assert_allclose(fr.X, [-1.0, 0.0, 2.0], atol=1e-14)
    np.testing.assert_allclose(fr.Y, [0.0, 1.0, 0.0])


def test_twist_sign_oracle():
    """The catalog h profiles must reproduce positive twist via -(phi h)_r / phi."""
    cases = [
        (catalog("hopf", {"R": 1.0}), 0.6, 2.0),
        (catalog("hopf", {"R": 2.0}), 0.6, 1.0),
        (catalog("nil", {"omega0": 1.5}), 0.8, 1.5),
    ]
    for spec, r, expected in cases:
        assert fd_twist(spec, r, 0.2) == pytest.approx(expected, rel=1e-8)
        geo = Geometry(spec, r, 0.2)
        assert float(geo.omega.value) == pytest.approx(expected, rel=1e-12)


def test_domain_error_at_degenerate_phi():
    spec = catalog("hopf", {"R": 1.0})
    with pytest.raises(DomainError):
        metric_components(spec, (0.0, 0.0))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 1.3), st.floats(-3.0, 3.0),
       st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
def test_any_profile_triple_gives_unit_killing_T(r, theta, hc, kc):
    """T = d/dt is unit Killing for arbitrary t-independent (phi, h, k)."""
    spec = MetricSpec(
        fields.from_expr(lambda rr, tt: 1.0 + 0.3 * jets.sin(rr) * jets.cos(tt)),
        fields.from_expr(lambda rr, tt: hc * rr + 0.1 * jets.sin(tt)),
        fields.from_expr(lambda rr, tt: kc * jets.cos(rr)),
    )
    from killing3.np_formalism import killing_test

    report = killing_test(spec, [(r, theta)])
    assert report.max_lie_residual < 1e-10
    assert report.max_geodesic < 1e-10


def _grid_csv_text():
    r_nodes = np.linspace(0.2, 1.2, 12)
    t_nodes = np.linspace(0.0, 2.0, 10)
    lines = [",".join(GRID_CSV_HEADER)]
    for r in r_nodes:
        for t in t_nodes:
            phi = 1.0 + 0.2 * np.sin(r) * np.cos(t)
            h = 0.3 * r
            lines.append(f"{r:.17g},{t:.17g},{phi:.17g},{h:.17g},0.0")
    return "\n".join(lines)


def test_grid_csv_roundtrip():
    spec = load_grid_csv(_grid_csv_text())
    assert spec.name == "grid"
    val = spec.phi.value(0.7, 1.1)
    assert val == pytest.approx(1.0 + 0.2 * np.sin(0.7) * np.cos(1.1), abs=1e-9)


def test_grid_csv_rejects_bad_header():
    with pytest.raises(BadParams):
        load_grid_csv("a,b,c\n1,2,3")


def test_grid_csv_rejects_ragged():
    text = ",".join(GRID_CSV_HEADER) + "\n0.1,0.0,1.0,0.0,0.0\n0.2,1.0,1.0,0.0,0.0"
    with pytest.raises(BadParams):
        load_grid_csv(text)


def test_to_grid_sampled_matches_analytic():
    spec = catalog("hyperbolic")
    r_nodes = np.linspace(0.1, 2.0, 40)
    t_nodes = np.linspace(0.0, 6.3, 24)
    gspec = to_grid_sampled(spec, r_nodes, t_nodes)
    for p in [(0.5, 1.0), (1.3, 4.0)]:
        a = metric_components(spec, p).matrix()
        b = metric_components(gspec, p).matrix()
        np.testing.assert_allclose(a, b, atol=1e-7)
