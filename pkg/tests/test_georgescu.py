import numpy as np
import pytest

from cornerblowup.compactify import Kind, PolyCurve, RadialPoint
from cornerblowup.georgescu import (
    GeorgescuPoint,
    NotInClosure,
    curve_limit_tuple,
    diagonal,
    exact_key,
    random_curve,
    sample_orderings,
    signature,
    translate,
    tuple_distance,
    vasy_tuple,
    verify_injectivity,
    verify_order_independence,
)
from cornerblowup.linalg import Subspace
from cornerblowup.nbody import NBodySpec, builtin_lattices, collision, nbody_semilattice
from cornerblowup.semilattice import admissible_orderings, chain_lattice, close

X_AXIS = Subspace.span([[1, 0]])
F = close([X_AXIS], 2)
ZERO = F.zero


def test_diagonal_examples():
    p = diagonal([0, 0], F)
    assert all(c.is_interior and np.allclose(c.vec, 0) for c in p.components.values())
    p = diagonal([1, 2], F)
    assert np.allclose(p[ZERO].vec, [1, 2]) and np.allclose(p[X_AXIS].vec, [2])
    assert p.violations() == []
    assert signature(p).at_infinity == frozenset()


def test_curve_limit_tuple_examples():
    p = curve_limit_tuple(PolyCurve.of([0, 5], [1, 0]), F)
    assert p[ZERO].kind is Kind.DIRECTION and np.allclose(p[ZERO].vec, [1, 0])
    assert p[X_AXIS].is_interior and np.allclose(p[X_AXIS].vec, [5])
    assert signature(p).to_json(F) == [0]
    p = curve_limit_tuple(PolyCurve.of([0, 0], [0, 1], [1, 0]), F)
    assert not p[ZERO].is_interior and not p[X_AXIS].is_interior
    assert signature(p).at_infinity == frozenset({ZERO, X_AXIS})
    c = PolyCurve.of([3, -1])
    assert tuple_distance(curve_limit_tuple(c, F), diagonal([3, -1], F)) == 0.0


def test_curve_limit_tuple_matches_numeric_evaluation():
    from cornerblowup.compactify import theta
    from cornerblowup.georgescu import quotients

    c = PolyCurve.of([0, 5], [1, 0])
    p = curve_limit_tuple(c, F)
    for y, q in quotients(F).items():
        num = theta(RadialPoint.interior(np.array([[float(v) for v in r] for r in q.matrix]) @ c(1e6)))
        assert np.linalg.norm(theta(p[y]) - num) < 1e-5


def test_signature_rejects_non_closure_tuple():
    bad = GeorgescuPoint(F, {ZERO: RadialPoint.interior([0, 0]), X_AXIS: RadialPoint.direction([1])})
    assert bad.violations()
    with pytest.raises(NotInClosure):
        signature(bad)


def test_violations_catch_incompatible_interiors():
    bad = GeorgescuPoint(F, {ZERO: RadialPoint.interior([0, 1]), X_AXIS: RadialPoint.interior([2])})
    assert any("disagree" in v for v in bad.violations())


def test_nonempty_signature_iff_zero_component_at_infinity():
    f = nbody_semilattice(NBodySpec(3, 1))
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = curve_limit_tuple(random_curve(f, rng), f)
        assert bool(signature(p).at_infinity) == (not p[f.zero].is_interior)


def test_translate_fixes_infinite_components():
    p = curve_limit_tuple(PolyCurve.of([0, 5], [1, 0]), F)
    moved = translate(p, [7, 1])
    assert np.allclose(moved[X_AXIS].vec, [6])
    assert moved[ZERO].close_to(p[ZERO])


def test_chain_is_trivially_consistent():
    f = chain_lattice()
    rng = np.random.default_rng(1)
    rep = verify_order_independence(f, [random_curve(f, rng) for _ in range(30)])
    assert rep.ok and rep.pairs_checked == 0 and rep.route_deviation < 1e-9


def test_adversarial_curve_along_collision():
    spec = NBodySpec(2, 1)
    f = nbody_semilattice(spec)
    y12 = collision(spec, 0, 1)
    c = PolyCurve.of([1, 3], [1, 1], [2, 2])
    rep = verify_order_independence(f, [c])
    assert rep.ok and rep.max_deviation < 1e-9
    p = curve_limit_tuple(c, f)
    assert p[y12].is_interior
    for o in admissible_orderings(f, 10):
        assert tuple_distance(vasy_tuple(c, f, o), p) < 1e-9


@pytest.mark.parametrize("name", sorted(builtin_lattices()))
def test_order_independence_on_builtins(name):
    f = builtin_lattices()[name]
    rng = np.random.default_rng(sum(map(ord, name)))
    curves = [random_curve(f, rng) for _ in range(40)]
    rep = verify_order_independence(f, curves, orderings=sample_orderings(f, rng, 6))
    assert rep.ok, rep.counterexamples[:3]
    assert rep.max_deviation < 1e-9 and rep.route_deviation < 1e-9


def test_injectivity_examples():
    c1 = PolyCurve.of([0, 0], [1, 0])
    c2 = PolyCurve.of([0, 1], [1, 0])
    rep = verify_injectivity(F, [c1, c2, c1])
    assert rep.ok
    assert rep.equivalent_pairs == 1 and rep.max_deviation == 0.0
    assert rep.min_separation > 1e-9
    # rescaling the whole curve keeps the direction but moves the finite part
    c = PolyCurve.of([0, 1], [1, 0])
    p, p3 = curve_limit_tuple(c, F), curve_limit_tuple(c.scale(3), F)
    assert p[ZERO].close_to(p3[ZERO])
    assert not p[X_AXIS].close_to(p3[X_AXIS])
    assert exact_key(c, F) != exact_key(c.scale(3), F)


def test_injectivity_on_random_curves():
    f = nbody_semilattice(NBodySpec(3, 1))
    rng = np.random.default_rng(3)
    rep = verify_injectivity(f, [random_curve(f, rng) for _ in range(80)])
    assert rep.ok, rep.counterexamples[:3]


def test_report_json_shape():
    f = nbody_semilattice(NBodySpec(2, 1))
    rng = np.random.default_rng(4)
    out = verify_order_independence(f, [random_curve(f, rng) for _ in range(5)]).to_json()
    assert {"max_deviation", "pairs_checked", "counterexamples"} <= set(out)
