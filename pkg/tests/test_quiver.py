import random

import pytest

from conftest import kronecker3
from fixedloci.errors import ValidationError, ZeroDimensionVector
from fixedloci.linalg import IntMatrix
from fixedloci.quiver import (
    Arrow,
    ArrowWeights,
    CoverVector,
    Quiver,
    box_from_radius,
    check_stability_pairing,
    component_dimension,
    covering_quiver_window,
    covers_to_rho,
    default_window_radius,
    enumerate_covers,
    rho_to_cover,
    support_is_connected,
    theta_hat,
    weyl_canonical,
)


def a2_quiver():
    Q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    return Q, ArrowWeights.full(Q)


def test_window_examples():
    Q, W = a2_quiver()
    win = covering_quiver_window(Q, W, ((0, 1),))
    assert set(win.vertices) == {("1", (0,)), ("1", (1,)), ("2", (0,)), ("2", (1,))}
    assert [(a.src, a.tgt) for a in win.arrows] == [(("1", (0,)), ("2", (1,)))]

    win0 = covering_quiver_window(Q, W, ((0, 0),))
    assert win0.arrows == ()

    W0 = ArrowWeights.from_dict(1, {"a": (0,)})
    win_triv = covering_quiver_window(Q, W0, ((0, 1),))
    assert len(win_triv.arrows) == 2  # one copy of Q per grade


def test_enumerate_covers_a2():
    Q, W = a2_quiver()
    covers = enumerate_covers(Q, W, {"1": 1, "2": 1}, ((-2, 2),))
    assert len(covers) == 1
    assert covers[0].items == ((("1", (0,)), 1), (("2", (1,)), 1))


def test_enumerate_covers_zero_alpha():
    Q, W = a2_quiver()
    covers = enumerate_covers(Q, W, {"1": 0, "2": 0}, ((-2, 2),))
    assert len(covers) == 1 and covers[0].items == ()


def test_enumerate_covers_brute_force_a2():
    # independent check: place one unit per vertex anywhere in the box,
    # keep connected placements, dedup translates
    Q, W = a2_quiver()
    box = ((-2, 2),)
    expected = set()
    for c1 in range(-2, 3):
        for c2 in range(-2, 3):
            beta = CoverVector({("1", (c1,)): 1, ("2", (c2,)): 1})
            if support_is_connected(Q, W, beta):
                expected.add(beta.canonical())
    got = set(enumerate_covers(Q, W, {"1": 1, "2": 1}, box))
    assert got == expected


def test_cover_sums_and_connectivity():
    Q, W, alpha, _theta = kronecker3()
    covers = enumerate_covers(Q, W, alpha, box_from_radius(3, 2))
    assert len(covers) == 55
    for c in covers:
        assert c.is_cover_of(alpha)
        assert support_is_connected(Q, W, c)
        # union-find oracle for connectivity
        assert _union_find_connected(Q, W, c)


def _union_find_connected(Q, W, beta):
    pts = list(beta.support())
    if not pts:
        return True
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in Q.arrows:
        w = W.of(a.id)
        for (v, chi) in pts:
            if v != a.src:
                continue
            tgt = (a.tgt, tuple(c + x for c, x in zip(chi, w)))
            if tgt in parent:
                ra, rb = find((v, chi)), find(tgt)
                parent[ra] = rb
    return len({find(p) for p in pts}) == 1


def test_canonical_translate_idempotent_and_invariant():
    rng = random.Random(71)
    Q, W, alpha, _ = kronecker3()
    covers = enumerate_covers(Q, W, alpha, box_from_radius(3, 2))
    for c in covers[:20]:
        assert c.canonical() == c
        for _ in range(5):
            xi = tuple(rng.randint(-4, 4) for _ in range(3))
            assert c.translate(xi).canonical() == c


def test_theta_hat():
    Q, W, alpha, theta = kronecker3()
    covers = enumerate_covers(Q, W, alpha, box_from_radius(3, 2))
    for c in covers[:10]:
        th = theta_hat(theta, c.support())
        assert sum(th[k] * n for k, n in c.items) == 0
        for (v, chi), val in th.items():
            assert val == theta[v]
    assert theta_hat({"1": 0, "2": 0}, [("1", (0,))]) == {("1", (0,)): 0}


def test_stability_pairing_guard():
    check_stability_pairing({"1": -3, "2": 2}, {"1": 2, "2": 3})
    with pytest.raises(ValidationError):
        check_stability_pairing({"1": 1, "2": 1}, {"1": 2, "2": 3})


def test_component_dimension_examples():
    Q, _W, _alpha, _theta = kronecker3()
    W0 = ArrowWeights.from_dict(0, {"a": (), "b": (), "c": ()})
    triv = CoverVector({("1", ()): 2, ("2", ()): 3})
    assert component_dimension(Q, W0, triv) == 6

    A2, WA = a2_quiver()
    unit = CoverVector({("1", (0,)): 1, ("2", (1,)): 1})
    assert component_dimension(A2, WA, unit) == 0

    single = CoverVector({("1", (0,)): 1})
    assert component_dimension(A2, WA, single) == 0

    with pytest.raises(ZeroDimensionVector):
        component_dimension(A2, WA, CoverVector({}))


def test_weyl_canonical():
    M = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert weyl_canonical(M, [2]) == M
    M2 = IntMatrix.from_rows([[1, 0], [0, 1]])
    assert weyl_canonical(M2, [2]).entries == ((0, 1), (1, 0))
    # two blocks sort independently
    M3 = IntMatrix.from_rows([[2, 0], [1, 0], [5, 5], [4, 4]])
    assert weyl_canonical(M3, [2, 2]).entries == ((1, 0), (2, 0), (4, 4), (5, 5))


def test_covers_to_rho_examples():
    Q, W, alpha, _ = kronecker3()
    type1 = CoverVector({
        ("1", (0, 0, 0)): 2,
        ("2", (1, 0, 0)): 1, ("2", (0, 1, 0)): 1, ("2", (0, 0, 1)): 1,
    })
    rho = covers_to_rho(Q, type1, 3)
    assert rho.entries == ((0, 0, 0), (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert rho_to_cover(Q, rho, alpha) == type1

    trivial = IntMatrix.zero(5, 3)
    cov = rho_to_cover(Q, trivial, alpha)
    assert cov.items == ((("1", (0, 0, 0)), 2), (("2", (0, 0, 0)), 3))


def test_cover_rho_roundtrip_random():
    rng = random.Random(73)
    Q, _W, alpha, _ = kronecker3()
    blocks = [alpha[v] for v in Q.vertices]
    for _ in range(50):
        rows = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(5)]
        rho = weyl_canonical(IntMatrix.from_rows(rows, 3), blocks)
        cov = rho_to_cover(Q, rho, alpha)
        back = covers_to_rho(Q, cov, 3)
        assert back == rho
        # and through canonical translation on the cover side
        cov2 = cov.canonical()
        rho2 = covers_to_rho(Q, cov2, 3)
        assert rho_to_cover(Q, rho2, alpha).canonical() == cov2.canonical()


def test_reversed_quadruple_same_class():
    # the grading built from (m1,m2,m3,m4) and from (m4,m3,m2,m1) label the
    # same component: their covers are translates of one another
    def type2_cover(m1, m2, m3, m4):
        e = {"a": (1, 0, 0), "b": (0, 1, 0), "c": (0, 0, 1)}

        def add(*vs):
            return tuple(sum(x) for x in zip(*vs))

        def neg(v):
            return tuple(-x for x in v)

        return CoverVector({
            ("1", (0, 0, 0)): 1,
            ("1", add(e[m2], neg(e[m3]))): 1,
            ("2", e[m1]): 1,
            ("2", e[m2]): 1,
            ("2", add(e[m2], neg(e[m3]), e[m4])): 1,
        })

    for quad in ["abac", "abab", "abca", "acbc", "babc", "cabc"]:
        fwd = type2_cover(*quad)
        rev = type2_cover(*quad[::-1])
        assert fwd.canonical() == rev.canonical()


def test_default_window_radius():
    Q, W, alpha, _ = kronecker3()
    assert default_window_radius(alpha, W) == 5
    W0 = ArrowWeights.from_dict(0, {"a": (), "b": (), "c": ()})
    assert default_window_radius(alpha, W0) == 0
