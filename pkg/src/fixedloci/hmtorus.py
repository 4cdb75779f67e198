"""Hilbert-Mumford and Kempf computations for a torus acting with weights.

A WeightedAction packages the weight data of a rank-r torus acting on a
vector space (with an optional commuting auxiliary torus recorded through
the w fields) together with the stability character theta.  Stability of a
coordinate support set is decided exactly through cone membership; the
optimal destabilizing one-parameter subgroup comes from a nearest-point
projection in a user-chosen integral inner product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cones import (
    RationalCone,
    check_inner_product,
    dot_q,
    project_onto_cone,
)
from .errors import DimMismatch, NotUnstable
from .linalg import dot, rational_primitive, solve_rational, vec_neg


@dataclass(frozen=True)
class WeightItem:
    """One weight of the action: chi in Z^r, auxiliary weight w in Z^aux."""

    chi: tuple
    w: tuple = ()
    mult: int = 1

    def __post_init__(self):
        object.__setattr__(self, "chi", tuple(int(x) for x in self.chi))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        if self.mult < 1:
            raise ValueError("mult must be >= 1")


@dataclass(frozen=True)
class WeightedAction:
    g_rank: int
    aux_rank: int
    items: tuple
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "theta", tuple(int(x) for x in self.theta))
        if len(self.theta) != self.g_rank:
            raise DimMismatch("theta must live in Z^%d" % self.g_rank)
        for it in self.items:
            if len(it.chi) != self.g_rank:
                raise DimMismatch("weight %r has wrong rank" % (it.chi,))
            if len(it.w) != self.aux_rank:
                raise DimMismatch("auxiliary weight %r has wrong rank" % (it.w,))

    def indices(self):
        """The index set I of (item, copy) pairs, in flat order."""
        out = []
        for s, it in enumerate(self.items):
            for k in range(it.mult):
                out.append((s, k))
        return tuple(out)

    def flat_index(self, idx):
        s, k = idx
        return sum(self.items[t].mult for t in range(s)) + k

    @property
    def total_dim(self):
        return sum(it.mult for it in self.items)

    def chi_of(self, idx):
        return self.items[idx[0]].chi

    def w_of(self, idx):
        return self.items[idx[0]].w


def full_support(action: WeightedAction):
    return frozenset(action.indices())


def _normalize_support(action, support):
    support = frozenset(tuple(p) for p in support)
    valid = set(action.indices())
    for p in support:
        if p not in valid:
            raise DimMismatch("support index %r not in the action's index set" % (p,))
    return support


def support_cone(action: WeightedAction, support) -> RationalCone:
    """The cone in character space spanned by the weights meeting the support."""
    support = _normalize_support(action, support)
    chis = sorted({action.items[s].chi for (s, k) in support})
    return RationalCone(chis, action.g_rank)


def limit_cone(action: WeightedAction, support) -> RationalCone:
    """One-parameter subgroups eta such that every support coordinate has
    a limit: {eta : <chi_s, eta> >= 0 for all s meeting the support}."""
    return support_cone(action, support).dual()


def is_semistable_support(action: WeightedAction, support) -> bool:
    """True iff the limit cone pairs nonnegatively with theta.

    By cone duality this says theta lies in the cone spanned by the support
    weights, which is how it is tested.
    """
    return support_cone(action, support).contains(action.theta)


def is_stable_support(action: WeightedAction, support) -> bool:
    """True iff every nonzero limit-admitting 1-PS pairs positively with theta.

    Equivalent to: the support weight cone is full-dimensional and theta lies
    in its interior.
    """
    tau = support_cone(action, support)
    return tau.is_fulldim() and tau.interior_contains(action.theta)


@dataclass(frozen=True)
class MValue:
    """Sign and squared magnitude of the Kempf minimum over the limit cone.

    The minimum itself is generally irrational; sign in {-1, 0, +1} is the
    sign of the minimum and m_squared its square as an exact rational.
    m_squared is None when no nonzero 1-PS admits a limit (the minimum is
    vacuously +infinity, sign +1).
    """

    sign: int
    m_squared: Fraction | None = field(default=None)


def _kempf_data(action, support, Q):
    r = action.g_rank
    if Q is None:
        Q = [[int(i == j) for j in range(r)] for i in range(r)]
    else:
        Q = check_inner_product(Q, r)
    cone = limit_cone(action, support)
    if not cone.generators:
        return MValue(1, None), None, cone
    theta = action.theta
    theta_sharp = solve_rational(Q, theta)
    p = project_onto_cone(cone, vec_neg(theta_sharp), Q)
    if any(p):
        msq = Fraction(dot_q(p, p, Q))
        return MValue(-1, msq), rational_primitive(p), cone
    vals = []
    for g in cone.generators:
        num = dot(theta, g)
        assert num >= 0, "projection vanished but a generator pairs negatively"
        vals.append(Fraction(num * num, dot_q(g, g, Q)))
    msq = min(vals)
    return MValue(0 if msq == 0 else 1, msq), None, cone


def m_value(action: WeightedAction, support, Q=None) -> MValue:
    """Exact signed square of min <theta,eta>/||eta||_Q over the limit cone."""
    support = _normalize_support(action, support)
    mv, _, _ = _kempf_data(action, support, Q)
    return mv


def adapted_one_ps(action: WeightedAction, support, Q=None):
    """The primitive 1-PS on the optimal destabilizing ray (unique for m < 0).

    Raises NotUnstable when the support is semi-stable, where the optimal ray
    may fail to be unique.
    """
    support = _normalize_support(action, support)
    mv, lam, cone = _kempf_data(action, support, Q)
    if mv.sign >= 0:
        raise NotUnstable("support is semi-stable; no adapted destabilizer")
    assert cone.contains(lam)
    return lam
