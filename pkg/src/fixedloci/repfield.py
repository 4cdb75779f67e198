"""Brute-force certification of stable loci via representations over F_p.

King's inequalities are evaluated literally: all subrepresentations of an
explicit representation over a small prime field are enumerated by scanning
tuples of subspaces closed under the arrow maps.  Nonemptiness certificates
come from randomized sampling (a stable F_p point; transfer to C is a
documented heuristic), emptiness certificates only from structural zero-block
patterns that force a destabilizing subrepresentation into every point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .common import Status
from .errors import TooLarge
from .quiver import ArrowWeights, CoverVector, Quiver, support_quiver, theta_hat

DEFAULT_MAX_TOTAL_DIM = 8
DEFAULT_MAX_PRIME = 5


# ---------------------------------------------------------------------------
# tiny GF(p) linear algebra

def gf_rref(rows, p):
    """Reduced row echelon form over F_p; returns a tuple of nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r] if any(row))


def gf_in_span(rref_rows, vec, p):
    v = [x % p for x in vec]
    for row in rref_rows:
        lead = next(i for i, x in enumerate(row) if x)
        if v[lead]:
            f = v[lead]
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return not any(v)


def gf_matvec(mat, vec, p):
    return tuple(sum(a * b for a, b in zip(row, vec)) % p for row in mat)


def subspaces(n, p):
    """All subspaces of F_p^n as RREF row tuples (the zero space is ())."""
    out = [()]
    for r in range(1, n + 1):
        for pivots in itertools.combinations(range(n), r):
            free_cols = [
                [c for c in range(pivots[i] + 1, n) if c not in pivots]
                for i in range(r)
            ]
            slots = [(i, c) for i in range(r) for c in free_cols[i]]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * n for _ in range(r)]
                for i in range(r):
                    rows[i][pivots[i]] = 1
                for (i, c), val in zip(slots, values):
                    rows[i][c] = val
                out.append(tuple(tuple(row) for row in rows))
    return out


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True)
class RepFq:
    """A representation over F_p: one matrix per arrow, shape tgt x src."""

    prime: int
    dims: tuple  # sorted (vertex, dim) pairs
    mats: tuple  # sorted (arrow_id, rows) pairs

    @staticmethod
    def build(prime, dims, mats):
        return RepFq(
            int(prime),
            tuple(sorted((v, int(d)) for v, d in dims.items())),
            tuple(sorted((a, tuple(tuple(int(x) % prime for x in row) for row in m)) for a, m in mats.items())),
        )

    def dim_of(self, v):
        return dict(self.dims)[v]

    def mat_of(self, arrow_id):
        return dict(self.mats)[arrow_id]


def random_rep(quiver: Quiver, dims, prime, rng: random.Random) -> RepFq:
    mats = {}
    for a in quiver.arrows:
        rows = tuple(
            tuple(rng.randrange(prime) for _ in range(int(dims.get(a.src, 0))))
            for _ in range(int(dims.get(a.tgt, 0)))
        )
        mats[a.id] = rows
    return RepFq.build(prime, {v: dims.get(v, 0) for v in quiver.vertices}, mats)


def _check_guard(dims, prime, max_total_dim, max_prime):
    total = sum(int(d) for d in dims.values())
    if total > max_total_dim:
        raise TooLarge("total dimension %d exceeds the guard %d" % (total, max_total_dim))
    if prime > max_prime:
        raise TooLarge("prime %d exceeds the guard %d" % (prime, max_prime))
    if prime < 2 or any(prime % q == 0 for q in range(2, prime)):
        raise TooLarge("modulus %d is not prime" % prime)


def _iter_subrep_dimvectors(quiver: Quiver, M: RepFq):
    """Yield the dimension vectors of all subrepresentations (with repeats)."""
    p = M.prime
    dims = dict(M.dims)
    verts = list(quiver.vertices)
    space_lists = [subspaces(dims.get(v, 0), p) for v in verts]
    arrows = [(a, M.mat_of(a.id), verts.index(a.src), verts.index(a.tgt)) for a in quiver.arrows]
    for combo in itertools.product(*space_lists):
        ok = True
        for a, mat, si, ti in arrows:
            target = combo[ti]
            for basis_vec in combo[si]:
                img = gf_matvec(mat, basis_vec, p)
                if any(img) and not gf_in_span(target, img, p):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield tuple(len(combo[i]) for i in range(len(verts)))


def subrep_dimension_vectors(quiver: Quiver, M: RepFq,
                             max_total_dim=DEFAULT_MAX_TOTAL_DIM,
                             max_prime=DEFAULT_MAX_PRIME):
    """The set of dimension vectors of subrepresentations, by exhaustion.

    Ordered by quiver.vertices.  Guarded: refuses large instances.
    """
    _check_guard(dict(M.dims), M.prime, max_total_dim, max_prime)
    return set(_iter_subrep_dimvectors(quiver, M))


def _theta_vec(quiver, theta):
    return [int(theta.get(v, 0)) for v in quiver.vertices]


def is_semistable_rep(quiver: Quiver, M: RepFq, theta,
                      max_total_dim=DEFAULT_MAX_TOTAL_DIM,
                      max_prime=DEFAULT_MAX_PRIME) -> bool:
    """King's inequality: theta of every subrepresentation is >= 0."""
    _check_guard(dict(M.dims), M.prime, max_total_dim, max_prime)
    tv = _theta_vec(quiver, theta)
    for gamma in _iter_subrep_dimvectors(quiver, M):
        if sum(t * g for t, g in zip(tv, gamma)) < 0:
            return False
    return True


def is_stable_rep(quiver: Quiver, M: RepFq, theta,
                  max_total_dim=DEFAULT_MAX_TOTAL_DIM,
                  max_prime=DEFAULT_MAX_PRIME) -> bool:
    """King's strict inequality on proper nonzero subrepresentations."""
    _check_guard(dict(M.dims), M.prime, max_total_dim, max_prime)
    tv = _theta_vec(quiver, theta)
    full = tuple(dict(M.dims).get(v, 0) for v in quiver.vertices)
    zero = tuple(0 for _ in quiver.vertices)
    for gamma in _iter_subrep_dimvectors(quiver, M):
        if gamma in (zero, full):
            continue
        if sum(t * g for t, g in zip(tv, gamma)) <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# structural emptiness + randomized nonemptiness certification

def structural_destabilizer(quiver: Quiver, dims, theta):
    """A proper nonzero arrow-closed vertex subset with theta <= 0, if any.

    The full spaces over such a subset form a subrepresentation of every
    representation with these dimensions, so its existence certifies that no
    point is stable.
    """
    out_edges = {}
    for a in quiver.arrows:
        out_edges.setdefault(a.src, set()).add(a.tgt)
    supp = [v for v in quiver.vertices if int(dims.get(v, 0)) > 0]
    supp_set = set(supp)
    for r in range(1, len(supp)):
        for combo in itertools.combinations(supp, r):
            chosen = set(combo)
            closed = all(
                t in chosen
                for v in chosen
                for t in out_edges.get(v, ())
                if t in supp_set
            )
            if not closed:
                continue
            val = sum(int(theta.get(v, 0)) * int(dims.get(v, 0)) for v in chosen)
            if val <= 0:
                return {v: int(dims.get(v, 0)) for v in chosen}
    return None


@dataclass(frozen=True)
class Certification:
    status: Status
    witness: RepFq | None = None
    witness_trial: int | None = None
    destabilizer: tuple | None = None


def certify_component(quiver: Quiver, weights: ArrowWeights, beta: CoverVector, theta,
                      trials=200, prime=5, seed=0,
                      max_total_dim=DEFAULT_MAX_TOTAL_DIM,
                      max_prime=DEFAULT_MAX_PRIME) -> Certification:
    """Certify (non)emptiness of the stable locus a cover describes.

    Emptiness comes only from a structural destabilizer.  Nonemptiness comes
    from a sampled stable representation over F_p (a finite-field witness;
    transfer to characteristic zero is heuristic).  Otherwise the component
    stays CandidateOnly after the given number of trials.
    """
    sq, dims, _ = support_quiver(quiver, weights, beta)
    th = theta_hat(theta, sq.vertices)
    _check_guard(dims, prime, max_total_dim, max_prime)

    dest = structural_destabilizer(sq, dims, th)
    if dest is not None:
        return Certification(Status.EMPTY_VERIFIED,
                             destabilizer=tuple(sorted(dest.items())))

    comp_key = repr(beta.items)
    for trial in range(trials):
        rng = random.Random("%s:%s:%d" % (seed, comp_key, trial))
        M = random_rep(sq, dims, prime, rng)
        if is_stable_rep(sq, M, th, max_total_dim, max_prime):
            return Certification(Status.NONEMPTY_VERIFIED, witness=M, witness_trial=trial)
    return Certification(Status.CANDIDATE_ONLY)
