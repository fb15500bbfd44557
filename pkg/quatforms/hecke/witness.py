"""
Global witnesses for double cosets.

For an operator [U eta U] = disjoint union of U eta_t, the value of the
transformed form at d_j is a sum over t of f(d_j eta_t^-1) | eta_t,p. Class
number one lets us write d_j eta_t^-1 = delta^-1 d_j' u with delta a Hurwitz
quaternion of the operator's norm; the matrix by which f(d_j') then acts is

    gamma_t = d_j'^-1 split(delta) d_j = u_p eta_t,p,

which is integral, so nothing here divides by p. Every witness is checked
against its coset: gamma_t eta_t,p^-1 has to land in U_p.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, List, Optional, Tuple

from quatforms.classes.class_set import ClassSet
from quatforms.errors import WitnessNotFound
from quatforms.hecke.descriptor import HeckeDescriptor
from quatforms.padic.mat2 import Mat2
from quatforms.padic.residue import val_int
from quatforms.quaternion.quat import ONE, ONE_PLUS_I, Quat
from quatforms.quaternion.splitting import split_p
from quatforms.quaternion.units import norm_class_reps

if TYPE_CHECKING:
    from quatforms.storage.cache import JsonCache

logger = logging.getLogger(__name__)

LocalMatrix = Tuple[int, int, int, int]

IDENTITY: LocalMatrix = (1, 0, 0, 1)


@dataclass(frozen=True)
class Witness:
    """
    Factorisation for one (coset t, class j) pair.

    ``delta`` is the global quaternion, ``gamma`` the integral matrix that
    acts on f(d_target), and ``u_p`` = gamma eta_t,p^-1, the U_p part of
    gamma (for U_p it is known one digit below the working precision).
    """

    t: int
    source: int
    target: int
    delta: Quat
    gamma: Mat2
    u_p: Mat2


def coset_reps(desc: HeckeDescriptor, n: int = 1) -> List[LocalMatrix]:
    """
    Local representatives eta_t with [U eta U] = disjoint union of U eta_t.

    U_p at level p^n: (p 0; p^n t 1) for t = 0..p-1. T_l: (l 0; t 1) for
    t = 0..l-1 and (1 0; 0 l), all at l. <d>: t_d = (1 0; 0 d) at p. W: a
    single coset, trivial at p (the element 1 + i sits at 2).
    """
    if desc.kind == "Up":
        p = desc.site
        return [(p, 0, p**n * t, 1) for t in range(p)]
    if desc.kind == "Tl":
        ell = desc.site
        return [(ell, 0, t, 1) for t in range(ell)] + [(1, 0, 0, ell)]
    if desc.kind == "D":
        return [(1, 0, 0, desc.site)]
    return [IDENTITY]


def local_coset(desc: HeckeDescriptor, t: int, n: int = 1) -> LocalMatrix:
    """The component at p of eta_t; T_l and W are trivial there."""
    if desc.kind in ("Up", "D"):
        return coset_reps(desc, n)[t]
    return IDENTITY


def witness_elements(desc: HeckeDescriptor, cs: ClassSet, j: int) -> List[Quat]:
    """
    The quaternions alpha (up to left units) contributing at class j, one per coset.

    T_l: the l + 1 left-unit classes of norm l. U_p: the single class of
    norm p whose image kills s_j mod p, used for all p cosets. W: 1 + i.
    <d>: the identity.
    """
    if desc.kind == "W":
        return [ONE_PLUS_I]
    if desc.kind == "D":
        return [ONE]
    reps = norm_class_reps(desc.site)
    if desc.kind == "Tl":
        return reps
    p = desc.site
    lctx = cs.level.level_ctx
    s = cs.reps[j].s
    killers = [a for a in reps if all(x % p == 0 for x in split_p(a, lctx).apply(s))]
    if len(killers) != 1:
        raise WitnessNotFound(f"expected one norm-{p} class killing {s} mod {p}, found {len(killers)}")
    return killers * p


def _assemble(cs: ClassSet, delta: Quat, j: int, target: int) -> Mat2:
    ctx = cs.ctx
    return cs.lifts[target].inverse() @ split_p(delta, ctx) @ cs.lifts[j]


def _strip_coset(gamma: Mat2, eta: LocalMatrix, cs: ClassSet) -> Mat2:
    """
    gamma * eta^-1 for a lower triangular eta = (e 0; g h) with h a unit.

    Division by e = p costs one digit; the result lives mod p^(N - v_p(e)).
    """
    e, _, g, h = eta
    ctx = cs.ctx
    q = ctx.modulus
    shift = val_int(e, ctx.p, ctx.N)
    low = ctx.with_precision(ctx.N - shift) if shift else ctx
    h_inv = pow(h, -1, q)
    a = (gamma.a - gamma.b * g * h_inv) % q
    c = (gamma.c - gamma.d * g * h_inv) % q
    return Mat2(a // e, gamma.b * h_inv, c // e, gamma.d * h_inv, low)


def _checked(desc: HeckeDescriptor, t: int, j: int, target: int, delta: Quat, cs: ClassSet) -> Witness:
    level = cs.level
    gamma = _assemble(cs, delta, j, target)
    u_p = _strip_coset(gamma, local_coset(desc, t, level.n), cs)
    q = level.modulus
    if u_p.c % q or (not level.projective and (u_p.d - 1) % q):
        raise WitnessNotFound(
            f"{desc.label}: gamma for coset {t} at class {j} is {gamma.as_tuple()}, not in U_p . eta_{t}"
        )
    return Witness(t=t, source=j, target=target, delta=delta, gamma=gamma, u_p=u_p)


def global_witness(desc: HeckeDescriptor, t: int, j: int, cs: ClassSet) -> Witness:
    """
    Find delta and j' with d_j eta_t^-1 = delta^-1 d_j' u.

    Raises:
        WitnessNotFound: if no contributing quaternion exists at class j, or
            the one found does not reproduce coset t
    """
    level = cs.level
    ctx = cs.ctx
    alphas = witness_elements(desc, cs, j)
    if not 0 <= t < len(alphas):
        raise WitnessNotFound(f"coset index {t} out of range for {desc.label}")
    alpha = alphas[t]
    rep = cs.reps[j]
    X = split_p(alpha, ctx) @ cs.lifts[j]
    if desc.kind == "Up":
        p, n = level.p, level.n
        q = level.modulus
        shift = p ** (n - 1) * t
        s = ((X.a // p - shift * X.b) % q, (X.c // p - shift * X.d) % q)
        y = cs.quotient.index(alpha * rep.y.representative)
    elif desc.kind == "W":
        s = level.invariant(X)
        y = cs.quotient.conjugate_by_one_plus_i(rep.y.index)
    else:
        if desc.kind == "D":
            X = X @ Mat2(1, 0, 0, pow(desc.site, -1, ctx.modulus), ctx)
        s = level.invariant(X)
        y = cs.quotient.index(alpha * rep.y.representative)
    target, g = cs.lookup(s, y)
    return _checked(desc, t, j, target, g * alpha, cs)


def witness_table(desc: HeckeDescriptor, cs: ClassSet, cache: Optional["JsonCache"] = None) -> List[List[Witness]]:
    """All witnesses, indexed [j][t]; cached as (target, delta) pairs."""
    key = {
        "p": cs.level.p,
        "n": cs.level.n,
        "e": cs.level.e,
        "gamma_style": cs.level.gamma_style,
        "recipe": cs.recipe,
        "op": desc.label,
    }
    cached = cache.get("witness", key) if cache is not None else None
    if cached is not None:
        return [
            [_checked(desc, t, j, target, Quat(*coords), cs) for t, (target, coords) in enumerate(row)]
            for j, row in enumerate(cached)
        ]
    cosets = len(coset_reps(desc, cs.level.n))
    table = []
    for j in range(len(cs)):
        if len(witness_elements(desc, cs, j)) != cosets:
            raise WitnessNotFound(f"{desc.label}: class {j} has a witness count different from {cosets} cosets")
        table.append([global_witness(desc, t, j, cs) for t in range(cosets)])
    logger.debug("%s: %d witnesses over %d classes", desc.label, sum(map(len, table)), len(cs))
    if cache is not None:
        cache.put("witness", key, [[[w.target, list(w.delta.coords)] for w in row] for row in table])
    return table
