"""Ideal arithmetic: Buchberger's algorithm with reduced bases, normal forms,
membership, elimination ideals, Krull dimension, and a module-finiteness test
for coordinate projections.

Desk-scale inputs only (a handful of variables, single-digit degrees), so the
classic algorithm with the coprime and chain criteria is used; reduced bases
are unique per order, which makes every downstream answer reproducible
byte for byte.  Dimensions are always complex (Krull) dimensions; the germ
dimension of a variety at a chosen point is a local notion this global
computation does not see.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .polyring import (
    GREVLEX,
    ZERO,
    ContextMismatchError,
    MonomialOrder,
    Polynomial,
    VarContext,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_PAIR_LIMIT = 100_000

_pair_limit = DEFAULT_PAIR_LIMIT


class PairLimitError(RuntimeError):
    """Buchberger processed more S-pairs than the configured guard allows."""


def set_pair_limit(limit: int) -> int:
    """Set the global S-pair guard; returns the previous value."""
    global _pair_limit
    if limit < 1:
        raise ValueError("pair limit must be positive")
    previous = _pair_limit
    _pair_limit = limit
    return previous


def pair_limit() -> int:
    return _pair_limit


def _common_context(polys: Sequence[Polynomial]) -> VarContext:
    ctx = polys[0].context
    for p in polys[1:]:
        if p.context != ctx:
            raise ContextMismatchError("polynomials live in different contexts")
    return ctx


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of f under multivariate division by basis.

    No term of the result is divisible by any basis leading monomial, and
    f minus the result lies in the ideal generated by basis.  When several
    basis elements apply, the first in the given sequence wins.
    """
    basis = list(basis)
    for g in basis:
        if not g:
            raise ValueError("zero polynomial in division basis")
    if basis:
        _common_context([f, *basis])
    leads = [(g.leading_term(order), g) for g in basis]
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        mono = max(work, key=order.key)
        coeff = work[mono]
        reducer = None
        for (lm, lc), g in leads:
            if mono_divides(lm, mono):
                reducer = (mono_div(mono, lm), coeff / lc, g)
                break
        if reducer is None:
            remainder[mono] = coeff
            del work[mono]
            continue
        shift, factor, g = reducer
        for m2, c2 in g.terms.items():
            target = mono_mul(m2, shift)
            s = work.get(target, ZERO) - factor * c2
            if s:
                work[target] = s
            else:
                work.pop(target, None)
    return Polynomial._make(f.context, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lm_f, lc_f = f.leading_term(order)
    lm_g, lc_g = g.leading_term(order)
    lcm = mono_lcm(lm_f, lm_g)
    mf = Polynomial.monomial(f.context, mono_div(lcm, lm_f), 1 / lc_f)
    mg = Polynomial.monomial(g.context, mono_div(lcm, lm_g), 1 / lc_g)
    return mf * f - mg * g


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    max_pairs: int | None = None,
) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of the ideal generated by gens under order.

    Output is deterministic: monic elements, no element with a term divisible
    by another's leading monomial, sorted by ascending leading monomial.
    """
    limit = _pair_limit if max_pairs is None else max_pairs
    gens = [g for g in gens if g]
    if not gens:
        return ()
    _common_context(gens)
    seed = sorted((g.monic(order) for g in gens), key=lambda g: order.key(g.leading_monomial(order)))
    basis: list[Polynomial] = []
    for g in seed:
        if g not in basis:
            basis.append(g)
    lms = [g.leading_monomial(order) for g in basis]
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = 0

    def lcm_key(pair):
        i, j = pair
        return (order.key(mono_lcm(lms[i], lms[j])), pair)

    while pending:
        i, j = min(pending, key=lcm_key)
        pending.remove((i, j))
        processed += 1
        if processed > limit:
            raise PairLimitError(f"S-pair limit of {limit} exceeded")
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue  # coprime leading monomials
        if _chain_criterion(i, j, lcm, lms, pending):
            continue
        s = s_polynomial(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r:
            r = r.monic(order)
            basis.append(r)
            lms.append(r.leading_monomial(order))
            t = len(basis) - 1
            pending.update((k, t) for k in range(t))
    return _reduce_basis(basis, order)


def _chain_criterion(i, j, lcm, lms, pending) -> bool:
    for k in range(len(lms)):
        if k in (i, j):
            continue
        if not mono_divides(lms[k], lcm):
            continue
        a = (min(i, k), max(i, k))
        b = (min(j, k), max(j, k))
        if a not in pending and b not in pending:
            return True
    return False


def _reduce_basis(basis: list[Polynomial], order: MonomialOrder) -> tuple[Polynomial, ...]:
    ranked = sorted(basis, key=lambda g: order.key(g.leading_monomial(order)))
    minimal: list[Polynomial] = []
    for g in ranked:
        lm = g.leading_monomial(order)
        if not any(mono_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)
    changed = True
    while changed:
        changed = False
        for idx in range(len(minimal)):
            rest = minimal[:idx] + minimal[idx + 1 :]
            if not rest:
                continue
            r = normal_form(minimal[idx], rest, order).monic(order)
            if r != minimal[idx]:
                minimal[idx] = r
                changed = True
    minimal.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return tuple(minimal)


class Ideal:
    """Polynomial ideal with a per-order cache of reduced Groebner bases.

    Immutable apart from the cache, which behaves as a write-once memo per
    order: concurrent readers see either nothing or the finished basis.
    """

    __slots__ = ("context", "generators", "_cache")

    def __init__(self, context: VarContext, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.context != context:
                raise ContextMismatchError("generator context differs from ideal context")
            if g:
                gens.append(g)
        self.context = context
        self.generators = tuple(gens)
        self._cache: dict[MonomialOrder, tuple[Polynomial, ...]] = {}

    def groebner_basis(self, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        order = order or GREVLEX
        cached = self._cache.get(order)
        if cached is None:
            cached = self._cache.setdefault(order, buchberger(self.generators, order))
        return cached

    def __contains__(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def dimension(self) -> int:
        return krull_dimension(self)

    def eliminate(self, keep: Iterable[str]) -> "Ideal":
        return elimination_ideal(self, keep)

    def equals(self, other: "Ideal") -> bool:
        """Equality as ideals, decided by mutual membership."""
        if self.context != other.context:
            return False
        return all(g in other for g in self.generators) and all(
            g in self for g in other.generators
        )

    def __repr__(self):
        inside = ", ".join(g.to_str() for g in self.generators) or "0"
        return f"Ideal({inside})"


def ideal_membership(f: Polynomial, ideal: Ideal) -> bool:
    if f.context != ideal.context:
        raise ContextMismatchError("polynomial context differs from ideal context")
    if not f:
        return True
    basis = ideal.groebner_basis()
    if not basis:
        return False
    return not normal_form(f, basis, GREVLEX)


def elimination_ideal(ideal: Ideal, keep: Iterable[str]) -> Ideal:
    """Intersection with the subring generated by the kept variables.

    Computed from a block order with the eliminated variables in the leading
    block; the result cuts out the Zariski closure of the coordinate
    projection of the input variety.  The returned ideal lives in the
    restricted context and arrives with its grevlex basis pre-seeded.
    """
    ctx = ideal.context
    keep_set = set(keep)
    for name in keep_set:
        ctx.index(name)
    block = tuple(i for i, name in enumerate(ctx.names) if name not in keep_set)
    order = MonomialOrder.elimination(block)
    basis = ideal.groebner_basis(order)
    sub = ctx.restrict(keep_set)
    allowed = frozenset(ctx.index(n) for n in sub.names)
    survivors = [g.restrict(sub) for g in basis if g.support_indices() <= allowed]
    result = Ideal(sub, survivors)
    result._cache[GREVLEX] = tuple(
        sorted(survivors, key=lambda g: GREVLEX.key(g.leading_monomial(GREVLEX)))
    )
    return result


def krull_dimension(ideal: Ideal) -> int:
    """Complex dimension of the vanishing set.

    Maximum size of a variable subset that contains the full support of no
    leading monomial of the reduced grevlex basis; -1 for the empty variety,
    the number of variables for the zero ideal.
    """
    basis = ideal.groebner_basis()
    n = len(ideal.context)
    if not basis:
        return n
    supports = []
    for g in basis:
        lm = g.leading_monomial(GREVLEX)
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if all(not support <= chosen for support in supports):
                return size
    return -1


def finite_over_kept_vars(ideal: Ideal, eliminated: Iterable[str]) -> bool:
    """Pure-power criterion for finiteness of the projection fibers.

    True iff, under the block order with the eliminated variables leading,
    the reduced basis holds, for every eliminated variable, an element whose
    leading monomial is a pure power of that variable.
    """
    ctx = ideal.context
    elim_idx = sorted(ctx.index(name) for name in set(eliminated))
    if not elim_idx:
        return True
    order = MonomialOrder.elimination(elim_idx)
    basis = ideal.groebner_basis(order)
    covered = set()
    for g in basis:
        lm = g.leading_monomial(order)
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1 and support[0] in elim_idx:
            covered.add(support[0])
    return covered >= set(elim_idx)
