"""
Spn(E) for E = finite G-sets: spans up to isomorphism, composition by pullback.

A connected span U <- G/H_k -> V is determined by the images (u, v) of the
base coset; two such are isomorphic iff they differ by an automorphism of
G/H_k, i.e. (u, v) ~ (n.u, n.v) for n in N_G(H_k).  The normal form of a
connected span is the triple (k, u, v) minimizing (u, v) over that orbit, and a
SpanClass is the sorted tuple of its components.  Equality of SpanClasses is
then plain tuple equality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .finite_group import Group
from .gset import (GMap, GSet, _sub, coset_reps, diagonal_map, product, pullback, rep_gset, swap_map,
                   terminal_map)

Component = tuple  # (class index, u, v)


class SpanError(ValueError):
    pass


def canonical_component(G: Group, k: int, u: int, v: int, U: GSet, V: GSet) -> Component:
    best = None
    au, av = U.action, V.action
    for n in _sub(G).normalizers[k]:
        c = (au[n][u], av[n][v])
        if best is None or c < best:
            best = c
    return (k, best[0], best[1])


def _normalize_apex(apex: GSet, left: Sequence[int], right: Sequence[int],
                    U: GSet, V: GSet) -> list[Component]:
    G = apex.group
    sub = _sub(G)
    out = []
    for o in apex.orbits:
        k = sub.class_of[apex.stabilizer(o[0])]
        H = sub.rep(k)
        x = next(x for x in o if apex.stabilizer(x) == H)
        out.append(canonical_component(G, k, left[x], right[x], U, V))
    return out


class Span:
    """An honest span U <- S -> V."""

    def __init__(self, left: GMap, right: GMap):
        if left.source != right.source:
            raise SpanError("legs must share their source")
        self.left = left
        self.right = right

    @property
    def apex(self) -> GSet:
        return self.left.source

    def normal_form(self) -> "SpanClass":
        return normal_form(self)


class SpanClass:
    __slots__ = ("source", "target", "components", "_hash")

    def __init__(self, source: GSet, target: GSet, components: Iterable[Component] = ()):
        if source.group != target.group:
            raise SpanError("endpoints over different groups")
        self.source = source
        self.target = target
        self.components = tuple(sorted(components))
        self._hash = None

    @property
    def group(self) -> Group:
        return self.source.group

    def __eq__(self, other):
        return (isinstance(other, SpanClass) and self.components == other.components
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.components))
        return self._hash

    def __repr__(self):
        return f"SpanClass({list(self.components)})"

    def __add__(self, other: "SpanClass") -> "SpanClass":
        return add(self, other)

    def __matmul__(self, other: "SpanClass") -> "SpanClass":
        """self o other (other first)."""
        return compose(other, self)

    def is_zero(self) -> bool:
        return not self.components

    def counts(self) -> Counter:
        return Counter(self.components)

    def to_json(self) -> list[dict]:
        G = self.group
        out = []
        for k, u, v in self.components:
            reps = coset_reps(G, _sub(G).rep(k))
            out.append({"apex_class": k,
                        "left": [self.source.action[g][u] for g in reps],
                        "right": [self.target.action[g][v] for g in reps]})
        return out

    @classmethod
    def from_json(cls, data: list[dict], source: GSet, target: GSet) -> "SpanClass":
        G = source.group
        comps = []
        for c in data:
            k = int(c["apex_class"])
            apex = rep_gset(G, k)
            left = GMap(apex, source, c["left"])
            right = GMap(apex, target, c["right"])
            comps.extend(_normalize_apex(apex, left.values, right.values, source, target))
        return cls(source, target, comps)


def zero_span(U: GSet, V: GSet) -> SpanClass:
    return SpanClass(U, V, ())


def normal_form(s: Span) -> SpanClass:
    U, V = s.left.target, s.right.target
    return SpanClass(U, V, _normalize_apex(s.apex, s.left.values, s.right.values, U, V))


def identity_span(X: GSet) -> SpanClass:
    v = range(X.size)
    return SpanClass(X, X, _normalize_apex(X, v, v, X, X))


def lower(f: GMap) -> SpanClass:
    """f_* = (1, U, f): U -> V"""
    X = f.source
    return SpanClass(X, f.target, _normalize_apex(X, range(X.size), f.values, X, f.target))


def upper(f: GMap) -> SpanClass:
    """f^* = (f, U, 1): V -> U"""
    X = f.source
    return SpanClass(f.target, X, _normalize_apex(X, f.values, range(X.size), f.target, X))


def add(s: SpanClass, t: SpanClass) -> SpanClass:
    if s.source != t.source or s.target != t.target:
        raise SpanError("cannot add spans with different endpoints")
    return SpanClass(s.source, s.target, s.components + t.components)


def _leg_values(G: Group, k: int, x: int, X: GSet) -> list[int]:
    return [X.action[g][x] for g in coset_reps(G, _sub(G).rep(k))]


@lru_cache(maxsize=None)
def compose_components(c1: Component, c2: Component, U: GSet, V: GSet, W: GSet) -> tuple:
    G = U.group
    k1, u, v = c1
    k2, v2, w = c2
    a_v = _leg_values(G, k1, v, V)
    b_v = _leg_values(G, k2, v2, V)
    A = rep_gset(G, k1)
    B = rep_gset(G, k2)
    pb = pullback(GMap(A, V, a_v, check=False), GMap(B, V, b_v, check=False))
    a_u = _leg_values(G, k1, u, U)
    b_w = _leg_values(G, k2, w, W)
    left = [a_u[a] for a, _ in pb.pairs]
    right = [b_w[b] for _, b in pb.pairs]
    return tuple(_normalize_apex(pb.apex, left, right, U, W))


def compose(s: SpanClass, t: SpanClass) -> SpanClass:
    """t o s for s: U -> V, t: V -> W."""
    if s.target != t.source:
        raise SpanError("middle objects do not match")
    U, V, W = s.source, s.target, t.target
    comps = []
    for c1 in s.components:
        for c2 in t.components:
            comps.extend(compose_components(c1, c2, U, V, W))
    return SpanClass(U, W, comps)


@lru_cache(maxsize=None)
def tensor_components(c1: Component, c2: Component, U: GSet, V: GSet, U2: GSet, V2: GSet) -> tuple:
    G = U.group
    k1, u, v = c1
    k2, u2, v2 = c2
    A, B = rep_gset(G, k1), rep_gset(G, k2)
    P = product(A, B)
    lu, lv = _leg_values(G, k1, u, U), _leg_values(G, k1, v, V)
    ru, rv = _leg_values(G, k2, u2, U2), _leg_values(G, k2, v2, V2)
    m = B.size
    left = [lu[p // m] * U2.size + ru[p % m] for p in range(P.size)]
    right = [lv[p // m] * V2.size + rv[p % m] for p in range(P.size)]
    return tuple(_normalize_apex(P, left, right, product(U, U2), product(V, V2)))


def tensor(s: SpanClass, t: SpanClass) -> SpanClass:
    if s.group != t.group:
        raise SpanError("spans over different groups")
    comps = []
    for c1 in s.components:
        for c2 in t.components:
            comps.extend(tensor_components(c1, c2, s.source, s.target, t.source, t.target))
    return SpanClass(product(s.source, t.source), product(s.target, t.target), comps)


def transpose(s: SpanClass) -> SpanClass:
    G = s.group
    return SpanClass(s.target, s.source,
                     [canonical_component(G, k, v, u, s.target, s.source) for k, u, v in s.components])


def scalar_multiple(s: SpanClass, n: int) -> SpanClass:
    return SpanClass(s.source, s.target, s.components * n)


# ---------------------------------------------------------------------------
# linearized homs

@dataclass(frozen=True, eq=False)
class LinearizedHom:
    source: GSet
    target: GSet
    basis: tuple  # canonical components, sorted

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict:
        return {c: i for i, c in enumerate(self.basis)}

    def span(self, i: int) -> SpanClass:
        return SpanClass(self.source, self.target, (self.basis[i],))

    def spans(self) -> list[SpanClass]:
        return [self.span(i) for i in range(self.dimension)]

    def vector(self, s: SpanClass) -> list[int]:
        if s.source != self.source or s.target != self.target:
            raise SpanError("span endpoints do not match this hom space")
        v = [0] * self.dimension
        for c in s.components:
            v[self.index[c]] += 1
        return v

    def vector_of_components(self, comps: Iterable[Component]) -> list[int]:
        v = [0] * self.dimension
        for c in comps:
            v[self.index[c]] += 1
        return v


@lru_cache(maxsize=None)
def hom_basis(U: GSet, V: GSet) -> LinearizedHom:
    if U.group != V.group:
        raise SpanError("G-sets over different groups")
    G = U.group
    sub = _sub(G)
    basis = set()
    for k in range(sub.num_classes):
        H = sub.rep(k)
        fu = U.fixed_points(H)
        if not fu:
            continue
        fv = V.fixed_points(H)
        for u in fu:
            for v in fv:
                basis.add(canonical_component(G, k, u, v, U, V))
    return LinearizedHom(U, V, tuple(sorted(basis)))


def compose_matrix_post(W: SpanClass, X: GSet, Y: GSet, Z: GSet) -> list[list[int]]:
    """Matrix of phi |-> W o phi, hom(X, Y) -> hom(X, Z), as rows x cols lists."""
    src = hom_basis(X, Y)
    dst = hom_basis(X, Z)
    cols = []
    for phi in src.basis:
        cols.append(dst.vector(compose(SpanClass(X, Y, (phi,)), W)))
    return [[c[i] for c in cols] for i in range(dst.dimension)]


def compose_matrix_pre(S: SpanClass, X: GSet, Y: GSet, Z: GSet) -> list[list[int]]:
    """Matrix of phi |-> phi o S, hom(Y, Z) -> hom(X, Z) for S: X -> Y."""
    src = hom_basis(Y, Z)
    dst = hom_basis(X, Z)
    cols = []
    for phi in src.basis:
        cols.append(dst.vector(compose(S, SpanClass(Y, Z, (phi,)))))
    return [[c[i] for c in cols] for i in range(dst.dimension)]


# ---------------------------------------------------------------------------
# compact closure

def bend_right(s: SpanClass, U: GSet, V: GSet) -> SpanClass:
    """hom(U x V, W) -> hom(U, V x W): move the V leg across."""
    if s.source != product(U, V):
        raise SpanError("source is not U x V")
    W = s.target
    G = s.group
    m = V.size
    T = product(V, W)
    comps = []
    for k, p, w in s.components:
        reps = coset_reps(G, _sub(G).rep(k))
        apex = rep_gset(G, k)
        pv = [s.source.action[g][p] for g in reps]
        wv = [W.action[g][w] for g in reps]
        left = [x // m for x in pv]
        right = [(x % m) * W.size + y for x, y in zip(pv, wv)]
        comps.extend(_normalize_apex(apex, left, right, U, T))
    return SpanClass(U, T, comps)


def bend_left(s: SpanClass, V: GSet, W: GSet) -> SpanClass:
    """hom(U, V x W) -> hom(U x V, W), inverse of bend_right."""
    if s.target != product(V, W):
        raise SpanError("target is not V x W")
    U, T = s.source, s.target
    G = s.group
    m = W.size
    P = product(U, V)
    comps = []
    for k, u, t in s.components:
        reps = coset_reps(G, _sub(G).rep(k))
        apex = rep_gset(G, k)
        uv = [U.action[g][u] for g in reps]
        tv = [T.action[g][t] for g in reps]
        left = [x * V.size + y // m for x, y in zip(uv, tv)]
        right = [y % m for y in tv]
        comps.extend(_normalize_apex(apex, left, right, P, W))
    return SpanClass(P, W, comps)


def unit_span(X: GSet) -> SpanClass:
    """1 <- X -> X x X (the name of the identity)."""
    return compose(upper(terminal_map(X)), lower(diagonal_map(X)))


def counit_span(X: GSet) -> SpanClass:
    """X x X <- X -> 1"""
    return transpose(unit_span(X))


def swap_span(X: GSet, Y: GSet) -> SpanClass:
    return lower(swap_map(X, Y))
