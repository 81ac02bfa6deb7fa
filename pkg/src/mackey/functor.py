"""
Mackey functors stored as functors on spans (Lindner form).

A MackeyFunctor keeps one vector space per representative transitive G-set
C_i = G/H_i and one matrix per connected generator span C_i -> C_j (the basis
of hom_basis(C_i, C_j)).  Values at any other G-set X go through the canonical
decomposition of X: M(X) = sum over orbits a of M(C_{class a}), in orbit order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .exact_linalg import (RatMatrix, direct_sum, is_invertible, inverse, kernel_basis,
                           kron, solve, sparse_kernel, SparseColumns, vstack)
from .finite_group import Group, GroupError, index as subgroup_index
from .gset import (GMap, GSet, _sub, coset_gset, coset_reps, decompose, point, product, rep_gset)
from .span_category import (SpanClass, canonical_component, compose, hom_basis, identity_span, lower,
                            tensor, upper)


class MackeyError(ValueError):
    pass


def representatives(G: Group) -> list[GSet]:
    return [rep_gset(G, i) for i in range(_sub(G).num_classes)]


@dataclass(eq=False)
class MackeyFunctor:
    group: Group
    levels: tuple
    action: dict  # (i, j) -> tuple of RatMatrix aligned with hom_basis(C_i, C_j).basis
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.levels = tuple(self.levels)
        n = _sub(self.group).num_classes
        if len(self.levels) != n:
            raise MackeyError(f"expected {n} levels, got {len(self.levels)}")
        reps = representatives(self.group)
        for i in range(n):
            for j in range(n):
                B = hom_basis(reps[i], reps[j])
                mats = self.action.get((i, j), ())
                if len(mats) != B.dimension:
                    raise MackeyError(f"generator count mismatch at ({i}, {j})")
                for A in mats:
                    if A.shape != (self.levels[j], self.levels[i]):
                        raise MackeyError(f"matrix shape {A.shape} at ({i}, {j}), "
                                          f"expected {(self.levels[j], self.levels[i])}")

    def __repr__(self):
        return f"MackeyFunctor({self.name or '?'}, levels={list(self.levels)})"

    @cached_property
    def reps(self) -> list[GSet]:
        return representatives(self.group)

    @property
    def num_classes(self) -> int:
        return len(self.levels)

    def act(self, i: int, j: int, comp) -> RatMatrix:
        B = hom_basis(self.reps[i], self.reps[j])
        return self.action[(i, j)][B.index[comp]]

    def generators(self):
        """Yield (i, j, component, matrix) for every generator between representatives."""
        for i in range(self.num_classes):
            for j in range(self.num_classes):
                B = hom_basis(self.reps[i], self.reps[j])
                for c, A in zip(B.basis, self.action[(i, j)]):
                    yield i, j, c, A

    def dim(self, X: GSet) -> int:
        return eval_object(self, X)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.levels)


def build_functor(G: Group, levels: Sequence[int],
                  gen_matrix: Callable[[int, int, SpanClass], RatMatrix], name: str = "") -> MackeyFunctor:
    reps = representatives(G)
    action = {}
    for i, Ci in enumerate(reps):
        for j, Cj in enumerate(reps):
            action[(i, j)] = tuple(gen_matrix(i, j, s) for s in hom_basis(Ci, Cj).spans())
    return MackeyFunctor(G, tuple(levels), action, name)


def zero_functor(G: Group) -> MackeyFunctor:
    n = _sub(G).num_classes
    return build_functor(G, [0] * n, lambda i, j, s: RatMatrix.zeros(0, 0), "0")


# ---------------------------------------------------------------------------
# evaluation

def eval_object(M: MackeyFunctor, X: GSet) -> int:
    return sum(M.levels[c] for c in decompose(X).classes)


def object_offsets(M: MackeyFunctor, X: GSet) -> list[int]:
    return decompose(X).offsets(M.levels)


def eval_span(M: MackeyFunctor, s: SpanClass) -> RatMatrix:
    key = ("span", s)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    G = M.group
    dU, dV = decompose(s.source), decompose(s.target)
    oU, oV = dU.offsets(M.levels), dV.offsets(M.levels)
    out = [[0] * oU[-1] for _ in range(oV[-1])]
    for k, u, v in s.components:
        a, p = dU.locate[u]
        b, r = dV.locate[v]
        i, j = dU.classes[a], dV.classes[b]
        comp = canonical_component(G, k, p, r, M.reps[i], M.reps[j])
        A = M.act(i, j, comp)
        r0, c0 = oV[b], oU[a]
        for x in range(A.rows):
            row = out[r0 + x]
            for y, val in enumerate(A.row(x)):
                if val:
                    row[c0 + y] += val
    res = RatMatrix(oV[-1], oU[-1], out)
    M._cache[key] = res
    return res


def eval_map_lower(M: MackeyFunctor, f: GMap) -> RatMatrix:
    return eval_span(M, lower(f))


def eval_map_upper(M: MackeyFunctor, f: GMap) -> RatMatrix:
    return eval_span(M, upper(f))


# ---------------------------------------------------------------------------
# validation

@dataclass
class Report:
    ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, msg: str):
        self.ok = False
        self.failures.append(msg)

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        msg = f"{head}: {self.checked} checks"
        if self.failures:
            msg += f", first failure: {self.failures[0]}"
        return msg


def validate(M: MackeyFunctor, stop_at_first: bool = False) -> Report:
    """Identity and functoriality over all composable generator pairs.

    Composition of spans is by pullback, so functoriality on generators is the
    Mackey-square condition; additivity is built into eval_span.
    """
    rep = Report()
    reps = M.reps
    n = M.num_classes
    for i in range(n):
        ids = identity_span(reps[i])
        rep.checked += 1
        if eval_span(M, ids) != RatMatrix.identity(M.levels[i]):
            rep.fail(f"identity span of class {i} does not act as the identity")
            if stop_at_first:
                return rep
    for i in range(n):
        for j in range(n):
            Bij = hom_basis(reps[i], reps[j])
            for k in range(n):
                Bjk = hom_basis(reps[j], reps[k])
                for S, AS in zip(Bij.spans(), M.action[(i, j)]):
                    for T, AT in zip(Bjk.spans(), M.action[(j, k)]):
                        rep.checked += 1
                        lhs = eval_span(M, compose(S, T))
                        if lhs != AT @ AS:
                            rep.fail(f"functoriality fails for S={S.components[0]} ({i}->{j}), "
                                     f"T={T.components[0]} ({j}->{k})")
                            if stop_at_first:
                                return rep
    return rep


# ---------------------------------------------------------------------------
# morphisms

@dataclass(eq=False)
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    components: tuple  # per class i, RatMatrix target.levels[i] x source.levels[i]

    def __post_init__(self):
        self.components = tuple(self.components)
        for i, c in enumerate(self.components):
            if c.shape != (self.target.levels[i], self.source.levels[i]):
                raise MackeyError(f"component {i} has shape {c.shape}")

    def at(self, X: GSet) -> RatMatrix:
        """The component at an arbitrary G-set (block diagonal over its orbits)."""
        return direct_sum(*[self.components[c] for c in decompose(X).classes]) \
            if X.size else RatMatrix.zeros(0, 0)

    def naturality_report(self) -> Report:
        rep = Report()
        M, N = self.source, self.target
        for (i, j, c, A), (_, _, c2, B) in zip(M.generators(), N.generators()):
            rep.checked += 1
            if self.components[j] @ A != B @ self.components[i]:
                rep.fail(f"naturality fails at generator {c} ({i}->{j})")
        return rep

    def is_natural(self) -> bool:
        return self.naturality_report().ok

    def then(self, other: "MackeyMorphism") -> "MackeyMorphism":
        """other o self"""
        return MackeyMorphism(self.source, other.target,
                              [b @ a for a, b in zip(self.components, other.components)])

    def is_iso(self) -> bool:
        return all(is_invertible(c) for c in self.components)

    def inverse(self) -> "MackeyMorphism":
        inv = [inverse(c) for c in self.components]
        if any(x is None for x in inv):
            raise MackeyError("morphism is not invertible")
        return MackeyMorphism(self.target, self.source, inv)

    def vector(self) -> list:
        return [x for c in self.components for x in c.flatten()]

    def __add__(self, other):
        return MackeyMorphism(self.source, self.target,
                              [a + b for a, b in zip(self.components, other.components)])

    def scale(self, c):
        return MackeyMorphism(self.source, self.target, [a.scale(c) for a in self.components])

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


def identity_morphism(M: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(M, M, [RatMatrix.identity(d) for d in M.levels])


def morphism_from_vector(M: MackeyFunctor, N: MackeyFunctor, vec: Sequence) -> MackeyMorphism:
    comps, pos = [], 0
    for dm, dn in zip(M.levels, N.levels):
        comps.append(RatMatrix.unflatten(vec[pos:pos + dm * dn], dn, dm))
        pos += dm * dn
    return MackeyMorphism(M, N, comps)


def _hom_equations(M: MackeyFunctor, N: MackeyFunctor) -> tuple[list[dict], int]:
    off, pos = [], 0
    for dm, dn in zip(M.levels, N.levels):
        off.append(pos)
        pos += dm * dn
    rows = []
    for (i, j, c, A), (_, _, _, B) in zip(M.generators(), N.generators()):
        dmi, dmj, dni, dnj = M.levels[i], M.levels[j], N.levels[i], N.levels[j]
        if dnj == 0 or dmi == 0:
            continue
        # (theta_j A - B theta_i)[r, c]
        for r in range(dnj):
            for cc in range(dmi):
                eq = {}
                for t in range(dmj):
                    a = A[t, cc]
                    if a:
                        key = off[j] + r * dmj + t
                        eq[key] = eq.get(key, 0) + a
                for t in range(dni):
                    b = B[r, t]
                    if b:
                        key = off[i] + t * dmi + cc
                        eq[key] = eq.get(key, 0) - b
                eq = {k: v for k, v in eq.items() if v != 0}
                if eq:
                    rows.append(eq)
    return rows, pos


def hom_space(M: MackeyFunctor, N: MackeyFunctor) -> list[MackeyMorphism]:
    if M.group != N.group:
        raise MackeyError("functors over different groups")
    rows, n = _hom_equations(M, N)
    return [morphism_from_vector(M, N, v) for v in sparse_kernel(rows, n)]


def hom_dim(M: MackeyFunctor, N: MackeyFunctor) -> int:
    rows, n = _hom_equations(M, N)
    return len(sparse_kernel(rows, n))


def coordinates_in(basis: Sequence[MackeyMorphism], theta: MackeyMorphism) -> list | None:
    """Coefficients of theta in a list of morphisms (None if not in their span)."""
    n = len(theta.vector())
    if not basis:
        return [] if all(x == 0 for x in theta.vector()) else None
    A = RatMatrix.from_cols([b.vector() for b in basis], n)
    X = solve(A, RatMatrix.column(theta.vector()))
    return None if X is None else list(X.col(0))


def find_iso(M: MackeyFunctor, N: MackeyFunctor, seed: int = 0, tries: int = 40) -> MackeyMorphism | None:
    """Search hom_space(M, N) for an invertible element (random integer combinations)."""
    if M.levels != N.levels:
        return None
    basis = hom_space(M, N)
    if not basis:
        return identity_morphism(M) if all(d == 0 for d in M.levels) else None
    rng = random.Random(seed)
    for t in range(tries):
        if t == 0 and len(basis) == 1:
            coeffs = [1]
        else:
            coeffs = [rng.randint(-4, 4) for _ in basis]
        theta = basis[0].scale(0)
        for c, b in zip(coeffs, basis):
            theta = theta + b.scale(c)
        if theta.is_iso():
            return theta
    return None


def direct_sum_functor(M: MackeyFunctor, N: MackeyFunctor) -> MackeyFunctor:
    action = {k: tuple(direct_sum(a, b) for a, b in zip(M.action[k], N.action[k])) for k in M.action}
    return MackeyFunctor(M.group, tuple(a + b for a, b in zip(M.levels, N.levels)), action,
                         f"({M.name}+{N.name})")


def transport(M: MackeyFunctor, P: Sequence[RatMatrix], name: str = "") -> MackeyFunctor:
    """Change basis level-wise by invertible P_i: new action = P_j A P_i^-1."""
    Pinv = [inverse(p) for p in P]
    action = {(i, j): tuple(P[j] @ A @ Pinv[i] for A in mats) for (i, j), mats in M.action.items()}
    return MackeyFunctor(M.group, M.levels, action, name or M.name)


# ---------------------------------------------------------------------------
# Burnside functor

def burnside_functor(G: Group) -> MackeyFunctor:
    """J(X) = k-linearization of hom(1, X); generators act by composition."""
    reps = representatives(G)
    pt = point(G)
    bases = [hom_basis(pt, C) for C in reps]

    def gen(i, j, S):
        cols = [bases[j].vector(compose(b, S)) for b in bases[i].spans()]
        return RatMatrix.from_cols(cols, bases[j].dimension)

    return build_functor(G, [b.dimension for b in bases], gen, "J")


# ---------------------------------------------------------------------------
# representations

class Representation:
    def __init__(self, group: Group, dim: int, matrices: Sequence[RatMatrix], check: bool = True):
        self.group = group
        self.dim = dim
        self.matrices = tuple(matrices)
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if len(self.matrices) != G.order:
            raise MackeyError("need one matrix per group element")
        if any(m.shape != (self.dim, self.dim) for m in self.matrices):
            raise MackeyError("matrix shape mismatch")
        if self.matrices[0] != RatMatrix.identity(self.dim):
            raise MackeyError("identity does not act as identity")
        for g in G:
            for h in G:
                if self.matrices[g] @ self.matrices[h] != self.matrices[G.mul(g, h)]:
                    raise MackeyError(f"not a homomorphism at ({g}, {h})")

    def __repr__(self):
        return f"Representation(dim={self.dim})"

    def __call__(self, g: int) -> RatMatrix:
        return self.matrices[g]

    def fixed_basis(self, H: Iterable[int]) -> RatMatrix:
        H = sorted(H)
        I = RatMatrix.identity(self.dim)
        eqs = [self.matrices[h] - I for h in H if h != 0]
        if not eqs:
            return I
        return kernel_basis(vstack(eqs))

    def to_json(self) -> dict:
        return {"dim": self.dim, "matrices": [m.to_json() for m in self.matrices]}


def trivial_rep(G: Group, dim: int = 1) -> Representation:
    return Representation(G, dim, [RatMatrix.identity(dim)] * G.order, check=False)


def zero_rep(G: Group) -> Representation:
    return Representation(G, 0, [RatMatrix.zeros(0, 0)] * G.order, check=False)


def linearize_gset(X: GSet) -> Representation:
    """kX: permutation matrices with rho(g)[g.x, x] = 1."""
    mats = []
    for g in X.group:
        m = [[0] * X.size for _ in range(X.size)]
        for x in range(X.size):
            m[X.action[g][x]][x] = 1
        mats.append(RatMatrix(X.size, X.size, m))
    return Representation(X.group, X.size, mats, check=False)


def regular_rep(G: Group) -> Representation:
    from .gset import regular
    return linearize_gset(regular(G))


def sign_rep(G: Group, kernel: Iterable[int]) -> Representation:
    """1-dim rep that is +1 on an index-2 subgroup and -1 elsewhere."""
    K = frozenset(kernel)
    return Representation(G, 1, [RatMatrix(1, 1, [[1 if g in K else -1]]) for g in G])


def augmentation_kernel(X: GSet) -> Representation:
    """Vectors of kX with coordinate sum 0 (the standard rep when X = G/C2 for S3)."""
    P = linearize_gset(X)
    n = X.size
    B = RatMatrix.from_cols([[1 if r == c else -1 if r == c + 1 else 0 for r in range(n)]
                             for c in range(n - 1)], n)
    return Representation(X.group, n - 1, [solve(B, m @ B) for m in P.matrices])


def rep_direct_sum(R1: Representation, R2: Representation) -> Representation:
    return Representation(R1.group, R1.dim + R2.dim,
                          [direct_sum(a, b) for a, b in zip(R1.matrices, R2.matrices)], check=False)


def rep_conjugate(R: Representation, P: RatMatrix) -> Representation:
    Pi = inverse(P)
    return Representation(R.group, R.dim, [P @ m @ Pi for m in R.matrices], check=False)


def rep_hom_dim(R1: Representation, R2: Representation) -> int:
    """dim of G-equivariant linear maps R1 -> R2."""
    return len(rep_hom_space(R1, R2))


def rep_hom_space(R1: Representation, R2: Representation) -> list[RatMatrix]:
    d1, d2 = R1.dim, R2.dim
    rows = []
    for g in R1.group:
        A, B = R1(g), R2(g)
        # (X A - B X)[r, c]
        for r in range(d2):
            for c in range(d1):
                eq = {}
                for t in range(d1):
                    if A[t, c]:
                        eq[r * d1 + t] = eq.get(r * d1 + t, 0) + A[t, c]
                for t in range(d2):
                    if B[r, t]:
                        eq[t * d1 + c] = eq.get(t * d1 + c, 0) - B[r, t]
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return [RatMatrix.unflatten(v, d2, d1) for v in sparse_kernel(rows, d1 * d2)]


def k_star_span(s: SpanClass) -> RatMatrix:
    """k_*(S): kV -> kU, y |-> sum over apex points s with v(s) = y of u(s)."""
    G = s.group
    U, V = s.source, s.target
    m = [[0] * V.size for _ in range(U.size)]
    for k, u, v in s.components:
        for g in coset_reps(G, _sub(G).rep(k)):
            m[U.action[g][u]][V.action[g][v]] += 1
    return RatMatrix(U.size, V.size, m)


def fixed_point_functor(R: Representation) -> MackeyFunctor:
    """R^X = equivariant maps X -> R; a span (u, S, v) acts by tau |-> sum over v-fibres of tau o u."""
    G = R.group
    sub = _sub(G)
    reps = representatives(G)
    bases = [R.fixed_basis(sub.rep(i)) for i in range(sub.num_classes)]
    creps = [coset_reps(G, sub.rep(i)) for i in range(sub.num_classes)]

    def gen(i, j, S):
        (k, u0, v0), = S.components
        Ci, Cj = reps[i], reps[j]
        total = RatMatrix.zeros(R.dim, R.dim)
        for a in coset_reps(G, sub.rep(k)):
            if Cj.action[a][v0] == 0:
                total = total + R(creps[i][Ci.action[a][u0]])
        X = solve(bases[j], total @ bases[i])
        if X is None:
            raise MackeyError("fixed-point transport left the fixed subspace")
        return X

    return build_functor(G, [b.cols for b in bases], gen, "R^-")


# ---------------------------------------------------------------------------
# restriction, transfer, cohomological check

def _sigma(G: Group, H: frozenset, K: frozenset) -> GMap:
    GH, GK = coset_gset(G, H), coset_gset(G, K)
    return GMap(GK, GH, [GH.action[g][0] for g in coset_reps(G, K)], check=False)


def _check_pair(G: Group, H, K) -> tuple[frozenset, frozenset]:
    H, K = frozenset(H), frozenset(K)
    if not (G.is_subgroup(H) and G.is_subgroup(K)):
        raise GroupError("arguments must be subgroups")
    if not K <= H:
        raise GroupError("K is not contained in H")
    return H, K


def restriction(M: MackeyFunctor, H, K) -> RatMatrix:
    """M(G/H) -> M(G/K): the image of the span G/H <- G/K = G/K."""
    H, K = _check_pair(M.group, H, K)
    return eval_span(M, upper(_sigma(M.group, H, K)))


def transfer(M: MackeyFunctor, H, K) -> RatMatrix:
    """M(G/K) -> M(G/H): the image of the span G/K = G/K -> G/H."""
    H, K = _check_pair(M.group, H, K)
    return eval_span(M, lower(_sigma(M.group, H, K)))


def cohomological_check(M: MackeyFunctor) -> Report:
    G = M.group
    sub = _sub(G)
    rep = Report()
    rep.details["pairs"] = []
    for i in range(sub.num_classes):
        H = sub.rep(i)
        for K in sub.subgroups:
            if not K <= H:
                continue
            tr = transfer(M, H, K) @ restriction(M, H, K)
            n = subgroup_index(G, H, K)
            ok = tr == RatMatrix.identity(M.levels[i]).scale(n)
            rep.checked += 1
            rep.details["pairs"].append({"H": sorted(H), "K": sorted(K), "index": n,
                                         "ok": ok, "tr": tr})
            if not ok:
                rep.fail(f"t o r != [H:K] id for H={sorted(H)}, K={sorted(K)}")
    return rep


# ---------------------------------------------------------------------------
# Dress construction

def dress(M: MackeyFunctor, Y: GSet) -> MackeyFunctor:
    """M_Y(U) = M(U x Y); a generator S acts as M(S x id_Y)."""
    G = M.group
    reps = representatives(G)
    idY = identity_span(Y)
    levels = [eval_object(M, product(C, Y)) for C in reps]
    return build_functor(G, levels, lambda i, j, S: eval_span(M, tensor(S, idY)),
                         f"{M.name}_Y")


# ---------------------------------------------------------------------------
# colim(M, k_*)

def colim_k(M: MackeyFunctor) -> Representation:
    """The coend of M(C) (x) kC over representatives, as a representation of G."""
    G = M.group
    reps = M.reps
    n = M.num_classes
    off, pos = [], 0
    for i in range(n):
        off.append(pos)
        pos += M.levels[i] * reps[i].size
    rel = SparseColumns(pos)
    for i, j, c, A in M.generators():
        di, dj = M.levels[i], M.levels[j]
        Ci, Cj = reps[i], reps[j]
        K = k_star_span(SpanClass(Ci, Cj, (c,)))  # |Ci| x |Cj|
        for m in range(di):
            for y in range(Cj.size):
                col = {}
                for t in range(dj):
                    a = A[t, m]
                    if a:
                        key = off[j] + t * Cj.size + y
                        col[key] = col.get(key, 0) + a
                for x in range(Ci.size):
                    b = K[x, y]
                    if b:
                        key = off[i] + m * Ci.size + x
                        col[key] = col.get(key, 0) - b
                rel.add(col)
    Q = rel.quotient()
    mats = []
    for g in G:
        blocks = []
        for i in range(n):
            P = [[0] * reps[i].size for _ in range(reps[i].size)]
            for x in range(reps[i].size):
                P[reps[i].action[g][x]][x] = 1
            blocks.append(kron(RatMatrix.identity(M.levels[i]), RatMatrix(reps[i].size, reps[i].size, P)))
        amb = direct_sum(*blocks) if blocks else RatMatrix.zeros(0, 0)
        mats.append(Q.projection @ amb @ Q.section)
    return Representation(G, Q.dim, mats)
