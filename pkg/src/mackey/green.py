"""
Green functors (monoids for the convolution product) and their modules.

Products are stored on representative pairs only,
    mult[(i, j)]: A(C_i) (x) A(C_j) -> A(C_i x C_j),
with the tensor factor of C_i outermost in the Kronecker ordering and the
codomain in the orbit bookkeeping of eval_object.  Everything at other
objects is induced through the canonical decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .exact_linalg import RatMatrix, direct_sum, kron, q, sparse_kernel, vstack
from .finite_group import Group
from .functor import (MackeyFunctor, MackeyMorphism, Report, burnside_functor,
                      cohomological_check, dress, eval_object, eval_span, identity_morphism,
                      morphism_from_vector, _hom_equations)
from .gset import (GMap, GSet, GSetError, _sub, conjugation_gset, decompose, hom_gset, identity_map,
                   map_product, point, product, rep_gset)
from .span_category import SpanClass, compose, hom_basis, identity_span, lower, tensor, unit_span, upper


class GreenError(ValueError):
    pass


@dataclass(eq=False)
class GreenFunctor:
    underlying: MackeyFunctor
    mult: dict  # (i, j) -> RatMatrix
    unit: tuple  # vector in A(1)
    name: str = ""

    def __post_init__(self):
        A = self.underlying
        reps = A.reps
        self.unit = tuple(q(x) for x in self.unit)
        if len(self.unit) != A.levels[-1]:
            raise GreenError("unit does not lie in A(1)")
        for i, Ci in enumerate(reps):
            for j, Cj in enumerate(reps):
                m = self.mult.get((i, j))
                shape = (eval_object(A, product(Ci, Cj)), A.levels[i] * A.levels[j])
                if m is None or m.shape != shape:
                    raise GreenError(f"multiplication at ({i}, {j}) missing or has the wrong shape")

    @property
    def group(self) -> Group:
        return self.underlying.group

    def __repr__(self):
        return f"GreenFunctor({self.name or self.underlying.name}, levels={list(self.underlying.levels)})"


def product_at(A: MackeyFunctor, pairing: dict, X: GSet, Y: GSet, right: MackeyFunctor | None = None) -> RatMatrix:
    """A(X) (x) R(Y) -> R'(X x Y) induced from representative data.

    pairing[(i, j)] : A(C_i) (x) R(C_j) -> T(C_i x C_j); `right` is R (defaults
    to A) and the target functor T is the one whose eval_span is used, passed
    as right when A acts on a module.
    """
    R = right or A
    T = right or A
    dX, dY = decompose(X), decompose(Y)
    oX, oY = dX.offsets(A.levels), dY.offsets(R.levels)
    XY = product(X, Y)
    rows = eval_object(T, XY)
    nY = oY[-1]
    out = [[0] * (oX[-1] * nY) for _ in range(rows)]
    for a, i in enumerate(dX.classes):
        for b, j in enumerate(dY.classes):
            inc = eval_span(T, lower(map_product(dX.inclusion(a), dY.inclusion(b))))
            blk = inc @ pairing[(i, j)]
            di, dj = A.levels[i], R.levels[j]
            for x in range(di):
                for y in range(dj):
                    col = (oX[a] + x) * nY + oY[b] + y
                    src = x * dj + y
                    for r in range(rows):
                        v = blk[r, src]
                        if v:
                            out[r][col] += v
    return RatMatrix(rows, oX[-1] * nY, out)


def mult_at(A: GreenFunctor, X: GSet, Y: GSet) -> RatMatrix:
    return product_at(A.underlying, A.mult, X, Y)


def _kron_id(M: RatMatrix, n: int) -> RatMatrix:
    return kron(M, RatMatrix.identity(n))


def _id_kron(n: int, M: RatMatrix) -> RatMatrix:
    return kron(RatMatrix.identity(n), M)


def _check_pairing(A: MackeyFunctor, R: MackeyFunctor, pairing: dict, rep: Report, label: str):
    """Naturality of a pairing A(C_i) (x) R(C_j) -> R(C_i x C_j) in both variables."""
    reps = A.reps
    n = A.num_classes
    for i, i2, c, S in A.generators():
        Sp = SpanClass(reps[i], reps[i2], (c,))
        for j in range(n):
            rep.checked += 1
            lhs = pairing[(i2, j)] @ _kron_id(S, R.levels[j])
            rhs = eval_span(R, tensor(Sp, identity_span(reps[j]))) @ pairing[(i, j)]
            if lhs != rhs:
                rep.fail(f"{label}: not natural in the first variable at generator {c} ({i}->{i2}), j={j}")
    for j, j2, c, T in R.generators():
        Tp = SpanClass(reps[j], reps[j2], (c,))
        for i in range(n):
            rep.checked += 1
            lhs = pairing[(i, j2)] @ _id_kron(A.levels[i], T)
            rhs = eval_span(R, tensor(identity_span(reps[i]), Tp)) @ pairing[(i, j)]
            if lhs != rhs:
                rep.fail(f"{label}: not natural in the second variable at generator {c} ({j}->{j2}), i={i}")


def validate_green(A: GreenFunctor) -> Report:
    rep = Report()
    M = A.underlying
    reps = M.reps
    n = M.num_classes
    _check_pairing(M, M, A.mult, rep, "multiplication")
    # associativity: (ab)c = a(bc) in A(C_i x C_j x C_l)
    for i, j, l in iproduct(range(n), repeat=3):
        Ci, Cj, Cl = reps[i], reps[j], reps[l]
        rep.checked += 1
        lhs = mult_at(A, product(Ci, Cj), Cl) @ _kron_id(A.mult[(i, j)], M.levels[l])
        rhs = mult_at(A, Ci, product(Cj, Cl)) @ _id_kron(M.levels[i], A.mult[(j, l)])
        if lhs != rhs:
            rep.fail(f"associativity fails at classes ({i}, {j}, {l})")
    eta = RatMatrix.column(A.unit)
    top = n - 1
    for i in range(n):
        I = RatMatrix.identity(M.levels[i])
        rep.checked += 2
        if A.mult[(top, i)] @ kron(eta, I) != I:
            rep.fail(f"left unit law fails at class {i}")
        if A.mult[(i, top)] @ kron(I, eta) != I:
            rep.fail(f"right unit law fails at class {i}")
    return rep


def cohomological_green_report(A: GreenFunctor) -> Report:
    return cohomological_check(A.underlying)


# ---------------------------------------------------------------------------
# Burnside Green functor

def _yoneda_vector(J: MackeyFunctor, x: SpanClass) -> tuple:
    """Coordinates in J(X) of a span x: 1 -> X."""
    pt = J.reps[-1]
    e = hom_basis(pt, pt).index[identity_span(pt).components[0]]
    return eval_span(J, x).col(e)


def burnside_green(G: Group) -> GreenFunctor:
    J = burnside_functor(G)
    reps = J.reps
    pt = reps[-1]
    bases = [hom_basis(pt, C) for C in reps]
    mult = {}
    for i, j in iproduct(range(len(reps)), repeat=2):
        cols = []
        for a in bases[i].spans():
            for b in bases[j].spans():
                t = tensor(a, b)  # 1 x 1 = 1 -> C_i x C_j
                cols.append(_yoneda_vector(J, SpanClass(pt, t.target, t.components)))
        mult[(i, j)] = RatMatrix.from_cols(cols, eval_object(J, product(reps[i], reps[j])))
    unit = bases[-1].vector(identity_span(pt))
    return GreenFunctor(J, mult, tuple(unit), "J")


def burnside_ring_table(G: Group) -> list:
    """Structure constants at the top level: table[a][b] = coefficient vector of [G/H_a][G/H_b]."""
    A = burnside_green(G)
    top = A.underlying.num_classes - 1
    d = A.underlying.levels[top]
    mu = A.mult[(top, top)]
    return [[list(mu.col(a * d + b)) for b in range(d)] for a in range(d)]


# ---------------------------------------------------------------------------
# converting between A(W x Y) and the dressed bookkeeping of A_Y at W

def _to_dressed(A: MackeyFunctor, W: GSet, Y: GSet) -> RatMatrix:
    """A(W x Y) -> sum over orbits c of W of A(C_c x Y)."""
    dW = decompose(W)
    idY = identity_map(Y)
    blocks = [eval_span(A, upper(map_product(dW.inclusion(c), idY))) for c in range(len(dW.orbits))]
    return vstack(blocks, eval_object(A, product(W, Y)))


# ---------------------------------------------------------------------------
# crossed G-sets

@dataclass(eq=False)
class CrossedGSet:
    carrier: GSet
    grading: tuple

    def __post_init__(self):
        X = self.carrier
        G = X.group
        self.grading = tuple(self.grading)
        if len(self.grading) != X.size:
            raise GreenError("grading must have one entry per point")
        for g in G:
            for x in range(X.size):
                if self.grading[X.action[g][x]] != G.conj(g, self.grading[x]):
                    raise GreenError(f"grading is not equivariant: |g x| != g |x| g^-1 at g={g}, x={x}")

    @property
    def group(self) -> Group:
        return self.carrier.group

    def to_json(self) -> dict:
        return {"gset": self.carrier.to_json(), "grading": list(self.grading)}


@dataclass(eq=False)
class CrossedMonoid:
    crossed: CrossedGSet
    mult: tuple  # values of Y x Y -> Y at pair_index x*|Y|+y
    unit: int


def is_crossed_monoid(Y: CrossedMonoid) -> Report:
    rep = Report()
    X = Y.crossed.carrier
    G = X.group
    n = X.size
    m = Y.mult
    deg = Y.crossed.grading
    if len(m) != n * n:
        rep.fail("multiplication table has the wrong size")
        return rep
    for g in G:
        rep.checked += 1
        if X.action[g][Y.unit] != Y.unit:
            rep.fail(f"unit point is not fixed by g={g}")
            break
    for g, x, y in iproduct(G, range(n), range(n)):
        rep.checked += 1
        if m[X.action[g][x] * n + X.action[g][y]] != X.action[g][m[x * n + y]]:
            rep.fail(f"multiplication is not equivariant at g={g}, ({x}, {y})")
            break
    for x, y, z in iproduct(range(n), repeat=3):
        rep.checked += 1
        if m[m[x * n + y] * n + z] != m[x * n + m[y * n + z]]:
            rep.fail(f"multiplication is not associative at ({x}, {y}, {z})")
            break
    for x in range(n):
        rep.checked += 1
        if m[Y.unit * n + x] != x or m[x * n + Y.unit] != x:
            rep.fail(f"unit law fails at {x}")
            break
    for x, y in iproduct(range(n), repeat=2):
        rep.checked += 1
        if deg[m[x * n + y]] != G.mul(deg[x], deg[y]):
            rep.fail(f"grading is not multiplicative at ({x}, {y})")
            break
    rep.checked += 1
    if deg[Y.unit] != 0:
        rep.fail("the unit is not graded by the identity")
    return rep


def point_crossed_monoid(G: Group) -> CrossedMonoid:
    return CrossedMonoid(CrossedGSet(point(G), (0,)), (0,), 0)


def conjugation_crossed_monoid(G: Group) -> CrossedMonoid:
    """G_c with the group law, graded by the identity map."""
    X = conjugation_gset(G)
    return CrossedMonoid(CrossedGSet(X, tuple(range(G.order))),
                         tuple(G.mul(x, y) for x in G for y in G), 0)


def trivially_graded(X: GSet, mult, unit: int) -> CrossedMonoid:
    """A monoid in G-sets viewed as a crossed monoid with grading constant at e."""
    return CrossedMonoid(CrossedGSet(X, (0,) * X.size), tuple(mult), unit)


def dress_green(A: GreenFunctor, Y: CrossedMonoid) -> GreenFunctor:
    rep = is_crossed_monoid(Y)
    if not rep.ok:
        raise GreenError(f"not a crossed monoid: {rep.failures[0]}")
    M = A.underlying
    G = M.group
    Yc = Y.crossed.carrier
    deg = Y.crossed.grading
    n = Yc.size
    AY = dress(M, Yc)
    reps = M.reps
    mult = {}
    for i, j in iproduct(range(M.num_classes), repeat=2):
        Ci, Cj = reps[i], reps[j]
        src = product(product(Ci, Yc), product(Cj, Yc))
        CC = product(Ci, Cj)
        tgt = product(CC, Yc)
        vals = []
        for u in range(Ci.size):
            for y in range(n):
                for v in range(Cj.size):
                    for y2 in range(n):
                        gv = Cj.action[deg[y]][v]
                        vals.append((u * Cj.size + gv) * n + Y.mult[y * n + y2])
        mm = GMap(src, tgt, vals)
        mu = mult_at(A, product(Ci, Yc), product(Cj, Yc))
        mult[(i, j)] = _to_dressed(M, CC, Yc) @ eval_span(M, lower(mm)) @ mu
    e = GMap(point(G), Yc, [Y.unit])
    unit = eval_span(M, lower(e)).apply(A.unit)
    return GreenFunctor(AY, mult, unit, f"{A.name}_Y")


# ---------------------------------------------------------------------------
# the end of X |-> [X, X]

@dataclass
class EndResult:
    gset: GSet
    families: list  # tuples of per-representative value tuples
    bijection: GMap  # gset -> G_c
    certified: bool


def end_of_homs(G: Group, bound: int = 24) -> EndResult:
    """Families r_X: X -> X over representatives commuting with every G-map between them."""
    if G.order > bound:
        raise GreenError(f"group order {G.order} exceeds bound {bound}")
    reps = [rep_gset(G, i) for i in range(_sub(G).num_classes)]
    maps = [(i, j, f) for i, Ci in enumerate(reps) for j, Cj in enumerate(reps) for f in hom_gset(Ci, Cj)]
    out_maps = {}
    for i, j, f in maps:
        out_maps.setdefault(i, []).append((j, f))
    variables = [(i, x) for i, C in enumerate(reps) for x in range(C.size)]

    def propagate(assign, i, x):
        stack = [(i, x)]
        while stack:
            a, y = stack.pop()
            val = assign[(a, y)]
            for b, f in out_maps.get(a, []):
                key = (b, f(y))
                forced = f(val)
                cur = assign.get(key)
                if cur is None:
                    assign[key] = forced
                    stack.append(key)
                elif cur != forced:
                    return False
        return True

    def consistent(assign):
        for i, j, f in maps:
            for x in range(reps[i].size):
                a, b = assign.get((i, x)), assign.get((j, f(x)))
                if a is not None and b is not None and f(a) != b:
                    return False
        return True

    found = []

    def search(assign):
        free = next((v for v in variables if v not in assign), None)
        if free is None:
            if consistent(assign):
                found.append(tuple(tuple(assign[(i, x)] for x in range(C.size)) for i, C in enumerate(reps)))
            return
        i, x = free
        for val in range(reps[i].size):
            trial = dict(assign)
            trial[free] = val
            if propagate(trial, i, x):
                search(trial)

    search({})
    found.sort()
    index = {r: t for t, r in enumerate(found)}
    action = []
    for g in G:
        gi = G.inv(g)
        row = []
        for r in found:
            new = tuple(tuple(C.action[g][r[i][C.action[gi][x]]] for x in range(C.size))
                        for i, C in enumerate(reps))
            row.append(index[new])
        action.append(row)
    E = GSet(G, len(found), action)
    # r |-> r_{G/e}(e); point p of G/e is the coset {p}
    try:
        bij = GMap(E, conjugation_gset(G), [r[0][0] for r in found])
        ok = bij.is_bijective()
    except GSetError:
        bij, ok = None, False
    return EndResult(E, found, bij, ok)


# ---------------------------------------------------------------------------
# the endomorphism Green functor Hom(M, M)

def green_from_rep_end(M: MackeyFunctor) -> GreenFunctor:
    """Hom(M, M)(U) = Mky(M_U, M) with (theta . phi)_X = theta_X o phi_{X x U}."""
    from .convolution import internal_hom
    ih = internal_hom(M, M)
    H = ih.functor
    reps = M.reps
    n = M.num_classes

    def at_object(phi: MackeyMorphism, V: GSet, Y: GSet) -> RatMatrix:
        """phi: M_V -> M evaluated at Y, as a map M(Y x V) -> M(Y)."""
        dY = decompose(Y)
        blocks = [phi.components[c] for c in dY.classes]
        D = direct_sum(*blocks)
        return D @ _to_dressed(M, Y, V)

    mult = {}
    for i, j in iproduct(range(n), repeat=2):
        Ci, Cj = reps[i], reps[j]
        W = product(Ci, Cj)
        dW = decompose(W)
        cols = []
        for theta in ih.bases[i]:
            for phi in ih.bases[j]:
                psi = [theta.components[k] @ at_object(phi, Cj, product(reps[k], Ci)) for k in range(n)]
                vec = []
                for c in range(len(dW.orbits)):
                    cls = dW.classes[c]
                    restr = [p @ eval_span(M, tensor(identity_span(reps[k]), lower(dW.inclusion(c))))
                             for k, p in enumerate(psi)]
                    vec.extend(ih.coordinates(cls, MackeyMorphism(ih.dressed[cls], M, restr)))
                cols.append(vec)
        mult[(i, j)] = RatMatrix.from_cols(cols, eval_object(H, W))
    ident = MackeyMorphism(ih.dressed[n - 1], M, identity_morphism(M).components)
    unit = ih.coordinates(n - 1, ident)
    return GreenFunctor(H, mult, unit, f"End({M.name})")


# ---------------------------------------------------------------------------
# Green algebra W_A with entries A(C_i x C_j)

@dataclass
class GreenAlgebra:
    green: GreenFunctor
    blocks: dict  # (i, j) -> (offset, dim)
    dim: int
    structure: dict = field(repr=False)  # (a, b) -> sparse product vector
    unit: list = field(default_factory=list)
    idempotents: list = field(default_factory=list)

    def block_of(self, a: int) -> tuple:
        for key, (off, d) in self.blocks.items():
            if off <= a < off + d:
                return key
        raise IndexError(a)

    def mul(self, x, y) -> list:
        """x * y with x in (U, V) and y in (V, W) giving (U, W) ("y after x")."""
        out = [0] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for c, v in self.structure.get((a, b), {}).items():
                    out[c] += xa * yb * v
        return out

    def basis_vector(self, a: int) -> list:
        v = [0] * self.dim
        v[a] = 1
        return v


def green_algebra(A: GreenFunctor) -> GreenAlgebra:
    M = A.underlying
    reps = M.reps
    n = M.num_classes
    blocks, pos = {}, 0
    for i, j in iproduct(range(n), repeat=2):
        d = eval_object(M, product(reps[i], reps[j]))
        blocks[(i, j)] = (pos, d)
        pos += d
    structure = {}
    for i, j, l in iproduct(range(n), repeat=3):
        U, V, W = reps[i], reps[j], reps[l]
        UV, VW, UVW = product(U, V), product(V, W), product(product(U, V), W)
        big = product(UV, VW)
        dup = GMap(UVW, big, [((u * V.size + v) * V.size + v) * W.size + w
                              for u in range(U.size) for v in range(V.size) for w in range(W.size)])
        proj = GMap(UVW, product(U, W), [u * W.size + w
                                         for u in range(U.size) for v in range(V.size) for w in range(W.size)])
        comp = eval_span(M, compose(upper(dup), lower(proj))) @ mult_at(A, UV, VW)
        (o1, d1), (o2, d2), (o3, _) = blocks[(i, j)], blocks[(j, l)], blocks[(i, l)]
        for a in range(d1):
            for b in range(d2):
                col = comp.col(a * d2 + b)
                nz = {o3 + c: v for c, v in enumerate(col) if v}
                if nz:
                    structure[(o1 + a, o2 + b)] = nz
    alg = GreenAlgebra(A, blocks, pos, structure)
    unit = [0] * pos
    for i in range(n):
        e = [0] * pos
        U = reps[i]
        vec = eval_span(M, unit_span(U)).apply(A.unit)
        off, d = blocks[(i, i)]
        for t, v in enumerate(vec):
            e[off + t] = v
            unit[off + t] += v
        alg.idempotents.append(e)
    alg.unit = unit
    return alg


def check_algebra(alg: GreenAlgebra) -> Report:
    rep = Report()
    n = alg.dim
    basis = [alg.basis_vector(a) for a in range(n)]
    for a, b, c in iproduct(range(n), repeat=3):
        rep.checked += 1
        if alg.mul(alg.mul(basis[a], basis[b]), basis[c]) != alg.mul(basis[a], alg.mul(basis[b], basis[c])):
            rep.fail(f"not associative on basis ({a}, {b}, {c})")
    for a in range(n):
        rep.checked += 1
        if alg.mul(alg.unit, basis[a]) != basis[a] or alg.mul(basis[a], alg.unit) != basis[a]:
            rep.fail(f"unit law fails on basis vector {a}")
    for s, e in enumerate(alg.idempotents):
        for t, f in enumerate(alg.idempotents):
            rep.checked += 1
            want = e if s == t else [0] * n
            if alg.mul(e, f) != want:
                rep.fail(f"e_{s} e_{t} is not delta e_{s}")
    return rep


# ---------------------------------------------------------------------------
# modules

@dataclass(eq=False)
class GreenModule:
    algebra: GreenFunctor
    underlying: MackeyFunctor
    action: dict  # (i, j) -> RatMatrix A(C_i) (x) M(C_j) -> M(C_i x C_j)
    name: str = ""


def action_at(m: GreenModule, X: GSet, Y: GSet) -> RatMatrix:
    return product_at(m.algebra.underlying, m.action, X, Y, right=m.underlying)


def validate_module(m: GreenModule) -> Report:
    rep = Report()
    A = m.algebra
    Am, M = A.underlying, m.underlying
    reps = Am.reps
    n = Am.num_classes
    _check_pairing(Am, M, m.action, rep, "action")
    top = n - 1
    eta = RatMatrix.column(A.unit)
    for j in range(n):
        rep.checked += 1
        I = RatMatrix.identity(M.levels[j])
        if m.action[(top, j)] @ kron(eta, I) != I:
            rep.fail(f"unit acts non-trivially at class {j}")
    for i, j, l in iproduct(range(n), repeat=3):
        Ci, Cj, Cl = reps[i], reps[j], reps[l]
        rep.checked += 1
        lhs = action_at(m, Ci, product(Cj, Cl)) @ _id_kron(Am.levels[i], m.action[(j, l)])
        rhs = action_at(m, product(Ci, Cj), Cl) @ _kron_id(A.mult[(i, j)], M.levels[l])
        if lhs != rhs:
            rep.fail(f"action is not associative at classes ({i}, {j}, {l})")
    return rep


def regular_module(A: GreenFunctor) -> GreenModule:
    return GreenModule(A, A.underlying, dict(A.mult), f"{A.name} over itself")


def dress_module(m: GreenModule, U: GSet) -> GreenModule:
    """M_U with a.(x) = alpha_{V, W x U}(a (x) x), re-expressed in the bookkeeping of M_U."""
    M = m.underlying
    MU = dress(M, U)
    reps = M.reps
    action = {}
    for i, j in iproduct(range(M.num_classes), repeat=2):
        Ci, Cj = reps[i], reps[j]
        alpha = action_at(m, Ci, product(Cj, U))
        action[(i, j)] = _to_dressed(M, product(Ci, Cj), U) @ alpha
    return GreenModule(m.algebra, MU, action, f"{m.name}_U")


def burnside_module(J: GreenFunctor, M: MackeyFunctor) -> GreenModule:
    """Every Mackey functor is a J-module: x . m = M(x x id) m for x: 1 -> C_i."""
    reps = M.reps
    pt = reps[-1]
    action = {}
    for i, j in iproduct(range(M.num_classes), repeat=2):
        mats = []
        for x in hom_basis(pt, reps[i]).spans():
            t = tensor(x, identity_span(reps[j]))
            mats.append(eval_span(M, SpanClass(reps[j], t.target, t.components)))
        # columns ordered (x outer, m inner)
        rows = eval_object(M, product(reps[i], reps[j]))
        cols = [A.col(c) for A in mats for c in range(M.levels[j])]
        action[(i, j)] = RatMatrix.from_cols(cols, rows)
    return GreenModule(J, M, action, f"{M.name} over J")


def module_hom(m1: GreenModule, m2: GreenModule) -> list[MackeyMorphism]:
    """Mackey morphisms theta with theta(a . x) = a . theta(x) on representatives."""
    if m1.algebra is not m2.algebra:
        raise GreenError("modules over different Green functors")
    A = m1.algebra.underlying
    M, N = m1.underlying, m2.underlying
    rows, nvars = _hom_equations(M, N)
    off, pos = [], 0
    for dm, dn in zip(M.levels, N.levels):
        off.append(pos)
        pos += dm * dn
    reps = A.reps
    for i, j in iproduct(range(A.num_classes), repeat=2):
        X = product(reps[i], reps[j])
        dX = decompose(X)
        oM, oN = dX.offsets(M.levels), dX.offsets(N.levels)
        a1, a2 = m1.action[(i, j)], m2.action[(i, j)]
        dNj, dMj = N.levels[j], M.levels[j]
        for a in range(A.levels[i]):
            for x in range(dMj):
                v = a1.col(a * dMj + x)  # in M(X)
                # theta_X(v) - a2 (a (x) theta_j e_x), row by row of N(X)
                for b, c in enumerate(dX.classes):
                    dmc = M.levels[c]
                    for r in range(N.levels[c]):
                        eq = {}
                        row = oN[b] + r
                        for t in range(dmc):
                            val = v[oM[b] + t]
                            if val:
                                key = off[c] + r * dmc + t
                                eq[key] = eq.get(key, 0) + val
                        for t in range(dNj):
                            w = a2[row, a * dNj + t]
                            if w:
                                key = off[j] + t * dMj + x
                                eq[key] = eq.get(key, 0) - w
                        eq = {k: val for k, val in eq.items() if val}
                        if eq:
                            rows.append(eq)
    return [morphism_from_vector(M, N, v) for v in sparse_kernel(rows, nvars)]
