"""
Day convolution of Mackey functors, computed as a coend over the
representative transitive G-sets only (they are dense in the span category).

(M * N)(C_k) = quotient of  sum_{i,j} hom(C_i x C_j, C_k) (x) M(C_i) (x) N(C_j)
by the relations that slide a generator span through either variable.
Ambient coordinates are ordered block (i, j), then phi, then m, then n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact_linalg import RatMatrix, SparseColumns, QuotientSpace, solve
from .functor import (MackeyError, MackeyFunctor, MackeyMorphism, Report, build_functor, eval_span,
                      hom_dim, hom_space, identity_morphism, dress, representatives)
from .gset import GSet, decompose, map_product, product, swap_map
from .span_category import (SpanClass, compose, compose_matrix_post, compose_matrix_pre, hom_basis,
                            identity_span, lower, tensor, transpose, upper)


@dataclass
class CoendSpace:
    target: int
    blocks: dict  # (i, j) -> (offset, hom dim, dim M_i, dim N_j)
    ambient_dim: int
    quotient: QuotientSpace
    relations: list = field(repr=False, default_factory=list)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    def coordinate(self, i, j, r, m, n) -> int:
        off, h, dm, dn = self.blocks[(i, j)]
        return off + (r * dm + m) * dn + n

    def decode(self, p: int) -> tuple:
        """Inverse of coordinate: (i, j, r, m, n)."""
        for (i, j), (off, h, dm, dn) in self.blocks.items():
            if off <= p < off + h * dm * dn:
                x = p - off
                return i, j, x // (dm * dn), (x // dn) % dm, x % dn
        raise IndexError(p)

    def free_coordinates(self) -> list[int]:
        S = self.quotient.section
        return [next(r for r in range(S.rows) if S[r, c] != 0) for c in range(S.cols)]

    def element(self, i, j, phi_vec, m_vec, n_vec) -> dict:
        """Sparse ambient vector of phi (x) m (x) n in block (i, j)."""
        out = {}
        for r, a in enumerate(phi_vec):
            if not a:
                continue
            for m, b in enumerate(m_vec):
                if not b:
                    continue
                for n, c in enumerate(n_vec):
                    if c:
                        key = self.coordinate(i, j, r, m, n)
                        out[key] = out.get(key, 0) + a * b * c
        return out


@dataclass(eq=False)
class Convolution:
    left: MackeyFunctor
    right: MackeyFunctor
    spaces: list
    functor: MackeyFunctor


def _pair(G, i, j):
    reps = representatives(G)
    return product(reps[i], reps[j])


def _coend_space(M: MackeyFunctor, N: MackeyFunctor, k: int) -> CoendSpace:
    reps = M.reps
    n = M.num_classes
    Ck = reps[k]
    blocks, pos = {}, 0
    for i in range(n):
        for j in range(n):
            h = hom_basis(product(reps[i], reps[j]), Ck).dimension
            blocks[(i, j)] = (pos, h, M.levels[i], N.levels[j])
            pos += h * M.levels[i] * N.levels[j]
    space = CoendSpace(k, blocks, pos, None)
    rel = SparseColumns(pos)
    # first variable: S: C_i -> C_i2
    for i, i2, c, A in M.generators():
        S = SpanClass(reps[i], reps[i2], (c,))
        for j in range(n):
            dn = N.levels[j]
            if dn == 0 or (M.levels[i] == 0):
                continue
            Pre = compose_matrix_pre(tensor(S, identity_span(reps[j])), product(reps[i], reps[j]),
                                     product(reps[i2], reps[j]), Ck)
            for f in range(blocks[(i2, j)][1]):
                pre_col = [(r, Pre[r][f]) for r in range(len(Pre)) if Pre[r][f]]
                for m in range(M.levels[i]):
                    a_col = [(t, A[t, m]) for t in range(A.rows) if A[t, m]]
                    for nn in range(dn):
                        col = {}
                        for r, x in pre_col:
                            key = space.coordinate(i, j, r, m, nn)
                            col[key] = col.get(key, 0) + x
                        for t, x in a_col:
                            key = space.coordinate(i2, j, f, t, nn)
                            col[key] = col.get(key, 0) - x
                        rel.add(col)
    # second variable: T: C_j -> C_j2
    for j, j2, c, B in N.generators():
        T = SpanClass(reps[j], reps[j2], (c,))
        for i in range(n):
            dm = M.levels[i]
            if dm == 0 or N.levels[j] == 0:
                continue
            Pre = compose_matrix_pre(tensor(identity_span(reps[i]), T), product(reps[i], reps[j]),
                                     product(reps[i], reps[j2]), Ck)
            for f in range(blocks[(i, j2)][1]):
                pre_col = [(r, Pre[r][f]) for r in range(len(Pre)) if Pre[r][f]]
                for nn in range(N.levels[j]):
                    b_col = [(t, B[t, nn]) for t in range(B.rows) if B[t, nn]]
                    for m in range(dm):
                        col = {}
                        for r, x in pre_col:
                            key = space.coordinate(i, j, r, m, nn)
                            col[key] = col.get(key, 0) + x
                        for t, x in b_col:
                            key = space.coordinate(i, j2, f, m, t)
                            col[key] = col.get(key, 0) - x
                        rel.add(col)
    space.quotient = rel.quotient()
    space.relations = rel.columns
    return space


def _post_apply(space: CoendSpace, target: CoendSpace, post: dict, vec: dict) -> dict:
    """Apply phi |-> W o phi blockwise to a sparse ambient vector of `space`."""
    out = {}
    for p, x in vec.items():
        i, j, r, m, n = space.decode(p)
        for r2, y in post[(i, j)][r]:
            key = target.coordinate(i, j, r2, m, n)
            out[key] = out.get(key, 0) + x * y
    return out


def _post_tables(G, W: SpanClass, k: int, k2: int, n: int) -> dict:
    reps = representatives(G)
    post = {}
    for i in range(n):
        for j in range(n):
            P = compose_matrix_post(W, product(reps[i], reps[j]), reps[k], reps[k2])
            cols = len(P[0]) if P else hom_basis(product(reps[i], reps[j]), reps[k]).dimension
            post[(i, j)] = [[(r2, P[r2][r]) for r2 in range(len(P)) if P[r2][r]] for r in range(cols)]
    return post


_CONV_CACHE: dict = {}


def convolution(M: MackeyFunctor, N: MackeyFunctor, check: bool = True) -> Convolution:
    if M.group != N.group:
        raise MackeyError("functors over different groups")
    key = (id(M), id(N))
    hit = _CONV_CACHE.get(key)
    if hit is not None and hit.left is M and hit.right is N:
        return hit
    G = M.group
    n = M.num_classes
    spaces = [_coend_space(M, N, k) for k in range(n)]
    frees = [sp.free_coordinates() for sp in spaces]
    action = {}
    for k in range(n):
        for k2 in range(n):
            mats = []
            for W in hom_basis(M.reps[k], M.reps[k2]).spans():
                post = _post_tables(G, W, k, k2, n)
                src, dst = spaces[k], spaces[k2]
                cols = [dst.quotient.project_sparse(_post_apply(src, dst, post, {p: 1})) for p in frees[k]]
                if check:
                    for rc in src.relations:
                        img = dst.quotient.project_sparse(_post_apply(src, dst, post, rc))
                        if any(img):
                            raise MackeyError("generator action does not preserve coend relations")
                mats.append(RatMatrix.from_cols(cols, dst.dim))
            action[(k, k2)] = tuple(mats)
    F = MackeyFunctor(G, tuple(sp.dim for sp in spaces), action, f"{M.name}*{N.name}")
    conv = Convolution(M, N, spaces, F)
    _CONV_CACHE[key] = conv
    F._cache["convolution"] = conv
    return conv


def convolve(M: MackeyFunctor, N: MackeyFunctor, check: bool = True) -> MackeyFunctor:
    return convolution(M, N, check).functor


def coend_class(conv: Convolution, phi: SpanClass, X1: GSet, X2: GSet, m, n) -> list:
    """The class of (phi, m, n) in (M * N)(W), phi: X1 x X2 -> W, m in M(X1), n in N(X2).

    Vectors use the orbit bookkeeping of eval_object on each side.
    """
    M, N, F = conv.left, conv.right, conv.functor
    if phi.source != product(X1, X2):
        raise MackeyError("phi does not start at X1 x X2")
    W = phi.target
    d1, d2, dW = decompose(X1), decompose(X2), decompose(W)
    o1, o2, oW = d1.offsets(M.levels), d2.offsets(N.levels), dW.offsets(F.levels)
    out = [0] * oW[-1]
    reps = M.reps
    for a, i in enumerate(d1.classes):
        ma = list(m[o1[a]:o1[a + 1]])
        if not any(ma):
            continue
        for b, j in enumerate(d2.classes):
            nb = list(n[o2[b]:o2[b + 1]])
            if not any(nb):
                continue
            s_ab = compose(lower(map_product(d1.inclusion(a), d2.inclusion(b))), phi)
            for c, k in enumerate(dW.classes):
                s = compose(s_ab, upper(dW.inclusion(c)))
                vec = hom_basis(product(reps[i], reps[j]), reps[k]).vector(s)
                if not any(vec):
                    continue
                sp = conv.spaces[k]
                proj = sp.quotient.project_sparse(sp.element(i, j, vec, ma, nb))
                for t, x in enumerate(proj):
                    out[oW[c] + t] += x
    return out


def _basis_triples(conv: Convolution, k: int):
    """For each quotient basis vector at level k: (i, j, phi span, m index, n index)."""
    sp = conv.spaces[k]
    reps = conv.left.reps
    out = []
    for p in sp.free_coordinates():
        i, j, r, m, n = sp.decode(p)
        phi = hom_basis(product(reps[i], reps[j]), reps[k]).span(r)
        out.append((i, j, phi, m, n))
    return out


def _unit_vec(d: int, t: int) -> list:
    v = [0] * d
    v[t] = 1
    return v


def unit_iso(M: MackeyFunctor, J: MackeyFunctor | None = None, check: bool = True) -> MackeyMorphism:
    """J * M -> M, (phi, x, m) |-> M(phi o (x x id)) m; certified invertible."""
    from .functor import burnside_functor
    G = M.group
    J = J or burnside_functor(G)
    conv = convolution(J, M, check)
    reps = M.reps
    pt_basis = [hom_basis(reps[-1], C) for C in reps]
    comps = []
    for k in range(M.num_classes):
        cols = []
        for i, j, phi, x, m in _basis_triples(conv, k):
            xs = pt_basis[i].span(x)
            s = compose(tensor(xs, identity_span(reps[j])), phi)
            cols.append(eval_span(M, s).col(m))
        comps.append(RatMatrix.from_cols(cols, M.levels[k]))
    theta = MackeyMorphism(conv.functor, M, comps)
    _certify(theta, "unit map")
    return theta


def symmetry_iso(M: MackeyFunctor, N: MackeyFunctor, check: bool = True) -> MackeyMorphism:
    """M * N -> N * M, (phi, m, n) |-> (phi o swap, n, m)."""
    c1, c2 = convolution(M, N, check), convolution(N, M, check)
    reps = M.reps
    comps = []
    for k in range(M.num_classes):
        sp2 = c2.spaces[k]
        cols = []
        for i, j, phi, m, n in _basis_triples(c1, k):
            s = compose(lower(swap_map(reps[j], reps[i])), phi)
            vec = hom_basis(product(reps[j], reps[i]), reps[k]).vector(s)
            el = sp2.element(j, i, vec, _unit_vec(N.levels[j], n), _unit_vec(M.levels[i], m))
            cols.append(sp2.quotient.project_sparse(el))
        comps.append(RatMatrix.from_cols(cols, sp2.dim))
    theta = MackeyMorphism(c1.functor, c2.functor, comps)
    _certify(theta, "symmetry")
    return theta


def associator(L: MackeyFunctor, M: MackeyFunctor, N: MackeyFunctor, check: bool = True) -> MackeyMorphism:
    """(L * M) * N -> L * (M * N)."""
    LM = convolution(L, M, check)
    left = convolution(LM.functor, N, check)
    MN = convolution(M, N, check)
    right = convolution(L, MN.functor, check)
    reps = L.reps
    comps = []
    for k in range(L.num_classes):
        cols = []
        for p, j, psi, u, nidx in _basis_triples(left, k):
            # u indexes a quotient basis vector of (L*M)(C_p): lift it
            out = [0] * right.spaces[k].dim
            for a, b, phi, l, m in [_basis_triples(LM, p)[u]]:
                Ca, Cb, Cj = reps[a], reps[b], reps[j]
                inner = coend_class(MN, identity_span(product(Cb, Cj)), Cb, Cj,
                                    _unit_vec(M.levels[b], m), _unit_vec(N.levels[j], nidx))
                outer_phi = compose(tensor(phi, identity_span(Cj)), psi)
                # (Ca x Cb) x Cj is the same G-set as Ca x (Cb x Cj)
                outer_phi = SpanClass(product(Ca, product(Cb, Cj)), reps[k], outer_phi.components)
                v = coend_class(right, outer_phi, Ca, product(Cb, Cj), _unit_vec(L.levels[a], l), inner)
                out = [x + y for x, y in zip(out, v)]
            cols.append(out)
        comps.append(RatMatrix.from_cols(cols, right.spaces[k].dim))
    theta = MackeyMorphism(left.functor, right.functor, comps)
    _certify(theta, "associator")
    return theta


def _certify(theta: MackeyMorphism, what: str):
    rep = theta.naturality_report()
    if not rep.ok:
        raise MackeyError(f"{what} is not natural: {rep.failures[0]}")
    if not theta.is_iso():
        raise MackeyError(f"{what} is not invertible")


# ---------------------------------------------------------------------------
# internal hom

@dataclass(eq=False)
class InternalHom:
    left: MackeyFunctor
    right: MackeyFunctor
    dressed: list  # dress(M, C_i)
    bases: list  # list of MackeyMorphism per level
    functor: MackeyFunctor

    def morphism(self, i: int, coords) -> MackeyMorphism:
        """The morphism dress(M, C_i) -> N with the given coordinates."""
        B = self.bases[i]
        theta = MackeyMorphism(self.dressed[i], self.right,
                               [RatMatrix.zeros(a.rows, a.cols) for a in B[0].components]) if B else None
        for c, b in zip(coords, B):
            if c:
                theta = theta + b.scale(c)
        return theta

    def coordinates(self, i: int, theta: MackeyMorphism) -> list:
        B = self.bases[i]
        if not B:
            return []
        A = RatMatrix.from_cols([b.vector() for b in B], len(B[0].vector()))
        X = solve(A, RatMatrix.column(theta.vector()))
        if X is None:
            raise MackeyError("morphism outside the computed hom space")
        return list(X.col(0))


def _delta(M: MackeyFunctor, S: SpanClass, Dsrc: MackeyFunctor, Dtgt: MackeyFunctor) -> list:
    """Components of M_{S^T}: dress(M, C_j) -> dress(M, C_i) for S: C_i -> C_j."""
    St = transpose(S)
    return [eval_span(M, tensor(identity_span(C), St)) for C in M.reps]


_IHOM_CACHE: dict = {}


def internal_hom(M: MackeyFunctor, N: MackeyFunctor) -> InternalHom:
    """Hom(M, N)(C_i) = Mky(M_{C_i}, N); a span S acts by precomposition with M_{S^T}."""
    if M.group != N.group:
        raise MackeyError("functors over different groups")
    key = (id(M), id(N))
    hit = _IHOM_CACHE.get(key)
    if hit is not None and hit.left is M and hit.right is N:
        return hit
    G = M.group
    reps = M.reps
    dressed = [dress(M, C) for C in reps]
    bases = [hom_space(D, N) for D in dressed]
    bmats = [RatMatrix.from_cols([b.vector() for b in B], len(B[0].vector())) if B else None
             for B in bases]

    def gen(i, j, S):
        if not bases[i] or not bases[j]:
            return RatMatrix.zeros(len(bases[j]), len(bases[i]))
        delta = _delta(M, S, dressed[j], dressed[i])
        cols = []
        for theta in bases[i]:
            comp = [t @ d for t, d in zip(theta.components, delta)]
            cols.append([x for c in comp for x in c.flatten()])
        X = solve(bmats[j], RatMatrix.from_cols(cols, bmats[j].rows))
        if X is None:
            raise MackeyError("precomposition left the hom space")
        return X

    F = build_functor(G, [len(B) for B in bases], gen, f"Hom({M.name},{N.name})")
    ih = InternalHom(M, N, dressed, bases, F)
    _IHOM_CACHE[key] = ih
    return ih


def adjunction_dims(L: MackeyFunctor, M: MackeyFunctor, N: MackeyFunctor) -> tuple[int, int]:
    """(dim Mky(L * M, N), dim Mky(L, Hom(M, N)))"""
    return hom_dim(convolve(L, M), N), hom_dim(L, internal_hom(M, N).functor)


# ---------------------------------------------------------------------------
# star duality

def star_dual(M: MackeyFunctor) -> MackeyFunctor:
    """S(M)(X) = M(X)^*; a span acts by the transpose of its reverse."""
    def gen(i, j, S):
        (c,) = transpose(S).components
        return M.act(j, i, c).T

    return build_functor(M.group, M.levels, gen, f"S({M.name})")


def star_double_dual_iso(M: MackeyFunctor) -> MackeyMorphism:
    theta = MackeyMorphism(M, star_dual(star_dual(M)), identity_morphism(M).components)
    _certify(theta, "double dual")
    return theta


def star_pairing_check(M: MackeyFunctor, N: MackeyFunctor, L: MackeyFunctor) -> Report:
    rep = Report()
    a = hom_dim(convolve(M, N), star_dual(L))
    b = hom_dim(convolve(N, L), star_dual(M))
    rep.checked = 1
    rep.details.update(lhs=a, rhs=b)
    if a != b:
        rep.fail(f"dim Mky(M*N, S(L)) = {a} but dim Mky(N*L, S(M)) = {b}")
    return rep


# ---------------------------------------------------------------------------
# Dress construction is strong monoidal

def _rearrange(C: GSet, X: GSet, D: GSet, Y: GSet):
    """(c, x, d, y) |-> (c, d, x, y) as a G-map (C x X) x (D x Y) -> (C x D) x (X x Y)."""
    from .gset import GMap
    src = product(product(C, X), product(D, Y))
    tgt = product(product(C, D), product(X, Y))
    vals = []
    for c in range(C.size):
        for x in range(X.size):
            for d in range(D.size):
                for y in range(Y.size):
                    vals.append(((c * D.size + d) * X.size + x) * Y.size + y)
    return GMap(src, tgt, vals)


def dress_monoidal_dims(M: MackeyFunctor, N: MackeyFunctor, X: GSet, Y: GSet) -> tuple[list, list]:
    lhs = convolve(dress(M, X), dress(N, Y)).levels
    rhs = dress(convolve(M, N), product(X, Y)).levels
    return list(lhs), list(rhs)


def dress_monoidal_iso(M: MackeyFunctor, N: MackeyFunctor, X: GSet, Y: GSet) -> MackeyMorphism:
    """M_X * N_Y -> (M * N)_{X x Y}, certified."""
    MX, NY = dress(M, X), dress(N, Y)
    lhs = convolution(MX, NY)
    MN = convolution(M, N)
    target = dress(MN.functor, product(X, Y))
    reps = M.reps
    XY = product(X, Y)
    comps = []
    for k in range(M.num_classes):
        Ck = reps[k]
        cols = []
        for i, j, phi, m, n in _basis_triples(lhs, k):
            Ci, Cj = reps[i], reps[j]
            R = _rearrange(Ci, X, Cj, Y)
            big = compose(lower(R), tensor(phi, identity_span(XY)))
            big = SpanClass(product(product(Ci, X), product(Cj, Y)), product(Ck, XY), big.components)
            v = coend_class(MN, big, product(Ci, X), product(Cj, Y),
                            _unit_vec(MX.levels[i], m), _unit_vec(NY.levels[j], n))
            cols.append(v)
        comps.append(RatMatrix.from_cols(cols, target.levels[k]))
    theta = MackeyMorphism(lhs.functor, target, comps)
    _certify(theta, "Dress monoidal map")
    return theta
