"""Harmonic cocycles of level Gamma_1(t^n) as finite exact linear algebra.

A weight-k cocycle is a V_k-valued function on oriented edges that sums to
zero over the edges into every vertex, is odd under reversal, and is
Gamma_1(t^n)-equivariant.  Equivariance makes it a function on edge orbits;
with values declared zero beyond the quotient-graph depth D (orbit
multiplicities along the cusp rays are divisible by q, so true solutions
die out in characteristic p), the space becomes the exact kernel of:

  * harmonicity rows at every vertex orbit whose full star lies in the
    table,
  * stabilizer rows (act(delta) - 1) x = 0 for the finitely many
    generators of each representative's Gamma_1(t^n)-stabilizer.

The kernel is taken over F_q for weight 2 (the action is trivial, so the
constraints are scalar counts) and over K = F_q(t) for higher weight.  Two
gates guard the truncation: the dimension must equal (k-1) q^(2(n-1)), and
re-solving at depth D+1 must give the same dimension.

For weight 2 the basis is re-expressed in the delta basis indexed by
A_{n-1}^2: the unique cocycle taking value 1 at one stable representative
h_{(c,d)} J e_0 and 0 at the others.
"""

from .errors import DimensionMismatchError, ReachError, StabilityError
from .fq import FqElem
from .linalg import FqRing, KRing, Matrix, sparse_kernel
from .mat2 import Mat2
from .rings import Poly, RatFunc
from .tree import Edge, QuotientGraph, apply_edge


def depth_default(n, k):
    """Default truncation depth: 2n+3 at weight <= 3, growing with k.

    Truncated supports die roughly (k-1)/((p-1)e) unipotent-averaging
    levels past the stable core, so higher weight needs more margin.
    """
    return 2 * n + 1 + max(2, k - 1)


class VkAction:
    """Matrices of the dual action of GL_2(K) on V_k = H_{k-2}^dual.

    substitution(g) is the matrix of P(X, Y) -> P((X, Y) g) on the
    monomial basis X^(k-2-j) Y^j of H_{k-2}; the action of g on V_k is
    substitution(g^{-1})^T, and the action of g^{-1} is substitution(g)^T.
    """

    def __init__(self, fq, k):
        if k < 2:
            raise ValueError("weight must be >= 2")
        self.fq = fq
        self.k = k
        self.ring = KRing(fq)
        self._cache = {}

    @property
    def dim(self):
        return self.k - 1

    def substitution(self, g):
        g = g.to_k()
        key = ("S",) + tuple(g.entries())
        got = self._cache.get(key)
        if got is not None:
            return got
        m = self.k - 2
        ring = self.ring
        # (X, Y) g = (a X + c Y, b X + d Y) row-vector convention
        img_x = [g.a, g.c]  # coefficients on (X, Y)
        img_y = [g.b, g.d]
        # forms of degree m represented by Y-degree coefficient lists
        cols = []
        for j in range(m + 1):
            form = [ring.one]
            for _ in range(m - j):
                form = _form_mul(ring, form, img_x)
            for _ in range(j):
                form = _form_mul(ring, form, img_y)
            cols.append(form)
        got = Matrix(ring, [[cols[j][l] for j in range(m + 1)] for l in range(m + 1)])
        self._cache[key] = got
        return got

    def act(self, g):
        """Matrix of omega -> g . omega on V_k."""
        return self.substitution(g.to_k().inverse_k()).transpose()

    def act_of_inverse(self, g):
        """Matrix of omega -> g^{-1} . omega on V_k (no inversion needed)."""
        return self.substitution(g).transpose()


def _form_mul(ring, form, lin):
    """Multiply a binary form (Y-degree coefficients) by a linear form."""
    out = [ring.zero] * (len(form) + 1)
    a, b = lin  # a X + b Y
    for i, c in enumerate(form):
        if c:
            if a:
                out[i] = out[i] + c * a
            if b:
                out[i + 1] = out[i + 1] + c * b
    return out


class CocycleSpace:
    """The solved space C^har_k(Gamma_1(t^n)) on a depth-D quotient graph."""

    def __init__(self, ctx, k, depth=None, check_stability=True, max_orbits=200000):
        self.ctx = ctx
        self.k = k
        self.depth = depth if depth is not None else depth_default(ctx.n, k)
        self.expected_dim = (k - 1) * ctx.dim_weight2()
        self.vk = VkAction(ctx.fq, k)
        if k == 2:
            self.ring = FqRing(ctx.fq)
        else:
            self.ring = KRing(ctx.fq)
        self.graph = QuotientGraph(ctx, self.depth, max_orbits=max_orbits)
        basis, keys = self._solve(self.graph)
        if len(basis) != self.expected_dim:
            raise DimensionMismatchError(
                f"dim C^har_{k}(Gamma_1(t^{ctx.n})) at depth {self.depth}: "
                f"got {len(basis)}, expected {self.expected_dim}"
            )
        # support gate: solutions must die out before the boundary shells,
        # otherwise the zero-beyond-D convention is corrupting values
        self.support_radius = max(
            (self.graph.edge_orbits[key].depth for c in basis for key in c),
            default=0,
        )
        if self.support_radius > self.depth - 2:
            raise StabilityError(
                f"cocycle support reaches depth {self.support_radius} of a "
                f"depth-{self.depth} table: increase the depth"
            )
        if check_stability:
            graph2 = QuotientGraph(ctx, self.depth + 1, max_orbits=max_orbits)
            basis2, _ = self._solve(graph2)
            if len(basis2) != self.expected_dim:
                raise StabilityError(
                    f"depth {self.depth} vs {self.depth + 1}: dimensions "
                    f"{len(basis)} vs {len(basis2)}"
                )
        self.orbit_keys = keys
        self.basis = basis
        if k == 2:
            self._to_delta_basis()

    # -- the linear system ---------------------------------------------------
    def _solve(self, graph):
        k = self.k
        comp = k - 1
        ring = self.ring
        keys = sorted(graph.edge_orbits)
        col_of = {key: i * comp for i, key in enumerate(keys)}
        # deepest columns first: elimination then sweeps inward along rays
        col_order = []
        for key in sorted(keys, key=lambda kk: (-graph.edge_orbits[kk].depth, kk)):
            base = col_of[key]
            col_order.extend(range(base, base + comp))
        rows = []
        for vorbit in graph.interior_vertex_orbits():
            blocks = {}
            for e in graph.in_edges(vorbit):
                orbit, key, sign, delta = graph.classify(e)
                if orbit is None:
                    raise AssertionError("interior vertex star left the table")
                if k == 2:
                    coeff = ring.one if sign == 1 else -ring.one
                    mat = [[coeff]]
                else:
                    m = self.vk.act(delta)
                    mat = [[x if sign == 1 else -x for x in row] for row in m.rows]
                base = col_of[key]
                acc = blocks.get(base)
                if acc is None:
                    blocks[base] = [row[:] for row in mat]
                else:
                    for r in range(comp):
                        for s in range(comp):
                            acc[r][s] = acc[r][s] + mat[r][s]
            for r in range(comp):
                row = {}
                for base, mat in blocks.items():
                    for s in range(comp):
                        v = mat[r][s]
                        if v:
                            row[base + s] = v
                if row:
                    rows.append(row)
        if k > 2:
            for key in keys:
                orbit = graph.edge_orbits[key]
                if orbit.stab_order == 1:
                    continue
                base = col_of[key]
                for delta in graph.tree.edge_stab_generators(orbit):
                    m = self.vk.act(delta)
                    for r in range(comp):
                        row = {}
                        for s in range(comp):
                            v = m.rows[r][s] - (ring.one if r == s else ring.zero)
                            if v:
                                row[base + s] = v
                        if row:
                            rows.append(row)
        kernel = sparse_kernel(rows, len(keys) * comp, ring, col_order=col_order)
        basis = []
        for vec in kernel:
            entry = {}
            for i, key in enumerate(keys):
                v = tuple(vec[i * comp + s] for s in range(comp))
                if any(x for x in v):
                    entry[key] = v
            basis.append(entry)
        return basis, keys

    # -- weight-2 delta basis ---------------------------------------------------
    def _to_delta_basis(self):
        ctx = self.ctx
        ring = self.ring
        stable_keys = [
            self.graph.seed_keys[(c.coeffs, d.coeffs)] for c, d in ctx.label_pairs()
        ]
        d = self.expected_dim
        from .linalg import inverse

        eval_matrix = Matrix(
            ring,
            [
                [self.basis[j].get(key, (ring.zero,))[0] for j in range(d)]
                for key in stable_keys
            ],
        )
        try:
            inv = inverse(eval_matrix)
        except ArithmeticError as exc:  # would contradict the delta-basis isomorphism
            raise DimensionMismatchError(
                "evaluation at the stable representatives is singular"
            ) from exc
        new_basis = []
        for jcol in range(d):
            acc = {}
            for i in range(d):
                c = inv.rows[i][jcol]
                if not c:
                    continue
                for key, vec in self.basis[i].items():
                    cur = acc.get(key, (ring.zero,))
                    acc[key] = (cur[0] + c * vec[0],)
            new_basis.append({key: v for key, v in acc.items() if v[0]})
        self.basis = new_basis
        # sanity: the delta property itself
        for j, key in enumerate(stable_keys):
            for i in range(d):
                want = ring.one if i == j else ring.zero
                got = self.basis[i].get(key, (ring.zero,))[0]
                if got != want:
                    raise AssertionError("delta-basis normalization failed")

    # -- evaluation ----------------------------------------------------------------
    def labels(self):
        return self.ctx.label_pairs()

    def zero_vector(self):
        return tuple(self.ring.zero for _ in range(self.k - 1))

    def evaluate(self, cocycle, e, strict=False):
        """Value of a cocycle (dict orbit-key -> tuple) at any oriented edge.

        Classifies the edge, transports the stored value through the
        witness with the orientation sign, and returns the zero vector
        beyond the table (finite support), unless ``strict``.
        """
        orbit, key, sign, delta = self.graph.classify(e)
        if orbit is None:
            if strict:
                raise ReachError(f"edge beyond the depth-{self.depth} table: {e}")
            return self.zero_vector()
        stored = cocycle.get(key)
        if stored is None:
            return self.zero_vector()
        if self.k == 2:
            v = stored[0]
            return (v,) if sign == 1 else (-v,)
        m = self.vk.act(delta)
        out = m.apply([self.ring.embed(x) for x in stored])
        if sign == -1:
            out = [-x for x in out]
        return tuple(out)

    def predecessor_sum(self, cocycle, e):
        """Sum of values over the q edges feeding o(e) other than -e.

        Harmonicity at o(e) makes this equal to the value at e; asserting
        the equality is the executable form of the source-sum identity.
        """
        total = list(self.zero_vector())
        rev = e.reverse()
        for u in e.origin.neighbors(self.ctx.fq):
            f = Edge(u, e.origin)
            if f == rev:
                continue
            val = self.evaluate(cocycle, f)
            total = [a + b for a, b in zip(total, val)]
        return tuple(total)

    def harmonicity_residual(self, cocycle, v):
        """Sum of the cocycle over the edges into a literal tree vertex."""
        total = list(self.zero_vector())
        for u in v.neighbors(self.ctx.fq):
            val = self.evaluate(cocycle, Edge(u, v))
            total = [a + b for a, b in zip(total, val)]
        return tuple(total)

    def stable_rep_edge(self, c, d):
        key = self.graph.seed_keys[(c.coeffs, d.coeffs)]
        return self.graph.edge_orbits[key].rep

    @property
    def dim(self):
        return len(self.basis)

    def basis_json(self):
        """Basis export: per cocycle, a map from orbit key to the value
        vector, with K elements as {num, den} pairs."""
        from .linalg import KRing

        kring = KRing(self.ctx.fq)
        out = []
        for cocycle in self.basis:
            entry = []
            for key in sorted(cocycle):
                vec = [
                    {"num": list(x.num.coeffs), "den": list(x.den.coeffs)}
                    for x in (kring.embed(v) for v in cocycle[key])
                ]
                entry.append({"orbit": {"i": key[0], "row": [list(key[1][0]), list(key[1][1])]}, "value": vec})
            out.append(entry)
        return out


class Coordinates:
    """Coordinates of value-dicts in the solved basis, with consistency.

    Rows are (orbit, component) evaluations on orbits of depth at most
    ``safe_depth``; the d pivot rows (stable representatives first) invert
    to give coordinates, and every other safe row is verified exactly.
    """

    def __init__(self, space, safe_depth):
        self.space = space
        ring = space.ring
        graph = space.graph
        d = space.dim
        comp = space.k - 1
        stable_keys = [
            graph.seed_keys[(c.coeffs, d_.coeffs)] for c, d_ in space.ctx.label_pairs()
        ]
        other = [
            key
            for key in sorted(graph.edge_orbits)
            if key not in set(stable_keys) and graph.edge_orbits[key].depth <= safe_depth
        ]
        self.row_keys = [(key, s) for key in stable_keys for s in range(comp)] + [
            (key, s) for key in other for s in range(comp)
        ]
        zero = tuple(ring.zero for _ in range(comp))
        rows = [
            [space.basis[j].get(key, zero)[s] for j in range(d)]
            for key, s in self.row_keys
        ]
        self.matrix_rows = rows
        pivots = _independent_rows(ring, rows, d)
        if len(pivots) < d:
            raise DimensionMismatchError(
                f"evaluation rows at depth <= {safe_depth} have rank {len(pivots)} < {d}"
            )
        self.pivot_indices = pivots
        from .linalg import inverse

        self.pivot_inverse = inverse(Matrix(ring, [rows[i] for i in pivots]))
        self.keys_needed = stable_keys + other

    def coords(self, values):
        """Solve for coordinates and verify every safe evaluation row."""
        ring = self.space.ring
        comp = self.space.k - 1
        u = [
            values[self.row_keys[i][0]][self.row_keys[i][1]]
            for i in self.pivot_indices
        ]
        x = self.pivot_inverse.apply([ring.embed(v) for v in u])
        for idx, (key, s) in enumerate(self.row_keys):
            want = ring.embed(values[key][s])
            got = ring.zero
            for j, xj in enumerate(x):
                bij = self.matrix_rows[idx][j]
                if bij and xj:
                    got = got + ring.embed(bij) * xj
            if got != want:
                raise ReachError(
                    f"operator image is inconsistent with the basis at row {key}, "
                    "component %d: truncation depth too small" % s
                )
        return x


def _independent_rows(ring, rows, d):
    """Indices of the first d linearly independent rows, greedily."""
    picked = []
    ech = []
    pivot_cols = []
    for idx, row in enumerate(rows):
        work = [ring.embed(x) for x in row]
        for erow, pc in zip(ech, pivot_cols):
            f = work[pc]
            if f:
                work = [a - f * b for a, b in zip(work, erow)]
        pc = next((i for i, x in enumerate(work) if x), None)
        if pc is None:
            continue
        inv = ring.one / work[pc]
        work = [x * inv for x in work]
        ech.append(work)
        pivot_cols.append(pc)
        picked.append(idx)
        if len(picked) == d:
            break
    return picked
