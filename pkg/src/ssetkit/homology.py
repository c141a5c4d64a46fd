"""Integer simplicial homology via Smith normal form, and homological
necessary-condition certificates for weak equivalence.

Chains are normalized: the basis in degree d is the set of nondegenerate
d-simplices, and degenerate faces contribute zero to the boundary.  All
arithmetic is exact over Python's arbitrary-precision integers, so the
no-silent-overflow policy holds by construction.

The certificate checks (a) a bijection on path components and (b) acyclicity
of the algebraic mapping cone in degrees 0..maxdim, which decides that the
induced maps on H_d are isomorphisms for d < maxdim and epimorphisms at
maxdim.  This is a necessary condition for weak equivalence, not a
sufficient one, and is labeled as such everywhere.
"""

from dataclasses import dataclass


class ChainComplex:
    """Free integer chain complex: `basis[d]` lists the degree-d generators
    and `boundary[d]` (d >= 1) is the matrix of the boundary map into
    degree d-1, one column per generator."""

    def __init__(self, basis, boundary):
        self.basis = [list(b) for b in basis]
        self.boundary = {d: [row[:] for row in m] for d, m in boundary.items()}

    def dims(self):
        return len(self.basis) - 1

    def rank(self, d):
        if 0 <= d < len(self.basis):
            return len(self.basis[d])
        return 0

    def matrix(self, d):
        """Boundary matrix C_d -> C_{d-1}; zero-sized when out of range."""
        m = self.boundary.get(d)
        if m is not None:
            return m
        return [[0] * self.rank(d) for _ in range(self.rank(d - 1))]


def _mat_mul(a, b):
    if not a or not b or not b[0]:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    n = len(b)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(len(b[0]))]
            for i in range(len(a))]


def _is_zero(m):
    return all(v == 0 for row in m for v in row)


def chain_complex(s):
    """Normalized chains of a valid finite simplicial set: the boundary of a
    simplex is the alternating sum of its nondegenerate faces.  Verifies
    boundary . boundary = 0 before returning."""
    top = s.dim
    basis = [list(s.simplices(d)) for d in range(top + 1)]
    index = {d: {n: i for i, n in enumerate(basis[d])} for d in range(top + 1)}
    boundary = {}
    for d in range(1, top + 1):
        m = [[0] * len(basis[d]) for _ in range(len(basis[d - 1]))]
        for j, name in enumerate(basis[d]):
            for i, ref in enumerate(s.faces_of(name)):
                if not ref.word:
                    m[index[d - 1][ref.base]][j] += (-1) ** i
        boundary[d] = m
    cx = ChainComplex(basis, boundary)
    for d in range(2, top + 1):
        if not _is_zero(_mat_mul(cx.matrix(d - 1), cx.matrix(d))):
            raise ValueError(f"boundary squared is nonzero in degree {d}")
    return cx


# ---------------------------------------------------------------------------
# Smith normal form over the integers, with unimodular witnesses

@dataclass
class SNFResult:
    """U . M . V = D with U, V unimodular and D diagonal with each invariant
    factor dividing the next.  `factors` lists the nonzero diagonal entries."""

    diagonal: list
    u: list
    v: list
    factors: list


def smith_normal_form(m):
    """Diagonalize an integer matrix by unimodular row and column operations.
    Exact arbitrary-precision arithmetic throughout."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                val = abs(a[i][j])
                if val and (best is None or val < best):
                    best, pivot = val, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                # enforce divisibility of the remaining block by the pivot
                for i in range(t + 1, rows):
                    bad = next((j for j in range(t + 1, cols)
                                if a[i][j] % a[t][t]), None)
                    if bad is not None:
                        row_op(t, i, -1)
                        dirty = True
                        break
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    diagonal = [[a[i][j] for j in range(cols)] for i in range(rows)]
    factors = [a[i][i] for i in range(min(rows, cols)) if a[i][i]]
    return SNFResult(diagonal, u, v, factors)


@dataclass(frozen=True)
class HomologyGroup:
    """A finitely generated abelian group: free rank plus torsion
    coefficients in a divisibility chain."""

    betti: int
    torsion: tuple = ()

    def __post_init__(self):
        for i in range(len(self.torsion) - 1):
            if self.torsion[i + 1] % self.torsion[i]:
                raise ValueError("torsion coefficients must form a "
                                 "divisibility chain")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    @property
    def trivial(self):
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z")
        elif self.betti > 1:
            parts.append(f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology_of_complex(cx, d):
    if d < 0:
        raise ValueError("degree must be >= 0")
    n = cx.rank(d)
    rank_out = len(smith_normal_form(cx.matrix(d)).factors) if d >= 1 else 0
    snf_in = smith_normal_form(cx.matrix(d + 1))
    rank_in = len(snf_in.factors)
    betti = n - rank_out - rank_in
    torsion = tuple(f for f in snf_in.factors if f >= 2)
    return HomologyGroup(betti, torsion)


def homology(s, d):
    """H_d of a finite simplicial set with integer coefficients."""
    return homology_of_complex(chain_complex(s), d)


def homology_groups(s, maxdim):
    cx = chain_complex(s)
    return [homology_of_complex(cx, d) for d in range(maxdim + 1)]


# ---------------------------------------------------------------------------
# Induced maps, mapping cones, and certificates

def chain_map(f):
    """Matrices of the induced map on normalized chains: a generator whose
    image is degenerate maps to zero."""
    src = chain_complex(f.source)
    tgt = chain_complex(f.target)
    out = {}
    for d in range(len(src.basis)):
        m = [[0] * len(src.basis[d]) for _ in range(tgt.rank(d))]
        tindex = {n: i for i, n in enumerate(tgt.basis[d])} \
            if d < len(tgt.basis) else {}
        for j, name in enumerate(src.basis[d]):
            img = f.images[name]
            if not img.word:
                m[tindex[img.base]][j] = 1
        out[d] = m
    return src, tgt, out


def mapping_cone(f):
    """The algebraic mapping cone of the induced chain map: degree d is
    C_{d-1}(source) + C_d(target), with boundary (-d_src, f# + d_tgt)."""
    src, tgt, fmat = chain_map(f)
    top = max(src.dims() + 1, tgt.dims())
    basis = []
    for d in range(top + 1):
        names = [("s", n) for n in
                 (src.basis[d - 1] if 1 <= d <= src.dims() + 1 else [])]
        names += [("t", n) for n in (tgt.basis[d] if d <= tgt.dims() else [])]
        basis.append(names)
    boundary = {}
    for d in range(1, top + 1):
        rows = len(basis[d - 1])
        cols = len(basis[d])
        m = [[0] * cols for _ in range(rows)]
        src_cols = src.rank(d - 1)
        src_rows = src.rank(d - 2) if d >= 2 else 0
        dsrc = src.matrix(d - 1) if d >= 2 else []
        dtgt = tgt.matrix(d)
        fm = fmat.get(d - 1, [])
        for j in range(src_cols):
            for i in range(src_rows):
                m[i][j] = -dsrc[i][j]
            for i in range(tgt.rank(d - 1)):
                val = fm[i][j] if fm else 0
                m[src_rows + i][j] = val
        for j in range(tgt.rank(d)):
            for i in range(tgt.rank(d - 1)):
                m[src_rows + i][src_cols + j] = dtgt[i][j]
        boundary[d] = m
    cone = ChainComplex(basis, boundary)
    for d in range(2, top + 1):
        if not _is_zero(_mat_mul(cone.matrix(d - 1), cone.matrix(d))):
            raise RuntimeError("mapping cone boundary squared is nonzero")
    return cone


def path_components(s):
    """Partition of the vertices by the nondegenerate edges."""
    parent = {v: v for v in s.simplices(0)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in s.simplices(1):
        faces = s.faces_of(e)
        a, b = find(faces[0].base), find(faces[1].base)
        if a != b:
            parent[b] = a
    comps = {}
    for v in s.simplices(0):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


@dataclass(frozen=True)
class Certificate:
    """Necessary-condition certificate for weak equivalence: passes iff the
    map is a bijection on path components and its mapping cone is acyclic in
    degrees 0..maxdim."""

    passed: bool
    maxdim: int
    failure: tuple = None  # ("pi0", detail) or ("H<d>", detail)

    def line(self):
        if self.passed:
            return "we-cert: pass"
        return f"we-cert: fail level={self.failure[0]}"


def weak_equivalence_certificate(f, maxdim=3):
    """Check the homological necessary conditions for f to be a weak
    equivalence: a bijection on path components, and mapping-cone acyclicity
    in degrees 0..maxdim (induced isomorphisms on H_d below maxdim and an
    epimorphism at maxdim).  Both-empty maps pass vacuously."""
    src, tgt = f.source, f.target
    if src.is_empty and tgt.is_empty:
        return Certificate(True, maxdim)
    comp_src = path_components(src)
    comp_tgt = path_components(tgt)
    rep = {}
    for idx, comp in enumerate(comp_tgt):
        for v in comp:
            rep[v] = idx
    targets = []
    for comp in comp_src:
        image = {rep[f.images[v].base] for v in comp}
        if len(image) != 1:
            raise RuntimeError("component map is not well defined")
        targets.append(image.pop())
    if len(set(targets)) != len(targets) or len(targets) != len(comp_tgt):
        return Certificate(
            False, maxdim,
            ("pi0", f"{len(comp_src)} components vs {len(comp_tgt)}"))
    cone = mapping_cone(f)
    for d in range(maxdim + 1):
        group = homology_of_complex(cone, d)
        if not group.trivial:
            return Certificate(False, maxdim, (f"H{d}", str(group)))
    return Certificate(True, maxdim)
