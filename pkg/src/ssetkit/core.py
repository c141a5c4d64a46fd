"""Finite simplicial sets in Eilenberg-Zilber normal form.

A finite simplicial set is stored as its nondegenerate simplices plus, for
each nondegenerate simplex of dimension d >= 1, an ordered list of d+1 face
references.  A face reference names a nondegenerate simplex together with a
strictly decreasing word of degeneracy indices, which is the unique normal
form of a possibly-degenerate simplex.  All simplicial operators (faces,
degeneracies, and arbitrary monotone reindexings) are evaluated through
`FiniteSimplicialSet.act`, which renormalizes on the fly.

Everything here is immutable after construction; internal memo tables are
write-once caches and do not affect equality.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


# ---------------------------------------------------------------------------
# Monotone maps between finite ordinals, encoded as tuples of images.
# A tuple t of length m+1 with values in 0..n encodes a monotone [m] -> [n].

def _mono_compose(f, g):
    # f after g: (f . g)(x) = f(g(x))
    return tuple(f[x] for x in g)


def _mono_identity(n):
    return tuple(range(n + 1))


def _coface(i, n):
    # the injection [n-1] -> [n] that skips i
    return tuple(range(i)) + tuple(range(i + 1, n + 1))


def _codegeneracy(i, n):
    # the surjection [n+1] -> [n] that repeats i
    return tuple(x if x <= i else x - 1 for x in range(n + 2))


def _word_to_surj(word, base_dim):
    """Surjection [base_dim + len(word)] -> [base_dim] named by a decreasing
    degeneracy word, applied innermost-last."""
    f = _mono_identity(base_dim)
    for i in reversed(word):
        f = _mono_compose(f, _codegeneracy(i, len(f) - 1))
    return f


def _surj_to_word(f):
    """Inverse of `_word_to_surj`: the positions where f repeats, largest first."""
    return tuple(j for j in range(len(f) - 2, -1, -1) if f[j] == f[j + 1])


def _epi_mono(h):
    """Factor a monotone map h as (surjection, injection) with h = inj . surj."""
    image = sorted(set(h))
    rank = {v: t for t, v in enumerate(image)}
    return tuple(rank[v] for v in h), tuple(image)


@dataclass(frozen=True)
class SimplexRef:
    """A simplex in normal form: a nondegenerate base plus a strictly
    decreasing degeneracy word (empty for nondegenerate simplices)."""

    base: str
    word: tuple = ()

    @property
    def degenerate(self):
        return bool(self.word)

    def __repr__(self):
        if not self.word:
            return f"SimplexRef({self.base!r})"
        return f"SimplexRef({self.base!r}, {self.word!r})"


def word_valid(word, dim):
    """Whether `word` is a legal degeneracy word for a simplex of total
    dimension `dim` (strictly decreasing, nonnegative, largest index < dim)."""
    if any(word[t] <= word[t + 1] for t in range(len(word) - 1)):
        return False
    return all(0 <= i < dim for i in word)


class FiniteSimplicialSet:
    """A finite simplicial set with named nondegenerate simplices.

    `simplices` maps dimension to an ordered sequence of simplex names;
    `faces` maps each name of dimension d >= 1 to its d+1 face references
    (index i holds the i-th face).  Construction is permissive: structural
    defects (dangling references, broken identities) are caught by
    `validate`, not here, so that invalid inputs can be reported rather than
    crash.  Operations other than `validate` assume a valid object.
    """

    __slots__ = ("_by_dim", "_faces", "_dim_of", "_index_of", "_key", "_hash",
                 "_act_memo", "_memo")

    def __init__(self, simplices=None, faces=None):
        by_dim = {}
        if simplices:
            if isinstance(simplices, dict):
                items = simplices.items()
            else:
                items = enumerate(simplices)
            for d, names in items:
                names = tuple(names)
                if names:
                    by_dim[int(d)] = names
        top = max(by_dim) if by_dim else -1
        self._by_dim = tuple(by_dim.get(d, ()) for d in range(top + 1))
        norm_faces = {}
        for name, refs in (faces or {}).items():
            norm_faces[name] = tuple(
                r if isinstance(r, SimplexRef) else SimplexRef(r) for r in refs)
        self._faces = norm_faces
        self._dim_of = {}
        self._index_of = {}
        for d, names in enumerate(self._by_dim):
            for idx, name in enumerate(names):
                self._dim_of[name] = d
                self._index_of[name] = (d, idx)
        self._key = (self._by_dim,
                     tuple(sorted(self._faces.items())))
        self._hash = hash(self._key)
        self._act_memo = {}
        self._memo = {}

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self):
        """Largest dimension with a nondegenerate simplex; -1 when empty."""
        return len(self._by_dim) - 1

    @property
    def is_empty(self):
        return not self._by_dim

    def simplices(self, d):
        """Names of the nondegenerate d-simplices, in canonical order."""
        if 0 <= d < len(self._by_dim):
            return self._by_dim[d]
        return ()

    def names(self):
        for names in self._by_dim:
            yield from names

    def size(self):
        return sum(len(names) for names in self._by_dim)

    def has(self, name):
        return name in self._dim_of

    def dim_of(self, name):
        return self._dim_of[name]

    def faces_of(self, name):
        return self._faces[name]

    def ref_dim(self, ref):
        return self._dim_of[ref.base] + len(ref.word)

    def ref_key(self, ref):
        """Total order on references of a fixed dimension: by base dimension,
        base position, then degeneracy word."""
        d, idx = self._index_of[ref.base]
        return (d, idx, ref.word)

    def __eq__(self, other):
        return isinstance(other, FiniteSimplicialSet) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        counts = ",".join(str(len(names)) for names in self._by_dim)
        return f"FiniteSimplicialSet(<{counts or 'empty'}>)"

    # -- simplicial operator action ----------------------------------------

    def act(self, ref, alpha):
        """Normal form of ref . alpha for a monotone alpha: [m'] -> [m],
        where m is the dimension of `ref`.

        The degeneracy part of the composite is split off exactly; the
        injective part is pushed into the stored face data one coface at a
        time, renormalizing after each step.
        """
        key = (ref, alpha)
        memo = self._act_memo
        out = memo.get(key)
        if out is not None:
            return out
        k = self._dim_of[ref.base]
        g = _word_to_surj(ref.word, k) if ref.word else _mono_identity(k)
        h = _mono_compose(g, alpha)
        sigma, delta = _epi_mono(h)
        if len(delta) == k + 1:
            out = SimplexRef(ref.base, _surj_to_word(sigma))
        else:
            missing = max(v for v in range(k + 1) if v not in set(delta))
            face = self._faces[ref.base][missing]
            delta2 = tuple(v if v < missing else v - 1 for v in delta)
            inner = self.act(face, delta2)
            gi = _word_to_surj(inner.word, self._dim_of[inner.base])
            out = SimplexRef(inner.base,
                             _surj_to_word(tuple(gi[s] for s in sigma)))
        memo[key] = out
        return out

    def face(self, ref, i):
        """The i-th face of `ref`, in normal form."""
        return self.act(ref, _coface(i, self.ref_dim(ref)))

    def degeneracy(self, ref, i):
        """The i-th degeneracy of `ref`, in normal form."""
        return self.act(ref, _codegeneracy(i, self.ref_dim(ref)))


class SimplicialMap:
    """A simplicial map, determined by the images (arbitrary references in
    the target) of the nondegenerate simplices of the source.

    Construction does not check face compatibility; `map_errors` does, and
    the enumeration and solver routines only ever build compatible maps.
    """

    __slots__ = ("source", "target", "images", "_key", "_hash")

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = dict(images)
        self._key = None
        self._hash = None

    def _full_key(self):
        if self._key is None:
            img = tuple(self.images[n] for n in self.source.names())
            self._key = (self.source._key, self.target._key, img)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return self._full_key() == other._full_key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._full_key())
        return self._hash

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"

    def __call__(self, ref):
        """Image of any reference of the source, in normal form."""
        img = self.images[ref.base]
        if not ref.word:
            return img
        g = _word_to_surj(ref.word, self.source.dim_of(ref.base))
        return self.target.act(img, g)

    def sort_key(self):
        """Lexicographic key by generator images, generators in canonical
        order; the order used for 'least' maps and lifts."""
        tgt = self.target
        return tuple(tgt.ref_key(self.images[n]) for n in self.source.names())


def identity(s):
    return SimplicialMap(s, s, {n: SimplexRef(n) for n in s.names()})


def compose(g, f):
    """The composite g . f (f first).  Raises on endpoint mismatch."""
    if f.target != g.source:
        raise ValueError("compose: target of first map != source of second")
    return SimplicialMap(f.source, g.target,
                         {n: g(r) for n, r in f.images.items()})


def map_errors(f):
    """Face-compatibility defects of a map, as human-readable strings.
    Empty iff f is a genuine simplicial map (assuming valid endpoints)."""
    issues = []
    src, tgt = f.source, f.target
    for name in src.names():
        d = src.dim_of(name)
        img = f.images.get(name)
        if img is None:
            issues.append(f"no image for {name}")
            continue
        if tgt.ref_dim(img) != d:
            issues.append(f"image of {name} has wrong dimension")
            continue
        for i in range(d + 1) if d else ():
            want = f(src.faces_of(name)[i])
            got = tgt.face(img, i)
            if want != got:
                issues.append(f"face {i} of {name}: image {got} != {want}")
    return issues


def is_map(f):
    return not map_errors(f)


# ---------------------------------------------------------------------------
# Validation

class ValidationReport:
    """Outcome of `validate`: a list of defect descriptions, empty iff valid."""

    def __init__(self, issues):
        self.issues = list(issues)

    @property
    def ok(self):
        return not self.issues

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(self.issues)


def validate(s):
    """Check the simplicial-set invariants: duplicate-free simplex lists,
    well-formed face references, and the simplicial identity
    face_i . face_j = face_{j-1} . face_i for i < j."""
    issues = []
    seen = {}
    for d in range(s.dim + 1):
        for name in s.simplices(d):
            if name in seen:
                issues.append(f"duplicate simplex name {name!r} "
                              f"(dims {seen[name]} and {d})")
            seen[name] = d
    structurally_ok = set(s.simplices(0))
    for d in range(1, s.dim + 1):
        for name in s.simplices(d):
            refs = s._faces.get(name)
            if refs is None:
                issues.append(f"{name}: no face list")
                continue
            if len(refs) != d + 1:
                issues.append(f"{name}: expected {d + 1} faces, got {len(refs)}")
                continue
            ok = True
            for i, r in enumerate(refs):
                if not s.has(r.base):
                    issues.append(f"{name}: face {i} dangling reference "
                                  f"to {r.base!r}")
                    ok = False
                    continue
                if s.ref_dim(r) != d - 1:
                    issues.append(f"{name}: face {i} has dimension "
                                  f"{s.ref_dim(r)}, expected {d - 1}")
                    ok = False
                elif not word_valid(r.word, d - 1):
                    issues.append(f"{name}: face {i} degeneracy word "
                                  f"{r.word} is not in normal form")
                    ok = False
            if ok:
                structurally_ok.add(name)
    # identities are only evaluated where every iterated face is intact,
    # so the operator action below cannot hit missing structure
    hereditary = set(s.simplices(0))
    for d in range(1, s.dim + 1):
        for name in s.simplices(d):
            if name in structurally_ok and \
                    all(r.base in hereditary for r in s._faces[name]):
                hereditary.add(name)
    for d in range(2, s.dim + 1):
        for name in s.simplices(d):
            if name not in hereditary:
                continue
            refs = s._faces[name]
            for j in range(1, d + 1):
                for i in range(j):
                    lhs = s.face(refs[j], i)
                    rhs = s.face(refs[i], j - 1)
                    if lhs != rhs:
                        issues.append(
                            f"{name}: identity face_{i} face_{j} != "
                            f"face_{j - 1} face_{i} ({lhs} vs {rhs})")
    return ValidationReport(issues)


# ---------------------------------------------------------------------------
# Standard objects: simplices, boundaries, horns

def _vertex_name(verts):
    if all(v <= 9 for v in verts):
        return "".join(str(v) for v in verts)
    return ".".join(str(v) for v in verts)


def _subsets_object(n, keep):
    by_dim = {}
    faces = {}
    for size in range(1, n + 2):
        names = []
        for verts in combinations(range(n + 1), size):
            if not keep(verts):
                continue
            name = _vertex_name(verts)
            names.append(name)
            if size >= 2:
                faces[name] = tuple(
                    SimplexRef(_vertex_name(verts[:i] + verts[i + 1:]))
                    for i in range(size))
        if names:
            by_dim[size - 1] = names
    return FiniteSimplicialSet(by_dim, faces)


@lru_cache(maxsize=None)
def simplex(n):
    """The standard n-simplex: one nondegenerate simplex per nonempty subset
    of its vertices, named by the vertex list (e.g. "02")."""
    if n < 0:
        raise ValueError("simplex: n must be >= 0")
    return _subsets_object(n, lambda verts: True)


@lru_cache(maxsize=None)
def boundary(n):
    """The boundary of the standard n-simplex (empty when n = 0)."""
    if n < 0:
        raise ValueError("boundary: n must be >= 0")
    return _subsets_object(n, lambda verts: len(verts) < n + 1)


@lru_cache(maxsize=None)
def horn(n, k):
    """The (n,k)-horn: the boundary minus the face opposite vertex k."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError("horn: need n >= 1 and 0 <= k <= n")
    full = tuple(range(n + 1))
    missing = full[:k] + full[k + 1:]
    return _subsets_object(
        n, lambda verts: len(verts) < n + 1 and verts != missing)


def _name_inclusion(sub, ambient):
    return SimplicialMap(sub, ambient,
                         {name: SimplexRef(name) for name in sub.names()})


@lru_cache(maxsize=None)
def boundary_inclusion(n):
    """The canonical inclusion of the boundary into the n-simplex."""
    return _name_inclusion(boundary(n), simplex(n))


@lru_cache(maxsize=None)
def horn_inclusion(n, k):
    """The canonical inclusion of the (n,k)-horn into the n-simplex."""
    return _name_inclusion(horn(n, k), simplex(n))


def empty_sset():
    return FiniteSimplicialSet()


# ---------------------------------------------------------------------------
# Enumeration

def enumerate_simplices(s, d):
    """All d-simplices of a valid object, nondegenerate and degenerate, as
    pairwise-distinct normal forms in canonical order."""
    memo = s._memo
    key = ("simplices", d)
    out = memo.get(key)
    if out is not None:
        return out
    refs = []
    for e in range(d + 1):
        for name in s.simplices(e):
            r = d - e
            if r == 0:
                refs.append(SimplexRef(name))
            else:
                words = sorted(tuple(reversed(c))
                               for c in combinations(range(d), r))
                refs.extend(SimplexRef(name, w) for w in words)
    out = tuple(refs)
    memo[key] = out
    return out


@lru_cache(maxsize=None)
def enumerate_maps(a, x):
    """The complete hom-set of simplicial maps a -> x, by dimension-increasing
    backtracking over images of nondegenerate simplices with face-compatibility
    pruning.  Order is lexicographic in the generator images."""
    gens = [name for d in range(a.dim + 1) for name in a.simplices(d)]
    candidates = {d: enumerate_simplices(x, d) for d in range(a.dim + 1)}
    out = []
    images = {}

    def fits(name, d, cand):
        for i in range(d + 1):
            fr = a.faces_of(name)[i]
            img = images[fr.base]
            if fr.word:
                g = _word_to_surj(fr.word, a.dim_of(fr.base))
                want = x.act(img, g)
            else:
                want = img
            if x.face(cand, i) != want:
                return False
        return True

    def extend(t):
        if t == len(gens):
            out.append(SimplicialMap(a, x, images))
            return
        name = gens[t]
        d = a.dim_of(name)
        for cand in candidates[d]:
            if d == 0 or fits(name, d, cand):
                images[name] = cand
                extend(t + 1)
                del images[name]

    extend(0)
    return tuple(out)


# ---------------------------------------------------------------------------
# Subcomplexes and relabeling

def minimal_subcomplex(s, seed):
    """Smallest face-closed subobject of `s` containing the named seed
    simplices, plus its inclusion.  Raises KeyError on unknown names."""
    for name in seed:
        if not s.has(name):
            raise KeyError(f"unknown simplex {name!r}")
    keep = set()
    stack = list(seed)
    while stack:
        name = stack.pop()
        if name in keep:
            continue
        keep.add(name)
        if s.dim_of(name) >= 1:
            stack.extend(r.base for r in s.faces_of(name))
    by_dim = {d: [n for n in s.simplices(d) if n in keep]
              for d in range(s.dim + 1)}
    faces = {n: s.faces_of(n) for n in keep if s.dim_of(n) >= 1}
    sub = FiniteSimplicialSet(by_dim, faces)
    return sub, _name_inclusion(sub, s)


def relabel(s, renaming):
    """Rename the nondegenerate simplices of `s` via the bijection `renaming`
    (old name -> new name); returns the renamed object and the isomorphism
    from `s` onto it."""
    if len(set(renaming.values())) != len(renaming):
        raise ValueError("relabel: renaming is not injective")
    by_dim = {d: [renaming[n] for n in s.simplices(d)]
              for d in range(s.dim + 1)}
    faces = {renaming[n]: tuple(SimplexRef(renaming[r.base], r.word)
                                for r in s.faces_of(n))
             for n in s.names() if s.dim_of(n) >= 1}
    out = FiniteSimplicialSet(by_dim, faces)
    iso = SimplicialMap(s, out, {n: SimplexRef(renaming[n])
                                 for n in s.names()})
    return out, iso
