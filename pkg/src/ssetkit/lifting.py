"""Decidable lifting problems and transfer of lifts along retracts,
pushouts, coproducts, and stage compositions.

`solve_lift` decides a lifting problem by exhaustive backtracking over the
images of the nondegenerate simplices of the lower-left object, pruned by
both triangle constraints and face compatibility.  It returns the
lexicographically least diagonal when one exists, and otherwise a refutation
count (the search itself is the certificate of nonexistence).
"""

from dataclasses import dataclass, field

from ssetkit.core import (
    SimplicialMap,
    _word_to_surj,
    boundary_inclusion,
    compose,
    enumerate_maps,
    enumerate_simplices,
    horn_inclusion,
    identity,
)
from ssetkit.colimits import coproduct, coproduct_induced, pushout_induced


class LiftTransferError(ValueError):
    """A lift-transfer operation could not run: an inner premise lift was
    missing or a supplied map failed its defining equations."""


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square: left i: A -> B, right f: X -> Y, top: A -> X,
    bottom: B -> Y with f . top = bottom . i."""

    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def __post_init__(self):
        i, f, t, u = self.left, self.right, self.top, self.bottom
        if t.source != i.source or t.target != f.source:
            raise ValueError("lifting problem: top map endpoints do not fit")
        if u.source != i.target or u.target != f.target:
            raise ValueError("lifting problem: bottom map endpoints do not fit")
        if compose(f, t) != compose(u, i):
            raise ValueError("lifting problem: square does not commute")


@dataclass(frozen=True)
class Lift:
    """A diagonal B -> X solving a lifting problem."""

    diagonal: SimplicialMap


@dataclass(frozen=True)
class NoLift:
    """Certificate of nonexistence: the number of candidate partial
    assignments refuted by the exhaustive search."""

    refuted: int


def verify_lift(problem, diagonal):
    """Both triangle equations, checked exactly."""
    return (compose(diagonal, problem.left) == problem.top
            and compose(problem.right, diagonal) == problem.bottom)


def solve_lift(problem):
    """Decide a lifting problem.  Returns the least diagonal in the
    lexicographic map order, or NoLift with search statistics."""
    i, f = problem.left, problem.right
    b, x = i.target, f.source
    a = i.source

    # constraints from the top triangle: assigning the image of a
    # nondegenerate simplex u of B pins down h(i(a)) for every a with
    # i(a) based at u
    top_constraints = {}
    for name in a.names():
        ref = i.images[name]
        surj = (_word_to_surj(ref.word, b.dim_of(ref.base))
                if ref.word else None)
        top_constraints.setdefault(ref.base, []).append(
            (surj, problem.top.images[name]))

    gens = [name for d in range(b.dim + 1) for name in b.simplices(d)]
    candidates = {d: enumerate_simplices(x, d) for d in range(b.dim + 1)}
    images = {}
    refuted = 0

    def admissible(name, d, cand):
        for surj, want in top_constraints.get(name, ()):
            got = x.act(cand, surj) if surj else cand
            if got != want:
                return False
        if f(cand) != problem.bottom.images[name]:
            return False
        for t in range(d + 1) if d else ():
            fr = b.faces_of(name)[t]
            img = images[fr.base]
            if fr.word:
                want = x.act(img, _word_to_surj(fr.word, b.dim_of(fr.base)))
            else:
                want = img
            if x.face(cand, t) != want:
                return False
        return True

    def search(t):
        nonlocal refuted
        if t == len(gens):
            return SimplicialMap(b, x, images)
        name = gens[t]
        d = b.dim_of(name)
        for cand in candidates[d]:
            if admissible(name, d, cand):
                images[name] = cand
                found = search(t + 1)
                del images[name]
                if found is not None:
                    return found
                refuted += 1
            else:
                refuted += 1
        return None

    diag = search(0)
    if diag is None:
        return NoLift(refuted)
    return Lift(diag)


def enumerate_squares(i, f):
    """All commuting squares with left leg i and right leg f, ordered by
    (top index, bottom index) in the hom-set enumerations."""
    tops = enumerate_maps(i.source, f.source)
    bottoms = enumerate_maps(i.target, f.target)
    out = []
    for top in tops:
        ft = compose(f, top)
        for bottom in bottoms:
            if compose(bottom, i) == ft:
                out.append(LiftingProblem(i, f, top, bottom))
    return out


# ---------------------------------------------------------------------------
# Generator families and right-lifting-property reports

def generator_family(kind, cap):
    """The boundary inclusions ("I", n <= cap) or horn inclusions
    ("J", 1 <= n <= cap, 0 <= k <= n), each with its label."""
    if kind == "I":
        return [(("I", n), boundary_inclusion(n)) for n in range(cap + 1)]
    if kind == "J":
        return [(("J", n, k), horn_inclusion(n, k))
                for n in range(1, cap + 1) for k in range(n + 1)]
    raise ValueError(f"unknown generator family {kind!r}")


@dataclass(frozen=True)
class RLPReport:
    """Per-square solvability of a map against a capped generator family."""

    kind: str
    cap: int
    entries: tuple = field(default=())  # (label, square index, solved)

    @property
    def passed(self):
        return all(solved for _, _, solved in self.entries)

    def lines(self):
        out = []
        for label, idx, solved in self.entries:
            gen = (f"gen={label[1]}" if label[0] == "I"
                   else f"gen={label[1]},{label[2]}")
            out.append(f"{gen} square#{idx} "
                       f"{'solved' if solved else 'unsolved'}")
        return out


def check_rlp(f, kind, cap):
    """Solve every generator square against f, up to the dimension cap.
    A full pass against "J" is this library's notion of a fibration; a full
    pass against "I" certifies trivial-fibration behavior."""
    entries = []
    for label, gen in generator_family(kind, cap):
        for idx, square in enumerate(enumerate_squares(gen, f)):
            solved = isinstance(solve_lift(square), Lift)
            entries.append((label, idx, solved))
    return RLPReport(kind, cap, tuple(entries))


# ---------------------------------------------------------------------------
# Retract diagrams and the retract argument

@dataclass(frozen=True)
class RetractDiagram:
    """The six maps exhibiting i: A -> B as a retract of j: C -> D:
    horizontals A -> C -> A and B -> D -> B composing to identities, with
    verticals i, j, i making all squares commute."""

    i: SimplicialMap
    j: SimplicialMap
    a_in: SimplicialMap   # A -> C
    a_out: SimplicialMap  # C -> A
    b_in: SimplicialMap   # B -> D
    b_out: SimplicialMap  # D -> B

    def __post_init__(self):
        if compose(self.a_out, self.a_in) != identity(self.i.source):
            raise ValueError("retract diagram: top composite is not the identity")
        if compose(self.b_out, self.b_in) != identity(self.i.target):
            raise ValueError("retract diagram: bottom composite is not the identity")
        if compose(self.j, self.a_in) != compose(self.b_in, self.i):
            raise ValueError("retract diagram: left square does not commute")
        if compose(self.i, self.a_out) != compose(self.b_out, self.j):
            raise ValueError("retract diagram: right square does not commute")
        if compose(self.i, compose(self.a_out, self.a_in)) != \
                compose(compose(self.b_out, self.b_in), self.i):
            raise ValueError("retract diagram: outer square does not commute")


def lift_via_retract(diagram, problem, solver=solve_lift):
    """Transfer a lift across a retract: solve the induced square for the
    middle map j and restrict along the retraction.

    `problem` is a square for diagram.i; the returned diagonal is verified
    against both of its triangles before being returned."""
    if problem.left != diagram.i:
        raise ValueError("lift_via_retract: problem is not a square for i")
    induced = LiftingProblem(
        diagram.j, problem.right,
        compose(problem.top, diagram.a_out),
        compose(problem.bottom, diagram.b_out))
    inner = solver(induced)
    if not isinstance(inner, Lift):
        raise LiftTransferError("lift_via_retract: no lift for the induced "
                                "square of j")
    w = compose(inner.diagonal, diagram.b_in)
    if not verify_lift(problem, w):
        raise LiftTransferError("lift_via_retract: transferred map fails its "
                                "triangles")
    return Lift(w)


def lift_via_pushout(p, problem, w):
    """Transfer a lift across a pushout: `problem` is a square for the
    pushout leg j = p.leg_from_c, and `w` solves the composed square for the
    original map (w . i = top . g and right . w = bottom . leg_from_b).
    The induced map out of the corner is the transferred lift."""
    if problem.left != p.leg_from_c:
        raise ValueError("lift_via_pushout: problem is not a square for the "
                         "pushout leg")
    diag = w.diagonal if isinstance(w, Lift) else w
    try:
        g = pushout_induced(p, diag, problem.top)
    except ValueError as exc:
        raise LiftTransferError(f"lift_via_pushout: {exc}") from exc
    if not verify_lift(problem, g):
        raise LiftTransferError("lift_via_pushout: induced map fails its "
                                "triangles")
    return Lift(g)


def lift_via_coproduct(problems, lifts):
    """Assemble per-summand lifts into a lift for the coproduct square.
    All summand problems must share the same right map.  Returns the
    assembled problem together with its verified lift."""
    if not problems or len(problems) != len(lifts):
        raise LiftTransferError("lift_via_coproduct: need one lift per summand")
    f = problems[0].right
    if any(q.right != f for q in problems):
        raise LiftTransferError("lift_via_coproduct: summands disagree on the "
                                "right map")
    srcs, src_injs = coproduct([q.left.source for q in problems])
    tgts, tgt_injs = coproduct([q.left.target for q in problems])
    left = SimplicialMap(srcs, tgts, {
        inj.images[n].base: tgt_injs[t](q.left.images[n])
        for t, (inj, q) in enumerate(zip(src_injs, problems))
        for n in q.left.source.names()})
    top = coproduct_induced(srcs, src_injs, [q.top for q in problems])
    bottom = coproduct_induced(tgts, tgt_injs, [q.bottom for q in problems])
    assembled = LiftingProblem(left, f, top, bottom)
    diag = coproduct_induced(
        tgts, tgt_injs,
        [w.diagonal if isinstance(w, Lift) else w for w in lifts])
    if not verify_lift(assembled, diag):
        raise LiftTransferError("lift_via_coproduct: assembled diagonal fails "
                                "its triangles")
    return assembled, Lift(diag)


def lift_via_composition(stages, problem, solver=solve_lift):
    """Lift against a finite chain of inclusions, stage by stage.  `problem`
    must have the chain composite as its left map; each stage square is
    solved with the previous diagonal as its top.  Raises with the failing
    stage index when some stage is unsolvable."""
    if problem.left != stages.composite():
        raise ValueError("lift_via_composition: problem's left map is not the "
                         "chain composite")
    h = problem.top
    for k, inc in enumerate(stages.inclusions):
        rest = stages.composite_from(k + 1)
        stage_problem = LiftingProblem(inc, problem.right, h,
                                       compose(problem.bottom, rest))
        found = solver(stage_problem)
        if not isinstance(found, Lift):
            raise LiftTransferError(f"lift_via_composition: stage {k} "
                                    "unsolvable")
        h = found.diagonal
    if not verify_lift(problem, h):
        raise LiftTransferError("lift_via_composition: assembled diagonal "
                                "fails its triangles")
    return Lift(h)


def retract_argument(g, i, p, q):
    """Given a factorization g = p . i and a diagonal q solving the square
    (left g, right p, top i, bottom identity), exhibit g as a retract of i.
    Raises when q fails its defining equations."""
    diag = q.diagonal if isinstance(q, Lift) else q
    if compose(p, i) != g:
        raise ValueError("retract_argument: g != p . i")
    if compose(diag, g) != i or compose(p, diag) != identity(g.target):
        raise LiftTransferError("retract_argument: q fails its defining "
                                "equations")
    return RetractDiagram(
        i=g, j=i,
        a_in=identity(g.source), a_out=identity(g.source),
        b_in=diag, b_out=p)
