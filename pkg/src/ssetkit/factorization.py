"""Staged factorization of a map against a capped generator family: the
small object argument at desk scale.

Each round enumerates every commuting square from a generator into the
current factor, attaches one cell per square needing attention (all squares
in faithful mode, only unlifted squares in reduced mode), and extends the
projection through the pushout.  Faithful mode reproduces the classical
construction exactly and is the mode under which the construction is
functorial; it rarely terminates, so it is used with small stage budgets.
Reduced mode attaches only what is needed and converges on many desk-scale
inputs; a converged run certifies the right factor's lifting property
directly.
"""

from ssetkit.core import SimplicialMap, compose, simplex
from ssetkit.colimits import pushout_induced
from ssetkit.cells import PresentationBuilder
from ssetkit.lifting import (
    Lift,
    LiftingProblem,
    check_rlp,
    enumerate_squares,
    generator_family,
    solve_lift,
)


class FactorStage:
    """One enumeration round: the object and projection it ran against, the
    squares found (in canonical (generator, top, bottom) order), and the
    indices of those that received a cell."""

    def __init__(self, w, p, squares, attached):
        self.w = w
        self.p = p
        self.squares = squares
        self.attached = list(attached)


class FactorizationResult:
    """Outcome of `factorize`: f = right . left with left the realization
    of the recorded cell presentation and right the final projection.
    `residual` lists the squares still unlifted when the run stopped; it is
    empty on every converged run."""

    def __init__(self, f, kind, cap, mode, budget, left, right,
                 realization, stages, residual, converged):
        self.f = f
        self.kind = kind
        self.cap = cap
        self.mode = mode
        self.budget = budget
        self.left = left
        self.right = right
        self.realization = realization
        self.stages = stages
        self.residual = residual
        self.converged = converged

    @property
    def presentation(self):
        return self.realization.presentation

    @property
    def stages_run(self):
        return len(self.stages)

    @property
    def middle(self):
        return self.left.target


def _attach_label(kind, label):
    n = label[1]
    k = label[2] if kind == "J" else None
    return n, k


def factorize(f, kind, cap=3, mode="reduced", budget=5):
    """Factor f: X -> Y as (relative cell complex) followed by (map with the
    right lifting property against the capped generators), by iterated
    pushouts of coproducts of generator cells.

    Stops when a round finds no square needing a cell (converged) or when
    `budget` attachment rounds have run (residual reported, never silent)."""
    if mode not in ("faithful", "reduced"):
        raise ValueError(f"unknown mode {mode!r}")
    if budget < 0:
        raise ValueError("stage budget must be >= 0")
    gens = generator_family(kind, cap)
    builder = PresentationBuilder(f.source)
    p_k = f
    stages = []
    rounds = 0
    converged = False
    residual = []

    while True:
        w_k = builder.current
        squares = [(label, sq) for label, gen in gens
                   for sq in enumerate_squares(gen, p_k)]
        if mode == "faithful":
            pending = list(range(len(squares)))
        else:
            pending = [idx for idx, (_, sq) in enumerate(squares)
                       if not isinstance(solve_lift(sq), Lift)]
        if not pending:
            stages.append(FactorStage(w_k, p_k, squares, []))
            converged = True
            break
        if rounds >= budget:
            stages.append(FactorStage(w_k, p_k, squares, []))
            if mode == "reduced":
                residual = [squares[idx] for idx in pending]
            else:
                residual = [(label, sq) for label, sq in squares
                            if not isinstance(solve_lift(sq), Lift)]
            break

        for idx in pending:
            label, sq = squares[idx]
            n, kk = _attach_label(kind, label)
            builder.attach(kind, n, kk, attaching=sq.top)
        stage = builder.close_stage()
        stages.append(FactorStage(w_k, p_k, squares, pending))

        cells = stage.pushout.leg_from_b.source
        images = {}
        for t, idx in enumerate(pending):
            label, sq = squares[idx]
            for w in simplex(label[1]).names():
                images[f"i{t}_{w}"] = sq.bottom.images[w]
        from_b = SimplicialMap(cells, f.target, images)
        p_k = pushout_induced(stage.pushout, from_b, p_k)
        rounds += 1

    realization = builder.realized()
    return FactorizationResult(
        f=f, kind=kind, cap=cap, mode=mode, budget=budget,
        left=realization.composite(), right=p_k,
        realization=realization, stages=stages,
        residual=residual, converged=converged)


# ---------------------------------------------------------------------------
# Verification

class VerificationReport:
    def __init__(self, issues):
        self.issues = list(issues)

    @property
    def ok(self):
        return not self.issues

    def __str__(self):
        return "all checks passed" if self.ok else "\n".join(self.issues)


def stage_solvability_failures(result):
    """The heart of the construction: every square enumerated at a stage
    that was followed by an attachment round must lift through the next
    stage.  Returns the (stage, square index) pairs where this fails."""
    failures = []
    for k in range(len(result.stages) - 1):
        inc = result.realization.stage_data[k].inclusion
        next_p = result.stages[k + 1].p
        for idx, (label, sq) in enumerate(result.stages[k].squares):
            through = LiftingProblem(sq.left, next_p,
                                     compose(inc, sq.top), sq.bottom)
            if not isinstance(solve_lift(through), Lift):
                failures.append((k, idx))
    return failures


def early_top_failures(result):
    """Squares at the final stage whose top factors through a stage strictly
    below the last attachment round must be solvable: their restriction was
    enumerated back then and a cell (or an existing lift) covers it.  This is
    the finiteness step that lets capped runs certify anything at all."""
    from ssetkit.cells import factor_through_stage

    record = result.realization.record
    failures = []
    for idx, (_, sq) in enumerate(result.stages[-1].squares):
        born, _ = factor_through_stage(record, sq.top)
        if born < result.stages_run - 1 and \
                not isinstance(solve_lift(sq), Lift):
            failures.append(idx)
    return failures


def verify_factorization(result):
    """Re-check a factorization from scratch: composite equality, agreement
    of the recorded presentation with the left factor, residual accuracy,
    stage solvability, the early-top solvability of the final stage, and
    (when the residual is empty) the full lifting property of the right
    factor at the run's cap."""
    from ssetkit.cells import realize

    issues = []
    r = result
    if compose(r.right, r.left) != r.f:
        issues.append("composite: right . left != input map")

    fresh = realize(r.presentation)
    if fresh.composite() != r.left:
        issues.append("presentation: realization composite differs from left")
    if fresh.final != r.middle:
        issues.append("presentation: realized object differs from middle")

    if r.mode == "faithful":
        for k, stage in enumerate(r.stages[:-1]):
            if len(stage.attached) != len(stage.squares):
                issues.append(f"stage {k}: faithful mode must attach one "
                              "cell per square")

    final_squares = [(label, sq) for label, gen in
                     generator_family(r.kind, r.cap)
                     for sq in enumerate_squares(gen, r.right)]
    unsolved = [(label, sq) for label, sq in final_squares
                if not isinstance(solve_lift(sq), Lift)]
    if unsolved != list(r.residual):
        issues.append("residual: recorded residual does not match re-solve")

    for k, idx in stage_solvability_failures(r):
        issues.append(f"stage {k}: square #{idx} does not lift through the "
                      "next stage")

    for idx in early_top_failures(r):
        issues.append(f"final stage: square #{idx} has an early-born top "
                      "but no lift")

    if not r.residual and not check_rlp(r.right, r.kind, r.cap).passed:
        issues.append("rlp: converged run's right factor fails check_rlp")
    return VerificationReport(issues)


# ---------------------------------------------------------------------------
# Functoriality of the faithful construction

def induced_factorization_map(u, v, r, r2):
    """Given a square (u, v) from r.f to r2.f (v . f = f' . u) and faithful
    runs of both, build the stagewise maps W_k -> W'_k: the cell attached
    for a square goes to the cell attached for the composed square.

    Reduced mode breaks this recipe (the composed square may have attached
    no cell) and is refused."""
    if r.mode != "faithful" or r2.mode != "faithful":
        raise ValueError("induced_factorization_map: both runs must be "
                         "faithful")
    if (r.kind, r.cap) != (r2.kind, r2.cap):
        raise ValueError("induced_factorization_map: generator family or "
                         "cap mismatch")
    if compose(v, r.f) != compose(r2.f, u):
        raise ValueError("induced_factorization_map: input square does not "
                         "commute")

    closed = len(r.realization.stage_data)
    closed2 = len(r2.realization.stage_data)
    maps = [u]
    h = u
    for k in range(max(closed, closed2)):
        if k >= closed:
            # first run already stabilized: pad with identity stages
            h = compose(r2.realization.stage_data[k].inclusion, h)
            maps.append(h)
            continue
        if k >= closed2:
            raise ValueError("induced_factorization_map: second run stopped "
                             "before the first; rerun with a larger budget")
        stage = r.realization.stage_data[k]
        stage2 = r2.realization.stage_data[k]
        lookup = {}
        for t2, (label2, sq2) in enumerate(r2.stages[k].squares):
            lookup[(label2, sq2.top, sq2.bottom)] = t2
        cells = stage.pushout.leg_from_b.source
        images = {}
        for t, (label, sq) in enumerate(r.stages[k].squares):
            key = (label, compose(h, sq.top), compose(v, sq.bottom))
            t2 = lookup.get(key)
            if t2 is None:
                raise RuntimeError("induced_factorization_map: composed "
                                   "square has no cell in the second run")
            char2 = stage2.char_maps[t2]
            for w in simplex(label[1]).names():
                images[f"i{t}_{w}"] = char2.images[w]
        from_b = SimplicialMap(cells, stage2.inclusion.target, images)
        from_c = compose(stage2.inclusion, h)
        h = pushout_induced(stage.pushout, from_b, from_c)
        maps.append(h)

    _check_stagewise(maps, v, r, r2)
    return maps


def _check_stagewise(maps, v, r, r2):
    for k, h in enumerate(maps):
        p_k = r.stages[k].p if k < len(r.stages) else r.stages[-1].p
        p2_k = r2.stages[k].p if k < len(r2.stages) else r2.stages[-1].p
        if compose(p2_k, h) != compose(v, p_k):
            raise RuntimeError(f"induced_factorization_map: stage {k} does "
                               "not commute with the projections")
