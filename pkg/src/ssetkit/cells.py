"""Cell presentations: staged attachments of boundary- or horn-cells,
their realization as a chain of inclusions with birth indices, factoring
maps from finite objects through a finite stage, and the conversion of a
horn presentation into a boundary presentation of twice the length.

Stage indices play the role of presentation ordinals; only finitely many
stages can occur here, which is all that maps from finite objects can see.

Naming contract of `realize`: simplices of the base keep their names at
every stage, and the cells attached at stage ordinal s (1-based) by the
t-th attachment get names "c{s}_{t}_{w}" where w is the name of the
corresponding simplex of the standard cell being glued in.  Base objects
must not already use such names.
"""

from dataclasses import dataclass
from itertools import combinations

from ssetkit.core import (
    SimplexRef,
    SimplicialMap,
    _vertex_name,
    boundary,
    boundary_inclusion,
    compose,
    horn,
    horn_inclusion,
    identity,
    relabel,
    simplex,
)
from ssetkit.colimits import (
    PushoutResult,
    coproduct,
    pushout,
    pushout_induced,
    sequential_colimit,
)


def generator_source(kind, n, k=None):
    if kind == "I":
        return boundary(n)
    if kind == "J":
        return horn(n, k)
    raise ValueError(f"unknown generator kind {kind!r}")


def generator_inclusion(kind, n, k=None):
    if kind == "I":
        return boundary_inclusion(n)
    if kind == "J":
        return horn_inclusion(n, k)
    raise ValueError(f"unknown generator kind {kind!r}")


@dataclass(frozen=True)
class Attachment:
    """One cell attachment: a generator (boundary inclusion for kind "I",
    horn inclusion for kind "J") plus the attaching map of its source into
    the current stage."""

    kind: str
    n: int
    k: object          # horn index for kind "J", None for kind "I"
    attaching: SimplicialMap

    def __post_init__(self):
        if self.attaching.source != generator_source(self.kind, self.n, self.k):
            raise ValueError("attachment: attaching map source does not match "
                             f"the declared generator ({self.kind}, n={self.n})")


@dataclass(frozen=True)
class CellPresentation:
    """A base object plus an ordered list of stages, each a tuple of
    attachments whose attaching maps land in the realization of all strictly
    earlier stages."""

    base: object
    stages: tuple

    def attachment_count(self):
        return sum(len(stage) for stage in self.stages)

    def kinds(self):
        return {att.kind for stage in self.stages for att in stage}


class StageData:
    """Per-stage bookkeeping of a realization: the (renamed) pushout, one
    characteristic map per attached cell, and the stage inclusion."""

    def __init__(self, pushout_result, char_maps, inclusion):
        self.pushout = pushout_result
        self.char_maps = list(char_maps)
        self.inclusion = inclusion


class RealizeResult:
    """Realization of a presentation: the stage record (whose birth function
    assigns every cell its presentation ordinal), the base-to-final
    composite, and per-stage pushout data."""

    def __init__(self, presentation, record, stage_data):
        self.presentation = presentation
        self.record = record
        self.stage_data = list(stage_data)

    @property
    def final(self):
        return self.record.final

    def composite(self):
        return self.record.composite()


def _realize_stage(current, attachments, ordinal):
    """Attach one stage's worth of cells to `current` via a single pushout
    of a coproduct, then rename the corner so that surviving simplices keep
    their names and new cells get canonical "c{ordinal}_{t}_{w}" names."""
    for t, att in enumerate(attachments):
        if att.attaching.target != current:
            raise ValueError(f"stage {ordinal}: attaching map {t} does not "
                             "land in the previous stage")
    if not attachments:
        return StageData(None, [], identity(current))

    sources, src_injs = coproduct(
        [generator_source(att.kind, att.n, att.k) for att in attachments])
    targets, tgt_injs = coproduct(
        [simplex(att.n) for att in attachments])
    gen_map = SimplicialMap(sources, targets, {
        src_injs[t].images[n].base: tgt_injs[t].images[n]
        for t, att in enumerate(attachments)
        for n in att.attaching.source.names()})
    attach_map = SimplicialMap(sources, current, {
        src_injs[t].images[n].base: att.attaching.images[n]
        for t, att in enumerate(attachments)
        for n in att.attaching.source.names()})
    p = pushout(gen_map, attach_map)

    renaming = {}
    for name in p.corner.names():
        froms_b, froms_c = p.provenance[name]
        if froms_c:
            renaming[name] = froms_c[0]
        else:
            t, _, w = froms_b[0].partition("_")
            renaming[name] = f"c{ordinal}_{t[1:]}_{w}"
    if len(set(renaming.values())) != len(renaming):
        raise ValueError(f"stage {ordinal}: attached-cell names collide with "
                         "existing simplices (rename the base away from "
                         "'c<stage>_' prefixes)")
    corner, iso = relabel(p.corner, renaming)
    leg_b = compose(iso, p.leg_from_b)
    leg_c = compose(iso, p.leg_from_c)
    provenance = {renaming[n]: pr for n, pr in p.provenance.items()}
    renamed = PushoutResult(corner, leg_b, leg_c, provenance)
    chars = [compose(leg_b, tgt_injs[t]) for t in range(len(attachments))]
    return StageData(renamed, chars, leg_c)


def realize(presentation):
    """Realize a presentation stagewise; raises when some attaching map does
    not land in its stage."""
    current = presentation.base
    data = []
    for s, attachments in enumerate(presentation.stages):
        stage = _realize_stage(current, attachments, s + 1)
        data.append(stage)
        current = stage.inclusion.target
    record = sequential_colimit([d.inclusion for d in data],
                                base=presentation.base)
    return RealizeResult(presentation, record, data)


class PresentationBuilder:
    """Incremental construction of a presentation: queue attachments against
    the current realized stage, then close the stage to advance.  The stage
    data accumulated here is exactly what `realize` would recompute."""

    def __init__(self, base):
        self.base = base
        self.stage_data = []
        self._stages = []
        self._pending = []
        self._current = base

    @property
    def current(self):
        """The realized object that attaching maps of the open stage must
        target."""
        return self._current

    def attach(self, kind, n, k=None, attaching=None):
        if attaching is None:
            raise ValueError("attach: an attaching map is required")
        self._pending.append(Attachment(kind, n, k, attaching))
        return self

    def close_stage(self):
        stage = _realize_stage(self._current, tuple(self._pending),
                               len(self._stages) + 1)
        self._stages.append(tuple(self._pending))
        self._pending = []
        self.stage_data.append(stage)
        self._current = stage.inclusion.target
        return stage

    def presentation(self):
        if self._pending:
            raise ValueError("presentation: close the open stage first")
        return CellPresentation(self.base, tuple(self._stages))

    def realized(self):
        pres = self.presentation()
        record = sequential_colimit([d.inclusion for d in self.stage_data],
                                    base=self.base)
        return RealizeResult(pres, record, self.stage_data)


def factor_through_stage(realized, m):
    """Factor a map from a finite object into the final stage of a
    realization through the earliest possible stage.

    Returns (k, factored) where k is minimal such that every simplex in the
    image of m is born by stage k, and factored composes with the stage
    inclusions to recover m exactly."""
    record = realized.record if isinstance(realized, RealizeResult) else realized
    if m.target != record.final:
        raise ValueError("factor_through_stage: map does not land in the "
                         "final stage")
    birth = record.birth
    k = max((birth[m.images[n].base] for n in m.source.names()), default=0)
    comp = record.composite_from(k)
    inverse = {comp.images[n].base: n for n in record.objects[k].names()}
    factored = SimplicialMap(m.source, record.objects[k], {
        n: SimplexRef(inverse[m.images[n].base], m.images[n].word)
        for n in m.source.names()})
    if compose(comp, factored) != m:
        raise RuntimeError("factor_through_stage: recovery check failed")
    return k, factored


# ---------------------------------------------------------------------------
# Horn-to-boundary conversion

def _proper_subsets(ground):
    for size in range(1, len(ground)):
        yield from combinations(ground, size)


def _missing_face_attaching(att, h, target):
    """Attaching map of the horn's missing face into `target`: the boundary
    of the k-th face of the n-simplex lies inside the horn, so transport it
    through the original attaching map and the running isomorphism h."""
    n, k = att.n, att.k
    face_verts = tuple(v for v in range(n + 1) if v != k)
    src = boundary(n - 1)
    images = {}
    for verts in _proper_subsets(tuple(range(n))):
        picked = _vertex_name(tuple(face_verts[v] for v in verts))
        images[_vertex_name(verts)] = h(att.attaching.images[picked])
    return SimplicialMap(src, target, images)


def _top_cell_attaching(att, horn_to_mid, char_a):
    """Attaching map of the full boundary of the n-simplex once the missing
    face exists: horn simplices go through `horn_to_mid`, the missing face
    goes to the freshly attached cell."""
    n, k = att.n, att.k
    missing = _vertex_name(tuple(v for v in range(n + 1) if v != k))
    top_of_face = _vertex_name(tuple(range(n)))
    src = boundary(n)
    images = {}
    for verts in _proper_subsets(tuple(range(n + 1))):
        name = _vertex_name(verts)
        if name == missing:
            images[name] = char_a.images[top_of_face]
        else:
            images[name] = horn_to_mid.images[name]
    return SimplicialMap(src, horn_to_mid.target, images)


def j_to_i_presentation(presentation):
    """Convert a presentation made of horn attachments into one made of
    boundary attachments: each horn cell becomes its missing face (attached
    along that face's boundary) followed by the full cell (attached along
    its entire boundary).  Each stage splits in two, so the attachment count
    exactly doubles.

    Returns the converted presentation together with the isomorphism from
    the realization of the input onto the realization of the output, over
    the common base.  Raises on mixed-kind input."""
    if presentation.kinds() - {"J"}:
        raise ValueError("j_to_i_presentation: presentation has non-horn "
                         "attachments")
    j_res = realize(presentation)
    builder = PresentationBuilder(presentation.base)
    h = identity(presentation.base)

    for s, attachments in enumerate(presentation.stages):
        for att in attachments:
            builder.attach("I", att.n - 1,
                           attaching=_missing_face_attaching(
                               att, h, builder.current))
        stage_a = builder.close_stage()
        inc_a = stage_a.inclusion
        for t, att in enumerate(attachments):
            horn_to_mid = compose(inc_a, compose(h, att.attaching))
            builder.attach("I", att.n,
                           attaching=_top_cell_attaching(
                               att, horn_to_mid, stage_a.char_maps[t]))
        stage_b = builder.close_stage()

        # transport the isomorphism across this stage's pushout: the new
        # cells of the horn stage go to the corresponding boundary cells
        p = j_res.stage_data[s].pushout
        from_c = compose(stage_b.inclusion, compose(inc_a, h))
        cells = p.leg_from_b.source
        images = {}
        for t, att in enumerate(attachments):
            char_b = stage_b.char_maps[t]
            for w in simplex(att.n).names():
                images[f"i{t}_{w}"] = char_b.images[w]
        from_b = SimplicialMap(cells, stage_b.inclusion.target, images)
        h = pushout_induced(p, from_b, from_c)

    converted = builder.presentation()
    _check_iso(h)
    return converted, h


def _check_iso(h):
    """Verify that a map is an isomorphism by inverting its assignment of
    nondegenerate simplices."""
    src, tgt = h.source, h.target
    if src.size() != tgt.size():
        raise RuntimeError("conversion map is not an isomorphism (size)")
    inverse = {}
    for n in src.names():
        img = h.images[n]
        if img.word or img.base in inverse:
            raise RuntimeError("conversion map is not an isomorphism")
        inverse[img.base] = n
    inv = SimplicialMap(tgt, src, {m: SimplexRef(inverse[m])
                                   for m in tgt.names()})
    if compose(inv, h) != identity(src) or compose(h, inv) != identity(tgt):
        raise RuntimeError("conversion map is not an isomorphism (inverse)")
    return inv
