import itertools

import pytest

from ssetkit.core import (
    FiniteSimplicialSet,
    SimplexRef,
    SimplicialMap,
    boundary,
    boundary_inclusion,
    compose,
    empty_sset,
    enumerate_maps,
    enumerate_simplices,
    horn,
    horn_inclusion,
    identity,
    is_map,
    map_errors,
    minimal_subcomplex,
    relabel,
    simplex,
    validate,
)


# Counting monotone maps [m] -> [n] by direct recursion; the independent
# oracle for hom-set sizes between standard simplices.
def _mono_rec(m, n):
    # number of weakly increasing sequences of length m+1 with values 0..n
    counts = [1] * (n + 1)
    for _ in range(m):
        acc = 0
        nxt = []
        for v in range(n, -1, -1):
            acc += counts[v]
            nxt.append(acc)
        counts = list(reversed(nxt))
    return sum(counts)


def circle():
    return FiniteSimplicialSet(
        {0: ["v"], 1: ["e"]},
        {"e": [SimplexRef("v"), SimplexRef("v")]})


class TestStandardObjects:
    def test_simplex_counts(self):
        # 2^(n+1) - 1 nonempty subsets
        assert simplex(2).size() == 7
        assert simplex(0).size() == 1
        assert simplex(3).size() == 15

    def test_boundary_counts(self):
        assert boundary(2).size() == 6
        assert boundary(0).is_empty

    def test_horn_counts(self):
        assert horn(2, 1).size() == 5
        assert horn(1, 0).size() == 1

    def test_generators_validate(self):
        for n in range(5):
            assert validate(simplex(n)).ok
            assert validate(boundary(n)).ok
        for n in range(1, 5):
            for k in range(n + 1):
                assert validate(horn(n, k)).ok

    def test_inclusions_are_maps(self):
        for n in range(4):
            assert is_map(boundary_inclusion(n))
        for n in range(1, 4):
            for k in range(n + 1):
                assert is_map(horn_inclusion(n, k))


class TestValidate:
    def test_empty_object(self):
        s = empty_sset()
        assert validate(s).ok
        assert s.size() == 0

    def test_dangling_reference(self):
        s = FiniteSimplicialSet(
            {0: ["a"], 1: ["e"]},
            {"e": [SimplexRef("a"), SimplexRef("ghost")]})
        rep = validate(s)
        assert not rep.ok
        assert any("dangling" in line for line in rep.issues)

    def test_duplicate_names(self):
        s = FiniteSimplicialSet({0: ["a", "a"]}, {})
        rep = validate(s)
        assert any("duplicate" in line for line in rep.issues)

    def test_broken_identity(self):
        # a 2-simplex whose faces do not satisfy the simplicial identity
        s = FiniteSimplicialSet(
            {0: ["a", "b", "c", "d"], 1: ["ab", "cd", "ac"], 2: ["t"]},
            {"ab": ["b", "a"], "cd": ["d", "c"], "ac": ["c", "a"],
             "t": ["cd", "ac", "ab"]})
        rep = validate(s)
        assert any("identity" in line for line in rep.issues)

    def test_circle_is_valid(self):
        assert validate(circle()).ok

    def test_deeply_broken_structure_reported_not_crashed(self):
        s = FiniteSimplicialSet(
            {0: ["a", "b", "c"], 1: ["ab", "bc", "ac"], 2: ["t"]},
            {"ab": ["b", "a"], "bc": ["c", "ghost"], "ac": ["c", "a"],
             "t": ["bc", "ac", "ab"]})
        rep = validate(s)
        assert not rep.ok
        assert any("ghost" in line for line in rep.issues)


class TestEnumerateSimplices:
    def test_point_degenerate_edge(self):
        assert len(enumerate_simplices(simplex(0), 1)) == 1

    def test_interval_dim1(self):
        refs = enumerate_simplices(simplex(1), 1)
        assert len(refs) == 3
        # normal forms are pairwise distinct
        assert len(set(refs)) == 3

    def test_boundary_interval_dim1(self):
        assert len(enumerate_simplices(boundary(1), 1)) == 2

    def test_counts_match_monotone_surjections(self):
        # over one base of dimension e there are C(d, e) d-simplices
        from math import comb
        for e in range(4):
            s = simplex(0) if e == 0 else None
        s = simplex(2)
        for d in range(5):
            total = sum(comb(d, e) * len(s.simplices(e))
                        for e in range(min(d, s.dim) + 1))
            assert len(enumerate_simplices(s, d)) == total

    def test_faces_of_listed_simplices_are_listed(self):
        s = simplex(2)
        for d in range(1, 4):
            listed = set(enumerate_simplices(s, d))
            lower = set(enumerate_simplices(s, d - 1))
            for ref in listed:
                for i in range(d + 1):
                    assert s.face(ref, i) in lower
        for d in range(3):
            listed = set(enumerate_simplices(s, d))
            upper = set(enumerate_simplices(s, d + 1))
            for ref in listed:
                for i in range(d + 1):
                    assert s.degeneracy(ref, i) in upper


class TestOperatorAction:
    def test_simplicial_identities_on_refs(self):
        s = simplex(2)
        for d in (2, 3):
            for ref in enumerate_simplices(s, d):
                for j in range(1, d + 1):
                    for i in range(j):
                        assert s.face(s.face(ref, j), i) == \
                            s.face(s.face(ref, i), j - 1)

    def test_degeneracy_face_cancellation(self):
        s = circle()
        for d in (1, 2):
            for ref in enumerate_simplices(s, d):
                for i in range(d + 1):
                    si = s.degeneracy(ref, i)
                    assert s.face(si, i) == ref
                    assert s.face(si, i + 1) == ref


class TestEnumerateMaps:
    def test_hom_interval_interval(self):
        assert len(enumerate_maps(simplex(1), simplex(1))) == 3

    def test_hom_from_empty(self):
        for x in (simplex(2), empty_sset(), circle()):
            assert len(enumerate_maps(boundary(0), x)) == 1

    def test_hom_points_into_triangle(self):
        assert len(enumerate_maps(simplex(0), simplex(2))) == 3

    def test_hom_into_empty(self):
        assert len(enumerate_maps(simplex(0), empty_sset())) == 0

    def test_hom_counts_against_monotone_recursion(self):
        from math import comb
        for m in range(4):
            for n in range(4):
                got = len(enumerate_maps(simplex(m), simplex(n)))
                assert got == _mono_rec(m, n), (m, n)
                assert got == comb(m + n + 1, m + 1), (m, n)

    def test_all_enumerated_maps_are_maps(self):
        for a in (boundary(1), simplex(1), horn(2, 1)):
            for f in enumerate_maps(a, circle()):
                assert is_map(f)

    def test_enumeration_is_duplicate_free_and_sorted(self):
        maps = enumerate_maps(boundary(1), simplex(1))
        keys = [f.sort_key() for f in maps]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_circle_maps_to_interval_are_constant(self):
        maps = enumerate_maps(circle(), simplex(1))
        # the loop must land on a degenerate edge: one map per vertex
        assert len(maps) == 2
        for f in maps:
            assert f.images["e"].degenerate


class TestComposeIdentity:
    def test_identity_laws(self):
        f = enumerate_maps(boundary(1), simplex(1))[1]
        assert compose(identity(simplex(1)), f) == f
        assert compose(f, identity(boundary(1))) == f

    def test_collapse_after_inclusion(self):
        inc = boundary_inclusion(1)
        collapse = enumerate_maps(simplex(1), simplex(0))[0]
        got = compose(collapse, inc)
        expect = enumerate_maps(boundary(1), simplex(0))[0]
        assert got == expect

    def test_vertex_through_edge_into_triangle(self):
        v0 = SimplicialMap(simplex(0), simplex(1), {"0": SimplexRef("0")})
        e01 = SimplicialMap(simplex(1), simplex(2),
                            {"0": SimplexRef("0"), "1": SimplexRef("1"),
                             "01": SimplexRef("01")})
        assert is_map(v0) and is_map(e01)
        got = compose(e01, v0)
        assert got.images["0"] == SimplexRef("0")

    def test_mismatch_raises(self):
        with pytest.raises(ValueError):
            compose(boundary_inclusion(1), boundary_inclusion(1))

    def test_associativity_exhaustive_small(self):
        objs = [simplex(0), boundary(1), simplex(1)]
        for a, b, c, d in itertools.product(objs, repeat=4):
            for f in enumerate_maps(a, b):
                for g in enumerate_maps(b, c):
                    for h in enumerate_maps(c, d):
                        assert compose(h, compose(g, f)) == \
                            compose(compose(h, g), f)


class TestMinimalSubcomplex:
    def test_top_cell_closure(self):
        sub, inc = minimal_subcomplex(simplex(2), ["012"])
        assert sub.size() == 7
        assert is_map(inc)

    def test_single_vertex(self):
        sub, _ = minimal_subcomplex(simplex(2), ["1"])
        assert sub.size() == 1

    def test_edge_closure_in_boundary(self):
        sub, inc = minimal_subcomplex(boundary(2), ["01"])
        assert sub.size() == 3
        assert validate(sub).ok

    def test_unknown_seed(self):
        with pytest.raises(KeyError):
            minimal_subcomplex(simplex(1), ["zz"])


class TestRelabel:
    def test_roundtrip(self):
        s = boundary(2)
        ren = {n: "x" + n for n in s.names()}
        out, iso = relabel(s, ren)
        assert validate(out).ok
        assert is_map(iso)
        assert out.size() == s.size()


class TestMapErrors:
    def test_bad_map_reported(self):
        f = SimplicialMap(simplex(1), simplex(1),
                          {"0": SimplexRef("0"), "1": SimplexRef("0"),
                           "01": SimplexRef("01")})
        assert map_errors(f)
