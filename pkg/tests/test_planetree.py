import random

import pytest
from hypothesis import given, strategies as st

from chebtrees.planetree import (BLACK, WHITE, BadRotation, ColorClash, NotATree, PlaneTree, TriPassport,
                                 Vertex, build_tree, canonical_code, canonical_coloring, enumerate_trees,
                                 from_drawing, identify, is_chain, is_star, mirror, passport, reference_names,
                                 reference_tree, same_tree, shape_code, swap_colors)
from oracles import (contour_canon, is_star_rotation, mirror_rotation, plane_tree_classes, random_tree_dict,
                     rotation_of, scramble)

trees_st = st.builds(lambda n, s: build_tree(random_tree_dict(n, random.Random(s))),
                     st.integers(1, 9), st.integers(0, 10**9))


def _oracle(t: PlaneTree, with_mirror=False) -> str:
    rot = rotation_of(t.to_dict())
    c = contour_canon(rot)
    return min(c, contour_canon(mirror_rotation(rot))) if with_mirror else c


# -- enumeration against brute force ----------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_matches_brute_force(n):
    trees = enumerate_trees(n)
    brute = {c for c in plane_tree_classes(n) if n <= 2 or not is_star_rotation(_rot_from_word(c))}
    assert len(trees) == len(brute)
    assert {_oracle(t) for t in trees} == brute


@pytest.mark.parametrize("n", range(1, 8))
def test_mirror_classes_match_brute_force(n):
    trees = enumerate_trees(n, mirror_classes=True)
    brute = {c for c in plane_tree_classes(n, mirror=True) if n <= 2 or not is_star_rotation(_rot_from_word(c))}
    assert len(trees) == len(brute)
    assert {_oracle(t, True) for t in trees} == brute


def _rot_from_word(word):
    from oracles import rotation_from_dyck
    return rotation_from_dyck(word)


def test_known_counts():
    assert [len(enumerate_trees(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 13, 33]
    assert len(enumerate_trees(6, mirror_classes=True)) == 11


def test_stars_on_request():
    assert any(is_star(t) for t in enumerate_trees(5, include_stars=True))
    assert not any(is_star(t) for t in enumerate_trees(5))
    assert len(enumerate_trees(5, include_stars=True)) == 6


def test_enumeration_rejects_zero():
    with pytest.raises(ValueError):
        enumerate_trees(0)


def test_enumerated_trees_are_canonically_coloured():
    for t in enumerate_trees(6):
        assert canonical_code(canonical_coloring(t)) == canonical_code(t)
        assert len(t.degrees(WHITE)) <= len(t.degrees(BLACK))


# -- canonical codes ----------------------------------------------------------------

@given(st.integers(1, 9), st.integers(0, 10**9))
def test_code_invariant_under_relabel_and_rotation(n, s):
    rng = random.Random(s)
    d = random_tree_dict(n, rng)
    assert canonical_code(build_tree(d)) == canonical_code(build_tree(scramble(d, rng)))


@given(st.integers(1, 8), st.integers(0, 10**9), st.integers(0, 10**9))
def test_code_agrees_with_oracle_on_isotopy(n, s1, s2):
    t1 = build_tree(random_tree_dict(n, random.Random(s1)))
    t2 = build_tree(random_tree_dict(n, random.Random(s2)))
    same_shape = _oracle(t1) == _oracle(t2)
    assert (shape_code(t1) == shape_code(t2)) == same_shape


@given(trees_st)
def test_mirror_is_an_involution(t):
    assert canonical_code(mirror(mirror(t))) == canonical_code(t)
    assert canonical_code(t).mirror_code == canonical_code(mirror(t)).code


@given(trees_st)
def test_json_round_trip(t):
    assert canonical_code(build_tree(t.to_json())) == canonical_code(t)


@given(trees_st)
def test_passport_sums(t):
    p = passport(t)
    assert sum(p.white) == sum(p.black) == t.n_edges
    assert len(p.white) + len(p.black) == t.n_edges + 1


@given(trees_st)
def test_swap_colors_swaps_passport(t):
    p, q = passport(t), passport(swap_colors(t))
    assert (p.white, p.black) == (q.black, q.white)


def test_mirror_distinguishes_chiral_trees():
    chiral = [t for t in enumerate_trees(6) if not same_tree(t, mirror(t))]
    assert chiral, "some six-edge tree must differ from its mirror"
    for t in chiral:
        assert same_tree(t, mirror(t), up_to_mirror=True)


def test_same_tree_with_swap():
    t = reference_tree("n5/T3")
    assert same_tree(t, swap_colors(t), up_to_swap=True)
    assert not same_tree(t, swap_colors(t)) or passport(t).white == passport(t).black


def test_chain_and_star():
    chain = build_tree([(0, WHITE, (1,)), (1, BLACK, (0, 2)), (2, WHITE, (1,))])
    assert is_chain(chain) and is_star(chain)
    star = build_tree([(0, WHITE, (1, 2, 3)), (1, BLACK, (0,)), (2, BLACK, (0,)), (3, BLACK, (0,))])
    assert is_star(star) and not is_chain(star)


# -- validation ---------------------------------------------------------------------------

def test_color_clash():
    with pytest.raises(ColorClash):
        build_tree([(0, WHITE, (1,)), (1, WHITE, (0,))])


def test_asymmetric_edge():
    with pytest.raises(BadRotation):
        build_tree([(0, WHITE, (1,)), (1, BLACK, ())])


def test_cycle_is_not_a_tree():
    with pytest.raises(NotATree):
        build_tree([(0, WHITE, (1, 3)), (1, BLACK, (0, 2)), (2, WHITE, (1, 3)), (3, BLACK, (2, 0))])


def test_disconnected():
    with pytest.raises(NotATree):
        PlaneTree((Vertex(0, WHITE, (1,)), Vertex(1, BLACK, (0,)), Vertex(2, WHITE, (3,)),
                   Vertex(3, BLACK, (2,)), Vertex(4, WHITE, ())))


def test_n_edges_mismatch():
    d = random_tree_dict(3, random.Random(1))
    d["n_edges"] = 4
    with pytest.raises(NotATree):
        build_tree(d)


# -- passports and reference trees -------------------------------------------------------------

def test_figure_passport():
    assert str(passport(reference_tree("figure_passport"))) == "<3,2|2,1,1,1>"


def test_tri_passport_parse_and_trim():
    P = TriPassport.parse("<2,2|2|2>", 5)
    assert P.trimmed and P.full().groups == ((2, 2, 1), (2, 1, 1, 1), (2, 1, 1, 1))
    assert P.point_count() == 11 and P.is_valid()
    assert not TriPassport.parse("<4|2|2>", 7).is_valid()
    assert TriPassport.parse("<4,2|2|2>", 7).is_valid()


@pytest.mark.parametrize("n, count", [(5, 5), (6, 13)])
def test_reference_trees_cover_enumeration(n, count):
    names = reference_names("n%d/" % n)
    assert len(names) == count
    for t in enumerate_trees(n):
        assert identify(t, names) is not None


def test_from_drawing_reads_rotation():
    pts = [(0, 0), (1, 0), (0, 1), (-1, 0), (2, 0), (1, 1)]
    t = from_drawing(pts, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    assert t.n_edges == 5
    assert t.vertex(0).neighbors == (1, 2, 3)
    assert t.vertex(1).neighbors == (4, 5, 0)
    assert len(t.degrees(WHITE)) <= len(t.degrees(BLACK))


def test_colours_alternate_in_enumeration():
    for t in enumerate_trees(5):
        for v in t.vertices:
            assert all(t.vertex(u).color != v.color for u in v.neighbors)
            assert v.color in (WHITE, BLACK)
