import random

import pytest

from cayleysum.cayley import Embedding, TargetSets, all_minus_zero_targets, full_targets, verify_rainbow
from cayleysum.groups import enumerate_abelian_groups, parse_group_spec
from cayleysum.solver import (
    InconclusiveError,
    SearchConfig,
    SolverError,
    check_core_condition,
    core_condition_search,
    count_embeddings,
    enumerate_embeddings,
    naive_count_embeddings,
    solve_exact,
    solve_with_core,
    translation_symmetry_permitted,
)
from cayleysum.trees import enumerate_trees, find_core, path_tree, star_tree


def test_examples(p4, z4, z22, z2):
    w, _ = solve_exact(p4, z4, full_targets(z4))
    assert w is not None
    assert verify_rainbow(p4, w, full_targets(z4)).verdict
    w, _ = solve_exact(p4, z22, all_minus_zero_targets(z22))
    assert w is None  # Maamoun-Meyniel
    edge = path_tree(2)
    w, _ = solve_exact(edge, z2, full_targets(z2))
    assert sorted(w.assignment.values()) == [(0,), (1,)]


def test_count_examples(z2, z22):
    assert count_embeddings(path_tree(2), z2, full_targets(z2)) == 2
    assert count_embeddings(path_tree(4), z22, all_minus_zero_targets(z22)) == 0
    assert count_embeddings(star_tree(4), z22, all_minus_zero_targets(z22)) > 0


def test_completeness_vs_naive_oracle():
    for n in range(1, 8):
        for spec in enumerate_abelian_groups(n):
            for t in enumerate_trees(n, max(n - 1, 1)):
                tg = full_targets(spec)
                assert count_embeddings(t, spec, tg) == naive_count_embeddings(t, spec, tg)


def test_completeness_vs_naive_oracle_n8():
    for spec in enumerate_abelian_groups(8):
        for t in enumerate_trees(8, 7):
            tg = full_targets(spec)
            assert count_embeddings(t, spec, tg) == naive_count_embeddings(t, spec, tg)


def test_completeness_vs_oracle_random_targets():
    # arbitrary vertex/colour target subsets, tree possibly smaller than G
    import random
    from cayleysum.trees import random_tree

    rng = random.Random(4242)
    for _ in range(150):
        n = rng.randrange(2, 7)
        spec = rng.choice(enumerate_abelian_groups(rng.randrange(max(2, n), 9)))
        t = random_tree(n, rng)
        els = spec.elements()
        vt = rng.sample(els, rng.randrange(n, len(els) + 1))
        ct = rng.sample(els, rng.randrange(max(1, n - 1), len(els) + 1))
        targets = TargetSets.make(spec, vt, ct)
        assert count_embeddings(t, spec, targets) == naive_count_embeddings(t, spec, targets)


def test_symmetry_soundness():
    for n in range(2, 8):
        for spec in enumerate_abelian_groups(n):
            tg = full_targets(spec)
            for t in enumerate_trees(n, max(n - 1, 1)):
                w1, _ = solve_exact(t, spec, tg)
                w2, _ = solve_exact(t, spec, tg, cfg=SearchConfig(symmetry_reduction=True))
                assert (w1 is None) == (w2 is None)
                c_plain = count_embeddings(t, spec, tg)
                c_sym = count_embeddings(
                    t, spec, tg, SearchConfig(symmetry_reduction=True, mode="count")
                )
                assert c_plain == c_sym


def test_symmetry_permission():
    z8 = parse_group_spec("Z8")
    full = full_targets(z8)
    assert translation_symmetry_permitted(z8, full)
    # G minus one colour is not 2G-coset-closed for a cyclic group of even order
    partial = TargetSets.make(z8, z8.elements(), [e for e in z8.elements() if e != (0,)])
    assert not translation_symmetry_permitted(z8, partial)
    with pytest.raises(SolverError):
        solve_exact(
            path_tree(8), z8, partial, cfg=SearchConfig(symmetry_reduction=True)
        )
    # any c_target works over Z_2^k (colour shift 2g = 0)
    z23 = parse_group_spec("Z2^3")
    amz = all_minus_zero_targets(z23)
    assert translation_symmetry_permitted(z23, amz)


def test_node_limit_inconclusive(z4, p4):
    z8 = parse_group_spec("Z8")
    with pytest.raises(InconclusiveError):
        solve_exact(path_tree(8), z8, full_targets(z8), cfg=SearchConfig(node_limit=3))
    # the limit only postpones the answer, it never changes it
    w, _ = solve_exact(path_tree(8), z8, full_targets(z8))
    assert w is not None


def test_partial_embedding_extension(z4, p4):
    partial = Embedding(z4, {0: (2,), 1: (0,)})
    w, _ = solve_exact(p4, z4, full_targets(z4), partial=partial)
    assert w is not None
    assert w.assignment[0] == (2,) and w.assignment[1] == (0,)
    bad = Embedding(z4, {0: (0,), 2: (2,)})  # edge 1-2 unconstrained; 0-1 fine
    w2, _ = solve_exact(p4, z4, full_targets(z4), partial=bad)
    # complete search decides either way; witness must extend the partial
    if w2 is not None:
        assert w2.assignment[0] == (0,) and w2.assignment[2] == (2,)


def test_enumerate_mode(z4, p4):
    sols = enumerate_embeddings(p4, z4, full_targets(z4))
    assert len(sols) == count_embeddings(p4, z4, full_targets(z4))
    assert all(verify_rainbow(p4, s, full_targets(z4)).verdict for s in sols)


def test_most_constrained_order_agrees():
    rng = random.Random(59)
    for n in (5, 6, 7):
        for spec in enumerate_abelian_groups(n):
            for t in enumerate_trees(n, n - 1):
                tg = full_targets(spec)
                w1, _ = solve_exact(t, spec, tg)
                w2, _ = solve_exact(t, spec, tg, cfg=SearchConfig(vertex_order="most-constrained"))
                assert (w1 is None) == (w2 is None)


# -- core condition search ---------------------------------------------------


def test_core_condition_p4_example(p4, z4):
    # core = all 4 vertices, c_target = {0,1,2}: phi=(2,0,1,3) qualifies
    targets = TargetSets.make(z4, z4.elements(), [(0,), (1,), (2,)])
    phi = core_condition_search(p4, range(4), z4, targets)
    assert phi is not None
    assert check_core_condition(p4, range(4), z4, targets, phi)
    known = Embedding(z4, {0: (2,), 1: (0,), 2: (1,), 3: (3,)})
    assert check_core_condition(p4, range(4), z4, targets, known)


def test_core_condition_none_over_z22(p4, z22):
    targets = all_minus_zero_targets(z22)
    assert core_condition_search(p4, range(4), z22, targets) is None


def test_core_condition_budget(z8):
    targets = full_targets(z8)
    with pytest.raises(InconclusiveError):
        core_condition_search(path_tree(8), range(8), z8, targets, node_limit=2)


def test_solve_with_core(p4, z4):
    targets = TargetSets.make(z4, z4.elements(), [(0,), (1,), (2,)])
    phi = core_condition_search(p4, range(4), z4, targets)
    w, _ = solve_with_core(p4, z4, targets, phi)
    assert w is not None and w.assignment == phi.assignment  # already total
    with pytest.raises(SolverError):
        bad = Embedding(z4, {0: (0,), 1: (1,), 2: (2,), 3: (3,)})
        solve_with_core(p4, z4, targets, bad)


def test_theorem24_forward_direction_n8():
    # whenever a full rainbow embedding exists, a core witness exists for
    # c_target = G minus the witness's unused colour (core = whole tree here)
    from cayleysum.cayley import edge_colors

    for spec in enumerate_abelian_groups(8):
        for t in enumerate_trees(8, 4):
            w, _ = solve_exact(t, spec, full_targets(spec))
            if w is None:
                continue
            used = set(edge_colors(t, w))
            unused = sorted(set(spec.elements()) - used)
            assert len(unused) == 1
            targets = TargetSets.make(
                spec, spec.elements(), [e for e in spec.elements() if e != unused[0]]
            )
            core = find_core(t)
            phi = core_condition_search(t, sorted(core.vertices), spec, targets)
            assert phi is not None
