import random

import pytest

from cayleysum.trees import (
    Tree,
    TreeError,
    canonical_id,
    centroids,
    delete_vertex,
    enumerate_trees,
    even_degree_vertices,
    find_approximation,
    find_core,
    from_prufer,
    has_perfect_matching_on,
    is_path,
    layered_matching_decomposition,
    leaves_or_bare_paths,
    parse_tree,
    path_tree,
    asymptotic_t,
    random_tree,
    split_small_components,
    star_tree,
    to_prufer,
    tree_from_ahu,
)

FREE_TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def test_parse_tree():
    t = parse_tree("4\n0 1\n1 2\n2 3")
    assert t.n == 4 and is_path(t)
    with pytest.raises(TreeError):
        parse_tree("3\n0 1\n0 1")  # duplicate edge
    with pytest.raises(TreeError):
        parse_tree("4\n0 1\n2 3\n1 0")  # duplicate + disconnected
    with pytest.raises(TreeError):
        parse_tree("3\n0 1\n0 5")  # out of range
    with pytest.raises(TreeError):
        parse_tree("4\n0 1\n1 2\n2 0")  # cycle, wrong edge count aside


def test_prufer_roundtrip():
    star = from_prufer([1, 1])
    assert star.degrees == (1, 3, 1, 1)
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randrange(3, 40)
        seq = [rng.randrange(n) for _ in range(n - 2)]
        t = from_prufer(seq)
        assert to_prufer(t) == seq


def test_enumeration_counts():
    for n, want in FREE_TREE_COUNTS.items():
        assert len(enumerate_trees(n, max(n - 1, 1))) == want
    assert len(enumerate_trees(4, 3)) == 2  # path + star
    assert len(enumerate_trees(7, 6)) == 11
    assert len(enumerate_trees(9, 8)) == 47
    with pytest.raises(TreeError):
        enumerate_trees(13, 4)


def test_enumeration_respects_degree_cap():
    trees = enumerate_trees(7, 3)
    assert all(t.max_degree <= 3 for t in trees)
    assert len(trees) < 11


def test_enumeration_vs_full_prufer_oracle():
    # brute-force dedup over EVERY Prüfer sequence must find the same classes
    from itertools import product as iproduct

    for n in range(3, 8):
        full = {canonical_id(from_prufer(list(seq))) for seq in iproduct(range(n), repeat=n - 2)}
        fast = {canonical_id(t) for t in enumerate_trees(n, n - 1)}
        assert fast == full


def test_enumeration_representatives_are_canonical():
    for t in enumerate_trees(8, 7):
        code = canonical_id(t)
        assert tree_from_ahu(code).edges == t.edges


def test_canonical_id_is_isomorphism_invariant():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randrange(3, 14)
        t = random_tree(n, rng)
        perm = list(range(n))
        rng.shuffle(perm)
        t2 = Tree.from_edges(n, [(perm[u], perm[v]) for u, v in t.edges])
        assert canonical_id(t) == canonical_id(t2)


def test_centroids():
    assert centroids(path_tree(5)) == [2]
    assert len(centroids(path_tree(6))) == 2
    assert centroids(star_tree(9)) == [0]


def test_find_core_star():
    core = find_core(star_tree(6))
    assert core.vertices == frozenset(range(6))
    assert core.exhausted_degrees == frozenset({1, 5})


def test_find_core_path100():
    t = path_tree(100)
    core = find_core(t)
    assert len(core.vertices) == 8  # 2 leaves + 6 of the 98 degree-2 vertices
    core.validate(t)
    core24 = find_core(t, exact_size=24)
    inside2 = sum(1 for v in core24.vertices if t.degrees[v] == 2)
    assert len(core24.vertices) == 24 and inside2 == 22
    core24.validate(t)


def test_find_core_size_bound_random():
    rng = random.Random(5)
    for _ in range(300):
        t = random_tree(rng.randrange(2, 200), rng)
        core = find_core(t)
        core.validate(t)
        assert len(core.vertices) <= 12 * t.max_degree


def test_leaves_or_bare_paths():
    kind, pieces = leaves_or_bare_paths(path_tree(20), 3)
    assert kind == "paths" and len(pieces) >= 20 / 30
    assert all(len(p) == 4 for p in pieces)
    kind, matching = leaves_or_bare_paths(star_tree(10), 3)
    assert kind == "matching" and len(matching) >= 1
    # spider with 3 legs of length 5: bare paths of length 4 exist
    edges, nid = [], 1
    for _ in range(3):
        prev = 0
        for _ in range(5):
            edges.append((prev, nid))
            prev = nid
            nid += 1
    spider = Tree.from_edges(16, edges)
    kind, pieces = leaves_or_bare_paths(spider, 4)
    assert kind == "paths"
    flat = [v for p in pieces for v in p]
    assert len(flat) == len(set(flat))  # vertex-disjoint
    for p in pieces:
        assert all(spider.degrees[v] == 2 for v in p[1:-1])


def test_asymptotic_t_is_impractical():
    assert asymptotic_t(100) > 100  # the asymptotic parameter dwarfs desk-scale n


def test_leaves_or_bare_paths_bounds_random():
    # one branch is always achievable at its posted size bound
    rng = random.Random(83)
    for _ in range(400):
        n = rng.randrange(3, 150)
        t = random_tree(n, rng)
        tt = rng.randrange(1, 8)
        kind, structure = leaves_or_bare_paths(t, tt)
        if kind == "paths":
            assert len(structure) >= n / (10 * tt)
            flat = [v for p in structure for v in p]
            assert len(flat) == len(set(flat))
            for p in structure:
                assert len(p) == tt + 1
                assert all(t.degrees[v] == 2 for v in p[1:-1])
        else:
            assert len(structure) >= n / (10 * t.max_degree * tt)
            touched = [v for e in structure for v in e]
            assert len(touched) == len(set(touched))
            for a, b in structure:
                assert 1 in (t.degrees[a], t.degrees[b])


def test_find_core_exact_size_random():
    # exact 12*Delta cores whenever Delta <= sqrt(n/12)
    rng = random.Random(97)
    done = 0
    for _ in range(200):
        t = random_tree(rng.randrange(50, 400), rng)
        delta = t.max_degree
        if delta * delta * 12 > t.n:
            continue
        core = find_core(t, exact_size=12 * delta)
        core.validate(t)
        assert len(core.vertices) == 12 * delta
        done += 1
    assert done >= 20


def test_find_approximation_path():
    t = path_tree(60)
    core = find_core(t)
    appr = find_approximation(t, core, 3)
    assert appr.kind == "path" and len(appr.removed) >= 2
    assert core.vertices <= appr.kept_vertices
    appr.check_ratio_identities()
    # exact integer identities: p=(t-1)q, r=p+q
    assert appr.removed_vertex_count() == 2 * len(appr.u1)
    assert appr.removed_edge_count() == appr.removed_vertex_count() + len(appr.u1)


def test_find_approximation_caterpillar():
    edges = [(i, i + 1) for i in range(9)]
    nid = 10
    for s in range(10):
        for _ in range(2):
            edges.append((s, nid))
            nid += 1
    cat = Tree.from_edges(30, edges)
    appr = find_approximation(cat, find_core(cat), 3)
    assert appr.kind == "matching"
    assert len(appr.removed) % 2 == 0 and len(appr.removed) >= 2
    assert appr.removed_edge_count() == appr.removed_vertex_count()  # r = p
    assert appr.removed_vertex_count() == 2 * len(appr.u1)  # p = 2q


def test_find_approximation_whole_core_errors():
    t = star_tree(5)
    with pytest.raises(TreeError):
        find_approximation(t, find_core(t), 3)


def test_find_approximation_preserves_degree_reserve():
    rng = random.Random(17)
    done = 0
    for _ in range(200):
        t = random_tree(rng.randrange(40, 120), rng)
        core = find_core(t)
        try:
            appr = find_approximation(t, core, rng.choice([2, 3, 4]))
        except TreeError:
            continue
        done += 1
        for d in set(t.degrees) - set(core.exhausted_degrees):
            left = sum(
                1
                for v in appr.kept_vertices
                if t.degrees[v] == d and v not in core.vertices
            )
            assert left >= 6
        appr.check_ratio_identities()
    assert done > 50


def test_split_small_components_examples():
    I = split_small_components(path_tree(100), 10)
    assert len(I) <= 30
    I = split_small_components(star_tree(100), 10)
    assert len(I) <= 30
    with pytest.raises(TreeError):
        split_small_components(path_tree(20), 3)  # m > n/10


def _components_after_removal(t, removed):
    alive = set(range(t.n)) - set(removed)
    seen, comps = set(), []
    for v in sorted(alive):
        if v in seen:
            continue
        comp, stack = [v], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in t.adjacency[u]:
                if w in alive and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def test_split_small_components_random():
    rng = random.Random(23)
    for _ in range(300):
        n = rng.randrange(20, 400)
        t = random_tree(n, rng)
        m = rng.randrange(1, n // 10 + 1)
        I = split_small_components(t, m)
        assert len(I) <= 3 * n / m
        assert all(len(c) <= m for c in _components_after_removal(t, I))


def test_layered_matching_decomposition():
    # perfect matching forest: 2 nonempty vertex layers, 1 matching layer
    dec = layered_matching_decomposition(range(6), [(0, 1), (2, 3), (4, 5)], 2)
    nonempty = [l for l in dec.vertex_layers if l]
    assert len(nonempty) == 2
    assert sum(1 for m in dec.matchings if m) == 1
    # single path of length 3: <= 4 layers, matchings reassemble E
    dec = layered_matching_decomposition(range(4), [(0, 1), (1, 2), (2, 3)], 4)
    assert len(dec.vertex_layers) <= 4
    dec.validate(range(4), [(0, 1), (1, 2), (2, 3)])
    # empty forest
    dec = layered_matching_decomposition(range(5), [], 3)
    assert dec.vertex_layers == (frozenset(range(5)),)
    with pytest.raises(TreeError):
        layered_matching_decomposition(range(4), [(0, 1), (1, 2), (2, 3)], 2)


def test_layered_matching_with_parts():
    verts = range(6)
    edges = [(0, 1), (1, 2), (3, 4), (4, 5)]
    parts = [{0, 3}, {1, 4}, {2, 5}]
    dec = layered_matching_decomposition(verts, edges, 3, parts=parts)
    dec.validate(verts, edges)
    assert len(dec.vertex_layers) <= 3 * 3 + 3
    for layer in dec.vertex_layers:
        assert any(layer <= set(p) for p in parts)


def test_layered_matching_random():
    rng = random.Random(31)
    for _ in range(300):
        n = rng.randrange(20, 200)
        t = random_tree(n, rng)
        m = rng.randrange(2, n // 10 + 1)
        I = split_small_components(t, m)
        verts = sorted(set(range(n)) - I)
        edges = [e for e in t.edges if e[0] not in I and e[1] not in I]
        dec = layered_matching_decomposition(verts, edges, m)
        dec.validate(verts, edges)


def test_small_helpers(p4):
    assert even_degree_vertices(p4) == {1, 2}
    assert is_path(p4)
    assert not is_path(star_tree(4))
    two_edges = Tree.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert has_perfect_matching_on(two_edges, [0, 1, 2, 3])
    assert not has_perfect_matching_on(star_tree(4), [0, 1, 2, 3])
    assert not has_perfect_matching_on(p4, [0, 1, 2])  # odd


def test_delete_vertex():
    t = path_tree(5)
    reduced, remap = delete_vertex(t, 4)
    assert reduced.n == 4 and is_path(reduced)
    assert remap == {0: 0, 1: 1, 2: 2, 3: 3}
    with pytest.raises(TreeError):
        delete_vertex(t, 2)  # not a leaf
