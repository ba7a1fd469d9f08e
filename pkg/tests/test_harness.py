import pytest

from cayleysum.harness import (
    HarnessError,
    check_harmonious,
    default_targets,
    experiment_cross_check,
    find_harmonious,
    harmonious_from_rainbow,
    run_instance,
    run_report,
    summarize,
)
from cayleysum.trees import enumerate_trees, path_tree, star_tree


def test_default_color_policy(z8, z23):
    assert len(default_targets(z8).c_target) == 8
    assert len(default_targets(z23).c_target) == 7  # G minus the identity
    assert len(default_targets(z23, "all").c_target) == 8


def test_run_instance(p4, z22, z4):
    row = run_instance(p4, z22)
    assert row.obstructed and row.solver_result == "none" and not row.hard_violation
    row = run_instance(p4, z4)
    assert not row.obstructed and row.solver_result == "found"


def test_small_grid_shape():
    rows = experiment_cross_check(4, 3)
    # n=4: 2 trees x 2 groups = 4 rows; plus n=1..3 give one row each
    assert len(rows) == 7
    assert len([r for r in rows if r.n == 4]) == 4
    summary = summarize(rows)
    assert summary["hard_violations"] == 0


def test_run_report_deterministic_and_dupe_guard():
    rows = experiment_cross_check(4, 3)
    csv_text, summary = run_report(rows)
    lines = csv_text.strip().splitlines()
    assert lines[0].startswith("n,group,tree_id,delta,o1")
    assert len(lines) == len(rows) + 1
    csv_text2, _ = run_report(list(reversed(rows)))
    assert csv_text.splitlines()[1:] == csv_text2.splitlines()[1:]
    with pytest.raises(HarnessError):
        run_report(rows + [rows[0]])
    empty_csv, _ = run_report([])
    assert empty_csv.strip() == ",".join(
        ["n", "group", "tree_id", "delta", "o1", "o2", "o3", "o4", "solver_result", "count", "nodes", "ms"]
    )


def test_check_harmonious():
    p5 = path_tree(5)
    assert check_harmonious(p5, {0: 1, 1: 2, 2: 0, 3: 1, 4: 3})
    # two labels each doubled
    assert not check_harmonious(p5, {0: 1, 1: 2, 2: 1, 3: 2, 4: 3})
    # repeated edge sum
    assert not check_harmonious(p5, {0: 0, 1: 1, 2: 2, 3: 3, 4: 0})


def test_harmonious_from_rainbow_p5():
    # P4 -> (2,0,1,3) over Z4 uses colours {2,1,0}; unused colour 3
    p5 = path_tree(5)
    f = {0: 2, 1: 0, 2: 1, 3: 3}
    lab = harmonious_from_rainbow(p5, 4, f)
    assert lab.labels[4] == (3 - 3) % 4 == 0
    assert lab.repeated_label == 0
    assert check_harmonious(p5, lab.labels)


def test_harmonious_rejects_non_rainbow():
    p5 = path_tree(5)
    with pytest.raises(HarnessError):
        harmonious_from_rainbow(p5, 4, {0: 0, 1: 1, 2: 2, 3: 3})  # colours repeat


def test_find_harmonious_small():
    assert find_harmonious(path_tree(5)) is not None
    assert find_harmonious(star_tree(4)) is not None
    assert find_harmonious(path_tree(2)) is not None  # single edge over Z_1


def test_find_harmonious_all_small_trees():
    for n_plus in range(2, 8):
        for t in enumerate_trees(n_plus, max(n_plus - 1, 1)):
            lab = find_harmonious(t)
            assert lab is not None
            assert check_harmonious(t, lab.labels)
