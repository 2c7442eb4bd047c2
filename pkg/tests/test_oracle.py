import numpy as np
import pytest

from nijlie import catalog as cat
from nijlie import oracle as O
from nijlie.cohomology import compute_H2
from nijlie.config import EnumerationBudget
from nijlie.errors import BudgetExceeded
from nijlie.exactmath import GF, QQ
from nijlie.liecore import LieAlgebra
from nijlie.nijenhuis import check_nijenhuis


def test_fixtures_reproduce():
    fresh = O.generate_fixtures()
    frozen = O.load_fixtures()
    assert fresh == frozen


def test_nijenhuis_small_counts():
    assert len(O.enumerate_nijenhuis(LieAlgebra.abelian(GF(2), 1))) == 2
    assert len(O.enumerate_nijenhuis(LieAlgebra.abelian(GF(2), 2))) == 16
    ops = O.enumerate_nijenhuis(cat.aff1(GF(2)))
    assert len(ops) == O.load_fixtures()["nijenhuis_counts"]["aff1_F2"]
    assert len({N.data for N in ops}) == len(ops)


def test_oracle_mask_agrees_with_main_check():
    L = cat.heisenberg(GF(2))
    ops = {N.data for N in O.enumerate_nijenhuis(L)}
    C = O.from_main_algebra(L)
    for A in O.all_arrays(2, (3, 3))[::7]:
        M = O.to_matrix(GF(2), A)
        assert (M.data in ops) == check_nijenhuis(L, M).ok


def test_budget_and_infinite_field():
    with pytest.raises(BudgetExceeded):
        O.enumerate_nijenhuis(cat.sl2(GF(3)), EnumerationBudget(100))
    with pytest.raises(BudgetExceeded):
        O.enumerate_nijenhuis(cat.aff1(QQ))


def test_lie_table_counts():
    assert [len(O.lie_tables(2, n)) for n in (1, 2)] == [1, 4]


def test_zero_kernel_single_class():
    Cg = np.zeros((1, 1, 1), dtype=np.int64)
    ctx = O.Context(2, Cg, np.array([[1]]), np.zeros((0, 0, 0), dtype=np.int64), np.zeros((0, 0), dtype=np.int64))
    cs = O.enumerate_cocycles(ctx)
    assert len(cs) == 1 and len(O.class_partition(ctx, cs)) == 1
    r = O.bijection_check(ctx)
    assert r["ok"] and r["extension_classes"] == 1


def test_abelian_class_counts_are_powers_of_p():
    seen = 0
    for ctx in O.abelian_contexts(2, 1, 1):
        _, _, R = O.to_main_context(ctx)
        r = O.bijection_check(ctx, h2_dim=compute_H2(R).dim)
        assert r["ok"] and r["h2_match"]
        assert sum(r["class_sizes"]) == r["cocycles"]
        seen += 1
    assert seen


def test_nonabelian_micro_partition():
    ctx = next(c for c in O.contexts(2, 1, 2) if c.Ch.any())
    r = O.bijection_check(ctx)
    assert r["ok"] and sum(r["class_sizes"]) == r["cocycles"]


def test_crosscheck_identity_instance():
    ctx = next(O.abelian_contexts(2, 1, 1))
    c = O.enumerate_cocycles(ctx)[0]
    for kind in ("aut", "der"):
        r = O.exhaustive_inducibility_crosscheck(ctx, c, kind)
        assert r["disagreements"] == 0 and r["inducible"] >= 1
