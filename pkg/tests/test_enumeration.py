import os

import pytest

from actopos import (
    CapExceeded,
    canonical_form,
    enumerate_monoids,
    enumerate_msets,
    validate_monoid,
    validate_right_mset,
)
from actopos.enumeration import (
    labeled_actions,
    labeled_monoid_tables,
    mset_canonical_key,
)

from monoids import C2, E2, END2, RZ3
from oracles import (
    full_relabel_key_action,
    full_relabel_key_table,
    naive_monoid_keys,
    naive_mset_keys,
)

# golden counts, frozen from the naive filter-and-dedup oracle
MONOID_COUNTS = {1: 1, 2: 2, 3: 7}
# regression pin; not oracle-checkable at this order
MONOID_COUNT_4 = 35


class TestMonoidEnumeration:
    @pytest.mark.parametrize("n,count", sorted(MONOID_COUNTS.items()))
    def test_golden_counts(self, n, count):
        assert len(enumerate_monoids(n)) == count

    def test_order_four_regression(self):
        assert len(enumerate_monoids(4)) == MONOID_COUNT_4

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_naive_oracle_exactly(self, n):
        ours = {full_relabel_key_table(M.table) for M in enumerate_monoids(n)}
        assert ours == naive_monoid_keys(n)

    def test_all_emitted_validate(self):
        for n in (1, 2, 3, 4):
            for M in enumerate_monoids(n):
                validate_monoid(M.table, M.identity)

    def test_stream_sorted_by_canonical_form(self):
        for n in (2, 3, 4):
            keys = [
                canonical_form(M.table, M.identity).table_bytes
                for M in enumerate_monoids(n)
            ]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_monoids(20)


class TestMSetEnumeration:
    def test_size_zero_and_one(self):
        for M in (C2, RZ3):
            assert len(enumerate_msets(M, 0)) == 1
            assert len(enumerate_msets(M, 1)) == 1

    def test_c2_size_two(self):
        # the trivial pair and the regular orbit
        assert len(enumerate_msets(C2, 2)) == 2

    def test_matches_naive_oracle_exactly(self):
        for M in [m for n in (1, 2, 3) for m in enumerate_monoids(n)]:
            for k in (0, 1, 2, 3):
                ours = {
                    full_relabel_key_action(X.action) for X in enumerate_msets(M, k)
                }
                assert ours == naive_mset_keys(M, k), (M.table, k)

    def test_all_emitted_validate(self):
        for k in range(5):
            for X in enumerate_msets(END2, k):
                validate_right_mset(END2, X.action)

    def test_stream_sorted(self):
        for k in (2, 3, 4):
            keys = [mset_canonical_key(X.action) for X in enumerate_msets(RZ3, k)]
            assert keys == sorted(keys)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_msets(C2, 9)

    def test_labeled_actions_include_regular(self):
        assert RZ3.table in set(labeled_actions(RZ3, 3))


class TestCanonicalForm:
    def test_idempotent(self):
        cf = canonical_form(END2.table, 0)
        rebuilt = tuple(
            tuple(cf.table_bytes[a * 4 + b] for b in range(4)) for a in range(4)
        )
        assert canonical_form(rebuilt, 0).table_bytes == cf.table_bytes

    def test_permuted_copies_share_form(self):
        # relabel END2 by swapping the two constants (an automorphism-like
        # relabeling away from identity)
        perm = [0, 1, 3, 2]
        table = tuple(
            tuple(perm[END2.table[perm.index(a)][perm.index(b)]] for b in range(4))
            for a in range(4)
        )
        assert canonical_form(table, 0).table_bytes == canonical_form(END2.table, 0).table_bytes

    def test_distinct_order_two_monoids_distinct_forms(self):
        forms = {canonical_form(M.table, M.identity).table_bytes for M in enumerate_monoids(2)}
        assert len(forms) == 2

    def test_identity_lands_at_zero(self):
        # E2 presented with its identity at index 1 canonicalises to index 0
        table = ((0, 0), (0, 1))
        cf = canonical_form(table, 1)
        n = 2
        rebuilt = tuple(tuple(cf.table_bytes[a * n + b] for b in range(n)) for a in range(n))
        validate_monoid(rebuilt, 0)

    def test_automorphism_count_positive(self):
        assert canonical_form(C2.table, 0).automorphisms == 1
        assert canonical_form(END2.table, 0).automorphisms >= 1


class TestCache:
    def test_cache_roundtrip(self, tmp_path, monkeypatch):
        from actopos import enumeration

        monkeypatch.setenv(enumeration.CACHE_ENV, str(tmp_path))
        enumeration._enumerate_monoids_cached.cache_clear()
        first = enumerate_monoids(3)
        assert (tmp_path / "monoids_3.bin").is_file()
        enumeration._enumerate_monoids_cached.cache_clear()
        second = enumerate_monoids(3)
        assert [M.table for M in first] == [M.table for M in second]
        enumeration._enumerate_monoids_cached.cache_clear()
        monkeypatch.delenv(enumeration.CACHE_ENV)
