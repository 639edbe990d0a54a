import pytest

from rightangled.census import (BudgetExceeded, compact_census, growth_graph,
                                ideal_census, verify_provenance)
from rightangled.core import BadParameter, andreev_check, decode_code
from rightangled.moves import antiprism, lobell


@pytest.fixture(scope="module")
def ideal13():
    return ideal_census(13)


@pytest.fixture(scope="module")
def compact28():
    return compact_census(28)


class TestIdealCensus:
    def test_counts_to_13(self, ideal13):
        assert ideal13.counts() == {6: 1, 8: 1, 9: 1, 10: 2, 11: 2,
                                    12: 9, 13: 11}

    def test_members_valid(self, ideal13):
        for code, m in ideal13.members.items():
            poly = decode_code(code)
            assert poly.V == m.ver
            assert poly.kind == "ideal"
            assert andreev_check(poly).valid

    def test_provenance_replays(self, ideal13):
        assert verify_provenance(ideal13)

    def test_deterministic_across_jobs(self):
        a = ideal_census(11, jobs=1)
        b = ideal_census(11, jobs=4)
        assert sorted(a.members) == sorted(b.members)

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            ideal_census(5)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            ideal_census(13, max_nodes=10)


class TestCompactCensus:
    def test_counts_to_28(self, compact28):
        assert compact28.counts() == {20: 1, 24: 1, 26: 1, 28: 3}

    def test_members_valid(self, compact28):
        for code, m in compact28.members.items():
            poly = decode_code(code)
            assert poly.V == m.ver
            assert poly.kind == "compact"
            assert andreev_check(poly).valid

    def test_provenance_replays(self, compact28):
        assert verify_provenance(compact28)

    def test_lobell_volumes_attached(self, compact28):
        from rightangled.volumes import lobell_volume
        by_n = {m.ver: m for m in compact28.members.values()
                if m.volume is not None}
        assert by_n[20].volume == pytest.approx(lobell_volume(5).value)
        assert by_n[24].volume == pytest.approx(lobell_volume(6).value)
        assert by_n[28].volume == pytest.approx(lobell_volume(7).value)

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            compact_census(19)


class TestGrowthGraph:
    def test_a4_generation_sizes(self):
        g = growth_graph(antiprism(4), {"twist"}, 5)
        assert [len(x) for x in g.generations] == [1, 1, 1, 2, 8, 11]

    def test_edges_connect_generations(self):
        g = growth_graph(antiprism(4), {"twist"}, 3)
        codes = set().union(*map(set, g.generations))
        for a, b in g.edges:
            assert a in codes and b in codes
            assert decode_code(b).V == decode_code(a).V + 1

    def test_lobell_addition_growth(self):
        g = growth_graph(lobell(6), {"addition"}, 1)
        assert len(g.generations) == 2
        assert len(g.generations[1]) >= 1
        for code in g.generations[1]:
            child = decode_code(code)
            assert child.V == 26
            assert andreev_check(child).valid

    def test_depth_zero(self):
        g = growth_graph(antiprism(3), {"twist"}, 0)
        assert len(g.generations) == 1 and not g.edges
