import json

import pytest

from arrkit.reproduce import d5_table_ideals
from arrkit.roots import RootSystem, fork_swap, ideal_from_generators
from arrkit.scan import ScanRecord, flagged_generators, scan


@pytest.fixture(scope="module")
def d5_records():
    return list(scan(5))


def test_d4_flags_only_the_e1_plus_e3_ideal():
    assert flagged_generators(4) == [["e1+e3"]]


def test_d4_e1_plus_e2_ideal_is_not_flagged():
    recs = {tuple(r.generators): r for r in scan(4)}
    rec = recs[("e1+e2",)]
    assert rec.restrictions_examined == 11 and not rec.flagged("isotopy") and not rec.flagged("real")


def test_d5_record_count_and_order(d5_records):
    assert [r.index for r in d5_records] == list(range(182))
    assert d5_records[0].generators == [] and d5_records[0].rank == 5


def test_d5_isotopy_flags_table_plus_one(d5_records):
    flagged = {frozenset(r.generators) for r in d5_records if r.flagged("isotopy")}
    table = set(d5_table_ideals().values())
    assert len(flagged) == 9
    assert table <= flagged
    assert flagged - table == {frozenset({"e1+e5", "e2+e4"})}


def test_extra_ideal_is_the_fork_image_of_vii(d5_records):
    rs = RootSystem("D", 5)
    vii = ideal_from_generators(rs, sorted(d5_table_ideals()["vii"]))
    assert set(fork_swap(vii).generator_names()) == {"e1+e5", "e2+e4"}
    flagged = [ideal_from_generators(rs, r.generators) for r in d5_records if r.flagged("isotopy")]
    orbits = {min(i.members, fork_swap(i).members, key=lambda m: sorted(r.name for r in m)) for i in flagged}
    assert len(orbits) == 8


def test_real_detector_is_disjoint_from_isotopy(d5_records):
    # the flagged restrictions are real forms of A(1), which has no real triangle
    real = {r.index for r in d5_records if r.flagged("real")}
    iso = {r.index for r in d5_records if r.flagged("isotopy")}
    assert len(real) == 75
    assert not real & iso


def test_record_roundtrip(d5_records):
    for r in d5_records[:20]:
        assert ScanRecord.from_json(json.loads(json.dumps(r.to_json()))).to_json() == r.to_json()


def test_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    list(scan(4, jobs=1, out=a))
    list(scan(4, jobs=2, out=b))
    assert a.read_text() == b.read_text()


def test_resume_reuses_records(tmp_path):
    full = tmp_path / "full.jsonl"
    list(scan(4, out=full))
    lines = full.read_text().splitlines(True)
    part = tmp_path / "part.jsonl"
    # a partial file with a torn last line
    part.write_text("".join(lines[:20]) + lines[20][:15])
    recs = list(scan(4, out=part, resume=True))
    assert len(recs) == 50
    assert part.read_text() == full.read_text()
