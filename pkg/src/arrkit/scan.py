"""Scan all ideals of D_n for rank-3 restrictions carrying a simple triangle.

For an ideal I with r = r(A_I) >= 3, every flat Y of rank r - 3 gives a
restriction A_I^Y of rank 3, which is essentialized and tested two ways:

* ``real``: the essentialized restriction, as a real arrangement, has a
  triangular chamber with double-point vertices;
* ``isotopy``: the restriction is a linear image of a triangle-family
  member at a parameter outside the exceptional set, so it is lattice
  isotopic to a real arrangement with such a triangle.

Records are written as JSON lines in enumeration order.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .arrangement import essentialize, restrict
from .chambers import find_simple_triangle
from .family import simple_triangle_certificate
from .lattice import build_lattice
from .roots import RootSystem, enumerate_ideals, ideal_arrangement, ideal_from_generators

DETECTORS = ("isotopy", "real")


@dataclass
class ScanRecord:
    index: int
    generators: list[str]
    generators_simple: list[list[int]]
    size: int
    rank: int
    restrictions_examined: int = 0
    restrictions: list[dict] = field(default_factory=list)

    def flagged(self, detector: str = "isotopy") -> bool:
        key = "isotopy" if detector == "isotopy" else "real_witness"
        return any(r[key] is not None for r in self.restrictions)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "generators": self.generators,
            "generators_simple": self.generators_simple,
            "size": self.size,
            "rank": self.rank,
            "restrictions_examined": self.restrictions_examined,
            "restrictions": self.restrictions,
            "flagged": {d: self.flagged(d) for d in DETECTORS},
        }

    @classmethod
    def from_json(cls, d: dict) -> "ScanRecord":
        return cls(d["index"], d["generators"], d["generators_simple"], d["size"], d["rank"],
                   d["restrictions_examined"], d["restrictions"])


def scan_ideal(rs: RootSystem, index: int, ideal) -> ScanRecord:
    a = ideal_arrangement(rs, ideal)
    rec = ScanRecord(index, ideal.generator_names(),
                     [list(g.simple_coords) for g in ideal.generators], len(a), a.rank if len(a) else 0)
    if rec.rank < 3:
        return rec
    lat = build_lattice(a)
    for y in lat.stratum(rec.rank - 3):
        rec.restrictions_examined += 1
        if y.rank == 0:
            res = a
        else:
            res, _ = restrict(a, y)
        ess, _ = essentialize(res)
        witness = find_simple_triangle(ess)
        cert = simple_triangle_certificate(ess)
        if witness is None and cert is None:
            continue
        rec.restrictions.append({
            "flat": [[str(x) for x in row] for row in y.subspace.basis],
            "flat_rank": y.rank,
            "hyperplanes": len(ess),
            "real_witness": witness.to_json() if witness else None,
            "isotopy": cert.to_json() if cert else None,
        })
    return rec


def _work(args) -> dict:
    kind, n, index, gens = args
    rs = RootSystem(kind, n)
    ideal = ideal_from_generators(rs, [rs.by_simple(g) for g in gens])
    return scan_ideal(rs, index, ideal).to_json()


def _read_done(path) -> dict[int, dict]:
    done: dict[int, dict] = {}
    if path is None or not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError:
                # a torn final line from an interrupted run
                break
            done[d["index"]] = d
    return done


def scan(n: int, kind: str = "D", jobs: int = 1, out=None, resume: bool = False) -> Iterator[ScanRecord]:
    """Yield one record per ideal in enumeration order.

    With ``out`` the records are also written as JSON lines; with
    ``resume`` records already present in ``out`` are reused and only the
    missing ideals are computed.
    """
    rs = RootSystem(kind, n)
    ideals = list(enumerate_ideals(rs))
    done = _read_done(out) if resume else {}
    tasks = [(kind, n, i, [list(g.simple_coords) for g in ideal.generators])
             for i, ideal in enumerate(ideals) if i not in done]
    fh = open(out, "w", encoding="utf-8") if out is not None else None
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        results = pool.map(_work, tasks, chunksize=4) if pool else map(_work, tasks)
        pending = iter(results)
        for i in range(len(ideals)):
            d = done[i] if i in done else next(pending)
            if fh is not None:
                fh.write(json.dumps(d, sort_keys=True) + "\n")
                fh.flush()
            yield ScanRecord.from_json(d)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
        if fh is not None:
            fh.close()


def flagged_generators(n: int, detector: str = "isotopy", jobs: int = 1) -> list[list[str]]:
    return [rec.generators for rec in scan(n, jobs=jobs) if rec.flagged(detector)]
