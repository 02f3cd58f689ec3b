"""Hardy integral table: oracle values, checkpointing, persistence."""

import json
import math

import pytest

from zetalab import HardyIntegralTable, ZetaEngine, EngineConfig
from zetalab.quadrature import integrate

# frozen against mpmath (dps=30): integral of Z(t)^2 from 0 to T
A_100 = 295.6350990547191303702
A_100PI = 1282.375523104711635908


class TestValues:
    def test_oracle_100(self, lt):
        assert abs(lt.hardy.value(100.0) - A_100) < 1e-7

    def test_oracle_100pi(self, lt):
        assert abs(lt.hardy.value(math.pi * 100.0) - A_100PI) < 1e-6

    def test_zero_at_origin(self, lt):
        assert lt.hardy.value(0.0) == 0.0

    def test_monotone_increasing(self, lt):
        grid = [10.0 * j for j in range(1, 40)]
        vals = [lt.hardy.value(t) for t in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_additivity_against_direct_quadrature(self, lt, engine):
        a, b = 220.0, 287.5
        want = lt.hardy.value(b) - lt.hardy.value(a)
        got = integrate(engine.z_squared_many, a, b, 1e-10)
        assert abs(want - got.value) < 1e-7

    def test_history_independence(self, engine):
        t1 = HardyIntegralTable(engine, tol=1e-9)
        t2 = HardyIntegralTable(engine, tol=1e-9)
        # query in opposite orders; identical bits required
        a1 = t1.value(700.0)
        b1 = t1.value(300.0)
        b2 = t2.value(300.0)
        a2 = t2.value(700.0)
        assert a1 == a2
        assert b1 == b2

    def test_cache_stats_counters(self, engine):
        t = HardyIntegralTable(engine, tol=1e-9)
        s0 = t.cache_stats
        assert s0["checkpoint_blocks"] == 0
        t.value(120.0)
        s1 = t.cache_stats
        assert s1["checkpoint_blocks"] >= 2
        assert s1["fine_blocks_built"] >= 1
        assert s1["loaded_checkpoint_blocks"] == 0


class TestPersistence:
    def test_save_load_roundtrip(self, engine, tmp_path):
        path = str(tmp_path / "cache.json")
        t1 = HardyIntegralTable(engine, tol=1e-9)
        v1 = t1.value(400.0)
        t1.save(path)

        t2 = HardyIntegralTable.load(path, engine, tol=1e-9)
        assert t2.cache_stats["loaded_checkpoint_blocks"] > 0
        assert t2.value(400.0) == v1

    def test_save_deterministic_bytes(self, engine, tmp_path):
        p1 = str(tmp_path / "a.json")
        p2 = str(tmp_path / "b.json")
        t = HardyIntegralTable(engine, tol=1e-9)
        t.value(150.0)
        t.save(p1)
        t.save(p2)
        assert open(p1, "rb").read() == open(p2, "rb").read()

    def test_load_missing_file_cold_start(self, engine, tmp_path):
        t = HardyIntegralTable.load(str(tmp_path / "nope.json"), engine, tol=1e-9)
        assert t.cache_stats["loaded_checkpoint_blocks"] == 0

    def test_load_corrupt_file_cold_start(self, engine, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        t = HardyIntegralTable.load(str(path), engine, tol=1e-9)
        assert t.cache_stats["loaded_checkpoint_blocks"] == 0

    def test_load_mismatched_tol_cold_start(self, engine, tmp_path):
        path = str(tmp_path / "cache.json")
        t1 = HardyIntegralTable(engine, tol=1e-9)
        t1.value(150.0)
        t1.save(path)
        t2 = HardyIntegralTable.load(path, engine, tol=1e-8)
        assert t2.cache_stats["loaded_checkpoint_blocks"] == 0

    def test_load_mismatched_engine_cold_start(self, engine, tmp_path):
        path = str(tmp_path / "cache.json")
        t1 = HardyIntegralTable(engine, tol=1e-9)
        t1.value(150.0)
        t1.save(path)
        other = ZetaEngine(EngineConfig(euler_maclaurin_terms=14))
        t2 = HardyIntegralTable.load(path, other, tol=1e-9)
        assert t2.cache_stats["loaded_checkpoint_blocks"] == 0

    def test_saved_header_records_engine(self, engine, tmp_path):
        path = tmp_path / "cache.json"
        t = HardyIntegralTable(engine, tol=1e-9)
        t.value(80.0)
        t.save(str(path))
        payload = json.loads(path.read_text())
        assert payload  # sanity: json object with content
        text = path.read_text()
        assert text.endswith("\n")


class TestIntegrate:
    def test_empty(self):
        r = integrate(lambda ts: ts, 5.0, 5.0, 1e-9)
        assert r.value == 0.0 and r.evaluations == 0

    def test_polynomial_exact(self):
        # G7K15 integrates low-degree polynomials exactly
        r = integrate(lambda ts: 3.0 * ts * ts, 0.0, 2.0, 1e-12)
        assert abs(r.value - 8.0) < 1e-12

    def test_error_estimate_honest(self):
        r = integrate(lambda ts: ts ** 0.5, 1.0, 9.0, 1e-10)
        assert abs(r.value - (2.0 / 3.0) * (27.0 - 1.0)) <= max(r.abs_error_estimate, 1e-9)
