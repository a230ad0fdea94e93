"""
Tests for the parallel executor, the catalog cache and logging
"""
import json
import logging
import math
import operator
from fractions import Fraction

import pytest

from app.forms import build_catalog, catalog_hash
from app.orchestrator import ParallelExecutor, WorkItem
from app.utils.cache import CatalogCache
from app.utils.logging_config import JSONFormatter, log_timing


class TestParallelExecutor:
    def test_inline_execution(self):
        items = [WorkItem(id=str(n), func=math.factorial, args=(n,)) for n in range(6)]
        done = ParallelExecutor(max_concurrent=1).run(items)
        assert [item.result for item in done] == [1, 1, 2, 6, 24, 120]
        assert all(item.ok for item in done)
        assert all(item.elapsed >= 0 for item in done)

    def test_process_pool_preserves_order(self):
        items = [WorkItem(id=str(n), func=math.factorial, args=(n,)) for n in range(8)]
        done = ParallelExecutor(max_concurrent=2).run(items)
        assert [item.result for item in done] == [math.factorial(n) for n in range(8)]

    @pytest.mark.parametrize("jobs", [1, 2])
    def test_failures_are_recorded(self, jobs):
        items = [
            WorkItem(id="ok", func=operator.truediv, args=(1, 2)),
            WorkItem(id="bad", func=operator.truediv, args=(1, 0)),
        ]
        ok, bad = ParallelExecutor(max_concurrent=jobs).run(items)
        assert ok.ok and ok.result == 0.5
        assert not bad.ok
        assert bad.error.startswith("ZeroDivisionError")

    def test_default_from_settings(self, mock_settings, monkeypatch):
        monkeypatch.setattr(mock_settings, "JOBS", 3)
        assert ParallelExecutor().max_concurrent == 3


class TestCatalogCache:
    def test_set_and_get(self, tmp_path):
        cache = CatalogCache(cache_dir=tmp_path, enabled=True)
        assert cache.set("catalog", 5, {"x": 1})
        assert cache.get("catalog", 5) == {"x": 1}

    def test_file_cache_survives_new_instance(self, tmp_path):
        CatalogCache(cache_dir=tmp_path, enabled=True).set("catalog", 7, [1, 2, 3])
        fresh = CatalogCache(cache_dir=tmp_path, enabled=True)
        assert fresh.get("catalog", 7) == [1, 2, 3]

    def test_disabled_cache(self, tmp_path):
        cache = CatalogCache(cache_dir=tmp_path, enabled=False)
        assert not cache.set("catalog", 5, "value")
        assert cache.get("catalog", 5, default="missing") == "missing"
        assert not list(tmp_path.iterdir())

    def test_get_or_build_builds_once(self, tmp_path):
        cache = CatalogCache(cache_dir=tmp_path, enabled=True)
        calls = []

        def builder(order):
            calls.append(order)
            return order * 2

        assert cache.get_or_build("catalog", 4, builder) == 8
        assert cache.get_or_build("catalog", 4, builder) == 8
        assert calls == [4]

    def test_clear(self, tmp_path):
        cache = CatalogCache(cache_dir=tmp_path, enabled=True)
        cache.set("catalog", 1, "a")
        cache.clear()
        assert cache.get("catalog", 1) is None
        assert not list(tmp_path.glob("*.cache"))

    def test_pickled_catalog_round_trip(self, tmp_path):
        catalog = build_catalog(3)
        CatalogCache(cache_dir=tmp_path, enabled=True).set("catalog", 3, catalog)
        restored = CatalogCache(cache_dir=tmp_path, enabled=True).get("catalog", 3)
        assert catalog_hash(restored) == catalog_hash(catalog)


@pytest.mark.asyncio
async def test_execute_inside_running_loop():
    items = [WorkItem(id=str(n), func=math.factorial, args=(n,)) for n in (3, 4)]
    done = await ParallelExecutor(max_concurrent=2).execute(items)
    assert [item.result for item in done] == [6, 24]
    assert all(item.start_time is not None and item.end_time is not None for item in done)


class _Collect(logging.Handler):
    def __init__(self):
        super().__init__()
        self.records = []

    def emit(self, record):
        self.records.append(record)


class TestLogging:
    def test_json_formatter_encodes_fractions(self):
        record = logging.LogRecord("leech", logging.INFO, __file__, 1, "bound", None, None)
        record.extra = {"C": Fraction(1, 3)}
        payload = json.loads(JSONFormatter().format(record))
        assert payload["C"] == "1/3"
        assert payload["message"] == "bound"
        assert "pid" in payload

    def test_log_timing_attaches_fields(self):
        logger = logging.getLogger("tests.log_timing")
        logger.setLevel(logging.INFO)
        handler = _Collect()
        logger.addHandler(handler)
        try:
            with log_timing(logger, "done", order=50) as fields:
                fields["status"] = "ok"
        finally:
            logger.removeHandler(handler)
        (record,) = handler.records
        assert record.extra["order"] == 50
        assert record.extra["status"] == "ok"
        assert record.extra["wall_time"] >= 0
