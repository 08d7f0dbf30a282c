import pytest

from hb_lab.config import DEFAULT_TOLERANCES, RunConfig, parallel_map, thread_cap


def test_defaults():
    cfg = RunConfig()
    assert cfg.degree_bound == cfg.n_points // 4
    assert cfg.tol("pyth") == DEFAULT_TOLERANCES["pyth"]


@pytest.mark.parametrize("kwargs", [
    {"tolerances": {"pyth": 0.0}},
    {"resolutions": (1024, 1024, 2048)},
    {"format": "xml"},
    {"n_points": 4},
])
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("HB_LAB_THREADS", "3")
    assert thread_cap() == 3
    monkeypatch.setenv("HB_LAB_THREADS", "x")
    with pytest.raises(ValueError):
        thread_cap()


def test_parallel_map_keeps_order(monkeypatch):
    monkeypatch.setenv("HB_LAB_THREADS", "4")
    assert parallel_map(lambda x: x * x, range(10)) == [x * x for x in range(10)]
