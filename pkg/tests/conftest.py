import pytest

from systolic_atlas.graphs.census import clear_memory_cache


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    # every test gets its own census cache directory and an empty in-memory cache
    cache_dir = tmp_path / "census_cache"
    monkeypatch.setenv("SYSTOLIC_ATLAS_CACHE", str(cache_dir))
    clear_memory_cache()
    yield str(cache_dir)
    clear_memory_cache()
