import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    """Keep every test away from the user-level count cache."""
    monkeypatch.setenv("KLEINZETA_CACHE", str(tmp_path / "counts.jsonl"))
