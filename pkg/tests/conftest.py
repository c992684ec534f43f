import pytest


@pytest.fixture(scope="session")
def session_cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("hecke_cache"))


@pytest.fixture(autouse=True)
def _redirect_cache(session_cache_dir, monkeypatch):
    # keep eigenform disk caches out of the working tree and shared across tests
    monkeypatch.setenv("HECKE_CACHE_DIR", session_cache_dir)
