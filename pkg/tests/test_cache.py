import pytest

from polyenum.cache import CorruptCache, EnumerationCache
from polyenum.core import enumerate_polyominoes


def _stream(area):
    return [p.matrix.to_json() for n in range(1, area + 1) for p in enumerate_polyominoes(area=n)]


def test_store_then_load_is_identical(tmp_path):
    cache = EnumerationCache(tmp_path, version="1")
    lines = _stream(8)
    path = cache.store("area", 8, lines)
    assert cache.load("area", 8) == lines
    raw = path.read_bytes()
    cache.store("area", 8, lines)
    assert path.read_bytes() == raw


def test_version_bump_misses(tmp_path):
    EnumerationCache(tmp_path, version="1").store("area", 3, _stream(3))
    assert EnumerationCache(tmp_path, version="2").load("area", 3) is None
    assert EnumerationCache(tmp_path, version="1").load("area", 4) is None


def test_checksum_flip_regenerates(tmp_path):
    cache = EnumerationCache(tmp_path, version="1")
    lines = _stream(4)
    path = cache.store("area", 4, lines)
    raw = bytearray(path.read_bytes())
    raw[-3] ^= 1
    path.write_bytes(bytes(raw))
    with pytest.raises(CorruptCache):
        cache.load("area", 4)
    calls = []

    def build():
        calls.append(1)
        return _stream(4)

    assert cache.get_or_build("area", 4, build) == lines
    assert calls == [1]
    assert cache.load("area", 4) == lines


def test_env_var_sets_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYENUM_CACHE", str(tmp_path / "c"))
    cache = EnumerationCache(version="1")
    cache.store("k", 1, ["x"])
    assert (tmp_path / "c").is_dir()
