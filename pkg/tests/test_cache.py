import json
import threading

import pytest

from lmovkit.cache import CacheCorruption, InvariantCache, cache_key
from lmovkit.skein import lookup
from lmovkit.skein.braids import BraidWord
from lmovkit.skein.invariants import colored_invariant

COLORS = ((2,),)


def test_round_trip(tmp_path):
    cache = InvariantCache(tmp_path)
    b = lookup("trefoil")
    assert cache.get(b, COLORS) is None
    value = colored_invariant(b, COLORS)
    cache.put(b, COLORS, value)
    assert cache.get(b, COLORS) == value


def test_key_uses_free_reduction():
    b = BraidWord(2, (1, 1, 1))
    padded = BraidWord(2, (1, -1, 1, 1, 1))
    assert cache_key(b, COLORS) == cache_key(padded, COLORS)
    assert cache_key(b, COLORS) != cache_key(b, ((1, 1),))


def test_version_bump_misses(tmp_path):
    b = lookup("trefoil")
    InvariantCache(tmp_path, version="v1").put(b, COLORS, colored_invariant(b, COLORS))
    assert InvariantCache(tmp_path, version="v2").get(b, COLORS) is None


def test_corruption_is_detected(tmp_path):
    cache = InvariantCache(tmp_path)
    b = lookup("trefoil")
    path = cache.put(b, COLORS, colored_invariant(b, COLORS))
    entry = json.loads(path.read_text())
    entry["value"]["num"]["terms"][0]["c"] = "12345"
    path.write_text(json.dumps(entry))
    with pytest.raises(CacheCorruption):
        cache.get(b, COLORS)
    path.write_text("{not json")
    with pytest.raises(CacheCorruption):
        cache.get(b, COLORS)
    # get_or_compute recovers by recomputing
    assert cache.get_or_compute(b, COLORS, colored_invariant) == colored_invariant(b, COLORS)
    assert cache.get(b, COLORS) == colored_invariant(b, COLORS)


def test_concurrent_writers(tmp_path):
    b = lookup("hopf")
    colors = ((1,), (1,))
    value = colored_invariant(b, colors)
    errors = []

    def work():
        try:
            for _ in range(20):
                InvariantCache(tmp_path).put(b, colors, value)
                got = InvariantCache(tmp_path).get(b, colors)
                assert got is None or got == value
        except Exception as exc:  # surfaced below
            errors.append(exc)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert not list(tmp_path.rglob(".tmp-*"))
