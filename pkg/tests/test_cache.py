import os

from jackcluster.cache import CacheStore
from jackcluster.exactnum import FieldElement
from jackcluster.jackcore import jack_symmetric
from jackcluster.macdonald import macdonald_symmetric
from jackcluster.partlib import qt_from_t_power
from jackcluster.report import IdentityCase, IdentityReport
from fractions import Fraction


def test_poly_roundtrip(tmp_path):
    store = CacheStore(tmp_path)
    p = jack_symmetric((2, 0), 2).poly
    store.put_poly("P:(2,0):2:generic", p)
    assert store.get_poly("P:(2,0):2:generic") == p


def test_p_encoded_roundtrip(tmp_path):
    store = CacheStore(tmp_path)
    poly = macdonald_symmetric((2, 0), 2, qt_from_t_power(Fraction(-1, 2)))
    store.put_poly("mac", poly)
    assert store.get_poly("mac") == poly


def test_truncated_entry_discarded(tmp_path):
    store = CacheStore(tmp_path)
    p = jack_symmetric((2, 0), 2).poly
    store.put_poly("key", p)
    path = store._path("key")
    with open(path, "r+", encoding="utf-8") as fh:
        data = fh.read()
        fh.seek(0)
        fh.truncate()
        fh.write(data[: len(data) // 2])
    assert store.get_poly("key") is None
    assert not os.path.exists(path)
    store.put_poly("key", p)
    assert store.get_poly("key") == p


def test_key_collision_guard(tmp_path):
    store = CacheStore(tmp_path)
    store.put_text("a", "payload")
    path = store._path("a")
    other = store._path("b")
    os.replace(path, other)
    assert store.get_text("b") is None


def test_report_roundtrip(tmp_path):
    store = CacheStore(tmp_path)
    case = IdentityCase("PROP1", {"r": 2, "kappa": (1, 0), "N": 3})
    rep = IdentityReport(case, "holds", "anchor text", timing_ms=1.5)
    store.put_report(case, rep)
    back = store.get_report(case)
    assert back.verdict == "holds" and back.anchor == "anchor text"
