"""On-disk cache for computed polynomials and identity reports.

Writes are atomic (temp file then rename).  Every entry embeds its own key;
a read that fails to parse, or whose embedded key disagrees, is discarded and
treated as a miss so corrupt entries are recomputed rather than trusted.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from .report import IdentityReport
from .serialize import SerializationError, mpoly_record, parse_mpoly_record


class CacheStore:
    def __init__(self, root):
        self.root = str(root)
        os.makedirs(self.root, exist_ok=True)

    def _path(self, key):
        digest = hashlib.sha256(key.encode()).hexdigest()[:32]
        return os.path.join(self.root, digest + ".entry")

    def get_text(self, key):
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                stored_key, _, payload = fh.read().partition("\n")
        except OSError:
            return None
        if stored_key != key:
            self._discard(path)
            return None
        return payload

    def put_text(self, key, payload):
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(key + "\n" + payload)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def _discard(self, path):
        try:
            os.unlink(path)
        except OSError:
            pass

    # -- polynomials ----------------------------------------------------------

    def get_poly(self, key):
        payload = self.get_text(key)
        if payload is None:
            return None
        try:
            return parse_mpoly_record(payload)
        except SerializationError:
            self._discard(self._path(key))
            return None

    def put_poly(self, key, poly):
        self.put_text(key, mpoly_record(poly))

    # -- reports ---------------------------------------------------------------

    def _case_key(self, case):
        return "report:" + json.dumps(
            {"identity": case.identity,
             "params": {k: list(v) if isinstance(v, (tuple, list)) else v
                        for k, v in sorted(case.params.items())}},
            sort_keys=True)

    def get_report(self, case):
        payload = self.get_text(self._case_key(case))
        if payload is None:
            return None
        try:
            data = json.loads(payload)
            return IdentityReport(
                case, data["verdict"], data.get("anchor", ""),
                witness_poly=data.get("witness_poly"),
                witness_constant=data.get("witness_constant"),
                detail=data.get("detail", ""),
                timing_ms=data.get("timing_ms", 0.0))
        except (ValueError, KeyError, TypeError):
            self._discard(self._path(self._case_key(case)))
            return None

    def put_report(self, case, report):
        self.put_text(self._case_key(case), json.dumps(report.to_dict()))


ReportCache = CacheStore
