"""A small JSON result cache: key -> decimal string of the count."""

from __future__ import annotations

import json
import os
import tempfile


def cache_key(ring, n, kind, target, method):
    return f"{ring}|{n}|{kind}|{target}|{method}"


class ResultCache:
    def __init__(self, path=None):
        self.path = path
        self._data = {}
        self._dirty = False
        if path and os.path.exists(path):
            with open(path) as fh:
                self._data = json.load(fh)

    def get(self, key):
        v = self._data.get(key)
        return None if v is None else int(v)

    def put(self, key, value):
        self._data[key] = str(value)
        self._dirty = True

    def __len__(self):
        return len(self._data)

    def save(self):
        if not self.path or not self._dirty:
            return
        d = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(self._data, fh, indent=0, sort_keys=True)
        os.replace(tmp, self.path)
        self._dirty = False
