"""Content-addressed on-disk cache of reduced bases and Hecke matrices.

Each entry is a matrix in the sparse text format plus a ``.sha256`` sidecar holding
the digest of the matrix file and the key it was stored under.  Writes go to a
temporary file first and are renamed into place.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .. import __version__
from ..algebra.field import field
from ..algebra.sparse import SparseMat, dump_matrix, load_matrix

CACHE_ENV = "SL2MODP_CACHE_DIR"


class ChecksumError(ValueError):
    """A cache entry is corrupt or does not match its key."""


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "sl2modp"


def _atomic_write(path: Path, data: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Cache:
    def __init__(self, root: Path | str | None = None, version: str = __version__):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.version = version
        self.hits = 0
        self.misses = 0

    def key(self, kind: str, **params) -> str:
        """Canonical key text; the artifact version is always part of it."""
        fields = {"kind": kind, "version": self.version, **params}
        return json.dumps(fields, sort_keys=True)

    def _paths(self, key: str) -> tuple[Path, Path]:
        h = hashlib.sha256(key.encode()).hexdigest()
        return self.root / f"{h}.mat", self.root / f"{h}.sha256"

    def store(self, key: str, mat: SparseMat, p: int, k: int) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        text = dump_matrix(mat, field(p, k))
        digest = hashlib.sha256(text.encode()).hexdigest()
        mpath, spath = self._paths(key)
        _atomic_write(mpath, text)
        _atomic_write(spath, json.dumps({"sha256": digest, "key": key}, sort_keys=True) + "\n")

    def load(self, key: str, p: int, k: int) -> SparseMat | None:
        """The stored matrix, None on a miss; ChecksumError if the entry is damaged."""
        mpath, spath = self._paths(key)
        if not mpath.exists() or not spath.exists():
            self.misses += 1
            return None
        text = mpath.read_text()
        try:
            side = json.loads(spath.read_text())
        except json.JSONDecodeError as e:
            raise ChecksumError(f"unreadable sidecar {spath}") from e
        if side.get("key") != key:
            raise ChecksumError(f"{mpath} was stored under a different key")
        if hashlib.sha256(text.encode()).hexdigest() != side.get("sha256"):
            raise ChecksumError(f"checksum mismatch for {mpath}")
        try:
            mat, fp, fk = load_matrix(text)
        except ValueError as e:
            raise ChecksumError(f"malformed matrix in {mpath}: {e}") from e
        if (fp, fk) != (p, k):
            raise ChecksumError(f"{mpath} holds a matrix over F_{fp}^{fk}, expected F_{p}^{k}")
        self.hits += 1
        return mat

    def invalidate(self, key: str) -> bool:
        removed = False
        for path in self._paths(key):
            if path.exists():
                path.unlink()
                removed = True
        return removed

    def load_or_build(self, key: str, p: int, k: int, build):
        """Load, or rebuild (and overwrite) when missing or corrupt."""
        try:
            mat = self.load(key, p, k)
        except ChecksumError:
            self.invalidate(key)
            mat = None
        if mat is None:
            mat = build()
            self.store(key, mat, p, k)
        return mat


def quotient_ctx(cache: Cache | None, p: int, r: int, lam: int, n: int, R: int, k: int):
    """A QuotientCtx whose image basis comes from the cache when available."""
    from ..cind.quotient import QuotientCtx

    if cache is None:
        return QuotientCtx(p, r, lam, n, R, k)
    key = cache.key("quotient-basis", p=p, k=k, r=r, lam=lam, n=n, R=R)
    mat = cache.load_or_build(key, p, k, lambda: QuotientCtx(p, r, lam, n, R, k).basis_matrix())
    return QuotientCtx.from_basis(p, r, lam, n, R, k, mat)
