"""Constructor specs and a directory-backed store of named complexes.

Spec syntax::

    spec    := summand ('#' summand)*          connected sum, left to right
    summand := base ('|' 'gyr:k=K[,tau=L]')*   iterated gyrations
    base    := 'product:S2xS3' | 'product:2,3'
             | 'bundle:2,5[,twisted]'
             | 'barden:W' | 'barden:M3' | 'barden:X4' | 'barden:S2xtS3'
             | 'duan:r=1;ks=2,4;H=W'
             | 'cat:NAME'                      entry of the catalog
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .constructors import (
    DuanSpec,
    GyrationSpec,
    barden,
    connected_sum,
    duan,
    gyration,
    product,
    sphere_bundle,
)
from .errors import InputError
from .momentangle import SimplicialComplex
from .pdcomplex import PDComplex

_NAME = re.compile(r"^[A-Za-z0-9_.+-]+$")


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad integer list in {what}: {text!r}") from None


def _kv(text: str, sep: str) -> dict[str, str]:
    out = {}
    for part in text.split(sep):
        if not part.strip():
            continue
        if "=" not in part:
            raise InputError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _base(text: str, catalog: "Catalog | None") -> PDComplex:
    kind, _, arg = text.strip().partition(":")
    if kind == "product":
        mt = re.fullmatch(r"S(\d+)xS(\d+)", arg)
        a, b = (int(mt.group(1)), int(mt.group(2))) if mt else _ints(arg, "product")
        return product(a, b)
    if kind == "bundle":
        parts = [p.strip() for p in arg.split(",")]
        twisted = parts[-1] in ("twisted", "t")
        if twisted or parts[-1] in ("trivial",):
            parts = parts[:-1]
        nums = _ints(",".join(parts), "bundle")
        if len(nums) != 2:
            raise InputError("bundle needs m,n")
        return sphere_bundle(nums[0], nums[1], twisted)
    if kind == "barden":
        return barden(arg)
    if kind == "duan":
        kv = _kv(arg, ";")
        unknown = set(kv) - {"r", "ks", "H", "w2"}
        if unknown:
            raise InputError(f"unknown duan keys {sorted(unknown)}")
        w2 = kv.get("w2")
        return duan(DuanSpec(
            r=_ints(kv.get("r", "0"), "duan r")[0] if kv.get("r", "0") else 0,
            ks=tuple(_ints(kv.get("ks", ""), "duan ks")),
            H=kv.get("H") or None,
            w2_nonzero=None if w2 is None else w2.lower() in ("1", "true", "yes"),
        ))
    if kind == "cat":
        if catalog is None:
            raise InputError("cat: reference needs a catalog")
        doc = catalog.get(arg)
        if not isinstance(doc, PDComplex):
            raise InputError(f"catalog entry {arg!r} is not a duality complex")
        return doc
    raise InputError(f"unknown constructor {kind!r} in {text!r}")


def _gyr(text: str) -> GyrationSpec:
    kind, _, arg = text.strip().partition(":")
    if kind != "gyr":
        raise InputError(f"expected gyr:k=...,tau=..., got {text!r}")
    kv = _kv(arg, ",")
    if "k" not in kv or set(kv) - {"k", "tau"}:
        raise InputError(f"gyration spec needs k (and optionally tau), got {text!r}")
    return GyrationSpec(_ints(kv["k"], "gyr k")[0], kv.get("tau", "0"))


def build(spec: str, catalog: "Catalog | None" = None) -> PDComplex:
    """Build a complex from the spec syntax described in the module docstring."""
    summands = []
    for part in spec.split("#"):
        pieces = part.split("|")
        M = _base(pieces[0], catalog)
        for g in pieces[1:]:
            M = gyration(M, _gyr(g))
        summands.append(M)
    acc = summands[0]
    for M in summands[1:]:
        acc = connected_sum(acc, M)
    return acc


def looks_like_spec(text: str) -> bool:
    return bool(re.match(r"^(product|bundle|barden|duan|cat):", text.strip()))


def load_document(data) -> PDComplex | SimplicialComplex:
    if isinstance(data, dict) and "vertices" in data:
        return SimplicialComplex.from_json(data)
    return PDComplex.from_json(data)


def read_file(path: str | Path) -> PDComplex | SimplicialComplex:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    return load_document(data)


def dumps(doc: PDComplex | SimplicialComplex) -> str:
    return doc.dumps()


@dataclass(frozen=True)
class Catalog:
    root: Path

    def _path(self, name: str) -> Path:
        if not _NAME.match(name):
            raise InputError(f"bad catalog name {name!r}")
        return Path(self.root) / f"{name}.json"

    def add(self, name: str, doc: PDComplex | SimplicialComplex, replace: bool = False) -> Path:
        path = self._path(name)
        if path.exists() and not replace:
            raise InputError(f"catalog already has an entry named {name!r}")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(doc), encoding="utf-8")
        return path

    def get(self, name: str) -> PDComplex | SimplicialComplex:
        path = self._path(name)
        if not path.exists():
            raise InputError(f"no catalog entry named {name!r}")
        return read_file(path)

    def names(self) -> list[str]:
        root = Path(self.root)
        if not root.is_dir():
            return []
        return sorted(p.stem for p in root.glob("*.json"))


def resolve(source: str, catalog: Catalog | None = None) -> PDComplex | SimplicialComplex:
    """A file path, a constructor spec, or a catalog entry name."""
    if Path(source).is_file():
        return read_file(source)
    if looks_like_spec(source):
        return build(source, catalog)
    if catalog is not None and _NAME.match(source) and catalog._path(source).exists():
        return catalog.get(source)
    raise InputError(f"{source!r} is neither a readable file, a constructor spec, nor a catalog entry")
