"""File-backed hierarchical store indexed by the interval encoding.

Payload-bearing nodes are keyed by their matrix.  Descendant queries run
as range scans over an index ordered by exact interval endpoints,
ancestor queries are pure parent() arithmetic, inserts never touch
existing keys, and subtree relocation is the detach/attach matrix
algebra.

Persistence format ("mobius-tree v1"): a header line, then one record
per line as a<TAB>b<TAB>c<TAB>d<TAB>payload with the matrix entries in
decimal, lines sorted by interval low then high endpoint, LF endings,
UTF-8.  Payloads escape tab, newline and backslash as \\t, \\n, \\\\.

Concurrency contract: any number of readers or a single mutator; the
store does not lock internally.  Query results are plain lists.
"""

from __future__ import annotations

import bisect
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable, Union

from .exactmath import DomainError, Ratio
from .encoding import (
    MobiusMatrix,
    NestedInterval,
    Path,
    child,
    concat,
    is_ancestor,
    matrix_to_interval,
    matrix_to_path,
    parent as _matrix_parent,
    path_to_matrix,
    relative,
)

__all__ = [
    "StoreError",
    "MissingNodeError",
    "OccupiedSlotError",
    "CycleError",
    "IntegrityError",
    "LoadError",
    "NodeRecord",
    "StoreStats",
    "TreeStore",
    "ROOT",
]

FILE_HEADER = "mobius-tree v1"

# sentinel accepted wherever a parent/target node is expected
ROOT = "root"


class StoreError(Exception):
    """Base class for store failures."""


class MissingNodeError(StoreError):
    pass


class OccupiedSlotError(StoreError):
    pass


class CycleError(StoreError):
    pass


class IntegrityError(StoreError):
    pass


class LoadError(StoreError):
    """A persistence file could not be parsed; .line is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NodeRecord:
    """A stored node: a non-identity matrix plus an opaque UTF-8 payload.

    Records are identity objects owned by one store; the store re-keys
    the matrix in place on move_subtree, so handles stay valid.
    """

    __slots__ = ("matrix", "payload")

    def __init__(self, matrix: MobiusMatrix, payload: str):
        self.matrix = matrix
        self.payload = payload

    def __repr__(self):
        return f"NodeRecord({self.matrix!r}, {self.payload!r})"


@dataclass(frozen=True)
class StoreStats:
    nodes: int
    max_depth: int
    max_numerator_bits: int
    max_key_bytes: int


ParentRef = Union[NodeRecord, MobiusMatrix, Path, str, None]


def escape_payload(payload: str) -> str:
    return payload.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_payload(text: str) -> str:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ValueError("dangling backslash in payload")
        nxt = text[i + 1]
        if nxt == "t":
            out.append("\t")
        elif nxt == "n":
            out.append("\n")
        elif nxt == "\\":
            out.append("\\")
        else:
            raise ValueError(f"bad escape \\{nxt} in payload")
        i += 2
    return "".join(out)


def _parent_and_slot(m: MobiusMatrix) -> tuple[MobiusMatrix, int]:
    """Parent matrix and last path component of a non-identity matrix,
    both O(1)."""
    pm = _matrix_parent(m)
    assert pm is not None
    slot = (m.a - pm.b) // m.b
    return pm, slot


class TreeStore:
    """In-memory tree of NodeRecords with exact interval indexing."""

    def __init__(self):
        self._records: dict[tuple[int, int, int, int], NodeRecord] = {}
        # parent matrix key -> occupied child indices
        self._children: dict[tuple[int, int, int, int], set[int]] = {}
        # (lo, hi, key, interval) sorted by (lo, hi); rebuilt lazily
        self._index: list[tuple[Ratio, Ratio, tuple, NestedInterval]] | None = None

    # -- plumbing ---------------------------------------------------------

    @staticmethod
    def _key(m: MobiusMatrix) -> tuple[int, int, int, int]:
        return m.entries()

    def _resolve_parent_ref(self, parent: ParentRef) -> MobiusMatrix:
        """Normalize a parent/target reference to a present (or root)
        matrix."""
        if parent is None or (isinstance(parent, str) and parent == ROOT):
            return MobiusMatrix.IDENTITY
        if isinstance(parent, str):
            parent = Path.parse(parent)
        if isinstance(parent, NodeRecord):
            m = parent.matrix
        elif isinstance(parent, Path):
            m = path_to_matrix(parent)
        elif isinstance(parent, MobiusMatrix):
            m = parent
        else:
            raise TypeError(f"bad parent reference: {parent!r}")
        if m.is_identity:
            return m
        if self._key(m) not in self._records:
            raise MissingNodeError(f"no node at {matrix_to_path(m)}")
        return m

    def _require(self, record: NodeRecord) -> None:
        if self._records.get(self._key(record.matrix)) is not record:
            raise MissingNodeError("record is not in this store")

    def _insert(self, record: NodeRecord) -> None:
        key = self._key(record.matrix)
        self._records[key] = record
        pm, slot = _parent_and_slot(record.matrix)
        self._children.setdefault(self._key(pm), set()).add(slot)
        self._index = None

    def _remove(self, record: NodeRecord) -> None:
        key = self._key(record.matrix)
        del self._records[key]
        self._children.pop(key, None)
        pm, slot = _parent_and_slot(record.matrix)
        kids = self._children.get(self._key(pm))
        if kids is not None:
            kids.discard(slot)
            if not kids:
                self._children.pop(self._key(pm), None)
        self._index = None

    def _ensure_index(self):
        if self._index is None:
            idx = []
            for key, rec in self._records.items():
                iv = matrix_to_interval(rec.matrix)
                idx.append((iv.lo, iv.hi, key, iv))
            idx.sort(key=lambda t: (t[0], t[1]))
            self._index = idx
        return self._index

    # -- queries ----------------------------------------------------------

    def __len__(self):
        return len(self._records)

    def __iter__(self) -> Iterable[NodeRecord]:
        return iter(self._records.values())

    def resolve(self, path: Path | str) -> NodeRecord:
        """Record at a path; raises MissingNodeError."""
        if isinstance(path, str):
            path = Path.parse(path)
        key = self._key(path_to_matrix(path))
        rec = self._records.get(key)
        if rec is None:
            raise MissingNodeError(f"no node at {path}")
        return rec

    def all_nodes(self) -> list[NodeRecord]:
        """Every record, ordered by interval low then high endpoint."""
        return [self._records[key] for _, _, key, _ in self._ensure_index()]

    def children(self, parent: ParentRef = ROOT) -> list[NodeRecord]:
        """Immediate children of a node (or of the root), ordered by
        interval low endpoint."""
        pm = self._resolve_parent_ref(parent)
        slots = self._children.get(self._key(pm), ())
        recs = [self._records[self._key(child(pm, n))] for n in slots]
        recs.sort(key=lambda r: matrix_to_interval(r.matrix).lo)
        return recs

    def descendants(self, node: NodeRecord) -> list[NodeRecord]:
        """All records whose interval nests strictly inside the node's,
        by a range scan over the ordered index; ordered by interval low
        endpoint."""
        self._require(node)
        own = matrix_to_interval(node.matrix)
        own_key = self._key(node.matrix)
        idx = self._ensure_index()
        # probe (lo,) sorts before every full entry with the same lo
        i = bisect.bisect_left(idx, (own.lo,))
        out = []
        while i < len(idx):
            lo, hi, key, iv = idx[i]
            if own.hi < lo:
                break
            if key != own_key and own.encloses(iv):
                out.append(self._records[key])
            i += 1
        return out

    def ancestors(self, node: NodeRecord) -> list[NodeRecord]:
        """Ancestor chain by parent() arithmetic alone (no index scan),
        root side first, root excluded."""
        self._require(node)
        chain = []
        m = node.matrix
        while True:
            pm, _ = _parent_and_slot(m)
            if pm.is_identity:
                break
            rec = self._records.get(self._key(pm))
            if rec is None:
                raise IntegrityError(
                    f"ancestor {matrix_to_path(pm)} of {matrix_to_path(node.matrix)} is missing"
                )
            chain.append(rec)
            m = pm
        chain.reverse()
        return chain

    def stats(self) -> StoreStats:
        """Exact aggregates; key bytes measure the tab-joined decimal
        matrix entries, the key portion of a record line."""
        max_depth = 0
        max_bits = 0
        max_key = 0
        for rec in self._records.values():
            m = rec.matrix
            max_depth = max(max_depth, len(matrix_to_path(m)))
            max_bits = max(max_bits, m.a.bit_length())
            max_key = max(max_key, len(f"{m.a}\t{m.b}\t{m.c}\t{m.d}".encode()))
        return StoreStats(len(self._records), max_depth, max_bits, max_key)

    # -- mutation ---------------------------------------------------------

    def add_child(self, parent: ParentRef, payload: str, index: int | None = None) -> NodeRecord:
        """Insert a new child under parent (or the root).

        Without an index the node takes 1 + the highest occupied child
        slot (1 if none); interior gaps from deletions are not reused
        unless requested explicitly.  No existing record is modified.
        """
        if not isinstance(payload, str):
            raise TypeError("payload must be str")
        pm = self._resolve_parent_ref(parent)
        occupied = self._children.get(self._key(pm), set())
        if index is not None:
            if not isinstance(index, int) or index < 1:
                raise DomainError(f"child index must be >= 1, got {index}")
            if index in occupied:
                raise OccupiedSlotError(
                    f"slot {index} under {matrix_to_path(pm)} is occupied"
                )
            n = index
        else:
            n = max(occupied, default=0) + 1
        rec = NodeRecord(child(pm, n), payload)
        self._insert(rec)
        return rec

    def delete_subtree(self, node: NodeRecord) -> int:
        """Remove the node and all its descendants; returns the count."""
        self._require(node)
        doomed = [node] + self.descendants(node)
        for rec in doomed:
            self._remove(rec)
        return len(doomed)

    def move_subtree(
        self, src: NodeRecord, new_parent: ParentRef, index: int | None = None
    ) -> int:
        """Relocate src and its whole subtree under new_parent.

        Each subtree record keeps its path fragment relative to src:
        detach solves src_matrix * X = record_matrix, attach re-keys to
        concat(child(new_parent, n), X).  Payloads are untouched;
        returns the number of re-keyed records.
        """
        self._require(src)
        pm = self._resolve_parent_ref(new_parent)
        if not pm.is_identity:
            if pm == src.matrix or is_ancestor(src.matrix, pm):
                raise CycleError("cannot move a subtree under itself")
        subtree = [src] + self.descendants(src)

        old_parent, old_slot = _parent_and_slot(src.matrix)
        occupied = set(self._children.get(self._key(pm), ()))
        if old_parent == pm:
            occupied.discard(old_slot)  # the slot being vacated
        if index is not None:
            if not isinstance(index, int) or index < 1:
                raise DomainError(f"child index must be >= 1, got {index}")
            if index in occupied:
                raise OccupiedSlotError(
                    f"slot {index} under {matrix_to_path(pm)} is occupied"
                )
            n = index
        else:
            n = max(occupied, default=0) + 1

        base = child(pm, n)
        new_matrices = [concat(base, relative(src.matrix, rec.matrix)) for rec in subtree]
        for rec in subtree:
            self._remove(rec)
        for rec, m in zip(subtree, new_matrices):
            rec.matrix = m
            self._insert(rec)
        return len(subtree)

    # -- persistence ------------------------------------------------------

    def save(self, destination: str | FsPath) -> None:
        """Write the store atomically (temp file + rename), sorted by
        interval key; save/load/save is byte-identical."""
        destination = FsPath(destination)
        lines = [FILE_HEADER]
        for _, _, key, _ in self._ensure_index():
            rec = self._records[key]
            a, b, c, d = key
            lines.append(f"{a}\t{b}\t{c}\t{d}\t{escape_payload(rec.payload)}")
        data = ("\n".join(lines) + "\n").encode()
        try:
            fd, tmp = tempfile.mkstemp(
                dir=destination.parent or ".", prefix=destination.name + ".", suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "wb") as f:
                    f.write(data)
                os.replace(tmp, destination)
            except BaseException:
                os.unlink(tmp)
                raise
        except OSError as e:
            raise StoreError(f"cannot write {destination}: {e}") from e

    @classmethod
    def load(cls, source: str | FsPath) -> "TreeStore":
        """Parse a persistence file, validating matrices, uniqueness and
        parent closure; errors name the offending line."""
        source = FsPath(source)
        try:
            text = source.read_text(encoding="utf-8", errors="strict")
        except OSError as e:
            raise StoreError(f"cannot read {source}: {e}") from e
        except UnicodeDecodeError as e:
            raise StoreError(f"{source} is not UTF-8: {e}") from e

        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines or lines[0] != FILE_HEADER:
            raise LoadError(1, f"expected header {FILE_HEADER!r}")

        store = cls()
        line_of: dict[tuple, int] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            fields = line.split("\t")
            if len(fields) != 5:
                raise LoadError(lineno, f"expected 5 tab-separated fields, got {len(fields)}")
            for f in fields[:4]:
                if not re.fullmatch(r"[0-9]+", f):
                    raise LoadError(lineno, f"non-integer matrix entry {f!r}")
            a, b, c, d = (int(f) for f in fields[:4])
            try:
                m = MobiusMatrix(a, b, c, d)
            except DomainError as e:
                raise LoadError(lineno, str(e)) from None
            if m.is_identity:
                raise LoadError(lineno, "the identity matrix is not a storable node")
            key = m.entries()
            if key in store._records:
                raise LoadError(lineno, f"duplicate matrix {m}")
            try:
                payload = unescape_payload(fields[4])
            except ValueError as e:
                raise LoadError(lineno, str(e)) from None
            try:
                store._insert(NodeRecord(m, payload))
            except DomainError as e:
                # matrix passed the cheap checks but is not a primitive product
                raise LoadError(lineno, str(e)) from None
            line_of[key] = lineno

        for key, rec in store._records.items():
            pm, _ = _parent_and_slot(rec.matrix)
            if not pm.is_identity and pm.entries() not in store._records:
                raise LoadError(line_of[key], f"orphan record: parent {matrix_to_path(pm)} missing")
        return store
