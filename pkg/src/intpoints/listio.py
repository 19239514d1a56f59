"""Plain-text storage for candidate lists.

A file is one header line ``IPS1 m=<m> n=<n> delta=<d> kind=<c|s> count=<N>``
followed by one distance-matrix word per line, entries separated by single
spaces, in strictly descending word order. The diameter bound is inclusive.
"""

from __future__ import annotations

import re
from pathlib import Path

from .enumerator import CandidateList
from .metric import DistanceMatrix

__all__ = ["ListFormatError", "save_list", "load_list", "format_list", "parse_list", "list_filename"]

VERSION = "IPS1"
_HEADER = re.compile(r"IPS(\d+) m=(\d+) n=(\d+) delta=(\d+) kind=([cs]) count=(\d+)")


class ListFormatError(ValueError):
    pass


def list_filename(kind: str, m: int, n: int, delta: int) -> str:
    return f"{kind}_m{m}_n{n}_d{delta}.ips"


def format_list(cands: CandidateList) -> str:
    lines = [f"{VERSION} m={cands.m} n={cands.n} delta={cands.delta} kind={cands.kind} count={len(cands.items)}"]
    lines.extend(" ".join(map(str, it.word)) for it in cands.items)
    return "\n".join(lines) + "\n"


def parse_list(text: str) -> CandidateList:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ListFormatError("empty file")
    head = _HEADER.fullmatch(lines[0])
    if head is None:
        if lines[0].startswith("IPS") and not lines[0].startswith(VERSION + " "):
            raise ListFormatError(f"unsupported format version: {lines[0].split()[0]}")
        raise ListFormatError(f"malformed header: {lines[0]!r}")
    if head.group(1) != "1":
        raise ListFormatError(f"unsupported format version: IPS{head.group(1)}")
    m, n, delta = (int(head.group(k)) for k in (2, 3, 4))
    kind, count = head.group(5), int(head.group(6))
    body = lines[1:]
    if len(body) != count:
        raise ListFormatError(f"header announces {count} items, found {len(body)}")
    size = n * (n - 1) // 2
    items = []
    prev = None
    for lineno, line in enumerate(body, start=2):
        if not re.fullmatch(r"\d+( \d+)*", line):
            raise ListFormatError(f"line {lineno}: malformed entry {line!r}")
        w = tuple(int(v) for v in line.split(" "))
        if len(w) != size:
            raise ListFormatError(f"line {lineno}: expected {size} entries, got {len(w)}")
        if prev is not None and not w < prev:
            raise ListFormatError(f"line {lineno}: words not strictly descending")
        try:
            items.append(DistanceMatrix.from_word(w, n))
        except ValueError as exc:
            raise ListFormatError(f"line {lineno}: {exc}") from None
        prev = w
    return CandidateList(m, n, delta, kind, items)


def save_list(cands: CandidateList, path) -> None:
    Path(path).write_bytes(format_list(cands).encode("ascii"))


def load_list(path) -> CandidateList:
    return parse_list(Path(path).read_bytes().decode("ascii"))
