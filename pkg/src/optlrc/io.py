"""Plain-text matrix files.

    q rows cols
    p m c0 ... cm        (only when q is not prime)
    <rows lines of cols integers>
"""

from __future__ import annotations

from pathlib import Path

from .field import GF, make_field
from .linalg import Matrix


class MatrixParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def dumps(M: Matrix) -> str:
    f = M.field
    out = [f"{f.q} {M.rows} {M.cols}"]
    if f.m > 1:
        out.append(f.serialize())
    out.extend(" ".join(map(str, row)) for row in M.tolist())
    return "\n".join(out) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MatrixParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def loads(text: str) -> Matrix:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise MatrixParseError(1, "empty matrix file")
    lineno, toks = lines[0]
    head = _ints(toks, lineno)
    if len(head) != 3:
        raise MatrixParseError(lineno, "header must be 'q rows cols'")
    q, rows, cols = head
    if rows < 0 or cols < 0:
        raise MatrixParseError(lineno, "negative matrix dimensions")
    try:
        field: GF = make_field(q)
    except ValueError as exc:
        raise MatrixParseError(lineno, str(exc)) from None
    body = lines[1:]
    if field.m > 1:
        if not body:
            raise MatrixParseError(lineno + 1, "missing field line 'p m c0 ... cm'")
        flineno, ftoks = body[0]
        _ints(ftoks, flineno)
        try:
            field = GF.deserialize(" ".join(ftoks))
        except ValueError as exc:
            raise MatrixParseError(flineno, str(exc)) from None
        if field.q != q:
            raise MatrixParseError(flineno, f"field line describes GF({field.q}), header says q={q}")
        body = body[1:]
    if cols == 0 and not body:
        # zero-width rows serialise as blank lines, which are skipped
        return Matrix.from_rows(field, [[] for _ in range(rows)], cols=0)
    if len(body) != rows:
        at = body[rows][0] if len(body) > rows else (body[-1][0] + 1 if body else lineno + 1)
        raise MatrixParseError(at, f"expected {rows} matrix rows, found {len(body)}")
    data = []
    for rlineno, rtoks in body:
        row = _ints(rtoks, rlineno)
        if len(row) != cols:
            raise MatrixParseError(rlineno, f"expected {cols} entries, found {len(row)}")
        bad = [x for x in row if not 0 <= x < q]
        if bad:
            raise MatrixParseError(rlineno, f"entry {bad[0]} is not an element of GF({q})")
        data.append(row)
    return Matrix.from_rows(field, data, cols=cols)


def read_matrix(path: str | Path) -> Matrix:
    return loads(Path(path).read_text())


def write_matrix(M: Matrix, path: str | Path) -> None:
    Path(path).write_text(dumps(M))
