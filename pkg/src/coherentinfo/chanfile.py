"""Line-oriented text format for channels and density matrices.

Channel file::

    dims <dim_in> <dim_out>
    block <k> <l>
    <dim_out rows of dim_out entries>
    ...                       # one block per (k, l), 0-based, any order

Density-matrix file::

    dim <d>
    <d rows of d entries>

Entries are complex numbers written ``a+bi`` or ``a-bi`` (for example
``0.5+0i``, ``-1e-3-2.5i``).  Blank lines are ignored; any other
deviation is rejected with the offending line number.
"""
from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import ChannelFileError
from .superop import Superoperator

_REAL = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"^({_REAL})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")
_INT = re.compile(r"^(0|[1-9]\d*)$")


def parse_entry(token: str, line: int) -> complex:
    m = _ENTRY.match(token)
    if not m:
        raise ChannelFileError(f"malformed complex entry {token!r}", line)
    return complex(float(m.group(1)), float(m.group(2)))


def format_entry(z: complex) -> str:
    z = complex(z)
    return f"{z.real + 0.0:.17g}{z.imag + 0.0:+.17g}i"


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if tokens:
            yield number, tokens


def _positive_int(token: str, line: int) -> int:
    if not _INT.match(token) or int(token) == 0:
        raise ChannelFileError(f"expected a positive integer, got {token!r}", line)
    return int(token)


def _read_rows(lines, size: int, last_line: int) -> np.ndarray:
    mat = np.zeros((size, size), dtype=np.complex128)
    for r in range(size):
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise ChannelFileError(f"expected {size - r} more matrix row(s)", last_line + 1) from None
        if len(tokens) != size:
            raise ChannelFileError(f"expected {size} entries, got {len(tokens)}", number)
        mat[r] = [parse_entry(tok, number) for tok in tokens]
        last_line = number
    return mat


def parse_channel(text: str) -> Superoperator:
    lines = _lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ChannelFileError("empty file, expected 'dims <dim_in> <dim_out>'", 1) from None
    if len(tokens) != 3 or tokens[0] != "dims":
        raise ChannelFileError("expected 'dims <dim_in> <dim_out>'", number)
    dim_in = _positive_int(tokens[1], number)
    dim_out = _positive_int(tokens[2], number)

    blocks = np.zeros((dim_in, dim_in, dim_out, dim_out), dtype=np.complex128)
    seen: set[tuple[int, int]] = set()
    last = number
    for number, tokens in lines:
        if len(tokens) != 3 or tokens[0] != "block":
            raise ChannelFileError("expected 'block <k> <l>'", number)
        if not (_INT.match(tokens[1]) and _INT.match(tokens[2])):
            raise ChannelFileError("block indices must be non-negative integers", number)
        k, l = int(tokens[1]), int(tokens[2])
        if k >= dim_in or l >= dim_in:
            raise ChannelFileError(f"block index out of range for dim_in={dim_in}", number)
        if (k, l) in seen:
            raise ChannelFileError(f"duplicate block {k} {l}", number)
        seen.add((k, l))
        blocks[k, l] = _read_rows(lines, dim_out, number)
        last = number + dim_out
    if len(seen) != dim_in * dim_in:
        raise ChannelFileError(f"expected {dim_in * dim_in} blocks, found {len(seen)}", last + 1)
    return Superoperator(blocks)


def format_channel(s: Superoperator) -> str:
    b = s.computational_blocks()
    out = [f"dims {s.dim_in} {s.dim_out}"]
    for k in range(s.dim_in):
        for l in range(s.dim_in):
            out.append(f"block {k} {l}")
            out.extend(" ".join(format_entry(z) for z in row) for row in b[k, l])
    return "\n".join(out) + "\n"


def parse_density(text: str) -> np.ndarray:
    lines = _lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ChannelFileError("empty file, expected 'dim <d>'", 1) from None
    if len(tokens) != 2 or tokens[0] != "dim":
        raise ChannelFileError("expected 'dim <d>'", number)
    d = _positive_int(tokens[1], number)
    mat = _read_rows(lines, d, number)
    extra = next(lines, None)
    if extra is not None:
        raise ChannelFileError("unexpected content after matrix", extra[0])
    return mat


def format_density(rho) -> str:
    rho = np.asarray(rho)
    rows = [" ".join(format_entry(z) for z in row) for row in rho]
    return "\n".join([f"dim {rho.shape[0]}", *rows]) + "\n"


def read_channel(path) -> Superoperator:
    return parse_channel(Path(path).read_text())


def read_density(path) -> np.ndarray:
    return parse_density(Path(path).read_text())
