# gf2_dense/matrix_io.py
"""
Text and binary matrix files.

Text:   line 1 is "n m", then n lines of exactly m characters from {0, 1};
        the leftmost character is column 0.
Binary: magic b"F2MX", unsigned 64-bit little-endian n, m, b, then the
        mu*n words of b bits each, little-endian, in storage order
        (word-column by word-column, rows within a word-column).
"""
import io
import os
import struct

import numpy as np

from .errors import FormatError
from .packed_matrix import DEFAULT_WORD_BITS, WORD_DTYPES, BitMatrix, n_word_cols

MAGIC = b"F2MX"
_HEADER = struct.Struct("<QQQ")
FORMATS = ("text", "binary")
MAX_DIMENSION = 2**32
_CHUNK = 1 << 24


def _open(target, mode):
    if isinstance(target, (str, os.PathLike)):
        return open(target, mode), True
    return target, False


def _binary_stream(stream):
    # Text-mode handles (sys.stdout) expose their byte layer as .buffer.
    return getattr(stream, "buffer", stream) if isinstance(stream, io.TextIOBase) else stream


def write_text(A, stream):
    stream.write(f"{A.n_rows} {A.n_cols}\n")
    if A.n_rows and A.n_cols:
        chars = A.to_array() + np.uint8(ord("0"))
        for row in chars:
            stream.write(row.tobytes().decode("ascii"))
            stream.write("\n")
    elif A.n_rows:
        stream.write("\n" * A.n_rows)


def read_text(stream, word_bits=DEFAULT_WORD_BITS):
    header = stream.readline()
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"Expected a header 'n m', got {header.strip()!r}.")
    n, m = int(parts[0]), int(parts[1])
    bits = np.zeros((n, m), dtype=np.uint8)
    for i in range(n):
        line = stream.readline()
        if not line:
            raise FormatError(f"Truncated text matrix: expected {n} rows, found {i}.")
        line = line.rstrip("\r\n")
        if len(line) != m:
            raise FormatError(f"Row {i} has {len(line)} characters, expected {m}.")
        row = np.frombuffer(line.encode("ascii", errors="replace"), dtype=np.uint8) - np.uint8(ord("0"))
        if m and row.max() > 1:
            raise FormatError(f"Row {i} contains characters other than '0' and '1'.")
        bits[i] = row
    return BitMatrix.from_array(bits, word_bits)


def write_binary(A, stream):
    stream.write(MAGIC)
    stream.write(_HEADER.pack(A.n_rows, A.n_cols, A.word_bits))
    payload = np.ascontiguousarray(A.words).astype(f"<u{A.word_bits // 8}", copy=False)
    stream.write(payload.tobytes())


def _remaining(stream):
    """Bytes left in a seekable stream, None when it cannot seek."""
    try:
        if not stream.seekable():
            return None
        here = stream.tell()
        end = stream.seek(0, io.SEEK_END)
        stream.seek(here)
    except (AttributeError, OSError):
        return None
    return end - here


def _read_exact(stream, size):
    """Read ``size`` bytes in bounded chunks so a lying header cannot force a huge allocation."""
    chunks, got = [], 0
    while got < size:
        chunk = stream.read(min(size - got, _CHUNK))
        if not chunk:
            break
        chunks.append(chunk)
        got += len(chunk)
    return b"".join(chunks)


def read_binary(stream):
    magic = stream.read(len(MAGIC))
    if magic != MAGIC:
        raise FormatError(f"Bad magic bytes {magic!r}, expected {MAGIC!r}.")
    header = stream.read(_HEADER.size)
    if len(header) != _HEADER.size:
        raise FormatError("Truncated binary header.")
    n, m, b = _HEADER.unpack(header)
    if b not in WORD_DTYPES:
        raise FormatError(f"Unsupported word size {b} in header.")
    if n > MAX_DIMENSION or m > MAX_DIMENSION:
        raise FormatError(f"Header dimensions {n}x{m} exceed {MAX_DIMENSION}.")
    mu = n_word_cols(m, b)
    expected = mu * n * (b // 8)
    remaining = _remaining(stream)
    if remaining is not None and remaining < expected:
        raise FormatError(f"Truncated payload: header needs {expected} bytes, {remaining} remain.")
    payload = _read_exact(stream, expected)
    if len(payload) != expected:
        raise FormatError(f"Truncated payload: expected {expected} bytes, got {len(payload)}.")
    words = np.frombuffer(payload, dtype=f"<u{b // 8}").reshape(mu, n)
    out = BitMatrix(n, m, b)
    out.words[...] = words
    if not out.padding_is_clean():
        raise FormatError("Padding bits past the last column are set.")
    return out


def sniff_format(path):
    with open(path, "rb") as fh:
        return "binary" if fh.read(len(MAGIC)) == MAGIC else "text"


def write_matrix(A, target, fmt="text"):
    """Write ``A`` to a path or an open stream in the given format."""
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r}; choose one of {FORMATS}.")
    if fmt == "text":
        stream, owned = _open(target, "w")
        try:
            write_text(A, stream)
        finally:
            if owned:
                stream.close()
    else:
        stream, owned = _open(target, "wb")
        try:
            write_binary(A, _binary_stream(stream))
        finally:
            if owned:
                stream.close()


def read_matrix(source, fmt=None, word_bits=DEFAULT_WORD_BITS):
    """
    Read a matrix from a path or an open stream.

    With ``fmt=None`` a path is sniffed by its magic bytes; a stream is read
    as text unless it is binary. ``word_bits`` applies to text input only;
    binary files carry their own word size.
    """
    if fmt is None:
        if isinstance(source, (str, os.PathLike)):
            fmt = sniff_format(source)
        else:
            fmt = "text" if isinstance(source, io.TextIOBase) else "binary"
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format {fmt!r}; choose one of {FORMATS}.")
    if fmt == "text":
        stream, owned = _open(source, "r")
        try:
            return read_text(stream, word_bits)
        finally:
            if owned:
                stream.close()
    stream, owned = _open(source, "rb")
    try:
        return read_binary(_binary_stream(stream))
    finally:
        if owned:
            stream.close()
