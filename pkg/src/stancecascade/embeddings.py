"""Pretrained word-embedding tables in word2vec interchange formats.

Supports the text format (header "V D", rows "token f1 ... fD") and the
binary format (same header line, then per entry the token bytes, a space,
and D little-endian 32-bit floats, newline-terminated). Loaded tables are
immutable and safe for shared concurrent reads.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path

import numpy as np


class EmbeddingFormat(Enum):
    WORD2VEC_TEXT = "text"
    WORD2VEC_BINARY = "binary"


class EmbeddingFormatError(ValueError):
    pass


class EmbeddingTable:
    """token -> vector of fixed dimension; lookups are case-sensitive."""

    def __init__(self, dimension: int, vectors: dict[str, np.ndarray]):
        if dimension < 1:
            raise EmbeddingFormatError(f"embedding dimension must be positive, got {dimension}")
        for token, vec in vectors.items():
            if vec.shape != (dimension,):
                raise EmbeddingFormatError(
                    f"vector for {token!r} has shape {vec.shape}, expected ({dimension},)"
                )
        self.dimension = dimension
        self._vectors = vectors

    def __contains__(self, token: str) -> bool:
        return token in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, token: str) -> np.ndarray | None:
        return self._vectors.get(token)

    def tokens(self):
        return self._vectors.keys()


def load_embeddings(path: str | Path, format: EmbeddingFormat) -> EmbeddingTable:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    if format is EmbeddingFormat.WORD2VEC_TEXT:
        return _load_text(path)
    return _load_binary(path)


def _parse_header(line: bytes | str, path: Path) -> tuple[int, int]:
    if isinstance(line, bytes):
        line = line.decode("utf-8", errors="replace")
    parts = line.split()
    if len(parts) != 2:
        raise EmbeddingFormatError(f"{path}: malformed header {line.strip()!r}, expected 'vocab dim'")
    try:
        vocab, dim = int(parts[0]), int(parts[1])
    except ValueError:
        raise EmbeddingFormatError(f"{path}: non-integer header {line.strip()!r}") from None
    if vocab < 0 or dim < 1:
        raise EmbeddingFormatError(f"{path}: bad header values vocab={vocab} dim={dim}")
    return vocab, dim


def _load_text(path: Path) -> EmbeddingTable:
    vectors: dict[str, np.ndarray] = {}
    with path.open("r", encoding="utf-8") as handle:
        header = handle.readline()
        if not header:
            raise EmbeddingFormatError(f"{path}: empty file")
        vocab, dim = _parse_header(header, path)
        for lineno, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            token = parts[0]
            values = parts[1:]
            if len(values) != dim:
                raise EmbeddingFormatError(
                    f"{path}:{lineno}: expected {dim} values for {token!r}, got {len(values)}"
                )
            vectors[token] = np.asarray([float(v) for v in values], dtype=np.float32)
    if len(vectors) != vocab:
        raise EmbeddingFormatError(
            f"{path}: header declares {vocab} entries but file contains {len(vectors)}"
        )
    return EmbeddingTable(dim, vectors)


def _load_binary(path: Path) -> EmbeddingTable:
    vectors: dict[str, np.ndarray] = {}
    with path.open("rb") as handle:
        header = handle.readline()
        if not header:
            raise EmbeddingFormatError(f"{path}: empty file")
        vocab, dim = _parse_header(header, path)
        row_bytes = 4 * dim
        for index in range(vocab):
            token_bytes = bytearray()
            while True:
                ch = handle.read(1)
                if not ch:
                    raise EmbeddingFormatError(f"{path}: truncated at entry {index}")
                if ch == b" ":
                    break
                if ch != b"\n":  # tolerate newline between entries
                    token_bytes.extend(ch)
            raw = handle.read(row_bytes)
            if len(raw) != row_bytes:
                raise EmbeddingFormatError(f"{path}: truncated vector at entry {index}")
            token = token_bytes.decode("utf-8")
            vectors[token] = np.frombuffer(raw, dtype="<f4").copy()
    if len(vectors) != vocab:
        raise EmbeddingFormatError(
            f"{path}: header declares {vocab} entries but file contains {len(vectors)}"
        )
    return EmbeddingTable(dim, vectors)


def save_embeddings(table: EmbeddingTable, path: str | Path, format: EmbeddingFormat) -> None:
    path = Path(path)
    tokens = sorted(table.tokens())
    if format is EmbeddingFormat.WORD2VEC_TEXT:
        with path.open("w", encoding="utf-8") as handle:
            handle.write(f"{len(tokens)} {table.dimension}\n")
            for token in tokens:
                values = " ".join(repr(float(v)) for v in table.get(token))
                handle.write(f"{token} {values}\n")
    else:
        with path.open("wb") as handle:
            handle.write(f"{len(tokens)} {table.dimension}\n".encode("utf-8"))
            for token in tokens:
                handle.write(token.encode("utf-8") + b" ")
                handle.write(table.get(token).astype("<f4").tobytes())
                handle.write(b"\n")


def avg_vector(table: EmbeddingTable, tokens) -> tuple[np.ndarray, bool]:
    """Mean of the in-vocabulary token vectors.

    Returns the averaged vector and an all-OOV flag; an empty or fully
    out-of-vocabulary sequence gives the zero vector with the flag set.
    """
    seq = tokens.tokens if hasattr(tokens, "tokens") else tokens
    hits = [table.get(t) for t in seq if t in table]
    if not hits:
        return np.zeros(table.dimension, dtype=np.float64), True
    return np.mean(np.asarray(hits, dtype=np.float64), axis=0), False


def cosine(u, v) -> float:
    """u.v / (|u||v|); zero when either norm is zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"cosine needs equal-length vectors, got {u.shape} and {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))
