"""Pmf file formats.

Text: one atom per line as ``value<TAB>probability``; ``#`` starts a
comment. JSON: an array of ``[value, probability]`` pairs. The format is
chosen from the file suffix (``.json`` or anything else for text).
Values are written with ``repr`` so a write/read cycle is exact.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Annotated

from pydantic import Field, TypeAdapter, ValidationError

from infotheory.epi.config import DEFAULT_MERGE_EPS, NORMALIZATION_TOL
from infotheory.epi.exceptions import PmfFormatError
from infotheory.epi.pmf import Pmf, new_pmf

logger = logging.getLogger(__name__)

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]

_PAIRS = TypeAdapter(list[tuple[FiniteFloat, FiniteFloat]])


def _is_json(path: Path) -> bool:
    return path.suffix.lower() == ".json"


def parse_text(text: str, *, path: str | None = None) -> list[tuple[float, float]]:
    """Parse the tab-separated text format into (value, probability) pairs."""
    pairs: list[tuple[float, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PmfFormatError(
                f"expected 'value<TAB>probability', got {raw!r}", path=path, line=lineno
            )
        try:
            value, prob = float(fields[0]), float(fields[1])
        except ValueError as exc:
            raise PmfFormatError(f"not a number in {raw!r}", path=path, line=lineno) from exc
        if not (math.isfinite(value) and math.isfinite(prob)):
            raise PmfFormatError(f"non-finite entry in {raw!r}", path=path, line=lineno)
        pairs.append((value, prob))
    return pairs


def parse_json(payload: str | bytes, *, path: str | None = None) -> list[tuple[float, float]]:
    """Parse the JSON array-of-pairs format."""
    try:
        return _PAIRS.validate_json(payload)
    except ValidationError as exc:
        raise PmfFormatError(f"invalid pmf JSON: {exc.errors()[0]['msg']}", path=path) from exc


def read_pmf(
    path: str | Path,
    merge_eps: float = DEFAULT_MERGE_EPS,
    *,
    normalization_tol: float = NORMALIZATION_TOL,
) -> Pmf:
    """Read a pmf file.

    Args:
        path: Text or ``.json`` file.
        merge_eps: Merge distance applied on construction.
        normalization_tol: Largest mass drift that is renormalized.

    Returns:
        The validated Pmf.

    Raises:
        PmfFormatError: On undecodable bytes, malformed records, NaN or
            infinite entries.
        InvalidPmfError: If the atoms violate the pmf invariants.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise PmfFormatError(f"not valid UTF-8: {exc.reason}", path=str(path)) from exc
    pairs = parse_json(raw, path=str(path)) if _is_json(path) else parse_text(raw, path=str(path))
    if not pairs:
        raise PmfFormatError("file contains no atoms", path=str(path))
    pmf = new_pmf(pairs, merge_eps, normalization_tol=normalization_tol)
    logger.debug("Read %d atoms from %s", pmf.size, path)
    return pmf


def write_pmf(p: Pmf, path: str | Path) -> None:
    """Write a pmf in the format implied by the suffix."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if _is_json(path):
        path.write_bytes(_PAIRS.dump_json(list(p.atoms)))
        return
    lines = ["# value\tprobability"]
    lines.extend(f"{value!r}\t{prob!r}" for value, prob in p.atoms)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
