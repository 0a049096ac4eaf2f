"""Input documents and bit-stable report serialization.

Input is one JSON document::

    {"seifert": {"genus": 0, "b": 1, "fibers": [[2, 1], [3, 1], [5, 1]]},
     "holonomy": [{"x": "0/1", "dim": 1, "fiber_spectra": [["0/1"], ["0/1"], ["0/1"]]}],
     "params": {...}}

Rationals are strings ``"p/q"``. Output floats carry 17 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from fractions import Fraction

from .seifert import HolonomyBlock, HolonomyData, SeifertData

__all__ = [
    "DocumentError",
    "parse_rational",
    "format_rational",
    "format_float",
    "load_document",
    "parse_document",
    "document_from_data",
    "dumps",
    "csv_text",
    "write_atomic",
]


class DocumentError(ValueError):
    """Malformed input document; ``field`` names the offending path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def parse_rational(text, field: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise DocumentError(field, f"expected a rational string 'p/q', got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    parts = text.strip().split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) != 2:
            raise ValueError
        p, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise DocumentError(field, f"cannot parse rational {text!r}") from None
    if q <= 0:
        raise DocumentError(field, f"denominator must be positive in {text!r}")
    if math.gcd(p, q) != 1:
        raise DocumentError(field, f"rational {text!r} is not in lowest terms")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = f"{x:.17g}"
    if all(ch not in text for ch in ".eEn"):
        text += ".0"
    return text


def _int_field(obj, key, field):
    if key not in obj:
        raise DocumentError(f"{field}.{key}", "missing")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{field}.{key}", f"expected an integer, got {value!r}")
    return value


def parse_document(payload) -> tuple[HolonomyData, dict]:
    """Build ``HolonomyData`` from a decoded document (no validation of invariants)."""
    if not isinstance(payload, dict):
        raise DocumentError("$", "document must be a JSON object")
    if "seifert" not in payload:
        raise DocumentError("seifert", "missing")
    sd_obj = payload["seifert"]
    if not isinstance(sd_obj, dict):
        raise DocumentError("seifert", "expected an object")
    genus = _int_field(sd_obj, "genus", "seifert")
    b = _int_field(sd_obj, "b", "seifert")
    fibers = []
    for i, pair in enumerate(sd_obj.get("fibers", [])):
        where = f"seifert.fibers[{i}]"
        if not isinstance(pair, list) or len(pair) != 2 or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in pair
        ):
            raise DocumentError(where, f"expected [alpha, beta] integers, got {pair!r}")
        fibers.append(tuple(pair))
    sd = SeifertData(genus, b, tuple(fibers))

    if "holonomy" not in payload:
        raise DocumentError("holonomy", "missing")
    if not isinstance(payload["holonomy"], list):
        raise DocumentError("holonomy", "expected a list of blocks")
    blocks = []
    for bi, blk in enumerate(payload["holonomy"]):
        where = f"holonomy[{bi}]"
        if not isinstance(blk, dict):
            raise DocumentError(where, "expected an object")
        if "x" not in blk:
            raise DocumentError(f"{where}.x", "missing")
        x = parse_rational(blk["x"], f"{where}.x")
        dim = _int_field(blk, "dim", where)
        spectra = []
        for i, spec in enumerate(blk.get("fiber_spectra", [])):
            if not isinstance(spec, list):
                raise DocumentError(f"{where}.fiber_spectra[{i}]", "expected a list")
            spectra.append(
                tuple(parse_rational(v, f"{where}.fiber_spectra[{i}][{j}]") for j, v in enumerate(spec))
            )
        blocks.append(HolonomyBlock(x, dim, tuple(spectra)))
    params = payload.get("params", {})
    if not isinstance(params, dict):
        raise DocumentError("params", "expected an object")
    return HolonomyData(sd, tuple(blocks)), params


def load_document(path) -> tuple[HolonomyData, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise DocumentError("$", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_document(payload)


def document_from_data(hd: HolonomyData, params: dict | None = None) -> dict:
    sd = hd.seifert
    doc = {
        "seifert": {"genus": sd.genus, "b": sd.b, "fibers": [list(f) for f in sd.fibers]},
        "holonomy": [
            {
                "x": format_rational(block.x),
                "dim": block.dim,
                "fiber_spectra": [[format_rational(v) for v in spec] for spec in block.fiber_spectra],
            }
            for block in hd.blocks
        ],
    }
    if params:
        doc["params"] = params
    return doc


def _emit(obj, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(format_rational(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(value, indent, level + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, str, bool)) or v is None for v in obj):
            out.append("[")
            for k, value in enumerate(obj):
                _emit(value, indent, level + 1, out)
                if k < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for k, value in enumerate(obj):
            out.append(pad)
            _emit(value, indent, level + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "]")
    elif hasattr(obj, "__float__"):
        out.append(format_float(float(obj)))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with 17-significant-digit floats and keys in insertion order."""
    out: list[str] = []
    _emit(obj, indent, 0, out)
    out.append("\n")
    return "".join(out)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, float) else format_rational(v) if isinstance(v, Fraction)
             else "" if v is None else v for v in row]
        )
    return buf.getvalue()


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
